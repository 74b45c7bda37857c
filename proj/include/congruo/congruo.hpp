#pragma once

#include "congruo/construction.hpp"
#include "congruo/curve.hpp"
#include "congruo/descent.hpp"
#include "congruo/errors.hpp"
#include "congruo/quadratic.hpp"
#include "congruo/rational.hpp"
#include "congruo/square_class.hpp"
#include "congruo/triangle.hpp"
