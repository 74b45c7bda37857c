// congruo: exact arithmetic for rational right triangles of fixed area and
// the congruent-number elliptic curves attached to them.
//
// Exit codes: 0 success; 1 domain failure (non-member input, degenerate or
// empty result, obstruction, unfactorable class); 2 usage or input-syntax
// error; 3 internal invariant violation.
#include <congruo/congruo.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace congruo;

// Usage mistakes detected after CLI11 parsing (missing --area, and the like).
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-posed query whose answer is the empty set.
struct none_result : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Flags shared by every subcommand. Only one subcommand runs per invocation,
// so a single instance serves them all.
struct Common {
  std::string area;
  bool json_mode = false;
  unsigned long factor_bound = kDefaultFactorBound;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--area", c.area, "area A of the triangle family, an exact rational like 6 or 5/4");
  sub->add_flag("--json", c.json_mode, "emit a JSON object instead of plain text");
  sub->add_option("--factor-bound", c.factor_bound,
                  "trial-division bound used when computing square classes");
}

Rat parse_area_text(const std::string& text) {
  Rat a = Rat::parse(text);
  if (a.sign() <= 0) throw std::domain_error("area must be positive");
  return a;
}

Rat need_area(const Common& c) {
  if (c.area.empty()) throw usage_error("this subcommand requires --area");
  return parse_area_text(c.area);
}

CongruentParam need_member(const Rat& t, const Rat& area) {
  auto m = membership(t, area);
  if (!m)
    throw std::domain_error("parameter " + t.str() + " is not in the area-" +
                            area.str() + " family");
  return *m;
}

// Operand of add/sub/reduce replay: a member parameter or the literal 0.
MemberOrIdentity parse_operand(const std::string& text, const Rat& area) {
  std::string_view s = trimmed(text);
  if (s == "0") return std::nullopt;
  return need_member(Rat::parse(s), area);
}

void emit_member(const Common& c, const CongruentParam& m) {
  WImage w = w_map(m.t.value(), c.factor_bound);
  if (c.json_mode) {
    json j{{"t", str(m.t)},
           {"w1", str(w.c1)},
           {"w2", str(w.c2)},
           {"cert", str(m.cert)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "t=" << m.t << " W=" << w << " cert=" << m.cert << "\n";
  }
}

json member_json(const CongruentParam& m, unsigned long factor_bound) {
  WImage w = w_map(m.t.value(), factor_bound);
  return json{{"t", str(m.t)},
              {"w1", str(w.c1)},
              {"w2", str(w.c2)},
              {"cert", str(m.cert)}};
}

void emit_value(const Common& c, const char* key, const std::string& value) {
  if (c.json_mode)
    std::cout << json{{key, value}}.dump() << "\n";
  else
    std::cout << value << "\n";
}

// ---------------------------------------------------------------------------
// Search cache: one JSON object per line, keyed by (area, bound). Advisory:
// every cached parameter is re-certified on load, and anything malformed or
// uncertifiable causes a silent recompute.

std::optional<std::vector<CongruentParam>> cache_load(const std::string& path,
                                                      const Rat& area,
                                                      const Int& bound) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (trimmed(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    try {
      if (Rat::parse(j.at("area").get<std::string>()) != area) continue;
      if (Int(j.at("bound").get<std::string>()) != bound) continue;
      std::vector<CongruentParam> out;
      for (const auto& entry : j.at("members")) {
        Rat t = Rat::parse(entry.get<std::string>());
        auto m = membership(t, area);
        // A cached value must already be certified and parity-primitive.
        if (!m || m->t.value() != t) return std::nullopt;
        out.push_back(std::move(*m));
      }
      return out;
    } catch (...) {
      continue;  // tolerate foreign or damaged lines
    }
  }
  return std::nullopt;
}

void cache_store(const std::string& path, const Rat& area, const Int& bound,
                 const std::vector<CongruentParam>& members) {
  std::vector<std::string> keep;
  {
    std::ifstream in(path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (trimmed(line).empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;  // drop damaged lines
      try {
        if (Rat::parse(j.at("area").get<std::string>()) == area &&
            Int(j.at("bound").get<std::string>()) == bound)
          continue;  // replaced below
      } catch (...) {
        continue;
      }
      keep.push_back(line);
    }
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    std::cerr << "warning: cache file " << path << " is not writable\n";
    return;
  }
  for (const auto& line : keep) out << line << "\n";
  json entry{{"area", area.str()}, {"bound", str(bound)}, {"members", json::array()}};
  for (const auto& m : members) entry["members"].push_back(str(m.t));
  out << entry.dump() << "\n";
}

// ---------------------------------------------------------------------------
// Point parsing for the quadratic field commands ("x,y" with the coordinate
// syntax a+b*sqrt(d), or "O" for the point at infinity).

QuadPoint parse_quad_point(const std::string& text, const Rat& area,
                           const Int& d) {
  std::string_view s = trimmed(text);
  QuadRat qarea(area, Rat(0), d);
  if (s == "O") return QuadPoint::infinity(qarea);
  auto comma = s.find(',');
  if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos)
    throw parse_error("quad point: expected \"x,y\" or \"O\"");
  QuadRat x = QuadRat::parse(s.substr(0, comma), d);
  QuadRat y = QuadRat::parse(s.substr(comma + 1), d);
  return QuadPoint(qarea, x, y);
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

int run_param(const Common& c, const std::string& value) {
  if (value.find(',') != std::string::npos) {
    Triangle tri = Triangle::parse(value);
    Rat area = tri.area();
    if (!c.area.empty() && parse_area_text(c.area) != area)
      throw std::domain_error("triangle has area " + area.str() +
                              ", which does not match --area");
    emit_member(c, certify(param_from_triangle(tri), area));
    return 0;
  }
  emit_member(c, need_member(Rat::parse(value), need_area(c)));
  return 0;
}

int run_triangle(const Common& c, const std::string& value) {
  Rat t = Rat::parse(value);
  if (!c.area.empty()) need_member(t, parse_area_text(c.area));
  emit_value(c, "triangle", str(triangle_from_param(primitive_normalize(t))));
  return 0;
}

int run_double(const Common& c, const std::string& value) {
  Rat area = need_area(c);
  CongruentParam m = need_member(Rat::parse(value), area);
  emit_value(c, "t", str(double_param(m).t));
  return 0;
}

int run_add_sub(const Common& c, bool subtract, const std::string& v1,
                const std::string& v2) {
  Rat area = need_area(c);
  MemberOrIdentity a = parse_operand(v1, area);
  MemberOrIdentity b = parse_operand(v2, area);
  MemberOrIdentity r = subtract ? sub_params(a, b) : add_params(a, b);
  emit_value(c, "t", r ? str(r->t) : "0");
  return 0;
}

int run_halve(const Common& c, const std::string& value) {
  Rat area = need_area(c);
  CongruentParam m = need_member(Rat::parse(value), area);
  auto h = halve_param(m);
  if (!h) {
    std::cerr << "descent not applicable: 1\xE2\x88\x92" "t, 1+t not both squares\n";
    return 1;
  }
  if (c.json_mode) {
    json j{{"u", str(h->u)}, {"v", str(h->v)}, {"t", str(h->t)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "u=" << h->u << " v=" << h->v << " t=" << h->t << "\n";
  }
  return 0;
}

int run_search(const Common& c, long denom_bound,
               const std::string& cache_path) {
  Rat area = need_area(c);
  Int bound(denom_bound);
  std::optional<std::vector<CongruentParam>> found;
  if (!cache_path.empty()) found = cache_load(cache_path, area, bound);
  if (!found) {
    found = search_params(area, bound);
    if (!cache_path.empty()) cache_store(cache_path, area, bound, *found);
  }
  if (found->empty())
    throw none_result("search: no members of the area-" + area.str() +
                      " family with denominator at most " + str(bound));
  if (c.json_mode) {
    json j{{"area", area.str()}, {"bound", str(bound)}, {"members", json::array()}};
    for (const auto& m : *found)
      j["members"].push_back(member_json(m, c.factor_bound));
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& m : *found) emit_member(c, m);
  }
  return 0;
}

int run_wmap(const Common& c, const std::string& value) {
  WImage img = trimmed(value) == "0"
                   ? WImage::identity()
                   : w_map(Rat::parse(value), c.factor_bound);
  if (c.json_mode)
    std::cout << json{{"w1", str(img.c1)}, {"w2", str(img.c2)}}.dump() << "\n";
  else
    std::cout << img << "\n";
  return 0;
}

int run_cosets(const Common& c) {
  Rat area = need_area(c);
  if (!area.is_integer())
    throw std::domain_error("cosets: area must be a positive integer");
  auto candidates = coset_candidates(area.num(), c.factor_bound);
  if (c.json_mode) {
    json j{{"area", area.str()}, {"candidates", json::array()}};
    for (const auto& w : candidates)
      j["candidates"].push_back(json{{"w1", str(w.c1)}, {"w2", str(w.c2)}});
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& w : candidates) std::cout << w << "\n";
  }
  return 0;
}

int run_reduce(const Common& c, long denom_bound,
               const std::string& value) {
  Rat area = need_area(c);
  CongruentParam target = need_member(Rat::parse(value), area);
  auto reps =
      RepresentativeSet::from_search(area, Int(denom_bound), c.factor_bound);
  Decomposition dec = reduce(target, reps, c.factor_bound);
  if (c.json_mode) {
    json j{{"target", str(target.t)}, {"chain", json::array()},
           {"reduced", str(dec.reduced.t)}};
    for (const auto& step : dec.chain)
      j["chain"].push_back(json{{"rep", step.rep ? str(step.rep->t) : "0"},
                                {"halved", str(step.halved.t)}});
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& step : dec.chain)
      std::cout << "rep=" << (step.rep ? str(step.rep->t) : "0")
                << " halved=" << step.halved.t << "\n";
    std::cout << "reduced=" << dec.reduced.t << "\n";
  }
  return 0;
}

int run_generators(const Common& c, long denom_bound) {
  Rat area = need_area(c);
  auto reps =
      RepresentativeSet::from_search(area, Int(denom_bound), c.factor_bound);
  auto gens = generators(area, reps);
  if (gens.empty())
    throw none_result("generators: no members of the area-" + area.str() +
                      " family below the bound");
  if (c.json_mode) {
    json j{{"area", area.str()}, {"generators", json::array()}};
    for (const auto& g : gens)
      j["generators"].push_back(member_json(g, c.factor_bound));
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& g : gens) emit_member(c, g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "congruo: exact calculus of rational right triangles with a fixed area,\n"
      "with the parameter group law, 2-descent, and the bridge to the curve\n"
      "y^2 = x(x^2 - A^2), including its quadratic-field constructions."};
  app.require_subcommand(1);

  Common c;
  std::string v1, v2, cache_path;
  long denom_bound = 0;
  unsigned long mul_k = 0;
  long field_d = 0;

  auto* cmd_param = app.add_subcommand(
      "param", "certify a parameter (with --area) or a triangle X,Y,Z and report t, W-image, certificate");
  add_common(cmd_param, c);
  cmd_param->add_option("value", v1, "parameter t or triangle X,Y,Z")->required();

  auto* cmd_triangle = app.add_subcommand(
      "triangle", "triangle of a parameter t (legs (n^2-m^2)/n^2-scaled primitive form)");
  add_common(cmd_triangle, c);
  cmd_triangle->add_option("t", v1, "parameter in (0,1)")->required();

  auto* cmd_double = app.add_subcommand("double", "double a member parameter");
  add_common(cmd_double, c);
  cmd_double->add_option("t", v1, "member parameter")->required();

  auto* cmd_add = app.add_subcommand("add", "add two member parameters (0 = identity)");
  add_common(cmd_add, c);
  cmd_add->add_option("t1", v1, "member parameter or 0")->required();
  cmd_add->add_option("t2", v2, "member parameter or 0")->required();

  auto* cmd_sub = app.add_subcommand("sub", "subtract two member parameters (0 = identity)");
  add_common(cmd_sub, c);
  cmd_sub->add_option("t1", v1, "member parameter or 0")->required();
  cmd_sub->add_option("t2", v2, "member parameter or 0")->required();

  auto* cmd_halve = app.add_subcommand(
      "halve", "invert doubling when 1-t and 1+t are both rational squares");
  add_common(cmd_halve, c);
  cmd_halve->add_option("t", v1, "member parameter")->required();

  auto* cmd_search = app.add_subcommand(
      "search", "list all member parameters with denominator at most the bound");
  add_common(cmd_search, c);
  cmd_search->add_option("--denom-bound", denom_bound, "denominator bound")
      ->required();
  cmd_search->add_option("--cache", cache_path,
                         "JSON-lines cache file; entries are re-certified on load");

  auto* cmd_wmap = app.add_subcommand(
      "wmap", "square classes of 1-t and 1+t (the descent homomorphism)");
  add_common(cmd_wmap, c);
  cmd_wmap->add_option("t", v1, "parameter in (0,1), or 0")->required();

  auto* cmd_cosets = app.add_subcommand(
      "cosets", "candidate W-images from the prime divisors of an integer area");
  add_common(cmd_cosets, c);

  auto* cmd_reduce = app.add_subcommand(
      "reduce", "reduce a member against search representatives by add-and-halve steps");
  add_common(cmd_reduce, c);
  cmd_reduce->add_option("--denom-bound", denom_bound,
                         "denominator bound for the representative search")
      ->required();
  cmd_reduce->add_option("t", v1, "member parameter")->required();

  auto* cmd_generators = app.add_subcommand(
      "generators", "finite generating set from search representatives");
  add_common(cmd_generators, c);
  cmd_generators
      ->add_option("--denom-bound", denom_bound,
                   "denominator bound for the representative search")
      ->required();

  auto* cmd_curve = app.add_subcommand(
      "curve", "operations on the curve y^2 = x(x^2 - A^2); points are \"x,y\" or \"O\"");
  cmd_curve->require_subcommand(1);
  auto* cv_add = cmd_curve->add_subcommand("add", "chord-and-tangent sum of two points");
  add_common(cv_add, c);
  cv_add->add_option("p1", v1, "point")->required();
  cv_add->add_option("p2", v2, "point")->required();
  auto* cv_double = cmd_curve->add_subcommand("double", "tangent doubling of a point");
  add_common(cv_double, c);
  cv_double->add_option("p", v1, "point")->required();
  auto* cv_mul = cmd_curve->add_subcommand("mul", "scalar multiple of a point");
  add_common(cv_mul, c);
  cv_mul->add_option("k", mul_k, "nonnegative scalar")->required();
  cv_mul->add_option("p", v1, "point")->required();
  auto* cv_neg = cmd_curve->add_subcommand("neg", "negate a point");
  add_common(cv_neg, c);
  cv_neg->add_option("p", v1, "point")->required();
  auto* cv_phi = cmd_curve->add_subcommand(
      "phi", "embed a member parameter as the point (A/t, cert*A^2/t^2)");
  add_common(cv_phi, c);
  cv_phi->add_option("t", v1, "member parameter")->required();
  auto* cv_phi_inv = cmd_curve->add_subcommand(
      "phi-inv", "parameter of a point (torsion maps to the identity 0)");
  add_common(cv_phi_inv, c);
  cv_phi_inv->add_option("p", v1, "point")->required();
  auto* cv_psi = cmd_curve->add_subcommand(
      "psi", "point of a rational right triangle on the curve of its own area");
  add_common(cv_psi, c);
  cv_psi->add_option("triangle", v1, "triangle X,Y,Z")->required();
  auto* cv_isogeny = cmd_curve->add_subcommand(
      "isogeny", "translation by the 2-torsion point (A,0)");
  add_common(cv_isogeny, c);
  cv_isogeny->add_option("p", v1, "point")->required();
  auto* cv_triangle = cmd_curve->add_subcommand(
      "triangle", "triangle of a nontorsion point");
  add_common(cv_triangle, c);
  cv_triangle->add_option("p", v1, "point")->required();

  auto* cmd_quad = app.add_subcommand(
      "quad", "constructions over Q(sqrt(d)); coordinates are a+b*sqrt(d)");
  cmd_quad->require_subcommand(1);
  auto add_quad_common = [&](CLI::App* sub) {
    add_common(sub, c);
    sub->add_option("--d", field_d, "radicand of the quadratic field")->required();
  };
  auto* qd_point = cmd_quad->add_subcommand(
      "point", "curve point of a quadratic triangle with rational area --area");
  add_quad_common(qd_point);
  qd_point->add_option("triangle", v1, "triangle X,Y,Z with quadratic sides")->required();
  auto* qd_add = cmd_quad->add_subcommand("add", "sum of two quadratic points");
  add_quad_common(qd_add);
  qd_add->add_option("p1", v1, "point")->required();
  qd_add->add_option("p2", v2, "point")->required();
  auto* qd_double = cmd_quad->add_subcommand("double", "double a quadratic point");
  add_quad_common(qd_double);
  qd_double->add_option("p", v1, "point")->required();
  auto* qd_neg = cmd_quad->add_subcommand("neg", "negate a quadratic point");
  add_quad_common(qd_neg);
  qd_neg->add_option("p", v1, "point")->required();
  auto* qd_conj = cmd_quad->add_subcommand("conj", "Galois conjugate of a point");
  add_quad_common(qd_conj);
  qd_conj->add_option("p", v1, "point")->required();
  auto* qd_conj_sum = cmd_quad->add_subcommand(
      "conj-sum", "P + conj(P): a rational point on the same curve");
  add_quad_common(qd_conj_sum);
  qd_conj_sum->add_option("p", v1, "point")->required();
  auto* qd_conj_diff = cmd_quad->add_subcommand(
      "conj-diff", "P - conj(P), transported to a rational point of area A*d");
  add_quad_common(qd_conj_diff);
  qd_conj_diff->add_option("p", v1, "point")->required();
  auto* qd_tri_sum = cmd_quad->add_subcommand(
      "triangle-sum", "rational triangle of area A from a quadratic triangle (conjugate sum)");
  add_quad_common(qd_tri_sum);
  qd_tri_sum->add_option("triangle", v1, "triangle X,Y,Z with quadratic sides")->required();
  auto* qd_tri_diff = cmd_quad->add_subcommand(
      "triangle-diff", "rational triangle of area A*d from a quadratic triangle (conjugate difference)");
  add_quad_common(qd_tri_diff);
  qd_tri_diff->add_option("triangle", v1, "triangle X,Y,Z with quadratic sides")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_param) return run_param(c, v1);
    if (*cmd_triangle) return run_triangle(c, v1);
    if (*cmd_double) return run_double(c, v1);
    if (*cmd_add) return run_add_sub(c, false, v1, v2);
    if (*cmd_sub) return run_add_sub(c, true, v1, v2);
    if (*cmd_halve) return run_halve(c, v1);
    if (*cmd_search) return run_search(c, denom_bound, cache_path);
    if (*cmd_wmap) return run_wmap(c, v1);
    if (*cmd_cosets) return run_cosets(c);
    if (*cmd_reduce) return run_reduce(c, denom_bound, v1);
    if (*cmd_generators) return run_generators(c, denom_bound);

    if (*cmd_curve) {
      if (*cv_psi) {
        Triangle tri = Triangle::parse(v1);
        if (!c.area.empty() && parse_area_text(c.area) != tri.area())
          throw std::domain_error("triangle has area " + tri.area().str() +
                                  ", which does not match --area");
        emit_value(c, "point", str(psi_map(tri)));
        return 0;
      }
      Rat area = need_area(c);
      if (*cv_add)
        emit_value(c, "point",
                   str(point_add(parse_point(v1, area), parse_point(v2, area))));
      else if (*cv_double)
        emit_value(c, "point", str(point_double(parse_point(v1, area))));
      else if (*cv_mul)
        emit_value(c, "point", str(point_mul(mul_k, parse_point(v1, area))));
      else if (*cv_neg)
        emit_value(c, "point", str(point_negate(parse_point(v1, area))));
      else if (*cv_phi)
        emit_value(c, "point", str(phi(need_member(Rat::parse(v1), area))));
      else if (*cv_phi_inv)
        emit_value(c, "t", str(phi_inv(parse_point(v1, area))));
      else if (*cv_isogeny)
        emit_value(c, "point", str(isogeny(parse_point(v1, area))));
      else if (*cv_triangle)
        emit_value(c, "triangle", str(triangle_from_point(parse_point(v1, area))));
      return 0;
    }

    if (*cmd_quad) {
      Rat area = need_area(c);
      Int d(field_d);
      if (*qd_point)
        emit_value(c, "point",
                   str(quad_point_from_triangle(QuadTriangle::parse(v1, d), area)));
      else if (*qd_add)
        emit_value(c, "point",
                   str(point_add(parse_quad_point(v1, area, d),
                                 parse_quad_point(v2, area, d))));
      else if (*qd_double)
        emit_value(c, "point", str(point_double(parse_quad_point(v1, area, d))));
      else if (*qd_neg)
        emit_value(c, "point", str(point_negate(parse_quad_point(v1, area, d))));
      else if (*qd_conj)
        emit_value(c, "point", str(conj_point(parse_quad_point(v1, area, d))));
      else if (*qd_conj_sum)
        emit_value(c, "point", str(conj_sum_point(parse_quad_point(v1, area, d))));
      else if (*qd_conj_diff)
        emit_value(c, "point", str(conj_diff_point(parse_quad_point(v1, area, d))));
      else if (*qd_tri_sum)
        emit_value(c, "triangle",
                   str(conj_sum_triangle(QuadTriangle::parse(v1, d), area)));
      else if (*qd_tri_diff)
        emit_value(c, "triangle",
                   str(conj_diff_triangle(QuadTriangle::parse(v1, d), area)));
      return 0;
    }

    throw std::logic_error("no subcommand dispatched");
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const none_result& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const degenerate_result& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const missing_coset& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const incomplete_factorization& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
