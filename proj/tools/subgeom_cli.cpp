// subgeom: describe, verify and compose submersions from Kenmotsu manifolds.
//
// Exit codes: 0 all applicable checks pass, 1 a check failed, 2 usage or config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subgeom/config.hpp"
#include "subgeom/report.hpp"
#include "subgeom/run.hpp"

namespace {

using namespace subgeom;

struct Common {
  std::uint64_t seed = 42;
  std::size_t samples = 200;
  double tol = 1e-5;
  double tol2 = 1e-4;
  std::string format = "text";
  std::string output;
  bool require_riemannian = false;
};

Settings settings_of(const Common& c) {
  Settings s;
  s.seed = c.seed;
  s.samples = c.samples;
  s.first_order = c.tol;
  s.second_order = c.tol2;
  return s;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app->add_option("--samples", c.samples, "sample points per check")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "first-order tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--tol2", c.tol2, "second-order tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app->add_option("-o,--output", c.output, "write the report to a file instead of stdout");
  app->add_flag("--require-riemannian", c.require_riemannian, "fail unless the map is a Riemannian submersion");
}

void emit(const std::string& body, const Common& c) {
  if (c.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw GeometryError(ErrorKind::config, "cannot write '" + c.output + "'");
  out << body;
}

std::string render(const VerificationReport& rep, const Common& c) {
  return c.format == "json" ? to_json(rep).dump(2) + "\n" : to_text(rep);
}

int describe(const std::string& spec, const Common& c) {
  Settings s = settings_of(c);
  const Problem pr = resolve_problem(spec, s);
  std::ostringstream os;
  const std::size_t m = pr.structure ? pr.structure->dim() : pr.map ? pr.map->source.dim() : 0;
  os << pr.name << ": dim M=" << m;
  if (!pr.map) {
    os << ", no map\n";
    std::cout << os.str();
    return 0;
  }
  const SmoothMap& f = *pr.map;
  const std::vector<Vec> pts = sample_points(f.source, s);
  os << ", dim N=" << f.target.dim();
  const SubmersionSplit sp = split(f, pts.front(), s);
  os << ", fiber dim=" << sp.fiber_dim();
  if (pr.structure) {
    const XiPosition x = xi_position(f, *pr.structure, pts, s);
    os << ", xi " << to_string(x);
    if (mu_is_span_xi(f, *pr.structure, pts, s))
      os << ", mu=span{xi}";
    else
      os << ", mu dim=" << mu_space(f, *pr.structure, pts.front(), s).size();
    os << (is_anti_invariant(f, *pr.structure, pts, s).passed() ? ", anti-invariant" : ", not anti-invariant");
  }
  const CheckRecord riem = is_riemannian_submersion(f, pts, s);
  const CheckRecord conf = is_horizontally_conformal(f, pts, s);
  if (riem.passed()) {
    os << ", Riemannian submersion";
  } else if (conf.passed()) {
    os << ", horizontally conformal, lambda in [" << conf.metrics.at("lambda_min") << ", "
       << conf.metrics.at("lambda_max") << "]";
  } else {
    os << ", neither Riemannian nor conformal";
  }
  os << "\n";
  std::cout << os.str();
  return 0;
}

int verify(const std::string& spec, const Common& c) {
  Settings s = settings_of(c);
  const Problem pr = resolve_problem(spec, s);
  const VerificationReport rep = run_all(pr, {s, c.require_riemannian});
  emit(render(rep, c), c);
  return rep.passed() ? 0 : 1;
}

int warp(const std::string& expr, const std::string& submersion, double t_lo, double t_hi, const Common& c) {
  const Settings s = settings_of(c);
  const Expr e = Expr::parse(expr, {"t"});
  WarpedProduct w;
  SmoothMap inner;
  if (submersion == "planar") {
    inner = builtins::planar_projection();
  } else {
    inner = SmoothMap::generic(flat_space(4, -1.0, 1.0), flat_space(4, -1.0, 1.0),
                               [](const auto& x) { return x; }, "identity");
  }
  try {
    w = builtins::warped_over_flat(4, e.field(1), t_lo, t_hi, s);
  } catch (const GeometryError& err) {
    throw GeometryError(ErrorKind::config, std::string("warp '") + expr + "': " + err.what());
  }
  const SmoothMap f2 = compose_with_submersion(w, inner, s);
  const std::vector<Vec> pts = sample_points(f2.source, s);
  VerificationReport rep;
  rep.source = w.product.label() + " with f = " + expr;
  rep.map = f2.label;
  rep.samples = s.samples;
  rep.seed = s.seed;
  rep.tolerances = {{"conformal_spread", s.conformal_spread}, {"algebraic", s.algebraic}};
  CheckRecord riem = is_riemannian_submersion(f2, pts, s);
  riem.informational = !c.require_riemannian;
  rep.add(riem);
  rep.add(is_horizontally_conformal(f2, pts, s));
  rep.add(detail::composition_dilation(w, f2, pts, s));
  emit(render(rep, c), c);
  return rep.passed() ? 0 : 1;
}

int suite(const Common& c) {
  const std::vector<std::string> names = {"example1", "example2", "example3", "warped(exp(t))"};
  bool all = true;
  std::string body;
  json arr = json::array();
  for (const std::string& n : names) {
    Settings s = settings_of(c);
    const Problem pr = resolve_problem(n, s);
    const VerificationReport rep = run_all(pr, {s, c.require_riemannian});
    all = all && rep.passed();
    if (c.format == "json")
      arr.push_back(to_json(rep));
    else
      body += to_text(rep) + "\n";
  }
  if (c.format == "json") body = arr.dump(2) + "\n";
  emit(body, c);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of anti-invariant submersions from Kenmotsu manifolds"};
  app.require_subcommand(1);
  Common c;
  std::string spec;

  CLI::App* d = app.add_subcommand("describe", "dimensions, xi position, mu and classification");
  d->add_option("source", spec, "example1|example2|example3|warped(<expr>)|<config.json>")->required();
  add_common(d, c);

  CLI::App* v = app.add_subcommand("verify", "run every applicable check");
  v->add_option("source", spec, "example1|example2|example3|warped(<expr>)|<config.json>")->required();
  add_common(v, c);

  std::string warp_expr, submersion = "planar";
  double t_lo = -1.0, t_hi = 1.0;
  CLI::App* w = app.add_subcommand("warp", "compose a Riemannian submersion with the second projection of I x_f R^4");
  w->add_option("warp", warp_expr, "warping function of t")->required();
  w->add_option("--submersion", submersion, "inner submersion R^4 -> M3")
      ->check(CLI::IsMember({"planar", "identity"}))
      ->capture_default_str();
  w->add_option("--t-lo", t_lo, "lower end of the interval")->capture_default_str();
  w->add_option("--t-hi", t_hi, "upper end of the interval")->capture_default_str();
  add_common(w, c);

  CLI::App* s = app.add_subcommand("suite", "verify every built-in");
  add_common(s, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (d->parsed()) return describe(spec, c);
    if (v->parsed()) return verify(spec, c);
    if (w->parsed()) return warp(warp_expr, submersion, t_lo, t_hi, c);
    return suite(c);
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::config || e.kind() == ErrorKind::construction ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
