#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "subgeom/builtins.hpp"
#include "subgeom/check.hpp"
#include "subgeom/contact.hpp"
#include "subgeom/oneill.hpp"
#include "subgeom/submersion.hpp"
#include "subgeom/suite.hpp"
#include "subgeom/warped.hpp"

namespace subgeom {

/// Everything run_all needs: a source (optionally with its structure), an
/// optional map, and the warped product it came from if any.
struct Problem {
  std::string name;
  std::string source_label;
  std::optional<AlmostContactStructure> structure;
  std::optional<SmoothMap> map;
  std::optional<WarpedProduct> warped;
  bool composed = false;  ///< map = f1 ∘ π₂ on `warped`
};

struct RunOptions {
  Settings settings;
  bool require_riemannian = false;
};

inline Problem example1_problem() {
  AlmostContactStructure st = example_ken_structure();
  return {"example1", st.manifold.label(), st, std::nullopt, std::nullopt, false};
}

inline Problem example2_problem() {
  AlmostContactStructure st = example_ken_structure();
  return {"example2", st.manifold.label(), st, builtins::example2_map(), std::nullopt, false};
}

inline Problem example3_problem() {
  AlmostContactStructure st = example_ken_structure();
  return {"example3", st.manifold.label(), st, builtins::example3_map(), std::nullopt, false};
}

/// I ×_f R⁴ with the lifted standard J, ξ = ∂t, and the map (planar projection) ∘ π₂.
/// The structure is not certified here; run_all reports whether it is Kenmotsu.
inline Problem warped_problem(const ScalarField& f, const std::string& warp_label, const Settings& s = {}) {
  WarpedProduct w = builtins::warped_over_flat(4, f, -1.0, 1.0, s);
  Mat phi = Mat::Zero(5, 5);
  phi.bottomRightCorner(4, 4) = standard_complex_structure(2);
  AlmostContactStructure st(w.product, MatrixField::constant(5, phi), VectorField::coordinate(5, 0),
                            CovectorField::constant(Vec::Unit(5, 0)));
  SmoothMap map = compose_with_submersion(w, builtins::planar_projection(), s);
  const std::string name = "warped(" + warp_label + ")";
  return {name, w.product.label(), st, map, w, true};
}

namespace detail {

inline CheckRecord informational(CheckRecord r) {
  r.informational = true;
  return r;
}

inline CheckRecord composition_dilation(const WarpedProduct& w, const SmoothMap& f2, const std::vector<Vec>& points,
                                        const Settings& s) {
  CheckRecord rec("composition_dilation", "Theorem 9", s.conformal_spread);
  for (const Vec& p : points) {
    ++rec.points_sampled;
    const double f = w.warp.at(w.base_part(p));
    try {
      const double lambda = conformal_dilation(f2, p, s);
      rec.absorb(std::abs(std::exp(2.0 * lambda) - f * f) / (f * f));
    } catch (const GeometryError& e) {
      rec.absorb(std::numeric_limits<double>::infinity());
      rec.note = e.what();
    }
  }
  return rec;
}

}  // namespace detail

/// Structure checks, submersion predicates, O'Neill identities and every
/// applicable procedure of the Kenmotsu suite. Deterministic given the seed.
inline VerificationReport run_all(const Problem& pr, const RunOptions& opt = {}) {
  const Settings& s = opt.settings;
  VerificationReport rep;
  rep.source = pr.name + ": " + pr.source_label;
  rep.map = pr.map ? pr.map->label : std::string("none");
  rep.samples = s.samples;
  rep.seed = s.seed;
  rep.tolerances = {{"algebraic", s.algebraic},
                    {"first_order", s.first_order},
                    {"second_order", s.second_order},
                    {"anti_invariance", s.anti_invariance},
                    {"conformal_spread", s.conformal_spread}};

  bool kenmotsu = false;
  if (pr.structure) {
    const std::vector<Vec> pts = sample_points(pr.structure->manifold, s);
    const CheckRecord ac = verify_almost_contact(*pr.structure, pts, s);
    const CheckRecord ken = verify_kenmotsu(*pr.structure, pts, s);
    rep.add(ac);
    rep.add(ken);
    kenmotsu = ac.passed() && ken.passed();
    CheckRecord div = verify_reeb_divergence(*pr.structure, pts, s);
    if (!kenmotsu) div.inapplicable("source fails the Kenmotsu check");
    rep.add(div);
  }
  if (!pr.map) return rep;

  const SmoothMap& f = *pr.map;
  const std::vector<Vec> pts = sample_points(f.source, s);

  CheckRecord riem = is_riemannian_submersion(f, pts, s);
  const bool is_riem = riem.passed();
  riem.informational = !opt.require_riemannian;
  rep.add(riem);
  CheckRecord conf = is_horizontally_conformal(f, pts, s);
  const bool is_conf = conf.passed();
  conf.informational = true;
  rep.add(conf);

  CheckRecord cls("submersion_class", "S1-S2", 0.5);
  cls.points_sampled = pts.size();
  cls.absorb(is_riem || is_conf ? 0.0 : 1.0);
  cls.note = is_riem ? "Riemannian submersion" : is_conf ? "horizontally conformal submersion" : "neither";
  rep.add(cls);

  if (pr.structure) {
    const AlmostContactStructure& st = *pr.structure;
    rep.add(is_anti_invariant(f, st, pts, s));
    CheckRecord xi("xi_position", "xi position", 0.5);
    xi.informational = true;
    xi.points_sampled = pts.size();
    const XiPosition pos = xi_position(f, st, pts, s);
    xi.note = to_string(pos);
    xi.metrics["mu_dim"] = static_cast<double>(mu_space(f, st, pts.front(), s).size());
    xi.metrics["mu_is_span_xi"] = mu_is_span_xi(f, st, pts, s) ? 1.0 : 0.0;
    rep.add(xi);
    rep.add(check_dim_theorem(f, st, pts, s));
  }
  if (!is_riem && !is_conf) return rep;

  const ONeillContext ctx = ONeillContext::make(f, pr.structure, pts, s);
  rep.add(verify_lemma_identities(ctx, pts));
  rep.add(verify_skew_symmetry(ctx, pts));
  rep.add(verify_fundamental_equations(ctx, pts));
  rep.add(verify_second_fundamental_form(ctx, pts));
  rep.add(verify_basic_fields(ctx, pts));
  if (ctx.fiber_dim() > 0) rep.add(detail::informational(is_totally_umbilical(ctx, pts)));
  rep.add(detail::informational(is_harmonic(ctx, pts)));

  if (pr.structure) {
    std::vector<CheckRecord> suite;
    for (const CheckRecord& r : run_lemma_horAT(ctx, pts)) suite.push_back(r);
    suite.push_back(run_integrability_equivalence(ctx, pts));
    suite.push_back(run_totally_geodesic_horizontal(ctx, pts));
    suite.push_back(run_fibers_not_geodesic(ctx, pts));
    suite.push_back(run_mean_curvature_remark(ctx, pts));
    suite.push_back(run_nonexistence_wpk(ctx, pts));
    for (CheckRecord& r : suite) {
      if (!kenmotsu && r.applicable) r.inapplicable("source fails the Kenmotsu check");
      r.conformal_context = ctx.conformal();
    }
    rep.add(suite);
  }

  if (pr.warped) {
    const WarpedProduct& w = *pr.warped;
    rep.add(verify_oneill_proposition(w, sample_points(w.product, s), s));
    if (f.source.dim() == w.product.dim()) rep.add(wpc_obstruction(w, f, pts, s));
    if (pr.composed) rep.add(detail::composition_dilation(w, f, pts, s));
  }
  return rep;
}

}  // namespace subgeom
