#include "kwlab/weitzenbock.hpp"

#include <cmath>
#include <stdexcept>

namespace kwlab {

double EnergyBreakdown::total() const {
  double s = 0.0;
  for (const auto& [name, v] : terms) s += v;
  return s;
}

double EnergyBreakdown::term(const std::string& name) const {
  for (const auto& [n, v] : terms)
    if (n == name) return v;
  throw std::out_of_range("EnergyBreakdown: no term named " + name);
}

Json EnergyBreakdown::to_json() const {
  Json j;
  j["scheme"] = scheme;
  j["region"] = region;
  Json t;
  for (const auto& [n, v] : terms) t[n] = v;
  j["terms"] = t;
  j["total"] = total();
  return j;
}

Json ChernCharge::to_json() const {
  return Json{{"value", value}, {"reference", reference}};
}

namespace {

int scheme_margin(DiffScheme s) { return s == DiffScheme::Central2 ? 1 : 0; }

// Oriented eps^{ijkl} Tr F_ij F_kl density on pair storage:
// 4 * sum_p sgn(p) Tr(F_p F_pbar), sgn/pbar as in the 4d star tables.
constexpr int kDual4[6] = {5, 4, 3, 2, 1, 0};
constexpr double kSgn4[6] = {+1, -1, +1, +1, -1, +1};

double chern_density(const TwoForm& F, double orientation, std::size_t s) {
  double acc = 0.0;
  for (int p = 0; p < 6; ++p)
    acc += kSgn4[p] * (F.comp[p][s] * F.comp[kDual4[p]][s]).trace().real();
  return 4.0 * orientation * acc;
}

double kw_energy_density(const KwFirstOrder& parts, const TwoForm& starG,
                         std::size_t s) {
  double acc = 0.0;
  for (int p = 0; p < 6; ++p)
    acc += tf_norm_sq((parts.M.comp[p][s] - starG.comp[p][s]).eval());
  return acc + tf_norm_sq(parts.w[s]);
}

}  // namespace

double energy_from_residuals(const FieldConfiguration& cfg,
                             const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4 || cfg.nphi != 4)
    throw std::invalid_argument("energy_from_residuals: need a 4d one-form configuration");
  if (!cfg.grid.periodic_all())
    throw std::invalid_argument(
        "energy_from_residuals: grid is not closed; use halfspace_energy_Iprime / "
        "halfspace_identity_check on half-space grids");
  const KwFirstOrder parts = kw_first_order(cfg, opts.scheme, opts.threads);
  const TwoForm starG = hodge_star(parts.G, cfg.grid.orientation);
  const auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));
  return integrate(cfg.grid, mask,
                   [&](std::size_t s) { return kw_energy_density(parts, starG, s); },
                   opts.threads);
}

EnergyBreakdown energy_expanded(const FieldConfiguration& cfg,
                                const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4 || cfg.nphi != 4)
    throw std::invalid_argument("energy_expanded: need a 4d one-form configuration");
  const auto d = all_derivatives(cfg, opts.scheme);
  const TwoForm F = curvature(cfg, d);
  const Grid& g = cfg.grid;
  const auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));
  const double fsq = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) acc += tf_norm_sq(F.comp[p][s]);
    return acc;
  }, opts.threads);
  const double dphisq = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc += tf_norm_sq(
            (d.dphi[i][j][s] + commutator(cfg.A[i][s], cfg.phi[j][s])).eval());
    return acc;
  }, opts.threads);
  const double commsq = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      const auto [a, b] = TwoForm::pair_axes(4, p);
      acc += tf_norm_sq(commutator(cfg.phi[a][s], cfg.phi[b][s]));
    }
    return acc;
  }, opts.threads);
  EnergyBreakdown e;
  e.scheme = to_string(opts.scheme);
  e.region = "interior";
  e.terms = {{"F2", fsq}, {"Dphi2", dphisq}, {"phicomm2", commsq}};
  // flat grid: the Ricci term of the expansion is identically zero
  return e;
}

ChernCharge chern_charge(const FieldConfiguration& cfg, const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4)
    throw std::invalid_argument("chern_charge: need a 4d configuration");
  if (!cfg.grid.periodic_all())
    throw std::invalid_argument(
        "chern_charge: half-space call without reference; use chern_charge_relative");
  const TwoForm F = curvature(cfg, opts.scheme);
  const auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));
  const double q = integrate(cfg.grid, mask, [&](std::size_t s) {
    return chern_density(F, cfg.grid.orientation, s);
  }, opts.threads);
  return {q / (32.0 * M_PI * M_PI), "closed grid (trivial bundle)"};
}

ChernCharge chern_charge_relative(const FieldConfiguration& cfg,
                                  const FieldConfiguration& reference,
                                  const ResidualOptions& opts,
                                  const std::string& reference_name) {
  if (cfg.grid.ndim != 4 || reference.grid.ndim != 4)
    throw std::invalid_argument("chern_charge_relative: need 4d configurations");
  if (cfg.grid.num_sites() != reference.grid.num_sites())
    throw std::invalid_argument("chern_charge_relative: grids do not match");
  const TwoForm F = curvature(cfg, opts.scheme);
  const TwoForm Fr = curvature(reference, opts.scheme);
  auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));
  const auto mask_r = stencil_ok_mask(reference, scheme_margin(opts.scheme));
  for (std::size_t s = 0; s < mask.size(); ++s) mask[s] = mask[s] && mask_r[s];
  const double q = integrate(cfg.grid, mask, [&](std::size_t s) {
    return chern_density(F, cfg.grid.orientation, s) -
           chern_density(Fr, cfg.grid.orientation, s);
  }, opts.threads);
  return {q / (32.0 * M_PI * M_PI), reference_name};
}

double t_family_coefficient(double t) {
  if (t == 0.0 || std::isinf(t)) throw std::invalid_argument("t_family_coefficient: t in {0, inf}");
  const double denom = t + 1.0 / t;
  if (std::abs(denom) < 1e-9)
    throw std::invalid_argument("t_family_coefficient: t too close to the coefficient pole");
  return (t - 1.0 / t) / (4.0 * denom);
}

double t_identity_check(const FieldConfiguration& cfg, double t,
                        const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4 || cfg.nphi != 4)
    throw std::invalid_argument("t_identity_check: need a 4d one-form configuration");
  if (t == 0.0) throw std::invalid_argument("t_identity_check: t = 0 excluded");
  const double jt = t_family_coefficient(t);
  const double cplus = (1.0 / t) / (t + 1.0 / t);
  const double cminus = t / (t + 1.0 / t);
  const double sigma = cfg.grid.orientation;

  const KwFirstOrder parts = kw_first_order(cfg, opts.scheme, opts.threads);
  const TwoForm starG = hodge_star(parts.G, sigma);
  const TwoForm& F = parts.F;
  const auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));

  const double I = integrate(cfg.grid, mask, [&](std::size_t s) {
    return kw_energy_density(parts, starG, s);
  }, opts.threads);
  const double lhs = integrate(cfg.grid, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      const LieElement mp = parts.M.comp[p][s] + t * parts.G.comp[p][s];
      const LieElement mm = parts.M.comp[p][s] - parts.G.comp[p][s] / t;
      const LieElement smp =
          sigma * kSgn4[p] *
          (parts.M.comp[kDual4[p]][s] + t * parts.G.comp[kDual4[p]][s]);
      const LieElement smm =
          sigma * kSgn4[p] *
          (parts.M.comp[kDual4[p]][s] - parts.G.comp[kDual4[p]][s] / t);
      // paper contraction V_ij V^ij doubles the (i<j) sum
      acc += cplus * 2.0 * tf_norm_sq((0.5 * (mp + smp)).eval());
      acc += cminus * 2.0 * tf_norm_sq((0.5 * (mm - smm)).eval());
    }
    return acc + tf_norm_sq(parts.w[s]);
  }, opts.threads);
  const double q = integrate(cfg.grid, mask, [&](std::size_t s) {
    return chern_density(F, sigma, s);
  }, opts.threads);
  return std::abs(lhs - I - jt * q) / std::max(1.0, std::abs(I));
}

Json VanishingReport::to_json() const {
  return Json{{"t1", t1},
              {"t2", t2},
              {"lhs_t1", lhs_t1},
              {"t1_max_residual", t1_max_residual},
              {"P", P},
              {"P_bound", P_bound},
              {"t2_l2", t2_l2},
              {"t2_bound", t2_bound},
              {"precondition_ok", precondition_ok},
              {"pass", pass}};
}

VanishingReport vanishing_consequence_check(const FieldConfiguration& cfg, double t1,
                                            double t2, double tol,
                                            const ResidualOptions& opts) {
  VanishingReport rep;
  rep.t1 = t1;
  rep.t2 = t2;
  const ResidualReport r1 = kw_t_residual(cfg, t1, opts);
  rep.t1_max_residual = r1.max_norm();
  rep.precondition_ok = rep.t1_max_residual <= tol;
  if (!rep.precondition_ok)
    throw std::invalid_argument(
        "vanishing_consequence_check: configuration does not solve the t1 equations "
        "within tolerance");

  // LHS(t1) as the weighted sum of squares; the family identity then pins
  // |32pi^2 P| <= LHS(t1) / (1/4 - |j(t1)|) because j ranges over (-1/4, 1/4).
  const double sigma = cfg.grid.orientation;
  const KwFirstOrder parts = kw_first_order(cfg, opts.scheme, opts.threads);
  const auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));
  const double cplus = (1.0 / t1) / (t1 + 1.0 / t1);
  const double cminus = t1 / (t1 + 1.0 / t1);
  rep.lhs_t1 = integrate(cfg.grid, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      const LieElement mp = parts.M.comp[p][s] + t1 * parts.G.comp[p][s];
      const LieElement mm = parts.M.comp[p][s] - parts.G.comp[p][s] / t1;
      const LieElement smp = sigma * kSgn4[p] *
                             (parts.M.comp[kDual4[p]][s] + t1 * parts.G.comp[kDual4[p]][s]);
      const LieElement smm = sigma * kSgn4[p] *
                             (parts.M.comp[kDual4[p]][s] - parts.G.comp[kDual4[p]][s] / t1);
      acc += cplus * 2.0 * tf_norm_sq((0.5 * (mp + smp)).eval());
      acc += cminus * 2.0 * tf_norm_sq((0.5 * (mm - smm)).eval());
    }
    return acc + tf_norm_sq(parts.w[s]);
  }, opts.threads);

  rep.P = chern_charge(cfg, opts).value;
  const double j1 = t_family_coefficient(t1);
  const double margin = 0.25 - std::abs(j1);
  rep.P_bound = std::max(rep.lhs_t1, 0.0) / (margin * 32.0 * M_PI * M_PI);

  const ResidualReport r2 = kw_t_residual(cfg, t2, opts);
  rep.t2_l2 = r2.l2_norm();
  const double j2 = t_family_coefficient(t2);
  const double lhs_t2_bound =
      std::max(rep.lhs_t1, 0.0) * (1.0 + std::abs(j2 - j1) / margin);
  const double cmin = std::min(std::abs((1.0 / t2) / (t2 + 1.0 / t2)),
                               std::abs(t2 / (t2 + 1.0 / t2)));
  // L2^2 of (V+, V-, W) <= LHS(t2) / min(c+, c-, 1)
  rep.t2_bound = std::sqrt(lhs_t2_bound / std::min(cmin, 1.0));
  rep.pass = std::abs(rep.P) <= rep.P_bound + 1e-12 &&
             rep.t2_l2 <= rep.t2_bound + 1e-12;
  return rep;
}

namespace {

// I' terms and the matching LHS over one shared mask.
struct HalfspaceTerms {
  EnergyBreakdown breakdown;
  double lhs = 0.0;
};

HalfspaceTerms halfspace_terms(const FieldConfiguration& cfg,
                               const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4 || cfg.nphi != 4)
    throw std::invalid_argument("halfspace energy: need a 4d one-form configuration");
  if (cfg.grid.boundary[3] != BoundaryMode::Clamped)
    throw std::invalid_argument("halfspace energy: y (last axis) must be clamped");
  const Grid& g = cfg.grid;
  const auto d = all_derivatives(cfg, opts.scheme);
  const TwoForm F = curvature(cfg, d);
  const auto mask = stencil_ok_mask(cfg, scheme_margin(opts.scheme));
  auto D = [&](int i, int j, std::size_t s) {
    return (d.dphi[i][j][s] + commutator(cfg.A[i][s], cfg.phi[j][s])).eval();
  };

  const double fsq = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) acc += tf_norm_sq(F.comp[p][s]);
    return acc;
  }, opts.threads);
  const double dab = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) acc += tf_norm_sq(D(a, b, s));
    return acc;
  }, opts.threads);
  const double diy = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += tf_norm_sq(D(i, 3, s));
    return acc;
  }, opts.threads);
  const double comy = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      acc += tf_norm_sq(commutator(cfg.phi[3][s], cfg.phi[a][s]));
    return acc;
  }, opts.threads);
  const double wsq = integrate(g, mask, [&](std::size_t s) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, c = (a + 2) % 3;
      acc += tf_norm_sq(
          (D(3, a, s) + commutator(cfg.phi[b][s], cfg.phi[c][s])).eval());
    }
    return acc;
  }, opts.threads);

  HalfspaceTerms out;
  out.breakdown.scheme = to_string(opts.scheme);
  out.breakdown.region = "half-space interior (wall-excised)";
  out.breakdown.terms = {{"F2", fsq},
                         {"Da_phib2", dab},
                         {"Di_phiy2", diy},
                         {"comm_phiy2", comy},
                         {"nahm_W2", wsq}};

  const KwFirstOrder parts = kw_first_order(cfg, opts.scheme, opts.threads);
  const TwoForm starG = hodge_star(parts.G, g.orientation);
  out.lhs = integrate(g, mask, [&](std::size_t s) {
    return kw_energy_density(parts, starG, s);
  }, opts.threads);
  return out;
}

}  // namespace

EnergyBreakdown halfspace_energy_Iprime(const FieldConfiguration& cfg,
                                        const ResidualOptions& opts) {
  return halfspace_terms(cfg, opts).breakdown;
}

double halfspace_identity_check(const FieldConfiguration& cfg,
                                const ResidualOptions& opts) {
  const HalfspaceTerms t = halfspace_terms(cfg, opts);
  const double iprime = t.breakdown.total();
  return std::abs(t.lhs - iprime) / std::max(1.0, std::abs(iprime));
}

}  // namespace kwlab
