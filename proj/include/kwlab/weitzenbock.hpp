#pragma once

#include "kwlab/residuals.hpp"

namespace kwlab {

/// Named nonnegative quadratic terms of an energy functional.
struct EnergyBreakdown {
  std::vector<std::pair<std::string, double>> terms;
  std::string scheme, region;
  double total() const;
  double term(const std::string& name) const;
  Json to_json() const;
};

/// I = -Int Tr(V ^ *V + W ^ *W) on a closed grid; the quadrature of the
/// kw_residual densities. Throws on non-closed grids (use the half-space
/// variant there).
double energy_from_residuals(const FieldConfiguration& cfg,
                             const ResidualOptions& opts = {});

/// Flat-grid expansion of I: terms |F|^2, |D phi|^2, |[phi,phi]|^2 (the
/// Ricci term vanishes identically on flat grids). Equals
/// energy_from_residuals only up to discretization; the integration-by-parts
/// cross terms vanish on closed grids in the h -> 0 limit.
EnergyBreakdown energy_expanded(const FieldConfiguration& cfg,
                                const ResidualOptions& opts = {});

/// P = (1/32pi^2) Int eps^{ijkl} Tr F_ij F_kl with the grid-oriented epsilon.
/// On half-space grids the value is only defined relative to a reference
/// configuration (Z-torsor); use chern_charge_relative there.
struct ChernCharge {
  double value = 0.0;
  std::string reference;
  Json to_json() const;
};
ChernCharge chern_charge(const FieldConfiguration& cfg,
                         const ResidualOptions& opts = {});
ChernCharge chern_charge_relative(const FieldConfiguration& cfg,
                                  const FieldConfiguration& reference,
                                  const ResidualOptions& opts = {},
                                  const std::string& reference_name = "reference");

/// Weitzenbock family coefficient J(t)/ (32 pi^2 P) = (t - 1/t)/(4 (t + 1/t)).
double t_family_coefficient(double t);

/// Relative discrepancy |LHS(t) - I - j(t) * Int eps Tr FF| / max(1, |I|)
/// with every piece computed by the same derivatives and quadrature.
/// With exact (spectral/analytic) derivatives of band-limited fields this is
/// rounding-level; with central differences it is O(h^2).
double t_identity_check(const FieldConfiguration& cfg, double t,
                        const ResidualOptions& opts = {});

/// Consequences of solving the family at one t: P bounded through the
/// identity chain, and the t2 residual bounded by LHS(t1) plus the
/// topological shift. All three reported numbers come with their derived
/// bounds.
struct VanishingReport {
  double t1 = 0, t2 = 0;
  double lhs_t1 = 0;       // sum-of-squares energy at t1
  double t1_max_residual = 0;
  double P = 0, P_bound = 0;
  double t2_l2 = 0, t2_bound = 0;
  bool precondition_ok = false;
  bool pass = false;
  Json to_json() const;
};
VanishingReport vanishing_consequence_check(const FieldConfiguration& cfg, double t1,
                                            double t2, double tol,
                                            const ResidualOptions& opts = {});

/// Half-space sum of squares I' whose vanishing characterizes the Nahm pole:
/// (1/2)|F|^2, |D_a phi_b|^2, |D_i phi_y|^2, |[phi_y, phi_a]|^2, |W_a|^2 with
/// W_a = D_y phi_a + (1/2) eps_abc [phi_b, phi_c].
EnergyBreakdown halfspace_energy_Iprime(const FieldConfiguration& cfg,
                                        const ResidualOptions& opts = {});

/// |(-Int Tr(V^2 + W^2)) - I'| / max(1, |I'|) over the shared interior.
/// Zero boundary term by construction: deviations from the Nahm pole must be
/// compactly supported away from the wall and the outer boundary.
double halfspace_identity_check(const FieldConfiguration& cfg,
                                const ResidualOptions& opts = {});

}  // namespace kwlab
