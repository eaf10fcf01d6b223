#pragma once

#include "kwlab/residuals.hpp"
#include "kwlab/solutions.hpp"

namespace kwlab {

/// Grid-refinement study: the residual of an exact solution is evaluated at
/// h, h/2, ... and its max-norm measured on the coarsest lattice's interior
/// points (which nest into every finer grid), so the same continuum points
/// are compared at every level.
struct ConvergenceStudy {
  std::vector<double> h, err;
  double slope = 0.0;
  Json to_json() const;
};

/// Bogomolny residual of the sampled multi-monopole on an off-axis box
/// placed clear of the sites and their Dirac strings.
ConvergenceStudy bogomolny_monopole_study(const SingularityData& data, double h0,
                                          int levels, int threads = 0);

/// KW residual of the same solution lifted with phi = vphi du along a
/// periodic fourth axis.
ConvergenceStudy kw_lift_study(const SingularityData& data, double h0, int levels,
                               int threads = 0);

/// KW residual of the sampled Nahm pole on the half-space grid.
ConvergenceStudy nahm_pole_kw_study(int dim, double h0, int levels, int threads = 0);

/// Half-space Weitzenbock identity for the Nahm pole plus a compactly
/// supported band-limited bump of the given amplitude: relative discrepancy
/// |LHS - I'| / max(1, I') per refinement level, plus the unperturbed I'.
struct HalfspaceStudy {
  std::vector<double> h, discrepancy;
  double slope = 0.0;
  double unperturbed_Iprime = 0.0;
  double perturbed_Iprime = 0.0;
  Json to_json() const;
};
HalfspaceStudy halfspace_identity_study(const std::vector<double>& hs,
                                        double amplitude, std::uint64_t seed,
                                        int matrix_dim = 2, int threads = 0);

/// The criterion-7 configuration at one spacing.
FieldConfiguration nahm_plus_bump_configuration(double h, double amplitude,
                                                std::uint64_t seed, int matrix_dim = 2);

}  // namespace kwlab
