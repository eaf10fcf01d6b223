#pragma once

#include <optional>

#include "kwlab/calculus.hpp"
#include "kwlab/report.hpp"

namespace kwlab {

struct ResidualOptions {
  DiffScheme scheme = DiffScheme::Central2;
  bool keep_site_norms = false;
  int threads = 0;
};

/// The member of the t-family that coincides with the KW system
/// V = F - phi^phi - *d_A phi on a grid of standard orientation (+1):
/// V+(kDistinguishedT) and V-(kDistinguishedT) are exactly the selfdual and
/// anti-selfdual parts of V. On orientation -1 grids the roles of +-1 swap.
/// Frozen empirically by the projection-identity test in test_residuals.
constexpr double kDistinguishedT = -1.0;

/// F = *d_A phi on a 3d grid, phi scalar in cfg.phi[0].
/// Components R01, R02, R12 of F - *d_A phi.
ResidualReport bogomolny_residual(const FieldConfiguration& cfg,
                                  const ResidualOptions& opts = {});

/// [D/Dy - i phi, dbar_A] applied to the constant test sections, with
/// y = x3 and dbar_A = (D1 + i D2)/2 on the complex slice coordinate
/// z = x1 + i x2. Zero (to discretization) on Bogomolny solutions with the
/// frozen +i sign; complex_structure_sign = -1 evaluates the rejected sign.
ResidualReport dbar_conjugation_residual(const FieldConfiguration& cfg,
                                         const ResidualOptions& opts = {},
                                         int complex_structure_sign = +1);

/// First-order building blocks shared by the KW residuals and every energy
/// identity: M = F - phi^phi, G = d_A phi, w = divergence density of d_A*phi.
/// Going through one assembly keeps all stencils identical across checks.
struct KwFirstOrder {
  TwoForm F, M, G;
  MatArray w;
};
KwFirstOrder kw_first_order(const FieldConfiguration& cfg, DiffScheme scheme,
                            int threads = 0);

/// V = F - phi^phi - *d_A phi (pair components V01..V23) and W = d_A * phi
/// (divergence density) on a 4d grid.
ResidualReport kw_residual(const FieldConfiguration& cfg,
                           const ResidualOptions& opts = {});

/// t-family: V+(t) = (F - phi^phi + t d_A phi)^+, V-(t) = (F - phi^phi
/// - t^{-1} d_A phi)^-, plus W. t must be nonzero; t = infinity gives the
/// limiting pair ((d_A phi)^+, (F - phi^phi)^-).
ResidualReport kw_t_residual(const FieldConfiguration& cfg, double t,
                             const ResidualOptions& opts = {});

/// Nahm's equation d phi_1/dy + [phi_2, phi_3] = 0 and cyclic on a 1d grid,
/// covariantized with A_y when supplied.
struct NahmData {
  std::vector<double> y;  // uniform, increasing, y > 0
  std::array<std::vector<LieElement>, 3> phi;
  std::optional<std::vector<LieElement>> Ay;
  std::optional<std::array<std::vector<LieElement>, 3>> dphi_dy;  // analytic

  static NahmData sample(const std::function<LieElement(int, double)>& phi_fn,
                         double y0, double y1, int n,
                         const std::function<LieElement(int, double)>* dphi_fn = nullptr);
};
ResidualReport nahm_residual(const NahmData& data,
                             DiffScheme scheme = DiffScheme::Central2);

/// Extended Bogomolny system on a 3d (x2, x3, y) grid with A_1 = phi_y = 0:
/// commutators of D1 = D_{x2} + i D_{x3}, D2 = D_y - i ad(phi_1),
/// D3 = ad(phi_2 - i phi_3), plus mu = F_{x2 x3} - [phi_2, phi_3] - D_y phi_1.
/// Field layout: cfg.A = (A_{x2}, A_{x3}, A_y), cfg.phi = (phi_1, phi_2, phi_3).
ResidualReport extended_bogomolny_residual(const FieldConfiguration& cfg,
                                           const ResidualOptions& opts = {});

}  // namespace kwlab
