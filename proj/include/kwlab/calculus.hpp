#pragma once

#include <functional>

#include "kwlab/grid.hpp"

namespace kwlab {

/// How derivatives are taken. Central2 is the workhorse (order-2 convergence
/// studies). Spectral differentiates the trigonometric interpolant along
/// periodic axes and is exact on band-limited fields, which is what makes the
/// algebraic identity checks close to rounding instead of O(h^2). Exact reads
/// the analytically sampled derivative arrays carried by the configuration.
enum class DiffScheme { Central2, Spectral, Exact };

const char* to_string(DiffScheme s);

/// d_axis of a site array. Central2 leaves the clamped-edge layer undefined
/// (zeros); callers restrict to interior sites. Spectral requires the axis to
/// be periodic.
MatArray derivative(const Grid& g, const MatArray& f, int axis, DiffScheme scheme);

/// All first derivatives of every field component.
/// d*(i, j) = d_i of component j.
struct FieldDerivatives {
  std::array<std::array<MatArray, 4>, 4> dA;
  std::array<std::array<MatArray, 4>, 4> dphi;
};
FieldDerivatives all_derivatives(const FieldConfiguration& cfg, DiffScheme scheme);

/// Antisymmetric matrix-valued 2-form stored on independent (i<j) pairs.
struct TwoForm {
  int ndim = 0;
  std::vector<MatArray> comp;  // pair order: (0,1),(0,2),(1,2) / (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)

  static int npairs(int ndim) { return ndim == 3 ? 3 : 6; }
  static int pair_index(int ndim, int i, int j);  // requires i < j
  static std::pair<int, int> pair_axes(int ndim, int p);
  static TwoForm zeros(const Grid& g, int matrix_dim);
};

/// F_ij = d_i A_j - d_j A_i + [A_i, A_j]; exactly antisymmetric by storage.
TwoForm curvature(const FieldConfiguration& cfg, DiffScheme scheme);
TwoForm curvature(const FieldConfiguration& cfg, const FieldDerivatives& d);

/// D_i t_j = d_i t_j + [A_i, t_j] for the one-form components t = cfg.phi.
/// Returned as out[i][j].
std::array<std::array<MatArray, 4>, 4> covariant_derivative(
    const FieldConfiguration& cfg, DiffScheme scheme);

/// Hodge star with Euclidean metric. The orientation sign of the grid
/// multiplies the standard epsilon with coordinate order 0..ndim-1.
/// 4d: 2-form -> 2-form. 3d: 1-form <-> 2-form.
TwoForm hodge_star(const TwoForm& x, double orientation);
TwoForm hodge_star_3d_1form(const Grid& g, const std::array<MatArray, 4>& omega,
                            double orientation);
std::array<MatArray, 4> hodge_star_3d_2form(const TwoForm& x, double orientation);

/// Selfdual / anti-selfdual projections (1 +- *)/2 of a 4d 2-form.
TwoForm selfdual_part(const TwoForm& x, double orientation, int sign);

/// Per-site pointwise star on raw component vectors, used by the projector
/// property tests. degree is the form degree of `comps`.
std::vector<LieElement> hodge_star_site(const std::vector<LieElement>& comps,
                                        int ndim, int degree, double orientation);

/// A -> g A g^-1 - (d g) g^-1, phi -> g phi g^-1, with dg taken by the given
/// scheme. g must be unitary per site within tol. Exact-derivative arrays of
/// the input do not survive the transform and are dropped.
FieldConfiguration gauge_transform(const FieldConfiguration& cfg, const MatArray& g,
                                   DiffScheme scheme = DiffScheme::Central2,
                                   double unitary_tol = 1e-10);

/// Sites whose full +-1 stencil stays inside the grid and inside cfg.valid.
std::vector<std::uint8_t> stencil_ok_mask(const FieldConfiguration& cfg, int layers = 1);

/// Midpoint quadrature of a per-site density over masked sites.
double integrate(const Grid& g, const std::vector<std::uint8_t>& mask,
                 const std::function<double(std::size_t)>& density, int threads = 0);

}  // namespace kwlab
