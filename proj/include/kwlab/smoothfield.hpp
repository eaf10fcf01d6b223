#pragma once

#include "kwlab/grid.hpp"

namespace kwlab {

/// Band-limited random test field: each component is a sum of random
/// Fourier modes with |k_a| <= mode_cutoff on the grid extent, times a
/// compactly supported bump envelope on every clamped axis (the envelope
/// vanishes at the boundary layer, margin_fraction of the extent per side).
/// Mode data depends only on (seed, cutoff, nmodes, dims), never on the grid
/// shape, so refining the grid samples the same smooth field.
struct SmoothFieldParams {
  std::uint64_t seed = 0;
  int mode_cutoff = 2;
  double amplitude = 0.1;
  int matrix_dim = 2;
  int nphi = 0;              // 0 -> one-form (ndim components)
  int nmodes = 48;           // modes drawn per component
  double margin_fraction = 0.2;
  bool traceless = true;
  bool with_exact_derivatives = false;
};

struct SmoothField {
  struct Mode {
    std::array<int, 4> k;
    Eigen::MatrixXcd amp_cos, amp_sin;
  };
  // component c: 0..ndim-1 = A_c, ndim.. = phi
  std::vector<std::vector<Mode>> modes;
  std::array<double, 4> extent{};
  std::array<double, 4> origin{};
  std::array<bool, 4> enveloped{};
  std::array<double, 4> env_lo{}, env_hi{};
  int ndim = 0, matrix_dim = 0, nphi = 0;
  double amplitude = 0;

  LieElement value(int component, const std::array<double, 4>& x) const;
  LieElement partial(int component, int axis, const std::array<double, 4>& x) const;
};

SmoothField make_smooth_field(const Grid& g, const SmoothFieldParams& p);

/// Samples the field (and, when requested, its analytic derivatives) on the
/// grid. Deterministic: the same seed gives bitwise identical output.
FieldConfiguration random_smooth_field(const Grid& g, const SmoothFieldParams& p);

/// Per-site unitary exp(X(x)) from a band-limited anti-hermitian generator;
/// used by the gauge-covariance tests.
MatArray random_gauge(const Grid& g, std::uint64_t seed, int mode_cutoff,
                      double amplitude, int matrix_dim);

/// Adds the smooth field on top of an existing configuration (site values
/// and exact-derivative arrays when both carry them).
void add_smooth_field(FieldConfiguration& cfg, const SmoothField& f);

}  // namespace kwlab
