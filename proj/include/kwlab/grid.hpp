#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kwlab/liealg.hpp"

namespace kwlab {

enum class BoundaryMode { Periodic, Clamped };

/// Rectangular sampling grid for R^3 / R^4 / T^n / half-space geometries.
/// `orientation` is the sign of dx^0 ^ ... ^ dx^{ndim-1} relative to the
/// positive volume form; half-space grids use -1 (positive form is
/// dy ^ dx^1 ^ dx^2 ^ dx^3 with y stored as the last axis), which is the
/// orientation in which the Nahm pole solves the KW equations as written.
struct Grid {
  int ndim = 3;
  std::array<int, 4> shape{};
  std::array<double, 4> spacing{};
  std::array<double, 4> origin{};
  std::array<BoundaryMode, 4> boundary{};
  double orientation = +1.0;

  static Grid torus(int ndim, int n, double length);
  static Grid box(int ndim, const std::array<int, 4>& shape,
                  const std::array<double, 4>& spacing,
                  const std::array<double, 4>& origin);
  /// x1,x2,x3 periodic with extent `xlen`, y in [y0, y0+(ny-1)h] clamped.
  static Grid half_space(int nx, double xlen, int ny, double y0, double h);

  void validate() const;  // spacing > 0, shape >= 4, ndim in {3,4}

  std::size_t num_sites() const;
  double cell_volume() const;
  bool periodic_all() const;

  std::size_t index(const std::array<int, 4>& c) const;
  std::array<int, 4> coords(std::size_t idx) const;
  double coordinate(int axis, int i) const { return origin[axis] + spacing[axis] * i; }
  std::array<double, 4> point(const std::array<int, 4>& c) const;

  /// Neighbor in +-1 direction along axis; returns false when a clamped
  /// boundary is crossed (periodic axes wrap).
  bool neighbor(const std::array<int, 4>& c, int axis, int step,
                std::array<int, 4>& out) const;

  /// True when `c` is at least `layers` sites away from every clamped edge.
  bool interior(const std::array<int, 4>& c, int layers) const;
};

/// Flat storage for one site-indexed array of dim x dim complex matrices.
class MatArray {
 public:
  MatArray() = default;
  MatArray(std::size_t n, int dim)
      : n_(n), dim_(dim), data_(n * dim * dim, Complex(0, 0)) {}

  std::size_t size() const { return n_; }
  int dim() const { return dim_; }

  Eigen::Map<Eigen::MatrixXcd> operator[](std::size_t i) {
    return {data_.data() + i * dim_ * dim_, dim_, dim_};
  }
  Eigen::Map<const Eigen::MatrixXcd> operator[](std::size_t i) const {
    return {data_.data() + i * dim_ * dim_, dim_, dim_};
  }
  const std::vector<Complex>& raw() const { return data_; }
  std::vector<Complex>& raw() { return data_; }

 private:
  std::size_t n_ = 0;
  int dim_ = 0;
  std::vector<Complex> data_;
};

/// Sampled connection components A_i and adjoint one-form components phi_i.
/// In 3d the single scalar phi is stored as phi[0]. Optional exact-derivative
/// arrays let identity checks separate discretization error from formula
/// error; they hold analytically evaluated d_i of each component.
struct FieldConfiguration {
  Grid grid;
  int matrix_dim = 0;
  int nphi = 0;  // 1 in 3d scalar problems, ndim for one-forms
  std::array<MatArray, 4> A;
  std::array<MatArray, 4> phi;

  struct ExactDerivatives {
    // dA[i][j] = d_i A_j, dphi[i][j] = d_i phi_j
    std::array<std::array<MatArray, 4>, 4> dA;
    std::array<std::array<MatArray, 4>, 4> dphi;
  };
  std::optional<ExactDerivatives> exact;

  /// Sites where an analytic evaluator declined to evaluate (excised).
  std::optional<std::vector<bool>> valid;

  static FieldConfiguration zeros(const Grid& g, int matrix_dim, int nphi);
  bool site_valid(std::size_t i) const { return !valid || (*valid)[i]; }
};

/// Chunked deterministic parallel map/reduce over sites. Results are
/// independent of the thread count: fixed 4096-site blocks, partial values
/// combined in block order.
void parallel_for_sites(std::size_t n, int threads,
                        const std::function<void(std::size_t, std::size_t)>& block_fn);

struct SiteReducer {
  std::vector<double> block_sums;
  explicit SiteReducer(std::size_t nblocks) : block_sums(nblocks, 0.0) {}
  double total() const;
};

int default_threads();
void set_default_threads(int n);

}  // namespace kwlab
