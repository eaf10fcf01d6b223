#pragma once

#include <optional>

#include "kwlab/report.hpp"

#include <Eigen/Dense>

namespace kwlab {

/// Finite-dimensional Morse problem: an ambient height-type function
/// restricted to one of three model manifolds. The torus is the wheel torus
/// (axis horizontal) tilted by a small angle so the height function is
/// Morse-Smale; the untilted wheel has saddle-saddle connections along the
/// inner equator.
struct MorseProblem {
  enum class Manifold { Sphere, Torus, Box };
  Manifold manifold = Manifold::Sphere;

  double sphere_radius = 1.0;
  double torus_R = 2.0, torus_r = 1.0;
  double tilt = 0.15;  // rotation of the torus about the y axis

  Eigen::Vector3d height_dir = Eigen::Vector3d(0, 0, 1);
  /// Optional smooth perturbation amp * exp(-|x-c|^2 / w^2) added to h.
  double bump_amp = 0.0;
  Eigen::Vector3d bump_center = Eigen::Vector3d::Zero();
  double bump_width = 0.5;
  /// Box mode uses h = |x|^2 + height_dir.head<2>() . x + bump.
  /// Metric perturbation knob: multiplies g_uu in the torus chart; flow
  /// trajectories change, homology must not.
  double metric_scale_u = 1.0;

  int charts() const;
  bool chart_periodic() const;  // torus chart wraps mod 2 pi

  // ambient function
  double h3(const Eigen::Vector3d& x) const;
  Eigen::Vector3d grad_h3(const Eigen::Vector3d& x) const;
  Eigen::Matrix3d hess_h3(const Eigen::Vector3d& x) const;

  // chart geometry
  Eigen::Vector3d embed(int chart, const Eigen::Vector2d& u) const;
  void embed_derivs(int chart, const Eigen::Vector2d& u, Eigen::Vector3d& Eu,
                    Eigen::Vector3d& Ev, Eigen::Vector3d& Euu, Eigen::Vector3d& Euv,
                    Eigen::Vector3d& Evv) const;
  Eigen::Matrix2d metric(int chart, const Eigen::Vector2d& u) const;
  /// Chart pullback h, gradient, Hessian via the chain rule (all analytic).
  double h(int chart, const Eigen::Vector2d& u) const;
  Eigen::Vector2d grad(int chart, const Eigen::Vector2d& u) const;
  Eigen::Matrix2d hess(int chart, const Eigen::Vector2d& u) const;

  /// Chart housekeeping for sphere flows: which chart is well-conditioned at
  /// a 3d point, and the chart coordinates there.
  int preferred_chart(const Eigen::Vector3d& x) const;
  Eigen::Vector2d to_chart(int chart, const Eigen::Vector3d& x) const;
};

struct CriticalPoint {
  Eigen::Vector3d position;  // embedded
  Eigen::Vector2d chart_coords;
  int chart = 0;
  int index = 0;          // negative eigenvalues of the (metric) Hessian
  double min_abs_eig = 0; // nondegeneracy witness
  double value = 0;       // h at the point
};

struct MorseOptions {
  int seeds_per_axis = 12;
  double grad_tol = 1e-10;
  double degenerate_tol = 1e-8;
  double arrive_tol = 1e-6;
  double flow_budget = 500.0;  // max flow time
};

/// All nondegenerate critical points, deduplicated in the embedding.
/// Throws when a located critical point is degenerate.
std::vector<CriticalPoint> find_critical_points(const MorseProblem& problem,
                                                const MorseOptions& opts = {});

/// Number of gradient-flow lines from p up to q (index q = index p + 1),
/// shot along the one-dimensional transverse manifold of the index-1 end
/// (ascending from a saddle p, or descending from a saddle q). Parity is
/// count mod 2. Throws on exhausted budget or ambiguous arrival.
int count_flow_lines(const MorseProblem& problem,
                     const std::vector<CriticalPoint>& crits, int p, int q,
                     const MorseOptions& opts = {});

/// Morse complex with mod-2 differential raising the index by one.
struct MorseComplex {
  std::vector<CriticalPoint> points;
  /// differential[k](i, j) = parity of flows from the i-th index-k point to
  /// the j-th index-(k+1) point.
  std::vector<Eigen::MatrixXi> differential;
  int max_index = 0;

  bool d_squared_is_zero() const;
  std::vector<int> betti() const;  // mod-2 Betti numbers, degree 0..max_index
  int euler_characteristic() const;
  Json to_json() const;
};

MorseComplex build_complex(const MorseProblem& problem, const MorseOptions& opts = {});

}  // namespace kwlab
