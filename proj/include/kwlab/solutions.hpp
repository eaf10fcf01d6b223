#pragma once

#include <functional>
#include <memory>

#include "kwlab/calculus.hpp"
#include "kwlab/grid.hpp"

namespace kwlab {

using Vec3 = Eigen::Vector3d;

/// Prescribed codimension-3 singularities: positions with integer charges.
struct SingularityData {
  struct Site {
    Vec3 pos;
    int charge;
  };
  std::vector<Site> sites;

  int total_charge() const;
  bool decays_at_infinity() const { return total_charge() == 0; }
  void validate() const;  // pairwise distinct positions

  static SingularityData from_json_text(const std::string& text);
};

/// Scalar layer of the abelian singular solutions: phi = sum_i n_i/(2|x-x_i|),
/// B = grad phi, F = *d phi. The gauge chart puts a Dirac string along the
/// -z ray from every charged site. The u(1) generator is the unit imaginary;
/// flux integrals use the first-Chern pairing c1 = (i/2pi) Int Tr F, which
/// makes the sphere flux of charge n equal +n.
struct AbelianMonopoleField {
  SingularityData data;
  double excision = 1e-3;      // radius around each site
  double string_excision = 1e-3;  // distance from each Dirac string ray

  double phi(const Vec3& x) const;
  Vec3 grad_phi(const Vec3& x) const;  // the "B field"
  Vec3 A(const Vec3& x) const;         // string chart, singular on the rays
  Eigen::Matrix3d dA(const Vec3& x) const;   // dA(i,j) = d_i A_j
  double F(int a, int b, const Vec3& x) const;  // eps_abc B_c

  bool in_domain(const Vec3& x) const;      // off site excisions
  bool chart_ok(const Vec3& x) const;       // also off the strings
};

/// Exact model solution with analytic evaluators. Components follow the
/// hosting grid layout: 3d solutions have a single scalar phi; half-space
/// solutions are full 4d one-forms with y as the last axis.
struct AnalyticSolution {
  int space_ndim = 3;
  int matrix_dim = 1;
  int nphi = 1;
  std::function<bool(const std::array<double, 4>&)> in_domain;
  std::function<LieElement(int, const std::array<double, 4>&)> A_at;      // (comp, x)
  std::function<LieElement(int, const std::array<double, 4>&)> phi_at;
  std::function<LieElement(int, int, const std::array<double, 4>&)> dA_at;   // (axis, comp, x)
  std::function<LieElement(int, int, const std::array<double, 4>&)> dphi_at;

  // Set for the u(1) family; embed_solution reuses it.
  std::shared_ptr<const AbelianMonopoleField> abelian;
  Cocharacter rho{{1}};
};

AnalyticSolution dirac_monopole(const Vec3& x0, int n, double excision = 1e-3);
AnalyticSolution multi_monopole(const SingularityData& data, double excision = 1e-3);

/// (A, phi) -> (rho(A), rho(phi)) componentwise on the scalar data.
AnalyticSolution embed_solution(const Cocharacter& rho, const AnalyticSolution& sol);

/// A = 0, phi_a = t_a / y (a = x1,x2,x3), phi_y = 0 on y > 0.
AnalyticSolution nahm_pole(const Su2Triple& triple, double y_min = 1e-3);

/// Sample onto a grid; sites outside the solution domain are marked invalid.
FieldConfiguration sample(const AnalyticSolution& sol, const Grid& g,
                          bool exact_derivatives = false);

/// Pullback of a 3d solution to 4d with phi = vphi * du along the last axis
/// (u-independent KW configuration).
FieldConfiguration sample_kw_lift(const AnalyticSolution& sol3, const Grid& g4,
                                  bool exact_derivatives = false);

/// First Chern number (i/2pi) Int_{S^2} Tr F over the sphere of given radius,
/// midpoint quadrature with K x 2K angular nodes.
double sphere_chern1(const AnalyticSolution& sol, const Vec3& center, double radius,
                     int K);

}  // namespace kwlab
