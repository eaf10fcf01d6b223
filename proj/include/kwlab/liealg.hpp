#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace kwlab {

using Complex = std::complex<double>;

/// Lie-algebra element of the compact real form: anti-hermitian N x N complex
/// matrix (traceless for su(N), pure-imaginary scalar for u(1)).
using LieElement = Eigen::MatrixXcd;

constexpr double kDefaultTol = 1e-12;

bool is_antihermitian(const LieElement& x, double tol = kDefaultTol);
double max_abs(const LieElement& x);

/// XY - YX. Throws on dimension mismatch.
LieElement commutator(const LieElement& x, const LieElement& y);

/// -Re Tr(XY); positive definite on anti-hermitian matrices.
/// Normalization is the fundamental trace; every identity checked in this
/// project is covariant under rescaling this form by a positive constant.
double trace_form(const LieElement& x, const LieElement& y);

/// Trace-form norm: sqrt(Re Tr(X^dagger X)). Agrees with trace_form(X,X)^(1/2)
/// on anti-hermitian X but stays a norm for general complex matrices.
double tf_norm_sq(const LieElement& x);
double tf_norm(const LieElement& x);

/// Images t1,t2,t3 of a standard su(2) basis, [t1,t2] = t3 and cyclic.
struct Su2Triple {
  LieElement t1, t2, t3;

  int dim() const { return static_cast<int>(t1.rows()); }
  /// Max norm of [t_a,t_b] - t_c over cyclic (a,b,c).
  double commutation_defect() const;
};

/// Irreducible dim-dimensional representation (spin (dim-1)/2), t_a = -i J_a.
/// t3 = -i diag(s, s-1, ..., -s); dim = 2 gives t_a = -(i/2) sigma_a.
Su2Triple principal_su2(int dim);

/// Dominant integer weight vector defining rho: u(1) -> diagonal torus.
struct Cocharacter {
  std::vector<int> weights;  // sorted nonincreasing

  int dim() const { return static_cast<int>(weights.size()); }
  bool dominant() const;
};

/// diag(i n_1 x, ..., i n_dim x).
LieElement cocharacter_element(const Cocharacter& rho, double x);

/// Random anti-hermitian matrix with unit-scale entries; traceless if
/// requested. Used by test-field generators; deterministic given the inputs.
LieElement random_antihermitian(int dim, bool traceless, class Rng& rng);

/// Portable 64-bit RNG (splitmix-seeded xoshiro256**) with a Box-Muller
/// normal sampler; std::normal_distribution is not bit-stable across
/// standard libraries, this is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();      // [0,1)
  double normal();       // standard normal
 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace kwlab
