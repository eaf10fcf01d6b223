#include "kwlab/liealg.hpp"

#include <cmath>
#include <stdexcept>

namespace kwlab {

bool is_antihermitian(const LieElement& x, double tol) {
  return (x + x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs(const LieElement& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

LieElement commutator(const LieElement& x, const LieElement& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return x * y - y * x;
}

double trace_form(const LieElement& x, const LieElement& y) {
  if (x.rows() != y.rows())
    throw std::invalid_argument("trace_form: dimension mismatch");
  return -(x * y).trace().real();
}

double tf_norm_sq(const LieElement& x) {
  return x.squaredNorm();  // Re Tr(X^dagger X)
}

double tf_norm(const LieElement& x) { return std::sqrt(tf_norm_sq(x)); }

double Su2Triple::commutation_defect() const {
  double d = max_abs(commutator(t1, t2) - t3);
  d = std::max(d, max_abs(commutator(t2, t3) - t1));
  d = std::max(d, max_abs(commutator(t3, t1) - t2));
  return d;
}

Su2Triple principal_su2(int dim) {
  if (dim < 2) throw std::invalid_argument("principal_su2: dim must be >= 2");
  const double s = 0.5 * (dim - 1);
  Eigen::MatrixXcd j3 = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) j3(k, k) = s - k;  // m = s - k
  for (int k = 1; k < dim; ++k) {
    const double m = s - k;  // J+ |s,m> lands on row k-1
    jp(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  Eigen::MatrixXcd jm = jp.adjoint();
  const Complex i(0, 1);
  Su2Triple t;
  t.t1 = -i * 0.5 * (jp + jm);
  t.t2 = -i * (jp - jm) / (2.0 * i);
  t.t3 = -i * j3;
  return t;
}

bool Cocharacter::dominant() const {
  for (std::size_t k = 1; k < weights.size(); ++k)
    if (weights[k] > weights[k - 1]) return false;
  return true;
}

LieElement cocharacter_element(const Cocharacter& rho, double x) {
  const int n = rho.dim();
  LieElement out = LieElement::Zero(n, n);
  for (int k = 0; k < n; ++k) out(k, k) = Complex(0, rho.weights[k] * x);
  return out;
}

// xoshiro256** (public-domain algorithm by Blackman/Vigna), splitmix64 seeding
namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = 0.0;
  do { u1 = uniform(); } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(2.0 * M_PI * u2);
  has_cached_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

LieElement random_antihermitian(int dim, bool traceless, Rng& rng) {
  Eigen::MatrixXcd h(dim, dim);
  for (int r = 0; r < dim; ++r) {
    h(r, r) = Complex(rng.normal(), 0);
    for (int c = r + 1; c < dim; ++c) {
      h(r, c) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
      h(c, r) = std::conj(h(r, c));
    }
  }
  if (traceless && dim > 1) {
    const Complex tr = h.trace() / static_cast<double>(dim);
    for (int r = 0; r < dim; ++r) h(r, r) -= tr;
  }
  return Complex(0, 1) * h;
}

}  // namespace kwlab
