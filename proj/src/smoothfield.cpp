#include "kwlab/smoothfield.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace kwlab {

namespace {

// C^inf bump on (-1,1): exp(1 - 1/(1-s^2)), zero outside.
double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}
double bump_prime(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double u = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (u * u));
}

struct EnvEval {
  double value = 1.0;
  std::array<double, 4> dlog{};  // d/dx_a of log-envelope factor, per axis
};

EnvEval envelope(const SmoothField& f, const std::array<double, 4>& x) {
  EnvEval e;
  std::array<double, 4> dfac{};
  std::array<double, 4> fac{};
  for (int a = 0; a < f.ndim; ++a) {
    fac[a] = 1.0;
    dfac[a] = 0.0;
    if (!f.enveloped[a]) continue;
    const double mid = 0.5 * (f.env_lo[a] + f.env_hi[a]);
    const double half = 0.5 * (f.env_hi[a] - f.env_lo[a]);
    const double s = (x[a] - mid) / half;
    fac[a] = bump(s);
    dfac[a] = bump_prime(s) / half;
  }
  for (int a = 0; a < f.ndim; ++a) e.value *= fac[a];
  for (int a = 0; a < f.ndim; ++a) {
    // derivative of the product along axis a: replace fac[a] by dfac[a]
    double d = dfac[a];
    for (int b = 0; b < f.ndim; ++b)
      if (b != a) d *= fac[b];
    e.dlog[a] = d;  // actually d(envelope)/dx_a, not logarithmic
  }
  return e;
}

}  // namespace

LieElement SmoothField::value(int component, const std::array<double, 4>& x) const {
  const EnvEval env = envelope(*this, x);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(matrix_dim, matrix_dim);
  if (env.value != 0.0) {
    for (const auto& m : modes[component]) {
      double phase = 0.0;
      for (int a = 0; a < ndim; ++a)
        phase += 2.0 * M_PI * m.k[a] * (x[a] - origin[a]) / extent[a];
      acc += std::cos(phase) * m.amp_cos + std::sin(phase) * m.amp_sin;
    }
    acc *= env.value;
  }
  return acc;
}

LieElement SmoothField::partial(int component, int axis,
                                const std::array<double, 4>& x) const {
  const EnvEval env = envelope(*this, x);
  Eigen::MatrixXcd trig = Eigen::MatrixXcd::Zero(matrix_dim, matrix_dim);
  Eigen::MatrixXcd dtrig = Eigen::MatrixXcd::Zero(matrix_dim, matrix_dim);
  const bool need_value = enveloped[axis];
  if (env.value == 0.0 && env.dlog[axis] == 0.0) return trig;
  for (const auto& m : modes[component]) {
    double phase = 0.0;
    for (int a = 0; a < ndim; ++a)
      phase += 2.0 * M_PI * m.k[a] * (x[a] - origin[a]) / extent[a];
    const double kax = 2.0 * M_PI * m.k[axis] / extent[axis];
    dtrig += kax * (-std::sin(phase) * m.amp_cos + std::cos(phase) * m.amp_sin);
    if (need_value) trig += std::cos(phase) * m.amp_cos + std::sin(phase) * m.amp_sin;
  }
  Eigen::MatrixXcd out = env.value * dtrig;
  if (need_value) out += env.dlog[axis] * trig;
  return out;
}

SmoothField make_smooth_field(const Grid& g, const SmoothFieldParams& p) {
  SmoothField f;
  f.ndim = g.ndim;
  f.matrix_dim = p.matrix_dim;
  f.nphi = p.nphi > 0 ? p.nphi : g.ndim;
  f.amplitude = p.amplitude;
  for (int a = 0; a < g.ndim; ++a) {
    // periodic axes: the period; clamped axes: the physical box length, so
    // the same seed samples the same smooth field under grid refinement
    const int cells = g.boundary[a] == BoundaryMode::Periodic ? g.shape[a] : g.shape[a] - 1;
    f.extent[a] = cells * g.spacing[a];
    f.origin[a] = g.origin[a];
    f.enveloped[a] = g.boundary[a] == BoundaryMode::Clamped;
    const double lo = g.origin[a];
    const double hi = g.origin[a] + (g.shape[a] - 1) * g.spacing[a];
    const double margin = p.margin_fraction * (hi - lo);
    f.env_lo[a] = lo + margin;
    f.env_hi[a] = hi - margin;
  }
  Rng rng(p.seed);
  const int ncomp = g.ndim + f.nphi;
  f.modes.resize(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    std::set<std::array<int, 4>> seen;
    auto& dst = f.modes[c];
    int guard = 0;
    while (static_cast<int>(dst.size()) < p.nmodes && guard++ < p.nmodes * 64) {
      std::array<int, 4> k{};
      bool zero = true;
      for (int a = 0; a < g.ndim; ++a) {
        k[a] = static_cast<int>(rng.next_u64() % (2 * p.mode_cutoff + 1)) - p.mode_cutoff;
        if (k[a] != 0) zero = false;
      }
      if (zero || !seen.insert(k).second) continue;
      SmoothField::Mode m;
      m.k = k;
      const double scale = p.amplitude / std::sqrt(static_cast<double>(p.nmodes));
      m.amp_cos = scale * random_antihermitian(p.matrix_dim, p.traceless, rng);
      m.amp_sin = scale * random_antihermitian(p.matrix_dim, p.traceless, rng);
      dst.push_back(std::move(m));
    }
  }
  if (p.amplitude == 0.0)
    for (auto& ms : f.modes) ms.clear();
  return f;
}

FieldConfiguration random_smooth_field(const Grid& g, const SmoothFieldParams& p) {
  const SmoothField f = make_smooth_field(g, p);
  FieldConfiguration cfg = FieldConfiguration::zeros(g, p.matrix_dim, f.nphi);
  if (p.with_exact_derivatives) {
    cfg.exact.emplace();
    for (int i = 0; i < g.ndim; ++i) {
      for (int j = 0; j < g.ndim; ++j) cfg.exact->dA[i][j] = MatArray(g.num_sites(), p.matrix_dim);
      for (int j = 0; j < cfg.nphi; ++j) cfg.exact->dphi[i][j] = MatArray(g.num_sites(), p.matrix_dim);
    }
  }
  add_smooth_field(cfg, f);
  return cfg;
}

void add_smooth_field(FieldConfiguration& cfg, const SmoothField& f) {
  const Grid& g = cfg.grid;
  const std::size_t n = g.num_sites();
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const auto x = g.point(g.coords(s));
      for (int c = 0; c < g.ndim; ++c) cfg.A[c][s] += f.value(c, x);
      for (int c = 0; c < cfg.nphi; ++c) cfg.phi[c][s] += f.value(g.ndim + c, x);
      if (cfg.exact) {
        for (int i = 0; i < g.ndim; ++i) {
          for (int j = 0; j < g.ndim; ++j) cfg.exact->dA[i][j][s] += f.partial(j, i, x);
          for (int j = 0; j < cfg.nphi; ++j)
            cfg.exact->dphi[i][j][s] += f.partial(g.ndim + j, i, x);
        }
      }
    }
  });
}

MatArray random_gauge(const Grid& g, std::uint64_t seed, int mode_cutoff,
                      double amplitude, int matrix_dim) {
  SmoothFieldParams p;
  p.seed = seed;
  p.mode_cutoff = mode_cutoff;
  p.amplitude = amplitude;
  p.matrix_dim = matrix_dim;
  p.nphi = 1;
  p.nmodes = 16;
  const SmoothField f = make_smooth_field(g, p);
  const std::size_t n = g.num_sites();
  MatArray out(n, matrix_dim);
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const auto x = g.point(g.coords(s));
      const LieElement X = f.value(g.ndim, x);  // generator: the phi slot
      // exp of anti-hermitian X via eigen-decomposition of iX (hermitian)
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Complex(0, 1) * X);
      Eigen::VectorXcd ph(matrix_dim);
      for (int k = 0; k < matrix_dim; ++k)
        ph(k) = std::exp(Complex(0, -es.eigenvalues()(k)));
      out[s] = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    }
  });
  return out;
}

}  // namespace kwlab
