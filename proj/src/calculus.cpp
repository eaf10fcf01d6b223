#include "kwlab/calculus.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace kwlab {

const char* to_string(DiffScheme s) {
  switch (s) {
    case DiffScheme::Central2: return "central2";
    case DiffScheme::Spectral: return "spectral";
    case DiffScheme::Exact: return "exact";
  }
  return "?";
}

namespace {

// Real circulant spectral differentiation matrix (Nyquist mode dropped);
// exact on trigonometric polynomials below the Nyquist frequency.
const std::vector<double>& spectral_column(int n, double h) {
  static std::map<std::pair<int, long long>, std::vector<double>> cache;
  static std::mutex mu;
  const long long hkey = static_cast<long long>(h * 1e15);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, hkey});
  if (it != cache.end()) return it->second;
  std::vector<double> col(n, 0.0);
  const double length = n * h;
  for (int d = 0; d < n; ++d) {
    double acc = 0.0;
    for (int m = 1; m <= (n - 1) / 2; ++m) {
      const double kappa = 2.0 * M_PI * m / length;
      // i*kappa*e^{i t} + (-i*kappa)*e^{-i t} = -2 kappa sin(t)
      acc += -2.0 * kappa * std::sin(2.0 * M_PI * m * d / n);
    }
    col[d] = acc / n;
  }
  return cache.emplace(std::make_pair(n, hkey), std::move(col)).first->second;
}

}  // namespace

MatArray derivative(const Grid& g, const MatArray& f, int axis, DiffScheme scheme) {
  const std::size_t n = g.num_sites();
  const int dim = f.dim();
  MatArray out(n, dim);
  if (scheme == DiffScheme::Exact)
    throw std::invalid_argument("derivative: Exact scheme reads stored arrays, not this path");

  if (scheme == DiffScheme::Spectral) {
    if (g.boundary[axis] != BoundaryMode::Periodic)
      throw std::invalid_argument("derivative: spectral scheme needs a periodic axis");
    const auto& col = spectral_column(g.shape[axis], g.spacing[axis]);
    const int nax = g.shape[axis];
    parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s) {
        auto c = g.coords(s);
        const int j = c[axis];
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
        for (int k = 0; k < nax; ++k) {
          const double w = col[((j - k) % nax + nax) % nax];
          if (w == 0.0) continue;
          c[axis] = k;
          acc += w * f[g.index(c)];
        }
        out[s] = acc;
      }
    });
    return out;
  }

  // Central2: clamped edges keep zeros, consumers stay on interior sites.
  const double inv2h = 0.5 / g.spacing[axis];
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    std::array<int, 4> cp, cm;
    for (std::size_t s = lo; s < hi; ++s) {
      const auto c = g.coords(s);
      if (!g.neighbor(c, axis, +1, cp) || !g.neighbor(c, axis, -1, cm)) continue;
      out[s] = inv2h * (f[g.index(cp)] - f[g.index(cm)]);
    }
  });
  return out;
}

FieldDerivatives all_derivatives(const FieldConfiguration& cfg, DiffScheme scheme) {
  FieldDerivatives d;
  if (scheme == DiffScheme::Exact) {
    if (!cfg.exact)
      throw std::invalid_argument("all_derivatives: configuration carries no exact arrays");
    d.dA = cfg.exact->dA;
    d.dphi = cfg.exact->dphi;
    return d;
  }
  for (int i = 0; i < cfg.grid.ndim; ++i) {
    for (int j = 0; j < cfg.grid.ndim; ++j)
      d.dA[i][j] = derivative(cfg.grid, cfg.A[j], i, scheme);
    for (int j = 0; j < cfg.nphi; ++j)
      d.dphi[i][j] = derivative(cfg.grid, cfg.phi[j], i, scheme);
  }
  return d;
}

int TwoForm::pair_index(int ndim, int i, int j) {
  if (ndim == 3) {
    if (i == 0 && j == 1) return 0;
    if (i == 0 && j == 2) return 1;
    if (i == 1 && j == 2) return 2;
  } else {
    if (i == 0 && j == 1) return 0;
    if (i == 0 && j == 2) return 1;
    if (i == 0 && j == 3) return 2;
    if (i == 1 && j == 2) return 3;
    if (i == 1 && j == 3) return 4;
    if (i == 2 && j == 3) return 5;
  }
  throw std::invalid_argument("pair_index: need 0 <= i < j < ndim");
}

std::pair<int, int> TwoForm::pair_axes(int ndim, int p) {
  static const std::pair<int, int> p3[] = {{0, 1}, {0, 2}, {1, 2}};
  static const std::pair<int, int> p4[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return ndim == 3 ? p3[p] : p4[p];
}

TwoForm TwoForm::zeros(const Grid& g, int matrix_dim) {
  TwoForm f;
  f.ndim = g.ndim;
  f.comp.resize(npairs(g.ndim));
  for (auto& c : f.comp) c = MatArray(g.num_sites(), matrix_dim);
  return f;
}

TwoForm curvature(const FieldConfiguration& cfg, DiffScheme scheme) {
  return curvature(cfg, all_derivatives(cfg, scheme));
}

TwoForm curvature(const FieldConfiguration& cfg, const FieldDerivatives& d) {
  TwoForm F = TwoForm::zeros(cfg.grid, cfg.matrix_dim);
  const std::size_t n = cfg.grid.num_sites();
  for (int p = 0; p < TwoForm::npairs(cfg.grid.ndim); ++p) {
    const auto [i, j] = TwoForm::pair_axes(cfg.grid.ndim, p);
    parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s)
        F.comp[p][s] = d.dA[i][j][s] - d.dA[j][i][s] + commutator(cfg.A[i][s], cfg.A[j][s]);
    });
  }
  return F;
}

std::array<std::array<MatArray, 4>, 4> covariant_derivative(
    const FieldConfiguration& cfg, DiffScheme scheme) {
  const auto d = all_derivatives(cfg, scheme);
  std::array<std::array<MatArray, 4>, 4> out;
  const std::size_t n = cfg.grid.num_sites();
  for (int i = 0; i < cfg.grid.ndim; ++i)
    for (int j = 0; j < cfg.nphi; ++j) {
      out[i][j] = MatArray(n, cfg.matrix_dim);
      parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s)
          out[i][j][s] = d.dphi[i][j][s] + commutator(cfg.A[i][s], cfg.phi[j][s]);
      });
    }
  return out;
}

namespace {
// (star X)_{ij} = orientation * (1/2) eps_{ijkl} X_{kl} on pair storage:
// pair p maps to pair dual4[p] with sign sgn4[p].
constexpr int dual4[6] = {5, 4, 3, 2, 1, 0};
constexpr double sgn4[6] = {+1, -1, +1, +1, -1, +1};
}  // namespace

TwoForm hodge_star(const TwoForm& x, double orientation) {
  if (x.ndim != 4) throw std::invalid_argument("hodge_star: 2-form star needs ndim=4");
  TwoForm out;
  out.ndim = 4;
  out.comp.resize(6);
  for (int p = 0; p < 6; ++p) {
    const MatArray& src = x.comp[dual4[p]];
    out.comp[p] = MatArray(src.size(), src.dim());
    const double w = orientation * sgn4[p];
    for (std::size_t s = 0; s < src.size(); ++s) out.comp[p][s] = w * src[s];
  }
  return out;
}

TwoForm hodge_star_3d_1form(const Grid& g, const std::array<MatArray, 4>& omega,
                            double orientation) {
  TwoForm out = TwoForm::zeros(g, omega[0].dim());
  const std::size_t n = g.num_sites();
  for (std::size_t s = 0; s < n; ++s) {
    out.comp[0][s] = orientation * omega[2][s];         // (0,1) <- +w_2
    out.comp[1][s] = -orientation * omega[1][s];        // (0,2) <- -w_1
    out.comp[2][s] = orientation * omega[0][s];         // (1,2) <- +w_0
  }
  return out;
}

std::array<MatArray, 4> hodge_star_3d_2form(const TwoForm& x, double orientation) {
  if (x.ndim != 3) throw std::invalid_argument("hodge_star_3d_2form: ndim must be 3");
  std::array<MatArray, 4> out;
  const std::size_t n = x.comp[0].size();
  const int dim = x.comp[0].dim();
  for (int a = 0; a < 3; ++a) out[a] = MatArray(n, dim);
  for (std::size_t s = 0; s < n; ++s) {
    out[0][s] = orientation * x.comp[2][s];
    out[1][s] = -orientation * x.comp[1][s];
    out[2][s] = orientation * x.comp[0][s];
  }
  return out;
}

TwoForm selfdual_part(const TwoForm& x, double orientation, int sign) {
  TwoForm sx = hodge_star(x, orientation);
  TwoForm out;
  out.ndim = x.ndim;
  out.comp.resize(x.comp.size());
  for (std::size_t p = 0; p < x.comp.size(); ++p) {
    out.comp[p] = MatArray(x.comp[p].size(), x.comp[p].dim());
    for (std::size_t s = 0; s < x.comp[p].size(); ++s)
      out.comp[p][s] = 0.5 * (x.comp[p][s] + static_cast<double>(sign) * sx.comp[p][s]);
  }
  return out;
}

std::vector<LieElement> hodge_star_site(const std::vector<LieElement>& comps,
                                        int ndim, int degree, double orientation) {
  if (ndim == 3 && degree == 1) {
    if (comps.size() != 3) throw std::invalid_argument("hodge_star_site: need 3 components");
    return {orientation * comps[2], -orientation * comps[1], orientation * comps[0]};
  }
  if (ndim == 3 && degree == 2) {
    if (comps.size() != 3) throw std::invalid_argument("hodge_star_site: need 3 pair components");
    return {orientation * comps[2], -orientation * comps[1], orientation * comps[0]};
  }
  if (ndim == 4 && degree == 2) {
    if (comps.size() != 6) throw std::invalid_argument("hodge_star_site: need 6 pair components");
    std::vector<LieElement> out(6);
    for (int p = 0; p < 6; ++p) out[p] = orientation * sgn4[p] * comps[dual4[p]];
    return out;
  }
  throw std::invalid_argument("hodge_star_site: unsupported degree");
}

FieldConfiguration gauge_transform(const FieldConfiguration& cfg, const MatArray& g,
                                   DiffScheme scheme, double unitary_tol) {
  const std::size_t n = cfg.grid.num_sites();
  if (g.size() != n) throw std::invalid_argument("gauge_transform: g has wrong site count");
  const int dim = cfg.matrix_dim;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t s = 0; s < n; ++s) {
    if ((g[s] * g[s].adjoint() - id).cwiseAbs().maxCoeff() > unitary_tol)
      throw std::invalid_argument("gauge_transform: g is not unitary within tolerance");
  }
  FieldConfiguration out = FieldConfiguration::zeros(cfg.grid, dim, cfg.nphi);
  out.valid = cfg.valid;
  std::array<MatArray, 4> dg;
  for (int i = 0; i < cfg.grid.ndim; ++i) dg[i] = derivative(cfg.grid, g, i, scheme);
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const Eigen::MatrixXcd ginv = g[s].adjoint();
      for (int i = 0; i < cfg.grid.ndim; ++i)
        out.A[i][s] = g[s] * cfg.A[i][s] * ginv - dg[i][s] * ginv;
      for (int j = 0; j < cfg.nphi; ++j)
        out.phi[j][s] = g[s] * cfg.phi[j][s] * ginv;
    }
  });
  return out;
}

std::vector<std::uint8_t> stencil_ok_mask(const FieldConfiguration& cfg, int layers) {
  const Grid& g = cfg.grid;
  const std::size_t n = g.num_sites();
  std::vector<std::uint8_t> ok(n, 0);
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    std::array<int, 4> nb;
    for (std::size_t s = lo; s < hi; ++s) {
      const auto c = g.coords(s);
      if (!g.interior(c, layers) || !cfg.site_valid(s)) continue;
      bool good = true;
      for (int a = 0; a < g.ndim && good; ++a)
        for (int st = -layers; st <= layers && good; ++st) {
          if (st == 0) continue;
          if (!g.neighbor(c, a, st, nb) || !cfg.site_valid(g.index(nb))) good = false;
        }
      ok[s] = good ? 1 : 0;
    }
  });
  return ok;
}

double integrate(const Grid& g, const std::vector<std::uint8_t>& mask,
                 const std::function<double(std::size_t)>& density, int threads) {
  const std::size_t n = g.num_sites();
  const std::size_t nblocks = (n + 4095) / 4096;
  SiteReducer red(nblocks);
  parallel_for_sites(n, threads, [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t s = lo; s < hi; ++s)
      if (mask.empty() || mask[s]) acc += density(s);
    red.block_sums[lo / 4096] = acc;
  });
  return red.total() * g.cell_volume();
}

}  // namespace kwlab
