#include "kwlab/grid.hpp"

#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

namespace kwlab {

Grid Grid::torus(int ndim, int n, double length) {
  Grid g;
  g.ndim = ndim;
  for (int a = 0; a < ndim; ++a) {
    g.shape[a] = n;
    g.spacing[a] = length / n;
    g.origin[a] = 0.0;
    g.boundary[a] = BoundaryMode::Periodic;
  }
  g.validate();
  return g;
}

Grid Grid::box(int ndim, const std::array<int, 4>& shape,
               const std::array<double, 4>& spacing,
               const std::array<double, 4>& origin) {
  Grid g;
  g.ndim = ndim;
  g.shape = shape;
  g.spacing = spacing;
  g.origin = origin;
  for (int a = 0; a < ndim; ++a) g.boundary[a] = BoundaryMode::Clamped;
  g.validate();
  return g;
}

Grid Grid::half_space(int nx, double xlen, int ny, double y0, double h) {
  Grid g;
  g.ndim = 4;
  for (int a = 0; a < 3; ++a) {
    g.shape[a] = nx;
    g.spacing[a] = xlen / nx;
    g.origin[a] = 0.0;
    g.boundary[a] = BoundaryMode::Periodic;
  }
  g.shape[3] = ny;
  g.spacing[3] = h;
  g.origin[3] = y0;
  g.boundary[3] = BoundaryMode::Clamped;
  g.orientation = -1.0;
  g.validate();
  return g;
}

void Grid::validate() const {
  if (ndim != 3 && ndim != 4) throw std::invalid_argument("grid: ndim must be 3 or 4");
  for (int a = 0; a < ndim; ++a) {
    if (shape[a] < 4) throw std::invalid_argument("grid: shape must be >= 4 on every axis");
    if (!(spacing[a] > 0)) throw std::invalid_argument("grid: spacing must be positive");
  }
}

std::size_t Grid::num_sites() const {
  std::size_t n = 1;
  for (int a = 0; a < ndim; ++a) n *= static_cast<std::size_t>(shape[a]);
  return n;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < ndim; ++a) v *= spacing[a];
  return v;
}

bool Grid::periodic_all() const {
  for (int a = 0; a < ndim; ++a)
    if (boundary[a] != BoundaryMode::Periodic) return false;
  return true;
}

std::size_t Grid::index(const std::array<int, 4>& c) const {
  std::size_t idx = 0;
  for (int a = 0; a < ndim; ++a) idx = idx * shape[a] + c[a];
  return idx;
}

std::array<int, 4> Grid::coords(std::size_t idx) const {
  std::array<int, 4> c{};
  for (int a = ndim - 1; a >= 0; --a) {
    c[a] = static_cast<int>(idx % shape[a]);
    idx /= shape[a];
  }
  return c;
}

std::array<double, 4> Grid::point(const std::array<int, 4>& c) const {
  std::array<double, 4> p{};
  for (int a = 0; a < ndim; ++a) p[a] = coordinate(a, c[a]);
  return p;
}

bool Grid::neighbor(const std::array<int, 4>& c, int axis, int step,
                    std::array<int, 4>& out) const {
  out = c;
  int v = c[axis] + step;
  if (boundary[axis] == BoundaryMode::Periodic) {
    v = ((v % shape[axis]) + shape[axis]) % shape[axis];
  } else if (v < 0 || v >= shape[axis]) {
    return false;
  }
  out[axis] = v;
  return true;
}

bool Grid::interior(const std::array<int, 4>& c, int layers) const {
  for (int a = 0; a < ndim; ++a) {
    if (boundary[a] == BoundaryMode::Clamped &&
        (c[a] < layers || c[a] >= shape[a] - layers))
      return false;
  }
  return true;
}

FieldConfiguration FieldConfiguration::zeros(const Grid& g, int matrix_dim, int nphi) {
  FieldConfiguration cfg;
  cfg.grid = g;
  cfg.matrix_dim = matrix_dim;
  cfg.nphi = nphi;
  const std::size_t n = g.num_sites();
  for (int a = 0; a < g.ndim; ++a) cfg.A[a] = MatArray(n, matrix_dim);
  for (int a = 0; a < nphi; ++a) cfg.phi[a] = MatArray(n, matrix_dim);
  return cfg;
}

namespace {
int g_threads = 0;  // 0 = hardware concurrency
constexpr std::size_t kBlock = 4096;
}  // namespace

int default_threads() {
  if (g_threads > 0) return g_threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_default_threads(int n) { g_threads = n; }

void parallel_for_sites(std::size_t n, int threads,
                        const std::function<void(std::size_t, std::size_t)>& block_fn) {
  if (threads <= 0) threads = default_threads();
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (threads == 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b)
      block_fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      block_fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    }
  };
  std::vector<std::thread> pool;
  const int nt = std::min<std::size_t>(threads, nblocks);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

double SiteReducer::total() const {
  double s = 0.0;
  for (double v : block_sums) s += v;  // fixed block order: deterministic
  return s;
}

}  // namespace kwlab
