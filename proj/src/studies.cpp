#include "kwlab/studies.hpp"

#include <cmath>

#include "kwlab/smoothfield.hpp"
#include "kwlab/weitzenbock.hpp"

namespace kwlab {

Json ConvergenceStudy::to_json() const {
  return Json{{"h", h}, {"err", err}, {"slope", slope}};
}

namespace {

struct MonopoleBox {
  std::array<double, 3> lo, len;
};

// Off-axis box: offset in x1/x2 beyond every site keeps the box away from
// the charges and from their -z Dirac strings; spans the sites in z.
MonopoleBox monopole_box(const SingularityData& data) {
  double mx = 0, my = 0, loz = 0, hiz = 0;
  for (const auto& s : data.sites) {
    mx = std::max(mx, s.pos.x());
    my = std::max(my, s.pos.y());
    loz = std::min(loz, s.pos.z());
    hiz = std::max(hiz, s.pos.z());
  }
  MonopoleBox b;
  b.lo = {mx + 0.3, my + 0.35, loz - 0.4};
  b.len = {0.8, 0.8, hiz - loz + 0.8};
  return b;
}

double ref_lattice_max(const ResidualReport& rep, const Grid& g, int stride,
                       bool skip_last_axis = false) {
  double worst = 0;
  for (std::size_t s = 0; s < rep.site_norm.size(); ++s) {
    const auto c = g.coords(s);
    bool on = true;
    const int naxes = skip_last_axis ? g.ndim - 1 : g.ndim;
    for (int a = 0; a < naxes && on; ++a)
      if (c[a] % stride != 0 || !g.interior(c, stride)) on = false;
    if (skip_last_axis && c[g.ndim - 1] != 0) on = false;
    if (on) worst = std::max(worst, rep.site_norm[s]);
  }
  return worst;
}

}  // namespace

ConvergenceStudy bogomolny_monopole_study(const SingularityData& data, double h0,
                                          int levels, int threads) {
  const AnalyticSolution sol = multi_monopole(data);
  const MonopoleBox box = monopole_box(data);
  ConvergenceStudy st;
  for (int lvl = 0; lvl < levels; ++lvl) {
    const int mult = 1 << lvl;
    const double h = h0 / mult;
    std::array<int, 4> shape{};
    for (int a = 0; a < 3; ++a)
      shape[a] = static_cast<int>(std::lround(box.len[a] / h0)) * mult + 1;
    const Grid g = Grid::box(3, shape, {h, h, h, 0}, {box.lo[0], box.lo[1], box.lo[2], 0});
    ResidualOptions opts;
    opts.keep_site_norms = true;
    opts.threads = threads;
    const ResidualReport rep = bogomolny_residual(sample(sol, g), opts);
    st.h.push_back(h);
    st.err.push_back(ref_lattice_max(rep, g, mult));
  }
  st.slope = fit_slope(st.h, st.err).slope;
  return st;
}

ConvergenceStudy kw_lift_study(const SingularityData& data, double h0, int levels,
                               int threads) {
  const AnalyticSolution sol = multi_monopole(data);
  const MonopoleBox box = monopole_box(data);
  ConvergenceStudy st;
  for (int lvl = 0; lvl < levels; ++lvl) {
    const int mult = 1 << lvl;
    const double h = h0 / mult;
    Grid g;
    g.ndim = 4;
    for (int a = 0; a < 3; ++a) {
      g.shape[a] = static_cast<int>(std::lround(box.len[a] / h0)) * mult + 1;
      g.spacing[a] = h;
      g.origin[a] = box.lo[a];
      g.boundary[a] = BoundaryMode::Clamped;
    }
    // the lift is u-independent: a short periodic fourth axis suffices
    g.shape[3] = 4;
    g.spacing[3] = h;
    g.origin[3] = 0;
    g.boundary[3] = BoundaryMode::Periodic;
    g.validate();
    ResidualOptions opts;
    opts.keep_site_norms = true;
    opts.threads = threads;
    const ResidualReport rep = kw_residual(sample_kw_lift(sol, g), opts);
    st.h.push_back(h);
    st.err.push_back(ref_lattice_max(rep, g, mult, /*skip_last_axis=*/true));
  }
  st.slope = fit_slope(st.h, st.err).slope;
  return st;
}

ConvergenceStudy nahm_pole_kw_study(int dim, double h0, int levels, int threads) {
  const AnalyticSolution np = nahm_pole(principal_su2(dim));
  ConvergenceStudy st;
  const int nx0 = static_cast<int>(std::lround(0.5 / h0));
  const int ny0 = static_cast<int>(std::lround(1.0 / h0));
  for (int lvl = 0; lvl < levels; ++lvl) {
    const int mult = 1 << lvl;
    const double h = h0 / mult;
    const Grid g = Grid::half_space(nx0 * mult, 0.5, ny0 * mult + 1, 0.25, h);
    ResidualOptions opts;
    opts.keep_site_norms = true;
    opts.threads = threads;
    const ResidualReport rep = kw_residual(sample(np, g), opts);
    double worst = 0;
    for (std::size_t s = 0; s < rep.site_norm.size(); ++s) {
      const auto c = g.coords(s);
      bool on = true;
      for (int a = 0; a < 4; ++a)
        if (c[a] % mult != 0) on = false;
      if (c[3] < mult || c[3] >= g.shape[3] - mult) on = false;
      if (on) worst = std::max(worst, rep.site_norm[s]);
    }
    st.h.push_back(h);
    st.err.push_back(worst);
  }
  st.slope = fit_slope(st.h, st.err).slope;
  return st;
}

FieldConfiguration nahm_plus_bump_configuration(double h, double amplitude,
                                                std::uint64_t seed, int matrix_dim) {
  const int nx = std::max(4, static_cast<int>(std::lround(0.5 / h)));
  const int ny = static_cast<int>(std::lround(1.25 / h)) + 1;
  const Grid g = Grid::half_space(nx, 0.5, ny, 0.25, h);
  FieldConfiguration cfg = sample(nahm_pole(principal_su2(matrix_dim)), g);
  SmoothFieldParams p;
  p.seed = seed;
  p.mode_cutoff = 1;
  p.amplitude = amplitude;
  p.matrix_dim = matrix_dim;
  p.nmodes = 8;
  p.margin_fraction = 0.2;  // bump supported on y in [0.5, 1.25]
  add_smooth_field(cfg, make_smooth_field(g, p));
  return cfg;
}

Json HalfspaceStudy::to_json() const {
  return Json{{"h", h},
              {"discrepancy", discrepancy},
              {"slope", slope},
              {"unperturbed_Iprime", unperturbed_Iprime},
              {"perturbed_Iprime", perturbed_Iprime}};
}

HalfspaceStudy halfspace_identity_study(const std::vector<double>& hs,
                                        double amplitude, std::uint64_t seed,
                                        int matrix_dim, int threads) {
  HalfspaceStudy st;
  ResidualOptions opts;
  opts.threads = threads;
  for (double h : hs) {
    const FieldConfiguration cfg =
        nahm_plus_bump_configuration(h, amplitude, seed, matrix_dim);
    st.h.push_back(h);
    st.discrepancy.push_back(halfspace_identity_check(cfg, opts));
    if (h == hs.back()) st.perturbed_Iprime = halfspace_energy_Iprime(cfg, opts).total();
  }
  st.slope = fit_slope(st.h, st.discrepancy).slope;
  // unperturbed Nahm pole with analytic derivatives at the finest spacing
  const double hf = hs.back();
  const int nx = std::max(4, static_cast<int>(std::lround(0.5 / hf)));
  const int ny = static_cast<int>(std::lround(1.25 / hf)) + 1;
  const Grid g = Grid::half_space(nx, 0.5, ny, 0.25, hf);
  ResidualOptions exact;
  exact.scheme = DiffScheme::Exact;
  exact.threads = threads;
  st.unperturbed_Iprime =
      halfspace_energy_Iprime(sample(nahm_pole(principal_su2(matrix_dim)), g, true), exact)
          .total();
  return st;
}

}  // namespace kwlab
