#include "kwlab/residuals.hpp"

#include "kwlab/smoothfield.hpp"
#include "kwlab/solutions.hpp"

#include "doctest.h"

using namespace kwlab;

namespace {

// criterion-2 style off-axis box around the +1/-1 pair
Grid monopole_box(double h) {
  const double lo[3] = {0.3, 0.35, -0.4};
  const double len[3] = {0.8, 0.8, 1.8};
  std::array<int, 4> shape{};
  for (int a = 0; a < 3; ++a) shape[a] = static_cast<int>(std::lround(len[a] / h)) + 1;
  return Grid::box(3, shape, {h, h, h, 0}, {lo[0], lo[1], lo[2], 0});
}

SingularityData charge_pair() {
  SingularityData d;
  d.sites.push_back({Vec3(0, 0, 0), 1});
  d.sites.push_back({Vec3(0, 0, 1), -1});
  return d;
}

// max of the per-site residual norm over the coarse reference sublattice
double ref_lattice_max(const ResidualReport& rep, const Grid& g, int stride) {
  double worst = 0;
  for (std::size_t s = 0; s < rep.site_norm.size(); ++s) {
    const auto c = g.coords(s);
    bool on = true;
    for (int a = 0; a < g.ndim; ++a)
      if (c[a] % stride != 0 || !g.interior(c, stride)) on = false;
    if (on) worst = std::max(worst, rep.site_norm[s]);
  }
  return worst;
}

// independent one-sided (forward) stencil Bogomolny evaluation
double bogomolny_forward_max(const FieldConfiguration& cfg) {
  const Grid& g = cfg.grid;
  auto fwd = [&](const MatArray& f, int axis, std::size_t s) -> LieElement {
    const auto c = g.coords(s);
    std::array<int, 4> cp;
    if (!g.neighbor(c, axis, +1, cp)) return LieElement::Zero(cfg.matrix_dim, cfg.matrix_dim);
    return (f[g.index(cp)] - f[s]) / g.spacing[axis];
  };
  const auto mask = stencil_ok_mask(cfg, 1);
  double worst = 0;
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    if (!mask[s]) continue;
    LieElement F[3][3], Dphi[3];
    for (int a = 0; a < 3; ++a)
      Dphi[a] = fwd(cfg.phi[0], a, s) + commutator(cfg.A[a][s], cfg.phi[0][s]);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        F[a][b] = fwd(cfg.A[b], a, s) - fwd(cfg.A[a], b, s) +
                  commutator(cfg.A[a][s], cfg.A[b][s]);
    const LieElement r01 = F[0][1] - Dphi[2];
    const LieElement r02 = F[0][2] + Dphi[1];
    const LieElement r12 = F[1][2] - Dphi[0];
    worst = std::max({worst, tf_norm(r01), tf_norm(r02), tf_norm(r12)});
  }
  return worst;
}

}  // namespace

TEST_CASE("bogomolny residual: zero fields vanish exactly") {
  const Grid g = Grid::torus(3, 6, 1.0);
  const FieldConfiguration cfg = FieldConfiguration::zeros(g, 2, 1);
  const ResidualReport rep = bogomolny_residual(cfg);
  CHECK(rep.max_norm() == 0.0);
  CHECK(rep.l2_norm() == 0.0);
}

TEST_CASE("bogomolny residual on the sampled monopole pair converges at order 2") {
  const AnalyticSolution sol = multi_monopole(charge_pair());
  std::vector<double> hs, errs;
  for (int mult : {1, 2, 4}) {
    const double h = 0.1 / mult;
    const Grid g = monopole_box(h);
    const FieldConfiguration cfg = sample(sol, g);
    ResidualOptions opts;
    opts.keep_site_norms = true;
    const ResidualReport rep = bogomolny_residual(cfg, opts);
    hs.push_back(h);
    errs.push_back(ref_lattice_max(rep, g, mult));
  }
  CHECK(fit_slope(hs, errs).slope >= 1.9);
  // L2 <= sqrt(volume) * max (report invariant)
  const Grid g = monopole_box(0.05);
  ResidualOptions opts;
  const ResidualReport rep = bogomolny_residual(sample(sol, g), opts);
  CHECK(rep.l2_norm() <= std::sqrt(rep.region_volume) * rep.max_norm() * (1 + 1e-12));
}

TEST_CASE("bogomolny residual of the embedded monopole converges too") {
  const AnalyticSolution sol =
      embed_solution(Cocharacter{{1, -1}}, dirac_monopole(Vec3(0, 0, 0), 1));
  std::vector<double> hs, errs;
  for (int mult : {1, 2}) {
    const double h = 0.1 / mult;
    const Grid g = monopole_box(h);
    ResidualOptions opts;
    opts.keep_site_norms = true;
    const ResidualReport rep = bogomolny_residual(sample(sol, g), opts);
    hs.push_back(h);
    errs.push_back(ref_lattice_max(rep, g, mult));
  }
  CHECK(errs[0] / errs[1] > 3.2);  // ~order 2
}

TEST_CASE("bogomolny: one-sided oracle agrees with the central evaluation at O(h)") {
  SmoothFieldParams p;
  p.seed = 23;
  p.nphi = 1;
  p.nmodes = 10;
  std::vector<double> hs, diff;
  for (int n : {12, 24}) {
    const Grid g = Grid::torus(3, n, 1.0);
    const FieldConfiguration cfg = random_smooth_field(g, p);
    const ResidualReport central = bogomolny_residual(cfg);
    const double fwd = bogomolny_forward_max(cfg);
    CHECK(central.max_norm() > 0.01);  // random field is far from a solution
    hs.push_back(1.0 / n);
    diff.push_back(std::abs(central.max_norm() - fwd));
  }
  CHECK(diff[0] / diff[1] > 1.6);  // first-order agreement between stencils
}

TEST_CASE("dbar conjugation: zero fields, monopole consistency, frozen sign") {
  const Grid g = Grid::torus(3, 6, 1.0);
  CHECK(dbar_conjugation_residual(FieldConfiguration::zeros(g, 2, 1)).max_norm() == 0.0);

  const AnalyticSolution sol = multi_monopole(charge_pair());
  std::vector<double> hs, errs, errs_wrong;
  for (int mult : {1, 2}) {
    const double h = 0.1 / mult;
    const Grid gb = monopole_box(h);
    const FieldConfiguration cfg = sample(sol, gb);
    ResidualOptions opts;
    opts.keep_site_norms = true;
    const ResidualReport rep = dbar_conjugation_residual(cfg, opts, +1);
    hs.push_back(h);
    errs.push_back(ref_lattice_max(rep, gb, mult));
    errs_wrong.push_back(dbar_conjugation_residual(cfg, opts, -1).max_norm());
  }
  CHECK(errs[0] / errs[1] > 3.2);       // frozen +i sign: O(h^2) on the solution
  CHECK(errs_wrong[0] > 0.1);           // rejected -i sign does not vanish
  CHECK(errs_wrong[1] > 0.1);
}

TEST_CASE("dbar conjugation: random non-solution bounded below, h-independent") {
  // fixed-seed regression: the commutator does not shrink under refinement
  SmoothFieldParams p;
  p.seed = 77;
  p.nphi = 1;
  p.nmodes = 10;
  std::vector<double> vals;
  for (int n : {8, 16}) {
    const Grid g = Grid::torus(3, n, 1.0);
    const FieldConfiguration cfg = random_smooth_field(g, p);
    vals.push_back(dbar_conjugation_residual(cfg).max_norm());
  }
  CHECK(vals[0] > 0.02);
  CHECK(vals[1] > 0.02);
  CHECK(std::abs(vals[0] - vals[1]) / vals[0] < 0.5);
}

TEST_CASE("kw residual: zero fields and the Bogomolny pullback") {
  const Grid g4 = Grid::torus(4, 6, 1.0);
  CHECK(kw_residual(FieldConfiguration::zeros(g4, 2, 4)).max_norm() == 0.0);

  const AnalyticSolution sol = multi_monopole(charge_pair());
  std::vector<double> hs, errs;
  for (int mult : {1, 2}) {
    const double h = 0.1 / mult;
    const Grid g3 = monopole_box(h);
    // periodic u axis: the lifted configuration is u-independent
    Grid g;
    g.ndim = 4;
    g.shape = {g3.shape[0], g3.shape[1], g3.shape[2], 4};
    g.spacing = {h, h, h, h};
    g.origin = {g3.origin[0], g3.origin[1], g3.origin[2], 0};
    g.boundary = {BoundaryMode::Clamped, BoundaryMode::Clamped, BoundaryMode::Clamped,
                  BoundaryMode::Periodic};
    const FieldConfiguration cfg = sample_kw_lift(sol, g);
    ResidualOptions opts;
    opts.keep_site_norms = true;
    const ResidualReport rep = kw_residual(cfg, opts);
    hs.push_back(h);
    double worst = 0;
    for (std::size_t s = 0; s < rep.site_norm.size(); ++s) {
      const auto c = g.coords(s);
      bool on = c[3] == 0;
      for (int a = 0; a < 3; ++a)
        if (c[a] % mult != 0 || c[a] < mult || c[a] >= g.shape[a] - mult) on = false;
      if (on) worst = std::max(worst, rep.site_norm[s]);
    }
    errs.push_back(worst);
  }
  CHECK(errs[0] / errs[1] > 3.2);
}

TEST_CASE("kw residual of the sampled Nahm pole converges at order 2") {
  const Su2Triple t = principal_su2(2);
  const AnalyticSolution np = nahm_pole(t);
  std::vector<double> hs, errs;
  for (int mult : {1, 2}) {
    const double h = 1.0 / (8 * mult);
    const Grid g = Grid::half_space(8 * mult, 1.0, 8 * mult + 1, 0.25, h);
    ResidualOptions opts;
    opts.keep_site_norms = true;
    const ResidualReport rep = kw_residual(sample(np, g), opts);
    double worst = 0;
    for (std::size_t s = 0; s < rep.site_norm.size(); ++s) {
      const auto c = g.coords(s);
      bool on = true;
      for (int a = 0; a < 4; ++a) {
        if (c[a] % mult != 0) on = false;
      }
      if (c[3] < mult || c[3] >= g.shape[3] - mult) on = false;
      if (on) worst = std::max(worst, rep.site_norm[s]);
    }
    hs.push_back(h);
    errs.push_back(worst);
  }
  CHECK(errs[0] / errs[1] > 3.2);
  // exact derivatives: the residual vanishes identically
  const Grid g = Grid::half_space(4, 1.0, 6, 0.5, 0.25);
  ResidualOptions opts;
  opts.scheme = DiffScheme::Exact;
  const ResidualReport rep = kw_residual(sample(np, g, true), opts);
  CHECK(rep.max_norm() <= 1e-13);
}

TEST_CASE("t-family: distinguished member matches the KW projections exactly") {
  const Grid g = Grid::torus(4, 6, 1.0);
  SmoothFieldParams p;
  p.seed = 3;
  p.nmodes = 10;
  const FieldConfiguration cfg = random_smooth_field(g, p);
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(kw_t_residual(FieldConfiguration::zeros(g, 2, 4), t).max_norm() == 0.0);
  }
  // V+-(t0) are the selfdual/anti-selfdual parts of V = M - *G
  const KwFirstOrder parts = kw_first_order(cfg, DiffScheme::Central2);
  const TwoForm starG = hodge_star(parts.G, g.orientation);
  TwoForm V = TwoForm::zeros(g, 2);
  for (int c = 0; c < 6; ++c)
    for (std::size_t s = 0; s < g.num_sites(); ++s)
      V.comp[c][s] = parts.M.comp[c][s] - starG.comp[c][s];
  const TwoForm Vp = selfdual_part(V, g.orientation, +1);
  const TwoForm Vm = selfdual_part(V, g.orientation, -1);
  ResidualOptions opts;
  opts.keep_site_norms = true;
  const ResidualReport rt = kw_t_residual(cfg, kDistinguishedT, opts);
  CHECK(rt.components.size() == 13);  // V+ and V- pairs plus W
  double worst = 0;
  const auto mask = stencil_ok_mask(cfg, 1);
  const TwoForm plus_arg = [&] {
    TwoForm x = TwoForm::zeros(g, 2);
    for (int c = 0; c < 6; ++c)
      for (std::size_t s = 0; s < g.num_sites(); ++s)
        x.comp[c][s] = parts.M.comp[c][s] + kDistinguishedT * parts.G.comp[c][s];
    return selfdual_part(x, g.orientation, +1);
  }();
  for (int c = 0; c < 6; ++c)
    for (std::size_t s = 0; s < g.num_sites(); ++s)
      if (mask[s])
        worst = std::max(worst, max_abs((plus_arg.comp[c][s] - Vp.comp[c][s]).eval()));
  CHECK(worst <= 1e-13);
  (void)Vm;
  CHECK_THROWS_AS(kw_t_residual(cfg, 0.0), std::invalid_argument);
  // t = infinity: the limiting pair is finite and nonzero on a random field
  const ResidualReport rinf =
      kw_t_residual(cfg, std::numeric_limits<double>::infinity(), opts);
  CHECK(std::isfinite(rinf.max_norm()));
  CHECK(rinf.max_norm() > 0);
}

TEST_CASE("t-family: abelian constant pair solves at every t") {
  const Grid g = Grid::torus(4, 6, 1.0);
  FieldConfiguration cfg = FieldConfiguration::zeros(g, 2, 4);
  const Complex i(0, 1);
  const Eigen::MatrixXcd d1{{0.3 * i, 0.0}, {0.0, -0.3 * i}};
  const Eigen::MatrixXcd d2{{-0.2 * i, 0.0}, {0.0, 0.2 * i}};
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    cfg.A[0][s] = d1;
    cfg.A[2][s] = d2;
    cfg.phi[1][s] = 0.7 * d1;
    cfg.phi[3][s] = -1.3 * d2;
  }
  for (double t : {0.5, 1.0, -1.0, 2.0, 5.0})
    CHECK(kw_t_residual(cfg, t).max_norm() <= 1e-14);
}

TEST_CASE("nahm residual: pole data exact, constants, symbolic f(y) check") {
  for (int dim : {2, 3, 5}) {
    const Su2Triple t = principal_su2(dim);
    std::array<LieElement, 3> ts{t.t1, t.t2, t.t3};
    auto phi_fn = [&](int a, double y) { return (ts[a] / y).eval(); };
    auto dphi_fn = std::function<LieElement(int, double)>(
        [&](int a, double y) { return (-ts[a] / (y * y)).eval(); });
    const NahmData data = NahmData::sample(phi_fn, 0.5, 3.0, 41, &dphi_fn);
    CHECK(nahm_residual(data, DiffScheme::Exact).max_norm() <= 1e-13);
    // central differences: small but not exact; converges
    CHECK(nahm_residual(data, DiffScheme::Central2).max_norm() < 0.3);
  }
  // commuting constants
  const Su2Triple t2 = principal_su2(2);
  auto const_fn = [&](int a, double) {
    return a == 0 ? t2.t3 : LieElement::Zero(2, 2).eval();
  };
  const NahmData cdata = NahmData::sample(const_fn, 0.5, 2.0, 11);
  CHECK(nahm_residual(cdata).max_norm() <= 1e-15);
  // phi_a = t_a f(y), f = exp: residual must be (f' + f^2) t_a, exactly with
  // analytic derivatives
  const Su2Triple t = principal_su2(2);
  std::array<LieElement, 3> ts{t.t1, t.t2, t.t3};
  auto f = [](double y) { return std::exp(y); };
  auto phi_fn = [&](int a, double y) { return (ts[a] * f(y)).eval(); };
  auto dphi_fn = std::function<LieElement(int, double)>(
      [&](int a, double y) { return (ts[a] * f(y)).eval(); });
  const NahmData data = NahmData::sample(phi_fn, 0.2, 1.0, 9, &dphi_fn);
  const ResidualReport rep = nahm_residual(data, DiffScheme::Exact);
  // check the largest sample: y = 1
  const double expect = f(1.0) + f(1.0) * f(1.0);
  CHECK(rep.component("N1").max_norm ==
        doctest::Approx(expect * tf_norm(ts[0])).epsilon(1e-12));
}

TEST_CASE("nahm residual covariantized with A_y") {
  // gauge-rotated constants: with A_y supplied the residual stays zero
  const Su2Triple t = principal_su2(2);
  std::array<LieElement, 3> ts{t.t1, t.t2, t.t3};
  auto phi_fn = [&](int a, double y) { return (ts[a] / y).eval(); };
  NahmData data = NahmData::sample(phi_fn, 0.5, 2.5, 33);
  data.Ay.emplace(data.y.size(), LieElement::Zero(2, 2));
  const double plain = nahm_residual(data).max_norm();
  for (auto& m : *data.Ay) m = 0.3 * ts[2];
  const double gauged = nahm_residual(data).max_norm();
  CHECK(gauged > plain);  // nonzero A_y shifts the covariant derivative
}

namespace {

// independent Hitchin-equation residual on a y-constant configuration:
// h1 = F_{23} - [phi2, phi3], h2 = D_2 phi2 + D_3 phi3, h3 = D_2 phi3 - D_3 phi2.
// Returns (max |h1|, max sqrt(|h2|^2 + |h3|^2)) to compare against the
// extended system's mu and complex [D1,D3] components.
std::pair<double, double> hitchin_oracle(const FieldConfiguration& cfg) {
  const Grid& g = cfg.grid;
  const auto d = all_derivatives(cfg, DiffScheme::Central2);
  auto D = [&](int i, int j, std::size_t s) {
    return (d.dphi[i][j][s] + commutator(cfg.A[i][s], cfg.phi[j][s])).eval();
  };
  const TwoForm F = curvature(cfg, DiffScheme::Central2);
  const auto mask = stencil_ok_mask(cfg, 1);
  double w1 = 0, w23 = 0;
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    if (!mask[s]) continue;
    const LieElement h1 =
        F.comp[0][s] - commutator(cfg.phi[1][s], cfg.phi[2][s]);
    const LieElement h2 = D(0, 1, s) + D(1, 2, s);
    const LieElement h3 = D(0, 2, s) - D(1, 1, s);
    w1 = std::max(w1, tf_norm(h1));
    w23 = std::max(w23, std::sqrt(tf_norm_sq(h2) + tf_norm_sq(h3)));
  }
  return {w1, w23};
}

}  // namespace

TEST_CASE("extended Bogomolny: specialization triangle") {
  // grid axes (x2, x3, y); y clamped at [0.5, 2.5]
  const double h = 0.1;
  std::array<int, 4> shape{8, 8, 21, 0};
  Grid g = Grid::box(3, shape, {h, h, h, 0}, {0, 0, 0.5, 0});
  g.boundary[0] = BoundaryMode::Periodic;
  g.boundary[1] = BoundaryMode::Periodic;
  g.spacing[0] = 1.0 / 8;
  g.spacing[1] = 1.0 / 8;

  CHECK(extended_bogomolny_residual(FieldConfiguration::zeros(g, 2, 3)).max_norm() == 0.0);

  // (a) x-independent Nahm data phi_a = t_a / y: matches nahm_residual exactly
  const Su2Triple t = principal_su2(2);
  std::array<LieElement, 3> ts{t.t1, t.t2, t.t3};
  FieldConfiguration nahm_cfg = FieldConfiguration::zeros(g, 2, 3);
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const auto x = g.point(g.coords(s));
    for (int a = 0; a < 3; ++a) nahm_cfg.phi[a][s] = ts[a] / x[2];
  }
  ResidualOptions opts;
  opts.keep_site_norms = true;
  const ResidualReport ext = extended_bogomolny_residual(nahm_cfg, opts);
  auto phi_fn = [&](int a, double y) { return (ts[a] / y).eval(); };
  const NahmData nd = NahmData::sample(phi_fn, 0.5, 2.5, 21);
  const ResidualReport nr = nahm_residual(nd);
  // mu = -N1, [D2,D3] = N2 - i N3 pointwise: compare the per-component maxima
  CHECK(ext.component("mu").max_norm ==
        doctest::Approx(nr.component("N1").max_norm).epsilon(1e-12));
  const double n2 = nr.component("N2").max_norm;
  const double n3 = nr.component("N3").max_norm;
  CHECK(ext.component("D2D3").max_norm <= std::sqrt(n2 * n2 + n3 * n3) + 1e-12);
  CHECK(ext.component("D2D3").max_norm >= std::max(n2, n3) - 1e-12);
  CHECK(ext.component("D1D2").max_norm <= 1e-14);
  CHECK(ext.component("D1D3").max_norm <= 1e-14);

  // (b) y-independent fields with A_y = phi1 = 0: Hitchin oracle
  SmoothFieldParams p;
  p.seed = 9;
  p.nphi = 3;
  p.nmodes = 8;
  Grid g2 = g;
  FieldConfiguration hcfg = random_smooth_field(g2, p);
  // flatten along y (copy the middle slice) and zero the Nahm-direction fields
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    auto c = g.coords(s);
    c[2] = g.shape[2] / 2;
    const std::size_t s0 = g.index(c);
    for (int a = 0; a < 2; ++a) hcfg.A[a][s] = hcfg.A[a][s0];
    hcfg.A[2][s].setZero();
    hcfg.phi[0][s].setZero();
    for (int a = 1; a < 3; ++a) hcfg.phi[a][s] = hcfg.phi[a][s0];
  }
  hcfg.exact.reset();
  const ResidualReport exth = extended_bogomolny_residual(hcfg);
  const auto [oracle_mu, oracle_d13] = hitchin_oracle(hcfg);
  CHECK(exth.component("D1D2").max_norm <= 1e-13);  // drops out
  CHECK(exth.component("D2D3").max_norm <= 1e-13);  // y-independent, phi1 = 0
  CHECK(exth.component("mu").max_norm == doctest::Approx(oracle_mu).epsilon(1e-12));
  CHECK(exth.component("D1D3").max_norm == doctest::Approx(oracle_d13).epsilon(1e-12));
  CHECK(oracle_mu > 1e-4);  // the random field is not a Hitchin solution

  // (c) phi2 = phi3 = 0: equals bogomolny_residual componentwise
  FieldConfiguration bcfg = random_smooth_field(g2, p);
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    bcfg.phi[1][s].setZero();
    bcfg.phi[2][s].setZero();
  }
  bcfg.exact.reset();
  const ResidualReport extb = extended_bogomolny_residual(bcfg, opts);
  FieldConfiguration scfg = FieldConfiguration::zeros(g, 2, 1);
  scfg.A = bcfg.A;
  scfg.phi[0] = bcfg.phi[0];
  const ResidualReport bog = bogomolny_residual(scfg, opts);
  CHECK(extb.component("mu").max_norm ==
        doctest::Approx(bog.component("R01").max_norm).epsilon(1e-13));
  CHECK(extb.component("D2D3").max_norm <= 1e-14);
}

TEST_CASE("gauge covariance: residual L2 norms move at O(h^2)") {
  SmoothFieldParams p;
  p.seed = 15;
  p.nphi = 1;
  p.nmodes = 8;
  std::vector<double> hs, drift;
  for (int n : {8, 16}) {
    const Grid g = Grid::torus(3, n, 1.0);
    const FieldConfiguration cfg = random_smooth_field(g, p);
    const MatArray gg = random_gauge(g, 99, 1, 0.3, 2);
    const FieldConfiguration moved = gauge_transform(cfg, gg);
    const double a = bogomolny_residual(cfg).l2_norm();
    const double b = bogomolny_residual(moved).l2_norm();
    hs.push_back(1.0 / n);
    drift.push_back(std::abs(a - b) / std::max(1e-30, a));
  }
  CHECK(drift[1] < drift[0]);
  CHECK(fit_slope(hs, drift).slope >= 1.5);
}

TEST_CASE("t and -1/t exchange the chiral components under orientation reversal") {
  const Grid g = Grid::torus(4, 6, 1.0);
  SmoothFieldParams p;
  p.seed = 41;
  p.nmodes = 10;
  FieldConfiguration cfg = random_smooth_field(g, p);
  FieldConfiguration flipped = cfg;
  flipped.grid.orientation = -1.0;
  for (double t : {0.5, 2.0, -3.0}) {
    const ResidualReport a = kw_t_residual(cfg, t);
    const ResidualReport b = kw_t_residual(flipped, -1.0 / t);
    for (int c = 0; c < 6; ++c) {
      // V+(t) on one orientation is V-(-1/t) on the other, exactly
      CHECK(a.components[c].max_norm ==
            doctest::Approx(b.components[6 + c].max_norm).epsilon(1e-14));
      CHECK(a.components[6 + c].max_norm ==
            doctest::Approx(b.components[c].max_norm).epsilon(1e-14));
    }
    CHECK(a.component("W").max_norm == doctest::Approx(b.component("W").max_norm));
  }
}
