#include "kwlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "kwlab/hecke.hpp"
#include "kwlab/jones.hpp"
#include "kwlab/json_io.hpp"
#include "kwlab/morse.hpp"
#include "kwlab/smoothfield.hpp"
#include "kwlab/studies.hpp"
#include "kwlab/version.hpp"
#include "kwlab/weitzenbock.hpp"

namespace kwlab::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_csv(const std::string& path, const std::vector<double>& h,
               const std::vector<double>& err) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write csv file: " + path);
  f << "h,err\n";
  for (std::size_t k = 0; k < h.size(); ++k) f << h[k] << "," << err[k] << "\n";
}

void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write output file: " + out_path);
    f << text;
  }
}

Json report_header(const std::string& subcommand, const Json& config,
                   const Json& tolerances) {
  Json j;
  j["tool"] = "kw-lab";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["tolerances"] = tolerances;
  return j;
}

DiffScheme parse_scheme(const std::string& s) {
  if (s == "central") return DiffScheme::Central2;
  if (s == "spectral") return DiffScheme::Spectral;
  if (s == "exact") return DiffScheme::Exact;
  throw CLI::ValidationError("--scheme", "unknown scheme " + s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kw-lab: desk-scale verification of gauge-theory identities, model "
               "solutions, Morse complexes, and Jones polynomials"};
  app.require_subcommand(1);
  // --h is a spacing flag here, so help lives on --help alone
  app.set_help_flag("--help", "print help");

  std::string out_path, csv_path;
  int threads = 0;
  app.add_option("--out", out_path, "also write the JSON report to this path");
  app.add_option("--csv", csv_path, "write convergence tables (h,err rows) to this path");
  app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

  bool pass = true;
  Json report;
  const auto fix_help = [](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->fallthrough();  // root options like --out may follow subcommand args
  };

  // ---- verify group ------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "residual checks of exact solutions");
  fix_help(verify);
  verify->require_subcommand(1);

  struct {
    std::string charges;
    double h = 1.0 / 16;
    int refine = 3;
    double slope_min = 1.9;
  } bog;
  auto* vb = verify->add_subcommand("bogomolny",
                                    "Bogomolny residual convergence on a sampled "
                                    "multi-monopole");
  fix_help(vb);
  vb->add_option("--charges", bog.charges, "SingularityData JSON file")->required();
  vb->add_option("--h", bog.h, "coarsest spacing");
  vb->add_option("--refine", bog.refine, "number of halvings");
  vb->add_option("--slope-min", bog.slope_min, "required convergence order");
  vb->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const auto data = SingularityData::from_json_text(read_file(bog.charges));
    const ConvergenceStudy st = bogomolny_monopole_study(data, bog.h, bog.refine, threads);
    write_csv(csv_path, st.h, st.err);
    report = report_header("verify bogomolny",
                           Json{{"charges", bog.charges},
                                {"h", bog.h},
                                {"refine", bog.refine},
                                {"seedless", true}},
                           Json{{"slope_min", bog.slope_min}});
    report["study"] = st.to_json();
    pass = st.slope >= bog.slope_min;
  });

  auto* vk = verify->add_subcommand("kw", "KW residual of the lifted monopole");
  fix_help(vk);
  vk->add_option("--charges", bog.charges, "SingularityData JSON file")->required();
  vk->add_option("--h", bog.h, "coarsest spacing");
  vk->add_option("--refine", bog.refine, "number of halvings");
  vk->add_option("--slope-min", bog.slope_min, "required convergence order");
  vk->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const auto data = SingularityData::from_json_text(read_file(bog.charges));
    const ConvergenceStudy st = kw_lift_study(data, bog.h, bog.refine, threads);
    write_csv(csv_path, st.h, st.err);
    report = report_header("verify kw",
                           Json{{"charges", bog.charges}, {"h", bog.h}, {"refine", bog.refine}},
                           Json{{"slope_min", bog.slope_min}});
    report["study"] = st.to_json();
    pass = st.slope >= bog.slope_min;
  });

  struct {
    std::vector<int> dims{2, 3, 5};
    double tol = 1e-13;
    double h = 1.0 / 8;
    int refine = 2;
    double slope_min = 1.9;
  } nahm;
  auto* vn = verify->add_subcommand("nahm", "Nahm pole: exact ODE residual and the "
                                            "sampled KW residual");
  fix_help(vn);
  vn->add_option("--dims", nahm.dims, "principal-embedding dimensions");
  vn->add_option("--tol", nahm.tol, "analytic residual bound");
  vn->add_option("--h", nahm.h, "coarsest KW spacing");
  vn->add_option("--refine", nahm.refine, "number of halvings");
  vn->add_option("--slope-min", nahm.slope_min, "required convergence order");
  vn->callback([&] {
    if (threads > 0) set_default_threads(threads);
    report = report_header("verify nahm",
                           Json{{"dims", nahm.dims}, {"h", nahm.h}, {"refine", nahm.refine}},
                           Json{{"tol", nahm.tol}, {"slope_min", nahm.slope_min}});
    Json per = Json::array();
    for (int dim : nahm.dims) {
      const Su2Triple t = principal_su2(dim);
      std::array<LieElement, 3> ts{t.t1, t.t2, t.t3};
      auto phi_fn = [&](int a, double y) { return (ts[a] / y).eval(); };
      auto dphi_fn = std::function<LieElement(int, double)>(
          [&](int a, double y) { return (-ts[a] / (y * y)).eval(); });
      const NahmData data = NahmData::sample(phi_fn, 0.5, 3.0, 41, &dphi_fn);
      const double analytic = nahm_residual(data, DiffScheme::Exact).max_norm();
      Json entry{{"dim", dim}, {"analytic_max", analytic}};
      bool ok = analytic <= nahm.tol;
      if (dim == nahm.dims.front() && nahm.refine >= 2) {
        const ConvergenceStudy st = nahm_pole_kw_study(dim, nahm.h, nahm.refine, threads);
        entry["kw_study"] = st.to_json();
        ok = ok && st.slope >= nahm.slope_min;
      }
      entry["pass"] = ok;
      pass = pass && ok;
      per.push_back(entry);
    }
    report["results"] = per;
  });

  struct {
    int dim = 2;
    double h = 0.1;
    double tol = 1e-12;
  } ext;
  auto* ve = verify->add_subcommand("extended",
                                    "extended Bogomolny system: Nahm-data "
                                    "specialization consistency");
  fix_help(ve);
  ve->add_option("--dim", ext.dim, "matrix dimension of the su(2) triple");
  ve->add_option("--h", ext.h, "grid spacing");
  ve->add_option("--tol", ext.tol, "agreement tolerance for the specialization");
  ve->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const Su2Triple t = principal_su2(ext.dim);
    std::array<LieElement, 3> ts{t.t1, t.t2, t.t3};
    const int ny = static_cast<int>(std::lround(2.0 / ext.h)) + 1;
    Grid g;
    g.ndim = 3;
    g.shape = {8, 8, ny, 0};
    g.spacing = {0.125, 0.125, ext.h, 0};
    g.origin = {0, 0, 0.5, 0};
    g.boundary = {BoundaryMode::Periodic, BoundaryMode::Periodic, BoundaryMode::Clamped,
                  BoundaryMode::Clamped};
    g.validate();
    FieldConfiguration cfg = FieldConfiguration::zeros(g, ext.dim, 3);
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
      const auto x = g.point(g.coords(s));
      for (int a = 0; a < 3; ++a) cfg.phi[a][s] = ts[a] / x[2];
    }
    ResidualOptions opts;
    opts.threads = threads;
    const ResidualReport er = extended_bogomolny_residual(cfg, opts);
    auto phi_fn = [&](int a, double y) { return (ts[a] / y).eval(); };
    const ResidualReport nr =
        nahm_residual(NahmData::sample(phi_fn, g.origin[2], g.coordinate(2, ny - 1), ny));
    const double agree =
        std::abs(er.component("mu").max_norm - nr.component("N1").max_norm);
    report = report_header("verify extended",
                           Json{{"dim", ext.dim}, {"h", ext.h}},
                           Json{{"tol", ext.tol}});
    report["extended"] = er.to_json();
    report["nahm"] = nr.to_json();
    report["mu_vs_N1"] = agree;
    pass = agree <= ext.tol && er.component("D1D2").max_norm <= ext.tol &&
           er.component("D1D3").max_norm <= ext.tol;
  });

  // ---- weitzenbock group -------------------------------------------------
  auto* wz = app.add_subcommand("weitzenbock", "energy identities");
  fix_help(wz);
  wz->require_subcommand(1);

  struct {
    std::uint64_t seed = 7;
    std::vector<double> ts{0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
    int n = 16;
    int cutoff = 2;
    double amplitude = 0.1;
    double tol = 1e-10;
    std::string scheme = "spectral";
  } wc;
  auto* wcc = wz->add_subcommand("closed", "t-family Weitzenbock identity on the 4-torus");
  fix_help(wcc);
  wcc->add_option("--seed", wc.seed, "random field seed");
  wcc->add_option("--t", wc.ts, "family parameters to test");
  wcc->add_option("--n", wc.n, "sites per axis");
  wcc->add_option("--cutoff", wc.cutoff, "mode cutoff");
  wcc->add_option("--amplitude", wc.amplitude, "field amplitude");
  wcc->add_option("--tol", wc.tol, "relative discrepancy bound");
  wcc->add_option("--scheme", wc.scheme, "central | spectral | exact");
  wcc->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const Grid g = Grid::torus(4, wc.n, 1.0);
    SmoothFieldParams p;
    p.seed = wc.seed;
    p.mode_cutoff = wc.cutoff;
    p.amplitude = wc.amplitude;
    p.with_exact_derivatives = wc.scheme == "exact";
    const FieldConfiguration cfg = random_smooth_field(g, p);
    ResidualOptions opts;
    opts.scheme = parse_scheme(wc.scheme);
    opts.threads = threads;
    report = report_header("weitzenbock closed",
                           Json{{"seed", wc.seed},
                                {"n", wc.n},
                                {"cutoff", wc.cutoff},
                                {"amplitude", wc.amplitude},
                                {"scheme", wc.scheme}},
                           Json{{"tol", wc.tol}});
    Json rows = Json::array();
    for (double t : wc.ts) {
      const double disc = t_identity_check(cfg, t, opts);
      rows.push_back({{"t", t}, {"discrepancy", disc}, {"pass", disc <= wc.tol}});
      pass = pass && disc <= wc.tol;
    }
    report["results"] = rows;
  });

  struct {
    std::vector<double> hs{1.0 / 16, 1.0 / 24, 1.0 / 32};
    double amplitude = 0.05;
    std::uint64_t seed = 1234;
    double tol = 1e-3;
    double slope_min = 1.9;
    double unperturbed_tol = 1e-12;
  } wh;
  auto* whc = wz->add_subcommand("halfspace",
                                 "half-space identity for the perturbed Nahm pole");
  fix_help(whc);
  whc->add_option("--h", wh.hs, "spacings, coarse to fine");
  whc->add_option("--amplitude", wh.amplitude, "bump amplitude");
  whc->add_option("--seed", wh.seed, "bump seed");
  whc->add_option("--tol", wh.tol, "relative discrepancy bound at the finest h");
  whc->add_option("--slope-min", wh.slope_min, "required refinement order");
  whc->add_option("--unperturbed-tol", wh.unperturbed_tol,
                  "I' bound for the exact Nahm pole");
  whc->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const HalfspaceStudy st =
        halfspace_identity_study(wh.hs, wh.amplitude, wh.seed, 2, threads);
    write_csv(csv_path, st.h, st.discrepancy);
    report = report_header("weitzenbock halfspace",
                           Json{{"h", wh.hs}, {"amplitude", wh.amplitude}, {"seed", wh.seed}},
                           Json{{"tol", wh.tol},
                                {"slope_min", wh.slope_min},
                                {"unperturbed_tol", wh.unperturbed_tol}});
    report["study"] = st.to_json();
    pass = st.discrepancy.back() <= wh.tol && st.slope >= wh.slope_min &&
           st.unperturbed_Iprime <= wh.unperturbed_tol;
  });

  // ---- chern -------------------------------------------------------------
  struct {
    std::uint64_t seed = 7;
    int n = 16;
    int cutoff = 2;
    double amplitude = 0.1;
    double tol = 1e-6;
  } ch;
  auto* chc = app.add_subcommand("chern", "second Chern charge of a smooth field on T^4");
  fix_help(chc);
  chc->add_option("--seed", ch.seed, "random field seed");
  chc->add_option("--n", ch.n, "sites per axis");
  chc->add_option("--cutoff", ch.cutoff, "mode cutoff");
  chc->add_option("--amplitude", ch.amplitude, "field amplitude");
  chc->add_option("--tol", ch.tol, "charge bound");
  chc->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const Grid g = Grid::torus(4, ch.n, 1.0);
    SmoothFieldParams p;
    p.seed = ch.seed;
    p.mode_cutoff = ch.cutoff;
    p.amplitude = ch.amplitude;
    const FieldConfiguration cfg = random_smooth_field(g, p);
    ResidualOptions opts;
    opts.scheme = DiffScheme::Spectral;
    opts.threads = threads;
    const ChernCharge c = chern_charge(cfg, opts);
    report = report_header("chern",
                           Json{{"seed", ch.seed},
                                {"n", ch.n},
                                {"cutoff", ch.cutoff},
                                {"amplitude", ch.amplitude}},
                           Json{{"tol", ch.tol}});
    report["chern_charge"] = c.to_json();
    pass = std::abs(c.value) <= ch.tol;
  });

  // ---- morse -------------------------------------------------------------
  struct {
    std::string manifold = "torus";
    double tilt = 0.15;
    int seeds = 12;
  } mo;
  auto* moc = app.add_subcommand("morse", "Morse complex of a model height function");
  fix_help(moc);
  moc->add_option("--manifold", mo.manifold, "sphere | torus | box");
  moc->add_option("--tilt", mo.tilt, "torus tilt angle");
  moc->add_option("--seeds", mo.seeds, "Newton seeds per chart axis");
  moc->callback([&] {
    if (threads > 0) set_default_threads(threads);
    MorseProblem p;
    if (mo.manifold == "sphere") p.manifold = MorseProblem::Manifold::Sphere;
    else if (mo.manifold == "torus") p.manifold = MorseProblem::Manifold::Torus;
    else if (mo.manifold == "box") {
      p.manifold = MorseProblem::Manifold::Box;
      p.height_dir = Eigen::Vector3d::Zero();
    } else
      throw CLI::ValidationError("--manifold", "unknown manifold " + mo.manifold);
    p.tilt = mo.tilt;
    MorseOptions opts;
    opts.seeds_per_axis = mo.seeds;
    const MorseComplex mc = build_complex(p, opts);
    report = report_header("morse",
                           Json{{"manifold", mo.manifold}, {"tilt", mo.tilt}, {"seeds", mo.seeds}},
                           Json::object());
    report["complex"] = mc.to_json();
    pass = mc.d_squared_is_zero();
  });

  // ---- hecke -------------------------------------------------------------
  struct {
    std::string events;
    double radius = 50.0;
    int resolution = 96;
    double tol = 2e-2;
  } hk;
  auto* hkc = app.add_subcommand("hecke", "line-bundle degree profile vs. monopole flux");
  fix_help(hkc);
  hkc->add_option("--events", hk.events, "HeckeSequence JSON file")->required();
  hkc->add_option("--radius", hk.radius, "disk radius");
  hkc->add_option("--resolution", hk.resolution, "radial quadrature nodes");
  hkc->add_option("--tol", hk.tol, "flux/degree agreement bound");
  hkc->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const HeckeSequence seq = HeckeSequence::from_json_text(read_file(hk.events));
    const DegreeProfile prof = degree_profile(seq);
    const SingularityData data = seq.to_singularities();
    report = report_header("hecke",
                           Json{{"events", hk.events},
                                {"radius", hk.radius},
                                {"resolution", hk.resolution}},
                           Json{{"tol", hk.tol}});
    report["profile"] = prof.to_json();
    // slice midpoints between events plus one below and one above
    std::vector<double> ys;
    ys.push_back(seq.events.front().y - 1.0);
    for (std::size_t k = 0; k + 1 < seq.events.size(); ++k)
      ys.push_back(0.5 * (seq.events[k].y + seq.events[k + 1].y));
    ys.push_back(seq.events.back().y + 1.0);
    Json rows = Json::array();
    for (double y : ys) {
      const double flux = flux_degree_check(data, y, hk.radius, hk.resolution);
      const int deg = prof.degree_at(y);
      const bool ok = std::abs(flux - deg) <= hk.tol;
      rows.push_back({{"y", y}, {"flux", flux}, {"degree", deg}, {"pass", ok}});
      pass = pass && ok;
    }
    report["results"] = rows;
  });

  // ---- jones -------------------------------------------------------------
  struct {
    std::string pd;
    int framing = 0;
    bool oracle = false;
  } jo;
  auto* joc = app.add_subcommand("jones", "Jones polynomial from a PD-code diagram");
  fix_help(joc);
  joc->add_option("--pd", jo.pd, "PD code file (X(a,b,c,d) list or JSON)")->required();
  joc->add_option("--framing", jo.framing, "framing integer");
  joc->add_flag("--oracle", jo.oracle, "also run the skein-recursion oracle");
  joc->callback([&] {
    if (threads > 0) set_default_threads(threads);
    const std::string text = read_file(jo.pd);
    KnotDiagram d;
    if (!text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
        text[text.find_first_not_of(" \t\r\n")] == '{')
      d = KnotDiagram::from_json_text(text);
    else
      d = KnotDiagram::parse_pd(text);
    const LaurentPolynomial j = jones_polynomial(d, jo.framing);
    report = report_header("jones",
                           Json{{"pd", jo.pd}, {"framing", jo.framing}},
                           Json::object());
    report["diagram"] = d.to_json();
    report["writhe"] = writhe(d);
    report["components"] = d.components();
    report["jones"] = j.to_json();
    if (jo.oracle) {
      const LaurentPolynomial js = jones_polynomial(d, jo.framing, true);
      report["oracle_agrees"] = (j == js);
      pass = pass && j == js;
    }
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    report["threads"] = threads;
    report["pass"] = pass;
    emit(report, out_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return pass ? 0 : 1;
}

}  // namespace kwlab::cli
