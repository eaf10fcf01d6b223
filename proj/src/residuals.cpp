#include "kwlab/residuals.hpp"

#include <cmath>
#include <stdexcept>

namespace kwlab {

namespace {

int mask_layers(DiffScheme s, int central_layers = 1) {
  return s == DiffScheme::Central2 ? central_layers : 0;
}

std::string region_text(const FieldConfiguration& cfg, int layers) {
  std::string r = "interior(margin=" + std::to_string(layers) + ")";
  if (cfg.valid) r += "+domain-excision";
  return r;
}

struct Accum {
  double max = 0.0;
  double sumsq = 0.0;  // of tf_norm_sq, site-summed
};

/// Reduce named per-site residual arrays over the masked region.
ResidualReport reduce_components(
    const FieldConfiguration& cfg, const ResidualOptions& opts, int layers,
    const std::vector<std::string>& names,
    const std::function<void(std::size_t, std::vector<LieElement>&)>& eval_site) {
  const Grid& g = cfg.grid;
  const auto mask = stencil_ok_mask(cfg, layers);
  const std::size_t n = g.num_sites();
  const std::size_t nblocks = (n + 4095) / 4096;
  const int nc = static_cast<int>(names.size());
  std::vector<std::vector<Accum>> block_acc(nblocks, std::vector<Accum>(nc));
  std::vector<double> site_norm;
  if (opts.keep_site_norms) site_norm.assign(n, 0.0);
  std::size_t evaluated = 0;
  std::vector<std::size_t> block_count(nblocks, 0);

  parallel_for_sites(n, opts.threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<LieElement> vals(nc);
    auto& acc = block_acc[lo / 4096];
    std::size_t count = 0;
    for (std::size_t s = lo; s < hi; ++s) {
      if (!mask[s]) continue;
      ++count;
      eval_site(s, vals);
      double site_max = 0.0;
      for (int c = 0; c < nc; ++c) {
        const double n2 = tf_norm_sq(vals[c]);
        acc[c].sumsq += n2;
        const double nn = std::sqrt(n2);
        acc[c].max = std::max(acc[c].max, nn);
        site_max = std::max(site_max, nn);
      }
      if (opts.keep_site_norms) site_norm[s] = site_max;
    }
    block_count[lo / 4096] = count;
  });

  ResidualReport rep;
  rep.scheme = to_string(opts.scheme);
  rep.region = region_text(cfg, layers);
  for (int c = 0; c < nc; ++c) {
    Accum total;
    for (const auto& b : block_acc) {
      total.max = std::max(total.max, b[c].max);
      total.sumsq += b[c].sumsq;
    }
    rep.components.push_back(
        {names[c], total.max, std::sqrt(total.sumsq * g.cell_volume())});
  }
  for (auto c : block_count) evaluated += c;
  rep.sites_evaluated = evaluated;
  rep.region_volume = static_cast<double>(evaluated) * g.cell_volume();
  rep.site_norm = std::move(site_norm);
  return rep;
}

}  // namespace

ResidualReport bogomolny_residual(const FieldConfiguration& cfg,
                                  const ResidualOptions& opts) {
  if (cfg.grid.ndim != 3 || cfg.nphi != 1)
    throw std::invalid_argument("bogomolny_residual: need 3d grid with scalar phi");
  const auto d = all_derivatives(cfg, opts.scheme);
  const TwoForm F = curvature(cfg, d);
  // D_a phi
  std::array<MatArray, 4> Dphi;
  const std::size_t n = cfg.grid.num_sites();
  for (int a = 0; a < 3; ++a) {
    Dphi[a] = MatArray(n, cfg.matrix_dim);
    parallel_for_sites(n, opts.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s)
        Dphi[a][s] = d.dphi[a][0][s] + commutator(cfg.A[a][s], cfg.phi[0][s]);
    });
  }
  const TwoForm stardphi = hodge_star_3d_1form(cfg.grid, Dphi, cfg.grid.orientation);
  return reduce_components(
      cfg, opts, mask_layers(opts.scheme), {"R01", "R02", "R12"},
      [&](std::size_t s, std::vector<LieElement>& v) {
        for (int p = 0; p < 3; ++p) v[p] = F.comp[p][s] - stardphi.comp[p][s];
      });
}

ResidualReport dbar_conjugation_residual(const FieldConfiguration& cfg,
                                         const ResidualOptions& opts,
                                         int complex_structure_sign) {
  if (cfg.grid.ndim != 3 || cfg.nphi != 1)
    throw std::invalid_argument("dbar_conjugation_residual: need 3d grid with scalar phi");
  if (opts.scheme == DiffScheme::Exact)
    throw std::invalid_argument("dbar_conjugation_residual: needs a stencil scheme");
  const Complex i(0, 1);
  const double sg = complex_structure_sign >= 0 ? 1.0 : -1.0;
  const std::size_t n = cfg.grid.num_sites();
  // P = (A1 + sg i A2)/2 = dbar_A applied to constant sections,
  // Q = A_y - i phi   with y = x3.
  MatArray P(n, cfg.matrix_dim), Q(n, cfg.matrix_dim);
  parallel_for_sites(n, opts.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      P[s] = 0.5 * (cfg.A[0][s] + sg * i * cfg.A[1][s]);
      Q[s] = cfg.A[2][s] - i * cfg.phi[0][s];
    }
  });
  const MatArray dyP = derivative(cfg.grid, P, 2, opts.scheme);
  const MatArray d1Q = derivative(cfg.grid, Q, 0, opts.scheme);
  const MatArray d2Q = derivative(cfg.grid, Q, 1, opts.scheme);
  return reduce_components(
      cfg, opts, mask_layers(opts.scheme), {"commutator"},
      [&](std::size_t s, std::vector<LieElement>& v) {
        v[0] = dyP[s] - 0.5 * (d1Q[s] + sg * i * d2Q[s]) + Q[s] * P[s] - P[s] * Q[s];
      });
}

KwFirstOrder kw_first_order(const FieldConfiguration& cfg, DiffScheme scheme,
                            int threads) {
  const Grid& g = cfg.grid;
  const std::size_t n = g.num_sites();
  const auto d = all_derivatives(cfg, scheme);
  KwFirstOrder parts;
  parts.F = curvature(cfg, d);
  parts.M = parts.F;
  parts.G = TwoForm::zeros(g, cfg.matrix_dim);
  parts.w = MatArray(n, cfg.matrix_dim);
  for (int p = 0; p < TwoForm::npairs(g.ndim); ++p) {
    const auto [a, b] = TwoForm::pair_axes(g.ndim, p);
    parallel_for_sites(n, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s) {
        parts.M.comp[p][s] -= commutator(cfg.phi[a][s], cfg.phi[b][s]);
        parts.G.comp[p][s] = d.dphi[a][b][s] + commutator(cfg.A[a][s], cfg.phi[b][s]) -
                             d.dphi[b][a][s] - commutator(cfg.A[b][s], cfg.phi[a][s]);
      }
    });
  }
  parallel_for_sites(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(cfg.matrix_dim, cfg.matrix_dim);
      for (int a = 0; a < 4; ++a)
        acc += d.dphi[a][a][s] + commutator(cfg.A[a][s], cfg.phi[a][s]);
      parts.w[s] = acc;
    }
  });
  return parts;
}

namespace {
const char* kVNames[6] = {"V01", "V02", "V03", "V12", "V13", "V23"};
}  // namespace

ResidualReport kw_residual(const FieldConfiguration& cfg, const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4 || cfg.nphi != 4)
    throw std::invalid_argument("kw_residual: need 4d grid with one-form phi");
  const KwFirstOrder parts = kw_first_order(cfg, opts.scheme, opts.threads);
  const TwoForm starG = hodge_star(parts.G, cfg.grid.orientation);
  std::vector<std::string> names = {"V01", "V02", "V03", "V12", "V13", "V23", "W"};
  return reduce_components(
      cfg, opts, mask_layers(opts.scheme), names,
      [&](std::size_t s, std::vector<LieElement>& v) {
        for (int p = 0; p < 6; ++p) v[p] = parts.M.comp[p][s] - starG.comp[p][s];
        v[6] = parts.w[s];
      });
}

ResidualReport kw_t_residual(const FieldConfiguration& cfg, double t,
                             const ResidualOptions& opts) {
  if (cfg.grid.ndim != 4 || cfg.nphi != 4)
    throw std::invalid_argument("kw_t_residual: need 4d grid with one-form phi");
  if (t == 0.0) throw std::invalid_argument("kw_t_residual: t = 0 is excluded");
  const KwFirstOrder parts = kw_first_order(cfg, opts.scheme, opts.threads);
  const bool at_inf = std::isinf(t);
  TwoForm plus_arg = TwoForm::zeros(cfg.grid, cfg.matrix_dim);
  TwoForm minus_arg = TwoForm::zeros(cfg.grid, cfg.matrix_dim);
  const std::size_t n = cfg.grid.num_sites();
  for (int p = 0; p < 6; ++p) {
    parallel_for_sites(n, opts.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s) {
        if (at_inf) {
          plus_arg.comp[p][s] = parts.G.comp[p][s];
          minus_arg.comp[p][s] = parts.M.comp[p][s];
        } else {
          plus_arg.comp[p][s] = parts.M.comp[p][s] + t * parts.G.comp[p][s];
          minus_arg.comp[p][s] = parts.M.comp[p][s] - parts.G.comp[p][s] / t;
        }
      }
    });
  }
  const TwoForm Vp = selfdual_part(plus_arg, cfg.grid.orientation, +1);
  const TwoForm Vm = selfdual_part(minus_arg, cfg.grid.orientation, -1);
  std::vector<std::string> names;
  for (int p = 0; p < 6; ++p) names.push_back(std::string("V+") + (kVNames[p] + 1));
  for (int p = 0; p < 6; ++p) names.push_back(std::string("V-") + (kVNames[p] + 1));
  names.push_back("W");
  return reduce_components(
      cfg, opts, mask_layers(opts.scheme), names,
      [&](std::size_t s, std::vector<LieElement>& v) {
        for (int p = 0; p < 6; ++p) v[p] = Vp.comp[p][s];
        for (int p = 0; p < 6; ++p) v[6 + p] = Vm.comp[p][s];
        v[12] = parts.w[s];
      });
}

NahmData NahmData::sample(const std::function<LieElement(int, double)>& phi_fn,
                          double y0, double y1, int n,
                          const std::function<LieElement(int, double)>* dphi_fn) {
  NahmData d;
  const double h = (y1 - y0) / (n - 1);
  d.y.resize(n);
  for (int k = 0; k < n; ++k) d.y[k] = y0 + k * h;
  for (int a = 0; a < 3; ++a) {
    d.phi[a].resize(n);
    for (int k = 0; k < n; ++k) d.phi[a][k] = phi_fn(a, d.y[k]);
  }
  if (dphi_fn) {
    d.dphi_dy.emplace();
    for (int a = 0; a < 3; ++a) {
      (*d.dphi_dy)[a].resize(n);
      for (int k = 0; k < n; ++k) (*d.dphi_dy)[a][k] = (*dphi_fn)(a, d.y[k]);
    }
  }
  return d;
}

ResidualReport nahm_residual(const NahmData& data, DiffScheme scheme) {
  const int n = static_cast<int>(data.y.size());
  if (n < 3) throw std::invalid_argument("nahm_residual: need at least 3 samples");
  const double h = data.y[1] - data.y[0];
  const bool exact = scheme == DiffScheme::Exact;
  if (exact && !data.dphi_dy)
    throw std::invalid_argument("nahm_residual: exact scheme needs analytic dphi/dy");
  ResidualReport rep;
  rep.scheme = to_string(exact ? DiffScheme::Exact : DiffScheme::Central2);
  rep.region = exact ? "all samples" : "interior(margin=1)";
  const int k0 = exact ? 0 : 1, k1 = exact ? n : n - 1;
  const char* names[3] = {"N1", "N2", "N3"};
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    Accum acc;
    for (int k = k0; k < k1; ++k) {
      LieElement dphi = exact ? (*data.dphi_dy)[a][k]
                              : ((data.phi[a][k + 1] - data.phi[a][k - 1]) / (2 * h)).eval();
      if (data.Ay) dphi += commutator((*data.Ay)[k], data.phi[a][k]);
      const LieElement r = dphi + commutator(data.phi[b][k], data.phi[c][k]);
      const double n2 = tf_norm_sq(r);
      acc.sumsq += n2;
      acc.max = std::max(acc.max, std::sqrt(n2));
    }
    rep.components.push_back({names[a], acc.max, std::sqrt(acc.sumsq * h)});
  }
  rep.sites_evaluated = static_cast<std::size_t>(k1 - k0);
  rep.region_volume = (k1 - k0) * h;
  return rep;
}

ResidualReport extended_bogomolny_residual(const FieldConfiguration& cfg,
                                           const ResidualOptions& opts) {
  if (cfg.grid.ndim != 3 || cfg.nphi != 3)
    throw std::invalid_argument(
        "extended_bogomolny_residual: need (x2,x3,y) grid with three phi components");
  const Complex i(0, 1);
  const auto d = all_derivatives(cfg, opts.scheme);
  auto D = [&](int axis, int comp, std::size_t s) {
    return (d.dphi[axis][comp][s] + commutator(cfg.A[axis][s], cfg.phi[comp][s])).eval();
  };
  const TwoForm F = curvature(cfg, d);
  return reduce_components(
      cfg, opts, mask_layers(opts.scheme), {"D1D2", "D1D3", "D2D3", "mu"},
      [&](std::size_t s, std::vector<LieElement>& v) {
        // [D1,D2] = F_{x2 y} + i F_{x3 y} - i D_{x2} phi1 + D_{x3} phi1
        v[0] = F.comp[1][s] + i * F.comp[2][s] - i * D(0, 0, s) + D(1, 0, s);
        // [D1,D3] = (D_{x2} + i D_{x3})(phi2 - i phi3)
        v[1] = D(0, 1, s) - i * D(0, 2, s) + i * D(1, 1, s) + D(1, 2, s);
        // [D2,D3] = D_y(phi2 - i phi3) - i [phi1, phi2 - i phi3]
        v[2] = D(2, 1, s) - i * D(2, 2, s) -
               i * commutator(cfg.phi[0][s],
                              (cfg.phi[1][s] - i * cfg.phi[2][s]).eval());
        // mu = F_{x2 x3} - [phi2, phi3] - D_y phi1
        v[3] = F.comp[0][s] - commutator(cfg.phi[1][s], cfg.phi[2][s]) - D(2, 0, s);
      });
}

}  // namespace kwlab
