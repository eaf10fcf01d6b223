#include "kwlab/solutions.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace kwlab {

int SingularityData::total_charge() const {
  int s = 0;
  for (const auto& site : sites) s += site.charge;
  return s;
}

void SingularityData::validate() const {
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if ((sites[i].pos - sites[j].pos).norm() < 1e-12)
        throw std::invalid_argument("SingularityData: coincident sites");
}

SingularityData SingularityData::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SingularityData d;
  for (const auto& s : j.at("sites")) {
    const auto& p = s.at("pos");
    d.sites.push_back({Vec3(p.at(0).get<double>(), p.at(1).get<double>(),
                            p.at(2).get<double>()),
                       s.at("n").get<int>()});
  }
  d.validate();
  return d;
}

double AbelianMonopoleField::phi(const Vec3& x) const {
  double v = 0.0;
  for (const auto& s : data.sites) v += 0.5 * s.charge / (x - s.pos).norm();
  return v;
}

Vec3 AbelianMonopoleField::grad_phi(const Vec3& x) const {
  Vec3 v = Vec3::Zero();
  for (const auto& s : data.sites) {
    const Vec3 d = x - s.pos;
    const double r = d.norm();
    v += -0.5 * s.charge / (r * r * r) * d;
  }
  return v;
}

Vec3 AbelianMonopoleField::A(const Vec3& x) const {
  // per site: (n/2) (r - z)/(r rho^2) * (y, -x, 0), string along -z
  Vec3 v = Vec3::Zero();
  for (const auto& s : data.sites) {
    const Vec3 d = x - s.pos;
    const double r = d.norm();
    const double rho2 = d.x() * d.x() + d.y() * d.y();
    const double pref = 0.5 * s.charge * (r - d.z()) / (r * rho2);
    v += pref * Vec3(d.y(), -d.x(), 0.0);
  }
  return v;
}

Eigen::Matrix3d AbelianMonopoleField::dA(const Vec3& x) const {
  Eigen::Matrix3d out = Eigen::Matrix3d::Zero();
  for (const auto& s : data.sites) {
    const Vec3 d = x - s.pos;
    const double r = d.norm();
    const double rho2 = d.x() * d.x() + d.y() * d.y();
    const double u = r - d.z();
    const double v = r * rho2;
    const Vec3 du(d.x() / r, d.y() / r, d.z() / r - 1.0);
    const Vec3 dv(d.x() / r * rho2 + 2.0 * d.x() * r,
                  d.y() / r * rho2 + 2.0 * d.y() * r, d.z() / r * rho2);
    const double gq = u / v;
    const Vec3 dg = (du * v - u * dv) / (v * v);
    const double c = 0.5 * s.charge;
    // A_0 = c g y, A_1 = -c g x, A_2 = 0
    for (int i = 0; i < 3; ++i) {
      out(i, 0) += c * dg[i] * d.y();
      out(i, 1) += -c * dg[i] * d.x();
    }
    out(1, 0) += c * gq;
    out(0, 1) += -c * gq;
  }
  return out;
}

double AbelianMonopoleField::F(int a, int b, const Vec3& x) const {
  // F_ab = eps_abc B_c
  if (a == b) return 0.0;
  const Vec3 bfield = grad_phi(x);
  if (a == 0 && b == 1) return bfield.z();
  if (a == 1 && b == 0) return -bfield.z();
  if (a == 1 && b == 2) return bfield.x();
  if (a == 2 && b == 1) return -bfield.x();
  if (a == 0 && b == 2) return -bfield.y();
  return bfield.y();  // (2,0)
}

bool AbelianMonopoleField::in_domain(const Vec3& x) const {
  for (const auto& s : data.sites)
    if ((x - s.pos).norm() < excision) return false;
  return true;
}

bool AbelianMonopoleField::chart_ok(const Vec3& x) const {
  if (!in_domain(x)) return false;
  for (const auto& s : data.sites) {
    const Vec3 d = x - s.pos;
    const double rho = std::hypot(d.x(), d.y());
    if (d.z() < excision && rho < string_excision) return false;
  }
  return true;
}

namespace {

AnalyticSolution make_abelian(std::shared_ptr<const AbelianMonopoleField> fld,
                              const Cocharacter& rho) {
  AnalyticSolution sol;
  sol.space_ndim = 3;
  sol.matrix_dim = rho.dim();
  sol.nphi = 1;
  sol.abelian = fld;
  sol.rho = rho;
  auto vec3 = [](const std::array<double, 4>& x) { return Vec3(x[0], x[1], x[2]); };
  sol.in_domain = [fld, vec3](const std::array<double, 4>& x) {
    return fld->chart_ok(vec3(x));
  };
  sol.A_at = [fld, rho, vec3](int comp, const std::array<double, 4>& x) {
    return cocharacter_element(rho, fld->A(vec3(x))[comp]);
  };
  sol.phi_at = [fld, rho, vec3](int, const std::array<double, 4>& x) {
    return cocharacter_element(rho, fld->phi(vec3(x)));
  };
  sol.dA_at = [fld, rho, vec3](int axis, int comp, const std::array<double, 4>& x) {
    return cocharacter_element(rho, fld->dA(vec3(x))(axis, comp));
  };
  sol.dphi_at = [fld, rho, vec3](int axis, int, const std::array<double, 4>& x) {
    return cocharacter_element(rho, fld->grad_phi(vec3(x))[axis]);
  };
  return sol;
}

}  // namespace

AnalyticSolution dirac_monopole(const Vec3& x0, int n, double excision) {
  SingularityData d;
  d.sites.push_back({x0, n});
  return multi_monopole(d, excision);
}

AnalyticSolution multi_monopole(const SingularityData& data, double excision) {
  data.validate();
  auto fld = std::make_shared<AbelianMonopoleField>();
  fld->data = data;
  fld->excision = excision;
  fld->string_excision = excision;
  return make_abelian(std::move(fld), Cocharacter{{1}});
}

AnalyticSolution embed_solution(const Cocharacter& rho, const AnalyticSolution& sol) {
  if (!sol.abelian)
    throw std::invalid_argument("embed_solution: source solution is not abelian");
  return make_abelian(sol.abelian, rho);
}

AnalyticSolution nahm_pole(const Su2Triple& triple, double y_min) {
  if (triple.commutation_defect() > kDefaultTol)
    throw std::invalid_argument("nahm_pole: triple violates su(2) commutation relations");
  AnalyticSolution sol;
  sol.space_ndim = 4;
  sol.matrix_dim = triple.dim();
  sol.nphi = 4;
  const int dim = triple.dim();
  auto t = std::make_shared<std::array<LieElement, 3>>(
      std::array<LieElement, 3>{triple.t1, triple.t2, triple.t3});
  const LieElement zero = LieElement::Zero(dim, dim);
  sol.in_domain = [y_min](const std::array<double, 4>& x) { return x[3] >= y_min; };
  sol.A_at = [zero](int, const std::array<double, 4>&) { return zero; };
  sol.phi_at = [t, zero, y_min](int comp, const std::array<double, 4>& x) -> LieElement {
    if (x[3] < y_min) throw std::domain_error("nahm_pole: evaluation at y <= 0 wall");
    if (comp == 3) return zero;
    return (*t)[comp] / x[3];
  };
  sol.dA_at = [zero](int, int, const std::array<double, 4>&) { return zero; };
  sol.dphi_at = [t, zero](int axis, int comp, const std::array<double, 4>& x) -> LieElement {
    if (axis != 3 || comp == 3) return zero;
    return -(*t)[comp] / (x[3] * x[3]);
  };
  return sol;
}

FieldConfiguration sample(const AnalyticSolution& sol, const Grid& g,
                          bool exact_derivatives) {
  if (g.ndim != sol.space_ndim)
    throw std::invalid_argument("sample: grid dimension does not match solution");
  FieldConfiguration cfg = FieldConfiguration::zeros(g, sol.matrix_dim, sol.nphi);
  const std::size_t n = g.num_sites();
  cfg.valid.emplace(n, true);
  if (exact_derivatives) {
    cfg.exact.emplace();
    for (int i = 0; i < g.ndim; ++i) {
      for (int j = 0; j < g.ndim; ++j) cfg.exact->dA[i][j] = MatArray(n, sol.matrix_dim);
      for (int j = 0; j < cfg.nphi; ++j) cfg.exact->dphi[i][j] = MatArray(n, sol.matrix_dim);
    }
  }
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const auto x = g.point(g.coords(s));
      if (!sol.in_domain(x)) {
        (*cfg.valid)[s] = false;
        continue;
      }
      for (int c = 0; c < g.ndim; ++c) cfg.A[c][s] = sol.A_at(c, x);
      for (int c = 0; c < cfg.nphi; ++c) cfg.phi[c][s] = sol.phi_at(c, x);
      if (exact_derivatives) {
        for (int i = 0; i < g.ndim; ++i) {
          for (int j = 0; j < g.ndim; ++j) cfg.exact->dA[i][j][s] = sol.dA_at(i, j, x);
          for (int j = 0; j < cfg.nphi; ++j) cfg.exact->dphi[i][j][s] = sol.dphi_at(i, j, x);
        }
      }
    }
  });
  return cfg;
}

FieldConfiguration sample_kw_lift(const AnalyticSolution& sol3, const Grid& g4,
                                  bool exact_derivatives) {
  if (sol3.space_ndim != 3 || g4.ndim != 4)
    throw std::invalid_argument("sample_kw_lift: need a 3d solution and a 4d grid");
  FieldConfiguration cfg = FieldConfiguration::zeros(g4, sol3.matrix_dim, 4);
  const std::size_t n = g4.num_sites();
  cfg.valid.emplace(n, true);
  if (exact_derivatives) {
    cfg.exact.emplace();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cfg.exact->dA[i][j] = MatArray(n, sol3.matrix_dim);
        cfg.exact->dphi[i][j] = MatArray(n, sol3.matrix_dim);
      }
  }
  parallel_for_sites(n, 0, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const auto x4 = g4.point(g4.coords(s));
      const std::array<double, 4> x3{x4[0], x4[1], x4[2], 0.0};
      if (!sol3.in_domain(x3)) {
        (*cfg.valid)[s] = false;
        continue;
      }
      for (int c = 0; c < 3; ++c) cfg.A[c][s] = sol3.A_at(c, x3);
      cfg.phi[3][s] = sol3.phi_at(0, x3);
      if (exact_derivatives) {
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) cfg.exact->dA[i][j][s] = sol3.dA_at(i, j, x3);
          cfg.exact->dphi[i][3][s] = sol3.dphi_at(i, 0, x3);
        }
      }
    }
  });
  return cfg;
}

double sphere_chern1(const AnalyticSolution& sol, const Vec3& center, double radius,
                     int K) {
  if (!sol.abelian)
    throw std::invalid_argument("sphere_chern1: requires an abelian family solution");
  const auto& fld = *sol.abelian;
  int weight_sum = 0;  // Tr rho = i * (sum of weights) * scalar
  for (int w : sol.rho.weights) weight_sum += w;
  double acc = 0.0;
  const double dth = M_PI / K, dph = M_PI / K;  // 2K nodes in phi of width pi/K
  for (int it = 0; it < K; ++it) {
    const double th = (it + 0.5) * dth;
    for (int ip = 0; ip < 2 * K; ++ip) {
      const double ph = (ip + 0.5) * dph;
      const Vec3 xs(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                    std::cos(th));
      const Vec3 xt(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph),
                    -std::sin(th));
      const Vec3 xp(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
      const Vec3 x = center + radius * xs;
      // pullback F(d_theta, d_phi) summed over all index pairs
      double integ = 0.0;
      const Vec3 b = fld.grad_phi(x);
      const Eigen::Matrix3d Fm = (Eigen::Matrix3d() << 0, b.z(), -b.y(), -b.z(), 0,
                                  b.x(), b.y(), -b.x(), 0)
                                     .finished();
      integ = (radius * xt).transpose() * Fm * (radius * xp);
      acc += integ * dth * dph;
    }
  }
  // c1 = (i/2pi) Tr F with F_mat = i * weight_sum * F_scalar
  return -acc * weight_sum / (2.0 * M_PI);
}

}  // namespace kwlab
