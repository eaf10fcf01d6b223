#include "kwlab/morse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kwlab {

namespace {

Eigen::Matrix3d rot_y(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}

}  // namespace

int MorseProblem::charts() const { return manifold == Manifold::Sphere ? 2 : 1; }
bool MorseProblem::chart_periodic() const { return manifold == Manifold::Torus; }

double MorseProblem::h3(const Eigen::Vector3d& x) const {
  double v = height_dir.dot(x);
  if (manifold == Manifold::Box) v += x.head<2>().squaredNorm();
  if (bump_amp != 0.0) {
    const Eigen::Vector3d d = x - bump_center;
    v += bump_amp * std::exp(-d.squaredNorm() / (bump_width * bump_width));
  }
  return v;
}

Eigen::Vector3d MorseProblem::grad_h3(const Eigen::Vector3d& x) const {
  Eigen::Vector3d g = height_dir;
  if (manifold == Manifold::Box) g += Eigen::Vector3d(2 * x.x(), 2 * x.y(), 0);
  if (bump_amp != 0.0) {
    const Eigen::Vector3d d = x - bump_center;
    const double w2 = bump_width * bump_width;
    g += bump_amp * std::exp(-d.squaredNorm() / w2) * (-2.0 / w2) * d;
  }
  return g;
}

Eigen::Matrix3d MorseProblem::hess_h3(const Eigen::Vector3d& x) const {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  if (manifold == Manifold::Box) {
    h(0, 0) = 2;
    h(1, 1) = 2;
  }
  if (bump_amp != 0.0) {
    const Eigen::Vector3d d = x - bump_center;
    const double w2 = bump_width * bump_width;
    const double e = bump_amp * std::exp(-d.squaredNorm() / w2);
    h += e * (4.0 / (w2 * w2) * d * d.transpose() - 2.0 / w2 * Eigen::Matrix3d::Identity());
  }
  return h;
}

Eigen::Vector3d MorseProblem::embed(int chart, const Eigen::Vector2d& u) const {
  switch (manifold) {
    case Manifold::Sphere: {
      const double s = u.squaredNorm();
      const double f = 1.0 / (1.0 + s);
      const double zsign = chart == 0 ? 1.0 : -1.0;
      return sphere_radius * Eigen::Vector3d(2 * u.x() * f, 2 * u.y() * f,
                                             zsign * (1 - s) * f);
    }
    case Manifold::Torus: {
      const double cu = std::cos(u.x()), su = std::sin(u.x());
      const double cv = std::cos(u.y()), sv = std::sin(u.y());
      const double w = torus_R + torus_r * cv;
      return rot_y(tilt) * Eigen::Vector3d(torus_r * sv, w * cu, w * su);
    }
    case Manifold::Box:
      return {u.x(), u.y(), 0.0};
  }
  throw std::logic_error("embed: bad manifold");
}

void MorseProblem::embed_derivs(int chart, const Eigen::Vector2d& u,
                                Eigen::Vector3d& Eu, Eigen::Vector3d& Ev,
                                Eigen::Vector3d& Euu, Eigen::Vector3d& Euv,
                                Eigen::Vector3d& Evv) const {
  switch (manifold) {
    case Manifold::Sphere: {
      const double a = u.x(), b = u.y();
      const double s = a * a + b * b;
      const double f = 1.0 / (1.0 + s);
      const double f2 = f * f, f3 = f2 * f;
      const double zs = chart == 0 ? 1.0 : -1.0;
      const double fa = -2 * a * f2, fb = -2 * b * f2;
      const double faa = -2 * f2 + 8 * a * a * f3;
      const double fab = 8 * a * b * f3;
      const double fbb = -2 * f2 + 8 * b * b * f3;
      const double R = sphere_radius;
      Eu = R * Eigen::Vector3d(2 * f + 2 * a * fa, 2 * b * fa, zs * (-2 * a * f + (1 - s) * fa));
      Ev = R * Eigen::Vector3d(2 * a * fb, 2 * f + 2 * b * fb, zs * (-2 * b * f + (1 - s) * fb));
      Euu = R * Eigen::Vector3d(4 * fa + 2 * a * faa, 2 * b * faa,
                                zs * (-2 * f - 4 * a * fa + (1 - s) * faa));
      Euv = R * Eigen::Vector3d(2 * fb + 2 * a * fab, 2 * fa + 2 * b * fab,
                                zs * (-2 * a * fb - 2 * b * fa + (1 - s) * fab));
      Evv = R * Eigen::Vector3d(2 * a * fbb, 4 * fb + 2 * b * fbb,
                                zs * (-2 * f - 4 * b * fb + (1 - s) * fbb));
      return;
    }
    case Manifold::Torus: {
      const double cu = std::cos(u.x()), su = std::sin(u.x());
      const double cv = std::cos(u.y()), sv = std::sin(u.y());
      const double w = torus_R + torus_r * cv;
      const Eigen::Matrix3d M = rot_y(tilt);
      Eu = M * Eigen::Vector3d(0, -w * su, w * cu);
      Ev = M * Eigen::Vector3d(torus_r * cv, -torus_r * sv * cu, -torus_r * sv * su);
      Euu = M * Eigen::Vector3d(0, -w * cu, -w * su);
      Euv = M * Eigen::Vector3d(0, torus_r * sv * su, -torus_r * sv * cu);
      Evv = M * Eigen::Vector3d(-torus_r * sv, -torus_r * cv * cu, -torus_r * cv * su);
      return;
    }
    case Manifold::Box:
      Eu = {1, 0, 0};
      Ev = {0, 1, 0};
      Euu = Euv = Evv = Eigen::Vector3d::Zero();
      return;
  }
  throw std::logic_error("embed_derivs: bad manifold");
}

Eigen::Matrix2d MorseProblem::metric(int chart, const Eigen::Vector2d& u) const {
  Eigen::Vector3d Eu, Ev, Euu, Euv, Evv;
  embed_derivs(chart, u, Eu, Ev, Euu, Euv, Evv);
  Eigen::Matrix2d g;
  g << Eu.dot(Eu), Eu.dot(Ev), Eu.dot(Ev), Ev.dot(Ev);
  g(0, 0) *= metric_scale_u;
  return g;
}

double MorseProblem::h(int chart, const Eigen::Vector2d& u) const {
  return h3(embed(chart, u));
}

Eigen::Vector2d MorseProblem::grad(int chart, const Eigen::Vector2d& u) const {
  Eigen::Vector3d Eu, Ev, Euu, Euv, Evv;
  embed_derivs(chart, u, Eu, Ev, Euu, Euv, Evv);
  const Eigen::Vector3d g = grad_h3(embed(chart, u));
  return {Eu.dot(g), Ev.dot(g)};
}

Eigen::Matrix2d MorseProblem::hess(int chart, const Eigen::Vector2d& u) const {
  Eigen::Vector3d Eu, Ev, Euu, Euv, Evv;
  embed_derivs(chart, u, Eu, Ev, Euu, Euv, Evv);
  const Eigen::Vector3d x = embed(chart, u);
  const Eigen::Vector3d g = grad_h3(x);
  const Eigen::Matrix3d H = hess_h3(x);
  Eigen::Matrix2d out;
  out(0, 0) = Eu.dot(H * Eu) + g.dot(Euu);
  out(0, 1) = out(1, 0) = Eu.dot(H * Ev) + g.dot(Euv);
  out(1, 1) = Ev.dot(H * Ev) + g.dot(Evv);
  return out;
}

int MorseProblem::preferred_chart(const Eigen::Vector3d& x) const {
  if (manifold != Manifold::Sphere) return 0;
  return x.z() >= 0 ? 0 : 1;
}

Eigen::Vector2d MorseProblem::to_chart(int chart, const Eigen::Vector3d& x) const {
  switch (manifold) {
    case Manifold::Sphere: {
      const double R = sphere_radius;
      const double denom = chart == 0 ? R + x.z() : R - x.z();
      return Eigen::Vector2d(x.x(), x.y()) / denom;
    }
    case Manifold::Torus: {
      const Eigen::Vector3d b = rot_y(tilt).transpose() * x;
      const double u = std::atan2(b.z(), b.y());
      const double w = std::hypot(b.y(), b.z());
      const double v = std::atan2(b.x() / torus_r, (w - torus_R) / torus_r);
      return {u, v};
    }
    case Manifold::Box:
      return x.head<2>();
  }
  throw std::logic_error("to_chart: bad manifold");
}

namespace {

struct EigenPair {
  Eigen::Vector2d eigs;
  Eigen::Matrix2d vecs;  // columns, g-orthonormal
};

EigenPair flow_linearization(const MorseProblem& pb, int chart,
                             const Eigen::Vector2d& u) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(pb.hess(chart, u),
                                                               pb.metric(chart, u));
  return {es.eigenvalues(), es.eigenvectors()};
}

struct FlowResult {
  bool arrived = false;
  int target = -1;  // critical point index
};

struct FlowContext {
  const MorseProblem& pb;
  const std::vector<CriticalPoint>& crits;
  const MorseOptions& opts;
};

Eigen::Vector2d wrap_chart(const MorseProblem& pb, Eigen::Vector2d u) {
  if (pb.chart_periodic()) {
    u.x() = std::remainder(u.x(), 2 * M_PI);
    u.y() = std::remainder(u.y(), 2 * M_PI);
  }
  return u;
}

/// Gradient flow (ascending or descending) by embedded Cash-Karp RK45 with
/// chart switching; terminates at a critical point.
FlowResult flow_to_critical(const FlowContext& ctx, int chart, Eigen::Vector2d u,
                            bool ascend) {
  static const double b21 = 1. / 5;
  static const double b31 = 3. / 40, b32 = 9. / 40;
  static const double b41 = 3. / 10, b42 = -9. / 10, b43 = 6. / 5;
  static const double b51 = -11. / 54, b52 = 5. / 2, b53 = -70. / 27, b54 = 35. / 27;
  static const double b61 = 1631. / 55296, b62 = 175. / 512, b63 = 575. / 13824,
                      b64 = 44275. / 110592, b65 = 253. / 4096;
  static const double c1 = 37. / 378, c3 = 250. / 621, c4 = 125. / 594, c6 = 512. / 1771;
  static const double d1 = 2825. / 27648, d3 = 18575. / 48384, d4 = 13525. / 55296,
                      d5 = 277. / 14336, d6 = 1. / 4;

  const MorseProblem& pb = ctx.pb;
  const auto& crits = ctx.crits;
  FlowResult res;
  const double dir = ascend ? 1.0 : -1.0;
  auto vel = [&](int ch, const Eigen::Vector2d& p) -> Eigen::Vector2d {
    return dir * pb.metric(ch, p).ldlt().solve(pb.grad(ch, p));
  };

  double t = 0.0, dt = 1e-3;
  const double tol = 1e-10;
  int iter = 0;
  while (t < ctx.opts.flow_budget && iter++ < 2000000) {
    const Eigen::Vector2d g = pb.grad(chart, u);
    const Eigen::Matrix2d met = pb.metric(chart, u);
    const double gn = std::sqrt(g.dot(met.ldlt().solve(g)));
    if (gn < 1e-9) {
      const Eigen::Vector3d x = pb.embed(chart, u);
      double best = 1e18, second = 1e18;
      int bi = -1;
      for (std::size_t k = 0; k < crits.size(); ++k) {
        const double d = (x - crits[k].position).norm();
        if (d < best) { second = best; best = d; bi = static_cast<int>(k); }
        else if (d < second) second = d;
      }
      if (bi < 0 || best > 1e3 * ctx.opts.arrive_tol)
        throw std::runtime_error("flow: stalled away from every critical point");
      if (second < 2 * best)
        throw std::runtime_error("flow: ambiguous arrival (distance tie)");
      res.arrived = true;
      res.target = bi;
      return res;
    }

    const Eigen::Vector2d k1 = vel(chart, u);
    const Eigen::Vector2d k2 = vel(chart, u + dt * b21 * k1);
    const Eigen::Vector2d k3 = vel(chart, u + dt * (b31 * k1 + b32 * k2));
    const Eigen::Vector2d k4 = vel(chart, u + dt * (b41 * k1 + b42 * k2 + b43 * k3));
    const Eigen::Vector2d k5 =
        vel(chart, u + dt * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
    const Eigen::Vector2d k6 =
        vel(chart, u + dt * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));
    const Eigen::Vector2d u5 = u + dt * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    const Eigen::Vector2d u4 =
        u + dt * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    const double err = (u5 - u4).norm();
    if (err > tol && dt > 1e-12) {
      dt = std::max(1e-12, 0.9 * dt * std::pow(tol / err, 0.25));
      continue;
    }
    u = wrap_chart(pb, u5);
    t += dt;
    if (err > 0) dt = std::min(0.25, 0.9 * dt * std::pow(tol / err, 0.2));
    else dt = std::min(0.25, dt * 2);
    if (pb.manifold == MorseProblem::Manifold::Sphere && u.squaredNorm() > 2.0) {
      const Eigen::Vector3d x = pb.embed(chart, u);
      chart = 1 - chart;
      u = pb.to_chart(chart, x);
    }
  }
  throw std::runtime_error("flow: trajectory budget exhausted");
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const MorseProblem& problem,
                                                const MorseOptions& opts) {
  std::vector<CriticalPoint> out;
  auto consider = [&](int chart, Eigen::Vector2d u) {
    for (int it = 0; it < 100; ++it) {
      const Eigen::Vector2d g = problem.grad(chart, u);
      if (g.norm() < opts.grad_tol) break;
      Eigen::Vector2d step = problem.hess(chart, u).fullPivLu().solve(g);
      if (!step.allFinite()) return;
      const double cap = 0.5;
      if (step.norm() > cap) step *= cap / step.norm();
      u = wrap_chart(problem, u - step);
      if (!u.allFinite() || u.squaredNorm() > 1e8) return;
    }
    if (problem.grad(chart, u).norm() >= opts.grad_tol) return;
    if (problem.manifold == MorseProblem::Manifold::Sphere && u.squaredNorm() > 1.7)
      return;  // owned by the other chart
    const Eigen::Vector3d x = problem.embed(chart, u);
    for (const auto& c : out)
      if ((c.position - x).norm() < 10 * std::max(opts.grad_tol, 1e-7) + 1e-6) return;
    const EigenPair ep = flow_linearization(problem, chart, u);
    const double mae = std::min(std::abs(ep.eigs(0)), std::abs(ep.eigs(1)));
    if (mae <= opts.degenerate_tol)
      throw std::runtime_error("find_critical_points: degenerate critical point");
    CriticalPoint cp;
    cp.position = x;
    cp.chart_coords = u;
    cp.chart = chart;
    cp.index = (ep.eigs(0) < 0) + (ep.eigs(1) < 0);
    cp.min_abs_eig = mae;
    cp.value = problem.h3(x);
    out.push_back(cp);
  };

  const int ns = opts.seeds_per_axis;
  for (int chart = 0; chart < problem.charts(); ++chart) {
    double lo = -1.3, hi = 1.3;
    if (problem.manifold == MorseProblem::Manifold::Torus) { lo = 0.0; hi = 2 * M_PI; }
    if (problem.manifold == MorseProblem::Manifold::Box) { lo = -3.0; hi = 3.0; }
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        consider(chart, {lo + (hi - lo) * (i + 0.5) / ns, lo + (hi - lo) * (j + 0.5) / ns});
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.index != b.index ? a.index < b.index : a.value < b.value;
  });
  return out;
}

int count_flow_lines(const MorseProblem& problem,
                     const std::vector<CriticalPoint>& crits, int p, int q,
                     const MorseOptions& opts) {
  if (crits[q].index != crits[p].index + 1)
    throw std::invalid_argument("count_flow_lines: need index(q) = index(p) + 1");

  // Flows between adjacent indices are rigid only at an index-1 end, where
  // the connecting manifold is one-dimensional: two shots along the saddle's
  // transverse eigendirection. Shooting from the other end instead would have
  // to thread exponentially thin corridors past intervening saddles.
  const bool from_p = crits[p].index == 1;   // ascend from p toward q
  const bool from_q = crits[q].index == 1;   // descend from q toward p
  if (!from_p && !from_q) return 0;          // no one-dimensional end (surfaces: unreachable)

  const int src = from_p ? p : q;
  const int dst = from_p ? q : p;
  const FlowContext ctx{problem, crits, opts};
  const EigenPair ep =
      flow_linearization(problem, crits[src].chart, crits[src].chart_coords);
  // ascending-unstable at a saddle = positive eigenvalue; its descending
  // counterpart is the negative one
  const int col = from_p ? (ep.eigs(0) > 0 ? 0 : 1) : (ep.eigs(0) < 0 ? 0 : 1);
  const Eigen::Vector2d dirv(ep.vecs(0, col), ep.vecs(1, col));
  const double eps0 = 1e-4;
  int count = 0;
  for (int sgn : {+1, -1}) {
    const FlowResult r =
        flow_to_critical(ctx, crits[src].chart,
                         crits[src].chart_coords + sgn * eps0 * dirv.normalized(),
                         from_p);
    if (r.arrived && r.target == dst) ++count;
  }
  return count;
}

bool MorseComplex::d_squared_is_zero() const {
  for (std::size_t k = 0; k + 1 < differential.size(); ++k) {
    if (differential[k].size() == 0 || differential[k + 1].size() == 0) continue;
    const Eigen::MatrixXi prod = differential[k] * differential[k + 1];
    for (int r = 0; r < prod.rows(); ++r)
      for (int c = 0; c < prod.cols(); ++c)
        if (prod(r, c) % 2 != 0) return false;
  }
  return true;
}

namespace {
int gf2_rank(Eigen::MatrixXi m) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (m(r, col) % 2 != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(rank));
    for (int r = 0; r < m.rows(); ++r)
      if (r != rank && m(r, col) % 2 != 0) m.row(r) = (m.row(r) + m.row(rank));
    ++rank;
  }
  return rank;
}
}  // namespace

std::vector<int> MorseComplex::betti() const {
  const int top = std::max(max_index, 2);
  std::vector<int> dims(top + 1, 0);
  for (const auto& p : points) ++dims[p.index];
  std::vector<int> ranks(top + 1, 0);  // rank of d_k : C_k -> C_{k+1}
  for (int k = 0; k < static_cast<int>(differential.size()); ++k)
    if (differential[k].size() > 0) ranks[k] = gf2_rank(differential[k]);
  std::vector<int> b(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    const int below = k > 0 ? ranks[k - 1] : 0;
    b[k] = dims[k] - ranks[k] - below;
  }
  return b;
}

int MorseComplex::euler_characteristic() const {
  int chi = 0;
  for (const auto& p : points) chi += p.index % 2 == 0 ? 1 : -1;
  return chi;
}

Json MorseComplex::to_json() const {
  Json pts = Json::array();
  for (const auto& p : points)
    pts.push_back({{"position", {p.position.x(), p.position.y(), p.position.z()}},
                   {"index", p.index},
                   {"value", p.value},
                   {"min_abs_eig", p.min_abs_eig}});
  Json diffs = Json::array();
  for (const auto& m : differential) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c) % 2);
      rows.push_back(row);
    }
    diffs.push_back(rows);
  }
  return Json{{"critical_points", pts},
              {"differential", diffs},
              {"d_squared_zero", d_squared_is_zero()},
              {"betti", betti()},
              {"euler_characteristic", euler_characteristic()}};
}

MorseComplex build_complex(const MorseProblem& problem, const MorseOptions& opts) {
  MorseComplex mc;
  mc.points = find_critical_points(problem, opts);
  for (const auto& p : mc.points) mc.max_index = std::max(mc.max_index, p.index);
  std::vector<std::vector<int>> by_index(mc.max_index + 1);
  for (std::size_t k = 0; k < mc.points.size(); ++k)
    by_index[mc.points[k].index].push_back(static_cast<int>(k));
  mc.differential.resize(std::max(0, mc.max_index));
  for (int k = 0; k + 1 <= mc.max_index; ++k) {
    Eigen::MatrixXi m(by_index[k].size(), by_index[k + 1].size());
    m.setZero();
    for (std::size_t i = 0; i < by_index[k].size(); ++i)
      for (std::size_t j = 0; j < by_index[k + 1].size(); ++j)
        m(i, j) = count_flow_lines(problem, mc.points, by_index[k][i],
                                   by_index[k + 1][j], opts) % 2;
    mc.differential[k] = m;
  }
  if (!mc.d_squared_is_zero())
    throw std::runtime_error(
        "build_complex: d^2 != 0 (Morse-Smale transversality failure; perturb the "
        "problem)");
  return mc;
}

}  // namespace kwlab
