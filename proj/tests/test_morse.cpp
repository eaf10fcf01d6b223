#include "kwlab/morse.hpp"

#include <set>

#include "doctest.h"

using namespace kwlab;

namespace {

// Independent oracle: mod-2 simplicial homology of a triangulated surface.
struct Triangulation {
  int nverts;
  std::vector<std::array<int, 3>> faces;
};

std::vector<int> simplicial_betti_mod2(const Triangulation& t) {
  std::set<std::pair<int, int>> edge_set;
  for (const auto& f : t.faces) {
    auto add = [&](int a, int b) { edge_set.insert({std::min(a, b), std::max(a, b)}); };
    add(f[0], f[1]);
    add(f[1], f[2]);
    add(f[0], f[2]);
  }
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  auto edge_id = [&](int a, int b) {
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), key) -
                            edges.begin());
  };
  Eigen::MatrixXi d1 = Eigen::MatrixXi::Zero(t.nverts, edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    d1(edges[e].first, e) = 1;
    d1(edges[e].second, e) = 1;
  }
  Eigen::MatrixXi d2 = Eigen::MatrixXi::Zero(edges.size(), t.faces.size());
  for (std::size_t f = 0; f < t.faces.size(); ++f) {
    d2(edge_id(t.faces[f][0], t.faces[f][1]), f) = 1;
    d2(edge_id(t.faces[f][1], t.faces[f][2]), f) = 1;
    d2(edge_id(t.faces[f][0], t.faces[f][2]), f) = 1;
  }
  auto rank2 = [](Eigen::MatrixXi m) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
      int pivot = -1;
      for (int r = rank; r < m.rows(); ++r)
        if (m(r, col) % 2 != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      m.row(pivot).swap(m.row(rank));
      for (int r = 0; r < m.rows(); ++r)
        if (r != rank && m(r, col) % 2 != 0) m.row(r) += m.row(rank);
      ++rank;
    }
    return rank;
  };
  const int r1 = rank2(d1), r2 = rank2(d2);
  const int ne = static_cast<int>(edges.size()), nf = static_cast<int>(t.faces.size());
  return {t.nverts - r1, ne - r1 - r2, nf - r2};
}

Triangulation octahedron() {
  // vertices 0..5 = +x,-x,+y,-y,+z,-z
  Triangulation t;
  t.nverts = 6;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) t.faces.push_back({x, y, z});
  return t;
}

Triangulation torus7() {
  // minimal 7-vertex triangulation of T^2: faces {i, i+1, i+3}, {i, i+2, i+3} mod 7
  Triangulation t;
  t.nverts = 7;
  for (int i = 0; i < 7; ++i) {
    t.faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    t.faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return t;
}

MorseProblem sphere_height() {
  MorseProblem p;
  p.manifold = MorseProblem::Manifold::Sphere;
  return p;
}

MorseProblem torus_height() {
  MorseProblem p;
  p.manifold = MorseProblem::Manifold::Torus;
  p.tilt = 0.15;
  return p;
}

MorseProblem box_bowl() {
  MorseProblem p;
  p.manifold = MorseProblem::Manifold::Box;
  p.height_dir = Eigen::Vector3d::Zero();  // pure |x|^2
  return p;
}

}  // namespace

TEST_CASE("simplicial oracle reproduces the classical Betti numbers") {
  CHECK(simplicial_betti_mod2(octahedron()) == std::vector<int>{1, 0, 1});
  CHECK(simplicial_betti_mod2(torus7()) == std::vector<int>{1, 2, 1});
}

TEST_CASE("sphere height function: two critical points, indices 0 and 2") {
  const auto crits = find_critical_points(sphere_height());
  REQUIRE(crits.size() == 2);
  CHECK(crits[0].index == 0);
  CHECK(crits[1].index == 2);
  CHECK(crits[0].position.z() == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(crits[1].position.z() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("tilted torus height function: four points with indices 0,1,1,2") {
  const auto crits = find_critical_points(torus_height());
  REQUIRE(crits.size() == 4);
  CHECK(crits[0].index == 0);
  CHECK(crits[1].index == 1);
  CHECK(crits[2].index == 1);
  CHECK(crits[3].index == 2);
  for (const auto& c : crits) CHECK(c.min_abs_eig > 1e-8);
}

TEST_CASE("box bowl: a single minimum") {
  const auto crits = find_critical_points(box_bowl());
  REQUIRE(crits.size() == 1);
  CHECK(crits[0].index == 0);
  CHECK(crits[0].position.norm() <= 1e-8);
}

TEST_CASE("degenerate critical sets are detected, not silently accepted") {
  MorseProblem p = sphere_height();
  p.height_dir = Eigen::Vector3d::Zero();
  p.bump_amp = 1.0;  // h = exp(-|x - c|^2 / w^2): degenerate circles on the sphere
  p.bump_center = Eigen::Vector3d(0, 0, 0);
  p.bump_width = 1.0;
  CHECK_THROWS_AS(find_critical_points(p), std::runtime_error);
}

TEST_CASE("torus flow counts: every adjacent pair is joined by two flow lines") {
  const MorseProblem p = torus_height();
  const auto crits = find_critical_points(p);
  REQUIRE(crits.size() == 4);
  // saddle -> top: the saddle's one-dimensional ascending sphere
  CHECK(count_flow_lines(p, crits, 1, 3) == 2);
  CHECK(count_flow_lines(p, crits, 2, 3) == 2);
  // bottom -> saddles: separatrix bisection on the unstable circle
  CHECK(count_flow_lines(p, crits, 0, 1) == 2);
  CHECK(count_flow_lines(p, crits, 0, 2) == 2);
  CHECK_THROWS_AS(count_flow_lines(p, crits, 0, 3), std::invalid_argument);
}

TEST_CASE("morse complex of the sphere: d trivial, Betti (1,0,1)") {
  const MorseComplex mc = build_complex(sphere_height());
  CHECK(mc.d_squared_is_zero());
  CHECK(mc.betti() == simplicial_betti_mod2(octahedron()));
  CHECK(mc.euler_characteristic() == 2);
}

TEST_CASE("morse complex of the tilted torus: Betti (1,2,1), Euler 0") {
  const MorseComplex mc = build_complex(torus_height());
  CHECK(mc.d_squared_is_zero());
  CHECK(mc.betti() == simplicial_betti_mod2(torus7()));
  CHECK(mc.euler_characteristic() == 0);
}

TEST_CASE("morse complex of the box: Betti (1,0,0), Euler 1") {
  const MorseComplex mc = build_complex(box_bowl());
  CHECK(mc.betti() == std::vector<int>{1, 0, 0});
  CHECK(mc.euler_characteristic() == 1);
}

TEST_CASE("homology is stable under perturbations of h, metric, and seeding") {
  MorseProblem p = torus_height();
  p.bump_amp = 0.01;
  p.bump_center = Eigen::Vector3d(0.5, 2.0, 1.0);
  p.bump_width = 0.8;
  const MorseComplex perturbed = build_complex(p);
  CHECK(perturbed.betti() == std::vector<int>{1, 2, 1});

  MorseProblem pm = torus_height();
  pm.metric_scale_u = 1.15;
  CHECK(build_complex(pm).betti() == std::vector<int>{1, 2, 1});

  MorseOptions dense;
  dense.seeds_per_axis = 20;
  const auto crits = find_critical_points(torus_height(), dense);
  CHECK(crits.size() == 4);
}

TEST_CASE("signed critical point count equals the Euler characteristic") {
  CHECK(build_complex(sphere_height()).euler_characteristic() == 2);
  CHECK(build_complex(torus_height()).euler_characteristic() == 0);
  CHECK(build_complex(box_bowl()).euler_characteristic() == 1);
}

TEST_CASE("exhausted trajectory budget is an error, not a wrong count") {
  const MorseProblem p = torus_height();
  const auto crits = find_critical_points(p);
  MorseOptions strangled;
  strangled.flow_budget = 1e-4;
  CHECK_THROWS_AS(count_flow_lines(p, crits, 1, 3, strangled), std::runtime_error);
}
