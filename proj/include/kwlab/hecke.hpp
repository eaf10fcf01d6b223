#pragma once

#include <complex>

#include "kwlab/report.hpp"
#include "kwlab/solutions.hpp"

namespace kwlab {

/// Holomorphic line bundle on CP^1 tracked by degree and twist divisor.
struct LineBundleState {
  int base_degree = 0;
  std::vector<std::pair<std::complex<double>, int>> divisor;  // (point, multiplicity)

  int degree() const;
};

/// L -> L tensor O(p)^n.
LineBundleState apply_hecke(const LineBundleState& L, std::complex<double> p, int n);

/// Hecke events (y_i, p_i, n_i) at strictly increasing heights; the height
/// coordinate is x3, the slice plane is C = (x1 + i x2).
struct HeckeSequence {
  struct Event {
    double y;
    std::complex<double> p;
    int n;
  };
  std::vector<Event> events;  // sorted by y, pairwise distinct heights

  void validate() const;
  int total_charge() const;
  static HeckeSequence from_json_text(const std::string& text);
  Json to_json() const;

  SingularityData to_singularities() const;
  static HeckeSequence from_singularities(const SingularityData& data);
};

/// Step function y -> deg(L_y) = sum_{y_i < y} n_i.
struct DegreeProfile {
  std::vector<double> heights;  // event heights
  std::vector<int> partial;     // degree after crossing heights[k]
  bool returns_to_zero = false;
  int degree_at(double y) const;
  Json to_json() const;
};
DegreeProfile degree_profile(const HeckeSequence& seq);

/// (i/2pi) Int_{disk} Tr F over the horizontal disk of the given radius at
/// height y, from the multi-monopole solution of `data`. Polar midpoint
/// quadrature with quadratic radial stretching toward the axis;
/// `resolution` radial nodes and 2*resolution angular nodes.
/// Converges to degree_profile(y) as radius and resolution grow.
double flux_degree_check(const SingularityData& data, double y, double disk_radius,
                         int resolution);

}  // namespace kwlab
