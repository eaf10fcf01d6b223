#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace kwlab {

using Json = nlohmann::ordered_json;

/// Per-equation-component residual norms over an interior region.
struct ResidualReport {
  struct Component {
    std::string name;
    double max_norm = 0.0;
    double l2_norm = 0.0;  // sqrt of trace-form-square quadrature
  };
  std::vector<Component> components;
  std::size_t sites_evaluated = 0;
  double region_volume = 0.0;
  std::string region;  // interior-region descriptor
  std::string scheme;
  /// max over components of the per-site norm; filled when requested.
  std::vector<double> site_norm;

  double max_norm() const;
  double l2_norm() const;
  const Component& component(const std::string& name) const;
  Json to_json() const;
};

/// Least-squares slope of log(err) against log(h).
struct SlopeFit {
  double slope = 0.0;
  std::vector<double> h, err;
  Json to_json() const;
};
SlopeFit fit_slope(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace kwlab
