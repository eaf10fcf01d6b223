#include "kwlab/report.hpp"

#include <cmath>
#include <stdexcept>

namespace kwlab {

double ResidualReport::max_norm() const {
  double m = 0.0;
  for (const auto& c : components) m = std::max(m, c.max_norm);
  return m;
}

double ResidualReport::l2_norm() const {
  double s = 0.0;
  for (const auto& c : components) s += c.l2_norm * c.l2_norm;
  return std::sqrt(s);
}

const ResidualReport::Component& ResidualReport::component(const std::string& name) const {
  for (const auto& c : components)
    if (c.name == name) return c;
  throw std::out_of_range("ResidualReport: no component named " + name);
}

Json ResidualReport::to_json() const {
  Json j;
  j["scheme"] = scheme;
  j["region"] = region;
  j["sites_evaluated"] = sites_evaluated;
  j["region_volume"] = region_volume;
  j["max_norm"] = max_norm();
  j["l2_norm"] = l2_norm();
  Json comps = Json::array();
  for (const auto& c : components)
    comps.push_back({{"name", c.name}, {"max", c.max_norm}, {"l2", c.l2_norm}});
  j["components"] = comps;
  return j;
}

SlopeFit fit_slope(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw std::invalid_argument("fit_slope: need matching h/err with >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(std::max(err[i], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  SlopeFit f;
  f.h = h;
  f.err = err;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return f;
}

Json SlopeFit::to_json() const {
  Json j;
  j["slope"] = slope;
  j["h"] = h;
  j["err"] = err;
  return j;
}

}  // namespace kwlab
