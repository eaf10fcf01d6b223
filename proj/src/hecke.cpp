#include "kwlab/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kwlab {

int LineBundleState::degree() const {
  int d = base_degree;
  for (const auto& [p, n] : divisor) d += n;
  return d;
}

LineBundleState apply_hecke(const LineBundleState& L, std::complex<double> p, int n) {
  LineBundleState out = L;
  if (n == 0) return out;
  for (auto& [q, m] : out.divisor) {
    if (std::abs(q - p) < 1e-12) {
      m += n;
      if (m == 0)
        out.divisor.erase(
            std::remove_if(out.divisor.begin(), out.divisor.end(),
                           [](const auto& e) { return e.second == 0; }),
            out.divisor.end());
      return out;
    }
  }
  out.divisor.emplace_back(p, n);
  return out;
}

void HeckeSequence::validate() const {
  for (std::size_t k = 1; k < events.size(); ++k)
    if (!(events[k].y > events[k - 1].y))
      throw std::invalid_argument("HeckeSequence: heights must be strictly increasing");
}

int HeckeSequence::total_charge() const {
  int s = 0;
  for (const auto& e : events) s += e.n;
  return s;
}

HeckeSequence HeckeSequence::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  HeckeSequence seq;
  for (const auto& e : j.at("events"))
    seq.events.push_back({e.at("y").get<double>(),
                          {e.at("p").at(0).get<double>(), e.at("p").at(1).get<double>()},
                          e.at("n").get<int>()});
  std::sort(seq.events.begin(), seq.events.end(),
            [](const Event& a, const Event& b) { return a.y < b.y; });
  seq.validate();
  return seq;
}

Json HeckeSequence::to_json() const {
  Json evs = Json::array();
  for (const auto& e : events)
    evs.push_back({{"y", e.y}, {"p", {e.p.real(), e.p.imag()}}, {"n", e.n}});
  return Json{{"events", evs}};
}

SingularityData HeckeSequence::to_singularities() const {
  SingularityData d;
  for (const auto& e : events)
    d.sites.push_back({Vec3(e.p.real(), e.p.imag(), e.y), e.n});
  return d;
}

HeckeSequence HeckeSequence::from_singularities(const SingularityData& data) {
  HeckeSequence seq;
  for (const auto& s : data.sites)
    seq.events.push_back({s.pos.z(), {s.pos.x(), s.pos.y()}, s.charge});
  std::sort(seq.events.begin(), seq.events.end(),
            [](const Event& a, const Event& b) { return a.y < b.y; });
  seq.validate();
  return seq;
}

DegreeProfile degree_profile(const HeckeSequence& seq) {
  seq.validate();
  DegreeProfile p;
  int acc = 0;
  for (const auto& e : seq.events) {
    acc += e.n;
    p.heights.push_back(e.y);
    p.partial.push_back(acc);
  }
  p.returns_to_zero = acc == 0;
  return p;
}

int DegreeProfile::degree_at(double y) const {
  int d = 0;
  for (std::size_t k = 0; k < heights.size(); ++k)
    if (heights[k] < y) d = partial[k];
  return d;
}

Json DegreeProfile::to_json() const {
  return Json{{"heights", heights},
              {"partial_degrees", partial},
              {"returns_to_zero", returns_to_zero}};
}

double flux_degree_check(const SingularityData& data, double y, double disk_radius,
                         int resolution) {
  for (const auto& s : data.sites)
    if (std::abs(s.pos.z() - y) < 1e-9)
      throw std::invalid_argument("flux_degree_check: slice collides with a singular height");
  if (data.total_charge() != 0)
    throw std::invalid_argument("flux_degree_check: charges must sum to zero");
  AbelianMonopoleField fld;
  fld.data = data;
  // disk flux of F_{12} = B_3; first-Chern pairing flips the scalar sign
  double acc = 0.0;
  const int nr = resolution, nth = 2 * resolution;
  const double ds = 1.0 / nr, dth = 2.0 * M_PI / nth;
  for (int ir = 0; ir < nr; ++ir) {
    const double s = (ir + 0.5) * ds;
    const double rho = disk_radius * s * s;          // radial stretch toward the axis
    const double drho_ds = 2.0 * disk_radius * s;
    for (int it = 0; it < nth; ++it) {
      const double th = (it + 0.5) * dth;
      const Vec3 x(rho * std::cos(th), rho * std::sin(th), y);
      acc += fld.grad_phi(x).z() * rho * drho_ds * ds * dth;
    }
  }
  return -acc / (2.0 * M_PI);
}

}  // namespace kwlab
