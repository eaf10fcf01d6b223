#include "kwlab/json_io.hpp"

namespace kwlab {

namespace {

Json mat_array_to_json(const MatArray& a) {
  std::vector<double> re, im;
  re.reserve(a.raw().size());
  im.reserve(a.raw().size());
  for (const Complex& c : a.raw()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return Json{{"re", re}, {"im", im}};
}

MatArray mat_array_from_json(const Json& j, std::size_t n, int dim) {
  MatArray a(n, dim);
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != a.raw().size() || im.size() != a.raw().size())
    throw std::invalid_argument("field_from_json: component size mismatch");
  for (std::size_t k = 0; k < re.size(); ++k) a.raw()[k] = Complex(re[k], im[k]);
  return a;
}

}  // namespace

Json grid_to_json(const Grid& g) {
  Json j;
  j["ndim"] = g.ndim;
  j["shape"] = std::vector<int>(g.shape.begin(), g.shape.begin() + g.ndim);
  j["spacing"] = std::vector<double>(g.spacing.begin(), g.spacing.begin() + g.ndim);
  j["origin"] = std::vector<double>(g.origin.begin(), g.origin.begin() + g.ndim);
  std::vector<std::string> bc;
  for (int a = 0; a < g.ndim; ++a)
    bc.push_back(g.boundary[a] == BoundaryMode::Periodic ? "periodic" : "clamped");
  j["boundary"] = bc;
  j["orientation"] = g.orientation;
  return j;
}

Grid grid_from_json(const Json& j) {
  Grid g;
  g.ndim = j.at("ndim").get<int>();
  const auto shape = j.at("shape").get<std::vector<int>>();
  const auto spacing = j.at("spacing").get<std::vector<double>>();
  const auto origin = j.at("origin").get<std::vector<double>>();
  const auto bc = j.at("boundary").get<std::vector<std::string>>();
  for (int a = 0; a < g.ndim; ++a) {
    g.shape[a] = shape[a];
    g.spacing[a] = spacing[a];
    g.origin[a] = origin[a];
    g.boundary[a] = bc[a] == "periodic" ? BoundaryMode::Periodic : BoundaryMode::Clamped;
  }
  g.orientation = j.value("orientation", 1.0);
  g.validate();
  return g;
}

Json field_to_json(const FieldConfiguration& cfg) {
  Json j;
  j["grid"] = grid_to_json(cfg.grid);
  j["matrix_dim"] = cfg.matrix_dim;
  j["nphi"] = cfg.nphi;
  Json A = Json::array(), phi = Json::array();
  for (int a = 0; a < cfg.grid.ndim; ++a) A.push_back(mat_array_to_json(cfg.A[a]));
  for (int a = 0; a < cfg.nphi; ++a) phi.push_back(mat_array_to_json(cfg.phi[a]));
  j["A"] = A;
  j["phi"] = phi;
  if (cfg.valid) {
    std::vector<int> v(cfg.valid->begin(), cfg.valid->end());
    j["valid"] = v;
  }
  return j;
}

FieldConfiguration field_from_json(const Json& j) {
  const Grid g = grid_from_json(j.at("grid"));
  const int dim = j.at("matrix_dim").get<int>();
  const int nphi = j.at("nphi").get<int>();
  FieldConfiguration cfg = FieldConfiguration::zeros(g, dim, nphi);
  const std::size_t n = g.num_sites();
  for (int a = 0; a < g.ndim; ++a) cfg.A[a] = mat_array_from_json(j.at("A").at(a), n, dim);
  for (int a = 0; a < nphi; ++a)
    cfg.phi[a] = mat_array_from_json(j.at("phi").at(a), n, dim);
  if (j.contains("valid")) {
    const auto v = j.at("valid").get<std::vector<int>>();
    cfg.valid.emplace(v.begin(), v.end());
  }
  return cfg;
}

}  // namespace kwlab
