#include "kwlab/jones.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kwlab {

LaurentPolynomial LaurentPolynomial::monomial(int quarter_exp, long long coeff) {
  LaurentPolynomial p;
  if (coeff != 0) p.c_[quarter_exp] = coeff;
  return p;
}

void LaurentPolynomial::trim() {
  for (auto it = c_.begin(); it != c_.end();)
    it = it->second == 0 ? c_.erase(it) : std::next(it);
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial out = *this;
  for (const auto& [e, c] : o.c_) out.c_[e] += c;
  out.trim();
  return out;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  LaurentPolynomial out;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) out.c_[e1 + e2] += c1 * c2;
  out.trim();
  return out;
}

LaurentPolynomial LaurentPolynomial::bar() const {
  LaurentPolynomial out;
  for (const auto& [e, c] : c_) out.c_[-e] = c;
  return out;
}

long long LaurentPolynomial::coefficient_at_quarter(int quarter_exp) const {
  const auto it = c_.find(quarter_exp);
  return it == c_.end() ? 0 : it->second;
}

namespace {
std::string exp_string(int quarter) {
  if (quarter % 4 == 0) return std::to_string(quarter / 4);
  if (quarter % 2 == 0) return std::to_string(quarter / 2) + "/2";
  return std::to_string(quarter) + "/4";
}
}  // namespace

std::string LaurentPolynomial::pretty() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : c_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    const long long a = std::abs(c);
    first = false;
    if (e == 0) { os << a; continue; }
    if (a != 1) os << a << "*";
    os << "q^(" << exp_string(e) << ")";
  }
  return os.str();
}

Json LaurentPolynomial::to_json() const {
  Json terms = Json::array();
  for (const auto& [e, c] : c_)
    terms.push_back({{"exponent", exp_string(e)}, {"quarter_exponent", e}, {"coeff", c}});
  return Json{{"terms", terms}, {"pretty", pretty()}};
}

void KnotDiagram::validate() const {
  std::map<int, int> count;
  for (const auto& x : crossings)
    for (int e : x) ++count[e];
  for (const auto& [e, c] : count)
    if (c != 2)
      throw std::invalid_argument("KnotDiagram: edge " + std::to_string(e) +
                                  " appears " + std::to_string(c) + " times (need 2)");
  if (!signs.empty() && signs.size() != crossings.size())
    throw std::invalid_argument("KnotDiagram: signs length mismatch");
  if (free_loops < 0) throw std::invalid_argument("KnotDiagram: negative free loops");
}

int KnotDiagram::edge_count() const {
  std::map<int, int> seen;
  for (const auto& x : crossings)
    for (int e : x) seen[e] = 1;
  return static_cast<int>(seen.size());
}

namespace {

std::vector<int> resolve_signs(const KnotDiagram& d) {
  if (!d.signs.empty()) return d.signs;
  if (d.crossings.empty()) return {};
  // inference: valid for single-component diagrams, edges 1..2n cyclic
  const int n = d.edge_count();
  std::vector<int> out;
  for (const auto& [a, b, c, dd] : d.crossings) {
    (void)a; (void)c;
    const bool fwd = (dd == b + 1) || (b == n && dd == 1);  // over runs b -> d
    const bool bwd = (b == dd + 1) || (dd == n && b == 1);
    if (fwd == bwd)
      throw std::invalid_argument(
          "KnotDiagram: crossing orientation ambiguous; supply explicit signs");
    out.push_back(fwd ? +1 : -1);
  }
  // single-component check under the inferred successors
  {
    std::map<int, int> succ;
    for (std::size_t k = 0; k < d.crossings.size(); ++k) {
      const auto& [a, b, c, dd] = d.crossings[k];
      succ[a] = c;
      if (out[k] > 0) succ[b] = dd;
      else succ[dd] = b;
    }
    int visited = 0, e = succ.begin()->first;
    const int start = e;
    do {
      e = succ.at(e);
      ++visited;
    } while (e != start && visited <= 2 * static_cast<int>(d.crossings.size()));
    if (visited != static_cast<int>(succ.size()))
      throw std::invalid_argument(
          "KnotDiagram: multi-component diagram; supply explicit crossing signs");
  }
  return out;
}

}  // namespace

int KnotDiagram::components() const {
  if (crossings.empty()) return free_loops;
  const auto sg = resolve_signs(*this);
  std::map<int, int> succ;
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    const auto& [a, b, c, dd] = crossings[k];
    succ[a] = c;
    if (sg[k] > 0) succ[b] = dd;
    else succ[dd] = b;
  }
  std::map<int, bool> seen;
  int comps = 0;
  for (const auto& [e, _] : succ) {
    if (seen[e]) continue;
    ++comps;
    int cur = e;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = succ.at(cur);
    }
  }
  return comps + free_loops;
}

int writhe(const KnotDiagram& d) {
  const auto sg = resolve_signs(d);
  return std::accumulate(sg.begin(), sg.end(), 0);
}

KnotDiagram braid_closure(int nstrands, const std::vector<int>& word) {
  if (nstrands < 1) throw std::invalid_argument("braid_closure: need >= 1 strand");
  std::vector<int> cur(nstrands);
  std::iota(cur.begin(), cur.end(), 0);
  int next_id = nstrands;
  struct Raw { int uin, oin, uout, oout, sgn; };
  std::vector<Raw> raw;
  for (int g : word) {
    const int i = std::abs(g) - 1;
    if (i < 0 || i + 1 >= nstrands) throw std::invalid_argument("braid_closure: bad letter");
    const int tl = cur[i], tr = cur[i + 1];
    const int bl = next_id++, br = next_id++;
    if (g > 0) raw.push_back({tr, tl, bl, br, +1});  // strand i over, heading right
    else raw.push_back({tl, tr, br, bl, -1});
    cur[i] = bl;
    cur[i + 1] = br;
  }
  // close up: identify bottom edges with the initial top edges
  std::map<int, int> alias;
  std::function<int(int)> find = [&](int x) {
    while (alias.count(x)) x = alias[x];
    return x;
  };
  for (int k = 0; k < nstrands; ++k) {
    const int a = find(cur[k]), b = find(k);
    if (a != b) alias[a] = b;
  }
  std::map<int, int> succ;
  for (auto& r : raw) {
    r.uin = find(r.uin); r.oin = find(r.oin);
    r.uout = find(r.uout); r.oout = find(r.oout);
    succ[r.uin] = r.uout;
    succ[r.oin] = r.oout;
  }
  // renumber sequentially along components, 1-based
  std::map<int, int> num;
  int n = 1;
  for (const auto& [e0, _] : succ) {
    if (num.count(e0)) continue;
    int e = e0;
    while (!num.count(e)) {
      num[e] = n++;
      e = succ.at(e);
    }
  }
  KnotDiagram d;
  for (const auto& r : raw) {
    if (r.sgn > 0)  // CCW from under-in: (uin, oin, uout, oout)
      d.crossings.push_back({num[r.uin], num[r.oin], num[r.uout], num[r.oout]});
    else            // CCW from under-in: (uin, oout, uout, oin)
      d.crossings.push_back({num[r.uin], num[r.oout], num[r.uout], num[r.oin]});
    d.signs.push_back(r.sgn);
  }
  d.free_loops = 0;
  d.validate();
  return d;
}

KnotDiagram mirror(const KnotDiagram& d) {
  const auto sg = resolve_signs(d);
  KnotDiagram m;
  m.free_loops = d.free_loops;
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    const auto& [a, b, c, dd] = d.crossings[k];
    // over/under swap; the new symbol starts at the old over-strand's
    // incoming end, counterclockwise order unchanged
    if (sg[k] > 0) m.crossings.push_back({b, c, dd, a});
    else m.crossings.push_back({dd, a, b, c});
    m.signs.push_back(-sg[k]);
  }
  m.validate();
  return m;
}

KnotDiagram disjoint_union(const KnotDiagram& a, const KnotDiagram& b) {
  KnotDiagram out = a;
  if (out.signs.empty() && !out.crossings.empty()) out.signs = resolve_signs(a);
  const int shift = [&] {
    int m = 0;
    for (const auto& x : a.crossings) m = std::max({m, x[0], x[1], x[2], x[3]});
    return m;
  }();
  const auto bsigns = b.crossings.empty() ? std::vector<int>{} : resolve_signs(b);
  for (std::size_t k = 0; k < b.crossings.size(); ++k) {
    const auto& x = b.crossings[k];
    out.crossings.push_back({x[0] + shift, x[1] + shift, x[2] + shift, x[3] + shift});
    out.signs.push_back(bsigns[k]);
  }
  out.free_loops += b.free_loops;
  out.validate();
  return out;
}

namespace {

constexpr int kMaxStateSumCrossings = 24;

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    while (true) {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      x = it->second;
    }
  }
  /// Returns true when x and y were already connected (a loop closes).
  bool unite(int x, int y) {
    const int rx = find(x), ry = find(y);
    if (rx == ry) return true;
    parent[rx] = ry;
    return false;
  }
};

LaurentPolynomial delta_pow(int loops) {
  // delta = -A^2 - A^{-2}
  const LaurentPolynomial delta =
      LaurentPolynomial::monomial(2, -1) + LaurentPolynomial::monomial(-2, -1);
  LaurentPolynomial out = LaurentPolynomial::one();
  for (int k = 0; k < loops; ++k) out = out * delta;
  return out;
}

}  // namespace

LaurentPolynomial bracket_state_sum(const KnotDiagram& d) {
  d.validate();
  const int c = static_cast<int>(d.crossings.size());
  if (c > kMaxStateSumCrossings)
    throw std::invalid_argument("bracket_state_sum: too many crossings for enumeration");
  LaurentPolynomial total;
  for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
    UnionFind uf;
    int aexp = 0;
    for (int k = 0; k < c; ++k) {
      const auto& [a, b, cc, dd] = d.crossings[k];
      if ((mask >> k) & 1u) {  // B-smoothing: a-b, c-d
        uf.unite(a, b);
        uf.unite(cc, dd);
        aexp -= 1;
      } else {  // A-smoothing: a-d, b-c
        uf.unite(a, dd);
        uf.unite(b, cc);
        aexp += 1;
      }
    }
    std::map<int, bool> roots;
    for (const auto& x : d.crossings)
      for (int e : x) roots[uf.find(e)] = true;
    const int loops = static_cast<int>(roots.size()) + d.free_loops;
    total = total + LaurentPolynomial::monomial(aexp, 1) * delta_pow(loops);
  }
  if (c == 0) total = delta_pow(d.free_loops);
  return total;
}

namespace {

LaurentPolynomial skein_rec(std::vector<std::array<int, 4>> crossings, int free) {
  if (crossings.empty()) return delta_pow(free);
  const auto [a, b, c, dd] = crossings.front();
  crossings.erase(crossings.begin());
  auto resolve = [&](std::pair<int, int> p1, std::pair<int, int> p2) {
    UnionFind uf;
    int loops = free;
    if (uf.unite(p1.first, p1.second)) ++loops;
    if (uf.unite(p2.first, p2.second)) ++loops;
    std::vector<std::array<int, 4>> rest;
    rest.reserve(crossings.size());
    for (const auto& x : crossings)
      rest.push_back({uf.find(x[0]), uf.find(x[1]), uf.find(x[2]), uf.find(x[3])});
    return std::make_pair(rest, loops);
  };
  auto [ra, la] = resolve({a, dd}, {b, c});
  auto [rb, lb] = resolve({a, b}, {c, dd});
  return LaurentPolynomial::monomial(1, 1) * skein_rec(std::move(ra), la) +
         LaurentPolynomial::monomial(-1, 1) * skein_rec(std::move(rb), lb);
}

}  // namespace

LaurentPolynomial bracket_skein(const KnotDiagram& d) {
  d.validate();
  return skein_rec(d.crossings, d.free_loops);
}

LaurentPolynomial jones_polynomial(const KnotDiagram& d, int framing,
                                   bool use_skein_oracle) {
  const int w = writhe(d);
  const LaurentPolynomial br = use_skein_oracle ? bracket_skein(d) : bracket_state_sum(d);
  // writhe correction (-A^3)^{-w}
  const LaurentPolynomial unit =
      w >= 0 ? LaurentPolynomial::monomial(-3, -1) : LaurentPolynomial::monomial(3, -1);
  LaurentPolynomial corr = LaurentPolynomial::one();
  for (int k = 0; k < std::abs(w); ++k) corr = corr * unit;
  const LaurentPolynomial f = corr * br;
  // substitution A^{2k} -> (-1)^k q^{-k/2}; quarter-key -2k
  LaurentPolynomial out;
  for (const auto& [e, cval] : f.quarter_coefficients()) {
    if (e % 2 != 0)
      throw std::logic_error("jones_polynomial: odd bracket exponent after correction");
    const int k = e / 2;
    const long long sgn = (k % 2 == 0) ? 1 : -1;
    out = out + LaurentPolynomial::monomial(-2 * k, sgn * cval);
  }
  // declared framing convention: multiply by q^{3f/4}
  return out * LaurentPolynomial::monomial(3 * framing, 1);
}

std::map<int, long long> coefficients(const LaurentPolynomial& j) {
  return j.quarter_coefficients();
}

namespace {

KnotDiagram parse_pd_impl(const std::string& text) {
  KnotDiagram d;
  std::size_t i = 0;
  auto skip_sep = [&] {  // between X(...) entries: commas/semicolons allowed
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) ||
                               text[i] == ',' || text[i] == ';'))
      ++i;
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_sep();
    if (i >= text.size()) break;
    if (text[i] == '#') {  // comment line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (text.compare(i, 6, "unknot") == 0) {
      ++d.free_loops;
      i += 6;
      continue;
    }
    if (text[i] != 'X') throw std::invalid_argument("PD parse: expected X(...)");
    ++i;
    int sign = 0;
    if (i < text.size() && (text[i] == 'p' || text[i] == 'm')) {
      sign = text[i] == 'p' ? +1 : -1;
      ++i;
    }
    skip_ws();
    if (i >= text.size() || (text[i] != '(' && text[i] != '['))
      throw std::invalid_argument("PD parse: expected '(' after X");
    const char close = text[i] == '(' ? ')' : ']';
    ++i;
    std::array<int, 4> ids{};
    for (int k = 0; k < 4; ++k) {
      skip_ws();
      std::size_t used = 0;
      ids[k] = std::stoi(text.substr(i), &used);
      i += used;
      skip_ws();
      if (k < 3) {
        if (i >= text.size() || text[i] != ',')
          throw std::invalid_argument("PD parse: expected ','");
        ++i;
      }
    }
    skip_ws();
    if (i >= text.size() || text[i] != close)
      throw std::invalid_argument("PD parse: expected closing bracket");
    ++i;
    d.crossings.push_back(ids);
    if (!d.signs.empty() || sign != 0) {
      if (d.signs.size() != d.crossings.size() - 1)
        throw std::invalid_argument("PD parse: either sign all crossings (Xp/Xm) or none");
      if (sign == 0)
        throw std::invalid_argument("PD parse: either sign all crossings (Xp/Xm) or none");
      d.signs.push_back(sign);
    }
  }
  d.validate();
  return d;
}

}  // namespace

KnotDiagram KnotDiagram::parse_pd(const std::string& text) { return parse_pd_impl(text); }

KnotDiagram KnotDiagram::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  KnotDiagram d;
  for (const auto& x : j.at("crossings"))
    d.crossings.push_back({x.at(0).get<int>(), x.at(1).get<int>(), x.at(2).get<int>(),
                           x.at(3).get<int>()});
  if (j.contains("signs")) d.signs = j.at("signs").get<std::vector<int>>();
  if (j.contains("free_loops")) d.free_loops = j.at("free_loops").get<int>();
  d.validate();
  return d;
}

Json KnotDiagram::to_json() const {
  Json j;
  Json xs = Json::array();
  for (const auto& x : crossings) xs.push_back({x[0], x[1], x[2], x[3]});
  j["crossings"] = xs;
  if (!signs.empty()) j["signs"] = signs;
  j["free_loops"] = free_loops;
  return j;
}

}  // namespace kwlab
