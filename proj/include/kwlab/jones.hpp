#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "kwlab/report.hpp"

namespace kwlab {

/// Laurent polynomial in q with exact integer coefficients. Exponents are
/// stored in quarter units of q: zero-framed invariants land on half-integers
/// (the paper's normalization); the declared framing shift moves by 3/4 per
/// unit of framing, which is why quarters are the common denominator.
class LaurentPolynomial {
 public:
  static LaurentPolynomial zero() { return {}; }
  static LaurentPolynomial one() { return monomial(0, 1); }
  static LaurentPolynomial monomial(int quarter_exp, long long coeff);

  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  bool operator==(const LaurentPolynomial& o) const { return c_ == o.c_; }

  /// q -> 1/q (what the Jones polynomial does under mirror image).
  LaurentPolynomial bar() const;

  bool is_zero() const { return c_.empty(); }
  const std::map<int, long long>& quarter_coefficients() const { return c_; }
  long long coefficient_at_quarter(int quarter_exp) const;

  std::string pretty() const;  // exponents printed as integers/halves/quarters
  Json to_json() const;

 private:
  std::map<int, long long> c_;  // quarter-exponent -> coefficient, no zeros
  void trim();
};

/// PD-code knot/link diagram. Crossings are (a,b,c,d) counterclockwise from
/// the incoming under-strand; edges are numbered consecutively along each
/// oriented component. signs holds +-1 per crossing; when absent it is
/// inferred for single-component diagrams (over-strand runs b -> d iff
/// d = b+1 cyclically, giving a positive crossing) and required otherwise.
struct KnotDiagram {
  std::vector<std::array<int, 4>> crossings;
  std::vector<int> signs;  // optional; same length as crossings when present
  int free_loops = 0;      // crossingless circles

  void validate() const;  // every edge id appears exactly twice
  int edge_count() const;
  int components() const;  // oriented components + free loops

  static KnotDiagram parse_pd(const std::string& text);  // X(a,b,c,d) list
  static KnotDiagram from_json_text(const std::string& text);
  Json to_json() const;
};

/// Closure of a braid word (+-k = generator sigma_k^{+-1}) on n strands,
/// with edges renumbered along components and explicit signs. The test
/// corpus (trefoils, Hopf links, figure-eight) is generated this way.
KnotDiagram braid_closure(int nstrands, const std::vector<int>& word);

KnotDiagram mirror(const KnotDiagram& d);
KnotDiagram disjoint_union(const KnotDiagram& a, const KnotDiagram& b);

int writhe(const KnotDiagram& d);

/// Kauffman bracket by full state-sum enumeration: sum over the 2^c
/// smoothings with loop weight delta = -A^2 - A^{-2} per loop (the empty
/// diagram has bracket 1, the crossingless unknot has bracket delta).
/// Returned in the auxiliary variable A, quarter-keys = A-exponent.
LaurentPolynomial bracket_state_sum(const KnotDiagram& d);

/// Independent oracle: recursive crossing resolution with diagram rewriting
/// and explicit loop closure tracking. Agrees exactly with the state sum.
LaurentPolynomial bracket_skein(const KnotDiagram& d);

/// Writhe-corrected bracket under the frozen substitution A^2 -> -q^{-1/2},
/// normalized so J(empty) = 1 and J(unknot, framing 0) = q^{1/2} + q^{-1/2}.
/// Nonzero framing multiplies by q^{3f/4} (declared convention: the Kauffman
/// kink unit with its phase dropped).
LaurentPolynomial jones_polynomial(const KnotDiagram& d, int framing = 0,
                                   bool use_skein_oracle = false);

/// Exponent -> coefficient map of the generating function, keyed by quarter
/// exponents (divide by 4 for the q power).
std::map<int, long long> coefficients(const LaurentPolynomial& j);

}  // namespace kwlab
