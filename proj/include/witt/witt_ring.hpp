#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "witt/form.hpp"
#include "witt/isotropy.hpp"
#include "witt/number_theory.hpp"

namespace witt {

// Similarity class, stored by a canonical anisotropic representative:
//   F_p  - lexicographically least diagonal form with the class's (dim, det)
//   R_Q  - <1,...,1,-1,...,-1>
//   Q    - square-free integers sorted by (sign, |a|); unique only up to the
//          equivalence decided by is_similar, which operator== uses.
struct WittClass {
  FieldCtx ctx = FieldCtx::rationals();
  DiagonalForm representative;

  std::size_t dim() const { return representative.dim(); }
  bool is_zero() const { return representative.dim() == 0; }
  std::string str() const { return representative.str(); }
};

bool operator==(const WittClass& x, const WittClass& y);
inline bool operator!=(const WittClass& x, const WittClass& y) { return !(x == y); }

WittClass witt_class(const GramMatrix& q, long budget = kDefaultSearchBudget);
WittClass witt_class(const DiagonalForm& q, long budget = kDefaultSearchBudget);
// Class of a diagonal form from its invariants (F_p: dim and determinant,
// R_Q: signature); falls back to witt_class over Q.
WittClass class_of_diagonal(const DiagonalForm& q);

WittClass zero_class(const FieldCtx& ctx);
WittClass one_class(const FieldCtx& ctx);
WittClass wadd(const WittClass& x, const WittClass& y);
WittClass wneg(const WittClass& x);
WittClass wmul(const WittClass& x, const WittClass& y);

bool is_similar(const GramMatrix& q1, const GramMatrix& q2);

// Signature (#positive - #negative) of the non-degenerate part; Q and R_Q only.
long signature(const GramMatrix& q);

struct WittRingTable {
  FieldCtx ctx = FieldCtx::rationals();
  std::optional<std::size_t> truncation;
  std::vector<WittClass> elements;
  // -1 marks a result outside a truncated ring.
  std::vector<std::vector<long>> add;
  std::vector<std::vector<long>> mul;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> index_of(const WittClass& x) const;
  std::size_t additive_order(std::size_t i) const;
};

// F_p: the full 4-element ring. R_Q: classes of dimension <= truncation.
// InfiniteRing for Q, or for R_Q without a truncation. Memoized per field.
std::shared_ptr<const WittRingTable> enumerate_witt_ring(const FieldCtx& ctx,
                                                         std::optional<std::size_t> truncation = std::nullopt);

struct PfisterForm {
  Vector slots;
  DiagonalForm expanded;
};

// <1, a_1> (x) ... (x) <1, a_n>; ZeroScalar on a zero slot.
PfisterForm pfister(const FieldCtx& ctx, const Vector& slots);

struct IdealLevel {
  std::size_t n = 0;
  // F_p: indices into the ring table.
  std::vector<std::size_t> elements;
  // R_Q: I^n corresponds to signatures divisible by this step.
  mpz_class signature_step = 0;
  // dim over F_2 of I^n / I^(n+1).
  std::size_t quotient_dim = 0;
};

struct IdealFiltration {
  FieldCtx ctx = FieldCtx::rationals();
  std::shared_ptr<const WittRingTable> ring;  // F_p only
  std::vector<IdealLevel> levels;             // n = 0 .. n_max
};

IdealFiltration ideal_filtration(const FieldCtx& ctx, std::size_t n_max);

// Membership in I^n, decided by dimension parity and discriminant for n <= 2,
// by the filtration for F_p and by the signature for R_Q beyond that.
bool in_ideal_power(const WittClass& x, std::size_t n);

struct HasseProfile {
  std::map<Place, int> symbols;

  int at(const Place& v) const;
  std::set<Place> negative_places() const;
  std::string str() const;
  friend bool operator==(const HasseProfile& a, const HasseProfile& b) {
    return a.negative_places() == b.negative_places();
  }
};

// prod_{i<j} (a_i, a_j)_v of this particular diagonal representative.
HasseProfile hasse_profile(const DiagonalForm& q);
// The Clifford (Witt) invariant: the Hasse profile corrected by the
// dimension-dependent factor, which makes it constant on Witt classes.
HasseProfile clifford_profile(const DiagonalForm& q);

int e0(const WittClass& x);
// NotInIdealPower unless x is in I.
SquareClass e1(const WittClass& x);
// NotInIdealPower unless x is in I^2. Class-level Clifford profile; trivial over F_p.
HasseProfile e2(const WittClass& x);

}  // namespace witt
