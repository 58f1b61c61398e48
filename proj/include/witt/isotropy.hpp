#pragma once

#include <cstddef>
#include <vector>

#include "witt/form.hpp"
#include "witt/number_theory.hpp"

namespace witt {

// Height bound for the rational isotropic-vector search.
inline constexpr long kDefaultSearchBudget = 10000;

// Exact decision; DegenerateForm on a degenerate q. Over Q this is the
// Hasse-Minkowski criterion evaluated with Hilbert symbols.
bool is_isotropic(const GramMatrix& q);

// Local isotropy of a non-degenerate diagonal rational form at one place.
bool is_locally_isotropic(const std::vector<mpq_class>& entries, const Place& v);

// Nonzero v with q(v) = 0. F_p: exhaustive search; Q: integer vectors by
// increasing height up to `budget`. Errors: NotIsotropic,
// UnsupportedFieldForVectorSearch (R_Q), SearchBudgetExceeded.
Vector find_isotropic_vector(const GramMatrix& q, long budget = kDefaultSearchBudget);

struct HyperbolicSplit {
  GramMatrix complement;
  // source = <1,-1> (+) complement, target = q.
  IsometryWitness witness;
};

HyperbolicSplit split_hyperbolic(const GramMatrix& q, const Vector& v);

struct WittDecomposition {
  std::size_t witt_index = 0;
  DiagonalForm anisotropic_part;
  std::size_t null_dim = 0;
  // target = input. source = <1,-1>^k (+) anisotropic (+) 0^null_dim, except
  // over R_Q where source is a rational diagonal form with the same sign
  // pattern (square_class_level = true): the +-1 normalisation needs square
  // roots that are not rational.
  IsometryWitness witness;
  bool square_class_level = false;
};

WittDecomposition witt_decompose(const GramMatrix& q, long budget = kDefaultSearchBudget);

// Re-checks the witness congruence and the claimed shape of its source.
bool verify_decomposition(const GramMatrix& q, const WittDecomposition& d);

// <1,-1>^k (+) rest (+) 0^null as a Gram matrix.
GramMatrix hyperbolic_sum(const FieldCtx& ctx, std::size_t k, const DiagonalForm& rest, std::size_t null_dim);

}  // namespace witt
