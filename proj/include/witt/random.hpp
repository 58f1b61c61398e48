#pragma once

// Seeded generators for forms, matrices and cancellation instances.

#include <cstdint>
#include <random>

#include "witt/form.hpp"

namespace witt {

using Rng = std::mt19937_64;

// Nonzero scalar: a small signed rational over Q and R_Q, a residue over F_p.
Scalar random_nonzero(const FieldCtx& ctx, Rng& rng);
Scalar random_scalar(const FieldCtx& ctx, Rng& rng);
DiagonalForm random_diagonal(const FieldCtx& ctx, std::size_t n, Rng& rng);
GramMatrix random_symmetric(const FieldCtx& ctx, std::size_t n, Rng& rng);
Matrix random_invertible(const FieldCtx& ctx, std::size_t n, Rng& rng);

// An isometry of diag(b) built from 1..6 random reflections.
Matrix random_orthogonal(const DiagonalForm& b, Rng& rng, bool fix_first = false);

struct CancellationInstance {
  DiagonalForm a;
  DiagonalForm b;
  Matrix M;
};

// M = R P S with R orthogonal for diag(b), P permuting positions 2..n and S
// diagonal with S_11 = 1, so that a = diag(M^t B M) has a_1 = b_1. About one
// instance in five has m_11 = 1. With keep_form, P = 1 and S = diag(+-1), so a = b.
CancellationInstance random_cancellation_instance(const DiagonalForm& b, Rng& rng, bool keep_form = false);

}  // namespace witt
