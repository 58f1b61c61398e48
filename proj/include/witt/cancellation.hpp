#pragma once

// Constructive Witt cancellation: given an isometry M between <a_1..a_n> and
// <b_1..b_n> with a_1 = b_1, produce an isometry N between <a_2..a_n> and
// <b_2..b_n>, either by substituting for x_1 or by a hyperplane reflection.

#include <string>
#include <vector>

#include "witt/form.hpp"

namespace witt {

// Non-isotropic vector; the reflection tau_u is only defined when q(u) != 0.
struct ReflectionVector {
  Vector u;
  Scalar q_u;

  // Throws IsotropicReflectionVector when q(u) = 0.
  static ReflectionVector make(const GramMatrix& q, const Vector& u);
};

// Matrix of z -> z - (2 B(z,u) / q(u)) u.
Matrix reflection_matrix(const GramMatrix& q, const ReflectionVector& u);

struct Transport {
  Matrix T;
  bool used_sum_branch = false;
};

// Isometry T of q with T x = y, given q(x) = q(y) != 0: tau_{x-y} when
// q(x-y) != 0, otherwise -tau_{x+y}. x == y yields the identity.
Transport transporter(const GramMatrix& q, const Vector& x, const Vector& y);

struct CancellationResult {
  Matrix N;
  // x_1 = sum_{k>=2} substitution[k-2] * x_k (algebraic path only).
  Vector substitution;
  bool sign_flip_applied = false;
  bool used_sum_branch = false;
  // M after the optional negation of its first row.
  Matrix M_used;
  // source = <a_2..a_n>, target = <b_2..b_n>, M = N.
  IsometryWitness witness;
};

CancellationResult cancel_first_algebraic(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M);
CancellationResult cancel_first_geometric(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M);

// Entry (i-2, k-2) of each matrix concerns the coefficient of f_i (resp. x_k
// in w_i) for i, k >= 2, matching the layout of N.
struct HomotopyReport {
  bool sign_flip_applied = false;
  Matrix c_reflection;    // read off tau_u(e_k) by applying the reflection
  Matrix c_formula;       // m_ik + m_1k m_i1 / (1 - m_11)
  Matrix d_substitution;  // coefficient of x_k in w_i after x_1 = y / (1 - m_11)
  Scalar q_u;             // q(e_1 - f_1)
  Scalar expected_q_u;    // 2 b_1 (1 - m_11)
  bool entries_equal = false;
  bool q_u_matches = false;

  bool ok() const { return entries_equal && q_u_matches; }
};

HomotopyReport homotopy_check(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M);

// Throws PreconditionViolated unless a, b are non-degenerate of equal
// dimension n > 1 over one field, a_1 = b_1 and M^t diag(b) M = diag(a).
void validate_cancellation_input(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M);

}  // namespace witt
