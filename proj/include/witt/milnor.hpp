#pragma once

// Mod-2 Milnor K-theory, the graded Witt ring and mod-2 Galois cohomology of
// the finite-square-class fields, together with the maps nu: K_n/2 -> I^n/I^(n+1)
// and e: I^n/I^(n+1) -> H^n that make the three agree.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "witt/witt_ring.hpp"

namespace witt {

using F2Vec = std::vector<std::uint8_t>;

// Rank over F_2 by Gaussian elimination.
std::size_t f2_rank(std::vector<F2Vec> rows);

struct F2Space {
  std::size_t ambient_dim = 0;
  std::size_t relation_rank = 0;
  std::size_t dimension = 0;
  // Names of the ambient basis words, e.g. "{-1}(x){-1}".
  std::vector<std::string> basis;
  std::vector<F2Vec> relations;
};

struct SteinbergPair {
  Scalar a;
  Scalar b;
};

// Representatives of every (square class of a, square class of b) realised by
// some a + b = 1 with a, b nonzero. F_p and R_Q only.
std::vector<SteinbergPair> steinberg_pairs(const FieldCtx& ctx);

// Tensor power of the square-class group modulo Steinberg relations placed at
// adjacent positions.
F2Space milnor_k_mod2(const FieldCtx& ctx, std::size_t n);
// Rank of the two-sided ideal generated by the degree-2 Steinberg vectors,
// built recursively as T (x) J_(n-1) + J_(n-1) (x) T. Must agree with the
// relation rank of milnor_k_mod2.
std::size_t ideal_closure_rank(const FieldCtx& ctx, std::size_t n);

F2Space graded_witt_quotient(const FieldCtx& ctx, std::size_t n);

// dim over F_2 of H^n(F, Z/2).
std::size_t galois_cohomology_dim(const FieldCtx& ctx, std::size_t n);

enum class PfisterConvention {
  // {a_1..a_n} -> <<-a_1, ..., -a_n>> = (x)<1, -a_i>
  Standard,
  // {a_1..a_n} -> (x)<1, a_i>
  Literal,
};

std::string convention_name(PfisterConvention c);

// Pfister class attached to a symbol under the chosen convention.
WittClass nu_symbol(const FieldCtx& ctx, const Vector& symbol, PfisterConvention c);

// Coordinates of x in I^n / I^(n+1), or NotInIdealPower.
F2Vec graded_coordinates(const WittClass& x, std::size_t n);
// e on the graded piece, in coordinates of H^n.
F2Vec e_map(const WittClass& x, std::size_t n);
// eta({a_1..a_n}) in coordinates of H^n.
F2Vec eta_symbol(const FieldCtx& ctx, const Vector& symbol);

struct TriangleDegree {
  std::size_t n = 0;
  std::size_t dim_K = 0;
  std::size_t dim_gradedW = 0;
  std::size_t dim_H = 0;
  bool relation_ranks_agree = false;
  bool lands_in_ideal = false;
  bool multilinear = false;
  bool steinberg_vanish = false;
  bool nu_bijective = false;
  bool commutes = false;

  bool ok() const {
    return relation_ranks_agree && lands_in_ideal && multilinear && steinberg_vanish && nu_bijective && commutes;
  }
};

struct TriangleReport {
  FieldCtx ctx = FieldCtx::real();
  PfisterConvention convention = PfisterConvention::Standard;
  std::vector<TriangleDegree> degrees;

  bool ok() const;
};

TriangleReport triangle_check(const FieldCtx& ctx, std::size_t n_max,
                              PfisterConvention convention = PfisterConvention::Standard);

}  // namespace witt
