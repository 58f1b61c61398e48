#pragma once

// JSON serialization of results and independent re-verification of the
// certificates. Rationals are always written as "n/d" strings.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "witt/cancellation.hpp"
#include "witt/isotropy.hpp"
#include "witt/milnor.hpp"
#include "witt/witt_ring.hpp"

namespace witt {

using Json = nlohmann::ordered_json;

std::string rational_string(const mpq_class& q);
// Accepts "n" or "n/d"; ParseError otherwise.
mpq_class parse_rational(const std::string& text);

Json to_json(const Scalar& s);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const HasseProfile& h);

Vector vector_from_json(const FieldCtx& ctx, const Json& j);
Matrix matrix_from_json(const FieldCtx& ctx, const Json& j);

// {kind: "cancel", field, a, b, M, sign_flip, substitution, N,
//  checks: {congruence, det_nonzero, homotopy_entries}}
Json cancel_certificate(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M);
// {kind: "diagonalize", field, input, M, diagonal, trace, checks: {congruence}}
Json diagonalize_certificate(const GramMatrix& q, const Diagonalization& d);
// {kind: "decompose", field, input, witt_index, anisotropic, null_dim,
//  square_class_level, M, source, trace, checks: {congruence, shape, anisotropic}}
Json decompose_certificate(const GramMatrix& q, const WittDecomposition& d);

struct Verdict {
  std::vector<std::pair<std::string, bool>> checks;

  bool ok() const;
  std::string str() const;
};

// Recomputes every claim from the raw data in the certificate. A certificate
// whose recorded checks disagree with the recomputation fails.
Verdict verify_certificate(const Json& cert);

Json ring_table_json(const WittRingTable& t);
Json filtration_json(const IdealFiltration& f);
Json triangle_json(const TriangleReport& r);

}  // namespace witt
