#include "witt/certificate.hpp"

#include <cctype>

#include "witt/error.hpp"
#include "witt/expression.hpp"

namespace witt {

namespace {

bool congruent(const GramMatrix& source, const GramMatrix& target, const Matrix& M) {
  if (M.rows() != target.dim() || M.cols() != source.dim()) return false;
  return apply_congruence(target, M) == source;
}

const Json& field_of(const Json& j, const char* key) {
  if (!j.contains(key)) throw WittError(ErrorKind::ParseError, std::string("certificate lacks \"") + key + "\"");
  return j.at(key);
}

bool claimed(const Json& cert, const char* check) {
  const Json& c = field_of(cert, "checks");
  return c.contains(check) && c.at(check).is_boolean() && c.at(check).get<bool>();
}

// Same sign of every diagonal entry.
bool same_sign_pattern(const GramMatrix& a, const GramMatrix& b) {
  if (!a.is_diagonal() || !b.is_diagonal() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a(i, i).sign() != b(i, i).sign()) return false;
  return true;
}

}  // namespace

std::string rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto digits = [&](const std::string& s, std::size_t offset, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && s[0] == '-') i = 1;
    if (i == s.size()) throw ParseError(offset + i, "expected digits in \"" + text + "\"");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError(offset + i, "bad rational \"" + text + "\"");
    return mpz_class(s);
  };
  if (slash == std::string::npos) return mpq_class(digits(text, 0, true));
  mpz_class num = digits(text.substr(0, slash), 0, true);
  mpz_class den = digits(text.substr(slash + 1), slash + 1, false);
  if (den == 0) throw ParseError(slash + 1, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

Json to_json(const Scalar& s) { return rational_string(s.value()); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const HasseProfile& h) {
  Json out = Json::object();
  for (const auto& [v, s] : h.symbols) out[v.str()] = s;
  return out;
}

Vector vector_from_json(const FieldCtx& ctx, const Json& j) {
  if (!j.is_array()) throw WittError(ErrorKind::ParseError, "expected an array of rationals");
  Vector out;
  for (const auto& e : j) {
    if (!e.is_string()) throw WittError(ErrorKind::ParseError, "rationals must be strings");
    out.push_back(ctx.from_rational(parse_rational(e.get<std::string>())));
  }
  return out;
}

Matrix matrix_from_json(const FieldCtx& ctx, const Json& j) {
  if (!j.is_array()) throw WittError(ErrorKind::ParseError, "expected a matrix");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(ctx, r));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw WittError(ErrorKind::DimensionMismatch, "ragged matrix");
  if (rows.empty()) return Matrix(ctx, 0, 0);
  return Matrix(ctx, rows);
}

Json cancel_certificate(const DiagonalForm& a, const DiagonalForm& b, const Matrix& M) {
  CancellationResult r = cancel_first_algebraic(a, b, M);
  HomotopyReport h = homotopy_check(a, b, M);
  const std::size_t n = a.dim();
  DiagonalForm a2(a.ctx, Vector(a.entries.begin() + 1, a.entries.end()));
  DiagonalForm b2(b.ctx, Vector(b.entries.begin() + 1, b.entries.end()));
  Json cert;
  cert["kind"] = "cancel";
  cert["field"] = a.ctx.tag();
  cert["a"] = to_json(a.entries);
  cert["b"] = to_json(b.entries);
  cert["M"] = to_json(M);
  cert["sign_flip"] = r.sign_flip_applied;
  cert["substitution"] = to_json(r.substitution);
  cert["N"] = to_json(r.N);
  cert["trace"] = r.witness.trace;
  cert["checks"] = {
      {"congruence", congruent(a2.gram(), b2.gram(), r.N)},
      {"det_nonzero", n > 1 && !r.N.determinant().is_zero()},
      {"homotopy_entries", h.ok()},
  };
  return cert;
}

Json diagonalize_certificate(const GramMatrix& q, const Diagonalization& d) {
  Json cert;
  cert["kind"] = "diagonalize";
  cert["field"] = q.ctx().tag();
  cert["input"] = to_json(q.matrix());
  cert["M"] = to_json(d.witness.M);
  cert["diagonal"] = to_json(d.form.entries);
  cert["trace"] = d.witness.trace;
  cert["checks"] = {{"congruence", d.witness.verify() && d.witness.M.is_invertible()}};
  return cert;
}

Json decompose_certificate(const GramMatrix& q, const WittDecomposition& d) {
  Json cert;
  cert["kind"] = "decompose";
  cert["field"] = q.ctx().tag();
  cert["input"] = to_json(q.matrix());
  cert["witt_index"] = d.witt_index;
  cert["anisotropic"] = to_json(d.anisotropic_part.entries);
  cert["null_dim"] = d.null_dim;
  cert["square_class_level"] = d.square_class_level;
  cert["M"] = to_json(d.witness.M);
  cert["source"] = to_json(d.witness.source.matrix());
  cert["trace"] = d.witness.trace;
  cert["checks"] = {
      {"congruence", d.witness.verify() && d.witness.M.is_invertible()},
      {"shape", verify_decomposition(q, d)},
      {"anisotropic", d.anisotropic_part.dim() < 2 || !is_isotropic(d.anisotropic_part.gram())},
  };
  return cert;
}

bool Verdict::ok() const {
  for (const auto& [name, pass] : checks)
    if (!pass) return false;
  return !checks.empty();
}

std::string Verdict::str() const {
  std::string s;
  for (const auto& [name, pass] : checks) s += name + ": " + (pass ? "OK" : "FAILED") + "\n";
  return s + "verdict: " + (ok() ? "VALID" : "INVALID");
}

Verdict verify_certificate(const Json& cert) {
  if (!cert.is_object()) throw WittError(ErrorKind::ParseError, "certificate must be a JSON object");
  const std::string kind = field_of(cert, "kind").get<std::string>();
  const FieldCtx ctx = parse_field(field_of(cert, "field").get<std::string>());
  Verdict v;
  auto record = [&](const std::string& name, bool recomputed, const char* claim = nullptr) {
    v.checks.emplace_back(name, recomputed);
    if (claim) v.checks.emplace_back("claimed " + std::string(claim), claimed(cert, claim) == recomputed);
  };

  if (kind == "cancel") {
    DiagonalForm a(ctx, vector_from_json(ctx, field_of(cert, "a")));
    DiagonalForm b(ctx, vector_from_json(ctx, field_of(cert, "b")));
    Matrix M = matrix_from_json(ctx, field_of(cert, "M"));
    Matrix N = matrix_from_json(ctx, field_of(cert, "N"));
    validate_cancellation_input(a, b, M);
    record("input isometry", true);
    const std::size_t n = a.dim();
    DiagonalForm a2(ctx, Vector(a.entries.begin() + 1, a.entries.end()));
    DiagonalForm b2(ctx, Vector(b.entries.begin() + 1, b.entries.end()));
    const bool shape = N.rows() == n - 1 && N.cols() == n - 1;
    record("congruence", shape && congruent(a2.gram(), b2.gram(), N), "congruence");
    record("det_nonzero", shape && !N.determinant().is_zero(), "det_nonzero");
    record("homotopy_entries", homotopy_check(a, b, M).ok(), "homotopy_entries");
    CancellationResult alg = cancel_first_algebraic(a, b, M);
    CancellationResult geo = cancel_first_geometric(a, b, M);
    record("sign_flip", field_of(cert, "sign_flip").get<bool>() == alg.sign_flip_applied);
    record("substitution", vector_from_json(ctx, field_of(cert, "substitution")) == alg.substitution);
    record("N reproduced", shape && N == alg.N);
    record("methods agree", alg.N == geo.N);
    return v;
  }

  if (kind == "diagonalize") {
    GramMatrix q(matrix_from_json(ctx, field_of(cert, "input")));
    Matrix M = matrix_from_json(ctx, field_of(cert, "M"));
    DiagonalForm d(ctx, vector_from_json(ctx, field_of(cert, "diagonal")));
    record("congruence", congruent(d.gram(), q, M) && M.is_invertible(), "congruence");
    return v;
  }

  if (kind == "decompose") {
    GramMatrix q(matrix_from_json(ctx, field_of(cert, "input")));
    Matrix M = matrix_from_json(ctx, field_of(cert, "M"));
    GramMatrix source(matrix_from_json(ctx, field_of(cert, "source")));
    const std::size_t k = field_of(cert, "witt_index").get<std::size_t>();
    const std::size_t null_dim = field_of(cert, "null_dim").get<std::size_t>();
    DiagonalForm aniso(ctx, vector_from_json(ctx, field_of(cert, "anisotropic")));
    record("congruence", congruent(source, q, M) && M.is_invertible(), "congruence");
    GramMatrix expected = hyperbolic_sum(ctx, k, aniso, null_dim);
    const bool shape = field_of(cert, "square_class_level").get<bool>() ? same_sign_pattern(source, expected)
                                                                        : source == expected;
    record("shape", shape, "shape");
    record("anisotropic", aniso.dim() < 2 || !is_isotropic(aniso.gram()), "anisotropic");
    return v;
  }

  throw WittError(ErrorKind::ParseError, "unknown certificate kind \"" + kind + "\"");
}

Json ring_table_json(const WittRingTable& t) {
  Json out;
  out["field"] = t.ctx.tag();
  if (t.truncation) out["truncation"] = *t.truncation;
  Json elements = Json::array();
  for (const auto& x : t.elements) elements.push_back(to_expression(x.representative.gram()));
  out["elements"] = elements;
  out["add"] = t.add;
  out["mul"] = t.mul;
  return out;
}

Json filtration_json(const IdealFiltration& f) {
  Json out;
  out["field"] = f.ctx.tag();
  Json levels = Json::array();
  for (const auto& l : f.levels) {
    Json j;
    j["n"] = l.n;
    if (f.ring) {
      Json els = Json::array();
      for (std::size_t i : l.elements) els.push_back(to_expression(f.ring->elements[i].representative.gram()));
      j["elements"] = els;
    } else {
      j["signature_step"] = l.signature_step.get_str();
    }
    j["quotient_dim"] = l.quotient_dim;
    levels.push_back(j);
  }
  out["levels"] = levels;
  return out;
}

Json triangle_json(const TriangleReport& r) {
  Json out;
  out["field"] = r.ctx.tag();
  out["convention"] = convention_name(r.convention);
  Json degrees = Json::array();
  for (const auto& d : r.degrees) {
    degrees.push_back({{"n", d.n},
                       {"dim_K", d.dim_K},
                       {"dim_gradedW", d.dim_gradedW},
                       {"dim_H", d.dim_H},
                       {"nu_bijective", d.nu_bijective},
                       {"commutes", d.commutes},
                       {"steinberg_vanish", d.steinberg_vanish},
                       {"multilinear", d.multilinear}});
  }
  out["degrees"] = degrees;
  out["isomorphic"] = r.ok();
  return out;
}

}  // namespace witt
