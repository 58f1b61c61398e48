#include "witt/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "witt/certificate.hpp"
#include "witt/error.hpp"
#include "witt/expression.hpp"
#include "witt/random.hpp"

namespace witt {

namespace {

struct Options {
  std::string form;
  std::string form_a;
  std::string form_b;
  std::string matrix;
  std::string vector;
  std::string field = "Q";
  std::string json_path;
  std::string convention = "standard";
  std::uint64_t seed = 0;
  long budget = kDefaultSearchBudget;
  std::size_t max_degree = 3;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

const std::string& primary_form(const Options& o) {
  if (!o.form.empty()) return o.form;
  if (!o.form_a.empty()) return o.form_a;
  throw UsageError("a form is required (positional or --form-a)");
}

// Parses a bracketed literal with the expression grammar, reporting positions
// relative to the user's text.
std::vector<std::vector<mpq_class>> parse_rows(const std::string& text, const std::string& prefix,
                                               const std::string& suffix) {
  try {
    FormExpr e = parse_form(prefix + text + suffix);
    return e.root.rows;
  } catch (const ParseError& pe) {
    const std::size_t pos = pe.position() >= prefix.size() ? pe.position() - prefix.size() : 0;
    throw ParseError(std::min(pos, text.size()), "in literal \"" + text + "\"");
  }
}

Matrix parse_matrix(const std::string& text, const FieldCtx& ctx) {
  auto rows = parse_rows(text, "mat", "");
  std::vector<Vector> out;
  for (const auto& r : rows) {
    Vector v;
    for (const auto& a : r) v.push_back(ctx.from_rational(a));
    if (!out.empty() && v.size() != out.front().size()) throw WittError(ErrorKind::DimensionMismatch, "ragged matrix");
    out.push_back(v);
  }
  return Matrix(ctx, out);
}

Vector parse_vector(const std::string& text, const FieldCtx& ctx) {
  auto rows = parse_rows(text, "mat[", "]");
  Vector v;
  for (const auto& a : rows.front()) v.push_back(ctx.from_rational(a));
  return v;
}

DiagonalForm as_diagonal(const GramMatrix& q, const char* which) {
  if (!q.is_diagonal()) throw WittError(ErrorKind::PreconditionViolated, std::string(which) + " must be diagonal");
  return DiagonalForm(q.ctx(), q.diagonal_entries());
}

void write_json(const Options& o, const Json& j) {
  if (o.json_path.empty()) return;
  std::ofstream f(o.json_path);
  if (!f) throw UsageError("cannot write " + o.json_path);
  f << j.dump(2) << "\n";
}

void print_trace(std::ostream& out, const std::vector<std::string>& trace) {
  for (const auto& t : trace) out << "  " << t << "\n";
}

PfisterConvention parse_convention(const std::string& s) {
  if (s == "standard") return PfisterConvention::Standard;
  if (s == "literal") return PfisterConvention::Literal;
  throw UsageError("--convention must be standard or literal");
}

int cmd_diagonalize(const Options& o, std::ostream& out) {
  GramMatrix q = evaluate_form(primary_form(o));
  Diagonalization d = diagonalize(q);
  Json cert = diagonalize_certificate(q, d);
  out << "diagonal: " << d.form.str() << "\n";
  out << "M = " << d.witness.M.str() << "\n";
  print_trace(out, d.witness.trace);
  out << "certificate " << (verify_certificate(cert).ok() ? "OK" : "FAILED") << "\n";
  write_json(o, cert);
  return 0;
}

int cmd_cancel(const Options& o, std::ostream& out) {
  if (o.form_b.empty()) throw UsageError("cancel needs --form-b");
  DiagonalForm b = as_diagonal(evaluate_form(o.form_b), "--form-b");
  std::optional<DiagonalForm> a;
  if (!o.form_a.empty()) a = as_diagonal(evaluate_form(o.form_a), "--form-a");
  Matrix M(b.ctx, 0, 0);
  if (!o.matrix.empty()) {
    if (!a) throw UsageError("cancel with --matrix needs --form-a");
    M = parse_matrix(o.matrix, b.ctx);
  } else {
    // Seeded random isometry; when --form-a is given it must equal --form-b.
    if (a && !(*a == b)) throw UsageError("without --matrix, --form-a must be omitted or equal --form-b");
    Rng rng(o.seed);
    CancellationInstance inst = random_cancellation_instance(b, rng, a.has_value());
    a = inst.a;
    M = inst.M;
    out << "random isometry (seed " << o.seed << "): M = " << M.str() << "\n";
    out << "a = " << a->str() << "\n";
  }
  CancellationResult alg = cancel_first_algebraic(*a, b, M);
  CancellationResult geo = cancel_first_geometric(*a, b, M);
  HomotopyReport h = homotopy_check(*a, b, M);
  Json cert = cancel_certificate(*a, b, M);
  out << "N = " << alg.N.str() << "\n";
  out << "substitution: x1 = " << vector_str(alg.substitution) << " . (x2..xn)\n";
  out << "sign flip: " << yes_no(alg.sign_flip_applied) << "\n";
  print_trace(out, alg.witness.trace);
  out << "geometric N = " << geo.N.str() << (geo.used_sum_branch ? " (via -tau_{x+y})" : "") << "\n";
  out << (alg.N == geo.N ? "both methods agree" : "methods DISAGREE") << "\n";
  out << "homotopy check: " << (h.ok() ? "OK" : "FAILED") << "\n";
  out << "certificate " << (verify_certificate(cert).ok() ? "OK" : "FAILED") << "\n";
  write_json(o, cert);
  return 0;
}

int cmd_reflect(const Options& o, std::ostream& out) {
  if (o.vector.empty()) throw UsageError("reflect needs --vector");
  GramMatrix q = evaluate_form(primary_form(o));
  Vector u = parse_vector(o.vector, q.ctx());
  ReflectionVector r = ReflectionVector::make(q, u);
  Matrix t = reflection_matrix(q, r);
  const bool isometry = apply_congruence(q, t) == q;
  out << "q(u) = " << r.q_u.str() << "\n";
  out << "tau_u = " << t.str() << "\n";
  out << "isometry: " << yes_no(isometry) << "\n";
  Json j;
  j["field"] = q.ctx().tag();
  j["form"] = to_json(q.matrix());
  j["u"] = to_json(u);
  j["q_u"] = to_json(r.q_u);
  j["tau"] = to_json(t);
  j["checks"] = {{"isometry", isometry}};
  write_json(o, j);
  return 0;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  GramMatrix q = evaluate_form(primary_form(o));
  WittDecomposition d = witt_decompose(q, o.budget);
  Json cert = decompose_certificate(q, d);
  const bool ok = verify_certificate(cert).ok();
  out << "k=" << d.witt_index << ", anisotropic=" << d.anisotropic_part.str();
  if (d.null_dim) out << ", radical=" << d.null_dim;
  out << ", certificate " << (ok ? "OK" : "FAILED") << "\n";
  print_trace(out, d.witness.trace);
  write_json(o, cert);
  return 0;
}

Json class_json(const WittClass& x) {
  return {{"field", x.ctx.tag()}, {"representative", to_expression(x.representative.gram())}, {"dim", x.dim()}};
}

int cmd_class(const Options& o, std::ostream& out) {
  WittClass x = witt_class(evaluate_form(primary_form(o)), o.budget);
  out << "class: " << x.str() << "\n";
  write_json(o, class_json(x));
  return 0;
}

int cmd_binary(const Options& o, std::ostream& out, bool multiply) {
  if (o.form_a.empty() || o.form_b.empty()) throw UsageError("needs --form-a and --form-b");
  GramMatrix qa = evaluate_form(o.form_a);
  GramMatrix qb = evaluate_form(o.form_b);
  require_same_field(qa.ctx(), qb.ctx());
  GramMatrix combined = multiply ? tensor_product(qa, qb) : direct_sum(qa, qb);
  WittClass x = witt_class(combined, o.budget);
  out << (multiply ? "product: " : "sum: ") << x.str() << "\n";
  write_json(o, class_json(x));
  return 0;
}

int cmd_similar(const Options& o, std::ostream& out) {
  if (o.form_a.empty() || o.form_b.empty()) throw UsageError("similar needs --form-a and --form-b");
  const bool s = is_similar(evaluate_form(o.form_a), evaluate_form(o.form_b));
  out << "similar: " << yes_no(s) << "\n";
  write_json(o, {{"similar", s}});
  return 0;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  GramMatrix q = evaluate_form(primary_form(o));
  const FieldCtx& ctx = q.ctx();
  Diagonalization d = diagonalize(q);
  WittClass x = witt_class(q, o.budget);
  Json j;
  j["field"] = ctx.tag();
  j["class"] = to_expression(x.representative.gram());
  out << "class: " << x.str() << "\n";
  out << "e0 = " << e0(x) << "\n";
  j["e0"] = e0(x);
  if (in_ideal_power(x, 1)) {
    SquareClass c = e1(x);
    out << "e1 = " << c.representative.str() << "\n";
    j["e1"] = to_json(c.representative);
  } else {
    out << "e1: not in I\n";
  }
  if (in_ideal_power(x, 2)) {
    HasseProfile c = e2(x);
    out << "e2 = " << c.str() << "\n";
    j["e2"] = to_json(c);
  } else {
    out << "e2: not in I^2\n";
  }
  if (d.form.is_nondegenerate()) {
    HasseProfile h = hasse_profile(d.form);
    out << "hasse profile of " << d.form.str() << " = " << h.str() << "\n";
    j["hasse_profile"] = to_json(h);
  }
  if (!ctx.is_prime_field()) {
    out << "signature = " << signature(q) << "\n";
    j["signature"] = signature(q);
  }
  write_json(o, j);
  return 0;
}

int cmd_ring_table(const Options& o, std::ostream& out) {
  FieldCtx ctx = parse_field(o.field);
  auto t = enumerate_witt_ring(ctx, ctx.is_real() ? std::optional<std::size_t>(o.max_degree) : std::nullopt);
  out << "W(" << ctx.tag() << ")" << (t->truncation ? " truncated at dimension " + std::to_string(*t->truncation) : "")
      << ": " << t->size() << " elements\n";
  for (std::size_t i = 0; i < t->size(); ++i) {
    out << "  [" << i << "] " << t->elements[i].str();
    if (const std::size_t ord = t->additive_order(i)) out << "  additive order " << ord;
    out << "\n";
  }
  auto dump = [&](const char* name, const std::vector<std::vector<long>>& tab) {
    out << name << ":\n";
    for (const auto& row : tab) {
      out << " ";
      for (long v : row) out << " " << (v < 0 ? std::string("-") : std::to_string(v));
      out << "\n";
    }
  };
  dump("add", t->add);
  dump("mul", t->mul);
  write_json(o, ring_table_json(*t));
  return 0;
}

int cmd_ideal(const Options& o, std::ostream& out) {
  FieldCtx ctx = parse_field(o.field);
  IdealFiltration f = ideal_filtration(ctx, o.max_degree);
  for (const auto& l : f.levels) {
    out << "I^" << l.n << ": ";
    if (f.ring) {
      out << l.elements.size() << " elements {";
      for (std::size_t i = 0; i < l.elements.size(); ++i) out << (i ? ", " : "") << f.ring->elements[l.elements[i]].str();
      out << "}";
    } else {
      out << "signatures in " << l.signature_step.get_str() << "Z";
    }
    out << ", dim I^" << l.n << "/I^" << l.n + 1 << " = " << l.quotient_dim << "\n";
  }
  write_json(o, filtration_json(f));
  return 0;
}

int cmd_milnor(const Options& o, std::ostream& out) {
  FieldCtx ctx = parse_field(o.field);
  Json j;
  j["field"] = ctx.tag();
  Json degrees = Json::array();
  for (std::size_t n = 0; n <= o.max_degree; ++n) {
    F2Space k = milnor_k_mod2(ctx, n);
    out << "K_" << n << "/2: ambient " << k.ambient_dim << ", relations of rank " << k.relation_rank << ", dim "
        << k.dimension << "\n";
    degrees.push_back({{"n", n}, {"ambient_dim", k.ambient_dim}, {"relation_rank", k.relation_rank}, {"dim", k.dimension}});
  }
  j["degrees"] = degrees;
  write_json(o, j);
  return 0;
}

int cmd_triangle(const Options& o, std::ostream& out) {
  FieldCtx ctx = parse_field(o.field);
  TriangleReport r = triangle_check(ctx, o.max_degree, parse_convention(o.convention));
  out << "field " << ctx.tag() << ", convention " << convention_name(r.convention) << "\n";
  std::string dims;
  for (const auto& d : r.degrees) {
    out << "n=" << d.n << ": dim K=" << d.dim_K << ", dim I^n/I^(n+1)=" << d.dim_gradedW << ", dim H=" << d.dim_H
        << ", nu bijective: " << yes_no(d.nu_bijective) << ", Steinberg images vanish: " << yes_no(d.steinberg_vanish)
        << ", e.nu = eta: " << yes_no(d.commutes) << "\n";
    dims += (dims.empty() ? "" : ",") + std::to_string(d.dim_K);
  }
  out << "dims: (" << dims << ")\n";
  out << "isomorphic: " << yes_no(r.ok()) << "\n";
  write_json(o, triangle_json(r));
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::string& path = primary_form(o);
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  Json cert;
  try {
    cert = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, "invalid JSON in " + path);
  }
  Verdict v = verify_certificate(cert);
  out << v.str() << "\n";
  return v.ok() ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with quadratic forms and Witt rings", "witt"};
  app.require_subcommand(1, 1);
  Options o;
  if (const char* env = std::getenv("WITT_BUDGET")) {
    try {
      o.budget = std::stol(env);
    } catch (const std::exception&) {
      err << "error: WITT_BUDGET must be an integer\n";
      return 2;
    }
  }

  struct Sub {
    const char* name;
    const char* help;
    const char* positional;
    int (*run)(const Options&, std::ostream&);
  };
  const std::vector<Sub> subs = {
      {"diagonalize", "Diagonalize a form with a congruence witness", "form", cmd_diagonalize},
      {"cancel", "Witt cancellation of the first coordinate", nullptr, cmd_cancel},
      {"reflect", "Hyperplane reflection tau_u of a form", "form", cmd_reflect},
      {"decompose", "Witt decomposition H^k + anisotropic", "form", cmd_decompose},
      {"class", "Canonical Witt class", "form", cmd_class},
      {"add", "Witt class of form-a + form-b", nullptr, [](const Options& x, std::ostream& s) { return cmd_binary(x, s, false); }},
      {"mul", "Witt class of form-a * form-b", nullptr, [](const Options& x, std::ostream& s) { return cmd_binary(x, s, true); }},
      {"similar", "Whether two forms are Witt-similar", nullptr, cmd_similar},
      {"invariants", "e0, e1, e2, Hasse profile and signature", "form", cmd_invariants},
      {"ring-table", "Cayley tables of W(F)", nullptr, cmd_ring_table},
      {"ideal", "Filtration by powers of the fundamental ideal", nullptr, cmd_ideal},
      {"milnor", "Dimensions of mod-2 Milnor K-groups", nullptr, cmd_milnor},
      {"triangle", "Compare K_n/2, I^n/I^(n+1) and H^n", nullptr, cmd_triangle},
      {"verify", "Re-check a JSON certificate", "certificate", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    if (s.positional) sub->add_option(s.positional, o.form, std::string(s.positional) == "form" ? "Form expression" : "Path");
    handles.emplace_back(sub, &s);
  }
  app.add_option("--form-a", o.form_a, "First form expression");
  app.add_option("--form-b", o.form_b, "Second form expression");
  app.add_option("--matrix", o.matrix, "Matrix literal [[..],[..]]");
  app.add_option("--vector", o.vector, "Vector literal [..]");
  app.add_option("--field", o.field, "Q, R or Fp(p)");
  app.add_option("--max-degree", o.max_degree, "Largest degree (or R truncation)");
  app.add_option("--convention", o.convention, "Pfister convention for nu: standard or literal");
  app.add_option("--json", o.json_path, "Write the JSON result to this path");
  app.add_option("--seed", o.seed, "Seed for randomized subcommands");
  app.add_option("--budget", o.budget, "Search budget for rational isotropic vectors");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, s] : handles)
      if (sub->parsed()) return s->run(o, out);
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const WittError& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace witt
