// Command line frontend: catalog decompositions, holonomy runs, parameter
// sweeps, and metric geometry, with machine-readable JSON reports.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "obata/chevalley.hpp"
#include "obata/connection.hpp"
#include "obata/geometry.hpp"
#include "obata/joyce.hpp"
#include "obata/lie_algebra.hpp"
#include "obata/matrix.hpp"
#include "obata/models.hpp"
#include "obata/rational.hpp"
#include "obata/root_system.hpp"

namespace {

using namespace obata;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kSchema = "obata-cli/1";

int dim_cap() {
  if (const char* s = std::getenv("OBATA_DIM_CAP")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 64;
}

struct GroupSpec {
  std::string family;  // su, so, sp, e, f, g, hopf
  int n = 0;
  int torus = -1;  // optional expectation, checked against the decomposition
};

struct DiagramTarget {
  char letter = 0;
  int rank = 0;
};

DiagramTarget diagram_target(const GroupSpec& s) {
  if (s.family == "su") {
    if (s.n < 2) throw std::invalid_argument("su needs --n at least 2");
    return {'A', s.n - 1};
  }
  if (s.family == "sp") {
    if (s.n < 2) throw std::invalid_argument("sp needs --n at least 2");
    return {'C', s.n};
  }
  if (s.family == "so") {
    if (s.n >= 5 && s.n % 2 == 1) return {'B', (s.n - 1) / 2};
    if (s.n >= 8 && s.n % 2 == 0) return {'D', s.n / 2};
    throw std::invalid_argument("so needs odd n >= 5 or even n >= 8");
  }
  if (s.family == "hopf") return {'A', 1};
  if (s.family == "e") {
    if (s.n < 6 || s.n > 8)
      throw std::invalid_argument("the e series has ranks 6, 7, 8");
    return {'E', s.n};
  }
  if (s.family == "f") return {'F', 4};
  if (s.family == "g") return {'G', 2};
  throw std::invalid_argument("unknown family '" + s.family + "'");
}

GroupSpec parse_spec(std::string family, int n, int torus) {
  // fold the e6 / f4 / g2 spellings into a letter plus rank
  if (family.size() == 2 && std::isdigit(static_cast<unsigned char>(family[1]))) {
    const int d = family[1] - '0';
    if (n != 0 && n != d)
      throw std::invalid_argument("--n conflicts with the family name");
    n = d;
    family.resize(1);
  }
  if (family == "f" && n == 0) n = 4;
  if (family == "g" && n == 0) n = 2;
  GroupSpec s{std::move(family), n, torus};
  diagram_target(s);  // validates the combination
  return s;
}

std::string group_name(const GroupSpec& s) {
  if (s.family == "hopf") return "hopf";
  if (s.family == "e" || s.family == "f" || s.family == "g")
    return s.family + std::to_string(s.n);
  return s.family + "(" + std::to_string(s.n) + ")";
}

JoyceDecomposition realize(const GroupSpec& s) {
  if (s.family == "hopf") return hopf_model();
  if (s.family == "su") return su_model(s.n);
  if (s.family == "sp") return sp_model(s.n);
  const DiagramTarget t = diagram_target(s);
  return joyce_decompose(chevalley_compact_form(build_root_system(t.letter, t.rank)));
}

void check_torus(const GroupSpec& s, const JoyceDecomposition& d) {
  if (s.torus >= 0 && s.torus != d.ell)
    throw std::invalid_argument(
        "the torus count is fixed by the decomposition: expected " +
        std::to_string(d.ell) + ", got " + std::to_string(s.torus));
}

// closed-form count of layers with trivial f summand, per family
int expected_trivial(char letter, int rank) {
  switch (letter) {
    case 'A': return (rank + 1) % 2 == 0 ? 1 : 0;
    case 'B': return (rank + 1) / 2;
    case 'C': return 1;
    case 'D': return rank % 2 == 0 ? rank / 2 + 1 : (rank - 1) / 2;
    case 'E': return rank == 6 ? 1 : 4;
    case 'F': return 1;
    case 'G': return 1;
    default: throw std::invalid_argument("unknown family letter");
  }
}

Rational parse_rational(std::string s) {
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    return rational_from_string(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Matrix parse_matrix(const std::string& text) {
  const std::vector<std::string> rows = split(text, ';');
  std::vector<std::vector<Rational>> vals;
  for (const std::string& row : rows) {
    std::vector<Rational> r;
    for (const std::string& e : split(row, ',')) r.push_back(parse_rational(e));
    if (!vals.empty() && r.size() != vals.front().size())
      throw std::invalid_argument("parameter matrix rows have unequal length");
    vals.push_back(std::move(r));
  }
  Matrix M(vals.size(), vals.front().size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals[i].size(); ++j) M.at(i, j) = vals[i][j];
  return M;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const std::string& e : split(text, ',')) out.push_back(parse_rational(e));
  return out;
}

// polynomial in t with rational coefficients, ascending powers
struct Poly {
  std::vector<Rational> coef;

  Rational eval(const Rational& t) const {
    Rational v(0);
    for (std::size_t i = coef.size(); i-- > 0;) v = v * t + coef[i];
    return v;
  }
};

Poly parse_poly(const std::string& in) {
  Poly p;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < in.size() && in[i] == ' ') ++i;
  };
  bool first = true;
  skip();
  if (i == in.size()) throw std::invalid_argument("empty curve entry");
  while (skip(), i < in.size()) {
    int sign = 1;
    if (in[i] == '+' || in[i] == '-') {
      sign = in[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw std::invalid_argument("expected + or - between curve terms");
    }
    std::string num;
    while (i < in.size() &&
           (std::isdigit(static_cast<unsigned char>(in[i])) || in[i] == '/'))
      num += in[i++];
    skip();
    if (i < in.size() && in[i] == '*') {
      ++i;
      skip();
    }
    int power = 0;
    if (i < in.size() && in[i] == 't') {
      ++i;
      power = 1;
      if (i < in.size() && in[i] == '^') {
        ++i;
        std::string e;
        while (i < in.size() && std::isdigit(static_cast<unsigned char>(in[i])))
          e += in[i++];
        if (e.empty()) throw std::invalid_argument("missing exponent in curve");
        power = std::stoi(e);
      }
    }
    if (num.empty() && power == 0)
      throw std::invalid_argument("malformed curve term");
    Rational c = num.empty() ? Rational(1) : parse_rational(num);
    if (sign < 0) c = -c;
    if (int(p.coef.size()) <= power) p.coef.resize(power + 1, Rational(0));
    p.coef[std::size_t(power)] += c;
    first = false;
  }
  return p;
}

std::vector<std::vector<Poly>> parse_curve(const std::string& text) {
  std::vector<std::vector<Poly>> out;
  for (const std::string& row : split(text, ';')) {
    std::vector<Poly> r;
    for (const std::string& e : split(row, ',')) r.push_back(parse_poly(e));
    if (!out.empty() && r.size() != out.front().size())
      throw std::invalid_argument("curve rows have unequal length");
    out.push_back(std::move(r));
  }
  return out;
}

json matrix_json(const Matrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j)
      row.push_back(rational_to_string(M.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json check_json(const CheckReport& r) {
  return json{{"ok", r.ok}, {"failures", r.failures}};
}

std::string matrix_text(const Matrix& M) {
  std::string out;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (j) out += ",";
      out += rational_to_string(M.at(i, j));
    }
  }
  return out;
}

std::string form_text(const LeftInvariantForm& f, const LieAlgebra& g) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += rational_to_string(c);
    std::uint64_t rest = mask;
    while (rest != 0) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      const std::string& l = g.label(i);
      out += "*" + (l.empty() ? "e" + std::to_string(i) : l);
    }
  }
  return out;
}

json basis_json(const JoyceDecomposition& d, const Matrix& A) {
  const Matrix P = d.adapted_matrix(A);
  json cols = json::array();
  for (std::size_t c = 0; c < P.cols(); ++c) {
    json col;
    col["label"] = d.column_label(int(c));
    json v = json::array();
    for (std::size_t r = 0; r < P.rows(); ++r)
      v.push_back(rational_to_string(P.at(r, c)));
    col["vector"] = std::move(v);
    cols.push_back(std::move(col));
  }
  return cols;
}

struct Run {
  json report;
  bool ok = true;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit Run(const std::string& command) {
    report["schema"] = kSchema;
    report["version"] = kVersion;
    report["command"] = command;
  }

  int finish(const std::string& json_path) {
    report["ok"] = ok;
    report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return 1;
      }
      out << report.dump(2) << "\n";
    }
    return ok ? 0 : 1;
  }
};

template <class F>
int run_command(const std::string& name, const std::string& json_path, F body) {
  Run run(name);
  try {
    body(run);
  } catch (const std::exception& e) {
    run.ok = false;
    run.report["error"] = e.what();
    std::cerr << "error: " << e.what() << "\n";
  }
  return run.finish(json_path);
}

struct HolonomyOutcome {
  HolonomyResult result;
  std::vector<InvariantSubspace> subspaces;
};

HolonomyOutcome run_holonomy(const JoyceDecomposition& d, const Matrix& A,
                             HolonomyMethod method, std::size_t max_depth) {
  const HypercomplexTriple h = hypercomplex_structure(d, A);
  const Connection c = obata_connection(d.ambient, h);
  HolonomyOutcome out;
  out.result = holonomy_algebra(c, d, A, method, max_depth);
  out.subspaces = find_parallel_subspaces(c, d, A);
  return out;
}

json subspaces_json(const std::vector<InvariantSubspace>& subs) {
  json arr = json::array();
  for (const auto& s : subs)
    arr.push_back(json{{"label", s.label},
                       {"dim", s.basis.size()},
                       {"parallel", s.parallel}});
  return arr;
}

std::string parallel_labels(const std::vector<InvariantSubspace>& subs) {
  // proper candidates only; nabla-closures are invariant by construction
  std::string out;
  for (const auto& s : subs) {
    if (!s.parallel || s.label.rfind("closure", 0) == 0) continue;
    if (!out.empty()) out += "|";
    out += s.label;
  }
  return out.empty() ? "none" : out;
}

void cmd_decompose(Run& run, const GroupSpec& spec, const std::string& Atext,
                   bool diagram_only, bool realize_req, bool emit_basis) {
  if (diagram_only && realize_req)
    throw std::invalid_argument("--diagram-only and --realize conflict");
  // the large exceptional families stay combinatorial unless asked
  const bool diagram =
      diagram_only ||
      (!realize_req && (spec.family == "e" || spec.family == "f"));

  run.report["inputs"] = {{"family", spec.family},
                          {"n", spec.n},
                          {"torus", spec.torus},
                          {"path", diagram ? "diagram" : "realize"}};

  if (diagram) {
    const DiagramTarget t = diagram_target(spec);
    const DiagramDecomposition dd = diagram_joyce_decomposition(t.letter, t.rank);
    json layers = json::array();
    for (const auto& l : dd.layers) {
      json theta = json::array();
      for (const Integer& v : l.theta) theta.push_back(int(v.get_si()));
      layers.push_back(
          json{{"index", l.d_index}, {"f_hdim", l.f_hdim}, {"theta", theta}});
    }
    run.report["outputs"] = {{"group", group_name(spec)},
                             {"type", std::string(1, t.letter) +
                                          std::to_string(t.rank)},
                             {"algebra_dim", dd.algebra_dim},
                             {"m", dd.m},
                             {"ell", dd.ell},
                             {"b_dim", dd.b_dim},
                             {"trivial_f", dd.trivial_f},
                             {"layers", layers}};
    std::cout << group_name(spec) << "  type " << t.letter << t.rank
              << "  dim " << dd.algebra_dim << "  m=" << dd.m
              << " ell=" << dd.ell << " b=" << dd.b_dim
              << " trivial_f=" << dd.trivial_f << "\n";
    for (const auto& l : dd.layers)
      std::cout << "  layer " << l.d_index << ": f_hdim " << l.f_hdim << "\n";
    return;
  }

  const JoyceDecomposition d = realize(spec);
  check_torus(spec, d);
  const Matrix A = Atext.empty() ? Matrix::identity(std::size_t(d.m()))
                                 : parse_matrix(Atext);
  run.report["inputs"]["A"] = matrix_json(A);

  const CheckReport rel = verify_joyce_relations(d);
  const CheckReport incl = verify_bracket_inclusions(d);
  json checks;
  checks["joyce_relations"] = check_json(rel);
  checks["bracket_inclusions"] = check_json(incl);
  run.ok = rel.ok && incl.ok;

  const bool full = d.ambient.dim() <= dim_cap();
  if (full) {
    const HypercomplexTriple h = hypercomplex_structure(d, A);
    const CheckReport integ = verify_integrability(h, d.ambient);
    const CheckReport hyper = hyperholomorphic_check(d, h);
    const JacobiReport jac = d.ambient.verify_jacobi();
    checks["integrability"] = check_json(integ);
    checks["hyperholomorphic_pool"] = check_json(hyper);
    checks["jacobi"] = json{{"ok", jac.ok}};
    run.ok = run.ok && integ.ok && hyper.ok && jac.ok;
  }

  int trivial = 0;
  json fdims = json::array();
  for (int fh : d.f_hdims()) {
    fdims.push_back(fh);
    if (fh == 0) ++trivial;
  }
  run.report["outputs"] = {{"group", group_name(spec)},
                           {"algebra_dim", d.ambient.dim()},
                           {"m", d.m()},
                           {"ell", d.ell},
                           {"b_dim", d.b_dim()},
                           {"f_hdims", fdims},
                           {"trivial_f", trivial},
                           {"quaternionic_dim", d.quaternionic_dim()},
                           {"verifier_level", full ? "full" : "structural"},
                           {"checks", checks}};
  if (emit_basis) run.report["outputs"]["adapted_basis"] = basis_json(d, A);

  std::cout << group_name(spec) << "  dim " << d.ambient.dim()
            << "  m=" << d.m() << " ell=" << d.ell << " b=" << d.b_dim()
            << " trivial_f=" << trivial << "\n";
  const std::vector<int> fh = d.f_hdims();
  for (std::size_t i = 0; i < fh.size(); ++i)
    std::cout << "  layer " << i + 1 << ": f_hdim " << fh[i] << "\n";
  std::cout << "checks: " << (run.ok ? "all passed" : "FAILED")
            << (full ? "" : " (structural only above the dimension cap)")
            << "\n";
}

void cmd_table1(Run& run, int max_rank) {
  if (max_rank < 2)
    throw std::invalid_argument("--max-rank must be at least 2");
  run.report["inputs"] = {{"max_rank", max_rank}};

  struct Row {
    char letter;
    int rank;
    std::string group;
  };
  std::vector<Row> rows;
  for (int r = 1; r <= max_rank; ++r)
    rows.push_back({'A', r, "su(" + std::to_string(r + 1) + ")"});
  for (int r = 2; r <= max_rank; ++r)
    rows.push_back({'B', r, "so(" + std::to_string(2 * r + 1) + ")"});
  for (int r = 2; r <= max_rank; ++r)
    rows.push_back({'C', r, "sp(" + std::to_string(r) + ")"});
  for (int r = 4; r <= max_rank; ++r)
    rows.push_back({'D', r, "so(" + std::to_string(2 * r) + ")"});
  rows.push_back({'G', 2, "g2"});
  if (max_rank >= 4) rows.push_back({'F', 4, "f4"});
  for (int r = 6; r <= std::min(8, max_rank); ++r)
    rows.push_back({'E', r, "e" + std::to_string(r)});

  int mismatches = 0;
  json jrows = json::array();
  std::cout << "type  group      trivial_f  expected  match\n";
  for (const Row& row : rows) {
    const DiagramDecomposition dd =
        diagram_joyce_decomposition(row.letter, row.rank);
    const int expect = expected_trivial(row.letter, row.rank);
    const bool match = dd.trivial_f == expect;
    if (!match) ++mismatches;
    jrows.push_back(json{{"type", std::string(1, row.letter) +
                                      std::to_string(row.rank)},
                         {"group", row.group},
                         {"m", dd.m},
                         {"ell", dd.ell},
                         {"b_dim", dd.b_dim},
                         {"trivial_f", dd.trivial_f},
                         {"expected", expect},
                         {"match", match}});
    std::printf("%c%-4d %-10s %-10d %-9d %s\n", row.letter, row.rank,
                row.group.c_str(), dd.trivial_f, expect,
                match ? "yes" : "NO");
  }
  std::cout << "mismatches: " << mismatches << "\n";
  run.report["outputs"] = {{"rows", jrows}, {"mismatches", mismatches}};
  run.ok = mismatches == 0;
}

void cmd_holonomy(Run& run, const GroupSpec& spec, const std::string& Atext,
                  const std::string& method_name, int max_depth,
                  bool emit_basis, bool emit_theta) {
  const JoyceDecomposition d = realize(spec);
  check_torus(spec, d);
  if (d.ambient.dim() > dim_cap())
    throw std::invalid_argument(
        "ambient dimension " + std::to_string(d.ambient.dim()) +
        " exceeds the holonomy cap " + std::to_string(dim_cap()) +
        "; set OBATA_DIM_CAP to raise it");
  const Matrix A = Atext.empty() ? Matrix::identity(std::size_t(d.m()))
                                 : parse_matrix(Atext);
  const HolonomyMethod method = method_name == "alekseevskii"
                                    ? HolonomyMethod::alekseevskii
                                    : HolonomyMethod::filtration;
  run.report["inputs"] = {{"family", spec.family},
                          {"n", spec.n},
                          {"torus", spec.torus},
                          {"A", matrix_json(A)},
                          {"method", method_name},
                          {"max_depth", max_depth}};

  const HypercomplexTriple h = hypercomplex_structure(d, A);
  const Connection c = obata_connection(d.ambient, h);
  const HolonomyResult hol =
      holonomy_algebra(c, d, A, method, std::size_t(max_depth));
  const std::vector<InvariantSubspace> subs = find_parallel_subspaces(c, d, A);
  const CheckReport nabla1 = verify_nabla_e1(c, d, A);

  run.report["outputs"] = {{"group", group_name(spec)},
                           {"algebra_dim", d.ambient.dim()},
                           {"holonomy", json::parse(hol.to_json())},
                           {"subspaces", subspaces_json(subs)},
                           {"nabla_e1", check_json(nabla1)}};
  if (emit_basis) run.report["outputs"]["adapted_basis"] = basis_json(d, A);
  if (emit_theta) {
    // connection 1-form in quaternionic block coordinates
    const Matrix Q = quaternion_frame(d, A);
    const auto Qinv = Q.inverse();
    if (!Qinv) throw std::logic_error("frame matrix is not invertible");
    json theta = json::array();
    for (std::size_t k = 0; k < Q.cols(); ++k)
      theta.push_back(matrix_json(*Qinv * c.along(Q.col_vec(k)) * Q));
    run.report["outputs"]["connection_form"] = std::move(theta);
  }
  run.ok = hol.stabilized && nabla1.ok;

  std::cout << group_name(spec) << "  A=" << matrix_text(A)
            << "  method=" << method_name << "\n";
  std::cout << "filtration:";
  for (std::size_t v : hol.filtration_dims) std::cout << " " << v;
  std::cout << "\nholonomy dim " << hol.dim << ", depth " << hol.depth_reached
            << ", " << (hol.stabilized ? "stabilized" : "NOT STABILIZED")
            << "\n";
  std::cout << "block matrix " << hol.blocks.n << "x" << hol.blocks.n
            << ", real_trace_zero="
            << (hol.blocks.real_trace_zero ? "yes" : "no") << "\n";
  for (std::size_t r = 0; r < hol.blocks.n; ++r) {
    std::cout << " ";
    for (std::size_t s = 0; s < hol.blocks.n; ++s)
      std::cout << " " << hol.blocks.cell(r, s);
    std::cout << "\n";
  }
  for (const auto& s : subs)
    std::cout << "subspace " << s.label << " dim " << s.basis.size()
              << (s.parallel ? " parallel" : "") << "\n";
}

void cmd_geometry(Run& run, const GroupSpec& spec, const std::string& Atext,
                  bool twisted) {
  const JoyceDecomposition d = realize(spec);
  check_torus(spec, d);
  const Matrix A = Atext.empty() ? Matrix::identity(std::size_t(d.m()))
                                 : parse_matrix(Atext);
  run.report["inputs"] = {{"family", spec.family},
                          {"n", spec.n},
                          {"torus", spec.torus},
                          {"A", matrix_json(A)},
                          {"twisted_cy", twisted}};

  const HypercomplexTriple h = hypercomplex_structure(d, A);
  InvariantMetric metric;
  std::string kind = "killing-extension";
  std::string note;
  try {
    metric = extend_killing_metric(d, A);
  } catch (const std::invalid_argument& e) {
    metric = hyperhermitian_metric(d, A);
    kind = "completion";
    note = e.what();
  }

  const LeftInvariantForm eta = obata_one_form(d.ambient, h);
  const LeftInvariantForm lee = lee_form(d, metric);
  const RicciForm ric = obata_ricci(d.ambient, h);
  const LeftInvariantForm deta = ce_differential(d.ambient, eta);

  json lambdas = json::array();
  for (const Rational& l : metric.lambdas)
    lambdas.push_back(rational_to_string(l));
  json out{{"group", group_name(spec)},
           {"algebra_dim", d.ambient.dim()},
           {"m", d.m()},
           {"ell", d.ell},
           {"b_dim", d.b_dim()},
           {"metric", json{{"kind", kind},
                           {"note", note},
                           {"bi_invariant", metric.bi_invariant},
                           {"lambdas", lambdas}}},
           {"lee_form", json::parse(lee.to_json())},
           {"trace_form", json::parse(eta.to_json())},
           {"lee_equals_trace", lee == eta},
           {"ricci_zero", ric.is_zero()},
           {"dtheta_zero", deta.is_zero()}};

  std::cout << group_name(spec) << "  metric: " << kind
            << (metric.bi_invariant ? " (bi-invariant)" : " (not bi-invariant)")
            << "\n";
  if (!note.empty()) std::cout << "  note: " << note << "\n";
  std::cout << "lee form:   " << form_text(lee, d.ambient) << "\n";
  std::cout << "trace form: " << form_text(eta, d.ambient) << "\n";
  std::cout << "ricci: " << (ric.is_zero() ? "zero" : "nonzero")
            << "   dtheta: " << (deta.is_zero() ? "zero" : "nonzero") << "\n";

  if (twisted) {
    const TwistedCyReport rep = verify_twisted_cy(d, metric, h);
    out["twisted_cy"] = json::parse(rep.to_json());
    run.ok = rep.all_passed();
    std::cout << "twisted-cy: hkt=" << (rep.hkt ? "yes" : "no")
              << " strong=" << (rep.strong ? "yes" : "no")
              << " volume_twist=" << (rep.volume_twist ? "yes" : "no")
              << " lee_closed=" << (rep.lee_closed ? "yes" : "no") << "\n";
  }
  run.report["outputs"] = std::move(out);
}

void cmd_sweep(Run& run, const GroupSpec& spec, const std::string& curve_text,
               const std::string& t_text, const std::string& method_name,
               int max_depth) {
  const JoyceDecomposition d = realize(spec);
  check_torus(spec, d);
  if (d.ambient.dim() > dim_cap())
    throw std::invalid_argument(
        "ambient dimension " + std::to_string(d.ambient.dim()) +
        " exceeds the holonomy cap " + std::to_string(dim_cap()) +
        "; set OBATA_DIM_CAP to raise it");
  const std::vector<std::vector<Poly>> curve = parse_curve(curve_text);
  const std::vector<Rational> ts = parse_rational_list(t_text);
  const std::size_t m = std::size_t(d.m());
  if (curve.size() != m || curve.front().size() != m)
    throw std::invalid_argument("curve must be an m x m matrix of polynomials");
  const HolonomyMethod method = method_name == "alekseevskii"
                                    ? HolonomyMethod::alekseevskii
                                    : HolonomyMethod::filtration;
  run.report["inputs"] = {{"family", spec.family},
                          {"n", spec.n},
                          {"torus", spec.torus},
                          {"curve", curve_text},
                          {"t", t_text},
                          {"method", method_name},
                          {"max_depth", max_depth}};

  json rows = json::array();
  std::cout << "t,det,final_dim,stabilized,parallel,note\n";
  long prev_dim = -1;
  json jumps = json::array();
  Rational prev_t;
  for (const Rational& t : ts) {
    Matrix At(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) At.at(i, j) = curve[i][j].eval(t);
    const Rational det = At.determinant();
    json row{{"t", rational_to_string(t)},
             {"A", matrix_json(At)},
             {"det", rational_to_string(det)}};
    if (is_zero(det)) {
      row["skipped"] = "singular parameter matrix";
      std::cout << rational_to_string(t) << ",0,,,," << "singular parameter matrix\n";
      rows.push_back(std::move(row));
      continue;
    }
    const HolonomyOutcome res =
        run_holonomy(d, At, method, std::size_t(max_depth));
    row["filtration"] = res.result.filtration_dims;
    row["dim"] = res.result.dim;
    row["stabilized"] = res.result.stabilized;
    row["subspaces"] = subspaces_json(res.subspaces);
    const std::string par = parallel_labels(res.subspaces);
    std::cout << rational_to_string(t) << "," << rational_to_string(det) << ","
              << res.result.dim << ","
              << (res.result.stabilized ? "yes" : "no") << "," << par << ",\n";
    run.ok = run.ok && res.result.stabilized;
    if (prev_dim >= 0 && prev_dim != long(res.result.dim))
      jumps.push_back(json{{"from_t", rational_to_string(prev_t)},
                           {"to_t", rational_to_string(t)},
                           {"from_dim", prev_dim},
                           {"to_dim", res.result.dim}});
    prev_dim = long(res.result.dim);
    prev_t = t;
    rows.push_back(std::move(row));
  }
  run.report["outputs"] = {{"group", group_name(spec)},
                           {"rows", rows},
                           {"jumps", jumps}};
  if (!jumps.empty())
    std::cout << "dimension jumps: " << jumps.size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact hypercomplex structures, connections, and metrics on "
               "compact group models"};
  app.require_subcommand(1);

  std::string family, Atext, method = "filtration", json_path, curve, tlist;
  int n = 0, torus = -1, max_depth = 6, max_rank = 8;
  bool diagram_only = false, realize_req = false, twisted = false;
  bool emit_basis = false, emit_theta = false;

  const auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--family", family,
                    "su | so | sp | e6 | e7 | e8 | f4 | g2 | hopf")
        ->required();
    sub->add_option("--n", n, "size parameter (su(n), so(n), sp(n), e rank)");
    sub->add_option("--torus", torus,
                    "expected central torus rank (checked, not free)");
  };
  const auto add_json = [&](CLI::App* sub) {
    sub->add_option("--json", json_path, "write the JSON report to this path");
  };

  CLI::App* dec = app.add_subcommand(
      "decompose", "layer decomposition of a catalog group");
  add_spec(dec);
  dec->add_option("--A", Atext, "parameter matrix, rational rows 'a,b;c,d'");
  dec->add_flag("--diagram-only", diagram_only,
                "combinatorial layers only, no structure constants");
  dec->add_flag("--realize", realize_req,
                "build structure constants and run the verifiers");
  dec->add_flag("--emit-basis", emit_basis, "dump the adapted basis columns");
  add_json(dec);

  CLI::App* tab = app.add_subcommand(
      "table1", "trivial layer counts across all families");
  tab->add_option("--max-rank", max_rank, "largest rank per family")
      ->default_val(8);
  add_json(tab);

  CLI::App* hol = app.add_subcommand(
      "holonomy", "holonomy algebra of the torsion-free quaternionic connection");
  add_spec(hol);
  hol->add_option("--A", Atext, "parameter matrix, rational rows 'a,b;c,d'");
  hol->add_option("--method", method, "filtration | alekseevskii")
      ->check(CLI::IsMember({"filtration", "alekseevskii"}));
  hol->add_option("--max-depth", max_depth, "derivative passes before giving up")
      ->default_val(6);
  hol->add_flag("--emit-basis", emit_basis, "dump the adapted basis columns");
  hol->add_flag("--emit-theta", emit_theta,
                "dump the connection 1-form in block coordinates");
  add_json(hol);

  CLI::App* geo = app.add_subcommand(
      "geometry", "invariant metric, Lee form, Ricci form, twisted checks");
  add_spec(geo);
  geo->add_option("--A", Atext, "parameter matrix, rational rows 'a,b;c,d'");
  geo->add_flag("--twisted-cy", twisted, "run the twisted Calabi-Yau checks");
  add_json(geo);

  CLI::App* swp = app.add_subcommand(
      "sweep", "holonomy along a rational curve of parameter matrices");
  add_spec(swp);
  swp->add_option("--curve", curve,
                  "matrix of polynomials in t, e.g. 't,1-t;1+t,-t'")
      ->required();
  swp->add_option("--t", tlist, "comma-separated rational t values")
      ->required();
  swp->add_option("--method", method, "filtration | alekseevskii")
      ->check(CLI::IsMember({"filtration", "alekseevskii"}));
  swp->add_option("--max-depth", max_depth, "derivative passes before giving up")
      ->default_val(6);
  add_json(swp);

  CLI11_PARSE(app, argc, argv);

  if (dec->parsed())
    return run_command("decompose", json_path, [&](Run& run) {
      cmd_decompose(run, parse_spec(family, n, torus), Atext, diagram_only,
                    realize_req, emit_basis);
    });
  if (tab->parsed())
    return run_command("table1", json_path,
                       [&](Run& run) { cmd_table1(run, max_rank); });
  if (hol->parsed())
    return run_command("holonomy", json_path, [&](Run& run) {
      cmd_holonomy(run, parse_spec(family, n, torus), Atext, method, max_depth,
                   emit_basis, emit_theta);
    });
  if (geo->parsed())
    return run_command("geometry", json_path, [&](Run& run) {
      cmd_geometry(run, parse_spec(family, n, torus), Atext, twisted);
    });
  if (swp->parsed())
    return run_command("sweep", json_path, [&](Run& run) {
      cmd_sweep(run, parse_spec(family, n, torus), curve, tlist, method,
                max_depth);
    });
  return 1;
}
