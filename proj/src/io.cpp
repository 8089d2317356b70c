#include "qsdpnal/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace qsdpnal {

using json = nlohmann::json;

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double to_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(ErrorCode::Parse, "expected a number");
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Vector json_vec(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "expected an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = to_num(j[i]);
  return v;
}

json mat_json(const Matrix& m) {
  json a = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

Matrix json_mat(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "expected a matrix");
  const Index r = static_cast<Index>(j.size());
  if (r == 0) return Matrix(0, 0);
  const Index c = static_cast<Index>(j[0].size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != c)
      fail(ErrorCode::Parse, "ragged matrix");
    for (Index k = 0; k < c; ++k) m(i, k) = to_num(j[i][k]);
  }
  return m;
}

json map_json(const ConstraintMap& a) {
  json t = json::array();
  for (const ConstraintTriplet& e : a.triplets())
    t.push_back({e.row, e.i, e.j, num(e.value)});
  return {{"m", a.rows()}, {"triplets", std::move(t)}};
}

std::vector<ConstraintTriplet> json_triplets(const json& t) {
  std::vector<ConstraintTriplet> out;
  for (const json& e : t) {
    if (!e.is_array() || e.size() != 4)
      fail(ErrorCode::Parse, "triplet must be [row, i, j, value]");
    out.push_back({e[0].get<Index>(), e[1].get<Index>(), e[2].get<Index>(),
                   to_num(e[3])});
  }
  return out;
}

ConstraintMap json_map(const json& j, Index n) {
  const Index m = j.at("m").get<Index>();
  if (m == 0) return ConstraintMap(n);
  return ConstraintMap(m, n, json_triplets(j.at("triplets")));
}

// Symmetric matrix as upper-triangular triplets [i, j, value].
json sym_json(const Matrix& c) {
  json t = json::array();
  for (Index j = 0; j < c.cols(); ++j)
    for (Index i = 0; i <= j; ++i)
      if (c(i, j) != 0.0) t.push_back({i, j, num(c(i, j))});
  return t;
}

Matrix json_sym(const json& t, Index n) {
  Matrix c = Matrix::Zero(n, n);
  for (const json& e : t) {
    if (!e.is_array() || e.size() != 3)
      fail(ErrorCode::Parse, "C entry must be [i, j, value]");
    const Index i = e[0].get<Index>(), j = e[1].get<Index>();
    if (i < 0 || j < 0 || i >= n || j >= n)
      fail(ErrorCode::Parse, "C entry out of range");
    c(i, j) = c(j, i) = to_num(e[2]);
  }
  return c;
}

json bound_json(const Matrix& m) {
  if (m.size() > 0 && (m.array() == m(0, 0)).all()) return num(m(0, 0));
  return mat_json(m);
}

Matrix json_bound(const json& j, Index n) {
  if (j.is_array()) return json_mat(j);
  return Matrix::Constant(n, n, to_num(j));
}

json q_json(const QOperator& q) {
  json j{{"scale", q.scale()}};
  switch (q.kind()) {
    case QOperator::Kind::Zero:
      j["kind"] = "zero";
      break;
    case QOperator::Kind::Dense:
      j["kind"] = "dense";
      j["svec_rep"] = mat_json(q.dense_rep());
      break;
    case QOperator::Kind::HadamardSquare:
      j["kind"] = "hadamard_square";
      j["H"] = mat_json(q.h());
      break;
    case QOperator::Kind::BilinearPair:
      j["kind"] = "bilinear_pair";
      j["A"] = mat_json(q.a());
      j["B"] = mat_json(q.b());
      break;
    case QOperator::Kind::GramSum:
      j["kind"] = "gram_sum";
      j["B"] = map_json(q.gram());
      break;
  }
  return j;
}

QOperator json_q(const json& j, Index n) {
  const std::string kind = j.at("kind").get<std::string>();
  QOperator q;
  if (kind == "zero")
    q = QOperator::zero(n);
  else if (kind == "dense")
    q = QOperator::dense(json_mat(j.at("svec_rep")), n);
  else if (kind == "hadamard_square")
    q = QOperator::hadamard_square(json_mat(j.at("H")));
  else if (kind == "bilinear_pair")
    q = QOperator::bilinear_pair(json_mat(j.at("A")), json_mat(j.at("B")));
  else if (kind == "gram_sum")
    q = QOperator::gram_sum(json_map(j.at("B"), n));
  else
    fail(ErrorCode::Parse, "unknown Q kind '" + kind + "'");
  const double s = j.value("scale", 1.0);
  return s == 1.0 ? q : q.scaled(s);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

json kkt_json(const KktReport& r) {
  return {{"eta_qsdp", num(r.eta_qsdp)}, {"eta_gap", num(r.eta_gap)},
          {"etaP", num(r.etaP)},         {"etaD", num(r.etaD)},
          {"etaZ", num(r.etaZ)},         {"etaS1", num(r.etaS1)},
          {"etaS2", num(r.etaS2)},       {"etaI1", num(r.etaI1)},
          {"etaI2", num(r.etaI2)},       {"etaI3", num(r.etaI3)},
          {"etaW", num(r.etaW)},         {"objP", num(r.objP)},
          {"objD", num(r.objD)},         {"dual_infinite", r.dual_infinite}};
}

}  // namespace

std::string write_instance(const QsdpProblem& p) {
  json j;
  j["format"] = "qsdpnal-instance";
  j["n"] = p.n;
  j["mE"] = p.mE();
  j["mI"] = p.mI();
  json k;
  switch (p.K.kind()) {
    case PolyhedralSet::Kind::WholeSpace:
      k["kind"] = "whole_space";
      break;
    case PolyhedralSet::Kind::Nonneg:
      k["kind"] = "nonneg";
      break;
    case PolyhedralSet::Kind::Box:
      k["kind"] = "box";
      k["L"] = bound_json(p.K.lower());
      k["U"] = bound_json(p.K.upper());
      break;
  }
  j["K"] = std::move(k);
  j["Q"] = q_json(p.Q);
  j["AE"] = map_json(p.AE);
  j["bE"] = vec_json(p.bE);
  j["AI"] = map_json(p.AI);
  j["bI"] = vec_json(p.bI);
  j["C"] = sym_json(p.C);
  if (p.ls) j["ls"] = {{"B", map_json(p.ls->B)}, {"d", vec_json(p.ls->d)}};
  if (p.ground_truth) j["ground_truth"] = mat_json(*p.ground_truth);
  return j.dump(1) + "\n";
}

QsdpProblem read_instance(const std::string& text) {
  const json j = parse(text);
  QsdpProblem p;
  try {
    p.n = j.at("n").get<Index>();
    if (p.n <= 0) fail(ErrorCode::Parse, "n must be positive");
    const json& k = j.at("K");
    const std::string kind = k.at("kind").get<std::string>();
    if (kind == "whole_space")
      p.K = PolyhedralSet::whole_space();
    else if (kind == "nonneg")
      p.K = PolyhedralSet::nonneg();
    else if (kind == "box")
      p.K = PolyhedralSet::box(json_bound(k.at("L"), p.n),
                               json_bound(k.at("U"), p.n));
    else
      fail(ErrorCode::Parse, "unknown K kind '" + kind + "'");
    p.Q = json_q(j.at("Q"), p.n);
    p.AE = json_map(j.at("AE"), p.n);
    p.bE = json_vec(j.at("bE"));
    p.AI = json_map(j.at("AI"), p.n);
    p.bI = json_vec(j.at("bI"));
    p.C = json_sym(j.at("C"), p.n);
    if (j.contains("ls")) {
      LeastSquaresData ls;
      ls.B = json_map(j["ls"].at("B"), p.n);
      ls.d = json_vec(j["ls"].at("d"));
      p.ls = std::move(ls);
    }
    if (j.contains("ground_truth")) p.ground_truth = json_mat(j["ground_truth"]);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("instance: ") + e.what());
  }
  if (j.contains("mE") && j["mE"].get<Index>() != p.mE())
    fail(ErrorCode::Parse, "instance: mE does not match AE");
  if (j.contains("mI") && j["mI"].get<Index>() != p.mI())
    fail(ErrorCode::Parse, "instance: mI does not match AI");
  try {
    p.validate();
  } catch (const Error& e) {
    fail(ErrorCode::Parse, std::string("instance: ") + e.what());
  }
  return p;
}

std::string write_solution(const Solution& s) {
  json j;
  j["format"] = "qsdpnal-solution";
  j["X"] = mat_json(s.X);
  j["Z"] = mat_json(s.Z);
  j["W_shadow"] = mat_json(s.W);
  j["xi"] = vec_json(s.xi);
  j["S"] = mat_json(s.S);
  j["s"] = vec_json(s.s);
  j["x"] = vec_json(s.x);
  j["yE"] = vec_json(s.yE);
  j["yI"] = vec_json(s.yI);
  return j.dump(1) + "\n";
}

Solution read_solution(const std::string& text, const QsdpProblem& p) {
  const json j = parse(text);
  Solution s;
  try {
    s.X = json_mat(j.at("X"));
    s.Z = json_mat(j.at("Z"));
    s.S = json_mat(j.at("S"));
    s.W = json_mat(j.value("W_shadow", json::array()));
    s.xi = json_vec(j.value("xi", json::array()));
    s.s = json_vec(j.value("s", json::array()));
    s.x = json_vec(j.value("x", json::array()));
    s.yE = json_vec(j.at("yE"));
    s.yI = json_vec(j.value("yI", json::array()));
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("solution: ") + e.what());
  }
  const Index n = p.n;
  auto square = [n](const Matrix& m) { return m.rows() == n && m.cols() == n; };
  bool ok = square(s.X) && square(s.Z) && square(s.S) &&
            s.yE.size() == p.mE() && s.yI.size() == p.mI() &&
            s.s.size() == p.mI();
  if (p.ls)
    ok = ok && s.xi.size() == p.ls->B.rows();
  else
    ok = ok && square(s.W);
  if (s.x.size() == 0 && p.mI() > 0) {
    // Slack omitted: recover it from the inequalities with unit scaling.
    s.x = p.bI - p.apply_AI(s.X);
  }
  if (!ok || s.x.size() != p.mI())
    fail(ErrorCode::InvalidInput, "solution: dimensions do not match instance");
  if (p.ls && s.W.size() == 0) s.W = Matrix::Zero(n, n);
  refresh_caches(p, s);
  return s;
}

std::string write_kkt(const KktReport& r) { return kkt_json(r).dump(1) + "\n"; }

std::string write_report(const SolveReport& r, bool history) {
  json j;
  j["method"] = r.method;
  j["converged"] = r.converged;
  j["phase1_iters"] = r.phase1_iters;
  j["outer_iters"] = r.outer_iters;
  j["inner_iters"] = r.inner_iters;
  j["restarts"] = r.restarts;
  j["a_only_steps"] = r.a_only_steps;
  j["unaccepted_steps"] = r.unaccepted_steps;
  j["sigma"] = num(r.sigma);
  j["seconds"] = r.seconds;
  j["phase1_seconds"] = r.phase1_seconds;
  j["kkt"] = kkt_json(r.kkt);
  j["objP"] = num(r.kkt.objP);
  j["objD"] = num(r.kkt.objD);
  const SolverConfig& c = r.config;
  j["config"] = {{"tol", c.tol},
                 {"phase1_only", c.phase1_only},
                 {"phase1_only_iters", c.phase1_only_iters},
                 {"phase1_target", c.phase1.target},
                 {"phase1_max_iters", c.phase1.max_iters},
                 {"sigma0", c.phase1.sigma},
                 {"tau", c.phase1.tau},
                 {"abcd_eta", c.alm.abcd.eta},
                 {"max_total_outer", c.max_total_outer},
                 {"max_restarts", c.max_restarts}};
  if (history) {
    json h1 = json::array();
    for (const IterRecord& it : r.phase1_history)
      h1.push_back({{"iter", it.iter},
                    {"sigma", it.sigma},
                    {"eta_qsdp", num(it.kkt.eta_qsdp)},
                    {"etaP", num(it.kkt.etaP)},
                    {"etaD", num(it.kkt.etaD)},
                    {"eta_gap", num(it.kkt.eta_gap)}});
    json h2 = json::array();
    for (const OuterRecord& o : r.outer_history)
      h2.push_back({{"k", o.k},
                    {"sigma", o.sigma},
                    {"inner_iters", o.inner_iters},
                    {"sncg_iters", o.sncg_iters},
                    {"accepted", o.accepted},
                    {"a_only", o.a_only},
                    {"eta_qsdp", num(o.kkt.eta_qsdp)},
                    {"etaP", num(o.kkt.etaP)},
                    {"etaD", num(o.kkt.etaD)},
                    {"eta_gap", num(o.kkt.eta_gap)}});
    j["history"] = {{"phase1", std::move(h1)}, {"phase2", std::move(h2)}};
  }
  return j.dump(1) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

}  // namespace qsdpnal
