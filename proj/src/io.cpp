#include "sdfeas/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sdfeas/errors.hpp"

namespace sdfeas::io {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

SymMat matrix_from_json(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + " must be an array");
  Matrix dense(n, n);
  if (j.size() == n * n && (n == 0 || j.front().is_number())) {
    for (std::size_t k = 0; k < n * n; ++k) {
      if (!j[k].is_number()) throw Error(ErrorCode::ParseError, what + " has a non-numeric entry");
      dense(k / n, k % n) = j[k].get<double>();
    }
  } else if (j.size() == n) {
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = j[i];
      if (!row.is_array() || row.size() != n) throw Error(ErrorCode::ParseError, what + " row has the wrong length");
      for (std::size_t c = 0; c < n; ++c) {
        if (!row[c].is_number()) throw Error(ErrorCode::ParseError, what + " has a non-numeric entry");
        dense(i, c) = row[c].get<double>();
      }
    }
  } else {
    throw Error(ErrorCode::ParseError, what + " is not an n x n matrix");
  }
  try {
    return SymMat::from_dense(dense);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

json matrix_to_json(const SymMat& s) { return json(s.entries()); }

json matrix_to_json(const Matrix& a) { return json(a.data()); }

Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + " must be an array");
  Vector v;
  for (const auto& e : j) {
    if (!e.is_number()) throw Error(ErrorCode::ParseError, what + " has a non-numeric entry");
    v.push_back(e.get<double>());
  }
  return v;
}

std::size_t size_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw Error(ErrorCode::ParseError, std::string("missing or invalid \"") + key + "\"");
  return j[key].get<std::size_t>();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- problems

Lsdfp parse_problem_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "problem must be a JSON object");
  Lsdfp p;
  p.n = size_field(j, "n");
  p.m = size_field(j, "m");
  if (!j.contains("A") || !j["A"].is_array()) throw Error(ErrorCode::ParseError, "missing \"A\"");
  if (!j.contains("b")) throw Error(ErrorCode::ParseError, "missing \"b\"");
  if (j["A"].size() != p.m) throw Error(ErrorCode::ParseError, "\"A\" must hold m matrices");
  for (std::size_t i = 0; i < p.m; ++i) p.A.push_back(matrix_from_json(j["A"][i], p.n, "A[" + std::to_string(i) + "]"));
  p.b = vector_from_json(j["b"], "b");
  if (p.b.size() != p.m) throw Error(ErrorCode::ParseError, "\"b\" must hold m entries");
  return p;
}

std::string problem_to_json(const Lsdfp& p) {
  json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["A"] = json::array();
  for (const auto& a : p.A) j["A"].push_back(matrix_to_json(a));
  j["b"] = p.b;
  return j.dump(2) + "\n";
}

Lsdfp parse_sdpa(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> kept;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '"' || line[first] == '*') continue;
    for (char& c : line)
      if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',') c = ' ';
    kept.push_back(line);
  }
  // The three header lines may carry trailing comments ("2 =mdim").
  auto header = [&](std::size_t idx, const char* what) {
    if (idx >= kept.size()) throw Error(ErrorCode::ParseError, std::string("SDPA: expected ") + what);
    std::istringstream ls(kept[idx]);
    long long v;
    if (!(ls >> v)) throw Error(ErrorCode::ParseError, std::string("SDPA: expected ") + what);
    return v;
  };
  const long long m = header(0, "number of constraints");
  const long long nblocks = header(1, "number of blocks");
  if (m <= 0) throw Error(ErrorCode::ParseError, "SDPA: m must be positive");
  if (nblocks != 1) throw Error(ErrorCode::ParseError, "SDPA: only a single block is supported");
  const long long bsize = header(2, "block size");
  if (bsize <= 0) throw Error(ErrorCode::ParseError, "SDPA: only a dense (positive-size) block is supported");

  std::string body;
  for (std::size_t k = 3; k < kept.size(); ++k) body += kept[k] + "\n";
  std::istringstream in(body);

  Lsdfp p;
  p.n = static_cast<std::size_t>(bsize);
  p.m = static_cast<std::size_t>(m);
  p.b.resize(p.m);
  for (auto& v : p.b)
    if (!(in >> v)) throw Error(ErrorCode::ParseError, "SDPA: objective vector too short");
  p.A.assign(p.m, SymMat(p.n));

  long long mat, blk, i, j;
  double val;
  while (in >> mat) {
    if (!(in >> blk >> i >> j >> val)) throw Error(ErrorCode::ParseError, "SDPA: truncated entry line");
    if (blk != 1) throw Error(ErrorCode::ParseError, "SDPA: block index must be 1");
    if (i < 1 || j < 1 || i > bsize || j > bsize) throw Error(ErrorCode::ParseError, "SDPA: entry index out of range");
    if (mat < 0 || mat > m) throw Error(ErrorCode::ParseError, "SDPA: matrix index out of range");
    if (mat == 0) {
      if (val != 0.0) throw Error(ErrorCode::NonZeroCost, "F0 has a nonzero entry");
      continue;
    }
    p.A[static_cast<std::size_t>(mat - 1)].set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), val);
  }
  if (!in.eof()) throw Error(ErrorCode::ParseError, "SDPA: unexpected token");
  return p;
}

Lsdfp read_problem(const std::string& path, Format format) {
  const std::string text = read_file(path);
  return format == Format::Json ? parse_problem_json(text) : parse_sdpa(text);
}

// ---------------------------------------------------------------- witness / LMI

Witness parse_witness_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("Xstar") || !j.contains("Ystar") || !j.contains("ystar"))
    throw Error(ErrorCode::ParseError, "witness needs Xstar, ystar and Ystar");
  const std::size_t n = size_field(j, "n");
  Witness w;
  w.Xstar = matrix_from_json(j["Xstar"], n, "Xstar");
  w.Ystar = matrix_from_json(j["Ystar"], n, "Ystar");
  w.ystar = vector_from_json(j["ystar"], "ystar");
  w.partition_rank = size_field(j, "partition_rank");
  if (j.contains("Q")) {
    const Vector q = vector_from_json(j["Q"], "Q");
    if (q.size() != n * n) throw Error(ErrorCode::ParseError, "Q must hold n*n entries");
    w.Q = Matrix(n, n);
    for (std::size_t k = 0; k < q.size(); ++k) w.Q(k / n, k % n) = q[k];
  } else {
    // Rebuild the partition basis from X*: range first (descending), kernel after.
    const EigenDecomposition eig = eigen_sym(w.Xstar);
    w.Q = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < n; ++i) w.Q(i, c) = eig.vectors(i, n - 1 - c);
  }
  return w;
}

std::string witness_to_json(const Witness& w) {
  json j;
  j["n"] = w.Xstar.size();
  j["Xstar"] = matrix_to_json(w.Xstar);
  j["ystar"] = w.ystar;
  j["Ystar"] = matrix_to_json(w.Ystar);
  j["partition_rank"] = w.partition_rank;
  j["Q"] = matrix_to_json(w.Q);
  return j.dump(2) + "\n";
}

Lmi parse_lmi_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("B") || !j["B"].is_array() || j["B"].empty())
    throw Error(ErrorCode::ParseError, "LMI needs a non-empty \"B\" list");
  const std::size_t n = size_field(j, "n");
  Lmi lmi;
  for (std::size_t k = 0; k < j["B"].size(); ++k)
    lmi.B.push_back(matrix_from_json(j["B"][k], n, "B[" + std::to_string(k) + "]"));
  return lmi;
}

// ---------------------------------------------------------------- outputs

std::string solution_to_json(const std::string& status, const std::optional<Solution>& sol, int iters,
                             double final_ratio) {
  json j;
  j["status"] = status;
  if (sol) {
    j["X"] = matrix_to_json(sol->X);
    j["y"] = sol->y;
    j["Y"] = matrix_to_json(sol->Y);
  } else {
    j["X"] = nullptr;
    j["y"] = nullptr;
    j["Y"] = nullptr;
  }
  j["iters"] = iters;
  if (std::isfinite(final_ratio))
    j["final_ratio"] = final_ratio;
  else
    j["final_ratio"] = nullptr;
  return j.dump(2) + "\n";
}

std::string trace_to_csv(const IterTrace& trace) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& r : trace) {
    out += std::to_string(r.k);
    for (double v : {r.mu, r.alpha_bar, r.alpha1, r.alpha2, r.delta, r.tau, r.kappa, r.norm_r, r.norm_s, r.gamma,
                     r.nbr_dist, r.ratio})
      out += "," + fmt17(v);
    out += "\n";
  }
  return out;
}

IterTrace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw Error(ErrorCode::ParseError, "unexpected trace header");
  IterTrace trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> vals;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number on trace line " + std::to_string(lineno));
      }
    }
    if (vals.size() != 13) throw Error(ErrorCode::ParseError, "trace line " + std::to_string(lineno) + " needs 13 fields");
    TraceRow r;
    r.k = static_cast<int>(vals[0]);
    r.mu = vals[1];
    r.alpha_bar = vals[2];
    r.alpha1 = vals[3];
    r.alpha2 = vals[4];
    r.delta = vals[5];
    r.tau = vals[6];
    r.kappa = vals[7];
    r.norm_r = vals[8];
    r.norm_s = vals[9];
    r.gamma = vals[10];
    r.nbr_dist = vals[11];
    r.ratio = vals[12];
    trace.push_back(r);
  }
  return trace;
}

std::string ops_to_json(const SdlcpOps& ops) {
  json j;
  j["n"] = ops.n;
  j["m"] = ops.m;
  j["n1"] = ops.n1;
  j["dim"] = ops.dim;
  j["A_hat"] = json::array();
  j["B_hat"] = json::array();
  for (std::size_t k = 0; k < ops.dim; ++k) {
    j["A_hat"].push_back(Vector(ops.A_hat.row(k).begin(), ops.A_hat.row(k).end()));
    j["B_hat"].push_back(Vector(ops.B_hat.row(k).begin(), ops.B_hat.row(k).end()));
  }
  return j.dump(2) + "\n";
}

}  // namespace sdfeas::io
