#include "nilflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nilflow {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  require(!doc.is_discarded(), Err::Schema, "input is not valid JSON");
  return doc;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed) {
  require(doc.is_object(), Err::Schema, "document root must be a JSON object");
  for (const auto& [key, _] : doc.items())
    require(allowed.count(key) == 1, Err::Schema, "unknown key '" + key + "'");
}

Mat parse_matrix(const json& rows, int nrows, int ncols, const std::string& what) {
  require(rows.is_array() && static_cast<int>(rows.size()) == nrows, Err::Schema,
          what + " must be an array of " + std::to_string(nrows) + " rows");
  Mat M(nrows, ncols);
  for (int r = 0; r < nrows; ++r) {
    const auto& row = rows[static_cast<size_t>(r)];
    require(row.is_array() && static_cast<int>(row.size()) == ncols, Err::Schema,
            what + " rows must have " + std::to_string(ncols) + " entries");
    for (int c = 0; c < ncols; ++c) {
      require(row[static_cast<size_t>(c)].is_number(), Err::Schema,
              what + " entries must be numbers");
      M(r, c) = row[static_cast<size_t>(c)].get<double>();
    }
  }
  return M;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Err::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), Err::Io, "read failure on '" + path + "'");
  return ss.str();
}

}  // namespace

std::pair<StepTwoAlgebra, ScalarProduct> load_algebra(const std::string& json_text,
                                                      const Tolerances& tol) {
  const json doc = parse_json(json_text);
  reject_unknown_keys(doc, {"dim", "basis", "brackets", "metric"});
  require(doc.contains("dim") && doc["dim"].is_number_integer(), Err::Schema,
          "'dim' must be an integer");
  const int dim = doc["dim"].get<int>();
  require(dim >= 1, Err::Schema, "'dim' must be positive");

  std::vector<std::string> labels;
  require(doc.contains("basis") && doc["basis"].is_array() &&
              static_cast<int>(doc["basis"].size()) == dim,
          Err::Schema, "'basis' must list dim names");
  for (const auto& name : doc["basis"]) {
    require(name.is_string(), Err::Schema, "basis names must be strings");
    labels.push_back(name.get<std::string>());
  }

  std::vector<BracketTerm> terms;
  require(doc.contains("brackets") && doc["brackets"].is_array(), Err::Schema,
          "'brackets' must be an array");
  std::set<std::pair<int, int>> seen;
  for (const auto& entry : doc["brackets"]) {
    reject_unknown_keys(entry, {"i", "j", "out"});
    require(entry.contains("i") && entry["i"].is_number_integer() && entry.contains("j") &&
                entry["j"].is_number_integer() && entry.contains("out") &&
                entry["out"].is_array(),
            Err::Schema, "bracket entries need integer 'i', 'j' and an 'out' array");
    const int i = entry["i"].get<int>();
    const int j = entry["j"].get<int>();
    require(0 <= i && i < j && j < dim, Err::Schema, "bracket entries require 0 <= i < j < dim");
    require(seen.insert({i, j}).second, Err::Schema, "duplicate bracket entry");
    std::set<int> seen_k;
    for (const auto& o : entry["out"]) {
      reject_unknown_keys(o, {"k", "c"});
      require(o.contains("k") && o["k"].is_number_integer() && o.contains("c") &&
                  o["c"].is_number(),
              Err::Schema, "bracket outputs need integer 'k' and numeric 'c'");
      const int k = o["k"].get<int>();
      require(0 <= k && k < dim, Err::Schema, "bracket output index out of range");
      require(seen_k.insert(k).second, Err::Schema, "duplicate output index in bracket entry");
      terms.push_back({i, j, k, o["c"].get<double>()});
    }
  }

  require(doc.contains("metric"), Err::Schema, "'metric' is required");
  const Mat gram = parse_matrix(doc["metric"], dim, dim, "'metric'");

  auto algebra = StepTwoAlgebra::from_terms(dim, std::move(labels), std::move(terms), tol);
  auto product = ScalarProduct::from_gram(gram, tol);
  return {std::move(algebra), std::move(product)};
}

std::pair<StepTwoAlgebra, ScalarProduct> load_algebra_file(const std::string& path,
                                                           const Tolerances& tol) {
  return load_algebra(read_file(path), tol);
}

std::string algebra_to_json(const StepTwoAlgebra& A, const ScalarProduct& P) {
  nlohmann::ordered_json doc;
  doc["dim"] = A.dim();
  doc["basis"] = A.labels();
  auto brackets = nlohmann::ordered_json::array();
  for (int i = 0; i < A.dim(); ++i)
    for (int j = i + 1; j < A.dim(); ++j) {
      auto out = nlohmann::ordered_json::array();
      for (const auto& t : A.terms())
        if (t.i == i && t.j == j) out.push_back({{"k", t.k}, {"c", t.c}});
      if (!out.empty()) brackets.push_back({{"i", i}, {"j", j}, {"out", out}});
    }
  doc["brackets"] = brackets;
  auto metric = nlohmann::ordered_json::array();
  for (int r = 0; r < A.dim(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < A.dim(); ++c) row.push_back(P.gram(r, c));
    metric.push_back(row);
  }
  doc["metric"] = metric;
  return doc.dump(2) + "\n";
}

MetricBlocks load_blocks_file(const std::string& path, const Splitting& S) {
  const json doc = parse_json(read_file(path));
  reject_unknown_keys(doc, {"g11", "g12", "g21", "g22"});
  const int m = S.dim_v();
  const int dz = S.dim_z();
  for (const char* key : {"g11", "g12", "g21", "g22"})
    require(doc.contains(key), Err::Schema, std::string("'") + key + "' is required");
  return MetricBlocks::validated(S, parse_matrix(doc["g11"], m, m, "'g11'"),
                                 parse_matrix(doc["g12"], m, dz, "'g12'"),
                                 parse_matrix(doc["g21"], dz, m, "'g21'"),
                                 parse_matrix(doc["g22"], dz, dz, "'g22'"));
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  const bool with_group = !tr.group_states.empty();
  const int d = tr.states.empty() ? 0 : static_cast<int>(tr.states.front().size());
  os << "t";
  for (int i = 1; i <= d; ++i) os << ",Y_" << i;
  if (with_group)
    for (int i = 1; i <= d; ++i) os << ",q_" << i;
  os << ",H,dH,dJ\n";
  for (size_t k = 0; k < tr.times.size(); ++k) {
    os << format_double(tr.times[k]);
    for (int i = 0; i < d; ++i) os << "," << format_double(tr.states[k](i));
    if (with_group)
      for (int i = 0; i < d; ++i) os << "," << format_double(tr.group_states[k].expcoord(i));
    os << "," << format_double(tr.hamiltonian[k]) << "," << format_double(tr.energy_drift[k])
       << "," << format_double(tr.momentum_drift[k]) << "\n";
  }
}

void write_matrix_csv(std::ostream& os, const Mat& M) {
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (c) os << ",";
      os << format_double(M(r, c));
    }
    os << "\n";
  }
}

}  // namespace nilflow
