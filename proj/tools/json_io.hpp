#pragma once

#include <filesystem>
#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>
#include <unorm/algebra.hpp>
#include <unorm/catalog.hpp>
#include <unorm/protonorm.hpp>
#include <unorm/table.hpp>

namespace unorm::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

inline json to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

inline json to_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) rows.push_back(to_json(Vec(M.row(i).transpose())));
  return rows;
}

inline Vec vec_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidAlgebra("matrix must be a non-empty array of rows");
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = static_cast<Eigen::Index>(j[0].size());
  Mat M(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != c) throw InvalidAlgebra("ragged matrix rows");
    for (Eigen::Index k = 0; k < c; ++k) M(i, k) = j[i][k].get<double>();
  }
  return M;
}

inline InverseRule rule_from_tag(const std::string& tag) {
  InverseRule r;
  std::smatch m;
  if (tag == "associative_solve") return r;
  if (tag == "star_algebra") {
    r.kind = RuleKind::star_algebra;
    return r;
  }
  static const std::regex ipsg(R"(ipsg\((\d+),(\d+)\))");
  if (std::regex_match(tag, m, ipsg)) {
    r.kind = RuleKind::ipsg;
    r.m = std::stoi(m[1]);
    r.n = std::stoi(m[2]);
    return r;
  }
  throw InvalidAlgebra("unknown inverse_rule '" + tag + "'");
}

inline json algebra_to_json(const AlgebraDef& A) {
  json j;
  j["dim"] = A.dim;
  j["structure_constants"] = A.sc;
  j["unity"] = to_json(A.unity);
  if (!A.matrix_rep.empty()) {
    json reps = json::array();
    for (const auto& B : A.matrix_rep) reps.push_back(to_json(B));
    j["matrix_rep"] = reps;
  }
  j["inverse_rule"] = A.rule.tag();
  if (A.one_norm_sq_override) j["one_norm_sq"] = *A.one_norm_sq_override;
  return j;
}

inline AlgebraDef algebra_from_json(const json& j, const std::string& name) {
  AlgebraDef A;
  try {
    A.name = name;
    A.dim = j.at("dim").get<int>();
    A.sc = j.at("structure_constants").get<std::vector<double>>();
    A.unity = vec_from_json(j.at("unity"));
    if (j.contains("matrix_rep"))
      for (const auto& B : j["matrix_rep"]) A.matrix_rep.push_back(mat_from_json(B));
    A.rule = rule_from_tag(j.at("inverse_rule").get<std::string>());
    if (j.contains("one_norm_sq")) A.one_norm_sq_override = j["one_norm_sq"].get<double>();
  } catch (const json::exception& e) {
    throw InvalidAlgebra(name + ": " + e.what());
  }
  const ValidationReport v = validate(A);
  if (!v.ok())
    throw InvalidAlgebra(name + ": unity residual " + std::to_string(v.unity_residual) + ", rep residual " +
                         std::to_string(v.rep_residual));
  return A;
}

// Catalog id, or a path to an algebra-definition file.
inline AlgebraDef resolve_algebra(const std::string& id) {
  if (std::filesystem::is_regular_file(id)) return algebra_from_json(read_json_file(id), id);
  return lookup(id);
}

inline json family_to_json(const ProtoNormFamily& F) {
  json j;
  j["algebra"] = F.algebra.name;
  json basis = json::array();
  for (const auto& B : F.basis) basis.push_back(to_json(B));
  j["basis"] = basis;
  j["normalized_point"] = F.normalized_point ? to_json(*F.normalized_point) : json(nullptr);
  json dirs = json::array();
  for (const auto& B : F.normalized_directions) dirs.push_back(to_json(B));
  j["normalized_directions"] = dirs;
  return j;
}

inline json cell_to_json(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto d = std::get_if<double>(&c)) return *d;
  if (auto i = std::get_if<long long>(&c)) return *i;
  return std::get<bool>(c);
}

inline json table_to_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o;
    for (size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = cell_to_json(r[i]);
    rows.push_back(o);
  }
  json j;
  j["name"] = t.name;
  j["pass"] = t.pass;
  j["rows"] = rows;
  return j;
}

// A list of coordinate vectors, either bare or under "ideal".
inline std::vector<Vec> ideal_from_json(const json& j) {
  const json& list = j.is_object() ? j.at("ideal") : j;
  std::vector<Vec> out;
  for (const auto& v : list) out.push_back(vec_from_json(v));
  return out;
}

}  // namespace unorm::io
