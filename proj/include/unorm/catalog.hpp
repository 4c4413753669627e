#pragma once

#include <map>
#include <regex>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace unorm {

namespace detail {

inline Mat E(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline Mat shift_power(int n, int k) {
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i + k < n; ++i) m(i, i + k) = 1.0;
  return m;
}

inline AlgebraDef make_ipsg(int m, int n) {
  AlgebraDef A;
  A.name = "ipsg(" + std::to_string(m) + "," + std::to_string(n) + ")";
  A.dim = 1 + m + n;
  A.rule = {RuleKind::ipsg, m, n};
  const int d = A.dim;
  A.sc.assign(static_cast<size_t>(d) * d * d, 0.0);
  A.c(0, 0, 0) = 1.0;
  for (int a = 1; a < d; ++a) {
    A.c(0, a, a) = 1.0;
    A.c(a, 0, a) = 1.0;
    A.c(a, a, 0) = a <= m ? 1.0 : -1.0;
  }
  A.unity = Vec::Unit(d, 0);
  return A;
}

inline AlgebraDef make_quaternions() {
  // basis 1,i,j,k
  AlgebraDef Q;
  Q.name = "H";
  Q.dim = 4;
  Q.sc.assign(64, 0.0);
  const int tbl[4][4][2] = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                            {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                            {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                            {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Q.c(i, j, tbl[i][j][0]) = tbl[i][j][1];
  Q.unity = Vec::Unit(4, 0);
  Q.matrix_rep = left_regular_rep(Q);
  return Q;
}

inline AlgebraDef make_full_matrix(int n) {
  // column-stacked coordinates: index i + n*j is entry (i,j)
  std::vector<Mat> B;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) B.push_back(E(n, i, j));
  Vec one = Vec::Zero(n * n);
  for (int i = 0; i < n; ++i) one[i + n * i] = 1.0;
  return from_matrix_rep("R" + std::to_string(n) + "x" + std::to_string(n), B, one);
}

inline AlgebraDef make_oplus(int n) {
  std::vector<Mat> B;
  for (int i = 0; i < n; ++i) B.push_back(E(n, i, i));
  return from_matrix_rep("oplus" + std::to_string(n), B, Vec::Ones(n));
}

inline AlgebraDef make_toeplitz(int n, std::string name) {
  std::vector<Mat> B;
  for (int k = 0; k < n; ++k) B.push_back(shift_power(n, k));
  return from_matrix_rep(std::move(name), B, Vec::Unit(n, 0));
}

inline bool parse_int_suffix(const std::string& s, const std::string& prefix, int& n) {
  if (s.rfind(prefix, 0) != 0 || s.size() == prefix.size()) return false;
  std::string rest = s.substr(prefix.size());
  for (char ch : rest)
    if (ch < '0' || ch > '9') return false;
  n = std::stoi(rest);
  return true;
}

inline const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {
      {"A2", "C"},     {"A3", "split-C"}, {"A4", "R+R"},   {"A5", "dual"},  {"A6", "H"},
      {"A10", "tri3"}, {"A11", "toep3"},  {"A12", "tri4"}, {"A13", "tri5"},
      {"D", "dual"}};
  return a;
}

}  // namespace detail

inline std::string canonical_name(const std::string& name) {
  auto it = detail::aliases().find(name);
  return it == detail::aliases().end() ? name : it->second;
}

inline AlgebraDef lookup(const std::string& raw) {
  using detail::E;
  const std::string name = canonical_name(raw);
  int n = 0;
  if (name == "R") return from_matrix_rep("R", {Mat::Identity(1, 1)}, Vec::Ones(1));
  if (name == "C") {
    Mat J(2, 2);
    J << 0, -1, 1, 0;
    return from_matrix_rep("C", {Mat::Identity(2, 2), J}, Vec::Unit(2, 0));
  }
  if (name == "split-C") {
    Mat J(2, 2);
    J << 0, 1, 1, 0;
    return from_matrix_rep("split-C", {Mat::Identity(2, 2), J}, Vec::Unit(2, 0));
  }
  if (name == "R+R") return from_matrix_rep("R+R", {E(2, 0, 0), E(2, 1, 1)}, Vec::Ones(2));
  if (name == "dual") return from_matrix_rep("dual", {Mat::Identity(2, 2), E(2, 0, 1)}, Vec::Unit(2, 0));
  if (name == "H") return detail::make_quaternions();
  if (name == "R2x2") return detail::make_full_matrix(2);
  if (name == "R3x3") return detail::make_full_matrix(3);
  if (detail::parse_int_suffix(name, "oplus", n) && n >= 1 && n <= 6) return detail::make_oplus(n);
  if (detail::parse_int_suffix(name, "uT", n) && n >= 1 && n <= 6)
    return detail::make_toeplitz(n, "uT" + std::to_string(n));
  if (name == "tri3") {
    Vec one(3);
    one << 1, 1, 0;
    return from_matrix_rep("tri3", {E(2, 0, 0), E(2, 1, 1), E(2, 0, 1)}, one);
  }
  if (name == "toep3") return detail::make_toeplitz(3, "toep3");
  if (name == "tri4") {
    return from_matrix_rep("tri4", {Mat::Identity(3, 3), E(3, 1, 2), E(3, 0, 1), E(3, 0, 2)},
                           Vec::Unit(4, 0));
  }
  if (name == "tri5") {
    Vec one(5);
    one << 1, 1, 0, 0, 0;
    return from_matrix_rep("tri5",
                           {E(3, 0, 0) + E(3, 1, 1), E(3, 2, 2), E(3, 1, 2), E(3, 0, 1), E(3, 0, 2)},
                           one);
  }
  static const std::regex ipsg_re(R"(ipsg\((\d+),(\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, ipsg_re)) {
    int p = std::stoi(m[1]), q = std::stoi(m[2]);
    if (p + q >= 1 && p + q <= 4) return detail::make_ipsg(p, q);
  }
  throw UnknownAlgebra("no catalog entry named '" + raw + "'");
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> v = {"R", "C", "split-C", "R+R", "dual", "H", "R2x2", "R3x3"};
  for (int n = 2; n <= 6; ++n) v.push_back("oplus" + std::to_string(n));
  v.insert(v.end(), {"tri3", "toep3", "tri4", "tri5"});
  for (int n = 2; n <= 6; ++n) v.push_back("uT" + std::to_string(n));
  for (int s = 1; s <= 4; ++s)
    for (int p = s; p >= 0; --p) v.push_back("ipsg(" + std::to_string(p) + "," + std::to_string(s - p) + ")");
  return v;
}

inline std::vector<AlgebraDef> catalog() {
  std::vector<AlgebraDef> out;
  for (const auto& n : catalog_names()) out.push_back(lookup(n));
  return out;
}

}  // namespace unorm
