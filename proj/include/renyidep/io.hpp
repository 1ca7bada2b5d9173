#pragma once

// Text formats for joint PMFs. The structured form carries labels and a
// row-major matrix:
//
//     # comment
//     x_labels: a b c
//     y_labels: u v w
//     matrix:
//     0.43 0.43 0.02
//     0.01 0.01 0.04
//     0.01 0.01 0.04
//
// A plain headerless matrix (rows of decimals, one x per line) is also
// accepted; labels are generated as x0... / y0.... A single row is a bare
// marginal. Masses off by at most 1e-9 are renormalized on load.

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyidep/pmf.hpp"

namespace renyidep {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline std::vector<double> parse_row(const std::string& line, std::size_t lineno) {
  std::vector<double> row;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      row.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": '" + tok +
                               "' is not a decimal probability");
    }
  }
  return row;
}

}  // namespace detail

inline JointPmf read_joint_pmf(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = detail::strip_comment(raw);
    if (!s.empty()) lines.emplace_back(lineno, std::move(s));
  }
  if (lines.empty()) throw std::runtime_error("empty PMF file");

  std::vector<std::string> x_labels, y_labels;
  std::size_t first_row = 0;
  if (lines[0].second.rfind("x_labels:", 0) == 0) {
    if (lines.size() < 3 || lines[1].second.rfind("y_labels:", 0) != 0 ||
        lines[2].second.rfind("matrix:", 0) != 0) {
      throw std::runtime_error("structured PMF file must be x_labels:, y_labels:, matrix:");
    }
    x_labels = detail::split_tokens(lines[0].second.substr(9));
    y_labels = detail::split_tokens(lines[1].second.substr(9));
    first_row = 3;
  }

  std::vector<std::vector<double>> rows;
  for (std::size_t i = first_row; i < lines.size(); ++i) {
    rows.push_back(detail::parse_row(lines[i].second, lines[i].first));
  }
  if (rows.empty()) throw std::runtime_error("PMF file has no matrix rows");
  for (const auto& r : rows) {
    if (r.size() != rows[0].size()) throw std::runtime_error("PMF matrix is ragged");
  }

  if (x_labels.empty()) x_labels = detail::indexed_labels("x", rows.size());
  if (y_labels.empty()) y_labels = detail::indexed_labels("y", rows[0].size());
  if (x_labels.size() != rows.size() || y_labels.size() != rows[0].size()) {
    throw std::runtime_error("PMF label counts do not match the matrix shape");
  }

  std::vector<double> flat;
  flat.reserve(rows.size() * rows[0].size());
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  try {
    return JointPmf(std::move(x_labels), std::move(y_labels), std::move(flat));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid PMF file: ") + e.what());
  }
}

inline void write_joint_pmf(std::ostream& out, const JointPmf& j) {
  out << "x_labels:";
  for (const auto& l : j.x_labels()) out << ' ' << l;
  out << "\ny_labels:";
  for (const auto& l : j.y_labels()) out << ' ' << l;
  out << "\nmatrix:\n";
  char buf[40];
  for (std::size_t x = 0; x < j.nx(); ++x) {
    for (std::size_t y = 0; y < j.ny(); ++y) {
      std::snprintf(buf, sizeof buf, "%.17g", j.at(x, y));
      out << (y ? " " : "") << buf;
    }
    out << '\n';
  }
}

inline JointPmf load_joint_pmf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return read_joint_pmf(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void save_joint_pmf(const std::string& path, const JointPmf& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_joint_pmf(out, j);
}

}  // namespace renyidep
