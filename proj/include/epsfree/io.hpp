#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsfree/errors.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/norm_bounds.hpp"
#include "epsfree/spectral_estimator.hpp"

namespace epsfree {

using json = nlohmann::json;

/// Twelve significant digits, shortest form. Magnitudes below 1e-12 are
/// solver noise around an exact zero and print as 0.
inline std::string format_number(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// `v` rounded to twelve significant digits, so that JSON output (which
/// prints the shortest round-trip form) carries at most twelve digits.
inline double round12(double v) { return std::stod(format_number(v)); }

/// Like round12 but keeps tiny magnitudes (residuals, tolerances).
inline double round12_raw(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

// ---- graph JSON: {"d": <int>, "edges": [[i, j], ...]}, 0-based, i < j ----

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return json{{"d", g.d()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("graph: expected a JSON object");
  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<long long>() < 1) {
    throw ParseError("graph.d: expected a positive integer");
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw ParseError("graph.edges: expected an array");
  }
  const auto d = j["d"].get<std::size_t>();
  std::vector<Edge> edges;
  const auto& arr = j["edges"];
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& e = arr[k];
    const std::string where = "graph.edges[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ParseError(where + ": expected [i, j] with integer entries");
    }
    const long long a = e[0].get<long long>(), b = e[1].get<long long>();
    if (a < 0 || b < 0) throw ParseError(where + ": negative vertex index");
    edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  try {
    return Graph::from_edges(d, edges);
  } catch (const GraphError& err) {
    throw ParseError(std::string("graph: ") + err.what());
  }
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(source + ": " + err.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Graph load_graph(const std::string& path) {
  return graph_from_json(parse_json_text(read_file(path), path));
}

inline void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << graph_to_json(g).dump() << '\n';
}

// ---- coefficient JSON: {"k": int, "matrices": [[[[re, im] x k] x k] x d]} ----

inline MatrixCoefficients coefficients_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("coefficients: expected a JSON object");
  if (!j.contains("k") || !j["k"].is_number_integer() || j["k"].get<long long>() < 1) {
    throw ParseError("coefficients.k: expected a positive integer");
  }
  if (!j.contains("matrices") || !j["matrices"].is_array()) {
    throw ParseError("coefficients.matrices: expected an array");
  }
  MatrixCoefficients c;
  c.k = j["k"].get<std::size_t>();
  const auto k = static_cast<Eigen::Index>(c.k);
  const auto& mats = j["matrices"];
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const std::string where = "coefficients.matrices[" + std::to_string(i) + "]";
    const auto& m = mats[i];
    if (!m.is_array() || m.size() != c.k) {
      throw ParseError(where + ": expected " + std::to_string(c.k) + " rows");
    }
    Eigen::MatrixXcd a(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      const auto& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != c.k) {
        throw ParseError(where + "[" + std::to_string(r) + "]: expected " +
                         std::to_string(c.k) + " entries");
      }
      for (Eigen::Index s = 0; s < k; ++s) {
        const auto& z = row[static_cast<std::size_t>(s)];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw ParseError(where + "[" + std::to_string(r) + "][" + std::to_string(s) +
                           "]: expected [re, im]");
        }
        a(r, s) = {z[0].get<double>(), z[1].get<double>()};
      }
    }
    c.matrices.push_back(std::move(a));
  }
  return c;
}

inline json coefficients_to_json(const MatrixCoefficients& c) {
  json mats = json::array();
  for (const auto& a : c.matrices) {
    json m = json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index s = 0; s < a.cols(); ++s) row.push_back({a(r, s).real(), a(r, s).imag()});
      m.push_back(std::move(row));
    }
    mats.push_back(std::move(m));
  }
  return json{{"k", c.k}, {"matrices", std::move(mats)}};
}

inline MatrixCoefficients load_coefficients(const std::string& path) {
  return coefficients_from_json(parse_json_text(read_file(path), path));
}

// ---- reports ----

inline json optional_number(const std::optional<double>& v) {
  return v ? json(round12(*v)) : json(nullptr);
}

inline json estimate_to_json(const NormEstimate& e) {
  return json{{"value", round12(e.value)},
              {"method", std::string(method_name(e.method))},
              {"depth_or_order", e.depth_or_order},
              {"certified_lower", e.certified_lower},
              {"residual", round12_raw(e.residual)},
              {"converged", e.converged}};
}

inline json report_to_json(const BoundsReport& r) {
  json witness = json::array();
  for (std::size_t v : r.clique_witness) witness.push_back(v);
  json flags = json::array();
  for (const auto& f : r.flags) flags.push_back({{"name", f.name}, {"passed", f.passed}});
  return json{
      {"d", r.d},
      {"lambda1", round12(r.lambda1)},
      {"lambda2", optional_number(r.lambda2)},
      {"omega", r.omega},
      {"clique_witness", std::move(witness)},
      {"upper_eigen", round12(r.upper_eigen)},
      {"upper_regular", optional_number(r.upper_regular)},
      {"upper_clique_eigen", round12(r.upper_clique_eigen)},
      {"lower_clique", round12(r.lower_clique)},
      {"lower_free", round12(r.lower_free)},
      {"haar_upper", round12(r.haar_upper)},
      {"benchmark_clique_khintchine", round12(r.benchmark_clique_khintchine)},
      {"gap_identity", {{"lhs", round12(r.gap.lhs)}, {"rhs", round12(r.gap.rhs)}}},
      {"numerical_lower", r.numerical_lower ? estimate_to_json(*r.numerical_lower) : json(nullptr)},
      {"flags", std::move(flags)},
  };
}

/// Aligned two-column table.
inline void write_report_table(std::ostream& os, const BoundsReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("n/a");
  };
  std::string witness;
  for (std::size_t v : r.clique_witness) {
    if (!witness.empty()) witness += ',';
    witness += std::to_string(to_display_index(v));
  }
  rows.emplace_back("d", std::to_string(r.d));
  rows.emplace_back("lambda1", format_number(r.lambda1));
  rows.emplace_back("lambda2", opt(r.lambda2));
  rows.emplace_back("omega", std::to_string(r.omega));
  rows.emplace_back("clique_witness", "{" + witness + "}");
  rows.emplace_back("upper_eigen", format_number(r.upper_eigen));
  rows.emplace_back("upper_regular", opt(r.upper_regular));
  rows.emplace_back("upper_clique_eigen", format_number(r.upper_clique_eigen));
  rows.emplace_back("lower_clique", format_number(r.lower_clique));
  rows.emplace_back("lower_free", format_number(r.lower_free));
  rows.emplace_back("haar_upper", format_number(r.haar_upper));
  rows.emplace_back("benchmark_clique_khintchine", format_number(r.benchmark_clique_khintchine));
  rows.emplace_back("gap_identity", format_number(r.gap.lhs) + " = " + format_number(r.gap.rhs));
  if (r.numerical_lower) {
    rows.emplace_back("numerical_lower", format_number(r.numerical_lower->value) + " (" +
                                             std::string(method_name(r.numerical_lower->method)) +
                                             ")");
  }
  for (const auto& f : r.flags) rows.emplace_back("check " + f.name, f.passed ? "pass" : "FAIL");
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
}

inline const char* kReportCsvHeader =
    "d,lambda1,lambda2,omega,upper_eigen,upper_regular,upper_clique_eigen,lower_clique,"
    "lower_free,haar_upper,benchmark_clique_khintchine,numerical_lower,all_checks_pass";

/// One CSV row; absent values are empty fields.
inline std::string report_csv_row(const BoundsReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  std::ostringstream os;
  os << r.d << ',' << format_number(r.lambda1) << ',' << opt(r.lambda2) << ',' << r.omega << ','
     << format_number(r.upper_eigen) << ',' << opt(r.upper_regular) << ','
     << format_number(r.upper_clique_eigen) << ',' << format_number(r.lower_clique) << ','
     << format_number(r.lower_free) << ',' << format_number(r.haar_upper) << ','
     << format_number(r.benchmark_clique_khintchine) << ','
     << (r.numerical_lower ? format_number(r.numerical_lower->value) : std::string()) << ','
     << (r.all_passed() ? 1 : 0);
  return os.str();
}

/// Even orders with their exact moments (odd moments vanish).
inline void write_moments_csv(std::ostream& os, const MomentSequence& m) {
  os << "order,moment\n";
  for (std::size_t k = 2; k <= m.max_order(); k += 2) os << k << ',' << m.values[k].str() << '\n';
}

/// Moments as decimal strings (they overflow JSON numbers) with the
/// running roots m_k^{1/k}.
inline json moments_to_json(const MomentSequence& m) {
  json rows = json::array();
  for (std::size_t k = 2; k <= m.max_order(); k += 2) {
    rows.push_back({{"order", k}, {"moment", m.values[k].str()}, {"root", round12(moment_root(m, k))}});
  }
  return json{{"graph_id", m.graph_id}, {"max_order", m.max_order()}, {"moments", std::move(rows)}};
}

}  // namespace epsfree
