// Command-line front end: bounds, norm estimates, moments, trace
// enumeration, graph generation, Khintchine checks, certification, sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epsfree/epsfree.hpp"

namespace {

using namespace epsfree;

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kResourceCap = 2, kCertifyFailed = 3 };

struct GraphSource {
  std::string path;
  std::string family;
  std::vector<double> params;
  std::optional<std::uint64_t> seed;

  Graph load() const {
    if (path.empty() == family.empty()) {
      throw BadParams("give exactly one graph source: --graph FILE or --family NAME");
    }
    if (!path.empty()) return load_graph(path);
    return generate_family(parse_family(family), params, seed);
  }
};

struct Budgets {
  std::size_t depth = 8;
  std::size_t order = 16;
  std::size_t clique_n = 10000;
  double tol = 1e-10;

  EstimateBudget estimate() const {
    if (depth < 1 || order < 2 || clique_n < 2 || !(tol > 0)) {
      throw BadParams("budgets must be positive: depth >= 1, order >= 2, clique-N >= 2, tol > 0");
    }
    return {depth, order, clique_n, tol, kDefaultBasisCap};
  }
};

void add_graph_source(CLI::App* cmd, GraphSource& src) {
  auto* file = cmd->add_option("--graph", src.path, "graph JSON file");
  auto* fam = cmd->add_option("--family", src.family,
                              "named family: empty, complete, cycle, complete_multipartite, "
                              "xy_model, erdos_renyi");
  file->excludes(fam);
  cmd->add_option("--params", src.params, "family parameters (erdos_renyi: d p)")->needs(fam);
  cmd->add_option("--seed", src.seed, "64-bit seed for erdos_renyi");
}

void add_budgets(CLI::App* cmd, Budgets& b) {
  cmd->add_option("--depth", b.depth, "Fock truncation depth")->capture_default_str();
  cmd->add_option("--order", b.order, "moment order for the moment-root method")
      ->capture_default_str();
  cmd->add_option("--clique-N", b.clique_n, "side length N of the clique test vector")
      ->capture_default_str();
  cmd->add_option("--tol", b.tol, "Lanczos relative residual tolerance")->capture_default_str();
}

// Aligned "key  value" rows.
void write_rows(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) os << k << std::string(width + 2 - k.size(), ' ') << v << '\n';
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string format_or(const std::string& requested, const char* fallback) {
  const std::string f = requested.empty() ? fallback : requested;
  if (f != "json" && f != "csv" && f != "table") {
    throw BadParams("unknown format '" + f + "' (json, csv, table)");
  }
  return f;
}

void emit_estimate(std::ostream& os, const NormEstimate& e, const std::string& format) {
  if (format == "json") {
    os << estimate_to_json(e).dump(2) << '\n';
  } else if (format == "csv") {
    os << "value,method,depth_or_order,certified_lower,residual,converged\n"
       << format_number(e.value) << ',' << method_name(e.method) << ',' << e.depth_or_order << ','
       << (e.certified_lower ? 1 : 0) << ',' << format_number(round12_raw(e.residual)) << ','
       << (e.converged ? 1 : 0) << '\n';
  } else {
    std::ostringstream residual;
    residual << round12_raw(e.residual);
    write_rows(os, {{"value", format_number(e.value)},
                    {"method", std::string(method_name(e.method))},
                    {"depth_or_order", std::to_string(e.depth_or_order)},
                    {"certified_lower", yes_no(e.certified_lower)},
                    {"residual", residual.str()},
                    {"converged", yes_no(e.converged)}});
  }
}

std::vector<std::size_t> parse_vertex_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(from_display_index(v));
    } catch (const std::logic_error&) {
      throw BadParams("--clique expects 1-based comma-separated vertices, got '" + text + "'");
    }
  }
  return out;
}

// ---- commands ----

int run_bounds(const GraphSource& src, const Budgets& b, bool numerical, const std::string& fmt) {
  const Graph g = src.load();
  ReportOptions opts;
  opts.numerical = numerical;
  if (numerical) opts.budget = b.estimate();
  const BoundsReport r = report(g, opts);
  const std::string f = format_or(fmt, "table");
  if (f == "json") {
    std::cout << report_to_json(r).dump(2) << '\n';
  } else if (f == "csv") {
    std::cout << kReportCsvHeader << '\n' << report_csv_row(r) << '\n';
  } else {
    write_report_table(std::cout, r);
  }
  return kOk;
}

int run_norm(const GraphSource& src, const Budgets& b, const std::string& method,
             const std::string& clique, const std::string& fmt) {
  const Graph g = src.load();
  const EstimateBudget budget = b.estimate();
  NormEstimate e;
  if (method == "best") {
    e = best_lower(g, budget);
  } else {
    switch (parse_method(method)) {
      case EstimateMethod::Lanczos:
        e = truncated_norm(g, b.depth, b.tol);
        break;
      case EstimateMethod::MomentRoot:
        if (b.order % 2 != 0) throw BadParams("--order must be even for moment_root");
        e.method = EstimateMethod::MomentRoot;
        e.depth_or_order = b.order;
        e.value = moment_norm_lower(g, b.order);
        break;
      case EstimateMethod::CliqueVector:
        e = clique_vector_bound(g, clique.empty() ? clique_number(g).witness : parse_vertex_list(clique),
                                b.clique_n);
        break;
    }
  }
  emit_estimate(std::cout, e, format_or(fmt, "table"));
  return kOk;
}

int run_moments(const GraphSource& src, std::size_t order, const std::string& fmt) {
  if (order < 2) throw BadParams("--order must be >= 2");
  const MomentSequence m = sum_moments(src.load(), order);
  const std::string f = format_or(fmt, "csv");
  if (f == "json") {
    std::cout << moments_to_json(m).dump(2) << '\n';
  } else if (f == "csv") {
    write_moments_csv(std::cout, m);
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t k = 2; k <= m.max_order(); k += 2) {
      rows.emplace_back("m_" + std::to_string(k), m.values[k].str());
    }
    write_rows(std::cout, rows);
  }
  return kOk;
}

int run_enumerate(const GraphSource& src, std::size_t depth, const std::string& dump,
                  const std::string& fmt) {
  const Graph g = src.load();
  const TraceEnumeration e = enumerate_traces(g, depth);
  const auto counts = e.counts();
  const std::string f = format_or(fmt, "csv");
  if (f == "json") {
    std::cout << json{{"counts", counts}, {"total", e.total()}, {"depth", depth}}.dump(2) << '\n';
  } else if (f == "csv") {
    std::cout << "length,count\n";
    for (std::size_t n = 0; n < counts.size(); ++n) std::cout << n << ',' << counts[n] << '\n';
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t n = 0; n < counts.size(); ++n) {
      rows.emplace_back("length " + std::to_string(n), std::to_string(counts[n]));
    }
    rows.emplace_back("total", std::to_string(e.total()));
    write_rows(std::cout, rows);
  }
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw InputError("cannot write '" + dump + "'");
    auto fs = std::make_shared<const FockSpace>(g, depth);
    write_coordinate(out, SumOperator(fs).to_sparse());
  }
  return kOk;
}

int run_generate(const std::string& family, const std::vector<double>& params,
                 std::optional<std::uint64_t> seed, const std::string& output) {
  const Graph g = generate_family(parse_family(family), params, seed);
  if (output.empty()) {
    std::cout << graph_to_json(g).dump() << '\n';
  } else {
    save_graph(g, output);
  }
  return kOk;
}

int run_khintchine(const GraphSource& src, const std::string& coeffs, std::size_t depth,
                   const std::string& variant_name, double tol, const std::string& fmt) {
  const Graph g = src.load();
  const MatrixCoefficients c = load_coefficients(coeffs);
  KhintchineVariant variant;
  if (variant_name == "eigen") {
    variant = KhintchineVariant::Eigen;
  } else if (variant_name == "regular") {
    variant = KhintchineVariant::Regular;
  } else {
    throw BadParams("unknown variant '" + variant_name + "' (eigen, regular)");
  }
  if (depth < 1) throw BadParams("--depth must be >= 1");
  const KhintchineCheck k = khintchine_check(c, g, depth, variant, tol);
  const std::string f = format_or(fmt, "table");
  if (f == "json") {
    std::cout << json{{"variant", variant_name},
                      {"depth", depth},
                      {"lhs_lower", round12(k.lhs_lower)},
                      {"rhs", round12(k.rhs)},
                      {"margin", round12(k.margin)},
                      {"satisfied", k.satisfied},
                      {"estimate", estimate_to_json(k.estimate)}}
                     .dump(2)
              << '\n';
  } else if (f == "csv") {
    std::cout << "variant,depth,lhs_lower,rhs,margin,satisfied\n"
              << variant_name << ',' << depth << ',' << format_number(k.lhs_lower) << ','
              << format_number(k.rhs) << ',' << format_number(k.margin) << ','
              << (k.satisfied ? 1 : 0) << '\n';
  } else {
    write_rows(std::cout, {{"variant", variant_name},
                           {"depth", std::to_string(depth)},
                           {"lhs_lower", format_number(k.lhs_lower)},
                           {"rhs", format_number(k.rhs)},
                           {"margin", format_number(k.margin)},
                           {"satisfied", yes_no(k.satisfied)}});
  }
  return k.satisfied ? kOk : kCertifyFailed;
}

int run_certify(const GraphSource& src, const Budgets& b, const std::string& fmt) {
  CertifyOptions opts;
  opts.budget = b.estimate();
  const CertifyResult r = certify(src.load(), opts);
  const std::string f = format_or(fmt, "table");
  if (f == "json") {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    std::cout << json{{"passed", r.passed()}, {"checks", std::move(checks)},
                      {"report", report_to_json(r.report)}}
                     .dump(2)
              << '\n';
  } else if (f == "csv") {
    std::cout << "check,passed\n";
    for (const auto& c : r.checks) std::cout << c.name << ',' << (c.passed ? 1 : 0) << '\n';
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    std::size_t failed = 0;
    for (const auto& c : r.checks) {
      failed += c.passed ? 0 : 1;
      rows.emplace_back(c.name, (c.passed ? "pass" : "FAIL") +
                                    (c.detail.empty() ? std::string() : "  " + c.detail));
    }
    write_rows(std::cout, rows);
    std::cout << (failed == 0 ? "certified: all " + std::to_string(r.checks.size()) + " checks pass"
                              : "NOT certified: " + std::to_string(failed) + " of " +
                                    std::to_string(r.checks.size()) + " checks fail")
              << '\n';
  }
  return r.passed() ? kOk : kCertifyFailed;
}

int run_sweep(const std::string& family, std::vector<double> rest, std::size_t from,
              std::size_t to, std::size_t step, std::optional<std::uint64_t> seed,
              const Budgets& b, bool numerical, const std::string& fmt) {
  if (from > to || step == 0) throw BadParams("sweep needs --from <= --to and --step >= 1");
  const Family fam = parse_family(family);
  ReportOptions opts;
  opts.numerical = numerical;
  if (numerical) opts.budget = b.estimate();
  const std::string f = format_or(fmt, "csv");
  json all = json::array();
  if (f == "csv") std::cout << "param," << kReportCsvHeader << '\n';
  for (std::size_t p = from; p <= to; p += step) {
    std::vector<double> params{static_cast<double>(p)};
    params.insert(params.end(), rest.begin(), rest.end());
    const BoundsReport r = report(generate_family(fam, params, seed), opts);
    if (f == "csv") {
      std::cout << p << ',' << report_csv_row(r) << '\n';
    } else if (f == "json") {
      all.push_back({{"param", p}, {"report", report_to_json(r)}});
    } else {
      std::cout << "== " << family << " param=" << p << '\n';
      write_report_table(std::cout, r);
    }
  }
  if (f == "json") std::cout << all.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm bounds and numerics for sums of epsilon-free semicircular elements"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  std::size_t threads = 0;
  app.add_option("--format", format, "output format: json, csv or table")->expected(1);
  app.add_option("--threads", threads,
                 std::string("worker threads (default: $") + kThreadsEnvVar +
                     ", else all cores)");

  GraphSource src;
  Budgets budgets;
  bool numerical = false;

  auto* bounds = app.add_subcommand("bounds", "closed-form upper and lower bounds with checks");
  add_graph_source(bounds, src);
  add_budgets(bounds, budgets);
  bounds->add_flag("--numerical", numerical, "add the best numerical lower bound");

  std::string method = "lanczos", clique;
  auto* norm = app.add_subcommand("norm", "numerical lower bound on the norm of the sum");
  add_graph_source(norm, src);
  add_budgets(norm, budgets);
  norm->add_option("--method", method, "lanczos, moment_root, clique_vector or best")
      ->capture_default_str();
  norm->add_option("--clique", clique, "clique for clique_vector, 1-based, e.g. 1,3");

  std::size_t order = 16;
  auto* moments = app.add_subcommand("moments", "exact moments of the sum");
  add_graph_source(moments, src);
  moments->add_option("--order", order, "highest moment order")->capture_default_str();

  std::size_t depth = 4;
  std::string dump;
  auto* enumerate = app.add_subcommand("enumerate", "count normal-form words per length");
  add_graph_source(enumerate, src);
  enumerate->add_option("--depth", depth, "maximum word length")->capture_default_str();
  enumerate->add_option("--dump-operator", dump, "write the truncated sum in coordinate form");

  std::string gen_family, output;
  std::vector<double> gen_params;
  std::optional<std::uint64_t> gen_seed;
  auto* generate = app.add_subcommand("generate", "emit a named graph as JSON");
  generate->add_option("family", gen_family, "family name")->required();
  generate->add_option("params", gen_params, "family parameters");
  generate->add_option("--seed", gen_seed, "64-bit seed for erdos_renyi");
  generate->add_option("--output", output, "write to a file instead of stdout");

  std::string coeffs, variant = "eigen";
  std::size_t k_depth = 8;
  double k_tol = 1e-10;
  auto* khintchine = app.add_subcommand("khintchine", "check the operator-coefficient inequality");
  add_graph_source(khintchine, src);
  khintchine->add_option("--coeffs", coeffs, "coefficient JSON file")->required();
  khintchine->add_option("--depth", k_depth, "Fock truncation depth")->capture_default_str();
  khintchine->add_option("--variant", variant, "eigen or regular")->capture_default_str();
  khintchine->add_option("--tol", k_tol, "Lanczos tolerance")->capture_default_str();

  Budgets certify_budgets{6, 12, 10000, 1e-10};
  auto* certify_cmd = app.add_subcommand("certify", "run every invariant check on one graph");
  add_graph_source(certify_cmd, src);
  add_budgets(certify_cmd, certify_budgets);

  std::string sweep_family;
  std::vector<double> sweep_rest;
  std::size_t from = 0, to = 0, step = 1;
  std::optional<std::uint64_t> sweep_seed;
  auto* sweep = app.add_subcommand("sweep", "bounds CSV over a family's first parameter");
  sweep->add_option("--family", sweep_family, "family name")->required();
  sweep->add_option("--from", from, "first value")->required();
  sweep->add_option("--to", to, "last value")->required();
  sweep->add_option("--step", step, "increment")->capture_default_str();
  sweep->add_option("--params", sweep_rest, "parameters after the swept one");
  sweep->add_option("--seed", sweep_seed, "64-bit seed for erdos_renyi");
  add_budgets(sweep, budgets);
  sweep->add_flag("--numerical", numerical, "add the best numerical lower bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    if (*bounds) return run_bounds(src, budgets, numerical, format);
    if (*norm) return run_norm(src, budgets, method, clique, format);
    if (*moments) return run_moments(src, order, format);
    if (*enumerate) return run_enumerate(src, depth, dump, format);
    if (*generate) return run_generate(gen_family, gen_params, gen_seed, output);
    if (*khintchine) return run_khintchine(src, coeffs, k_depth, variant, k_tol, format);
    if (*certify_cmd) return run_certify(src, certify_budgets, format);
    if (*sweep) {
      return run_sweep(sweep_family, sweep_rest, from, to, step, sweep_seed, budgets, numerical,
                       format);
    }
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const SolverFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}
