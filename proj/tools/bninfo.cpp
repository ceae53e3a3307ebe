// Apache License, Version 2.0, refer to LICENSE.txt
//
// Command-line front end: validate, compose, decompose, entropy, kl, learn,
// sample and bench over bninfo-net model files. Reports go to stdout as
// aligned text or, with --emit json, as a single JSON object.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bninfo/bench.hpp"
#include "bninfo/entropy.hpp"
#include "bninfo/fit.hpp"
#include "bninfo/global.hpp"
#include "bninfo/io.hpp"
#include "bninfo/junction_tree.hpp"
#include "bninfo/kl.hpp"
#include "bninfo/order.hpp"
#include "bninfo/sample.hpp"
#include "bninfo/validate.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;
constexpr int kExitUsage = 64;

struct Report {
  std::string op;
  std::vector<std::pair<std::string, std::string>> fields;  // ordered
  json data;

  void add(const std::string& key, const std::string& value) {
    fields.emplace_back(key, value);
    data[key] = value;
  }
  void add(const std::string& key, double value) {
    fields.emplace_back(key, bninfo::format_double(value));
    // JSON has no infinity literal; emit the string form instead.
    if (std::isfinite(value))
      data[key] = value;
    else
      data[key] = bninfo::format_double(value);
  }
  void add_vector(const std::string& key, const std::vector<double>& values) {
    std::string joined;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) joined += " ";
      joined += bninfo::format_double(values[i]);
    }
    fields.emplace_back(key, joined);
    data[key] = values;
  }

  void print(bool as_json) const {
    if (as_json) {
      json out = data;
      out["op"] = op;
      std::cout << out.dump(2) << "\n";
      return;
    }
    std::cout << op << "\n";
    std::size_t width = 0;
    for (const auto& [k, v] : fields) width = std::max(width, k.size());
    for (const auto& [k, v] : fields)
      std::cout << "  " << std::left << std::setw(static_cast<int>(width + 2)) << k << v << "\n";
  }
};

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t default_seed(std::uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("BNINFO_SEED")) return std::strtoull(env, nullptr, 10);
  return 20240417ull;
}

void attach_kl_report(Report& report, const bninfo::KlReport& kl) {
  report.add("method", bninfo::to_string(kl.method));
  report.add("value", kl.value);
  for (const auto& [key, value] : kl.diagnostics) report.add(key, value);
  for (const auto& [key, values] : kl.vectors) report.add_vector(key, values);
  if (!kl.note.empty()) report.add("note", kl.note);
}

int run(int argc, char** argv) {
  CLI::App app{"entropy and Kullback-Leibler divergence for Bayesian networks"};
  app.require_subcommand(1);
  std::string emit = "text";
  app.add_option("--emit", emit, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string net_path, net2_path, dag_path, data_path, out_path, method = "exact", kind;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* validate = app.add_subcommand("validate", "check a network file");
  validate->add_option("network", net_path)->required();

  auto* compose = app.add_subcommand("compose", "compose the global distribution");
  compose->add_option("network", net_path)->required();

  auto* decompose =
      app.add_subcommand("decompose", "compose, then decompose under a (possibly different) DAG");
  decompose->add_option("network", net_path)->required();
  decompose->add_option("--dag", dag_path, "network file supplying the target DAG");

  auto* entropy_cmd = app.add_subcommand("entropy", "Shannon entropy in nats");
  entropy_cmd->add_option("network", net_path)->required();

  auto* kl_cmd = app.add_subcommand("kl", "Kullback-Leibler divergence KL(first || second)");
  kl_cmd->add_option("network", net_path)->required();
  kl_cmd->add_option("network2", net2_path)->required();
  kl_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"exact", "sparse", "spectral", "approx", "empirical", "mc"}));
  kl_cmd->add_option("--data", data_path, "dataset for --method empirical");
  kl_cmd->add_option("--samples", samples, "particles for --method mc");
  kl_cmd->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });

  auto* learn = app.add_subcommand("learn", "maximum-likelihood fit of a DAG on data");
  learn->add_option("network", net_path, "network file supplying DAG and variable kinds")
      ->required();
  learn->add_option("data", data_path)->required();
  learn->add_option("--out", out_path, "write the fitted network here (default stdout)");

  auto* sample_cmd = app.add_subcommand("sample", "ancestral sampling");
  sample_cmd->add_option("network", net_path)->required();
  sample_cmd->add_option("--samples", samples)->required();
  sample_cmd->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });

  auto* bench_cmd = app.add_subcommand("bench", "scaling benchmarks (single-threaded medians)");
  std::string bench_op = "gbn-kl-sparse";
  std::vector<std::size_t> bench_sizes;
  int bench_reps = 5;
  bench_cmd->add_option("--op", bench_op)
      ->check(CLI::IsMember({"gbn-kl-global", "gbn-kl-sparse", "gbn-kl-approx", "gbn-kl-empirical"}));
  bench_cmd->add_option("--sizes", bench_sizes, "size grid (N, or n for empirical)");
  bench_cmd->add_option("--reps", bench_reps, "repetitions per size point (median)")
      ->check(CLI::Range(5, 1000000));
  bench_cmd->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report report;

  try {
    if (validate->parsed()) {
      report.op = "validate";
      bninfo::Network net = bninfo::load_network_unvalidated(net_path);
      const bninfo::ValidationReport rep = bninfo::validate_network(net);
      report.add("network", net_path);
      report.add("result", rep.ok() ? "ok" : "invalid");
      if (!rep.ok()) {
        report.add("violations", rep.to_string());
        report.print(emit == "json");
        return kExitValidation;
      }
      report.print(emit == "json");
      return kExitOk;
    }

    if (compose->parsed()) {
      report.op = "compose";
      const bninfo::Network net = bninfo::load_network(net_path);
      if (net.kind == bninfo::NetworkKind::discrete) {
        const bninfo::JointTable joint = bninfo::compose_discrete(net);
        report.add("kind", "discrete");
        report.add("cells", static_cast<double>(joint.cell_count()));
        report.add("total", joint.sum());
        report.add_vector("probabilities", joint.probabilities);
      } else if (net.kind == bninfo::NetworkKind::gaussian) {
        const bninfo::GaussianGlobal g = bninfo::compose_gbn(net);
        report.add("kind", "gaussian");
        report.add_vector("mean", g.mean);
        for (std::size_t i = 0; i < g.variables.size(); ++i) {
          std::vector<double> row(g.covariance.row(i).begin(), g.covariance.row(i).end());
          report.add_vector("cov[" + g.variables[i] + "]", row);
        }
      } else {
        const bninfo::MixtureGlobal mix = bninfo::compose_clgbn(net);
        report.add("kind", "clg");
        report.add("components", static_cast<double>(mix.components.size()));
        report.add_vector("discrete_joint", mix.discrete_joint.probabilities);
        for (std::size_t k = 0; k < mix.components.size(); ++k) {
          const bninfo::GaussianGlobal& comp = mix.components[k];
          report.add_vector("component_mean[" + std::to_string(k) + "]", comp.mean);
          for (std::size_t i = 0; i < comp.variables.size(); ++i) {
            std::vector<double> row(comp.covariance.row(i).begin(), comp.covariance.row(i).end());
            report.add_vector(
                "component_cov[" + std::to_string(k) + "][" + comp.variables[i] + "]", row);
          }
        }
      }
      report.add("elapsed_ms", elapsed_ms(t0));
      report.print(emit == "json");
      return kExitOk;
    }

    if (decompose->parsed()) {
      const bninfo::Network net = bninfo::load_network(net_path);
      const bninfo::Dag& dag =
          dag_path.empty() ? net.dag : bninfo::load_network(dag_path).dag;
      bninfo::Network result;
      if (net.kind == bninfo::NetworkKind::discrete)
        result = bninfo::decompose_discrete(bninfo::compose_discrete(net), dag);
      else if (net.kind == bninfo::NetworkKind::gaussian)
        result = bninfo::decompose_gbn(bninfo::compose_gbn(net), dag);
      else
        result = bninfo::decompose_clgbn(bninfo::compose_clgbn(net), dag);
      std::cout << bninfo::serialize_network(result);
      return kExitOk;
    }

    if (entropy_cmd->parsed()) {
      report.op = "entropy";
      const bninfo::Network net = bninfo::load_network(net_path);
      const bninfo::EntropyReport rep = bninfo::entropy(net);
      report.add("kind", bninfo::to_string(net.kind));
      report.add("value", rep.total);
      for (const auto& meta : net.dag.nodes)
        report.add("H[" + meta.name + "]", rep.per_node.at(meta.name));
      report.add("elapsed_ms", elapsed_ms(t0));
      report.print(emit == "json");
      return kExitOk;
    }

    if (kl_cmd->parsed()) {
      report.op = "kl";
      const bninfo::Network b = bninfo::load_network(net_path);
      const bninfo::Network b2 = bninfo::load_network(net2_path);

      if (method == "mc") {
        const bninfo::McEstimate est =
            bninfo::mc_kl(b, b2, samples, default_seed(seed, seed_given));
        report.add("method", "mc");
        report.add("value", est.value);
        report.add("std_error", est.std_error);
        report.add("samples", static_cast<double>(est.m));
      } else if (method == "empirical") {
        if (b.kind != bninfo::NetworkKind::gaussian)
          throw bninfo::error("--method empirical needs gaussian networks");
        if (data_path.empty()) throw bninfo::error("--method empirical needs --data");
        const bninfo::Dataset data = bninfo::load_dataset(data_path, b.dag.nodes);
        const bninfo::FitResult fit_b = bninfo::fit_mle(b.dag, data, b.kind);
        const bninfo::FitResult fit_b2 = bninfo::fit_mle(b2.dag, data, b2.kind);
        attach_kl_report(report,
                         bninfo::kl_gbn_empirical(fit_b.net, fit_b.summary, fit_b2.net,
                                                  fit_b2.summary));
      } else if (method == "approx") {
        if (b.kind != bninfo::NetworkKind::gaussian)
          throw bninfo::error("--method approx needs gaussian networks");
        const auto [bounds, rep] = bninfo::kl_gbn_bounds(b, b2);
        report.add("method", "approx");
        report.add("trace_lower", bounds.lower);
        report.add("trace_upper", bounds.upper);
        report.add("trace_point_estimate", bounds.point_estimate);
        report.add("value", rep.value);
        if (!rep.note.empty()) report.add("note", rep.note);
      } else if (b.kind == bninfo::NetworkKind::discrete) {
        attach_kl_report(report, bninfo::kl_discrete(b, b2));
      } else if (b.kind == bninfo::NetworkKind::clg) {
        attach_kl_report(report, bninfo::kl_clgbn(b, b2,
                                                  method == "sparse" ? bninfo::ClgMethod::sparse
                                                                     : bninfo::ClgMethod::naive));
      } else if (method == "sparse") {
        attach_kl_report(report, bninfo::kl_gbn_sparse(b, b2));
      } else {
        attach_kl_report(report,
                         bninfo::kl_mvn(bninfo::compose_gbn(b), bninfo::compose_gbn(b2),
                                        method == "spectral" ? bninfo::MvnRoute::spectral
                                                             : bninfo::MvnRoute::direct));
      }
      report.add("elapsed_ms", elapsed_ms(t0));
      report.print(emit == "json");
      return kExitOk;
    }

    if (learn->parsed()) {
      const bninfo::Network skeleton = bninfo::load_network(net_path);
      const bninfo::Dataset data = bninfo::load_dataset(data_path, skeleton.dag.nodes);
      const bninfo::FitResult fit = bninfo::fit_mle(skeleton.dag, data, skeleton.kind);
      if (out_path.empty())
        std::cout << bninfo::serialize_network(fit.net);
      else
        bninfo::save_network(fit.net, out_path);
      return kExitOk;
    }

    if (sample_cmd->parsed()) {
      const bninfo::Network net = bninfo::load_network(net_path);
      const bninfo::SampleBatch batch =
          bninfo::sample_network(net, samples, default_seed(seed, seed_given));
      std::cout << bninfo::serialize_dataset(batch.data);
      return kExitOk;
    }

    if (bench_cmd->parsed()) {
      report.op = "bench";
      const std::uint64_t s = default_seed(seed, seed_given);
      std::vector<bninfo::bench::BenchRecord> records;
      if (bench_op == "gbn-kl-empirical") {
        if (bench_sizes.empty()) bench_sizes = {1000, 10000, 100000};
        records = bninfo::bench::sweep_gbn_kl_empirical(8, bench_sizes, bench_reps, s);
      } else {
        std::vector<int> sizes(bench_sizes.begin(), bench_sizes.end());
        if (sizes.empty()) sizes = {50, 100, 200};
        if (bench_op == "gbn-kl-global")
          records = bninfo::bench::sweep_gbn_kl_global(sizes, bench_reps, s);
        else if (bench_op == "gbn-kl-sparse")
          records = bninfo::bench::sweep_gbn_kl_sparse(sizes, bench_reps, s);
        else
          records = bninfo::bench::sweep_gbn_kl_approx(sizes, bench_reps, s);
      }
      report.add("operation", bench_op);
      report.add("repetitions", static_cast<double>(bench_reps));
      for (const auto& rec : records)
        report.add("median_ms[" + std::to_string(rec.size) + "]", rec.median_ms);
      report.add("log_log_slope", bninfo::bench::log_log_slope(records));
      report.print(emit == "json");
      return kExitOk;
    }
  } catch (const bninfo::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const bninfo::error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.find("invalid network") != std::string::npos ? kExitValidation : kExitComputation;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
