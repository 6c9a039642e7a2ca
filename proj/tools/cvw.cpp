// cvw: command-line front end.
//
//   cvw compute <measure> [--p X --lambda X --mu X --t X --phi X]
//   cvw sweep <measure> --p 0:1:0.01 --lambda 0.1,0.5,0.9
//   cvw figure <name|all> --out DIR
//   cvw verify [--only N]...
//
// Exit codes: 0 ok, 1 verify failure, 2 usage or unknown measure, 3 domain
// error, 4 numerical failure (any failed sweep row), 5 IO error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvw/app/acceptance.hpp"
#include "cvw/app/figures.hpp"
#include "cvw/app/measures.hpp"
#include "cvw/app/sweep.hpp"

namespace {

using namespace cvw::app;

enum Exit { ok = 0, verify_failed = 1, usage = 2, domain = 3, numeric = 4, io = 5 };

struct Options {
  std::string p = "0.5";
  std::string lambda = "0.5";
  std::string mu = "0";
  std::string t = "0";
  std::string phi = "0";
  std::optional<std::size_t> cutoff;
  double eps_tail = 1e-12;
  double eps_int = 1e-7;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 100000;
  std::string format;
  std::string out;
  std::size_t threads = 0;
  std::string measure;
  std::string figure;
  std::vector<int> only;
};

std::string measure_list() {
  std::ostringstream s;
  s << "measures:\n";
  for (const auto& m : measures()) {
    s << "  " << m.name << "  (";
    for (std::size_t i = 0; i < m.inputs.size(); ++i) s << (i ? ", " : "") << m.inputs[i];
    s << ")  " << m.summary << '\n';
  }
  return s.str();
}

double single(const std::string& name, const std::string& text) {
  const auto v = parse_range(text);
  if (v.size() != 1) throw cvw::domain_error("--" + name + " takes a single value for compute");
  return v.front();
}

PointParams base_params(const Options& o) {
  PointParams b;
  b.n_max = o.cutoff;
  b.eps_tail = o.eps_tail;
  b.eps_int = o.eps_int;
  b.seed = o.seed.value_or(b.seed);
  b.samples = o.samples;
  return b;
}

// Writes to --out or stdout.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream fh(o.out);
  if (!fh) throw io_error("cannot write " + o.out);
  fh << text;
  if (!fh) throw io_error("write failed for " + o.out);
}

int cmd_compute(const Options& o) {
  find_measure(o.measure);
  auto in = base_params(o);
  in.p = single("p", o.p);
  in.lambda = single("lambda", o.lambda);
  in.mu = single("mu", o.mu);
  in.t = single("t", o.t);
  in.phi = single("phi", o.phi);
  const auto report = compute(o.measure, in);
  if (o.format == "csv") {
    SweepTable table;
    table.info = &find_measure(o.measure);
    table.rows.push_back({in, report, ""});
    std::ostringstream s;
    write_csv(s, table);
    emit(o, s.str());
  } else {
    emit(o, to_json(report).dump(2) + "\n");
  }
  return ok;
}

int cmd_sweep(const Options& o) {
  SweepSpec spec;
  spec.measure = o.measure;
  find_measure(o.measure);
  spec.p = parse_range(o.p);
  spec.lambda = parse_range(o.lambda);
  spec.mu = parse_range(o.mu);
  spec.t = parse_range(o.t);
  spec.phi = parse_range(o.phi);
  spec.base = base_params(o);
  spec.threads = o.threads;
  const auto table = run_sweep(spec);
  std::ostringstream s;
  if (o.format == "json")
    s << to_json(table).dump(2) << '\n';
  else
    write_csv(s, table);
  emit(o, s.str());
  if (const auto failed = table.failures()) {
    std::cerr << failed << " of " << table.rows.size() << " rows failed\n";
    return numeric;
  }
  return ok;
}

int cmd_figure(const Options& o) {
  const std::string dir = o.out.empty() ? "figures" : o.out;
  std::vector<std::string> names;
  if (o.figure == "all")
    for (const auto& f : figures()) names.push_back(f.name);
  else
    names.push_back(find_figure(o.figure).name);
  std::size_t failed = 0;
  for (const auto& n : names) {
    const auto res = write_figure(n, dir, base_params(o), o.threads);
    for (const auto& f : res.files) std::cout << f.string() << '\n';
    failed += res.failed_rows;
  }
  if (failed) {
    std::cerr << failed << " rows failed\n";
    return numeric;
  }
  return ok;
}

int cmd_verify(const Options& o) {
  AcceptanceConfig cfg;
  cfg.n_max = o.cutoff;
  cfg.eps_tail = o.eps_tail;
  cfg.eps_int = o.eps_int;
  cfg.seed = o.seed.value_or(cfg.seed);
  return run_acceptance(std::cout, cfg, o.only) ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassical correlations of continuous-variable Werner states"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file presetting options; flags override it");
  Options o;

  app.add_option("--p", o.p, "mixing probability (value, list or start:stop:step)");
  app.add_option("--lambda", o.lambda, "squeezing factor tanh r");
  app.add_option("--mu", o.mu, "thermal factor");
  app.add_option("--t", o.t, "measurement squeezing");
  app.add_option("--phi", o.phi, "measurement phase");
  app.add_option("--cutoff", o.cutoff, "force the Fock cutoff n_max");
  app.add_option("--eps-tail", o.eps_tail, "tolerated truncation deficit");
  app.add_option("--eps-int", o.eps_int, "tolerated quadrature normalization error");
  app.add_option("--seed", o.seed, "Monte-Carlo seed");
  app.add_option("--samples", o.samples, "Monte-Carlo sample count");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "output file (directory for figure)");
  app.add_option("--threads", o.threads, "worker threads (also capped by CVW_THREADS)");

  auto* compute_cmd = app.add_subcommand("compute", "evaluate one measure at one point")->fallthrough();
  compute_cmd->add_option("measure", o.measure, "measure name")->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a measure over a parameter grid")->fallthrough();
  sweep_cmd->add_option("measure", o.measure, "measure name")->required();
  auto* figure_cmd = app.add_subcommand("figure", "write figure datasets and plot stubs")->fallthrough();
  figure_cmd->add_option("name", o.figure, "figure name or 'all'")->required();
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite")->fallthrough();
  verify_cmd->add_option("--only", o.only, "criterion numbers to run");
  app.footer(measure_list());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*compute_cmd) return cmd_compute(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*figure_cmd) return cmd_figure(o);
    if (*verify_cmd) return cmd_verify(o);
  } catch (const unknown_measure& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
    return usage;
  } catch (const cvw::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return domain;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return numeric;
  }
  return usage;
}
