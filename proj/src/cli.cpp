// Copyright 2026 The genesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "genesim/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "genesim/analysis.hpp"
#include "genesim/engine.hpp"
#include "genesim/error.hpp"
#include "genesim/io/config.hpp"
#include "genesim/io/csv.hpp"
#include "genesim/io/report.hpp"
#include "genesim/io/trace_csv.hpp"
#include "genesim/model.hpp"
#include "genesim/strategies.hpp"

namespace genesim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Inputs {
  io::RunConfig config;
  RawTable table;
  Population<double> population;
  SimConfig sim;
};

Inputs load_inputs(const std::string& config_path, const std::string& data_override) {
  io::RunConfig config = io::load_run_config(config_path);
  if (!data_override.empty()) config.data = fs::path(data_override);
  if (!config.data) throw ValidationError("no data file given (use --data or 'data' in the config)");

  RawTable table = io::read_table_csv_file(*config.data, config.csv_options());
  const auto specs = config.feature_specs(table);
  auto population = build_population<double>(table, specs);
  SimConfig sim = config.simulation_config(table);
  return {std::move(config), std::move(table), std::move(population), std::move(sim)};
}

void report_issues(std::ostream& err, const std::vector<Issue>& issues) {
  json list = json::array();
  for (const auto& issue : issues) {
    json e = {{"message", issue.message}};
    e["row"] = issue.row ? json(*issue.row + 1) : json(nullptr);
    e["column"] = issue.column ? json(*issue.column) : json(nullptr);
    list.push_back(std::move(e));
  }
  err << json{{"errors", std::move(list)}}.dump() << '\n';
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  (void)ec;
  std::string s(buf, ptr);
  if (s.starts_with("-0.") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void print_matrix(std::ostream& out, const std::string& title, const MatrixXd& m,
                  const std::vector<std::string>& row_names, const std::vector<std::string>& col_names) {
  out << title << '\n';
  std::size_t w0 = 0;
  for (const auto& n : row_names) w0 = std::max(w0, n.size());
  out << std::string(w0, ' ');
  for (const auto& c : col_names) out << "  " << std::setw(10) << c;
  out << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    out << std::left << std::setw(static_cast<int>(w0)) << row_names.at(static_cast<std::size_t>(i)) << std::right;
    for (Index j = 0; j < m.cols(); ++j) out << "  " << std::setw(10) << fixed(m(i, j));
    out << '\n';
  }
  out << '\n';
}

void print_signs(std::ostream& out, const std::string& title, const SignMatrix& signs,
                 const std::vector<std::string>& row_names, const std::vector<std::string>& col_names) {
  out << title << '\n';
  std::size_t w0 = 0;
  for (const auto& n : row_names) w0 = std::max(w0, n.size());
  out << std::string(w0, ' ');
  for (const auto& c : col_names) out << "  " << std::setw(10) << c;
  out << '\n';
  for (std::size_t i = 0; i < signs.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(w0)) << row_names.at(i) << std::right;
    for (const auto& p : signs[i]) out << "  " << std::setw(10) << to_string(p);
    out << '\n';
  }
  out << '\n';
}

int cmd_validate(const std::string& config_path, const std::string& data, std::ostream& out) {
  const Inputs in = load_inputs(config_path, data);
  in.sim.validate(in.population.cols());
  out << "ok: " << in.population.rows() << " organisms, " << in.population.cols() << " genes\n";
  return kExitOk;
}

int cmd_analyze(const std::string& config_path, const std::string& data, bool as_json, std::ostream& out) {
  const Inputs in = load_inputs(config_path, data);
  const Simulation<double> sim(in.population, in.sim);
  const auto& pop = in.population;
  const auto rec = sim.initial_record();
  const auto set = sim.evaluate(rec.gamma, rec.r);
  const auto diag = sign_scenarios(pop, rec.gamma, rec.r, sim.gene_kinship(), sim.organism_kinship(), sim.rho());
  const auto& genes = pop.gene_names();
  const auto& orgs = pop.organism_names();

  if (as_json) {
    json doc = {
        {"genes", genes},
        {"organisms", orgs},
        {"population", io::to_json(pop.values())},
        {"gene_kinship", io::to_json(sim.gene_kinship().values)},
        {"organism_kinship", io::to_json(sim.organism_kinship().values)},
        {"gamma0", std::vector<double>(rec.gamma.data(), rec.gamma.data() + rec.gamma.size())},
        {"r0", std::vector<double>(rec.r.data(), rec.r.data() + rec.r.size())},
        {"rho", sim.rho()},
        {"deltas",
         {{"dominant", io::to_json(set.dominant.values)},
          {"altruistic", io::to_json(set.altruistic.values)},
          {"balanced", io::to_json(set.balanced.values)},
          {"selfish", io::to_json(set.selfish.values)}}},
        {"gene_signs", io::to_json(diag.gene_signs)},
        {"organism_signs", io::to_json(diag.organism_signs)},
    };
    out << io::dump(doc);
    return kExitOk;
  }

  print_matrix(out, "population", pop.values(), orgs, genes);
  print_matrix(out, "gene kinship", sim.gene_kinship().values, genes, genes);
  print_matrix(out, "organism kinship", sim.organism_kinship().values, orgs, orgs);
  print_matrix(out, "initial organism fitness r0", rec.r, orgs, {"r0"});
  out << "rho " << fixed(sim.rho()) << "\n\n";
  print_matrix(out, "gs_dominant (iteration 0)", set.dominant.values, orgs, genes);
  print_matrix(out, "os_balanced (iteration 0)", set.balanced.values, orgs, genes);
  print_matrix(out, "gs_altruistic (iteration 0)", set.altruistic.values, orgs, genes);
  print_matrix(out, "os_selfish (iteration 0)", set.selfish.values, orgs, genes);
  print_signs(out, "gene sign scenarios (dominant, transfer)", diag.gene_signs, orgs, genes);
  print_signs(out, "organism sign scenarios (balanced, pressure)", diag.organism_signs, orgs, genes);
  return kExitOk;
}

struct RunOptions {
  std::string config;
  std::string data;
  std::string out_trace;
  std::string out_summary;
  std::optional<std::size_t> iterations;
  std::optional<unsigned> workers;
};

int cmd_run(const RunOptions& opt, std::ostream& out) {
  Inputs in = load_inputs(opt.config, opt.data);
  if (opt.iterations) in.sim.max_iterations = *opt.iterations;
  if (opt.workers) in.sim.workers = *opt.workers;
  in.sim.validate(in.population.cols());
  in.config.sim.max_iterations = in.sim.max_iterations;

  const Trace<double> trace = simulate(in.population, in.sim);
  const auto report = summarize(trace, in.population);

  std::optional<fs::path> trace_path = opt.out_trace.empty() ? in.config.trace_output : fs::path(opt.out_trace);
  std::optional<fs::path> summary_path =
      opt.out_summary.empty() ? in.config.summary_output : fs::path(opt.out_summary);

  io::SummaryContext ctx;
  ctx.config_echo = in.config.echo();
  ctx.mode = in.sim.mix.mode == MixMode::fixed ? "fixed" : "self_consistent";
  if (trace_path) ctx.trace_ref = trace_path->filename().string();
  const std::string summary = io::dump(io::summary_json(report, in.population, ctx));

  if (trace_path) write_text_file(*trace_path, io::trace_csv(trace));
  if (summary_path) {
    write_text_file(*summary_path, summary);
  } else {
    out << summary;
  }
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolutionary feature-relevance and ranking engine for tabular decision data", "genesim"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Simulate and write the trace and summary");
  run->add_option("--config", run_opt.config, "YAML or JSON run config")->required();
  run->add_option("--data", run_opt.data, "Input CSV (overrides the config)");
  run->add_option("--out-trace", run_opt.out_trace, "Long-format trace CSV");
  run->add_option("--out-summary", run_opt.out_summary, "Summary JSON (stdout when omitted)");
  run->add_option("--iterations", run_opt.iterations, "Override max_iterations")->check(CLI::PositiveNumber);
  run->add_option("--workers", run_opt.workers, "Threads for strategy kernels")->check(CLI::PositiveNumber);

  std::string a_config, a_data;
  bool a_json = false;
  auto* analyze = app.add_subcommand("analyze", "Print static diagnostics without simulating");
  analyze->add_option("--config", a_config, "YAML or JSON run config")->required();
  analyze->add_option("--data", a_data, "Input CSV (overrides the config)");
  analyze->add_flag("--json", a_json, "Emit JSON instead of text");

  std::string v_config, v_data;
  auto* validate = app.add_subcommand("validate", "Check the data and config only");
  validate->add_option("--config", v_config, "YAML or JSON run config")->required();
  validate->add_option("--data", v_data, "Input CSV (overrides the config)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_issues(err, {Issue{e.what(), {}, {}}});
    return kExitValidation;
  }

  try {
    if (*run) return cmd_run(run_opt, out);
    if (*analyze) return cmd_analyze(a_config, a_data, a_json, out);
    return cmd_validate(v_config, v_data, out);
  } catch (const ValidationError& e) {
    report_issues(err, e.issues());
    return kExitValidation;
  } catch (const DimensionError& e) {
    report_issues(err, {Issue{e.what(), {}, {}}});
    return kExitValidation;
  } catch (const std::exception& e) {
    err << json{{"errors", {{{"message", e.what()}, {"row", nullptr}, {"column", nullptr}}}}}.dump() << '\n';
    return kExitRuntime;
  }
}

}  // namespace genesim::cli
