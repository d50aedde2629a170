// Command-line driver: one subcommand per experiment, CSV (and optional
// JSON) output. Failures print a JSON error record on stderr.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "codif/experiments.hpp"
#include "codif/page.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code, const std::string& path = {}) {
  nlohmann::json err{{"error", {{"kind", kind}, {"message", message}}}};
  if (!path.empty()) err["error"]["path"] = path;
  std::cerr << err.dump() << std::endl;
  return code;
}

struct Flags {
  std::optional<int> n;
  std::optional<double> J, hx, hz, epsilon, tmax;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<std::int64_t> samples;
  std::vector<double> window;
  std::string policy;
  std::string units = "nats";
  std::string initial = "both";
  std::string out;
  bool json = false;
};

void add_common(CLI::App* sub, Flags& f, bool dynamics, bool ensemble) {
  sub->add_option("--n", f.n, "Number of sites");
  sub->add_option("--epsilon", f.epsilon, "Codification accuracy in nats");
  sub->add_option("--units", f.units, "Information units")->check(CLI::IsMember({"nats", "bits"}));
  sub->add_option("--out", f.out, "Output CSV path (stdout when omitted)");
  sub->add_flag("--json", f.json, "Also write <out>.json");
  if (ensemble) {
    sub->add_option("--seed", f.seed, "Master seed for Haar sampling");
    sub->add_option("--samples", f.samples, "Monte Carlo samples");
  }
  if (dynamics) {
    sub->add_option("--J", f.J, "Ising coupling J (fields default to 3J/2 and -J/2)");
    sub->add_option("--hx", f.hx, "Transverse field");
    sub->add_option("--hz", f.hz, "Longitudinal field");
    sub->add_option("--tmax", f.tmax, "Final time, in units of 1/J");
    sub->add_option("--steps", f.steps, "Number of uniform time samples on [0, tmax]");
    sub->add_option("--window", f.window, "Long-time averaging window: START END")->expected(2);
    sub->add_option("--policy", f.policy, "Subset search policy")
        ->check(CLI::IsMember({"contiguous", "exhaustive", "both"}));
    sub->add_option("--initial", f.initial, "Initial state")->check(CLI::IsMember({"neel", "yplus", "both"}));
  }
}

codif::ExperimentConfig to_config(codif::ExperimentKind kind, const Flags& f) {
  auto c = codif::ExperimentConfig::defaults_for(kind);
  if (f.n) c.n = *f.n;
  if (f.J) c.J = *f.J;
  c.hx = f.hx;
  c.hz = f.hz;
  if (f.epsilon) c.epsilon = *f.epsilon;
  if (f.seed) c.seed = *f.seed;
  if (f.tmax) c.tmax = *f.tmax;
  if (f.steps) c.steps = *f.steps;
  if (f.samples) c.samples = *f.samples;
  if (f.window.size() == 2) {
    c.window_start = f.window[0];
    c.window_end = f.window[1];
  }
  if (f.policy == "exhaustive") c.policy = codif::SearchKind::ExhaustiveMinSize;
  if (f.policy == "both") c.both_policies = true;
  c.units = f.units == "bits" ? codif::Units::Bits : codif::Units::Nats;
  if (f.initial == "neel") c.initial = {codif::InitialKind::Neel};
  if (f.initial == "yplus") c.initial = {codif::InitialKind::YPlus};
  c.out = f.out;
  c.json_mirror = f.json;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codification volume experiments: quench dynamics and Haar-ensemble averages"};
  app.require_subcommand(1);
  app.set_version_flag("--version", codif::version_string());

  Flags flags;
  const std::map<std::string, codif::ExperimentKind> kinds{
      {"fig2", codif::ExperimentKind::Fig2Ensemble},      {"quench-mi", codif::ExperimentKind::QuenchMI},
      {"quench-cv", codif::ExperimentKind::QuenchCV},     {"longtime", codif::ExperimentKind::LongTimeAverage},
      {"page-tables", codif::ExperimentKind::PageTables}};
  const std::map<std::string, std::string> help{
      {"fig2", "Average MI vs b for a/n = 1/9 and 2/9 (closed form, Monte Carlo for n <= 12)"},
      {"quench-mi", "MI between site 0 and growing blocks along a quench"},
      {"quench-cv", "Codification volume of site 0 along a quench"},
      {"longtime", "Window-averaged MI ladder vs Haar ensemble"},
      {"page-tables", "Closed-form Haar averages for every (a, b)"}};
  for (const auto& [name, kind] : kinds) {
    const bool dyn = kind == codif::ExperimentKind::QuenchMI || kind == codif::ExperimentKind::QuenchCV ||
                     kind == codif::ExperimentKind::LongTimeAverage;
    const bool ens = kind == codif::ExperimentKind::Fig2Ensemble || kind == codif::ExperimentKind::LongTimeAverage;
    add_common(app.add_subcommand(name, help.at(name)), flags, dyn, ens);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  const auto* sub = app.get_subcommands().front();
  const auto config = to_config(kinds.at(sub->get_name()), flags);
  try {
    config.validate();
    const auto table = codif::run_experiment(config);
    if (table.metadata.contains("warnings")) {
      for (const auto& w : table.metadata["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
    if (config.out.empty()) {
      table.validate();
      std::cout << table.to_csv();
    } else {
      codif::write_table(table, config.out, config.json_mirror);
    }
  } catch (const codif::ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const codif::OutputError& e) {
    return fail("output", e.what(), 3, e.path());
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
  return 0;
}
