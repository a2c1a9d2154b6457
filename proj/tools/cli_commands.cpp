#include "cli_commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "rfh/aleksandrov.hpp"
#include "rfh/errors.hpp"
#include "rfh/fixtures.hpp"
#include "rfh/json_io.hpp"
#include "rfh/numeric_checks.hpp"
#include "rfh/rf_synthesis.hpp"

namespace rfh::cli {

namespace {

using json_io::json;

constexpr double kMarginTolerance = -1e-9;
constexpr double kResidualTolerance = 1e-6;
constexpr double kGradientTolerance = 1e-5;
constexpr double kEtaTolerance = 1e-12;
constexpr double kMinHalvingRatio = 2.0;
constexpr double kMaxHalvingRatio = 8.0;

std::uint64_t resolve_seed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv("RFH_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 10);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("RFH_SEED is not an unsigned integer");
  }
  return 1;
}

void render_text(const json& j, int indent, std::ostream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto is_flat = [](const json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& e : v) {
      if (e.is_structured()) return false;
    }
    return true;
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (is_flat(it.value())) {
        os << pad << it.key() << ":";
        if (it.value().is_array()) {
          for (const auto& e : it.value()) os << ' ' << scalar(e);
        } else {
          os << ' ' << scalar(it.value());
        }
        os << '\n';
      } else {
        os << pad << it.key() << ":\n";
        render_text(it.value(), indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    auto is_record = [&](const json& e) {
      if (!e.is_object()) return false;
      for (const auto& v : e) {
        if (!is_flat(v)) return false;
      }
      return true;
    };
    for (const auto& e : j) {
      if (is_record(e)) {
        os << pad << "-";
        for (auto it = e.begin(); it != e.end(); ++it) {
          os << ' ' << it.key() << '=';
          if (it.value().is_array()) {
            std::string sep;
            for (const auto& x : it.value()) {
              os << sep << scalar(x);
              sep = ",";
            }
          } else {
            os << scalar(it.value());
          }
        }
        os << '\n';
      } else if (is_flat(e)) {
        os << pad << "-";
        if (e.is_array()) {
          for (const auto& x : e) os << ' ' << scalar(x);
        } else {
          os << ' ' << scalar(e);
        }
        os << '\n';
      } else {
        os << pad << "-\n";
        render_text(e, indent + 2, os);
      }
    }
  } else {
    os << pad << scalar(j) << '\n';
  }
}

void emit(const json& report, const RunConfig& config, std::ostream& out) {
  std::ostringstream text;
  if (config.format == "text") {
    render_text(report, 0, text);
  } else {
    text << report.dump(2) << '\n';
  }
  if (config.output.empty()) {
    out << text.str();
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw InputError("cannot write " + config.output);
  file << text.str();
}

template <class F>
int guarded(const RunConfig& config, std::ostream& out, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    json report = {{"ok", false}, {"error", e.what()}, {"witness", {{"generator", e.generator()}}}};
    try {
      emit(report, config, out);
    } catch (const InputError& io) {
      err << "input error: " << io.what() << '\n';
    }
    return kVerificationFailure;
  } catch (const json_io::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

json load_input(const RunConfig& config) {
  if (!config.input.empty() && !config.example.empty()) {
    throw InputError("--input and --example are mutually exclusive");
  }
  if (!config.input.empty()) return json_io::read_file(config.input);
  if (!config.example.empty()) {
    return json_io::parse_text(std::string(fixtures::json_text(config.example)), config.example);
  }
  throw InputError("one of --input or --example is required");
}

std::string source_name(const RunConfig& config) {
  return config.input.empty() ? "example:" + config.example : config.input;
}

rf::ActionWindow parse_window(const std::string& text) {
  rf::ActionWindow w;
  if (text.empty()) return w;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("window must have the form lo:hi");
  auto bound = [&](const std::string& s, double fallback) {
    if (s.empty()) return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InputError("window bound '" + s + "' is not a number");
    }
    if (used != s.size() || std::isnan(v)) throw InputError("window bound '" + s + "' is not a number");
    return v;
  };
  w.lower = bound(text.substr(0, colon), -std::numeric_limits<double>::infinity());
  w.upper = bound(text.substr(colon + 1), std::numeric_limits<double>::infinity());
  if (w.lower > w.upper) throw InputError("window is not well ordered");
  return w;
}

json window_json(const rf::ActionWindow& w) {
  auto b = [](double v) -> json {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    return v;
  };
  return {{"lower", b(w.lower)}, {"upper", b(w.upper)}};
}

json betti_json(const HomologySummary& h, int lo, int hi) {
  json out = json::array();
  for (int k = lo; k <= hi; ++k) out.push_back(h.betti_at(k));
  return out;
}

json complex_census(const GradedF2Complex& c) {
  json dims = json::object();
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) dims[std::to_string(k)] = c.dim(k);
  return {{"total", c.total_dim()}, {"by_degree", dims}};
}

}  // namespace

int cmd_homology(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&] {
    const json input = load_input(config);
    GradedF2Complex complex;
    std::string kind;
    if (input.contains("constant")) {
      kind = "rabinowitz-floer";
      complex = *rf::build_complexes(json_io::parse_rf_model(input)).rf;
    } else if (input.contains("critical_points")) {
      kind = "morse";
      const MorseData data = json_io::parse_morse_data(input);
      validate(data);
      complex = build_morse_complex(data);
    } else {
      kind = "complex";
      complex = json_io::parse_complex(input);
    }
    json report = {{"command", "homology"}, {"source", source_name(config)}, {"input_kind", kind}};
    if (auto w = d_squared_witness(complex)) {
      w->note = "boundary of the boundary is nonzero";
      report["ok"] = false;
      report["witness"] = json_io::to_json(*w);
      emit(report, config, out);
      err << "verification failed: d^2 != 0 at " << w->generator << '\n';
      return static_cast<int>(kVerificationFailure);
    }
    const HomologySummary h = homology(complex);
    report["ok"] = true;
    report["homology"] = json_io::to_json(h, complex);
    report["chain_dims"] = complex_census(complex);
    emit(report, config, out);
    return static_cast<int>(kPass);
  });
}

int cmd_gysin(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&] {
    const MorseData data = json_io::parse_morse_data(load_input(config));
    validate(data);
    const GysinModel model = gysin_model(data);
    const int n = data.dimension;
    const HomologySummary base = homology(*model.base);
    const HomologySummary bundle = homology(*model.sphere_bundle);
    std::vector<std::size_t> base_betti;
    for (int k = 0; k <= n; ++k) base_betti.push_back(base.betti_at(k));
    const auto expected = sphere_bundle_homology_table(base_betti, n, data.euler_parity);
    json computed = betti_json(bundle, 0, 2 * n - 1);
    const bool table_match = computed == json(expected);

    const CheckList splitting = verify_splitting(model.sequence);
    const LongExactSequence les = long_exact_sequence(model.sequence);
    const ConeEquivalence cone = cone_equivalence(model.sequence);
    const std::size_t connecting = les.connecting_rank(1);
    const bool ok = table_match && splitting.ok() && les.exact() && cone.checks.ok() &&
                    connecting == static_cast<std::size_t>(data.euler_parity);

    json report = {{"command", "gysin"},
                   {"source", source_name(config)},
                   {"dimension", n},
                   {"euler", data.euler_parity},
                   {"base_betti", base_betti},
                   {"sphere_bundle_betti", computed},
                   {"expected_betti", expected},
                   {"table_match", table_match},
                   {"splitting", json_io::to_json(splitting)},
                   {"long_exact_sequence", json_io::to_json(les)},
                   {"connecting_rank_top_to_bottom", connecting},
                   {"cone", json_io::to_json(cone.checks)},
                   {"ok", ok}};
    emit(report, config, out);
    return static_cast<int>(ok ? kPass : kVerificationFailure);
  });
}

int cmd_rf(const std::string& action, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&] {
    const rf::RfModel model = json_io::parse_rf_model(load_input(config));
    json report = {{"command", "rf " + action}, {"source", source_name(config)}};
    bool ok = true;
    if (action == "validate") {
      const rf::RfComplexes cx = rf::build_complexes(model);
      report["euler"] = model.euler_parity();
      report["morse"] = complex_census(*cx.morse);
      report["comorse"] = complex_census(*cx.comorse);
      report["rf"] = complex_census(*cx.rf);
      report["phi_chain_map"] = verify_chain_map(cx.phi).ok;
      report["psi_chain_map"] = verify_chain_map(cx.psi).ok;
      ok = verify_chain_map(cx.phi).ok && verify_chain_map(cx.psi).ok;
    } else if (action == "verify-main") {
      const rf::MainIdentityReport r = rf::verify_main(model);
      const std::string qmax = model.constant.maximum().id;
      report["euler"] = model.euler_parity();
      report["identities"] = json_io::to_json(r.identities);
      report["sequence"] = json_io::to_json(r.sequence);
      report["les_nodes"] = r.les_nodes;
      report["homotopy_derived"] = r.homotopy_derived;
      report["minimum_positive_energy"] = r.minimum_positive_energy;
      report["homotopy"] = json_io::to_json(r.homotopy);
      report["connecting_on_maximum"] = r.delta.image_of(qmax);
      ok = r.ok();
    } else if (action == "hrf") {
      const rf::ActionWindow window = parse_window(config.window);
      const rf::HrfReport r = rf::hrf_table(model, window);
      report["window"] = window_json(window);
      json classes = json::array();
      for (const auto& c : r.classes) {
        json rows = json::array();
        for (const auto& row : c.rows) {
          json jr = {{"degree", row.degree}, {"computed", row.computed}};
          if (row.expected) jr["expected"] = *row.expected;
          rows.push_back(jr);
        }
        classes.push_back({{"class", c.klass}, {"rows", rows}, {"ok", c.ok()}});
      }
      report["classes"] = classes;
      ok = r.ok();
    } else {
      throw InputError("unknown rf action '" + action + "'");
    }
    report["ok"] = ok;
    emit(report, config, out);
    return static_cast<int>(ok ? kPass : kVerificationFailure);
  });
}

int cmd_check(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&] {
    const std::uint64_t seed = resolve_seed(config);
    json report = {{"command", "check " + name}, {"seed", seed}};
    bool ok = false;
    if (name == "levrel" || name == "fenchel") {
      if (config.n_loops < 1) throw InputError("--n-loops must be positive");
      if (config.samples < 8) throw InputError("--samples must be at least 8");
      const auto trials = static_cast<std::size_t>(config.n_loops);
      const numeric::BatterySummary s = name == "levrel"
                                            ? numeric::run_levrel_battery(seed, trials, config.samples)
                                            : numeric::run_levrel2_battery(seed, trials, config.samples);
      ok = s.min_margin >= kMarginTolerance && s.max_residual <= kResidualTolerance;
      report["trials"] = s.trials;
      report["samples"] = config.samples;
      report["min_margin"] = s.min_margin;
      report["max_margin"] = *std::max_element(s.margins.begin(), s.margins.end());
      report["max_equality_residual"] = s.max_residual;
      report["tolerance"] = {{"margin", kMarginTolerance}, {"residual", kResidualTolerance}};
      report["margins"] = s.margins;
      report["equality_residuals"] = s.residuals;
    } else if (name == "gradient") {
      if (config.trials < 1) throw InputError("--trials must be positive");
      if (config.samples < 8) throw InputError("--samples must be at least 8");
      const numeric::GradientBattery b = numeric::run_gradient_battery(
          seed, static_cast<std::size_t>(config.trials), config.samples, config.eps);
      ok = b.max_relative_error <= kGradientTolerance && b.min_halving_ratio >= kMinHalvingRatio &&
           b.max_halving_ratio <= kMaxHalvingRatio && b.max_eta_error <= kEtaTolerance;
      json trials = json::array();
      for (const auto& t : b.results) {
        trials.push_back({{"relative_error", t.at_step.relative_error},
                          {"relative_error_without_eta", t.at_step.relative_error_without_eta},
                          {"halving_ratio", t.halving_ratio},
                          {"eta_error", t.at_step.eta_error}});
      }
      report["trials"] = b.trials;
      report["samples"] = config.samples;
      report["eps"] = b.step;
      report["coarse_eps"] = numeric::GradientBattery::kCoarseStep;
      report["max_relative_error"] = b.max_relative_error;
      report["max_relative_error_without_eta"] = b.max_relative_error_without_eta;
      report["min_halving_ratio"] = b.min_halving_ratio;
      report["max_halving_ratio"] = b.max_halving_ratio;
      report["max_eta_error"] = b.max_eta_error;
      report["tolerance"] = {{"relative_error", kGradientTolerance},
                             {"halving_ratio", {kMinHalvingRatio, kMaxHalvingRatio}},
                             {"eta_error", kEtaTolerance}};
      report["per_trial"] = trials;
    } else if (name == "aleksandrov") {
      if (config.grid < 8) throw InputError("--grid must be at least 8");
      if (config.trials < 1) throw InputError("--trials must be positive");
      elliptic::AleksandrovConfig ac;
      ac.h = 1.0 / config.grid;
      const elliptic::AleksandrovBattery b =
          elliptic::run_aleksandrov_battery(seed, static_cast<std::size_t>(config.trials), ac);
      ok = b.pass;
      json margins = json::array();
      for (const auto& r : b.reports) margins.push_back(r.margin);
      report["trials"] = b.trials;
      report["skipped"] = b.skipped;
      report["grid"] = config.grid;
      report["max_margin"] = b.max_margin;
      report["tolerance"] = b.tolerance;
      report["margins"] = margins;
    } else {
      throw InputError("unknown check '" + name + "'");
    }
    report["pass"] = ok;
    emit(report, config, out);
    return static_cast<int>(ok ? kPass : kVerificationFailure);
  });
}

int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&] {
    rf::RfModel model;
    if (config.example == "s2-rf") {
      model = rf::synthesize_model(fixtures::s2_rf_skeleton(), fixtures::kS2RfOptions);
    } else if (config.example == "rp2-rf") {
      model = rf::synthesize_model(fixtures::rp2_rf_skeleton(), fixtures::kRp2RfOptions);
    } else if (config.example.empty()) {
      const std::uint64_t seed = resolve_seed(config);
      auto rng = numeric::trial_rng(seed, 0);
      model = rf::synthesize_model(rf::random_skeleton(rng), {seed, 16});
    } else {
      throw InputError("synth supports only the s2-rf and rp2-rf examples");
    }
    emit(json_io::to_json(model), config, out);
    return static_cast<int>(kPass);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite models of Rabinowitz-Floer homology and numerical checks"};
  app.name("rfh");
  app.require_subcommand(1);
  RunConfig config;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub, bool with_input) {
    if (with_input) {
      sub->add_option("--input", config.input, "JSON input file");
      sub->add_option("--example", config.example, "built-in example")
          ->check(CLI::IsMember(fixtures::names()));
    }
    sub->add_option("--format", config.format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", config.output, "write the report to this file");
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (falls back to RFH_SEED)");
  };

  auto* homology_cmd = app.add_subcommand("homology", "homology of a complex, Morse data or model");
  common(homology_cmd, true);
  auto* gysin_cmd = app.add_subcommand("gysin", "sphere bundle homology and the Gysin sequence");
  common(gysin_cmd, true);

  auto* rf_cmd = app.add_subcommand("rf", "Rabinowitz-Floer models");
  rf_cmd->require_subcommand(1);
  std::vector<CLI::App*> rf_actions;
  for (const char* action : {"validate", "verify-main", "hrf"}) {
    auto* sub = rf_cmd->add_subcommand(action);
    common(sub, true);
    if (std::string(action) == "hrf") sub->add_option("--window", config.window, "action window lo:hi");
    rf_actions.push_back(sub);
  }

  auto* check_cmd = app.add_subcommand("check", "numerical batteries");
  check_cmd->require_subcommand(1);
  auto* levrel = check_cmd->add_subcommand("levrel");
  auto* fenchel = check_cmd->add_subcommand("fenchel");
  auto* gradient = check_cmd->add_subcommand("gradient");
  auto* aleksandrov = check_cmd->add_subcommand("aleksandrov");
  for (auto* sub : {levrel, fenchel}) {
    common(sub, false);
    seeded(sub);
    sub->add_option("--n-loops", config.n_loops, "number of random trials");
    sub->add_option("--samples", config.samples, "samples per loop");
  }
  common(gradient, false);
  seeded(gradient);
  gradient->add_option("--eps", config.eps, "finite-difference step");
  gradient->add_option("--samples", config.samples, "samples per loop");
  gradient->add_option("--trials", config.trials, "number of random trials");
  common(aleksandrov, false);
  seeded(aleksandrov);
  aleksandrov->add_option("--grid", config.grid, "grid points per unit length");
  aleksandrov->add_option("--trials", config.trials, "number of random trials");

  auto* synth_cmd = app.add_subcommand("synth", "synthesize a consistent model");
  synth_cmd->add_option("--example", config.example, "re-synthesize a shipped model");
  common(synth_cmd, false);
  seeded(synth_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kInputError;
  }

  for (auto* sub : {levrel, fenchel, gradient, aleksandrov, synth_cmd}) {
    if (sub->count("--seed") > 0) config.seed = seed;
  }

  if (*homology_cmd) return cmd_homology(config, out, err);
  if (*gysin_cmd) return cmd_gysin(config, out, err);
  if (*rf_cmd) {
    for (auto* sub : rf_actions) {
      if (*sub) return cmd_rf(sub->get_name(), config, out, err);
    }
  }
  if (*check_cmd) {
    for (auto* sub : {levrel, fenchel, gradient, aleksandrov}) {
      if (*sub) return cmd_check(sub->get_name(), config, out, err);
    }
  }
  if (*synth_cmd) return cmd_synth(config, out, err);
  err << "input error: no command\n";
  return kInputError;
}

}  // namespace rfh::cli
