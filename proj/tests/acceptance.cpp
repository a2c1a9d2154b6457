// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rfh/aleksandrov.hpp"
#include "rfh/fixtures.hpp"
#include "rfh/json_io.hpp"
#include "rfh/morse_gysin.hpp"
#include "rfh/numeric_checks.hpp"
#include "rfh/rabinowitz_floer.hpp"

namespace {

using namespace rfh;

constexpr std::uint64_t kSeed = 1;

constexpr double kMarginTolerance = -1e-9;
constexpr double kResidualTolerance = 1e-6;
constexpr double kAleksandrovTolerance = 1e-6;
constexpr double kGradientRelative = 1e-5;
constexpr double kGradientStep = 1e-5;
constexpr double kEtaTolerance = 1e-12;
constexpr double kMinHalvingRatio = 2.0;
constexpr double kMaxHalvingRatio = 8.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

MorseData morse_example(const char* name) {
  return json_io::parse_morse_data(json_io::parse_text(std::string(fixtures::json_text(name))));
}

rf::RfModel rf_example(const char* name) {
  return json_io::parse_rf_model(json_io::parse_text(std::string(fixtures::json_text(name))));
}

std::vector<std::size_t> bundle_betti(const GysinModel& m, int n) {
  const auto h = homology(*m.sphere_bundle);
  std::vector<std::size_t> out;
  for (int k = 0; k <= 2 * n - 1; ++k) out.push_back(h.betti_at(k));
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<std::size_t> base_betti(const GysinModel& m, int n) {
  const auto h = homology(*m.base);
  std::vector<std::size_t> out;
  for (int k = 0; k <= n; ++k) out.push_back(h.betti_at(k));
  return out;
}

Outcome gysin_s2() {
  const auto data = morse_example("s2");
  const auto m = gysin_model(data);
  const auto got = bundle_betti(m, 2);
  const auto table = sphere_bundle_homology_table(base_betti(m, 2), 2, data.euler_parity);
  const auto rp3 = oracle::betti(oracle::rp3_cw());
  std::vector<std::size_t> oracle_betti;
  for (int k = 0; k <= 3; ++k) oracle_betti.push_back(rp3.at(k));
  const std::vector<std::size_t> want{1, 1, 1, 1};
  return {got == want && table == want && oracle_betti == want,
          "H(S*S2) = " + join(got) + ", table " + join(table) + ", RP3 oracle " + join(oracle_betti)};
}

Outcome gysin_t2() {
  const auto data = morse_example("t2");
  const auto m = gysin_model(data);
  const auto got = bundle_betti(m, 2);
  const auto table = sphere_bundle_homology_table(base_betti(m, 2), 2, data.euler_parity);
  const auto t3 = oracle::betti(oracle::t3_cubical());
  std::vector<std::size_t> oracle_betti;
  for (int k = 0; k <= 3; ++k) oracle_betti.push_back(t3.at(k));
  const std::vector<std::size_t> want{1, 3, 3, 1};
  return {got == want && table == want && oracle_betti == want,
          "H(S*T2) = " + join(got) + ", table " + join(table) + ", T3 oracle " + join(oracle_betti)};
}

Outcome gysin_rp2() {
  const auto m = gysin_model(morse_example("rp2"));
  const auto les = long_exact_sequence(m.sequence);
  const auto rank = les.connecting_rank(1);
  return {rank == 1 && les.nodes.size() == 12 && les.exact(),
          "connecting rank " + std::to_string(rank) + ", " + std::to_string(les.nodes.size()) +
              " nodes, exact " + (les.exact() ? "yes" : "no")};
}

Outcome main_identities() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"s2-rf", "rp2-rf"}) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = rf::verify_main(rf_example(name));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t passed = 0;
    for (const auto& c : r.identities.checks) passed += c.result.ok ? 1 : 0;
    const bool ok = passed == 8 && r.identities.checks.size() == 8 && r.sequence.ok() && seconds < 1.0;
    pass = pass && ok;
    detail << name << " " << passed << "/8 in " << seconds << " s; ";
  }
  return {pass, detail.str()};
}

Outcome hrf_tables() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"s2-rf", "rp2-rf"}) {
    const auto report = rf::hrf_table(rf_example(name));
    std::size_t rows = 0;
    bool all_expected = true;
    for (const auto& t : report.classes) {
      for (const auto& row : t.rows) {
        ++rows;
        all_expected = all_expected && row.expected.has_value();
      }
    }
    const bool ok = report.ok() && all_expected && rows > 0;
    pass = pass && ok;
    detail << name << " " << report.classes.size() << " classes, " << rows << " rows "
           << (ok ? "match" : "mismatch") << "; ";
  }
  return {pass, detail.str()};
}

Outcome cone_equivalences() {
  std::mt19937_64 rng(kSeed);
  std::size_t count = 0;
  std::size_t good = 0;
  for (int t = 0; t < 60; ++t) {
    const auto planted = oracle::planted_sequence(rng, 20);
    if (planted.generators > 20) continue;
    const auto eq = cone_equivalence(planted.sequence);
    bool ok = true;
    bool seen_rho_sigma = false;
    bool seen_homotopy = false;
    for (const auto& c : eq.checks.checks) {
      if (c.name == "rho sigma = id") {
        seen_rho_sigma = true;
        ok = ok && c.result.ok;
      }
      if (c.name == "id + sigma rho = tau d + d tau") {
        seen_homotopy = true;
        ok = ok && c.result.ok;
      }
    }
    ++count;
    good += (ok && seen_rho_sigma && seen_homotopy) ? 1 : 0;
  }
  return {count >= 50 && good == count,
          std::to_string(good) + "/" + std::to_string(count) + " split sequences on <= 20 generators"};
}

Outcome levrel_battery() {
  const auto start = std::chrono::steady_clock::now();
  const auto s = numeric::run_levrel_battery(kSeed, 1000, 256);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << "1000 loops, N = 256: min margin " << s.min_margin << ", max residual " << s.max_residual
         << ", " << seconds << " s";
  return {s.min_margin >= kMarginTolerance && s.max_residual <= kResidualTolerance && seconds < 5.0,
          detail.str()};
}

Outcome levrel2_battery() {
  const auto s = numeric::run_levrel2_battery(kSeed, 1000, 256);
  std::ostringstream detail;
  detail << "1000 trials: min margin " << s.min_margin << ", max residual " << s.max_residual;
  return {s.min_margin >= kMarginTolerance && s.max_residual <= kResidualTolerance, detail.str()};
}

Outcome aleksandrov_battery() {
  const auto start = std::chrono::steady_clock::now();
  elliptic::AleksandrovConfig config;
  config.h = 1.0 / 128.0;
  config.tolerance = kAleksandrovTolerance;
  const auto b = elliptic::run_aleksandrov_battery(kSeed, 100, config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << b.reports.size() << " trials (" << b.skipped << " skipped), h = 1/128: max margin "
         << b.max_margin << ", " << seconds << " s";
  return {b.pass && b.skipped == 0 && b.reports.size() == 100 && b.max_margin <= kAleksandrovTolerance &&
              seconds < 30.0,
          detail.str()};
}

Outcome gradient_check() {
  const auto b = numeric::run_gradient_battery(kSeed, 100, 256, kGradientStep);
  std::ostringstream detail;
  detail << "halving ratio in [" << b.min_halving_ratio << ", " << b.max_halving_ratio
         << "], eta error " << b.max_eta_error << ", relative error " << b.max_relative_error;
  return {b.min_halving_ratio >= kMinHalvingRatio && b.max_halving_ratio <= kMaxHalvingRatio &&
              b.max_eta_error <= kEtaTolerance && b.max_relative_error <= kGradientRelative,
          detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Gysin pipeline on S2", gysin_s2},
      {"Gysin pipeline on T2", gysin_t2},
      {"Gysin pipeline on RP2", gysin_rp2},
      {"main identities on the shipped models", main_identities},
      {"HRF tables on the shipped models", hrf_tables},
      {"cone equivalence on random split sequences", cone_equivalences},
      {"levrel battery", levrel_battery},
      {"levrel2 battery", levrel2_battery},
      {"Aleksandrov battery", aleksandrov_battery},
      {"gradient check", gradient_check},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                seconds);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
