#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rfh/errors.hpp"
#include "rfh/fixtures.hpp"
#include "rfh/json_io.hpp"
#include "rfh/rabinowitz_floer.hpp"
#include "rfh/rf_synthesis.hpp"

using namespace rfh;
using namespace rfh::rf;

namespace {

RfModel shipped(const std::string& name) {
  return json_io::parse_rf_model(json_io::parse_text(std::string(fixtures::json_text(name))));
}

MorseData morse_example(const std::string& name) {
  return json_io::parse_morse_data(json_io::parse_text(std::string(fixtures::json_text(name))));
}

// Only the constant loops; the differential is the glued Morse complexes.
RfModel constant_only(const std::string& name) {
  RfModel m;
  m.constant = morse_example(name);
  for (const auto& [q, ts] : m.constant.boundary) {
    for (const auto& t : ts) {
      m.rf_boundary[plus_id(q)].push_back(plus_id(t));
      m.rf_boundary[minus_id(q)].push_back(minus_id(t));
    }
  }
  if (m.euler_parity()) {
    m.rf_boundary[minus_id(m.constant.maximum().id)].push_back(plus_id(m.constant.minimum().id));
  }
  return m;
}

ModelErrorKind error_kind(const RfModel& m) {
  try {
    build_complexes(m);
  } catch (const ModelError& e) {
    return e.kind();
  }
  FAIL("model was accepted");
  return ModelErrorKind::Census;
}

// Betti numbers per class from dense elimination, and the values forced by the
// long exact sequence whose connecting map is the Euler bit on q_max -> q_min.
void check_against_oracle(const RfModel& model) {
  const auto cx = build_complexes(model);
  const auto report = hrf_table(model);
  CHECK(report.ok());
  for (const auto& table : report.classes) {
    auto in_class = [&](const GradedF2Complex& c, const std::string& klass) {
      return restrict_to(c, [&](const std::string& id) {
        return c.label(id).klass.value_or("") == klass;
      });
    };
    // Z-(gamma) carries the negated class of gamma.
    const auto rf = oracle::betti(in_class(*cx.rf, table.klass));
    const auto m = oracle::betti(in_class(*cx.morse, table.klass));
    const auto c = oracle::betti(in_class(*cx.comorse, model.negate(table.klass)));
    auto at = [](const std::map<int, std::size_t>& b, int k) -> long long {
      auto it = b.find(k);
      return it == b.end() ? 0 : static_cast<long long>(it->second);
    };
    const long long chi = table.klass == model.contractible_class ? model.euler_parity() : 0;
    for (const auto& row : table.rows) {
      CHECK(static_cast<long long>(row.computed) == at(rf, row.degree));
      const long long predicted =
          at(m, row.degree) + at(c, row.degree) - chi * ((row.degree == 0) + (row.degree == 1));
      CHECK(at(rf, row.degree) == predicted);
    }
  }
}

// Degreewise RF = im Theta + span of the Z- generators, Euler characteristic
// of RF against the two Morse complexes, and the support of Delta.
void check_structure(const MainIdentityReport& r) {
  const auto& rf = *r.complexes.rf;
  long long euler_rf = 0;
  long long euler_parts = 0;
  const int lo = std::min({rf.min_degree(), r.complexes.morse->min_degree(), r.complexes.comorse->min_degree()});
  const int hi = std::max({rf.max_degree(), r.complexes.morse->max_degree(), r.complexes.comorse->max_degree()});
  for (int k = lo; k <= hi; ++k) {
    const long long sign = (k % 2 == 0) ? 1 : -1;
    euler_rf += sign * static_cast<long long>(rf.dim(k));
    euler_parts += sign * static_cast<long long>(r.complexes.morse->dim(k) + r.complexes.comorse->dim(k));
    if (rf.dim(k) == 0) continue;
    auto columns = r.theta.matrix(k).columns();
    std::size_t minus = 0;
    for (const auto& id : rf.ids(k)) {
      if (id.rfind("Z-(", 0) == 0) {
        columns.push_back(rf.basis_vector(id));
        ++minus;
      }
    }
    CHECK(columns.size() == rf.dim(k));
    CHECK(f2::span_rank(columns, rf.dim(k)) == rf.dim(k));
    CHECK(minus + r.complexes.morse->dim(k) == rf.dim(k));
  }
  CHECK(euler_rf == euler_parts);
  for (const auto& [id, targets] : r.delta.images()) {
    CHECK(r.complexes.comorse->at(id).degree == 1);
  }
}

}  // namespace

TEST_SUITE("rabinowitz-floer") {
  TEST_CASE("shipped models satisfy every identity") {
    for (const std::string name : {"s2-rf", "rp2-rf"}) {
      CAPTURE(name);
      const auto model = shipped(name);
      const auto r = verify_main(model);
      for (const auto& c : r.identities.checks) {
        CAPTURE(c.name);
        CHECK(c.result.ok);
      }
      CHECK(r.identities.checks.size() == 8);
      CHECK(r.sequence.ok());
      CHECK(r.homotopy_derived);
      CHECK(r.minimum_positive_energy);
      CHECK(action_isomorphisms(model, r.complexes).ok());
      check_against_oracle(model);
      check_structure(r);
    }
  }

  TEST_CASE("shipped models are reproduced by synthesis") {
    CHECK(json_io::to_json(synthesize_model(fixtures::s2_rf_skeleton(), fixtures::kS2RfOptions)) ==
          json_io::to_json(shipped("s2-rf")));
    CHECK(json_io::to_json(synthesize_model(fixtures::rp2_rf_skeleton(), fixtures::kRp2RfOptions)) ==
          json_io::to_json(shipped("rp2-rf")));
  }

  TEST_CASE("connecting map is q_max -> q_min exactly when the Euler bit is set") {
    const auto rp2 = verify_main(shipped("rp2-rf"));
    CHECK(rp2.delta.image_of("M") == std::vector<std::string>{"m"});
    const auto s2 = verify_main(shipped("s2-rf"));
    CHECK(s2.delta.image_of("n").empty());
  }

  TEST_CASE("a tampered homotopy fails identity (i)") {
    auto model = shipped("s2-rf");
    model.homotopy = std::map<std::string, std::vector<std::string>>{};
    const auto r = verify_main(model);
    CHECK_FALSE(r.ok());
    const auto* bad = r.identities.first_failure();
    REQUIRE(bad != nullptr);
    CHECK(bad->name.rfind("(i)", 0) == 0);
    REQUIRE(bad->result.witness);
    CHECK(bad->result.witness->note == "Psi Phi = P d + d P");
  }

  TEST_CASE("constant-loop models") {
    for (const std::string name : {"s2", "t2", "rp2"}) {
      CAPTURE(name);
      const auto model = constant_only(name);
      const auto r = verify_main(model);
      CHECK(r.ok());
      check_against_oracle(model);
    }
  }

  TEST_CASE("model errors name the violated constraint") {
    auto m = constant_only("s2");
    m.rf_degrees = {{"Z+(s)", 1}};
    CHECK(error_kind(m) == ModelErrorKind::Census);

    m = constant_only("s2");
    m.orbits.push_back({"g2", 2, 2, 1.0, 1.0, "0"});
    m.orbits.push_back({"g1", 1, 2, 1.0, 0.0, "0"});
    m.rf_boundary["Z+(g2)"] = {"Z+(g1)"};
    m.rf_boundary["Z+(g1)"] = {"Z+(s)"};
    CHECK(error_kind(m) == ModelErrorKind::DSquared);

    m = constant_only("s2");
    m.orbits.push_back({"g", 2, 0, 1.0, 0.0, "0"});
    m.rf_boundary["Z-(g)"] = {"Z+(s)"};
    CHECK(error_kind(m) == ModelErrorKind::Filtration);

    m = constant_only("s2");
    m.orbits.push_back({"g", 1, 0, 1.0, 0.0, "a"});
    m.rf_boundary["Z+(g)"] = {"Z+(s)"};
    CHECK(error_kind(m) == ModelErrorKind::Filtration);

    m = constant_only("s2");
    m.rf_boundary["Z-(n)"] = {"Z+(s)"};
    CHECK(error_kind(m) == ModelErrorKind::ConstantStratum);

    m = constant_only("rp2");
    m.rf_boundary.erase("Z-(M)");
    CHECK(error_kind(m) == ModelErrorKind::ConstantStratum);

    m = constant_only("s2");
    m.phi_terms["s"] = {"Z-(n)"};
    CHECK(error_kind(m) == ModelErrorKind::Coefficients);

    m = constant_only("s2");
    m.phi_terms["s"] = {"nowhere"};
    CHECK_THROWS_AS(build_complexes(m), InputError);
  }

  TEST_CASE("random synthesized models") {
    std::mt19937_64 rng(77);
    std::size_t verified = 0;
    for (int t = 0; t < 40; ++t) {
      const auto sk = random_skeleton(rng);
      const auto model = synthesize_model(sk, {static_cast<std::uint64_t>(t), 20});
      const auto r = verify_main(model);
      for (const auto& c : r.identities.checks) {
        CAPTURE(c.name);
        CHECK(c.result.ok);
      }
      CHECK(r.sequence.ok());
      CHECK(action_isomorphisms(model, r.complexes).ok());
      check_against_oracle(model);
      check_structure(r);
      const auto again = json_io::parse_rf_model(json_io::to_json(model));
      CHECK(json_io::to_json(again) == json_io::to_json(model));
      ++verified;
    }
    CHECK(verified == 40);
  }

  TEST_CASE("action windows") {
    const auto model = shipped("rp2-rf");
    const auto cx = build_complexes(model);
    const std::vector<double> cuts{-4.0, -2.5, -1.0, 0.0, 1.0, 2.5, 4.0};
    for (double lo : cuts) {
      for (double hi : cuts) {
        if (hi < lo) continue;
        ActionWindow w{lo, hi, true, true};
        const auto f = filter_by_action(*cx.rf, w);
        CHECK_FALSE(d_squared_witness(f));
        for (int k = f.min_degree(); k <= f.max_degree(); ++k) {
          for (const auto& id : f.ids(k)) CHECK(w.contains(*f.label(id).action));
        }
        for (double lo2 : cuts) {
          for (double hi2 : cuts) {
            if (lo2 < lo || hi2 < hi || hi2 < lo2) continue;
            CHECK(verify_chain_map(window_map(cx.rf, w, {lo2, hi2, true, true})).ok);
          }
        }
      }
    }
    CHECK_THROWS_AS(window_map(cx.rf, {0.0, 1.0}, {-1.0, 1.0}), InputError);

    // Nested window maps compose to the direct map.
    for (std::size_t a = 0; a + 2 < cuts.size(); ++a) {
      const ActionWindow w0{cuts[a], cuts[a + 1], true, true};
      const ActionWindow w1{cuts[a + 1], cuts[a + 2], true, true};
      const ActionWindow w2{cuts[a + 1], cuts.back(), true, true};
      const auto direct = window_map(cx.rf, w0, w2);
      const auto two_step = compose(window_map(cx.rf, w1, w2), window_map(cx.rf, w0, w1));
      CHECK(two_step.images() == direct.images());
    }

    // Expected values only apply to the whole complex.
    const auto partial = hrf_table(model, {0.0, 100.0, true, true});
    for (const auto& t : partial.classes) {
      for (const auto& row : t.rows) CHECK_FALSE(row.expected);
    }
    const auto whole = hrf_table(model, {-100.0, 100.0, true, true});
    CHECK(whole.ok());
    CHECK(whole.classes.front().rows.front().expected.has_value());
  }
}
