#include "rfh/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rfh/errors.hpp"

namespace rfh::json_io {

namespace {

std::string pointer(const std::string& base, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') {
      escaped += "~0";
    } else if (ch == '/') {
      escaped += "~1";
    } else {
      escaped += ch;
    }
  }
  return base + "/" + escaped;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const json& require(const json& j, const std::string& where, const std::string& key) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(pointer(where, key), "missing field");
  return *it;
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(pointer(where, it.key()), "unknown field");
  }
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) fail(where, "integer out of range");
  return static_cast<int>(v);
}

double get_double(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::map<std::string, std::vector<std::string>> get_string_lists(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object of string arrays");
  std::map<std::string, std::vector<std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = get_strings(it.value(), pointer(where, it.key()));
  return out;
}

std::map<std::string, std::vector<std::string>> optional_lists(const json& j, const std::string& where,
                                                               const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  return get_string_lists(*it, pointer(where, key));
}

int parse_degree_key(const std::string& key, const std::string& where) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    fail(where, "degree key is not an integer");
  }
  if (used != key.size()) fail(where, "degree key is not an integer");
  return k;
}

json lists_to_json(const std::map<std::string, std::vector<std::string>>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

// Rethrows builder and library errors with a location prefix.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const VerificationError&) {
    throw;
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

}  // namespace

json parse_text(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source_name + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

GradedF2Complex parse_complex(const json& j) {
  only_keys(j, "", {"degrees", "boundary", "labels", "window"});
  GradedF2Complex::Builder b;
  if (auto it = j.find("window"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) fail("/window", "expected [lo, hi]");
    const int lo = get_int((*it)[0], "/window/0");
    const int hi = get_int((*it)[1], "/window/1");
    if (lo > hi) fail("/window", "window is not well ordered");
    b.window(lo, hi);
  }
  const json& degrees = require(j, "", "degrees");
  if (!degrees.is_object()) fail("/degrees", "expected an object");
  const json labels = j.value("labels", json::object());
  if (!labels.is_object()) fail("/labels", "expected an object");
  for (auto it = degrees.begin(); it != degrees.end(); ++it) {
    const std::string where = pointer("/degrees", it.key());
    const int k = parse_degree_key(it.key(), where);
    for (const auto& id : get_strings(it.value(), where)) {
      GeneratorLabel label;
      if (auto l = labels.find(id); l != labels.end()) {
        const std::string lw = pointer("/labels", id);
        only_keys(*l, lw, {"action", "class", "value"});
        if (l->contains("action")) label.action = get_double((*l)["action"], lw + "/action");
        if (l->contains("class")) label.klass = get_string((*l)["class"], lw + "/class");
        if (l->contains("value")) label.value = get_double((*l)["value"], lw + "/value");
      }
      located(where, [&] { b.add_generator(id, k, label); });
    }
  }
  std::set<std::string> known;
  for (auto d = degrees.begin(); d != degrees.end(); ++d) {
    for (const auto& id : d.value()) known.insert(id.get<std::string>());
  }
  for (auto it = labels.begin(); it != labels.end(); ++it) {
    if (!known.count(it.key())) fail(pointer("/labels", it.key()), "label for an unknown generator");
  }
  for (const auto& [id, targets] : optional_lists(j, "", "boundary")) {
    const std::string where = pointer("/boundary", id);
    if (!known.count(id)) fail(where, "boundary of an unknown generator");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (!known.count(targets[i])) {
        fail(where + "/" + std::to_string(i), "unknown generator '" + targets[i] + "'");
      }
    }
    located(where, [&] { b.set_boundary(id, targets); });
  }
  return located("", [&] { return b.build(); });
}

json to_json(const GradedF2Complex& c) {
  json degrees = json::object();
  json boundary = json::object();
  json labels = json::object();
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    degrees[std::to_string(k)] = c.ids(k);
    for (std::size_t i = 0; i < c.dim(k); ++i) {
      const auto& id = c.id(k, i);
      auto bd = c.boundary_of(id);
      if (!bd.empty()) boundary[id] = bd;
      const auto& l = c.label(k, i);
      json lj = json::object();
      if (l.action) lj["action"] = *l.action;
      if (l.klass) lj["class"] = *l.klass;
      if (l.value) lj["value"] = *l.value;
      if (!lj.empty()) labels[id] = lj;
    }
  }
  json out = {{"degrees", degrees}, {"boundary", boundary}};
  if (!c.empty()) out["window"] = {c.min_degree(), c.max_degree()};
  if (!labels.empty()) out["labels"] = labels;
  return out;
}

GradedMap parse_map(const json& j, ComplexPtr source, ComplexPtr target) {
  only_keys(j, "", {"shift", "images"});
  const int shift = get_int(require(j, "", "shift"), "/shift");
  const auto images = optional_lists(j, "", "images");
  return located("/images", [&] { return GradedMap::from_images(source, target, shift, images); });
}

json to_json(const GradedMap& f) { return {{"shift", f.shift()}, {"images", lists_to_json(f.images())}}; }

MorseData parse_morse_data(const json& j, const std::string& base) {
  only_keys(j, base, {"dimension", "n", "critical_points", "boundary", "boundary_counts", "euler"});
  MorseData d;
  if (j.contains("dimension") && j.contains("n")) fail(base + "/n", "give either dimension or n");
  const char* dim_key = j.contains("n") ? "n" : "dimension";
  d.dimension = get_int(require(j, base, dim_key), pointer(base, dim_key));
  const json& cps = require(j, base, "critical_points");
  if (!cps.is_array()) fail(base + "/critical_points", "expected an array");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const std::string where = base + "/critical_points/" + std::to_string(i);
    only_keys(cps[i], where, {"id", "index", "value"});
    CriticalPoint cp;
    cp.id = get_string(require(cps[i], where, "id"), where + "/id");
    cp.index = get_int(require(cps[i], where, "index"), where + "/index");
    cp.value = cps[i].contains("value") ? get_double(cps[i]["value"], where + "/value")
                                        : static_cast<double>(cp.index);
    d.critical_points.push_back(cp);
  }
  d.boundary = optional_lists(j, base, "boundary");
  if (auto it = j.find("boundary_counts"); it != j.end()) {
    const std::string where = pointer(base, "boundary_counts");
    if (j.contains("boundary")) fail(where, "give either boundary or boundary_counts");
    if (!it->is_object()) fail(where, "expected an object");
    for (auto e = it->begin(); e != it->end(); ++e) {
      const std::string w = pointer(where, e.key());
      const auto bar = e.key().find('|');
      if (bar == std::string::npos || e.key().find('|', bar + 1) != std::string::npos) {
        fail(w, "expected a key of the form \"q|q'\"");
      }
      const int count = get_int(e.value(), w);
      if (count != 0 && count != 1) fail(w, "expected 0 or 1");
      if (count == 1) d.boundary[e.key().substr(0, bar)].push_back(e.key().substr(bar + 1));
    }
  }
  d.euler_parity = get_int(require(j, base, "euler"), base + "/euler");
  if (d.euler_parity != 0 && d.euler_parity != 1) fail(base + "/euler", "expected 0 or 1");
  return d;
}

MorseData parse_morse_data(const json& j) { return parse_morse_data(j, ""); }

json to_json(const MorseData& d) {
  json cps = json::array();
  for (const auto& cp : d.critical_points) cps.push_back({{"id", cp.id}, {"index", cp.index}, {"value", cp.value}});
  return {{"dimension", d.dimension},
          {"critical_points", cps},
          {"boundary", lists_to_json(d.boundary)},
          {"euler", d.euler_parity}};
}

rf::RfModel parse_rf_model(const json& j) {
  only_keys(j, "", {"constant", "orbits", "contractible_class", "class_negation", "morse_boundary",
                    "comorse_boundary", "rf", "phi", "psi", "homotopy"});
  rf::RfModel m;
  m.constant = parse_morse_data(require(j, "", "constant"), "/constant");
  if (auto it = j.find("orbits"); it != j.end()) {
    if (!it->is_array()) fail("/orbits", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& o = (*it)[i];
      const std::string where = "/orbits/" + std::to_string(i);
      only_keys(o, where, {"id", "ind_plus", "ind_minus", "energy", "value", "class"});
      rf::Orbit orbit;
      orbit.id = get_string(require(o, where, "id"), where + "/id");
      orbit.ind_plus = get_int(require(o, where, "ind_plus"), where + "/ind_plus");
      orbit.ind_minus = get_int(require(o, where, "ind_minus"), where + "/ind_minus");
      orbit.energy = get_double(require(o, where, "energy"), where + "/energy");
      if (!(orbit.energy > 0.0)) fail(where + "/energy", "orbit energy must be positive");
      orbit.value = get_double(require(o, where, "value"), where + "/value");
      orbit.klass = get_string(require(o, where, "class"), where + "/class");
      m.orbits.push_back(orbit);
    }
  }
  if (auto it = j.find("contractible_class"); it != j.end()) {
    m.contractible_class = get_string(*it, "/contractible_class");
  }
  if (auto it = j.find("class_negation"); it != j.end()) {
    if (!it->is_object()) fail("/class_negation", "expected an object");
    for (auto c = it->begin(); c != it->end(); ++c) {
      m.class_negation[c.key()] = get_string(c.value(), pointer("/class_negation", c.key()));
    }
  }
  m.morse_boundary = optional_lists(j, "", "morse_boundary");
  m.comorse_boundary = optional_lists(j, "", "comorse_boundary");
  const json& rfj = require(j, "", "rf");
  only_keys(rfj, "/rf", {"degrees", "boundary"});
  if (auto it = rfj.find("degrees"); it != rfj.end()) {
    if (!it->is_object()) fail("/rf/degrees", "expected an object");
    for (auto d = it->begin(); d != it->end(); ++d) {
      m.rf_degrees[d.key()] = get_int(d.value(), pointer("/rf/degrees", d.key()));
    }
  }
  m.rf_boundary = optional_lists(rfj, "/rf", "boundary");
  m.phi_terms = optional_lists(j, "", "phi");
  m.psi_terms = optional_lists(j, "", "psi");
  if (j.contains("homotopy")) m.homotopy = get_string_lists(j["homotopy"], "/homotopy");
  return m;
}

json to_json(const rf::RfModel& m) {
  json orbits = json::array();
  for (const auto& o : m.orbits) {
    orbits.push_back({{"id", o.id},
                      {"ind_plus", o.ind_plus},
                      {"ind_minus", o.ind_minus},
                      {"energy", o.energy},
                      {"value", o.value},
                      {"class", o.klass}});
  }
  json negation = json::object();
  for (const auto& [a, b] : m.class_negation) negation[a] = b;
  json degrees = json::object();
  for (const auto& [id, k] : m.rf_degrees) degrees[id] = k;
  json out = {{"constant", to_json(m.constant)},
              {"orbits", orbits},
              {"contractible_class", m.contractible_class},
              {"class_negation", negation},
              {"morse_boundary", lists_to_json(m.morse_boundary)},
              {"comorse_boundary", lists_to_json(m.comorse_boundary)},
              {"rf", {{"degrees", degrees}, {"boundary", lists_to_json(m.rf_boundary)}}},
              {"phi", lists_to_json(m.phi_terms)},
              {"psi", lists_to_json(m.psi_terms)}};
  if (m.homotopy) out["homotopy"] = lists_to_json(*m.homotopy);
  return out;
}

json to_json(const Witness& w) {
  json out = {{"generator", w.generator}, {"degree", w.degree}, {"discrepancy", w.discrepancy}};
  if (!w.note.empty()) out["note"] = w.note;
  return out;
}

json to_json(const CheckList& checks) {
  json out = json::array();
  for (const auto& c : checks.checks) {
    json entry = {{"name", c.name}, {"ok", c.result.ok}};
    if (c.result.witness) entry["witness"] = to_json(*c.result.witness);
    out.push_back(entry);
  }
  return out;
}

json to_json(const HomologySummary& h, const GradedF2Complex& c) {
  json betti = json::object();
  json reps = json::object();
  for (int k = h.min_degree; k <= h.max_degree(); ++k) {
    const auto key = std::to_string(k);
    betti[key] = h.betti_at(k);
    json classes = json::array();
    for (const auto& v : h.representatives[static_cast<std::size_t>(k - h.min_degree)]) {
      classes.push_back(c.ids_of(k, v));
    }
    reps[key] = classes;
  }
  return {{"betti", betti}, {"representatives", reps}, {"total", h.total()}};
}

json to_json(const LongExactSequence& les) {
  json nodes = json::array();
  for (const auto& n : les.nodes) {
    nodes.push_back({{"space", n.space}, {"degree", n.degree}, {"dim", n.dim}, {"exact", n.exact}});
  }
  return {{"nodes", nodes}, {"exact", les.exact()}};
}

}  // namespace rfh::json_io
