#pragma once

// JSON formats for complexes, maps, Morse data and Rabinowitz-Floer models.
// Parsers throw InputError with the JSON pointer of the offending value.
// Emitters are deterministic: keys are sorted and doubles round-trip.

#include <json.hpp>
#include <string>

#include "rfh/chain_complex.hpp"
#include "rfh/exact_sequences.hpp"
#include "rfh/morse_gysin.hpp"
#include "rfh/rabinowitz_floer.hpp"

namespace rfh::json_io {

using nlohmann::json;

json parse_text(const std::string& text, const std::string& source_name = "input");
json read_file(const std::string& path);

GradedF2Complex parse_complex(const json& j);
json to_json(const GradedF2Complex& c);

// {"shift": s, "images": {id: [ids]}}
GradedMap parse_map(const json& j, ComplexPtr source, ComplexPtr target);
json to_json(const GradedMap& f);

MorseData parse_morse_data(const json& j);
json to_json(const MorseData& data);

rf::RfModel parse_rf_model(const json& j);
json to_json(const rf::RfModel& model);

json to_json(const Witness& w);
json to_json(const CheckList& checks);
json to_json(const HomologySummary& h, const GradedF2Complex& c);
json to_json(const LongExactSequence& les);

}  // namespace rfh::json_io
