#pragma once

// Built-in example inputs shipped as embedded JSON.

#include <string>
#include <string_view>
#include <vector>

#include "rfh/rf_synthesis.hpp"

namespace rfh::fixtures {

// Names accepted by --example.
const std::vector<std::string>& names();
// Morse data for s2, t2, rp2; Rabinowitz-Floer models for s2-rf, rp2-rf.
// Throws InputError for unknown names.
std::string_view json_text(std::string_view name);
bool is_rf_model(std::string_view name);

// Skeletons and options the two shipped models were synthesized from.
rf::ModelSkeleton s2_rf_skeleton();
rf::ModelSkeleton rp2_rf_skeleton();
constexpr rf::SynthesisOptions kS2RfOptions{20240611, 24};
constexpr rf::SynthesisOptions kRp2RfOptions{20240612, 24};

}  // namespace rfh::fixtures
