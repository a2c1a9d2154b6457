#pragma once

// Construction of consistent Rabinowitz-Floer models from Morse data. The
// base model splits as the two Morse complexes glued along the Euler class;
// a filtered change of basis and an optional degree-zero homotopy then hide
// that splitting.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "rfh/morse_gysin.hpp"
#include "rfh/rabinowitz_floer.hpp"

namespace rfh::rf {

struct ModelSkeleton {
  MorseData constant;
  std::vector<Orbit> orbits;
  std::string contractible_class = "0";
  std::map<std::string, std::string> class_negation;
  std::map<std::string, std::vector<std::string>> morse_boundary;
  std::map<std::string, std::vector<std::string>> comorse_boundary;
  // Orbit of minus index zero in the contractible class; makes Psi Phi
  // nonzero on the minimum.
  std::optional<std::string> homotopy_target;
};

struct SynthesisOptions {
  std::uint64_t seed = 0;
  std::size_t basis_moves = 0;
};

RfModel synthesize_model(const ModelSkeleton& skeleton, const SynthesisOptions& options);

// Random self-indexing Morse data on an n-manifold with a unique minimum and
// maximum, palindromic extra homology in the middle degrees and hidden
// cancelling pairs.
MorseData random_morse_data(std::mt19937_64& rng, int dimension);

// Random skeleton with a few orbit families in several classes.
ModelSkeleton random_skeleton(std::mt19937_64& rng);

}  // namespace rfh::rf
