#pragma once

#include <cstdint>
#include <random>

#include "sltl/parser.hpp"

namespace sltl {

struct RandomSpecOptions {
  int max_env = 2;                        // 1..max_env boolean inputs
  int max_sys = 2;                        // 1..max_sys boolean outputs
  int max_bound = 4;                      // interval upper bounds
  int max_size = 12;                      // operators and atoms in the safety body
  std::size_t max_game = std::size_t{1} << 16;  // letters^(depth+1) cap, resampled above
};

// A random safety spec over a small boolean signature. Specs whose window
// game would exceed `max_game` are resampled, so the oracle can decide
// every spec produced.
SpecFile random_spec(std::mt19937_64& rng, const RandomSpecOptions& opt = {});

// Random formula over the signature with at most `size` operators and
// atoms; `temporal` false keeps it boolean.
Formula random_formula(std::mt19937_64& rng, const Signature& sig, int size, int max_bound, bool temporal);

}  // namespace sltl
