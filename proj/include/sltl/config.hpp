#pragma once

#include <cstddef>

#include "sltl/tnf.hpp"

namespace sltl {

enum class Heuristic { Weakest, Declared };

struct EngineConfig {
  std::size_t max_nodes = 100000;
  std::size_t max_coverings = 64;
  std::size_t max_env_space = 65536;
  Heuristic heuristic = Heuristic::Weakest;
  bool prune_siblings = false;
  Simplify simplify = Simplify::None;
  std::size_t oracle_budget = std::size_t{1} << 24;  // game states times moves
  std::size_t horizon = 0;                            // 0: 2 * (depth + 2)
};

}  // namespace sltl
