#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sltl/formula.hpp"
#include "sltl/parser.hpp"

namespace sltl {

class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// λ_0 satisfies the initial formula and every suffix of λ satisfies the
// safety body finitely. By monotonicity this is the same as every prefix
// being violation-free.
bool is_pre_witness(const Trace& lambda, const SpecFile& spec);

// λ_0..λ_{j-1} (λ_j..λ_{d-1})^ω is a model of init & G safety.
bool is_lasso_witness(const Trace& lambda, std::size_t loop_start, const SpecFile& spec);

// A pre-witness with some lasso point that makes it a model.
bool is_witness(const Trace& lambda, const SpecFile& spec);

struct GameState {
  std::vector<Valuation> window;  // the last depth(safety) letters, oldest first
  bool initial = false;           // nothing played yet
  bool violated = false;  // only the absorbing sink, reached through a -1 successor
};

// Sally's memory-less strategy over the reachable game states.
struct StrategyTable {
  std::vector<int> vars;                // relevant variables, the rest stay at 0
  std::vector<int> env_vars;            // the environment ones among them
  std::vector<Valuation> env_letters;   // environment valuations over `vars`
  std::vector<Valuation> sys_letters;   // system valuations over `vars`
  std::vector<GameState> states;
  int initial = 0;
  std::vector<std::vector<int>> choice;  // [state][env] -> sys index, -1 where losing
  std::vector<std::vector<int>> next;    // [state][env] -> successor, -1 where losing

  // Index of the environment letter agreeing with `v` on the relevant variables.
  std::size_t env_index(const Valuation& v) const;
};

struct OracleOptions {
  std::size_t budget = std::size_t{1} << 24;  // states times letters
  bool lazy = false;                          // reachable states only
};

struct OracleResult {
  bool realizable = false;
  std::optional<StrategyTable> strategy;
  std::size_t states = 0;
  std::size_t iterations = 0;  // attractor sweeps until the fixpoint
};

OracleResult solve(const SpecFile& spec, const OracleOptions& opt = {});

}  // namespace sltl
