#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sltl/formula.hpp"
#include "sltl/game_oracle.hpp"
#include "sltl/parser.hpp"
#include "sltl/tableau.hpp"

namespace sltl {

class NotOpen : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StrategyFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MealyTransition {
  int from = 0;
  Valuation letter;  // environment input and system output together
  int to = 0;
};

struct MealyMachine {
  std::vector<int> states;  // tableau node ids, or game state ids
  int initial = 0;
  std::vector<MealyTransition> transitions;
};

// The machine of the bunch the engine committed to: one state per reachable
// G psi node, success leaves folded into their loop targets.
MealyMachine extract(const Tableau& tab);

// The oracle's memory-less strategy restricted to what it can reach.
MealyMachine from_strategy(const StrategyTable& st, const Signature& sig);

// Every state has exactly one transition per environment valuation.
bool input_total(const MealyMachine& m, const Signature& sig);

struct VerifyResult {
  bool ok = true;
  std::vector<Valuation> counterexample;  // environment inputs, in order
  std::string reason;
};

// Drives the machine with every environment sequence up to `horizon`.
// Every produced prefix must be a pre-witness and every lasso closed by a
// repeated (state, window) pair a witness.
VerifyResult verify(const MealyMachine& m, const SpecFile& spec, std::size_t horizon);

std::string to_json(const MealyMachine& m, const Signature& sig);
MealyMachine from_json(const std::string& text, const Signature& sig);

// env / sys edge labels with negation written as '!'.
std::string mealy_dot(const MealyMachine& m, const Signature& sig);
std::string letter_label(const Valuation& letter, const Signature& sig);

}  // namespace sltl
