#pragma once

#include <stdexcept>
#include <vector>

#include "sltl/formula.hpp"

namespace sltl {

// A strict-future formula as the DOr of conjunct sets. Every conjunct is a
// from-next formula. The empty list stands for True (no obligation).
using StrictFuture = std::vector<std::vector<Formula>>;

struct SeparatedMove {
  std::vector<Literal> literals;  // sorted, consistent
  StrictFuture future;            // empty: no strict-future part

  bool has_future() const { return !future.empty(); }
  Formula future_formula() const;  // True or a DOr (possibly of one disjunct)
  Formula formula() const;         // literals & future
};

struct TnfFormula {
  std::vector<SeparatedMove> moves;  // empty: the formula is False
  Formula formula() const;
};

enum class Simplify { None, Subsume };

class TnfBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unfolds from-now F/G one step and distributes into moves whose literals
// and from-next parts are separated. Moves may still overlap.
std::vector<SeparatedMove> dnf_expand(const Formula& f, const Signature& sig);

// Pairwise rewriting until any two moves clash on some literal.
TnfFormula tnf(const Formula& f, const Signature& sig, Simplify simplify = Simplify::None);

bool clashes(const SeparatedMove& a, const SeparatedMove& b);
bool has_clash_property(const TnfFormula& t);

// Strict-future helpers.
StrictFuture as_future(const Formula& f);  // DOr/Or of conjunctions
Formula future_to_formula(const StrictFuture& sf);
StrictFuture normalize_future(StrictFuture sf);
StrictFuture future_union(const StrictFuture& a, const StrictFuture& b);

// delta^E: every conjunct of every disjunct starts with X.
StrictFuture elementary(const StrictFuture& delta);
Formula elementary(const Formula& delta);
bool is_elementary(const StrictFuture& delta);

// delta↓: strips one X from every conjunct of an elementary formula.
Formula step_down(const StrictFuture& delta);
Formula step_down(const Formula& delta);

}  // namespace sltl
