#pragma once

#include <vector>

#include "sltl/formula.hpp"

namespace sltl {

// beta ⊑ gamma: beta subsumes gamma, so beta implies gamma. Covers the
// interval rules for F/G/X^k, the classical rules for & and |, and the
// lifting to strict-future disjunctions.
bool subsumes(const Formula& beta, const Formula& gamma);

// Conjunction-set order: every member of `weak` is subsumed by some member
// of `strong`. Then `strong` implies `weak`.
bool set_leq(const std::vector<Formula>& strong, const std::vector<Formula>& weak);

// Disjunction lifting: every disjunct of `strong` is set_leq some disjunct
// of `weak`.
bool future_leq(const std::vector<std::vector<Formula>>& strong,
                const std::vector<std::vector<Formula>>& weak);

// Drops every member that is subsumed by another (weaker members go), then
// returns the canonical sorted set.
std::vector<Formula> reduce_set(std::vector<Formula> fs);

// Literal-level clauses: F present, x=c1 with x=c2, every constant of x
// excluded, or a literal with its negation.
bool literals_inconsistent(const std::vector<Literal>& lits, const Signature& sig);

// The full check: the literal clauses plus {beta, ~gamma} with beta ⊑ gamma.
bool inconsistent(const std::vector<Formula>& phi, const Signature& sig);

}  // namespace sltl
