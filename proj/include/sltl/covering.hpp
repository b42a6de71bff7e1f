#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sltl/formula.hpp"
#include "sltl/tnf.hpp"

namespace sltl {

class CoveringBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoveringLimits {
  std::size_t max_coverings = 64;
  std::size_t max_env_space = 65536;
};

// Valuations over `vars` (others fixed at 0) agreeing with every literal
// that mentions one of `vars`.
std::vector<Valuation> val_of(const std::vector<Literal>& lits, const std::vector<int>& vars,
                              const Signature& sig);

// The explicit environment valuation space Val(X).
class EnvSpace {
 public:
  EnvSpace(const Signature& sig, std::size_t max_env_space = 65536);

  std::size_t size() const { return vals_.size(); }
  const Valuation& at(std::size_t i) const { return vals_[i]; }
  const std::vector<Valuation>& all() const { return vals_; }
  std::size_t index_of(const Valuation& v) const;
  bool is_env(int var) const { return sig_->is_env(var); }
  const std::vector<int>& vars() const { return env_; }

 private:
  const Signature* sig_;
  std::vector<int> env_;
  std::vector<Valuation> vals_;
};

// Bitset of environment valuations.
class Cell {
 public:
  explicit Cell(std::size_t n = 0) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void unite(const Cell& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  }
  bool full() const;
  bool subset_of(const Cell& o) const;
  std::size_t first_unset() const;  // n_ if full
  std::size_t count() const;
  std::size_t universe() const { return n_; }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> w_;
};

// Val_{pi}(X) for one move.
Cell env_cell(const SeparatedMove& m, const EnvSpace& env);
std::vector<Cell> env_cells(const TnfFormula& t, const EnvSpace& env);

bool is_x_covering(const TnfFormula& t, const Signature& sig, const CoveringLimits& lim = {});
bool is_x_covering(const std::vector<Cell>& cells, const std::vector<int>& subset, std::size_t universe);

// Every minimal covering as a sorted index set. Exhaustive or it throws.
std::vector<std::vector<int>> minimal_x_coverings(const std::vector<Cell>& cells, std::size_t universe,
                                                  std::size_t max_coverings = 64);
std::vector<std::vector<int>> minimal_x_coverings(const TnfFormula& t, const Signature& sig,
                                                  const CoveringLimits& lim = {});

}  // namespace sltl
