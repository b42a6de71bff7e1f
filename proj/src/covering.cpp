#include "sltl/covering.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace sltl {

std::vector<Valuation> val_of(const std::vector<Literal>& lits, const std::vector<int>& vars,
                              const Signature& sig) {
  std::vector<Valuation> out;
  for (auto& v : enumerate_valuations(sig, vars)) {
    bool ok = true;
    for (const auto& l : lits) {
      if (std::find(vars.begin(), vars.end(), l.var) == vars.end()) continue;
      if (!l.holds(v)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

// ===========================================================================
// EnvSpace and cells

EnvSpace::EnvSpace(const Signature& sig, std::size_t max_env_space) : sig_(&sig), env_(sig.env_vars()) {
  std::size_t n = 1;
  for (int v : env_) {
    n *= static_cast<std::size_t>(sig.vars[v].size());
    if (n > max_env_space)
      throw CoveringBudgetExceeded("environment space exceeds " + std::to_string(max_env_space) +
                                   " valuations");
  }
  vals_ = enumerate_valuations(sig, env_);
}

std::size_t EnvSpace::index_of(const Valuation& v) const {
  std::size_t idx = 0;
  for (int x : env_) idx = idx * static_cast<std::size_t>(sig_->vars[x].size()) + static_cast<std::size_t>(v[x]);
  return idx;
}

bool Cell::full() const { return first_unset() == n_; }

bool Cell::subset_of(const Cell& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & ~o.w_[k]) return false;
  return true;
}

std::size_t Cell::first_unset() const {
  for (std::size_t k = 0; k < w_.size(); ++k) {
    std::uint64_t inv = ~w_[k];
    if (inv) {
      std::size_t i = k * 64 + static_cast<std::size_t>(std::countr_zero(inv));
      return i < n_ ? i : n_;
    }
  }
  return n_;
}

std::size_t Cell::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Cell env_cell(const SeparatedMove& m, const EnvSpace& env) {
  Cell c(env.size());
  for (std::size_t i = 0; i < env.size(); ++i) {
    const Valuation& v = env.at(i);
    bool ok = true;
    for (const auto& l : m.literals) {
      if (!env.is_env(l.var)) continue;
      if (!l.holds(v)) {
        ok = false;
        break;
      }
    }
    if (ok) c.set(i);
  }
  return c;
}

std::vector<Cell> env_cells(const TnfFormula& t, const EnvSpace& env) {
  std::vector<Cell> out;
  out.reserve(t.moves.size());
  for (const auto& m : t.moves) out.push_back(env_cell(m, env));
  return out;
}

// ===========================================================================
// Coverings

bool is_x_covering(const std::vector<Cell>& cells, const std::vector<int>& subset, std::size_t universe) {
  Cell u(universe);
  for (int i : subset) u.unite(cells[i]);
  return u.full();
}

bool is_x_covering(const TnfFormula& t, const Signature& sig, const CoveringLimits& lim) {
  EnvSpace env(sig, lim.max_env_space);
  auto cells = env_cells(t, env);
  std::vector<int> all(cells.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return is_x_covering(cells, all, env.size());
}

std::vector<std::vector<int>> minimal_x_coverings(const std::vector<Cell>& cells, std::size_t universe,
                                                  std::size_t max_coverings) {
  std::set<std::vector<int>> found;
  std::vector<int> chosen;

  // A chosen move is redundant once the others cover its whole cell.
  auto has_redundant = [&]() {
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      Cell rest(universe);
      for (std::size_t b = 0; b < chosen.size(); ++b)
        if (a != b) rest.unite(cells[chosen[b]]);
      if (cells[chosen[a]].subset_of(rest)) return true;
    }
    return false;
  };

  std::function<void(const Cell&)> rec = [&](const Cell& covered) {
    std::size_t u = covered.first_unset();
    if (u == universe) {
      auto s = chosen;
      std::sort(s.begin(), s.end());
      if (found.insert(s).second && found.size() > max_coverings)
        throw CoveringBudgetExceeded("more than " + std::to_string(max_coverings) + " minimal coverings");
      return;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i].test(u)) continue;
      if (std::find(chosen.begin(), chosen.end(), static_cast<int>(i)) != chosen.end()) continue;
      chosen.push_back(static_cast<int>(i));
      if (!has_redundant()) {
        Cell next = covered;
        next.unite(cells[i]);
        rec(next);
      }
      chosen.pop_back();
    }
  };
  rec(Cell(universe));

  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::vector<int>> minimal_x_coverings(const TnfFormula& t, const Signature& sig,
                                                  const CoveringLimits& lim) {
  EnvSpace env(sig, lim.max_env_space);
  return minimal_x_coverings(env_cells(t, env), env.size(), lim.max_coverings);
}

}  // namespace sltl
