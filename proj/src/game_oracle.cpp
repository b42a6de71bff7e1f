#include "sltl/game_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

namespace sltl {

// ===========================================================================
// Witness checks

bool is_pre_witness(const Trace& lambda, const SpecFile& spec) {
  if (lambda.empty()) return false;
  if (!holds_fin(lambda, spec.init, 0)) return false;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (!holds_fin(lambda, spec.safety, j)) return false;
  return true;
}

bool is_lasso_witness(const Trace& lambda, std::size_t loop_start, const SpecFile& spec) {
  if (lambda.empty() || loop_start >= lambda.size()) return false;
  std::size_t d = lambda.size();
  std::size_t period = d - loop_start;
  std::size_t look = static_cast<std::size_t>(std::max(depth(spec.safety), depth(spec.init)));
  // Positions 0..d-1 cover every distinct suffix; each needs `look` more
  // letters to be evaluated as on the infinite word.
  Trace unrolled = lambda;
  while (unrolled.size() < d + look + 1) unrolled.push_back(unrolled[loop_start + (unrolled.size() - d) % period]);
  if (!holds_fin(unrolled, spec.init, 0)) return false;
  for (std::size_t i = 0; i < d; ++i)
    if (!holds_fin(unrolled, spec.safety, i)) return false;
  return true;
}

bool is_witness(const Trace& lambda, const SpecFile& spec) {
  if (!is_pre_witness(lambda, spec)) return false;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (is_lasso_witness(lambda, j, spec)) return true;
  return false;
}

// ===========================================================================
// The game

std::size_t StrategyTable::env_index(const Valuation& v) const {
  for (std::size_t i = 0; i < env_letters.size(); ++i) {
    bool same = true;
    for (int x : env_vars)
      if (env_letters[i][x] != v[x]) {
        same = false;
        break;
      }
    if (same) return i;
  }
  return env_letters.size();
}

namespace {

class Game {
 public:
  Game(const SpecFile& spec, const OracleOptions& opt) : spec_(spec), opt_(opt) {
    auto v1 = variables(spec.init);
    auto v2 = variables(spec.safety);
    std::set<int> rel(v1.begin(), v1.end());
    rel.insert(v2.begin(), v2.end());
    std::vector<int> env, sys;
    for (int x : rel) (spec.sig.is_env(x) ? env : sys).push_back(x);
    vars_.assign(rel.begin(), rel.end());
    env_vars_ = env;
    env_letters_ = enumerate_valuations(spec.sig, env);
    sys_letters_ = enumerate_valuations(spec.sig, sys);
    for (const auto& e : env_letters_)
      for (const auto& s : sys_letters_) {
        Valuation u = e;
        for (int x : sys) u[x] = s[x];
        letters_.push_back(std::move(u));
      }
    window_ = static_cast<std::size_t>(depth(spec.safety));
  }

  OracleResult run() {
    build();
    OracleResult r;
    r.states = windows_.size();
    attractor(r.iterations);
    r.realizable = !losing_[0];
    if (r.realizable) r.strategy = strategy();
    return r;
  }

 private:
  const SpecFile& spec_;
  OracleOptions opt_;
  std::vector<int> vars_, env_vars_;
  std::vector<Valuation> env_letters_, sys_letters_, letters_;
  std::size_t window_ = 0;

  // state 0 is the initial pseudo-state with an empty window
  std::vector<std::vector<int>> windows_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<int>> succ_;  // [state][letter] -> state, -1 on violation
  std::vector<char> losing_;

  std::size_t nletters() const { return letters_.size(); }
  std::size_t nsys() const { return sys_letters_.size(); }

  void check_budget(std::size_t states) const {
    if (states * nletters() > opt_.budget)
      throw OracleBudgetExceeded("game exceeds the oracle budget of " + std::to_string(opt_.budget));
  }

  int intern(const std::vector<int>& w) {
    auto it = index_.find(w);
    if (it != index_.end()) return it->second;
    check_budget(windows_.size() + 1);
    int id = static_cast<int>(windows_.size());
    windows_.push_back(w);
    index_.emplace(w, id);
    return id;
  }

  // Appending letter `a` to state `s`: -1 if some position in reach of the
  // new letter is violated, else the successor window.
  int step(int s, int a) {
    const auto& w = windows_[static_cast<std::size_t>(s)];
    Trace t;
    for (int x : w)
      if (x >= 0) t.push_back(letters_[static_cast<std::size_t>(x)]);
    t.push_back(letters_[static_cast<std::size_t>(a)]);
    if (s == 0 && !holds_fin(t, spec_.init, 0)) return -1;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (!holds_fin(t, spec_.safety, k)) return -1;
    std::vector<int> nw = w;
    nw.push_back(a);
    if (nw.size() > window_) nw.erase(nw.begin(), nw.begin() + static_cast<long>(nw.size() - window_));
    // a non-initial empty window is distinct from the initial one
    if (nw.empty()) nw.push_back(-1);
    return intern(nw);
  }

  void build() {
    intern({});
    if (!opt_.lazy) {
      // every window of every length up to the depth
      std::size_t total = 1, layer = 1;
      for (std::size_t len = 1; len <= window_; ++len) {
        layer *= nletters();
        total += layer;
        check_budget(total);
      }
      std::vector<int> w;
      std::function<void(std::size_t)> rec = [&](std::size_t len) {
        if (w.size() == len) {
          intern(w);
          return;
        }
        for (std::size_t a = 0; a < nletters(); ++a) {
          w.push_back(static_cast<int>(a));
          rec(len);
          w.pop_back();
        }
      };
      for (std::size_t len = 1; len <= window_; ++len) rec(len);
      if (window_ == 0) intern({-1});
    }
    for (std::size_t s = 0; s < windows_.size(); ++s) {
      std::vector<int> row(nletters());
      for (std::size_t a = 0; a < nletters(); ++a) row[a] = step(static_cast<int>(s), static_cast<int>(a));
      succ_.push_back(std::move(row));
    }
  }

  // Eve's attractor to the violations: a state is losing when some
  // environment letter leaves Sally only violating or losing answers.
  void attractor(std::size_t& iterations) {
    losing_.assign(windows_.size(), 0);
    for (bool changed = true; changed;) {
      changed = false;
      ++iterations;
      assert(iterations <= windows_.size() + 1);
      for (std::size_t s = 0; s < windows_.size(); ++s) {
        if (losing_[s]) continue;
        for (std::size_t e = 0; e < env_letters_.size(); ++e) {
          bool all_bad = true;
          for (std::size_t y = 0; y < nsys() && all_bad; ++y) {
            int n = succ_[s][e * nsys() + y];
            if (n >= 0 && !losing_[static_cast<std::size_t>(n)]) all_bad = false;
          }
          if (all_bad) {
            losing_[s] = 1;
            changed = true;
            break;
          }
        }
      }
    }
  }

  StrategyTable strategy() const {
    StrategyTable st;
    st.vars = vars_;
    st.env_vars = env_vars_;
    st.env_letters = env_letters_;
    st.sys_letters = sys_letters_;
    st.initial = 0;
    for (std::size_t s = 0; s < windows_.size(); ++s) {
      GameState g;
      g.initial = s == 0;
      for (int x : windows_[s])
        if (x >= 0) g.window.push_back(letters_[static_cast<std::size_t>(x)]);
      st.states.push_back(std::move(g));
      std::vector<int> ch(env_letters_.size(), -1), nx(env_letters_.size(), -1);
      if (!losing_[s]) {
        for (std::size_t e = 0; e < env_letters_.size(); ++e)
          for (std::size_t y = 0; y < nsys(); ++y) {
            int n = succ_[s][e * nsys() + y];
            if (n >= 0 && !losing_[static_cast<std::size_t>(n)]) {
              ch[e] = static_cast<int>(y);
              nx[e] = n;
              break;
            }
          }
      }
      st.choice.push_back(std::move(ch));
      st.next.push_back(std::move(nx));
    }
    return st;
  }
};

}  // namespace

OracleResult solve(const SpecFile& spec, const OracleOptions& opt) {
  SpecFile s;
  s.sig = spec.sig;
  s.init = to_nnf(spec.init);
  s.safety = to_nnf(spec.safety);
  Game g(s, opt);
  return g.run();
}

}  // namespace sltl
