#include "sltl/tnf.hpp"

#include <algorithm>
#include <map>

#include "sltl/subsumption.hpp"

namespace sltl {

namespace {

constexpr std::size_t kMaxExpansion = 200000;
constexpr std::size_t kMaxRewrites = 200000;

int compare_lits(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

struct LitsLess {
  bool operator()(const std::vector<Literal>& a, const std::vector<Literal>& b) const {
    return compare_lits(a, b) < 0;
  }
};

int compare_sets(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::vector<Literal> sorted_lits(std::vector<Literal> ls) {
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  return ls;
}

bool contains(const std::vector<Literal>& sorted, const Literal& l) {
  return std::binary_search(sorted.begin(), sorted.end(), l);
}

bool is_subset(const std::vector<Formula>& small, const std::vector<Formula>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), FormulaLess{});
}

// a implies b, with the empty future standing for True.
bool future_implies(const StrictFuture& a, const StrictFuture& b) {
  if (b.empty()) return true;
  if (a.empty()) return false;
  return future_leq(a, b);
}

struct Pre {
  std::vector<Literal> lits;
  std::vector<Formula> fut;
};

void expand(const Formula& f, const Signature& sig, std::vector<Pre>& out);

std::vector<Pre> expand(const Formula& f, const Signature& sig) {
  std::vector<Pre> out;
  expand(f, sig, out);
  return out;
}

void expand(const Formula& f, const Signature& sig, std::vector<Pre>& out) {
  switch (f->op) {
    case Op::True: out.push_back({}); return;
    case Op::False: return;
    case Op::Lit: out.push_back({{f->lit}, {}}); return;
    case Op::Or:
    case Op::DOr:
      for (const auto& k : f->kids) expand(k, sig, out);
      return;
    case Op::And: {
      std::vector<Pre> acc{{}};
      for (const auto& k : f->kids) {
        auto part = expand(k, sig);
        std::vector<Pre> nxt;
        for (const auto& a : acc)
          for (const auto& b : part) {
            Pre p;
            p.lits = a.lits;
            p.lits.insert(p.lits.end(), b.lits.begin(), b.lits.end());
            p.lits = sorted_lits(std::move(p.lits));
            if (literals_inconsistent(p.lits, sig)) continue;
            p.fut = a.fut;
            p.fut.insert(p.fut.end(), b.fut.begin(), b.fut.end());
            nxt.push_back(std::move(p));
            if (nxt.size() > kMaxExpansion) throw TnfBudgetExceeded("DNF expansion too large");
          }
        acc = std::move(nxt);
        if (acc.empty()) return;
      }
      out.insert(out.end(), acc.begin(), acc.end());
      return;
    }
    case Op::Next: out.push_back({{}, {f}}); return;
    case Op::Always:
      if (f->lo >= 1) {
        out.push_back({{}, {f}});
        return;
      }
      // G[0,m] b  ==  b & X G[0,m-1] b
      expand(conj(f->kids[0], next(1, always(0, f->hi - 1, f->kids[0]))), sig, out);
      return;
    case Op::Eventually:
      if (f->lo >= 1) {
        out.push_back({{}, {f}});
        return;
      }
      // F[0,m] b  ==  b | X F[0,m-1] b
      expand(f->kids[0], sig, out);
      out.push_back({{}, {next(1, eventually(0, f->hi - 1, f->kids[0]))}});
      return;
    case Op::Not:
    case Op::Implies:
    case Op::Iff: expand(to_nnf(f), sig, out); return;
  }
}

using MoveMap = std::map<std::vector<Literal>, StrictFuture, LitsLess>;

void add_move(MoveMap& m, std::vector<Literal> lits, const StrictFuture& fut, const Signature& sig) {
  lits = sorted_lits(std::move(lits));
  if (literals_inconsistent(lits, sig)) return;
  auto it = m.find(lits);
  if (it == m.end())
    m.emplace(std::move(lits), fut);
  else
    it->second = future_union(it->second, fut);
}

std::vector<SeparatedMove> ordered(const MoveMap& m) {
  std::vector<SeparatedMove> v;
  for (const auto& [l, f] : m) v.push_back({l, f});
  std::stable_sort(v.begin(), v.end(), [](const SeparatedMove& a, const SeparatedMove& b) {
    return a.literals.size() < b.literals.size();
  });
  return v;
}

void drop_subsumed(MoveMap& m) {
  auto v = ordered(m);
  std::vector<bool> gone(v.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size() && !gone[i]; ++j) {
      if (i == j || gone[j]) continue;
      const auto& big = v[i].literals;
      const auto& small = v[j].literals;
      if (small.size() > big.size()) continue;
      if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
      if (future_implies(v[i].future, v[j].future)) gone[i] = true;
    }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (gone[i]) m.erase(v[i].literals);
}

bool same_future(const StrictFuture& a, const StrictFuture& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (!equal(a[i][k], b[i][k])) return false;
  }
  return true;
}

// (L & l & F) | (L & !l & F) == L & F for a boolean l. Keeps the clash
// property: a third move clashing with both halves clashes with L.
void merge_complementary(MoveMap& m) {
  for (bool changed = true; changed;) {
    changed = false;
    auto v = ordered(m);
    for (std::size_t i = 0; i < v.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < v.size() && !changed; ++j) {
        const auto& a = v[i].literals;
        const auto& b = v[j].literals;
        if (a.size() != b.size() || !same_future(v[i].future, v[j].future)) continue;
        std::vector<Literal> only_a, only_b;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
        if (only_a.size() != 1 || only_b.size() != 1) continue;
        const Literal& x = only_a[0];
        if (x.kind != LitKind::Pos && x.kind != LitKind::Neg) continue;
        if (!(only_b[0] == x.negated())) continue;
        std::vector<Literal> rest;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(rest));
        StrictFuture fut = v[i].future;
        m.erase(a);
        m.erase(b);
        m.emplace(std::move(rest), std::move(fut));
        changed = true;
      }
  }
}

// (d & d1 & e1) | (d & d2 & e2) ==
//   (d & d1 & d2 & (e1 | e2)) | (d & d1 & !d2 & e1) | (d & !d1 & d2 & e2)
// with !d2 expanded into the disjoint cover !l1 | (l1 & !l2) | ...
void rewrite_pair(MoveMap& m, const SeparatedMove& a, const SeparatedMove& b, const Signature& sig) {
  std::vector<Literal> d, d1, d2;
  std::set_intersection(a.literals.begin(), a.literals.end(), b.literals.begin(), b.literals.end(),
                        std::back_inserter(d));
  std::set_difference(a.literals.begin(), a.literals.end(), d.begin(), d.end(), std::back_inserter(d1));
  std::set_difference(b.literals.begin(), b.literals.end(), d.begin(), d.end(), std::back_inserter(d2));
  m.erase(a.literals);
  m.erase(b.literals);

  std::vector<Literal> all = d;
  all.insert(all.end(), d1.begin(), d1.end());
  all.insert(all.end(), d2.begin(), d2.end());
  add_move(m, all, future_union(a.future, b.future), sig);

  auto negated_cover = [&](const std::vector<Literal>& base, const std::vector<Literal>& ls,
                           const StrictFuture& fut) {
    for (std::size_t k = 0; k < ls.size(); ++k) {
      std::vector<Literal> piece = base;
      piece.insert(piece.end(), ls.begin(), ls.begin() + static_cast<long>(k));
      piece.push_back(ls[k].negated());
      add_move(m, piece, fut, sig);
    }
  };
  std::vector<Literal> base1 = d;
  base1.insert(base1.end(), d1.begin(), d1.end());
  negated_cover(base1, d2, a.future);
  std::vector<Literal> base2 = d;
  base2.insert(base2.end(), d2.begin(), d2.end());
  negated_cover(base2, d1, b.future);
}

}  // namespace

// ===========================================================================
// Moves

Formula SeparatedMove::future_formula() const { return future_to_formula(future); }

Formula SeparatedMove::formula() const {
  std::vector<Formula> parts;
  for (const auto& l : literals) parts.push_back(lit(l));
  parts.push_back(future_formula());
  return conj(std::move(parts));
}

Formula TnfFormula::formula() const {
  std::vector<Formula> parts;
  for (const auto& m : moves) parts.push_back(m.formula());
  return disj(std::move(parts));
}

bool clashes(const SeparatedMove& a, const SeparatedMove& b) {
  for (const auto& l : a.literals)
    if (contains(b.literals, l.negated())) return true;
  return false;
}

bool has_clash_property(const TnfFormula& t) {
  for (std::size_t i = 0; i < t.moves.size(); ++i)
    for (std::size_t j = i + 1; j < t.moves.size(); ++j)
      if (!clashes(t.moves[i], t.moves[j])) return false;
  return true;
}

// ===========================================================================
// Strict futures

StrictFuture normalize_future(StrictFuture sf) {
  for (auto& d : sf) {
    d = reduce_set(std::move(d));
    if (d.empty()) return {};
  }
  std::sort(sf.begin(), sf.end(), [](const auto& a, const auto& b) { return compare_sets(a, b) < 0; });
  sf.erase(std::unique(sf.begin(), sf.end(),
                       [](const auto& a, const auto& b) { return compare_sets(a, b) == 0; }),
           sf.end());
  StrictFuture out;
  for (std::size_t i = 0; i < sf.size(); ++i) {
    bool stronger = false;
    for (std::size_t j = 0; j < sf.size() && !stronger; ++j)
      if (i != j && sf[j].size() < sf[i].size() && is_subset(sf[j], sf[i])) stronger = true;
    if (!stronger) out.push_back(sf[i]);
  }
  return out;
}

StrictFuture future_union(const StrictFuture& a, const StrictFuture& b) {
  if (a.empty() || b.empty()) return {};
  StrictFuture u = a;
  u.insert(u.end(), b.begin(), b.end());
  return normalize_future(std::move(u));
}

StrictFuture as_future(const Formula& f) {
  if (f->op == Op::True) return {};
  StrictFuture sf;
  for (const auto& d : disjuncts(f)) sf.push_back(conjuncts(d));
  if (sf.empty()) throw std::invalid_argument("False is not a strict-future formula");
  return normalize_future(std::move(sf));
}

Formula future_to_formula(const StrictFuture& sf) {
  if (sf.empty()) return top();
  std::vector<Formula> ds;
  for (const auto& d : sf) ds.push_back(conj(d));
  return ddisj(std::move(ds));
}

bool is_elementary(const StrictFuture& delta) {
  for (const auto& d : delta)
    for (const auto& c : d)
      if (!is_next_formula(c)) return false;
  return true;
}

StrictFuture elementary(const StrictFuture& delta) {
  if (delta.empty()) return {};
  StrictFuture done;
  std::vector<std::vector<Formula>> work(delta.rbegin(), delta.rend());
  while (!work.empty()) {
    auto d = std::move(work.back());
    work.pop_back();
    auto it = std::find_if(d.begin(), d.end(), [](const Formula& c) { return !is_next_formula(c); });
    if (it == d.end()) {
      done.push_back(std::move(d));
      continue;
    }
    Formula c = *it;
    d.erase(it);
    auto with = [&](std::initializer_list<Formula> extra) {
      auto e = d;
      e.insert(e.end(), extra.begin(), extra.end());
      return e;
    };
    switch (c->op) {
      case Op::True: work.push_back(d); break;
      case Op::False: break;
      case Op::And: {
        auto e = d;
        e.insert(e.end(), c->kids.begin(), c->kids.end());
        work.push_back(std::move(e));
        break;
      }
      case Op::Or:
      case Op::DOr:
        for (auto k = c->kids.rbegin(); k != c->kids.rend(); ++k) work.push_back(with({*k}));
        break;
      case Op::Always:
        if (c->lo < 1) throw std::invalid_argument("not a strict-future formula");
        work.push_back(with({next(c->lo, c->kids[0]), next(1, always(c->lo, c->hi - 1, c->kids[0]))}));
        break;
      case Op::Eventually:
        if (c->lo < 1) throw std::invalid_argument("not a strict-future formula");
        work.push_back(with({next(1, eventually(c->lo, c->hi - 1, c->kids[0]))}));
        work.push_back(with({next(c->lo, c->kids[0])}));
        break;
      default: throw std::invalid_argument("not a strict-future formula");
    }
  }
  if (done.empty()) return {{bottom()}};
  return normalize_future(std::move(done));
}

Formula elementary(const Formula& delta) { return future_to_formula(elementary(as_future(delta))); }

Formula step_down(const StrictFuture& delta) {
  if (delta.empty()) return top();
  std::vector<Formula> ds;
  for (const auto& d : delta) {
    std::vector<Formula> cs;
    for (const auto& c : d) {
      if (!is_next_formula(c)) throw std::invalid_argument("step_down needs an elementary formula");
      cs.push_back(next(c->lo - 1, c->kids[0]));
    }
    ds.push_back(conj(std::move(cs)));
  }
  return ddisj(std::move(ds));
}

Formula step_down(const Formula& delta) { return step_down(as_future(delta)); }

// ===========================================================================
// DNF expansion and TNF

std::vector<SeparatedMove> dnf_expand(const Formula& f, const Signature& sig) {
  std::vector<SeparatedMove> out;
  for (auto& p : expand(f, sig)) {
    SeparatedMove m;
    m.literals = std::move(p.lits);
    if (!p.fut.empty()) m.future = normalize_future({std::move(p.fut)});
    out.push_back(std::move(m));
  }
  return out;
}

TnfFormula tnf(const Formula& f, const Signature& sig, Simplify simplify) {
  Formula g = is_nnf(f) ? f : to_nnf(f);
  MoveMap m;
  for (auto& mv : dnf_expand(g, sig)) add_move(m, std::move(mv.literals), mv.future, sig);
  if (simplify == Simplify::Subsume) drop_subsumed(m);

  std::size_t rewrites = 0;
  for (;;) {
    auto v = ordered(m);
    bool found = false;
    for (std::size_t i = 0; i < v.size() && !found; ++i)
      for (std::size_t j = i + 1; j < v.size() && !found; ++j)
        if (!clashes(v[i], v[j])) {
          rewrite_pair(m, v[i], v[j], sig);
          found = true;
        }
    if (!found) break;
    if (++rewrites > kMaxRewrites) throw TnfBudgetExceeded("TNF rewriting did not settle");
    if (simplify == Simplify::Subsume) drop_subsumed(m);
  }
  merge_complementary(m);
  TnfFormula t;
  t.moves = ordered(m);
  return t;
}

}  // namespace sltl
