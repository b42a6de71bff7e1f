#include "sltl/subsumption.hpp"

#include <algorithm>
#include <map>

namespace sltl {

namespace {

enum class TKind { None, Always, Eventually, Next };

struct Temporal {
  TKind kind = TKind::None;
  int lo = 0;
  int hi = 0;
  const Formula* sub = nullptr;
};

Temporal temporal(const Formula& f) {
  switch (f->op) {
    case Op::Next: return {TKind::Next, f->lo, f->lo, &f->kids[0]};
    case Op::Always: return {TKind::Always, f->lo, f->hi, &f->kids[0]};
    case Op::Eventually: return {TKind::Eventually, f->lo, f->hi, &f->kids[0]};
    default: return {};
  }
}

// X^k counts as both F[k,k] and G[k,k].
bool as_eventually(const Temporal& t) { return t.kind == TKind::Eventually || t.kind == TKind::Next; }
bool as_always(const Temporal& t) { return t.kind == TKind::Always || t.kind == TKind::Next; }

bool temporal_subsumes(const Temporal& b, const Temporal& g) {
  if (b.kind == TKind::None || g.kind == TKind::None) return false;
  bool shape = false;
  // F[n',m'] ⊑ F[n,m] and G[n',m'] ⊑ F[n,m] when [n',m'] lies inside [n,m]
  if (as_eventually(g) && (as_eventually(b) || as_always(b)) && g.lo <= b.lo && b.hi <= g.hi)
    shape = true;
  // G[n,m] ⊑ G[n',m'] when [n',m'] lies inside [n,m]
  if (!shape && as_always(b) && as_always(g) && b.lo <= g.lo && g.hi <= b.hi) shape = true;
  return shape && subsumes(*b.sub, *g.sub);
}

std::vector<std::vector<Formula>> as_dnf(const Formula& f) {
  std::vector<std::vector<Formula>> out;
  for (const auto& d : disjuncts(f)) out.push_back(conjuncts(d));
  return out;
}

}  // namespace

bool subsumes(const Formula& b, const Formula& g) {
  if (equal(b, g)) return true;
  if (g->op == Op::True || b->op == Op::False) return true;
  if (b->op == Op::True || g->op == Op::False) return false;
  if (b->op == Op::DOr || g->op == Op::DOr) return future_leq(as_dnf(b), as_dnf(g));
  if (g->op == Op::And)
    return std::all_of(g->kids.begin(), g->kids.end(), [&](const Formula& k) { return subsumes(b, k); });
  if (b->op == Op::Or)
    return std::all_of(b->kids.begin(), b->kids.end(), [&](const Formula& k) { return subsumes(k, g); });
  if (b->op == Op::And)
    for (const auto& k : b->kids)
      if (subsumes(k, g)) return true;
  if (g->op == Op::Or)
    for (const auto& k : g->kids)
      if (subsumes(b, k)) return true;
  // a non-temporal operand counts as X^0 of itself
  Temporal tb = temporal(b), tg = temporal(g);
  if (tb.kind == TKind::None && tg.kind == TKind::None) return false;
  if (tb.kind == TKind::None) tb = {TKind::Next, 0, 0, &b};
  if (tg.kind == TKind::None) tg = {TKind::Next, 0, 0, &g};
  return temporal_subsumes(tb, tg);
}

bool set_leq(const std::vector<Formula>& strong, const std::vector<Formula>& weak) {
  for (const auto& w : weak) {
    bool found = false;
    for (const auto& s : strong)
      if (subsumes(s, w)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool future_leq(const std::vector<std::vector<Formula>>& strong,
                const std::vector<std::vector<Formula>>& weak) {
  for (const auto& d : strong) {
    bool found = false;
    for (const auto& g : weak)
      if (set_leq(d, g)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::vector<Formula> reduce_set(std::vector<Formula> fs) {
  fs = canonical_set(std::move(fs));
  std::vector<bool> drop(fs.size(), false);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < fs.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (subsumes(fs[j], fs[i])) drop[i] = true;
    }
  }
  std::vector<Formula> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!drop[i]) out.push_back(fs[i]);
  return out;
}

bool literals_inconsistent(const std::vector<Literal>& lits, const Signature& sig) {
  std::map<int, int> eq_val;
  std::map<int, std::vector<bool>> excluded;
  for (const auto& l : lits) {
    for (const auto& m : lits)
      if (m == l.negated()) return true;
    if (l.kind == LitKind::Eq) {
      auto it = eq_val.find(l.var);
      if (it != eq_val.end() && it->second != l.val) return true;
      eq_val[l.var] = l.val;
    } else if (l.kind == LitKind::NotEq) {
      auto& ex = excluded[l.var];
      ex.resize(sig.vars[l.var].size(), false);
      ex[l.val] = true;
    }
  }
  for (const auto& [v, ex] : excluded) {
    if (std::all_of(ex.begin(), ex.end(), [](bool b) { return b; })) return true;
    auto it = eq_val.find(v);
    if (it != eq_val.end() && ex[it->second]) return true;
  }
  return false;
}

bool inconsistent(const std::vector<Formula>& phi, const Signature& sig) {
  std::vector<Literal> lits;
  for (const auto& f : phi) {
    if (f->op == Op::False) return true;
    if (f->op == Op::Lit) lits.push_back(f->lit);
  }
  if (literals_inconsistent(lits, sig)) return true;
  std::vector<Formula> negs;
  negs.reserve(phi.size());
  for (const auto& f : phi) negs.push_back(nnf_negation(f));
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = 0; j < phi.size(); ++j)
      if (subsumes(phi[i], negs[j])) return true;
  return false;
}

}  // namespace sltl
