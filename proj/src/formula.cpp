#include "sltl/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace sltl {

// ===========================================================================
// Signature

int Signature::find(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::add(VarDecl d) {
  if (find(d.name) >= 0) throw std::invalid_argument("duplicate variable '" + d.name + "'");
  if (!d.is_bool() && d.domain.size() < 2)
    throw std::invalid_argument("enumerated variable '" + d.name + "' needs at least two constants");
  vars.push_back(std::move(d));
  return static_cast<int>(vars.size()) - 1;
}

std::vector<int> Signature::env_vars() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].owner == Owner::Environment) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Signature::sys_vars() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].owner == Owner::System) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Signature::all_vars() const {
  std::vector<int> out(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::vector<Valuation> enumerate_valuations(const Signature& sig, const std::vector<int>& vars) {
  std::vector<Valuation> out;
  Valuation cur(sig.vars.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      out.push_back(cur);
      return;
    }
    int v = vars[i];
    for (int x = 0; x < sig.vars[v].size(); ++x) {
      cur[v] = x;
      rec(i + 1);
    }
    cur[v] = 0;
  };
  rec(0);
  return out;
}

// ===========================================================================
// Literals

Literal Literal::negated() const {
  Literal l = *this;
  switch (kind) {
    case LitKind::Pos: l.kind = LitKind::Neg; break;
    case LitKind::Neg: l.kind = LitKind::Pos; break;
    case LitKind::Eq: l.kind = LitKind::NotEq; break;
    case LitKind::NotEq: l.kind = LitKind::Eq; break;
  }
  return l;
}

bool Literal::holds(const Valuation& v) const {
  switch (kind) {
    case LitKind::Pos: return v[var] != 0;
    case LitKind::Neg: return v[var] == 0;
    case LitKind::Eq: return v[var] == val;
    case LitKind::NotEq: return v[var] != val;
  }
  return false;
}

int compare(const Literal& a, const Literal& b) {
  if (a.var != b.var) return a.var < b.var ? -1 : 1;
  if (a.val != b.val) return a.val < b.val ? -1 : 1;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  return 0;
}

// ===========================================================================
// Construction

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Formula make(Op op, std::vector<Formula> kids = {}, int lo = 0, int hi = 0, Literal l = {}) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lit = l;
  n->lo = lo;
  n->hi = hi;
  std::size_t h = mix(static_cast<std::size_t>(op) * 1315423911u, static_cast<std::size_t>(lo));
  h = mix(h, static_cast<std::size_t>(hi));
  if (op == Op::Lit) {
    h = mix(h, static_cast<std::size_t>(l.kind));
    h = mix(h, static_cast<std::size_t>(l.var));
    h = mix(h, static_cast<std::size_t>(l.val));
  }
  int size = 1;
  for (const auto& k : kids) {
    h = mix(h, k->hash);
    size += k->size;
  }
  n->hash = h;
  n->size = size;
  n->kids = std::move(kids);
  return n;
}

const Formula& true_node() {
  static const Formula t = make(Op::True);
  return t;
}

const Formula& false_node() {
  static const Formula f = make(Op::False);
  return f;
}

void flatten_into(Op op, const Formula& f, std::vector<Formula>& out) {
  if (f->op == op) {
    for (const auto& k : f->kids) out.push_back(k);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Formula top() { return true_node(); }
Formula bottom() { return false_node(); }
Formula lit(Literal l) { return make(Op::Lit, {}, 0, 0, l); }
Formula pos(int var) { return lit({LitKind::Pos, var, 0}); }
Formula neg(int var) { return lit({LitKind::Neg, var, 0}); }
Formula eq(int var, int val) { return lit({LitKind::Eq, var, val}); }
Formula neq(int var, int val) { return lit({LitKind::NotEq, var, val}); }

Formula negate(const Formula& f) {
  switch (f->op) {
    case Op::True: return bottom();
    case Op::False: return top();
    case Op::Lit: return lit(f->lit.negated());
    case Op::Not: return f->kids[0];
    default: return make(Op::Not, {f});
  }
}

std::vector<Formula> canonical_set(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end(), FormulaLess{});
  fs.erase(std::unique(fs.begin(), fs.end(), FormulaEq{}), fs.end());
  return fs;
}

Formula conj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (const auto& f : fs) {
    if (f->op == Op::False) return bottom();
    if (f->op == Op::True) continue;
    flatten_into(Op::And, f, flat);
  }
  flat = canonical_set(std::move(flat));
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat[0];
  return make(Op::And, std::move(flat));
}

Formula disj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (const auto& f : fs) {
    if (f->op == Op::True) return top();
    if (f->op == Op::False) continue;
    flatten_into(Op::Or, f, flat);
  }
  flat = canonical_set(std::move(flat));
  if (flat.empty()) return bottom();
  if (flat.size() == 1) return flat[0];
  return make(Op::Or, std::move(flat));
}

Formula ddisj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (const auto& f : fs) {
    if (f->op == Op::True) return top();
    if (f->op == Op::False) continue;
    flatten_into(Op::DOr, f, flat);
  }
  flat = canonical_set(std::move(flat));
  if (flat.empty()) return bottom();
  return make(Op::DOr, std::move(flat));
}

Formula conj(const Formula& a, const Formula& b) { return conj(std::vector<Formula>{a, b}); }
Formula disj(const Formula& a, const Formula& b) { return disj(std::vector<Formula>{a, b}); }

Formula next(int k, const Formula& f) {
  assert(k >= 0);
  if (k == 0) return f;
  if (f->op == Op::True) return f;
  if (f->op == Op::Next) return make(Op::Next, {f->kids[0]}, k + f->lo, k + f->lo);
  return make(Op::Next, {f}, k, k);
}

Formula always(int lo, int hi, const Formula& f) {
  if (lo < 0 || lo > hi) throw std::invalid_argument("empty interval");
  if (f->op == Op::True) return f;
  if (lo == hi) return next(lo, f);
  return make(Op::Always, {f}, lo, hi);
}

Formula eventually(int lo, int hi, const Formula& f) {
  if (lo < 0 || lo > hi) throw std::invalid_argument("empty interval");
  if (f->op == Op::True) return f;
  if (lo == hi) return next(lo, f);
  return make(Op::Eventually, {f}, lo, hi);
}

Formula implies(const Formula& a, const Formula& b) {
  if (a->op == Op::True) return b;
  if (a->op == Op::False || b->op == Op::True) return top();
  if (b->op == Op::False) return negate(a);
  return make(Op::Implies, {a, b});
}

Formula iff(const Formula& a, const Formula& b) {
  if (a->op == Op::True) return b;
  if (b->op == Op::True) return a;
  if (a->op == Op::False) return negate(b);
  if (b->op == Op::False) return negate(a);
  return make(Op::Iff, {a, b});
}

// ===========================================================================
// Ordering

int compare(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (a->op == Op::Lit) return compare(a->lit, b->lit);
  if (a->lo != b->lo) return a->lo < b->lo ? -1 : 1;
  if (a->hi != b->hi) return a->hi < b->hi ? -1 : 1;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    int c = compare(a->kids[i], b->kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->size != b->size) return false;
  return compare(a, b) == 0;
}

// ===========================================================================
// Classification

bool is_literal(const Formula& f) {
  return f->op == Op::Lit || f->op == Op::True || f->op == Op::False;
}

bool is_next_formula(const Formula& f) { return f->op == Op::Next; }

bool is_from_next(const Formula& f) {
  if (f->op == Op::Next) return true;
  if (f->op == Op::Always || f->op == Op::Eventually) return f->lo >= 1;
  return false;
}

bool is_strict_future(const Formula& f) {
  switch (f->op) {
    case Op::True: return true;
    case Op::And:
    case Op::Or:
    case Op::DOr:
      return std::all_of(f->kids.begin(), f->kids.end(), is_strict_future);
    default: return is_from_next(f);
  }
}

bool is_temporal_free(const Formula& f) {
  switch (f->op) {
    case Op::Next:
    case Op::Always:
    case Op::Eventually: return false;
    default: return std::all_of(f->kids.begin(), f->kids.end(), is_temporal_free);
  }
}

bool is_nnf(const Formula& f) {
  switch (f->op) {
    case Op::Not:
    case Op::Implies:
    case Op::Iff: return false;
    default: return std::all_of(f->kids.begin(), f->kids.end(), is_nnf);
  }
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f->op == Op::And) return f->kids;
  if (f->op == Op::True) return {};
  return {f};
}

std::vector<Formula> disjuncts(const Formula& f) {
  if (f->op == Op::Or || f->op == Op::DOr) return f->kids;
  if (f->op == Op::False) return {};
  return {f};
}

// ===========================================================================
// NNF and depth

namespace {

Formula nnf(const Formula& f, bool positive) {
  auto map_kids = [&](bool p) {
    std::vector<Formula> out;
    out.reserve(f->kids.size());
    for (const auto& k : f->kids) out.push_back(nnf(k, p));
    return out;
  };
  switch (f->op) {
    case Op::True: return positive ? top() : bottom();
    case Op::False: return positive ? bottom() : top();
    case Op::Lit: return positive ? f : lit(f->lit.negated());
    case Op::Not: return nnf(f->kids[0], !positive);
    case Op::And: return positive ? conj(map_kids(true)) : disj(map_kids(false));
    case Op::Or: return positive ? disj(map_kids(true)) : conj(map_kids(false));
    case Op::DOr: return positive ? ddisj(map_kids(true)) : conj(map_kids(false));
    case Op::Next: return next(f->lo, nnf(f->kids[0], positive));
    case Op::Always: {
      auto s = nnf(f->kids[0], positive);
      return positive ? always(f->lo, f->hi, s) : eventually(f->lo, f->hi, s);
    }
    case Op::Eventually: {
      auto s = nnf(f->kids[0], positive);
      return positive ? eventually(f->lo, f->hi, s) : always(f->lo, f->hi, s);
    }
    case Op::Implies: {
      const auto& a = f->kids[0];
      const auto& b = f->kids[1];
      if (positive) return disj(nnf(a, false), nnf(b, true));
      return conj(nnf(a, true), nnf(b, false));
    }
    case Op::Iff: {
      auto ap = nnf(f->kids[0], true), an = nnf(f->kids[0], false);
      auto bp = nnf(f->kids[1], true), bn = nnf(f->kids[1], false);
      if (positive) return disj(conj(ap, bp), conj(an, bn));
      return disj(conj(ap, bn), conj(an, bp));
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, true); }
Formula nnf_negation(const Formula& f) { return nnf(f, false); }

int depth(const Formula& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Lit: return 0;
    case Op::Next: return f->lo + depth(f->kids[0]);
    case Op::Always:
    case Op::Eventually: return f->hi + depth(f->kids[0]);
    default: {
      int d = 0;
      for (const auto& k : f->kids) d = std::max(d, depth(k));
      return d;
    }
  }
}

// ===========================================================================
// Finite-trace semantics

namespace {

bool eval(const Trace& t, const Formula& f, std::size_t i, bool positive);

bool eval_eventually(const Trace& t, const Formula& sub, int lo, int hi, std::size_t i, bool p) {
  std::size_t d = t.size() - i;
  if (static_cast<std::size_t>(hi) >= d) return true;
  for (int j = lo; j <= hi; ++j)
    if (eval(t, sub, i + j, p)) return true;
  return false;
}

bool eval_always(const Trace& t, const Formula& sub, int lo, int hi, std::size_t i, bool p) {
  std::size_t d = t.size() - i;
  for (int j = lo; j <= hi && static_cast<std::size_t>(j) < d; ++j)
    if (!eval(t, sub, i + j, p)) return false;
  return true;
}

bool eval(const Trace& t, const Formula& f, std::size_t i, bool positive) {
  switch (f->op) {
    case Op::True: return positive;
    case Op::False: return !positive;
    case Op::Lit: return f->lit.holds(t[i]) == positive;
    case Op::Not: return eval(t, f->kids[0], i, !positive);
    case Op::And:
      for (const auto& k : f->kids) {
        bool v = eval(t, k, i, positive);
        if (positive && !v) return false;
        if (!positive && v) return true;
      }
      return positive;
    case Op::Or:
    case Op::DOr:
      for (const auto& k : f->kids) {
        bool v = eval(t, k, i, positive);
        if (positive && v) return true;
        if (!positive && !v) return false;
      }
      return !positive;
    case Op::Next: {
      std::size_t d = t.size() - i;
      if (d <= static_cast<std::size_t>(f->lo)) return true;
      return eval(t, f->kids[0], i + f->lo, positive);
    }
    case Op::Always:
      return positive ? eval_always(t, f->kids[0], f->lo, f->hi, i, true)
                      : eval_eventually(t, f->kids[0], f->lo, f->hi, i, false);
    case Op::Eventually:
      return positive ? eval_eventually(t, f->kids[0], f->lo, f->hi, i, true)
                      : eval_always(t, f->kids[0], f->lo, f->hi, i, false);
    case Op::Implies:
      if (positive) return eval(t, f->kids[0], i, false) || eval(t, f->kids[1], i, true);
      return eval(t, f->kids[0], i, true) && eval(t, f->kids[1], i, false);
    case Op::Iff: {
      const auto& a = f->kids[0];
      const auto& b = f->kids[1];
      if (positive)
        return (eval(t, a, i, true) && eval(t, b, i, true)) ||
               (eval(t, a, i, false) && eval(t, b, i, false));
      return (eval(t, a, i, true) && eval(t, b, i, false)) ||
             (eval(t, a, i, false) && eval(t, b, i, true));
    }
  }
  return false;
}

}  // namespace

bool holds_fin(const Trace& lambda, const Formula& f, std::size_t start) {
  assert(start < lambda.size());
  return eval(lambda, f, start, true);
}

Formula progress(const Formula& f, const Valuation& u) {
  switch (f->op) {
    case Op::True:
    case Op::False: return f;
    case Op::Lit: return f->lit.holds(u) ? top() : bottom();
    case Op::And:
    case Op::Or:
    case Op::DOr: {
      std::vector<Formula> ks;
      for (const auto& k : f->kids) ks.push_back(progress(k, u));
      return f->op == Op::And ? conj(std::move(ks)) : disj(std::move(ks));
    }
    case Op::Next: return next(f->lo - 1, f->kids[0]);
    case Op::Always:
      if (f->lo > 0) return always(f->lo - 1, f->hi - 1, f->kids[0]);
      return conj(progress(f->kids[0], u), always(0, f->hi - 1, f->kids[0]));
    case Op::Eventually:
      if (f->lo > 0) return eventually(f->lo - 1, f->hi - 1, f->kids[0]);
      return disj(progress(f->kids[0], u), eventually(0, f->hi - 1, f->kids[0]));
    default: throw std::invalid_argument("progress needs a formula in negation normal form");
  }
}

std::set<int> variables(const Formula& f) {
  std::set<int> out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (g->op == Op::Lit) out.insert(g->lit.var);
    for (const auto& k : g->kids) rec(k);
  };
  rec(f);
  return out;
}

// ===========================================================================
// Subformulas and closure

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (!out.insert(g).second) return;
    if (g->op == Op::Next) {
      for (int j = 1; j < g->lo; ++j) out.insert(next(j, g->kids[0]));
    }
    for (const auto& k : g->kids) rec(k);
  };
  rec(f);
  return out;
}

FormulaSet variants(const Formula& psi) {
  FormulaSet out;
  for (const auto& g : subformulas(psi)) {
    if (g->op != Op::Always && g->op != Op::Eventually) continue;
    const auto& b = g->kids[0];
    for (int m2 = g->lo; m2 < g->hi; ++m2) {
      auto v = g->op == Op::Always ? always(g->lo, m2, b) : eventually(g->lo, m2, b);
      out.insert(v);
      out.insert(next(1, v));
    }
    for (int i = 0; i <= g->lo; ++i) {
      auto s = subformulas(next(i, b));
      out.insert(s.begin(), s.end());
    }
  }
  return out;
}

FormulaSet closure(const Formula& init, const Formula& psi) {
  FormulaSet out = subformulas(conj(init, psi));
  auto v = variants(psi);
  out.insert(v.begin(), v.end());
  return out;
}

bool closure_admits(const FormulaSet& clo, const Formula& f) {
  if (is_literal(f)) return true;
  if (clo.count(f)) return true;
  if (f->op == Op::And || f->op == Op::Or || f->op == Op::DOr)
    return std::all_of(f->kids.begin(), f->kids.end(),
                       [&](const Formula& k) { return closure_admits(clo, k); });
  return false;
}

}  // namespace sltl
