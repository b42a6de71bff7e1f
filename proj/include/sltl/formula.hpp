#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sltl {

// ---------------------------------------------------------------------------
// Variables and valuations

enum class Owner { Environment, System };

struct VarDecl {
  std::string name;
  Owner owner = Owner::System;
  std::vector<std::string> domain;  // empty for booleans

  bool is_bool() const { return domain.empty(); }
  int size() const { return is_bool() ? 2 : static_cast<int>(domain.size()); }
};

struct Signature {
  std::vector<VarDecl> vars;

  int find(const std::string& name) const;  // -1 if absent
  int add(VarDecl d);                       // throws on duplicates
  std::vector<int> env_vars() const;
  std::vector<int> sys_vars() const;
  std::vector<int> all_vars() const;
  bool is_env(int v) const { return vars[v].owner == Owner::Environment; }
};

// One value per declared variable: 0/1 for booleans, constant index for enums.
using Valuation = std::vector<int>;
using Trace = std::vector<Valuation>;

// All valuations of `sig` that are free on `vars` and 0 elsewhere, in
// mixed-radix order (first listed variable varies slowest).
std::vector<Valuation> enumerate_valuations(const Signature& sig, const std::vector<int>& vars);

// ---------------------------------------------------------------------------
// Literals

enum class LitKind : std::uint8_t { Pos, Neg, Eq, NotEq };

struct Literal {
  LitKind kind = LitKind::Pos;
  int var = 0;
  int val = 0;  // constant index, meaningful for Eq/NotEq

  Literal negated() const;
  bool holds(const Valuation& v) const;
  friend bool operator==(const Literal&, const Literal&) = default;
};

int compare(const Literal& a, const Literal& b);
inline bool operator<(const Literal& a, const Literal& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Formulas
//
// Nodes are immutable and shared. The smart constructors below keep every
// formula in canonical form: And/Or/DOr children are flattened, sorted and
// deduplicated, constants are absorbed, X^j X^k becomes X^(j+k), and
// G[n,n] / F[n,n] become X^n.

enum class Op : std::uint8_t {
  True,
  False,
  Lit,
  Not,
  And,
  Or,
  DOr,  // the strict-future disjunction, semantically plain "or"
  Next,
  Always,
  Eventually,
  Implies,
  Iff,
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::True;
  Literal lit{};
  int lo = 0;  // Next: the count k; Always/Eventually: interval bounds
  int hi = 0;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  int size = 1;
};

Formula top();
Formula bottom();
Formula lit(Literal l);
Formula pos(int var);
Formula neg(int var);
Formula eq(int var, int val);
Formula neq(int var, int val);
Formula negate(const Formula& f);  // builds Not, folding constants and literals
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
// Unlike disj, a single-child DOr is kept so that a strict-future part stays
// recognisable as one. An empty DOr is False, any True disjunct makes it True.
Formula ddisj(std::vector<Formula> fs);
Formula next(int k, const Formula& f);
Formula always(int lo, int hi, const Formula& f);
Formula eventually(int lo, int hi, const Formula& f);
Formula implies(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);

int compare(const Formula& a, const Formula& b);
bool equal(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};

using FormulaSet = std::set<Formula, FormulaLess>;

// Sorted, deduplicated copy.
std::vector<Formula> canonical_set(std::vector<Formula> fs);

// ---------------------------------------------------------------------------
// Classification

bool is_literal(const Formula& f);   // Lit, True or False
bool is_next_formula(const Formula& f);  // first symbol is X
// X^k η, F[n,m]η and G[n,m]η with n >= 1.
bool is_from_next(const Formula& f);
// True, a from-next formula, or an And/Or/DOr built only from those.
bool is_strict_future(const Formula& f);
bool is_temporal_free(const Formula& f);
bool is_nnf(const Formula& f);

// Children of an And (or the formula itself), children of a DOr/Or likewise.
std::vector<Formula> conjuncts(const Formula& f);
std::vector<Formula> disjuncts(const Formula& f);

// ---------------------------------------------------------------------------
// NNF, depth, semantics

Formula to_nnf(const Formula& f);
Formula nnf_negation(const Formula& f);  // to_nnf(negate(f))
int depth(const Formula& f);

// Finite-trace satisfaction of `f` by the suffix of `lambda` starting at
// `start`. Negations are evaluated by polarity, which agrees with to_nnf.
bool holds_fin(const Trace& lambda, const Formula& f, std::size_t start = 0);

// Formula progression over one letter, for NNF input: what must hold from
// the next position on. A prefix satisfies f finitely iff progressing f
// through it does not yield False.
Formula progress(const Formula& f, const Valuation& u);

// Variables occurring in f.
std::set<int> variables(const Formula& f);

// ---------------------------------------------------------------------------
// Subformulas and closure (diagnostic only)

FormulaSet subformulas(const Formula& f);
FormulaSet variants(const Formula& psi);
// Everything a tableau for init & G psi may put in a label, minus the
// combinations built with And/DOr over variants (checked by closure_admits).
FormulaSet closure(const Formula& init, const Formula& psi);
bool closure_admits(const FormulaSet& clo, const Formula& f);

}  // namespace sltl
