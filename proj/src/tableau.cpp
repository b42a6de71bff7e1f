#include "sltl/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>

#include "large_stack.hpp"
#include "sltl/covering.hpp"

namespace sltl {

// ===========================================================================
// Labels

NodeLabel make_label(std::vector<Formula> fs, Chi chi) {
  std::vector<Formula> kept;
  for (auto& f : fs)
    if (f->op != Op::True) kept.push_back(std::move(f));
  return NodeLabel{reduce_set(std::move(kept)), chi};
}

bool label_leq(const NodeLabel& phi, const NodeLabel& phi2) {
  return phi.chi == phi2.chi && set_leq(phi.formulas, phi2.formulas);
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Root: return "root";
    case Rule::BoxFalse: return "(□F)";
    case Rule::BoxOr: return "(□‖)";
    case Rule::BoxAnd: return "(□&)";
    case Rule::NextStep: return "(X)";
    case Rule::AndSplit: return "(∧)";
    case Rule::OrSplit: return "(∨)";
    case Rule::DiamondLess: return "(◇<)";
    case Rule::BoxLess: return "(□<)";
    case Rule::DorFold: return "(∨̈)";
    case Rule::Reuse: return "reuse";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Open: return "REALIZABLE";
    case Verdict::Closed: return "UNREALIZABLE";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

struct Expansion {
  Rule rule;
  std::vector<std::vector<Formula>> alts;  // replacement label contents
};

std::vector<Formula> replace_at(const std::vector<Formula>& fs, std::size_t i, std::vector<Formula> with) {
  std::vector<Formula> out;
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (k != i) out.push_back(fs[k]);
  for (auto& w : with) out.push_back(std::move(w));
  return out;
}

bool dor_elementary(const Formula& f) { return is_elementary(as_future(f)); }

// One saturation step, in rule priority order. (□=) and (◇=) are folded by
// the formula constructors, which turn [n,n] intervals into X^n.
std::optional<Expansion> select_rule(const std::vector<Formula>& fs) {
  auto find = [&](auto pred) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (pred(fs[i])) return i;
    return std::nullopt;
  };
  if (auto i = find([](const Formula& f) { return f->op == Op::And; }))
    return Expansion{Rule::AndSplit, {replace_at(fs, *i, fs[*i]->kids)}};
  if (auto i = find([](const Formula& f) { return f->op == Op::Always; })) {
    const auto& f = fs[*i];
    Formula b = f->kids[0];
    int n = f->lo, m = f->hi;
    return Expansion{Rule::BoxLess, {replace_at(fs, *i, {next(n, b), next(1, always(n, m - 1, b))})}};
  }
  if (auto i = find([](const Formula& f) { return f->op == Op::DOr && !dor_elementary(f); }))
    return Expansion{Rule::DorFold, {replace_at(fs, *i, {elementary(fs[*i])})}};
  if (auto i = find([](const Formula& f) { return f->op == Op::Eventually; })) {
    const auto& f = fs[*i];
    Formula b = f->kids[0];
    int n = f->lo, m = f->hi;
    return Expansion{Rule::DiamondLess,
                     {replace_at(fs, *i, {next(n, b)}), replace_at(fs, *i, {next(1, eventually(n, m - 1, b))})}};
  }
  if (auto i = find([](const Formula& f) { return f->op == Op::Or; })) {
    const auto& f = fs[*i];
    std::vector<Formula> rest(f->kids.begin() + 1, f->kids.end());
    return Expansion{Rule::OrSplit, {replace_at(fs, *i, {f->kids[0]}), replace_at(fs, *i, {disj(std::move(rest))})}};
  }
  return std::nullopt;
}

bool label_elementary(const std::vector<Formula>& fs) {
  for (const auto& f : fs) {
    if (f->op == Op::Lit || f->op == Op::True || f->op == Op::False || f->op == Op::Next) continue;
    if (f->op == Op::DOr && dor_elementary(f)) continue;
    return false;
  }
  return true;
}

// η↓ for the strict-future members of an elementary label. A DOr with a
// single disjunct becomes plain conjuncts.
std::vector<Formula> step_label(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  auto add = [&](const Formula& f) {
    if (f->op == Op::DOr && f->kids.size() == 1) {
      for (auto& c : conjuncts(f->kids[0])) out.push_back(c);
    } else {
      for (auto& c : conjuncts(f)) out.push_back(c);
    }
  };
  for (const auto& f : fs) {
    if (f->op == Op::Next) add(next(f->lo - 1, f->kids[0]));
    else if (f->op == Op::DOr) add(step_down(f));
  }
  return out;
}

}  // namespace

std::vector<NodeLabel> saturate(const NodeLabel& phi, const Signature& sig) {
  (void)sig;
  std::vector<NodeLabel> out;
  std::vector<std::vector<Formula>> work{phi.formulas};
  // Depth-first, first alternative first.
  while (!work.empty()) {
    auto fs = std::move(work.back());
    work.pop_back();
    auto e = select_rule(fs);
    if (!e) {
      out.push_back(make_label(std::move(fs), phi.chi));
      continue;
    }
    for (auto it = e->alts.rbegin(); it != e->alts.rend(); ++it) work.push_back(*it);
  }
  return out;
}

// ===========================================================================
// The search

namespace {

// Flat view of a label member for the loop check, which compares the
// current label against every ancestor on the branch.
struct Desc {
  Formula f;
  Op op;
  int lo, hi;
  std::size_t hash;
  const Node* sub;  // literal operand of a temporal member, else null
};

bool is_temporal_op(Op op) { return op == Op::Next || op == Op::Always || op == Op::Eventually; }

std::vector<Desc> describe(const NodeLabel& l) {
  std::vector<Desc> out;
  for (const auto& f : l.formulas) {
    const Node* sub = nullptr;
    if (is_temporal_op(f->op) && f->kids[0]->op == Op::Lit) sub = f->kids[0].get();
    out.push_back(Desc{f, f->op, f->lo, f->op == Op::Next ? f->lo : f->hi, f->hash, sub});
  }
  return out;
}

bool desc_subsumes(const Desc& b, const Desc& g) {
  if (b.sub && g.sub) {
    // literal operands: only the interval rule can apply
    if (b.sub->hash != g.sub->hash || !(b.sub->lit == g.sub->lit)) return false;
    bool bal = b.op != Op::Eventually;
    bool gev = g.op != Op::Always, gal = g.op != Op::Eventually;
    if (gev && g.lo <= b.lo && b.hi <= g.hi) return true;
    return bal && gal && b.lo <= g.lo && g.hi <= b.hi;
  }
  return subsumes(b.f, g.f);
}

bool desc_leq(const std::vector<Desc>& strong, const std::vector<Desc>& weak) {
  for (const auto& w : weak) {
    bool found = false;
    for (const auto& s : strong)
      if (desc_subsumes(s, w)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

class NodeBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoveringInfo {
  std::vector<int> moves;
  std::size_t unclosed = 0;  // moves whose successor no branch ancestor already implies
  std::size_t nontrivial = 0;
  std::size_t weight = 0;
  std::size_t depth = 0;
};

class Engine {
 public:
  Engine(Tableau& t, const EngineConfig& cfg) : t_(t), cfg_(cfg), env_(t.spec.sig, cfg.max_env_space) {}

  bool run() {
    NodeLabel root = make_label(conjuncts(t_.spec.init), Chi::AlwaysPsi);
    int id = add(-1, std::move(root), Rule::Root);
    t_.root = id;
    std::vector<int> path;
    return eve(id, path, 0);
  }

 private:
  Tableau& t_;
  const EngineConfig& cfg_;
  EnvSpace env_;
  std::vector<std::vector<Desc>> descs_;  // parallel to the branch path

  int add(int parent, NodeLabel label, Rule rule) {
    if (t_.nodes.size() >= cfg_.max_nodes)
      throw NodeBudgetExceeded("node budget of " + std::to_string(cfg_.max_nodes) + " exhausted");
    TableauNode n;
    n.id = static_cast<int>(t_.nodes.size());
    n.parent = parent;
    n.label = std::move(label);
    n.rule_in = rule;
    t_.nodes.push_back(std::move(n));
    if (parent >= 0) t_.nodes[parent].children.push_back(t_.nodes.back().id);
    t_.stats.nodes = t_.nodes.size();
    return t_.nodes.back().id;
  }

  TableauNode& node(int id) { return t_.nodes[static_cast<std::size_t>(id)]; }

  bool finish(int id, NodeKind kind, bool open) {
    node(id).kind = kind;
    node(id).open = open;
    node(id).expanded = true;
    return open;
  }

  void track(std::size_t depth) { t_.stats.max_depth = std::max(t_.stats.max_depth, depth); }

  // The label reached after (X) once Sally commits to m.
  static NodeLabel successor(const SeparatedMove& m) {
    if (!m.has_future()) return NodeLabel{{}, Chi::AlwaysPsi};
    return make_label(step_label({elementary(m.future_formula())}), Chi::AlwaysPsi);
  }

  bool closed_by_branch(const NodeLabel& l) const {
    auto d = describe(l);
    for (const auto& a : descs_)
      if (desc_leq(a, d)) return true;
    return false;
  }

  std::vector<CoveringInfo> order(const TnfFormula& tf, const std::vector<std::vector<int>>& covs) const {
    std::vector<CoveringInfo> out;
    std::vector<int> closes(tf.moves.size(), -1);
    bool weakest = cfg_.heuristic == Heuristic::Weakest;
    for (const auto& c : covs) {
      CoveringInfo ci;
      ci.moves = c;
      for (int i : c) {
        const auto& m = tf.moves[static_cast<std::size_t>(i)];
        if (weakest) {
          int& cl = closes[static_cast<std::size_t>(i)];
          if (cl < 0) cl = closed_by_branch(successor(m)) ? 1 : 0;
          if (cl == 0) ++ci.unclosed;
        }
        if (!m.has_future()) continue;
        ++ci.nontrivial;
        std::size_t best = SIZE_MAX;
        for (const auto& d : m.future) best = std::min(best, d.size());
        ci.weight += best;
        ci.depth += static_cast<std::size_t>(depth(m.future_formula()));
      }
      out.push_back(std::move(ci));
    }
    if (cfg_.heuristic == Heuristic::Weakest)
      std::stable_sort(out.begin(), out.end(), [](const CoveringInfo& a, const CoveringInfo& b) {
        if (a.unclosed != b.unclosed) return a.unclosed < b.unclosed;
        if (a.nontrivial != b.nontrivial) return a.nontrivial < b.nontrivial;
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.depth < b.depth;
      });
    return out;
  }

  // Eve to move: label ∪ {□ψ}.
  bool eve(int id, std::vector<int>& path, std::size_t d) {
    track(d);
    const NodeLabel label = node(id).label;
    if (inconsistent(label.formulas, t_.spec.sig)) return finish(id, NodeKind::Failure, false);
    auto mine = describe(node(id).label);
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (desc_leq(descs_[k], mine)) {
        assert(label_leq(node(path[k]).label, label));
        node(id).loop_target = path[k];
        return finish(id, NodeKind::Success, true);
      }
    }

    std::vector<Formula> all = label.formulas;
    all.push_back(t_.spec.safety);
    ++t_.stats.tnf_calls;
    TnfFormula tf = tnf(conj(std::move(all)), t_.spec.sig, cfg_.simplify);
    auto cells = env_cells(tf, env_);
    std::vector<int> every(cells.size());
    for (std::size_t i = 0; i < every.size(); ++i) every[i] = static_cast<int>(i);

    if (!is_x_covering(cells, every, env_.size())) {
      int c = add(id, make_label({bottom()}, Chi::AlwaysPsi), Rule::BoxFalse);
      finish(c, NodeKind::Failure, false);
      return finish(id, NodeKind::Step, false);
    }

    auto covs = minimal_x_coverings(cells, env_.size(), cfg_.max_coverings);
    path.push_back(id);
    descs_.push_back(std::move(mine));
    bool open = false;
    if (covs.size() == 1 && covs[0].size() == tf.moves.size()) {
      ++t_.stats.coverings_explored;
      node(id).kind = NodeKind::AndBranch;
      open = and_block(id, tf, covs[0], path, d);
      finish(id, NodeKind::AndBranch, open);
    } else {
      node(id).kind = NodeKind::OrBranch;
      for (const auto& ci : order(tf, covs)) {
        ++t_.stats.coverings_explored;
        std::vector<Formula> ms;
        for (int i : ci.moves) ms.push_back(tf.moves[static_cast<std::size_t>(i)].formula());
        int c = add(id, NodeLabel{{disj(std::move(ms))}, Chi::AlwaysPsi}, Rule::BoxOr);
        bool r = and_block(c, tf, ci.moves, path, d + 1);
        finish(c, NodeKind::AndBranch, r);
        if (r) {
          open = true;
          break;
        }
      }
      finish(id, NodeKind::OrBranch, open);
    }
    path.pop_back();
    descs_.pop_back();
    return open;
  }

  bool and_block(int id, const TnfFormula& tf, const std::vector<int>& cov, std::vector<int>& path,
                 std::size_t d) {
    std::vector<int> done;  // open siblings expanded so far
    for (int i : cov) {
      const SeparatedMove& m = tf.moves[static_cast<std::size_t>(i)];
      std::vector<Formula> fs;
      for (const auto& l : m.literals) fs.push_back(lit(l));
      if (m.has_future()) fs.push_back(m.future_formula());
      int c = add(id, make_label(std::move(fs), Chi::NextAlwaysPsi), Rule::BoxAnd);
      node(c).move = m;

      if (cfg_.prune_siblings) {
        int reuse = -1;
        for (int s : done) {
          const auto& sm = *node(s).move;
          // a stronger (or equal) obligation already proved open
          if (!m.has_future() || (sm.has_future() && future_leq(sm.future, m.future))) {
            reuse = s;
            break;
          }
        }
        if (reuse >= 0) {
          node(c).rule_in = Rule::Reuse;
          node(c).reuse_of = reuse;
          finish(c, NodeKind::Success, true);
          continue;
        }
      }

      if (!sally(c, path, d + 1)) return false;
      done.push_back(c);
    }
    return true;
  }

  // Sally has committed to a move: label ∪ {X□ψ}.
  bool sally(int id, std::vector<int>& path, std::size_t d) {
    track(d);
    const NodeLabel label = node(id).label;
    if (inconsistent(label.formulas, t_.spec.sig)) return finish(id, NodeKind::Failure, false);
    if (label_elementary(label.formulas)) {
      int c = add(id, make_label(step_label(label.formulas), Chi::AlwaysPsi), Rule::NextStep);
      bool r = eve(c, path, d + 1);
      return finish(id, NodeKind::Step, r);
    }
    auto e = select_rule(label.formulas);
    assert(e);
    if (e->alts.size() == 1) {
      int c = add(id, make_label(e->alts[0], label.chi), e->rule);
      bool r = sally(c, path, d + 1);
      return finish(id, NodeKind::Step, r);
    }
    bool open = false;
    node(id).kind = NodeKind::OrBranch;
    for (auto& alt : e->alts) {
      int c = add(id, make_label(alt, label.chi), e->rule);
      if (sally(c, path, d + 1)) {
        open = true;
        break;
      }
    }
    return finish(id, NodeKind::OrBranch, open);
  }
};

}  // namespace

Tableau decide(const SpecFile& spec, const EngineConfig& cfg) {
  Tableau t;
  t.spec.sig = spec.sig;
  t.spec.init = to_nnf(spec.init);
  t.spec.safety = to_nnf(spec.safety);
  detail::run_on_large_stack([&] {
    try {
      Engine e(t, cfg);
      t.verdict = e.run() ? Verdict::Open : Verdict::Closed;
    } catch (const NodeBudgetExceeded& ex) {
      t.verdict = Verdict::Unknown;
      t.reason = ex.what();
    } catch (const CoveringBudgetExceeded& ex) {
      t.verdict = Verdict::Unknown;
      t.reason = ex.what();
    } catch (const TnfBudgetExceeded& ex) {
      t.verdict = Verdict::Unknown;
      t.reason = ex.what();
    }
  });
  return t;
}

// ===========================================================================
// Bunch semantics

namespace {

std::vector<char> recompute_all(const Tableau& t) {
  std::vector<char> open(t.nodes.size(), 0);
  // Children always carry larger ids than their parent.
  for (std::size_t k = t.nodes.size(); k-- > 0;) {
    const auto& n = t.nodes[k];
    bool v = false;
    switch (n.kind) {
      case NodeKind::Success: v = true; break;
      case NodeKind::Failure: v = false; break;
      case NodeKind::AndBranch:
        v = !n.children.empty();
        for (int c : n.children) v = v && open[static_cast<std::size_t>(c)];
        break;
      case NodeKind::OrBranch:
      case NodeKind::Step:
        for (int c : n.children) v = v || open[static_cast<std::size_t>(c)];
        break;
    }
    open[k] = v;
  }
  return open;
}

}  // namespace

bool recompute_open(const Tableau& t, int node) {
  return recompute_all(t)[static_cast<std::size_t>(node)] != 0;
}

bool bunch_consistent(const Tableau& t) {
  if (t.verdict == Verdict::Unknown || t.nodes.empty()) return true;
  auto open = recompute_all(t);
  for (const auto& n : t.nodes)
    if (n.expanded && (open[static_cast<std::size_t>(n.id)] != 0) != n.open) return false;
  return (open[static_cast<std::size_t>(t.root)] != 0) == (t.verdict == Verdict::Open);
}

// ===========================================================================
// DOT

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string tableau_dot(const Tableau& t) {
  std::ostringstream os;
  os << "digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& n : t.nodes) {
    std::string body;
    for (std::size_t i = 0; i < n.label.formulas.size(); ++i) {
      if (i) body += ", ";
      body += render(n.label.formulas[i], t.spec.sig);
    }
    if (!body.empty()) body += ", ";
    body += n.label.chi == Chi::AlwaysPsi ? "G psi" : "X G psi";
    std::string head = "n" + std::to_string(n.id);
    if (n.kind == NodeKind::Failure) head += ": #";
    os << "  n" << n.id << " [label=\"" << escape(head + "\\n{" + body + "}") << "\"";
    if (n.kind == NodeKind::Failure) os << ", color=red";
    else if (n.kind == NodeKind::Success) os << ", color=darkgreen";
    if (n.kind == NodeKind::AndBranch) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& n : t.nodes) {
    for (int c : n.children) {
      os << "  n" << n.id << " -> n" << c << " [label=\""
         << escape(rule_name(t.nodes[static_cast<std::size_t>(c)].rule_in)) << "\"";
      if (n.kind == NodeKind::AndBranch) os << ", arrowhead=none, style=bold";
      os << "];\n";
    }
    if (n.kind == NodeKind::AndBranch && n.children.size() > 1) {
      // one shared arc across the AND edges
      os << "  { rank=same;";
      for (int c : n.children) os << " n" << c << ";";
      os << " }\n";
    }
    if (n.loop_target >= 0) os << "  n" << n.id << " -> n" << n.loop_target << " [style=dashed, constraint=false];\n";
    if (n.reuse_of >= 0) os << "  n" << n.id << " -> n" << n.reuse_of << " [style=dotted, constraint=false];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace sltl
