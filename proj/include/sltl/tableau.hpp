#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sltl/config.hpp"
#include "sltl/formula.hpp"
#include "sltl/parser.hpp"
#include "sltl/subsumption.hpp"
#include "sltl/tnf.hpp"

namespace sltl {

// G psi (environment to move) or X G psi (system has committed to a move).
enum class Chi { AlwaysPsi, NextAlwaysPsi };

struct NodeLabel {
  std::vector<Formula> formulas;  // canonical, subsumption-free
  Chi chi = Chi::AlwaysPsi;
};

NodeLabel make_label(std::vector<Formula> fs, Chi chi);

// Phi ⋖ Phi': every member of Phi' is subsumed by some member of Phi, with
// matching chi. So Phi implies Phi', and a branch reaching Phi' may loop
// back to an ancestor labelled Phi.
bool label_leq(const NodeLabel& phi, const NodeLabel& phi2);

// Exhaustive saturation of a label: alternatives from the branching rules
// are enumerated in order. Strict-future disjunctions are folded to their
// elementary form instead of being split.
std::vector<NodeLabel> saturate(const NodeLabel& phi, const Signature& sig);

enum class Rule {
  Root,
  BoxFalse,    // TNF is not an X-covering
  BoxOr,       // one minimal covering among several
  BoxAnd,      // one move of a minimal covering
  NextStep,    // (X): elementary label, step to the next state
  AndSplit,    // (∧)
  OrSplit,     // (∨)
  DiamondLess, // (◇<)
  BoxLess,     // (□<)
  DorFold,     // the strict-future family, folded into δ^E
  Reuse,       // AND-sibling pruning
};

const char* rule_name(Rule r);

enum class NodeKind { Step, OrBranch, AndBranch, Success, Failure };

struct TableauNode {
  int id = 0;
  int parent = -1;
  NodeLabel label;
  NodeKind kind = NodeKind::Step;
  Rule rule_in = Rule::Root;
  std::vector<int> children;
  int loop_target = -1;  // success leaves closed by ⋖
  int reuse_of = -1;     // sibling whose verdict was reused
  bool open = false;
  bool expanded = false;
  std::optional<SeparatedMove> move;  // BoxAnd children
};

enum class Verdict { Open, Closed, Unknown };

const char* verdict_name(Verdict v);  // REALIZABLE / UNREALIZABLE / UNKNOWN

struct TableauStats {
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  std::size_t coverings_explored = 0;
  std::size_t tnf_calls = 0;
};

struct Tableau {
  SpecFile spec;  // init and safety in NNF
  std::vector<TableauNode> nodes;
  int root = 0;
  Verdict verdict = Verdict::Unknown;
  std::string reason;  // why the verdict is Unknown
  TableauStats stats;
};

Tableau decide(const SpecFile& spec, const EngineConfig& cfg = {});

// Open/closed recomputed bottom-up from the stored tree: AND needs all
// children open, OR some child, success leaves are open, failures closed.
bool recompute_open(const Tableau& t, int node);
bool bunch_consistent(const Tableau& t);

std::string tableau_dot(const Tableau& t);

}  // namespace sltl
