#include "sltl/synthesis.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "sltl/covering.hpp"

namespace sltl {

namespace {

const TableauNode& at(const Tableau& t, int id) { return t.nodes[static_cast<std::size_t>(id)]; }

int first_open_child(const Tableau& t, int id) {
  for (int c : at(t, id).children)
    if (at(t, c).open) return c;
  throw NotOpen("node " + std::to_string(id) + " has no open child");
}

// Success leaves stand for their loop target.
int machine_state(const Tableau& t, int eve) {
  const auto& n = at(t, eve);
  return n.loop_target >= 0 ? n.loop_target : eve;
}

// The committed AND block below a G psi node.
std::vector<int> committed_moves(const Tableau& t, int eve) {
  const auto& n = at(t, eve);
  if (n.kind == NodeKind::AndBranch) return n.children;
  if (n.kind == NodeKind::OrBranch) return at(t, first_open_child(t, eve)).children;
  throw NotOpen("node " + std::to_string(eve) + " is not an expanded open G psi node");
}

// From a committed move down the saturation steps to the next G psi node.
int successor(const Tableau& t, int sally) {
  int c = sally;
  for (;;) {
    const auto& n = at(t, c);
    if (n.reuse_of >= 0) {
      c = n.reuse_of;
      continue;
    }
    if (!n.open) throw NotOpen("committed move " + std::to_string(c) + " is closed");
    if (n.kind == NodeKind::OrBranch) {
      c = first_open_child(t, c);
      continue;
    }
    if (n.children.size() != 1) throw NotOpen("unexpected shape below node " + std::to_string(c));
    int k = n.children[0];
    if (at(t, k).rule_in == Rule::NextStep) return machine_state(t, k);
    c = k;
  }
}

// A system completion inside Val_L(Y): the value a literal fixes, else the
// first constant no literal excludes.
Valuation complete(const Valuation& env, const std::vector<Literal>& lits, const Signature& sig) {
  Valuation u = env;
  for (int y : sig.sys_vars()) {
    int fixed = -1;
    std::vector<bool> excluded(static_cast<std::size_t>(sig.vars[y].size()), false);
    for (const auto& l : lits) {
      if (l.var != y) continue;
      switch (l.kind) {
        case LitKind::Pos: fixed = 1; break;
        case LitKind::Neg: fixed = 0; break;
        case LitKind::Eq: fixed = l.val; break;
        case LitKind::NotEq: excluded[static_cast<std::size_t>(l.val)] = true; break;
      }
    }
    if (fixed < 0) {
      fixed = 0;
      for (std::size_t k = 0; k < excluded.size(); ++k)
        if (!excluded[k]) {
          fixed = static_cast<int>(k);
          break;
        }
    }
    u[y] = fixed;
  }
  return u;
}

bool env_agrees(const std::vector<Literal>& lits, const Valuation& v, const Signature& sig) {
  for (const auto& l : lits)
    if (sig.is_env(l.var) && !l.holds(v)) return false;
  return true;
}

}  // namespace

MealyMachine extract(const Tableau& tab) {
  if (tab.verdict != Verdict::Open) throw NotOpen("the tableau is not open");
  const Signature& sig = tab.spec.sig;
  EnvSpace env(sig, std::size_t{1} << 20);
  MealyMachine m;
  m.initial = tab.root;
  std::map<int, bool> seen;
  std::deque<int> work{tab.root};
  seen[tab.root] = true;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    m.states.push_back(s);
    auto moves = committed_moves(tab, s);
    for (const auto& v : env.all()) {
      int chosen = -1;
      for (int c : moves) {
        const auto& n = at(tab, c);
        if (n.move && env_agrees(n.move->literals, v, sig)) {
          chosen = c;
          break;
        }
      }
      if (chosen < 0) throw NotOpen("committed block below node " + std::to_string(s) + " is not a covering");
      int to = successor(tab, chosen);
      m.transitions.push_back({s, complete(v, at(tab, chosen).move->literals, sig), to});
      if (!seen[to]) {
        seen[to] = true;
        work.push_back(to);
      }
    }
  }
  return m;
}

MealyMachine from_strategy(const StrategyTable& st, const Signature& sig) {
  EnvSpace env(sig, std::size_t{1} << 20);
  MealyMachine m;
  m.initial = st.initial;
  std::map<int, bool> seen;
  std::deque<int> work{st.initial};
  seen[st.initial] = true;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    m.states.push_back(s);
    for (const auto& v : env.all()) {
      std::size_t e = st.env_index(v);
      int y = st.choice[static_cast<std::size_t>(s)][e];
      int to = st.next[static_cast<std::size_t>(s)][e];
      if (y < 0) throw NotOpen("strategy table has no move in state " + std::to_string(s));
      Valuation u = v;
      for (int x : sig.sys_vars()) u[x] = st.sys_letters[static_cast<std::size_t>(y)][x];
      m.transitions.push_back({s, u, to});
      if (!seen[to]) {
        seen[to] = true;
        work.push_back(to);
      }
    }
  }
  return m;
}

namespace {

// [state index][env index] -> transition index, -1 if missing, -2 if doubled
std::vector<std::vector<int>> table(const MealyMachine& m, const EnvSpace& env, std::map<int, std::size_t>& idx) {
  for (std::size_t i = 0; i < m.states.size(); ++i) idx[m.states[i]] = i;
  std::vector<std::vector<int>> tab(m.states.size(), std::vector<int>(env.size(), -1));
  for (std::size_t k = 0; k < m.transitions.size(); ++k) {
    const auto& tr = m.transitions[k];
    auto it = idx.find(tr.from);
    if (it == idx.end()) continue;
    int& cell = tab[it->second][env.index_of(tr.letter)];
    cell = cell == -1 ? static_cast<int>(k) : -2;
  }
  return tab;
}

}  // namespace

bool input_total(const MealyMachine& m, const Signature& sig) {
  EnvSpace env(sig, std::size_t{1} << 20);
  std::map<int, std::size_t> idx;
  auto tab = table(m, env, idx);
  if (!idx.count(m.initial)) return false;
  for (const auto& row : tab)
    for (int c : row)
      if (c < 0) return false;
  for (const auto& tr : m.transitions)
    if (!idx.count(tr.from) || !idx.count(tr.to)) return false;
  return true;
}

VerifyResult verify(const MealyMachine& m, const SpecFile& spec_in, std::size_t horizon) {
  SpecFile spec;
  spec.sig = spec_in.sig;
  spec.init = to_nnf(spec_in.init);
  spec.safety = to_nnf(spec_in.safety);
  const Signature& sig = spec.sig;
  EnvSpace env(sig, std::size_t{1} << 20);
  VerifyResult res;
  if (!input_total(m, sig)) {
    res.ok = false;
    res.reason = "machine is not input-total";
    return res;
  }
  std::map<int, std::size_t> idx;
  auto tab = table(m, env, idx);

  // The monitor state is what the read prefix still owes: the progression
  // of every safety instance started so far. False means a violation.
  struct KeyLess {
    bool operator()(const std::pair<int, Formula>& a, const std::pair<int, Formula>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return compare(a.second, b.second) < 0;
    }
  };
  using Key = std::pair<int, Formula>;
  std::map<Key, std::size_t, KeyLess> memo;     // best remaining horizon already explored
  std::map<Key, std::size_t, KeyLess> on_path;  // key -> letters read when reached
  Trace letters;
  std::vector<Valuation> inputs;

  auto env_part = [&](const Valuation& u) {
    Valuation v(u.size(), 0);
    for (int x : sig.env_vars()) v[static_cast<std::size_t>(x)] = u[static_cast<std::size_t>(x)];
    return v;
  };

  std::function<bool(int, const Formula&)> drive = [&](int q, const Formula& owed) -> bool {
    std::size_t left = horizon - letters.size();
    if (left == 0) return true;
    Key key{q, owed};
    auto it = memo.find(key);
    if (it != memo.end() && it->second >= left) return true;
    memo[key] = left;
    on_path[key] = letters.size();
    Formula now = letters.empty() ? conj({owed, spec.init, spec.safety}) : conj(owed, spec.safety);
    for (std::size_t e = 0; e < env.size(); ++e) {
      const auto& tr = m.transitions[static_cast<std::size_t>(tab[idx[q]][e])];
      letters.push_back(tr.letter);
      inputs.push_back(env_part(tr.letter));
      Formula rest = progress(now, tr.letter);
      if (rest->op == Op::False) {
        res.ok = false;
        res.counterexample = inputs;
        res.reason = "prefix of length " + std::to_string(letters.size()) + " is not a pre-witness";
        return false;
      }
      Key next{tr.to, rest};
      auto lp = on_path.find(next);
      if (lp != on_path.end() && !is_lasso_witness(letters, lp->second, spec)) {
        res.ok = false;
        res.counterexample = inputs;
        res.reason = "lasso from position " + std::to_string(lp->second) + " is not a witness";
        return false;
      }
      if (!drive(tr.to, rest)) return false;
      letters.pop_back();
      inputs.pop_back();
    }
    on_path.erase(key);
    return true;
  };
  drive(m.initial, top());
  return res;
}

// ===========================================================================
// JSON and DOT

namespace {

nlohmann::json value_json(const VarDecl& d, int v) {
  if (d.is_bool()) return v != 0;
  return d.domain[static_cast<std::size_t>(v)];
}

int value_of(const VarDecl& d, const nlohmann::json& j) {
  if (d.is_bool()) {
    if (!j.is_boolean()) throw StrategyFormatError("variable '" + d.name + "' expects true or false");
    return j.get<bool>() ? 1 : 0;
  }
  if (!j.is_string()) throw StrategyFormatError("variable '" + d.name + "' expects a constant name");
  auto s = j.get<std::string>();
  for (std::size_t k = 0; k < d.domain.size(); ++k)
    if (d.domain[k] == s) return static_cast<int>(k);
  throw StrategyFormatError("'" + s + "' is not a constant of '" + d.name + "'");
}

}  // namespace

std::string to_json(const MealyMachine& m, const Signature& sig) {
  nlohmann::ordered_json j;
  j["states"] = m.states;
  j["initial"] = m.initial;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& tr : m.transitions) {
    nlohmann::ordered_json t;
    t["from"] = tr.from;
    nlohmann::ordered_json env = nlohmann::ordered_json::object(), sys = nlohmann::ordered_json::object();
    for (int x : sig.env_vars()) env[sig.vars[x].name] = value_json(sig.vars[x], tr.letter[x]);
    for (int x : sig.sys_vars()) sys[sig.vars[x].name] = value_json(sig.vars[x], tr.letter[x]);
    t["env"] = env;
    t["sys"] = sys;
    t["to"] = tr.to;
    arr.push_back(t);
  }
  j["transitions"] = arr;
  return j.dump(2) + "\n";
}

MealyMachine from_json(const std::string& text, const Signature& sig) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StrategyFormatError(std::string("malformed JSON: ") + e.what());
  }
  MealyMachine m;
  try {
    m.states = j.at("states").get<std::vector<int>>();
    m.initial = j.at("initial").get<int>();
    for (const auto& t : j.at("transitions")) {
      MealyTransition tr;
      tr.from = t.at("from").get<int>();
      tr.to = t.at("to").get<int>();
      tr.letter.assign(sig.vars.size(), 0);
      for (const char* part : {"env", "sys"}) {
        const auto& o = t.at(part);
        bool want_env = std::string(part) == "env";
        for (auto it = o.begin(); it != o.end(); ++it) {
          int x = sig.find(it.key());
          if (x < 0) throw StrategyFormatError("unknown variable '" + it.key() + "'");
          if (sig.is_env(x) != want_env)
            throw StrategyFormatError("variable '" + it.key() + "' listed under " + part);
          tr.letter[static_cast<std::size_t>(x)] = value_of(sig.vars[x], it.value());
        }
        for (int x : want_env ? sig.env_vars() : sig.sys_vars())
          if (!o.contains(sig.vars[x].name))
            throw StrategyFormatError("transition lacks variable '" + sig.vars[x].name + "'");
      }
      m.transitions.push_back(std::move(tr));
    }
  } catch (const nlohmann::json::exception& e) {
    throw StrategyFormatError(std::string("bad strategy: ") + e.what());
  }
  auto known = [&](int s) { return std::find(m.states.begin(), m.states.end(), s) != m.states.end(); };
  if (!known(m.initial)) throw StrategyFormatError("initial state " + std::to_string(m.initial) + " is not listed");
  for (const auto& tr : m.transitions) {
    if (!known(tr.from)) throw StrategyFormatError("transition from unlisted state " + std::to_string(tr.from));
    if (!known(tr.to)) throw StrategyFormatError("transition to unlisted state " + std::to_string(tr.to));
  }
  return m;
}

std::string letter_label(const Valuation& letter, const Signature& sig) {
  auto part = [&](const std::vector<int>& vars) {
    std::string s;
    for (int x : vars) {
      if (!s.empty()) s += " ";
      const auto& d = sig.vars[x];
      if (d.is_bool()) s += (letter[x] ? "" : "!") + d.name;
      else s += d.name + "=" + d.domain[static_cast<std::size_t>(letter[x])];
    }
    return s;
  };
  return part(sig.env_vars()) + " / " + part(sig.sys_vars());
}

std::string mealy_dot(const MealyMachine& m, const Signature& sig) {
  std::ostringstream os;
  os << "digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
  for (int s : m.states) os << "  n" << s << " [label=\"n" << s << "\"];\n";
  os << "  start -> n" << m.initial << ";\n";
  for (const auto& tr : m.transitions)
    os << "  n" << tr.from << " -> n" << tr.to << " [label=\"" << letter_label(tr.letter, sig) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace sltl
