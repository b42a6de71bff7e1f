// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "sltl/covering.hpp"
#include "sltl/game_oracle.hpp"
#include "sltl/random_spec.hpp"
#include "sltl/subsumption.hpp"
#include "sltl/synthesis.hpp"
#include "sltl/tableau.hpp"

using namespace sltl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  int failed = 0;
  void line(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
    if (!ok) ++failed;
  }
};

bool fin_equivalent(const Formula& f, const Formula& g, const Signature& sig) {
  auto vs = variables(conj(f, g));
  std::vector<int> vars(vs.begin(), vs.end());
  std::size_t len = static_cast<std::size_t>(std::max(depth(f), depth(g))) + 2;
  bool same = true;
  oracle::for_each_trace(sig, vars, len, [&](const Trace& t) {
    if (oracle::eval(t, f, 0) != oracle::eval(t, g, 0)) same = false;
  });
  return same;
}

std::vector<std::vector<int>> sorted(std::vector<std::vector<int>> v) {
  for (auto& s : v) std::sort(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::size_t horizon(const SpecFile& spec) { return 2 * static_cast<std::size_t>(depth(to_nnf(spec.safety)) + 2); }

// ---------------------------------------------------------------------------

void golden_verdicts(Report& rep) {
  const std::vector<std::pair<const char*, Verdict>> cases = {
      {"copy_env.sltl", Verdict::Open},    {"mimic_next.sltl", Verdict::Open},   {"hold_or_drop.sltl", Verdict::Open},
      {"lookahead_response.sltl", Verdict::Open},    {"bounded_response.sltl", Verdict::Open},   {"arbiter.sltl", Verdict::Open},
      {"clairvoyant.sltl", Verdict::Closed},  {"late_clash.sltl", Verdict::Closed}};
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& [name, want] : cases) {
    auto got = decide(oracle::load(name)).verdict;
    if (got != want) {
      ok = false;
      detail += std::string(" ") + name + "=" + verdict_name(got);
    }
  }
  double secs = seconds_since(t0);
  rep.line(1, ok && secs < 5.0, "golden verdicts, " + std::to_string(cases.size()) + " specs in " +
                                    std::to_string(secs) + " s" + detail);
}

void tnf_goldens(Report& rep) {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"s", Owner::System, {}});
  s.add({"c", Owner::System, {}});
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"p <-> X s", "(p & X s) | (!p & X !s)"},
      {"X p <-> X s", "(X p & X s) || (X !p & X !s)"},
      {"c & (!p -> G[0,9] c) & (G[0,9] c | F[0,2] !c)",
       "(p & c & (X F[0,1] !c || X G[0,8] c)) | (!p & c & X G[0,8] c)"}};
  bool ok = true;
  for (const auto& [in, shown] : cases) {
    auto t = tnf(to_nnf(parse_formula(in, s)), s);
    ok = ok && has_clash_property(t) && fin_equivalent(t.formula(), parse_formula(shown, s), s);
  }
  rep.line(2, ok, "TNF golden set equivalent to the displayed forms with the clash property");
}

void covering_counts(Report& rep) {
  auto mv = [](std::vector<Literal> l, int fut) {
    std::sort(l.begin(), l.end());
    SeparatedMove m;
    m.literals = std::move(l);
    m.future = {{next(1, pos(fut))}};
    return m;
  };
  auto P = [](int v) { return Literal{LitKind::Pos, v, 0}; };
  auto N = [](int v) { return Literal{LitKind::Neg, v, 0}; };

  Signature one;  // p | c d h
  one.add({"p", Owner::Environment, {}});
  one.add({"c", Owner::System, {}});
  one.add({"d", Owner::System, {}});
  one.add({"h", Owner::System, {}});
  Signature two;  // p q | c h
  two.add({"p", Owner::Environment, {}});
  two.add({"q", Owner::Environment, {}});
  two.add({"c", Owner::System, {}});
  two.add({"h", Owner::System, {}});

  TnfFormula t4{{mv({P(0), P(1)}, 3), mv({N(0), P(1)}, 3), mv({N(1)}, 3)}};
  TnfFormula t5{{mv({P(0), P(2)}, 3), mv({N(0), P(1), P(2)}, 3), mv({N(2)}, 3)}};
  TnfFormula t6a{{mv({P(0), P(1)}, 3), mv({N(0), P(1)}, 3), mv({P(0), N(1)}, 3), mv({N(0), N(1)}, 3)}};
  TnfFormula t6b{{mv({P(0), P(1)}, 3), mv({N(0), N(1)}, 3), mv({P(0), N(1), P(2)}, 3), mv({N(0), P(1), N(2)}, 3)}};

  auto c4 = sorted(minimal_x_coverings(t4, one));
  auto c5 = sorted(minimal_x_coverings(t5, two));
  auto c6a = sorted(minimal_x_coverings(t6a, one));
  auto c6b = sorted(minimal_x_coverings(t6b, one));
  bool ok = c4.size() == 2 && c5.size() == 1 && c5[0] == std::vector<int>{2} && c6a.size() == 4 && c6b.size() == 4;
  ok = ok && c4 == oracle::brute_minimal_coverings(oracle::literal_sets(t4), one);
  ok = ok && c5 == oracle::brute_minimal_coverings(oracle::literal_sets(t5), two);
  ok = ok && c6a == oracle::brute_minimal_coverings(oracle::literal_sets(t6a), one);
  ok = ok && c6b == oracle::brute_minimal_coverings(oracle::literal_sets(t6b), one);
  rep.line(3, ok, "minimal covering counts 2 / 1 / 4 / 4 match brute force");
}

void oracle_equivalence(Report& rep) {
  std::mt19937_64 rng(42);
  auto t0 = Clock::now();
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    auto spec = random_spec(rng);
    auto t = decide(spec);
    auto r = solve(spec);
    if (t.verdict != Verdict::Unknown && (t.verdict == Verdict::Open) == r.realizable) ++agree;
  }
  double secs = seconds_since(t0);
  rep.line(4, agree == 200 && secs <= 60.0,
           "tableau = oracle on " + std::to_string(agree) + "/200 random specs (seed 42) in " + std::to_string(secs) +
               " s");
}

// For the bounded-response spec: from every reachable (state, pending
// deadlines) pair, no request waits more than `limit` extra steps.
bool answered_within(const MealyMachine& m, const Signature& sig, int limit) {
  int p = sig.find("p"), a = sig.find("a"), c = sig.find("c");
  auto step = [&](int s, int pv) -> const MealyTransition* {
    for (const auto& t : m.transitions)
      if (t.from == s && t.letter[p] == pv) return &t;
    return nullptr;
  };
  std::set<std::tuple<int, int, int>> seen;
  std::vector<std::tuple<int, int, int>> todo{{m.initial, -1, -1}};
  while (!todo.empty()) {
    auto [s, no, na] = todo.back();
    todo.pop_back();
    if (!seen.insert({s, no, na}).second) continue;
    for (int pv = 0; pv < 2; ++pv) {
      auto t = step(s, pv);
      if (!t) return false;
      int x = no, y = na;
      if (pv) x = x < 0 ? limit : std::min(x, limit);
      else y = y < 0 ? limit : std::min(y, limit);
      if (x >= 0 && !t->letter[c]) x = -1;
      if (y >= 0 && t->letter[a]) y = -1;
      if (x == 0 || y == 0) return false;
      todo.push_back({t->to, x >= 0 ? x - 1 : -1, y >= 0 ? y - 1 : -1});
    }
  }
  return true;
}

void strategy_soundness(Report& rep) {
  bool ok = true;
  std::string detail;
  for (const char* name : {"copy_env.sltl", "mimic_next.sltl", "hold_or_drop.sltl", "lookahead_response.sltl", "bounded_response.sltl", "arbiter.sltl",
                           "short_response.sltl", "enum_mode.sltl"}) {
    auto spec = oracle::load(name);
    auto m = extract(decide(spec));
    auto r = verify(m, spec, horizon(spec));
    if (!r.ok || !input_total(m, spec.sig)) {
      ok = false;
      detail += std::string(" ") + name;
    }
  }
  auto bounded_response = oracle::load("bounded_response.sltl");
  auto m = extract(decide(bounded_response));
  std::set<int> reach{m.initial};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& t : m.transitions)
      if (reach.count(t.from) && reach.insert(t.to).second) grew = true;
  }
  bool bounded_response_ok = input_total(m, bounded_response.sig) && reach.size() == 2 && answered_within(m, bounded_response.sig, 100) &&
                 answered_within(m, bounded_response.sig, 1);
  rep.line(5, ok && bounded_response_ok,
           "extracted machines verify at 2*(depth+2); bounded response machine has " + std::to_string(reach.size()) +
               " states and answers within two steps" + detail);
}

void property_suites(Report& rep) {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"a", Owner::System, {}});
  s.add({"b", Owner::System, {}});
  std::mt19937_64 rng(8);
  bool clash = true, one_move = true, round_trip = true;
  for (int n = 0; n < 200; ++n) {
    auto f = random_formula(rng, s, 1 + static_cast<int>(rng() % 9), 2, true);
    auto g = to_nnf(f);
    round_trip = round_trip && equal(parse_formula(render(f, s), s), f) && equal(parse_formula(render(g, s), s), g) &&
                 equal(to_nnf(g), g);
    TnfFormula t;
    try {
      t = tnf(g, s);
    } catch (const TnfBudgetExceeded&) {
      continue;
    }
    clash = clash && has_clash_property(t);
    std::size_t len = static_cast<std::size_t>(depth(g)) + 2;
    if (len > 5) continue;
    oracle::for_each_trace(s, oracle::all_vars(s), len, [&](const Trace& tr) {
      int sat = 0;
      for (const auto& m : t.moves) sat += oracle::eval(tr, m.formula(), 0);
      if (oracle::eval(tr, g, 0) != (sat == 1) || sat > 1) one_move = false;
    });
  }

  // subsumption soundness on 500 pairs
  Signature ab;
  ab.add({"a", Owner::System, {}});
  ab.add({"b", Owner::System, {}});
  auto atom = [&]() {
    int v = static_cast<int>(rng() % 2);
    return rng() % 2 ? pos(v) : neg(v);
  };
  auto temporal = [&](const Formula& body) {
    int lo = static_cast<int>(rng() % 3);
    int hi = lo + static_cast<int>(rng() % 3);
    switch (rng() % 4) {
      case 0: return next(lo, body);
      case 1: return always(lo, hi, body);
      case 2: return eventually(lo, hi, body);
      default: return body;
    }
  };
  int pairs = 0;
  bool sound = true;
  for (int tries = 0; pairs < 500 && tries < 2000000; ++tries) {
    auto beta = to_nnf(rng() % 3 ? temporal(atom()) : conj(temporal(atom()), temporal(atom())));
    auto gamma = to_nnf(rng() % 3 ? temporal(atom()) : disj(temporal(atom()), temporal(atom())));
    std::size_t len = static_cast<std::size_t>(std::max(depth(beta), depth(gamma))) + 2;
    if (len > 7 || !subsumes(beta, gamma)) continue;
    ++pairs;
    oracle::for_each_trace(ab, {0, 1}, len, [&](const Trace& tr) {
      if (oracle::eval(tr, beta, 0) && !oracle::eval(tr, gamma, 0)) sound = false;
    });
  }

  // bunch recomputation on every tableau produced here
  bool bunch = true;
  for (const char* name : {"copy_env.sltl", "clairvoyant.sltl", "mimic_next.sltl", "hold_or_drop.sltl", "lookahead_response.sltl", "bounded_response.sltl", "late_clash.sltl",
                           "short_response.sltl", "arbiter.sltl", "enum_mode.sltl"})
    bunch = bunch && bunch_consistent(decide(oracle::load(name)));
  std::mt19937_64 rs(77);
  for (int i = 0; i < 100; ++i) {
    auto t = decide(random_spec(rs));
    if (t.verdict != Verdict::Unknown) bunch = bunch && bunch_consistent(t);
  }

  std::string detail;
  if (!clash) detail += " clash";
  if (!one_move) detail += " one-move";
  if (!sound || pairs < 500) detail += " subsumption(" + std::to_string(pairs) + ")";
  if (!bunch) detail += " bunch";
  if (!round_trip) detail += " round-trip";
  rep.line(6, detail.empty(), "clash, exactly-one-move, subsumption on 500 pairs, bunch recomputation, round-trips" + detail);
}

void budgets(Report& rep) {
  bool ok = true;
  std::string detail;
  EngineConfig cfg;
  cfg.max_nodes = 100000;
  for (const char* name : {"copy_env.sltl", "clairvoyant.sltl", "mimic_next.sltl", "hold_or_drop.sltl", "lookahead_response.sltl", "bounded_response.sltl", "late_clash.sltl",
                           "arbiter.sltl"}) {
    auto t = decide(oracle::load(name), cfg);
    if (t.verdict == Verdict::Unknown || t.nodes.size() > cfg.max_nodes) {
      ok = false;
      detail += std::string(" ") + name;
    }
  }
  // adversarial bounds: UNKNOWN, or the right answer
  auto ev = decide(oracle::load("blowup_eventually.sltl"), cfg);
  if (ev.verdict != Verdict::Unknown) {
    ok = false;
    detail += " blowup_eventually";
  }
  auto al = decide(oracle::load("blowup_always.sltl"), cfg);
  if (al.verdict == Verdict::Closed) {
    ok = false;
    detail += " blowup_always";
  }
  auto clash = parse_spec("env p, q; sys c; safety: (p -> G[0,1048576] c) & (q -> !c);");
  auto cl = decide(clash, cfg);
  if (cl.verdict == Verdict::Open) {
    ok = false;
    detail += " blowup_clash";
  }
  rep.line(7, ok,
           std::string("goldens within 100000 nodes; blowups give ") + verdict_name(ev.verdict) + " / " +
               verdict_name(al.verdict) + " / " + verdict_name(cl.verdict) + detail);
}

}  // namespace

int main() {
  Report rep;
  golden_verdicts(rep);
  tnf_goldens(rep);
  covering_counts(rep);
  oracle_equivalence(rep);
  strategy_soundness(rep);
  property_suites(rep);
  budgets(rep);
  return rep.failed ? 1 : 0;
}
