#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sltl/covering.hpp"
#include "sltl/game_oracle.hpp"
#include "sltl/parser.hpp"
#include "sltl/random_spec.hpp"
#include "sltl/synthesis.hpp"
#include "sltl/tableau.hpp"
#include "sltl/tnf.hpp"

using namespace sltl;

namespace {

// Exit codes. check/synth use 0/1/2 for the verdict.
constexpr int kRealizable = 0;
constexpr int kUnrealizable = 1;
constexpr int kUnknown = 2;
constexpr int kDisagree = 3;
constexpr int kIoError = 4;
constexpr int kParseError = 5;
constexpr int kBudgetError = 6;
constexpr int kStrategyError = 7;
constexpr int kUsage = 64;

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIoError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kIoError, "cannot write " + path};
  out << text;
  if (!out) throw Failure{kIoError, "cannot write " + path};
}

SpecFile load_spec(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_spec(text);
  } catch (const ParseError& e) {
    throw Failure{kParseError, path + ":" + std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + e.message};
  }
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Open: return kRealizable;
    case Verdict::Closed: return kUnrealizable;
    default: return kUnknown;
  }
}

std::size_t horizon_for(const SpecFile& spec, const EngineConfig& cfg) {
  if (cfg.horizon > 0) return cfg.horizon;
  return 2 * static_cast<std::size_t>(depth(to_nnf(spec.safety)) + 2);
}

Tableau run_tableau(const SpecFile& spec, const EngineConfig& cfg) {
  Tableau t = decide(spec, cfg);
  if (t.verdict == Verdict::Unknown) std::cerr << "sltl: " << t.reason << "\n";
  return t;
}

OracleResult run_oracle(const SpecFile& spec, const EngineConfig& cfg, bool lazy) {
  try {
    return solve(spec, {cfg.oracle_budget, lazy});
  } catch (const OracleBudgetExceeded& e) {
    throw Failure{kBudgetError, e.what()};
  }
}

const char* realizable_name(bool r) { return r ? "REALIZABLE" : "UNREALIZABLE"; }

// Tableau and oracle side by side; kDisagree when both decide and differ.
int crosscheck(const SpecFile& spec, const EngineConfig& cfg, bool lazy, bool quiet) {
  auto oracle = std::async(std::launch::async, [&] {
    std::optional<OracleResult> r;
    std::string err;
    try {
      r = solve(spec, {cfg.oracle_budget, lazy});
    } catch (const OracleBudgetExceeded& e) {
      err = e.what();
    }
    return std::make_pair(r, err);
  });
  Tableau t = decide(spec, cfg);
  auto [o, err] = oracle.get();
  if (!quiet) {
    std::cout << "tableau: " << verdict_name(t.verdict) << "\n";
    std::cout << "oracle: " << (o ? realizable_name(o->realizable) : "UNKNOWN") << "\n";
  }
  if (t.verdict == Verdict::Unknown) {
    std::cerr << "sltl: " << t.reason << "\n";
    return kUnknown;
  }
  if (!o) {
    std::cerr << "sltl: " << err << "\n";
    return kBudgetError;
  }
  bool agree = (t.verdict == Verdict::Open) == o->realizable;
  if (!quiet) std::cout << (agree ? "AGREE" : "DISAGREE") << "\n";
  return agree ? 0 : kDisagree;
}

std::string env_trace(const std::vector<Valuation>& ins, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (i) out += ", ";
    std::string l = letter_label(ins[i], sig);
    out += "{" + l.substr(0, l.find(" / ")) + "}";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability and synthesis for safety specifications"};
  app.require_subcommand(1);

  EngineConfig cfg;
  const auto positive = CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max());
  std::string heuristic = "weakest";
  std::string simplify = "none";
  bool lazy = false;
  app.add_option("--max-nodes", cfg.max_nodes, "tableau node budget")->check(positive);
  app.add_option("--max-coverings", cfg.max_coverings, "minimal coverings per node")->check(positive);
  app.add_option("--max-env-space", cfg.max_env_space, "environment valuations")->check(positive);
  app.add_option("--heuristic", heuristic, "covering order")->check(CLI::IsMember({"weakest", "declared"}));
  app.add_flag("--prune-siblings", cfg.prune_siblings, "reuse verdicts of stronger AND siblings");
  app.add_option("--simplify", simplify, "TNF simplification")->check(CLI::IsMember({"none", "subsume"}));
  app.add_option("--oracle-budget", cfg.oracle_budget, "game states times letters")->check(positive);
  app.add_flag("--oracle-lazy", lazy, "build only reachable game states");
  app.add_option("--horizon", cfg.horizon, "verification horizon, 0 for 2*(depth+2)");

  std::string file, strategy_out, strategy_dot, tableau_dot_out, strategy_in;
  std::uint64_t seed = 42;
  std::size_t count = 200;

  auto* check = app.add_subcommand("check", "print REALIZABLE, UNREALIZABLE or UNKNOWN");
  check->add_option("file", file)->required();
  check->add_option("--dot", tableau_dot_out, "write the tableau as DOT");

  auto* synth = app.add_subcommand("synth", "decide and extract a Mealy machine");
  synth->add_option("file", file)->required();
  synth->add_option("--strategy-out", strategy_out, "write the machine as JSON");
  synth->add_option("--strategy-dot", strategy_dot, "write the machine as DOT");
  synth->add_option("--dot,--tableau-dot", tableau_dot_out, "write the tableau as DOT");

  auto* tnf_cmd = app.add_subcommand("tnf", "print the terse normal form of init & safety");
  tnf_cmd->add_option("file", file)->required();

  auto* oracle = app.add_subcommand("oracle", "decide with the explicit safety game");
  oracle->add_option("file", file)->required();
  oracle->add_option("--strategy-out", strategy_out, "write the oracle's machine as JSON");

  auto* cross = app.add_subcommand("crosscheck", "run tableau and oracle, exit 3 on disagreement");
  auto* cross_file = cross->add_option("file", file);
  auto* cross_seed = cross->add_option("--seed", seed, "check one random spec instead of a file");
  cross_file->excludes(cross_seed);

  auto* verify_cmd = app.add_subcommand("verify", "drive a stored machine against the spec");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("--strategy", strategy_in, "machine JSON")->required();

  auto* fuzz = app.add_subcommand("fuzz", "cross-check random specs");
  fuzz->add_option("--seed", seed, "generator seed");
  fuzz->add_option("--count", count, "number of specs")->check(positive);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  cfg.heuristic = heuristic == "declared" ? Heuristic::Declared : Heuristic::Weakest;
  cfg.simplify = simplify == "subsume" ? Simplify::Subsume : Simplify::None;

  try {
    if (*check) {
      SpecFile spec = load_spec(file);
      Tableau t = run_tableau(spec, cfg);
      if (!tableau_dot_out.empty()) write_file(tableau_dot_out, tableau_dot(t));
      std::cout << verdict_name(t.verdict) << "\n";
      return verdict_code(t.verdict);
    }
    if (*synth) {
      SpecFile spec = load_spec(file);
      Tableau t = run_tableau(spec, cfg);
      if (!tableau_dot_out.empty()) write_file(tableau_dot_out, tableau_dot(t));
      std::cout << verdict_name(t.verdict) << "\n";
      if (t.verdict != Verdict::Open) return verdict_code(t.verdict);
      MealyMachine m = extract(t);
      if (!strategy_out.empty()) write_file(strategy_out, to_json(m, spec.sig));
      if (!strategy_dot.empty()) write_file(strategy_dot, mealy_dot(m, spec.sig));
      if (strategy_out.empty() && strategy_dot.empty()) std::cout << to_json(m, spec.sig) << "\n";
      return kRealizable;
    }
    if (*tnf_cmd) {
      SpecFile spec = load_spec(file);
      Formula f = to_nnf(conj(spec.init, spec.safety));
      TnfFormula t;
      try {
        t = tnf(f, spec.sig, cfg.simplify);
      } catch (const TnfBudgetExceeded& e) {
        throw Failure{kBudgetError, e.what()};
      }
      if (t.moves.empty()) std::cout << render(bottom(), spec.sig) << "\n";
      for (const auto& m : t.moves) std::cout << render(m.formula(), spec.sig) << "\n";
      return 0;
    }
    if (*oracle) {
      SpecFile spec = load_spec(file);
      OracleResult r = run_oracle(spec, cfg, lazy);
      std::cout << realizable_name(r.realizable) << "\n";
      if (r.realizable && !strategy_out.empty())
        write_file(strategy_out, to_json(from_strategy(*r.strategy, spec.sig), spec.sig));
      return r.realizable ? kRealizable : kUnrealizable;
    }
    if (*cross) {
      SpecFile spec;
      if (!file.empty()) {
        spec = load_spec(file);
      } else {
        std::mt19937_64 rng(seed);
        spec = random_spec(rng);
        std::cout << render_spec(spec);
      }
      return crosscheck(spec, cfg, lazy, false);
    }
    if (*verify_cmd) {
      SpecFile spec = load_spec(file);
      MealyMachine m;
      try {
        m = from_json(read_file(strategy_in), spec.sig);
      } catch (const StrategyFormatError& e) {
        throw Failure{kStrategyError, strategy_in + ": " + e.what()};
      }
      VerifyResult r = verify(m, spec, horizon_for(spec, cfg));
      if (r.ok) {
        std::cout << "OK\n";
        return 0;
      }
      std::cout << "FAIL: " << r.reason << "\n";
      if (!r.counterexample.empty()) std::cout << "inputs: " << env_trace(r.counterexample, spec.sig) << "\n";
      return 1;
    }
    if (*fuzz) {
      std::mt19937_64 rng(seed);
      std::size_t agree = 0, unknown = 0, disagree = 0;
      for (std::size_t i = 0; i < count; ++i) {
        SpecFile spec = random_spec(rng);
        int rc = crosscheck(spec, cfg, lazy, true);
        if (rc == 0) {
          ++agree;
        } else if (rc == kDisagree) {
          ++disagree;
          std::cout << "disagreement on spec " << i << ":\n" << render_spec(spec);
        } else {
          ++unknown;
        }
      }
      std::cout << "agree " << agree << " disagree " << disagree << " undecided " << unknown << " of " << count
                << "\n";
      return disagree ? kDisagree : 0;
    }
  } catch (const Failure& f) {
    std::cerr << "sltl: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "sltl: " << e.what() << "\n";
    return kBudgetError;
  }
  return kUsage;
}
