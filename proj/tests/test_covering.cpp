#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sltl/covering.hpp"
#include "sltl/random_spec.hpp"

using namespace sltl;

namespace {

Literal P(int v) { return {LitKind::Pos, v, 0}; }
Literal N(int v) { return {LitKind::Neg, v, 0}; }

SeparatedMove move(std::vector<Literal> lits, int future_var) {
  std::sort(lits.begin(), lits.end());
  SeparatedMove m;
  m.literals = std::move(lits);
  m.future = {{next(1, pos(future_var))}};
  return m;
}

std::vector<std::vector<int>> sorted(std::vector<std::vector<int>> v) {
  for (auto& s : v) std::sort(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

// p env; c, d sys; h a sys variable carrying the futures.
Signature pcd() {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"c", Owner::System, {}});
  s.add({"d", Owner::System, {}});
  s.add({"h", Owner::System, {}});
  return s;
}

}  // namespace

TEST_CASE("val_of examples") {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"a", Owner::System, {}});
  s.add({"mode", Owner::Environment, {"A", "B", "C"}});
  auto v1 = val_of({P(0)}, {0}, s);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0][0] == 1);
  CHECK(val_of({N(1)}, {0}, s).size() == 2);
  auto v3 = val_of({Literal{LitKind::NotEq, 2, 0}}, {2}, s);
  REQUIRE(v3.size() == 2);
  CHECK(v3[0][2] == 1);
  CHECK(v3[1][2] == 2);
}

TEST_CASE("three moves, two minimal coverings") {
  auto s = pcd();
  TnfFormula t{{move({P(0), P(1)}, 3), move({N(0), P(1)}, 3), move({N(1)}, 3)}};
  CHECK(is_x_covering(t, s));
  auto got = sorted(minimal_x_coverings(t, s));
  std::vector<std::vector<int>> want = {{0, 1}, {2}};
  CHECK(got == want);
  CHECK(got == oracle::brute_minimal_coverings(oracle::literal_sets(t), s));
}

TEST_CASE("two environment variables, the third move alone") {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"q", Owner::Environment, {}});
  s.add({"c", Owner::System, {}});
  s.add({"h", Owner::System, {}});
  TnfFormula t{{move({P(0), P(2)}, 3), move({N(0), P(1), P(2)}, 3), move({N(2)}, 3)}};
  CHECK(is_x_covering(t, s));
  TnfFormula first_two{{t.moves[0], t.moves[1]}};
  CHECK_FALSE(is_x_covering(first_two, s));
  auto got = minimal_x_coverings(t, s);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == std::vector<int>{2});
  CHECK(sorted(got) == oracle::brute_minimal_coverings(oracle::literal_sets(t), s));
}

TEST_CASE("four minimal coverings") {
  auto s = pcd();
  TnfFormula a{{move({P(0), P(1)}, 3), move({N(0), P(1)}, 3), move({P(0), N(1)}, 3), move({N(0), N(1)}, 3)}};
  TnfFormula b{{move({P(0), P(1)}, 3), move({N(0), N(1)}, 3), move({P(0), N(1), P(2)}, 3),
                move({N(0), P(1), N(2)}, 3)}};
  for (const auto& t : {a, b}) {
    auto got = sorted(minimal_x_coverings(t, s));
    CHECK(got.size() == 4);
    CHECK(got == oracle::brute_minimal_coverings(oracle::literal_sets(t), s));
  }
}

TEST_CASE("a move without environment literals covers alone") {
  auto s = pcd();
  TnfFormula t{{move({P(1), N(2)}, 3)}};
  auto got = minimal_x_coverings(t, s);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == std::vector<int>{0});
}

TEST_CASE("empty TNF is not a covering") {
  auto s = pcd();
  CHECK_FALSE(is_x_covering(TnfFormula{}, s));
  CHECK(minimal_x_coverings(TnfFormula{}, s).empty());
  Signature sys_only;
  sys_only.add({"y", Owner::System, {}});
  // Val(X) holds only the empty valuation, which no move covers
  CHECK_FALSE(is_x_covering(TnfFormula{}, sys_only));
}

TEST_CASE("covering budget aborts instead of truncating") {
  Signature s;
  for (int i = 0; i < 3; ++i) s.add({"e" + std::to_string(i), Owner::Environment, {}});
  s.add({"y", Owner::System, {}});
  s.add({"h", Owner::System, {}});
  // one move per env valuation twice over, split on y: 2^8 minimal coverings
  TnfFormula t;
  for (int v = 0; v < 8; ++v)
    for (int y = 0; y < 2; ++y) {
      std::vector<Literal> l;
      for (int i = 0; i < 3; ++i) l.push_back(v >> i & 1 ? P(i) : N(i));
      l.push_back(y ? P(3) : N(3));
      t.moves.push_back(move(l, 4));
    }
  CHECK_THROWS_AS(minimal_x_coverings(t, s, CoveringLimits{64, 65536}), CoveringBudgetExceeded);
  CHECK(minimal_x_coverings(t, s, CoveringLimits{256, 65536}).size() == 256);
}

TEST_CASE("covering properties on random TNFs") {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"m", Owner::Environment, {"A", "B", "C"}});
  s.add({"a", Owner::System, {}});
  s.add({"b", Owner::System, {}});
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int n = 0; n < 400 && checked < 150; ++n) {
    auto f = to_nnf(random_formula(rng, s, 2 + static_cast<int>(rng() % 10), 2, true));
    TnfFormula t;
    try {
      t = tnf(f, s);
    } catch (const TnfBudgetExceeded&) {
      continue;
    }
    if (t.moves.size() > 8) continue;
    ++checked;
    auto lits = oracle::literal_sets(t);

    // moves are disjoint over X u Y
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j)
        for (const auto& v : oracle::valuations(s, oracle::all_vars(s))) {
          bool both = std::all_of(lits[i].begin(), lits[i].end(), [&](auto& l) { return oracle::lit_value(l, v); }) &&
                      std::all_of(lits[j].begin(), lits[j].end(), [&](auto& l) { return oracle::lit_value(l, v); });
          CHECK_FALSE(both);
        }

    auto want = oracle::brute_minimal_coverings(lits, s);
    std::vector<std::vector<int>> got;
    try {
      got = sorted(minimal_x_coverings(t, s));
    } catch (const CoveringBudgetExceeded&) {
      CHECK(want.size() > 64);
      continue;
    }
    CHECK(got == want);
    CHECK(is_x_covering(t, s) == !want.empty());

    EnvSpace env(s);
    for (const auto& c : got) {
      std::vector<Cell> cells = env_cells(t, env);
      CHECK(is_x_covering(cells, c, env.size()));
      for (std::size_t k = 0; k < c.size(); ++k) {
        auto r = c;
        r.erase(r.begin() + static_cast<long>(k));
        CHECK_FALSE(is_x_covering(cells, r, env.size()));
      }
      // each env valuation of a cell extends to the move's full valuations
      for (int i : c) {
        auto proj = oracle::env_projection(lits[static_cast<std::size_t>(i)], s);
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        for (std::size_t e = 0; e < env.size(); ++e) {
          Valuation key(s.vars.size(), 0);
          for (int x : env.vars()) key[x] = env.at(e)[x];
          CHECK(cell.test(e) == (proj.count(key) > 0));
        }
      }
    }
  }
  CHECK(checked >= 100);
}
