#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sltl/formula.hpp"
#include "sltl/parser.hpp"
#include "sltl/random_spec.hpp"

using namespace sltl;

namespace {

Signature abc() {
  Signature s;
  s.add({"a", Owner::System, {}});
  s.add({"b", Owner::System, {}});
  s.add({"c", Owner::Environment, {}});
  return s;
}

Formula P(const std::string& text, const Signature& sig) { return parse_formula(text, sig); }

}  // namespace

TEST_CASE("nnf pushes negation through eventually") {
  auto s = abc();
  CHECK(equal(to_nnf(P("!F[1,3] a", s)), P("G[1,3] !a", s)));
}

TEST_CASE("nnf removes double negation") {
  auto s = abc();
  CHECK(equal(to_nnf(negate(negate(pos(0)))), pos(0)));
}

TEST_CASE("nnf de morgan with next") {
  auto s = abc();
  CHECK(equal(to_nnf(P("!(a & X b)", s)), P("!a | X !b", s)));
}

TEST_CASE("depth examples") {
  auto s = abc();
  CHECK(depth(P("G[0,9] c", s)) == 9);
  CHECK(depth(P("a", s)) == 0);
  auto f = P("X G[2,10] !c", s);
  CHECK(depth(f) == 11);
  CHECK(depth(f) == oracle::nesting(f));
}

TEST_CASE("holds_fin examples") {
  Signature s;
  s.add({"e", Owner::Environment, {}});
  s.add({"s", Owner::System, {}});
  CHECK(holds_fin({{1, 1}}, P("X !s", s)));

  Signature c;
  c.add({"c", Owner::System, {}});
  CHECK(holds_fin({{1}}, P("G[0,9] c", c)));
  CHECK_FALSE(holds_fin({{1}, {0}}, P("G[0,9] c", c)));
  CHECK(oracle::eval({{1}}, P("G[0,9] c", c), 0));
  CHECK_FALSE(oracle::eval({{1}, {0}}, P("G[0,9] c", c), 0));
}

TEST_CASE("variants and closure") {
  Signature s;
  s.add({"a", Owner::System, {}});
  auto a = pos(0);
  auto v = variants(eventually(1, 2, a));
  // F[1,1] a is X a in canonical form, X F[1,1] a is X X a
  CHECK(v.count(eventually(1, 1, a)));
  CHECK(v.count(next(1, eventually(1, 1, a))));
  CHECK(v.count(next(1, a)));
  CHECK(v.count(a));

  auto clo = closure(a, conj(a, always(0, 3, a)));
  CHECK(clo.count(always(0, 3, a)));
  CHECK(clo.count(next(1, always(0, 2, a))));
}

TEST_CASE("closure of a larger body is finite") {
  Signature s;
  s.add({"p", Owner::Environment, {}});
  s.add({"a", Owner::System, {}});
  s.add({"c", Owner::System, {}});
  auto psi = to_nnf(P("(a -> c) & (X p -> F[1,2] a) & (X !p -> F[1,10] !c)", s));
  auto clo = closure(pos(1), psi);
  CHECK(!clo.empty());
  CHECK(clo.size() < 500);
}

TEST_CASE("nnf properties on random formulas") {
  std::mt19937_64 rng(7);
  auto s = abc();
  for (int n = 0; n < 300; ++n) {
    auto f = random_formula(rng, s, 1 + static_cast<int>(rng() % 10), 3, true);
    auto g = to_nnf(f);
    REQUIRE(is_nnf(g));
    CHECK(equal(to_nnf(g), g));
    CHECK(depth(g) == depth(f));
    CHECK(depth(f) == oracle::nesting(f));
    std::size_t len = static_cast<std::size_t>(depth(f)) + 2;
    if (len > 5) continue;
    oracle::for_each_trace(s, oracle::all_vars(s), len, [&](const Trace& t) {
      bool want = oracle::eval(t, f, 0);
      CHECK(holds_fin(t, f) == want);
      CHECK(holds_fin(t, g) == want);
    });
  }
}

TEST_CASE("suffix law for X^k") {
  std::mt19937_64 rng(11);
  auto s = abc();
  for (int n = 0; n < 100; ++n) {
    auto eta = random_formula(rng, s, 1 + static_cast<int>(rng() % 6), 2, true);
    int k = 1 + static_cast<int>(rng() % 2);
    oracle::for_each_trace(s, oracle::all_vars(s), 4, [&](const Trace& t) {
      if (t.size() <= static_cast<std::size_t>(k)) return;
      Trace suffix(t.begin() + k, t.end());
      CHECK(holds_fin(t, next(k, eta)) == holds_fin(suffix, eta));
    });
  }
}

TEST_CASE("progression agrees with finite satisfaction") {
  std::mt19937_64 rng(13);
  auto s = abc();
  for (int n = 0; n < 200; ++n) {
    auto f = to_nnf(random_formula(rng, s, 1 + static_cast<int>(rng() % 10), 3, true));
    oracle::for_each_trace(s, oracle::all_vars(s), 4, [&](const Trace& t) {
      Formula r = f;
      for (const auto& u : t) r = progress(r, u);
      CHECK((r->op != Op::False) == oracle::eval(t, f, 0));
    });
  }
}
