#include "sltl/random_spec.hpp"

#include <set>

namespace sltl {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Formula random_formula(std::mt19937_64& rng, const Signature& sig, int size, int max_bound, bool temporal) {
  if (size <= 1) {
    int v = pick(rng, 0, static_cast<int>(sig.vars.size()) - 1);
    const auto& d = sig.vars[static_cast<std::size_t>(v)];
    if (!d.is_bool()) {
      int c = pick(rng, 0, d.size() - 1);
      return pick(rng, 0, 1) ? eq(v, c) : neq(v, c);
    }
    return pick(rng, 0, 1) ? pos(v) : neg(v);
  }
  int choice = pick(rng, 0, temporal ? 7 : 4);
  // two nodes leave no room for a binary operator
  if (size == 2 && choice >= 1 && choice <= 4) choice = 0;
  auto sub = [&](int s) { return random_formula(rng, sig, s, max_bound, temporal); };
  auto split = [&]() { return pick(rng, 1, size - 2); };
  switch (choice) {
    case 0: return negate(sub(size - 1));
    case 1: {
      int l = split();
      return conj(sub(l), sub(size - 1 - l));
    }
    case 2: {
      int l = split();
      return disj(sub(l), sub(size - 1 - l));
    }
    case 3: {
      int l = split();
      return implies(sub(l), sub(size - 1 - l));
    }
    case 4: {
      int l = split();
      return iff(sub(l), sub(size - 1 - l));
    }
    case 5: return next(1, sub(size - 1));
    default: {
      int hi = pick(rng, 0, max_bound);
      int lo = pick(rng, 0, hi);
      return choice == 6 ? always(lo, hi, sub(size - 1)) : eventually(lo, hi, sub(size - 1));
    }
  }
}

SpecFile random_spec(std::mt19937_64& rng, const RandomSpecOptions& opt) {
  for (;;) {
    SpecFile s;
    int ne = pick(rng, 1, opt.max_env);
    int ns = pick(rng, 1, opt.max_sys);
    for (int i = 0; i < ne; ++i) s.sig.add(VarDecl{"e" + std::to_string(i), Owner::Environment, {}});
    for (int i = 0; i < ns; ++i) s.sig.add(VarDecl{"s" + std::to_string(i), Owner::System, {}});
    s.init = pick(rng, 0, 2) == 0 ? random_formula(rng, s.sig, pick(rng, 1, 3), 0, false) : top();
    s.safety = random_formula(rng, s.sig, pick(rng, 1, opt.max_size), opt.max_bound, true);

    std::set<int> rel;
    for (int v : variables(s.init)) rel.insert(v);
    for (int v : variables(s.safety)) rel.insert(v);
    std::size_t letters = std::size_t{1} << rel.size();
    std::size_t game = 1;
    bool fits = true;
    for (int k = 0; k <= depth(to_nnf(s.safety)) && fits; ++k) {
      game *= letters;
      fits = game <= opt.max_game;
    }
    if (fits) return s;
  }
}

}  // namespace sltl
