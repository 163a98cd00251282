#include <filesystem>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "pdkr/errors.hpp"
#include "pdkr/semigroup.hpp"

using namespace pdkr;

namespace {

  std::set<Transformation> as_set(Semigroup const& s) {
    return {s.elements().begin(), s.elements().end()};
  }

  std::set<Transformation> oracle_closure(Rational const& b, std::vector<int> const& open) {
    std::set<Transformation> out;
    long num = b.numerator();
    long den = b.denominator();
    for (auto const& m : naive::enumerate(naive::generators(num, den, open))) {
      out.insert(testing::from_naive(m));
    }
    return out;
  }

}  // namespace

TEST_CASE("powers of t in regime A") {
  GeneratorSet gens = GeneratorSet(Rational(5), {});
  Semigroup    s    = closure_serial(gens);
  std::set<Transformation> powers;
  Transformation t = step_map(Rational(5));
  Transformation f = t;
  while (powers.insert(f).second) {
    f = compose(f, t);
  }
  CHECK(as_set(s) == powers);
  CHECK(s.size() <= 3);
}

TEST_CASE("resets on one cell close to two elements") {
  auto gens = GeneratorSet::from_pairs({{Token::cooperate(1), reset_map(1, Strategy::cooperate)},
                                        {Token::defect(1), reset_map(1, Strategy::defect)}});
  CHECK(closure_serial(gens).size() == 2);
}

TEST_CASE("closure matches the brute-force enumeration") {
  for (Rational const& b : testing::regime_representatives()) {
    for (auto const& open : std::vector<std::vector<int>>{{}, {1}, {1, 2}, {1, 4}}) {
      GeneratorSet gens(b, open);
      Semigroup    s = closure(gens, {}, 1);
      REQUIRE(as_set(s) == oracle_closure(b, open));
    }
  }
}

TEST_CASE("witnesses evaluate to their element and are shortlex minimal") {
  GeneratorSet gens(Rational(7, 2), {1, 2});
  Semigroup    s = closure_serial(gens);
  Word         previous;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Word w = s.witness(i);
    REQUIRE(gens.eval(w) == s.element(i));
    if (i > 0) {
      REQUIRE(shortlex_less(previous, w));
    }
    previous = w;
  }
  // No shorter word reaches an element than its BFS level.
  CHECK(s.witness(0).size() == 1);
  CHECK(s.find(gens.eval(parse_word("d2 c1 t"))).has_value());
}

TEST_CASE("closure determinism across worker counts") {
  for (Rational const& b : testing::regime_representatives()) {
    GeneratorSet gens(b, {1, 2});
    Semigroup    serial = closure_serial(gens);
    for (int workers : {1, 2, 3, 4}) {
      Semigroup par = closure_parallel(gens, {}, workers);
      REQUIRE(par.size() == serial.size());
      REQUIRE(par.elements() == serial.elements());
      for (std::size_t i = 0; i < par.size(); ++i) {
        REQUIRE(par.witness_indices(i) == serial.witness_indices(i));
      }
    }
  }
}

TEST_CASE("generator insertion order does not change the element set") {
  GeneratorSet a(Rational(7, 2), {1, 2});
  std::vector<std::pair<Token, Transformation>> reversed;
  for (std::size_t i = a.size(); i-- > 0;) {
    reversed.emplace_back(a.token(i), a.map(i));
  }
  GeneratorSet b = GeneratorSet::from_pairs(reversed);
  CHECK(as_set(closure_serial(a)) == as_set(closure_serial(b)));
}

TEST_CASE("budget violations name the limit") {
  GeneratorSet  gens(Rational(7, 2), {1, 2});
  ClosureBudget budget;
  budget.max_elements = 100;
  try {
    closure_serial(gens, budget);
    FAIL("expected ResourceError");
  } catch (ResourceError const& e) {
    CHECK(e.limit() == Limit::elements);
    CHECK(e.reached() == 100);
  }
  CHECK_THROWS_AS(closure_parallel(gens, budget, 2), ResourceError);
  budget.max_elements = 3874;
  CHECK(closure_serial(gens, budget).size() == 3874);
  CHECK(closure_parallel(gens, budget, 2).size() == 3874);

  budget              = ClosureBudget{};
  budget.max_bytes    = 1024;
  try {
    closure_serial(gens, budget);
    FAIL("expected ResourceError");
  } catch (ResourceError const& e) {
    CHECK(e.limit() == Limit::memory);
  }
}

TEST_CASE("subset action") {
  GeneratorSet gens(Rational(7, 2), {});
  Semigroup    s   = closure_serial(gens);
  auto         act = subset_action(s, StateSet::all());
  REQUIRE(act.size() == 2);
  CHECK(act[0] == StateSet{0, 23, 29, 43, 46, 53, 58, 63});
  CHECK(act[1] == StateSet{0, 5, 10, 17, 20, 23, 29, 34, 40, 43, 46, 53, 58, 63});
  CHECK(subset_action(s, StateSet{}) == std::vector<StateSet>{StateSet{}});

  Semigroup s3 = closure_serial(GeneratorSet(Rational(3), {}));
  CHECK(subset_action(s3, StateSet::all())
        == std::vector<StateSet>{StateSet{0, 23, 29, 31, 43, 46, 47, 53, 55, 58, 59, 61, 62, 63}});
}

TEST_CASE("closure cache round trip") {
  auto dir  = std::filesystem::temp_directory_path() / "pdkr_cache_test";
  auto path = dir / "c.bin";
  std::filesystem::create_directories(dir);
  GeneratorSet gens(Rational(7, 2), {1, 2});
  Semigroup    s = closure_serial(gens);
  save_closure(path, Rational(7, 2), {1, 2}, s);
  Semigroup back = load_closure(path, Rational(7, 2), {1, 2});
  CHECK(back.elements() == s.elements());
  for (std::size_t i = 0; i < s.size(); i += 97) {
    CHECK(back.witness(i) == s.witness(i));
  }
  CHECK(back.find(s.element(s.size() - 1)) == s.size() - 1);
  CHECK_THROWS(load_closure(path, Rational(4), {1, 2}));
  CHECK_THROWS(load_closure(path, Rational(7, 2), {1, 3}));
  std::filesystem::remove_all(dir);
}
