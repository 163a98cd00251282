#include <random>

#include "doctest.h"
#include "support.hpp"

#include "pdkr/skeleton.hpp"

using namespace pdkr;

namespace {

  StateSet const kMid{0, 5, 10, 17, 20, 23, 29, 34, 40, 43, 46, 53, 58, 63};
  StateSet const kLow{0, 23, 29, 43, 46, 53, 58, 63};

}  // namespace

TEST_CASE("image system of the step map alone") {
  StateSet     base = StateSet::all().without(StateSet{63});
  GeneratorSet gens(Rational(5), {});
  ImageSystem  sys = ImageSystem::build(gens, base);
  CHECK(sys.size() == 2 + 63 + 0);
  CHECK(sys.index_of(base).has_value());
  CHECK(sys.index_of(StateSet{0, 1, 2, 4, 5, 8, 10, 16, 17, 20, 32, 34, 40}).has_value());
  CHECK(sys.index_of(StateSet{0}).has_value());
  CHECK_FALSE(sys.index_of(StateSet{63}).has_value());

  ImageSystem sys_c = ImageSystem::build(GeneratorSet(Rational(7, 2), {}));
  CHECK(sys_c.index_of(kMid).has_value());
  CHECK(sys_c.index_of(kLow).has_value());
}

TEST_CASE("resets alone split X by one bit") {
  auto gens = GeneratorSet::from_pairs({{Token::cooperate(1), reset_map(1, Strategy::cooperate)},
                                        {Token::defect(1), reset_map(1, Strategy::defect)}});
  ImageSystem sys = ImageSystem::build(gens);
  CHECK(sys.size() == 1 + 2 + 64);
  CHECK(sys.index_of(StateSet(0xFFFFFFFF00000000ULL)).has_value());
  CHECK(sys.index_of(StateSet(0x00000000FFFFFFFFULL)).has_value());
}

TEST_CASE("set-level subduction") {
  GeneratorSet gens(Rational(7, 2), {});
  CHECK(subducts(StateSet{0}, StateSet::all(), gens));
  CHECK(subducts(kLow, kMid, gens));
  CHECK_FALSE(subducts(StateSet::all(), kMid, gens));
}

TEST_CASE("subduction chains of the step map") {
  auto chain5 = subduction_chain(step_map(Rational(5)), StateSet::all().without(StateSet{63}));
  REQUIRE(chain5.size() == 3);
  CHECK(chain5[1] == StateSet{0, 1, 2, 4, 5, 8, 10, 16, 17, 20, 32, 34, 40});
  CHECK(chain5[2] == StateSet{0});

  auto chain4 = subduction_chain(step_map(Rational(4)), StateSet::all().without(StateSet{63}));
  REQUIRE(chain4.size() == 3);
  CHECK(chain4[1] == StateSet{0, 5, 10, 17, 20, 21, 23, 29, 34, 40, 42, 43, 46, 53, 58});
  CHECK(chain4[2] == StateSet{0, 21, 23, 29, 42, 43, 46, 53, 58});

  auto chain_c = subduction_chain(step_map(Rational(7, 2)), StateSet::all());
  CHECK(chain_c == std::vector<StateSet>{StateSet::all(), kMid, kLow});

  auto chain3 = subduction_chain(step_map(Rational(3)), StateSet::all());
  CHECK(chain3
        == std::vector<StateSet>{StateSet::all(), StateSet{0, 23, 29, 31, 43, 46, 47, 53, 55, 58, 59, 61, 62, 63}});
}

TEST_CASE("chain nodes form classes of strictly decreasing height") {
  StateSet base = StateSet::all().without(StateSet{63});
  Skeleton sk(GeneratorSet(Rational(5), {}), base);
  auto     chain = subduction_chain(step_map(Rational(5)), base);
  int      prev  = 1 << 20;
  std::set<std::size_t> classes;
  for (StateSet p : chain) {
    auto idx = sk.system().index_of(p);
    REQUIRE(idx.has_value());
    classes.insert(sk.class_of(*idx));
    CHECK(sk.height_of(*idx) < prev);
    prev = sk.height_of(*idx);
  }
  CHECK(classes.size() == 3);
}

TEST_CASE("subduction is a preorder that contains inclusion") {
  for (Rational const& b : testing::regime_representatives()) {
    Skeleton    sk(GeneratorSet(b, {1, 2}));
    auto const& sys = sk.system();
    std::size_t n   = sys.size();
    for (std::size_t p = 0; p < n; ++p) {
      REQUIRE(sk.subducts(p, p));
      for (std::size_t q = 0; q < n; ++q) {
        if (sys.set(p).subset_of(sys.set(q))) {
          REQUIRE(sk.subducts(p, q));
        }
        if (!sk.subducts(p, q)) {
          continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
          if (sk.subducts(q, r)) {
            REQUIRE(sk.subducts(p, r));
          }
        }
      }
    }
  }
}

TEST_CASE("serial and parallel subduction kernels agree") {
  for (auto const& open : std::vector<std::vector<int>>{{1, 2}, {1, 2, 3}}) {
    ImageSystem sys = ImageSystem::build(GeneratorSet(Rational(7, 2), open));
    BitMatrix   a   = subduction_matrix(sys, Kernel::serial, 1);
    for (int workers : {1, 2, 4}) {
      CHECK(subduction_matrix(sys, Kernel::parallel, workers) == a);
    }
  }
}

TEST_CASE("classes and heights") {
  Skeleton sk(GeneratorSet(Rational(7, 2), {1, 2}));
  auto const& classes = sk.classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto const& cl = classes[c];
    StateSet    rep = sk.system().set(cl.representative);
    if (rep.size() == 1) {
      CHECK(cl.height == 0);
    } else {
      CHECK(cl.height >= 1);
    }
    for (std::size_t m : cl.members) {
      CHECK(sk.class_of(m) == c);
      CHECK(sk.subducts(m, cl.representative));
      CHECK(sk.subducts(cl.representative, m));
    }
    if (c > 0) {
      CHECK(classes[c - 1].height <= cl.height);
    }
  }
  for (std::size_t p = 0; p < sk.system().size(); ++p) {
    for (std::size_t q = 0; q < sk.system().size(); ++q) {
      if (sk.system().set(q).size() > 1 && sk.strictly_below(p, q)) {
        REQUIRE(sk.height_of(p) < sk.height_of(q));
      }
    }
  }
}
