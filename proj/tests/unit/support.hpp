#ifndef PDKR_TESTS_SUPPORT_HPP_
#define PDKR_TESTS_SUPPORT_HPP_

#include <random>
#include <vector>

#include "naive.hpp"
#include "pdkr/pd_model.hpp"
#include "pdkr/transformation.hpp"

namespace testing {

  // One temptation value per regime: D, C, B, A.
  inline std::vector<pdkr::Rational> const& regime_representatives() {
    static std::vector<pdkr::Rational> const bs{
        pdkr::Rational(3), pdkr::Rational(7, 2), pdkr::Rational(4), pdkr::Rational(5)};
    return bs;
  }

  inline pdkr::Transformation random_map(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, pdkr::kStates - 1);
    pdkr::Transformation               f;
    for (int x = 0; x < pdkr::kStates; ++x) {
      f[static_cast<pdkr::State>(x)] = static_cast<pdkr::State>(pick(rng));
    }
    return f;
  }

  inline pdkr::StateSet random_set(std::mt19937_64& rng) {
    return pdkr::StateSet(rng());
  }

  inline pdkr::Transformation from_naive(naive::Map const& m) {
    pdkr::Transformation::container_type images{};
    for (int x = 0; x < pdkr::kStates; ++x) {
      images[x] = m[x];
    }
    return pdkr::Transformation(images);
  }

}  // namespace testing

#endif  // PDKR_TESTS_SUPPORT_HPP_
