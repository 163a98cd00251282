#ifndef PDKR_PD_MODEL_HPP_
#define PDKR_PD_MODEL_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "pdkr/transformation.hpp"

namespace pdkr {

  using Rational = boost::rational<std::int64_t>;

  // Accepts "p/q", integers and terminating decimals ("3.5"), exactly.
  Rational    parse_rational(std::string_view text);
  std::string to_string(Rational const& r);

  enum class Strategy : std::uint8_t { defect = 0, cooperate = 1 };

  inline char to_char(Strategy s) {
    return s == Strategy::cooperate ? 'C' : 'D';
  }

  // Cells are numbered 1..6 column by column; cell 1 is the top-left.
  Strategy strategy_of(State x, int cell);
  State    with_strategy(State x, int cell, Strategy s);

  // "101010"
  std::string to_binary(State x);
  // Exactly six characters of 0/1 parse as a strategy string, anything
  // else as a decimal in [0, 63].
  State parse_state(std::string_view text);

  // A rows x cols torus with von Neumann neighbourhoods, duplicates removed
  // (on a 2-row torus "up" and "down" are the same cell).
  class Lattice {
   public:
    Lattice(int rows, int cols);

    // The 2x3 lattice with cell i's neighbours
    // 1:{2,3,5} 2:{1,4,6} 3:{1,4,5} 4:{2,3,6} 5:{1,3,6} 6:{2,4,5}.
    static Lattice const& standard();

    int rows() const noexcept {
      return _rows;
    }
    int cols() const noexcept {
      return _cols;
    }
    int cells() const noexcept {
      return _rows * _cols;
    }
    // 1-based cell ids.
    std::vector<int> const& neighbours(int cell) const;

   private:
    int                           _rows;
    int                           _cols;
    std::vector<std::vector<int>> _neighbours;
  };

  // Player-1 payoff: (D,D)=1, (D,C)=b, (C,D)=0, (C,C)=3.
  Rational pairwise_payoff(Strategy self, Strategy other, Rational const& b);

  // Sum of pairwise payoffs against the cell's neighbours in state x.
  Rational cell_payoff(State x, int cell, Rational const& b);
  Rational cell_payoff(Lattice const&  lattice,
                       State           x,
                       int             cell,
                       Rational const& b);

  // The synchronous update t: a cell copies a best-scoring neighbour when
  // that neighbour's payoff strictly beats its own; if the best neighbours
  // disagree, cooperation wins.
  Transformation step_map(Rational const& b);

  // d_i (s = defect) or c_i (s = cooperate): overwrite cell i, keep the rest.
  Transformation reset_map(int cell, Strategy s);

  // Every b >= 3 at which step_map changes; for the standard lattice {3, 4}.
  std::vector<Rational> critical_b_values();

  enum class Regime : char { A = 'A', B = 'B', C = 'C', D = 'D' };

  // A iff b > 4, B iff b = 4, C iff 3 < b < 4, D iff b = 3.
  Regime regime_of(Rational const& b);

  inline char to_char(Regime r) {
    return static_cast<char>(r);
  }

  // Throws DomainError when b < 3.
  void check_temptation(Rational const& b);

}  // namespace pdkr

#endif  // PDKR_PD_MODEL_HPP_
