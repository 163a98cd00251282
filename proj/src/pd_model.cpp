#include "pdkr/pd_model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "pdkr/errors.hpp"

namespace pdkr {

  namespace {

    std::int64_t parse_int(std::string_view text, std::string_view whole) {
      std::int64_t value = 0;
      auto [ptr, ec]     = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("invalid rational '" + std::string(whole) + "'");
      }
      return value;
    }

    void check_cell(int cell) {
      if (cell < 1 || cell > kCells) {
        throw DomainError("cell " + std::to_string(cell) + " outside 1.." + std::to_string(kCells));
      }
    }

  }  // namespace

  Rational parse_rational(std::string_view text) {
    if (text.empty()) {
      throw ParseError("empty rational");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      std::int64_t num = parse_int(text.substr(0, slash), text);
      std::int64_t den = parse_int(text.substr(slash + 1), text);
      if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
      }
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac  = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 15
          || !std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("invalid decimal '" + std::string(text) + "'");
      }
      bool         negative = !whole.empty() && whole.front() == '-';
      std::int64_t ip       = (whole.empty() || whole == "-") ? 0 : parse_int(whole, text);
      std::int64_t scale    = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) {
        scale *= 10;
      }
      std::int64_t fp = parse_int(frac, text);
      std::int64_t num = (ip < 0 ? -ip : ip) * scale + fp;
      return Rational(negative ? -num : num, scale);
    }
    return Rational(parse_int(text, text));
  }

  std::string to_string(Rational const& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) {
      os << '/' << r.denominator();
    }
    return os.str();
  }

  Strategy strategy_of(State x, int cell) {
    check_cell(cell);
    return ((x >> (kCells - cell)) & 1U) ? Strategy::cooperate : Strategy::defect;
  }

  State with_strategy(State x, int cell, Strategy s) {
    check_cell(cell);
    State mask = static_cast<State>(1U << (kCells - cell));
    return s == Strategy::cooperate ? static_cast<State>(x | mask)
                                    : static_cast<State>(x & ~mask);
  }

  std::string to_binary(State x) {
    std::string out(kCells, '0');
    for (int i = 0; i < kCells; ++i) {
      if ((x >> (kCells - 1 - i)) & 1U) {
        out[static_cast<std::size_t>(i)] = '1';
      }
    }
    return out;
  }

  State parse_state(std::string_view text) {
    if (text.size() == static_cast<std::size_t>(kCells)
        && std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; })) {
      State x = 0;
      for (char c : text) {
        x = static_cast<State>((x << 1U) | (c == '1' ? 1U : 0U));
      }
      return x;
    }
    int value = -1;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0 || value >= kStates) {
      throw ParseError("invalid state '" + std::string(text) + "' (expected 0..63 or a 6-bit string)");
    }
    return static_cast<State>(value);
  }

  Lattice::Lattice(int rows, int cols) : _rows(rows), _cols(cols) {
    if (rows < 1 || cols < 1) {
      throw DomainError("lattice dimensions must be positive");
    }
    _neighbours.resize(static_cast<std::size_t>(rows * cols));
    auto id = [rows, cols](int r, int c) {
      r = (r % rows + rows) % rows;
      c = (c % cols + cols) % cols;
      return c * rows + r + 1;
    };
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < rows; ++r) {
        int           self = id(r, c);
        std::set<int> nb{id(r - 1, c), id(r + 1, c), id(r, c - 1), id(r, c + 1)};
        nb.erase(self);
        _neighbours[static_cast<std::size_t>(self - 1)] = {nb.begin(), nb.end()};
      }
    }
  }

  Lattice const& Lattice::standard() {
    static Lattice const lattice(2, 3);
    return lattice;
  }

  std::vector<int> const& Lattice::neighbours(int cell) const {
    if (cell < 1 || cell > cells()) {
      throw DomainError("cell " + std::to_string(cell) + " outside 1.." + std::to_string(cells()));
    }
    return _neighbours[static_cast<std::size_t>(cell - 1)];
  }

  Rational pairwise_payoff(Strategy self, Strategy other, Rational const& b) {
    if (self == Strategy::defect) {
      return other == Strategy::defect ? Rational(1) : b;
    }
    return other == Strategy::defect ? Rational(0) : Rational(3);
  }

  Rational cell_payoff(Lattice const& lattice, State x, int cell, Rational const& b) {
    Strategy self  = strategy_of(x, cell);
    Rational total = 0;
    for (int n : lattice.neighbours(cell)) {
      total += pairwise_payoff(self, strategy_of(x, n), b);
    }
    return total;
  }

  Rational cell_payoff(State x, int cell, Rational const& b) {
    return cell_payoff(Lattice::standard(), x, cell, b);
  }

  Transformation step_map(Rational const& b) {
    check_temptation(b);
    Lattice const& lattice = Lattice::standard();
    Transformation t;
    for (int s = 0; s < kStates; ++s) {
      State                        x = static_cast<State>(s);
      std::array<Rational, kCells> pay;
      for (int i = 1; i <= kCells; ++i) {
        pay[static_cast<std::size_t>(i - 1)] = cell_payoff(lattice, x, i, b);
      }
      State y = x;
      for (int i = 1; i <= kCells; ++i) {
        auto const& nb   = lattice.neighbours(i);
        Rational    best = pay[static_cast<std::size_t>(nb.front() - 1)];
        for (int n : nb) {
          best = std::max(best, pay[static_cast<std::size_t>(n - 1)]);
        }
        if (best <= pay[static_cast<std::size_t>(i - 1)]) {
          continue;
        }
        bool any_cooperator = false;
        for (int n : nb) {
          if (pay[static_cast<std::size_t>(n - 1)] == best
              && strategy_of(x, n) == Strategy::cooperate) {
            any_cooperator = true;
          }
        }
        y = with_strategy(y, i, any_cooperator ? Strategy::cooperate : Strategy::defect);
      }
      t[x] = y;
    }
    return t;
  }

  Transformation reset_map(int cell, Strategy s) {
    check_cell(cell);
    Transformation r;
    for (int x = 0; x < kStates; ++x) {
      r[static_cast<State>(x)] = with_strategy(static_cast<State>(x), cell, s);
    }
    return r;
  }

  std::vector<Rational> critical_b_values() {
    // Every cell payoff has the form k*b + m with k in 0..3 and m in 0..9;
    // step_map can only change where two such forms cross.
    std::set<Rational> candidates;
    for (int k1 = 0; k1 <= 3; ++k1) {
      for (int k2 = 0; k2 < k1; ++k2) {
        for (int m1 = 0; m1 <= 9; ++m1) {
          for (int m2 = 0; m2 <= 9; ++m2) {
            Rational b(m2 - m1, k1 - k2);
            if (b >= Rational(3)) {
              candidates.insert(b);
            }
          }
        }
      }
    }
    std::vector<Rational> sorted(candidates.begin(), candidates.end());
    std::vector<Rational> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      Rational const& b     = sorted[i];
      Rational        right = i + 1 < sorted.size() ? (b + sorted[i + 1]) / 2 : b + 1;
      Transformation  at    = step_map(b);
      bool            change = step_map(right) != at;
      if (i > 0) {
        Rational left = (sorted[i - 1] + b) / 2;
        change        = change || step_map(left) != at;
      }
      if (change) {
        out.push_back(b);
      }
    }
    return out;
  }

  void check_temptation(Rational const& b) {
    if (b < Rational(3)) {
      throw DomainError("temptation b = " + to_string(b) + " is below 3");
    }
  }

  Regime regime_of(Rational const& b) {
    check_temptation(b);
    if (b > Rational(4)) {
      return Regime::A;
    }
    if (b == Rational(4)) {
      return Regime::B;
    }
    if (b > Rational(3)) {
      return Regime::C;
    }
    return Regime::D;
  }

}  // namespace pdkr
