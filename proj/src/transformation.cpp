#include "pdkr/transformation.hpp"

#include <cstring>
#include <numeric>
#include <ostream>
#include <sstream>

namespace pdkr {

  StateSet::StateSet(std::initializer_list<int> states) {
    for (int x : states) {
      insert(static_cast<State>(x));
    }
  }

  StateSet StateSet::from_vector(std::vector<State> const& states) {
    StateSet s;
    for (State x : states) {
      s.insert(x);
    }
    return s;
  }

  std::vector<State> StateSet::to_vector() const {
    return std::vector<State>(begin(), end());
  }

  std::string StateSet::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  std::ostream& operator<<(std::ostream& os, StateSet const& s) {
    os << '{';
    bool first = true;
    for (State x : s) {
      if (!first) {
        os << ',';
      }
      os << static_cast<int>(x);
      first = false;
    }
    return os << '}';
  }

  Transformation::Transformation() noexcept {
    std::iota(_images.begin(), _images.end(), State(0));
  }

  StateSet Transformation::image(StateSet p) const noexcept {
    std::uint64_t out = 0;
    for (State x : p) {
      out |= std::uint64_t(1) << _images[x];
    }
    return StateSet(out);
  }

  bool Transformation::is_identity() const noexcept {
    for (int x = 0; x < kStates; ++x) {
      if (_images[x] != x) {
        return false;
      }
    }
    return true;
  }

  std::size_t Transformation::hash() const noexcept {
    // Mix the 64 bytes as eight words.
    std::uint64_t words[kStates / 8];
    std::memcpy(words, _images.data(), sizeof(words));
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
    }
    return static_cast<std::size_t>(h);
  }

  void compose_into(Transformation const& f,
                    Transformation const& g,
                    Transformation&       out) noexcept {
    for (int x = 0; x < kStates; ++x) {
      out[static_cast<State>(x)] = g[f[static_cast<State>(x)]];
    }
  }

  Transformation compose(Transformation const& f,
                         Transformation const& g) noexcept {
    Transformation h;
    compose_into(f, g, h);
    return h;
  }

  Transformation power(Transformation const& f, std::uint64_t n) {
    Transformation result;  // identity
    Transformation base = f;
    while (n > 0) {
      if (n & 1U) {
        result = compose(result, base);
      }
      base = compose(base, base);
      n >>= 1U;
    }
    return result;
  }

  bool is_permutation_on(Transformation const& f, StateSet p) noexcept {
    if (p.empty()) {
      return false;
    }
    StateSet img = f.image(p);
    return img == p;
  }

  std::ostream& operator<<(std::ostream& os, Transformation const& f) {
    os << '[';
    for (int x = 0; x < kStates; ++x) {
      if (x > 0) {
        os << ' ';
      }
      os << static_cast<int>(f[static_cast<State>(x)]);
    }
    return os << ']';
  }

}  // namespace pdkr
