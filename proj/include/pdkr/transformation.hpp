#ifndef PDKR_TRANSFORMATION_HPP_
#define PDKR_TRANSFORMATION_HPP_

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace pdkr {

  inline constexpr int kCells  = 6;
  inline constexpr int kStates = 64;

  // Decimal form of the 6-bit strategy string; bit (6 - i) holds cell i.
  using State = std::uint8_t;

  // A subset of the 64 lattice states, one bit per state.
  class StateSet {
   public:
    constexpr StateSet() noexcept = default;
    constexpr explicit StateSet(std::uint64_t bits) noexcept : _bits(bits) {}
    StateSet(std::initializer_list<int> states);

    static constexpr StateSet all() noexcept {
      return StateSet(~std::uint64_t(0));
    }
    static constexpr StateSet singleton(State x) noexcept {
      return StateSet(std::uint64_t(1) << x);
    }
    static StateSet from_vector(std::vector<State> const& states);

    constexpr std::uint64_t bits() const noexcept {
      return _bits;
    }
    constexpr std::size_t size() const noexcept {
      return static_cast<std::size_t>(std::popcount(_bits));
    }
    constexpr bool empty() const noexcept {
      return _bits == 0;
    }
    constexpr bool contains(State x) const noexcept {
      return (_bits >> x) & 1U;
    }
    constexpr bool subset_of(StateSet other) const noexcept {
      return (_bits & ~other._bits) == 0;
    }
    constexpr bool proper_subset_of(StateSet other) const noexcept {
      return subset_of(other) && _bits != other._bits;
    }
    constexpr void insert(State x) noexcept {
      _bits |= std::uint64_t(1) << x;
    }
    constexpr void erase(State x) noexcept {
      _bits &= ~(std::uint64_t(1) << x);
    }
    // Smallest member; undefined on the empty set.
    constexpr State min() const noexcept {
      return static_cast<State>(std::countr_zero(_bits));
    }

    constexpr StateSet operator|(StateSet o) const noexcept {
      return StateSet(_bits | o._bits);
    }
    constexpr StateSet operator&(StateSet o) const noexcept {
      return StateSet(_bits & o._bits);
    }
    constexpr StateSet without(StateSet o) const noexcept {
      return StateSet(_bits & ~o._bits);
    }
    constexpr bool operator==(StateSet const&) const noexcept = default;

    std::vector<State> to_vector() const;
    // "{0,5,10}"
    std::string to_string() const;

    class iterator {
     public:
      using value_type        = State;
      using difference_type   = std::ptrdiff_t;
      using iterator_category = std::forward_iterator_tag;

      constexpr iterator() noexcept = default;
      constexpr explicit iterator(std::uint64_t rest) noexcept : _rest(rest) {}
      constexpr State operator*() const noexcept {
        return static_cast<State>(std::countr_zero(_rest));
      }
      constexpr iterator& operator++() noexcept {
        _rest &= _rest - 1;
        return *this;
      }
      constexpr iterator operator++(int) noexcept {
        iterator tmp = *this;
        ++*this;
        return tmp;
      }
      constexpr bool operator==(iterator const&) const noexcept = default;

     private:
      std::uint64_t _rest = 0;
    };

    constexpr iterator begin() const noexcept {
      return iterator(_bits);
    }
    constexpr iterator end() const noexcept {
      return iterator(0);
    }

   private:
    std::uint64_t _bits = 0;
  };

  // Canonical order: by size, then by the sorted member list
  // lexicographically. Between two sets of equal size the one holding the
  // smallest element of the symmetric difference comes first.
  constexpr bool canonical_less(StateSet a, StateSet b) noexcept {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    std::uint64_t diff = a.bits() ^ b.bits();
    if (diff == 0) {
      return false;
    }
    return (a.bits() & (diff & (~diff + 1))) != 0;
  }

  struct CanonicalLess {
    constexpr bool operator()(StateSet a, StateSet b) const noexcept {
      return canonical_less(a, b);
    }
  };

  std::ostream& operator<<(std::ostream& os, StateSet const& s);

  // A total map on the 64 states, stored as its image array.
  class Transformation {
   public:
    using container_type = std::array<State, kStates>;

    // Identity.
    Transformation() noexcept;
    explicit Transformation(container_type const& images) noexcept
        : _images(images) {}

    static Transformation identity() noexcept {
      return Transformation();
    }

    State operator[](State x) const noexcept {
      return _images[x];
    }
    State& operator[](State x) noexcept {
      return _images[x];
    }
    container_type const& images() const noexcept {
      return _images;
    }
    State const* data() const noexcept {
      return _images.data();
    }

    StateSet image(StateSet p = StateSet::all()) const noexcept;
    std::size_t rank() const noexcept {
      return image().size();
    }
    bool is_identity() const noexcept;

    bool operator==(Transformation const&) const noexcept = default;
    bool operator<(Transformation const& o) const noexcept {
      return _images < o._images;
    }

    std::size_t hash() const noexcept;

   private:
    container_type _images;
  };

  // h(x) = g(f(x)); f is applied first, matching left-to-right words.
  Transformation compose(Transformation const& f,
                         Transformation const& g) noexcept;

  // In-place variant used by the closure kernels.
  void compose_into(Transformation const& f,
                    Transformation const& g,
                    Transformation&       out) noexcept;

  // f^n for n >= 1 by repeated squaring.
  Transformation power(Transformation const& f, std::uint64_t n);

  inline StateSet image_set(Transformation const& f,
                            StateSet              p = StateSet::all()) noexcept {
    return f.image(p);
  }

  // True iff f maps P into P bijectively.
  bool is_permutation_on(Transformation const& f, StateSet p) noexcept;

  std::ostream& operator<<(std::ostream& os, Transformation const& f);

}  // namespace pdkr

template <>
struct std::hash<pdkr::Transformation> {
  std::size_t operator()(pdkr::Transformation const& f) const noexcept {
    return f.hash();
  }
};

template <>
struct std::hash<pdkr::StateSet> {
  std::size_t operator()(pdkr::StateSet const& s) const noexcept {
    return std::hash<std::uint64_t>()(s.bits());
  }
};

#endif  // PDKR_TRANSFORMATION_HPP_
