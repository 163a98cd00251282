#ifndef PDKR_SKELETON_HPP_
#define PDKR_SKELETON_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pdkr/semigroup.hpp"
#include "pdkr/transformation.hpp"
#include "pdkr/word.hpp"

namespace pdkr {

  // The base set X, every image X.s, and the singletons of every state that
  // occurs in them; canonically ordered. Closed under the generators, so the
  // action on it is a table of set indices.
  class ImageSystem {
   public:
    ImageSystem() = default;

    static ImageSystem build(GeneratorSet const& gens, StateSet base = StateSet::all());
    static ImageSystem build(Semigroup const& s, StateSet base = StateSet::all()) {
      return build(s.generators(), base);
    }

    std::size_t size() const noexcept {
      return _sets.size();
    }
    StateSet set(std::size_t i) const {
      return _sets.at(i);
    }
    std::vector<StateSet> const& sets() const noexcept {
      return _sets;
    }
    StateSet base() const noexcept {
      return _base;
    }
    std::size_t base_index() const noexcept {
      return _base_index;
    }
    std::size_t generator_count() const noexcept {
      return _ngens;
    }
    std::optional<std::size_t> index_of(StateSet p) const noexcept;

    // Index of set(i) . generator g.
    std::uint32_t successor(std::size_t i, std::size_t g) const noexcept {
      return _succ[i * _ngens + g];
    }

   private:
    std::vector<StateSet>                   _sets;
    std::unordered_map<StateSet, std::size_t> _index;
    std::vector<std::uint32_t>              _succ;
    std::size_t                             _ngens      = 0;
    StateSet                                _base;
    std::size_t                             _base_index = 0;
  };

  // Square bit matrix; row q holds every p with set(p) subducting set(q).
  class BitMatrix {
   public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : _n(n), _words((n + 63) / 64), _bits(_n * _words, 0) {}

    std::size_t size() const noexcept {
      return _n;
    }
    bool test(std::size_t row, std::size_t col) const noexcept {
      return (_bits[row * _words + col / 64] >> (col % 64)) & 1U;
    }
    void set(std::size_t row, std::size_t col) noexcept {
      _bits[row * _words + col / 64] |= std::uint64_t(1) << (col % 64);
    }
    std::uint64_t* row(std::size_t r) noexcept {
      return _bits.data() + r * _words;
    }
    std::uint64_t const* row(std::size_t r) const noexcept {
      return _bits.data() + r * _words;
    }
    std::size_t words() const noexcept {
      return _words;
    }
    bool operator==(BitMatrix const&) const = default;

   private:
    std::size_t                _n     = 0;
    std::size_t                _words = 0;
    std::vector<std::uint64_t> _bits;
  };

  enum class Kernel { serial, parallel };

  // Row q: OR over the orbit {Q} u {Q.s} of the sets contained in each
  // orbit member. The serial kernel is the reference for the OpenMP one.
  BitMatrix subduction_matrix(ImageSystem const& sys, Kernel kernel = Kernel::parallel, int workers = 0);

  struct SubductionClass {
    std::vector<std::size_t> members;  // system indices, canonical order
    std::size_t              representative = 0;
    int                      height         = 0;
  };

  struct SkeletonOptions {
    Kernel kernel  = Kernel::parallel;
    int    workers = 0;
  };

  // Image system, subduction preorder, its classes and their heights.
  // Height 0 is every singleton class; any other class sits one above the
  // highest class strictly below it.
  class Skeleton {
   public:
    Skeleton(GeneratorSet gens, StateSet base = StateSet::all(), SkeletonOptions opts = {});
    explicit Skeleton(Semigroup const& s, StateSet base = StateSet::all(), SkeletonOptions opts = {})
        : Skeleton(s.generators(), base, opts) {}

    GeneratorSet const& generators() const noexcept {
      return _gens;
    }
    ImageSystem const& system() const noexcept {
      return _sys;
    }
    BitMatrix const& matrix() const noexcept {
      return _sub;
    }

    // set(p) subducts set(q): set(p) is inside set(q).s for s in S or s = id.
    bool subducts(std::size_t p, std::size_t q) const noexcept {
      return _sub.test(q, p);
    }
    bool strictly_below(std::size_t p, std::size_t q) const noexcept {
      return subducts(p, q) && !subducts(q, p);
    }

    // Ordered by height, then by representative.
    std::vector<SubductionClass> const& classes() const noexcept {
      return _classes;
    }
    std::size_t class_of(std::size_t set_index) const {
      return _class_of.at(set_index);
    }
    int height_of(std::size_t set_index) const {
      return _classes[class_of(set_index)].height;
    }
    // Height of the base set's class.
    int depth() const noexcept {
      return _classes.empty() ? 0 : _classes[_class_of[_sys.base_index()]].height;
    }

   private:
    GeneratorSet                 _gens;
    ImageSystem                  _sys;
    BitMatrix                    _sub;
    std::vector<SubductionClass> _classes;
    std::vector<std::size_t>     _class_of;
  };

  // Direct query for arbitrary sets: BFS over Q's orbit with inclusion tests.
  bool subducts(StateSet p, StateSet q, GeneratorSet const& gens);
  bool subducts(StateSet p, StateSet q, Semigroup const& s);

  // start, start.t, start.t^2, ... until the image stops changing.
  std::vector<StateSet> subduction_chain(Transformation const& t, StateSet start);

}  // namespace pdkr

#endif  // PDKR_SKELETON_HPP_
