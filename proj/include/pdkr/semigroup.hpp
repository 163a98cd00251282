#ifndef PDKR_SEMIGROUP_HPP_
#define PDKR_SEMIGROUP_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "pdkr/transformation.hpp"
#include "pdkr/word.hpp"

namespace pdkr {

  struct ClosureBudget {
    std::size_t          max_elements = 10'000'000;
    std::chrono::seconds timeout{30 * 60};
    std::size_t          max_bytes = std::size_t(8) << 30U;
  };

  namespace detail {

    // Open-addressing set of indices into an external element vector.
    class TransformationIndex {
     public:
      static constexpr std::uint32_t npos = UINT32_MAX;

      void reserve(std::size_t n);

      std::uint32_t find(Transformation const&              f,
                         std::vector<Transformation> const& elements) const noexcept;
      // Caller guarantees f is absent and elements[id] == f.
      void insert(std::uint32_t id, std::vector<Transformation> const& elements);

      std::size_t bytes() const noexcept {
        return _slots.size() * sizeof(std::uint32_t);
      }

     private:
      void grow(std::vector<Transformation> const& elements);

      std::vector<std::uint32_t> _slots;  // 0 = empty, otherwise id + 1
      std::size_t                _count = 0;
    };

  }  // namespace detail

  // S = <gens>, enumerated breadth first by right multiplication. Element i
  // was discovered as element parent(i) times generator last_generator(i),
  // so witnesses are shortlex-minimal and the element order is fixed by the
  // generators alone.
  class Semigroup {
   public:
    static constexpr std::uint32_t no_parent = UINT32_MAX;

    Semigroup() = default;

    GeneratorSet const& generators() const noexcept {
      return _gens;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    Transformation const& element(std::size_t i) const {
      return _elements.at(i);
    }
    std::vector<Transformation> const& elements() const noexcept {
      return _elements;
    }
    std::uint32_t parent(std::size_t i) const {
      return _parent.at(i);
    }
    std::uint8_t last_generator(std::size_t i) const {
      return _last_gen.at(i);
    }
    // Number of BFS levels, i.e. the longest witness length.
    std::size_t depth() const noexcept {
      return _level_start.empty() ? 0 : _level_start.size() - 1;
    }

    std::optional<std::size_t> find(Transformation const& f) const noexcept;
    bool                       contains(Transformation const& f) const noexcept {
      return find(f).has_value();
    }

    std::vector<std::uint8_t> witness_indices(std::size_t i) const;
    Word                      witness(std::size_t i) const;

    std::size_t bytes() const noexcept;

   private:
    friend class ClosureBuilder;

    GeneratorSet                 _gens;
    std::vector<Transformation>  _elements;
    std::vector<std::uint32_t>   _parent;
    std::vector<std::uint8_t>    _last_gen;
    std::vector<std::size_t>     _level_start;
    detail::TransformationIndex  _index;
  };

  // Plain serial BFS; the reference the parallel kernel is tested against.
  Semigroup closure_serial(GeneratorSet const& gens, ClosureBudget const& budget = {});

  // BFS where each level's products and membership probes run on `workers`
  // OpenMP threads; insertion stays in canonical order, so the result is
  // identical to closure_serial.
  Semigroup closure_parallel(GeneratorSet const&  gens,
                             ClosureBudget const& budget  = {},
                             int                  workers = 0);

  // workers == 1 selects the serial kernel; 0 means the OpenMP default.
  Semigroup closure(GeneratorSet const& gens, ClosureBudget const& budget = {}, int workers = 0);

  // { P.s : s in S }, canonically ordered.
  std::vector<StateSet> subset_action(Semigroup const& s, StateSet p);

  // Binary cache: versioned header keyed by (b, O), element count, the
  // 64-byte image arrays in canonical order, then the witness tree.
  void      save_closure(std::filesystem::path const& path,
                         Rational const&              b,
                         std::vector<int> const&      open_cells,
                         Semigroup const&             s);
  // Throws ParseError on a malformed file or a (b, O) key mismatch.
  Semigroup load_closure(std::filesystem::path const& path,
                         Rational const&              b,
                         std::vector<int> const&      open_cells);

}  // namespace pdkr

#endif  // PDKR_SEMIGROUP_HPP_
