#ifndef PDKR_ANALYSIS_HPP_
#define PDKR_ANALYSIS_HPP_

#include <array>
#include <utility>
#include <vector>

#include "pdkr/transformation.hpp"
#include "pdkr/word.hpp"

namespace pdkr {

  // A permutation of the six cells; cell i of the original configuration
  // moves to cell image[i - 1].
  struct CellPermutation {
    std::array<int, kCells> image{1, 2, 3, 4, 5, 6};

    State apply(State x) const;
    bool  operator==(CellPermutation const&) const = default;
    bool  operator<(CellPermutation const& o) const {
      return image < o.image;
    }
  };

  // Symmetries of the 2x3 torus generated by the row swap, the column
  // rotation and the column reflection fixing cells 1 and 2. Order 12.
  class SymmetryGroup {
   public:
    static SymmetryGroup const& standard();

    std::vector<CellPermutation> const& elements() const noexcept {
      return _elements;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    // Orbit of x under the group.
    StateSet orbit(State x) const;

    static CellPermutation row_swap();
    static CellPermutation column_rotation();
    static CellPermutation column_reflection();

   private:
    SymmetryGroup();

    std::vector<CellPermutation> _elements;
  };

  // {x : t(x) = x}
  StateSet equilibria(Transformation const& t);

  // Symmetry orbits intersected with `states`, ordered by smallest member.
  std::vector<StateSet> iso_classes(StateSet states);

  struct NaturalSubsystem {
    Word                            word;
    Transformation                  map;
    StateSet                        carrier;  // eventual image of map
    std::vector<State>              fixed_points;
    std::vector<std::vector<State>> cycles;  // length >= 2, each starting at its minimum
  };

  NaturalSubsystem natural_subsystem(Word const& w, GeneratorSet const& gens);

  struct OrbitDiagram {
    std::vector<State>                  nodes;  // ascending
    std::vector<std::pair<State, State>> edges;  // x -> f(x), ascending by source
  };

  // Everything reachable from the seeds under f. An empty word draws no edges.
  OrbitDiagram orbit_diagram(Transformation const& f, StateSet seeds, bool draw_edges = true);
  OrbitDiagram orbit_diagram(Word const& w, GeneratorSet const& gens, StateSet seeds);

}  // namespace pdkr

#endif  // PDKR_ANALYSIS_HPP_
