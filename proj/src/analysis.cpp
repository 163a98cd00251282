#include "pdkr/analysis.hpp"

#include <algorithm>
#include <set>

#include "pdkr/pd_model.hpp"

namespace pdkr {

  State CellPermutation::apply(State x) const {
    State y = 0;
    for (int i = 1; i <= kCells; ++i) {
      y = with_strategy(y, image[static_cast<std::size_t>(i - 1)], strategy_of(x, i));
    }
    return y;
  }

  CellPermutation SymmetryGroup::row_swap() {
    return CellPermutation{{2, 1, 4, 3, 6, 5}};
  }

  CellPermutation SymmetryGroup::column_rotation() {
    return CellPermutation{{3, 4, 5, 6, 1, 2}};
  }

  CellPermutation SymmetryGroup::column_reflection() {
    return CellPermutation{{1, 2, 5, 6, 3, 4}};
  }

  SymmetryGroup::SymmetryGroup() {
    std::vector<CellPermutation> gens{row_swap(), column_rotation(), column_reflection()};
    std::set<CellPermutation>    seen{CellPermutation{}};
    std::vector<CellPermutation> queue{CellPermutation{}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto const& g : gens) {
        CellPermutation next;
        for (std::size_t i = 0; i < kCells; ++i) {
          next.image[i] = g.image[static_cast<std::size_t>(queue[head].image[i] - 1)];
        }
        if (seen.insert(next).second) {
          queue.push_back(next);
        }
      }
    }
    _elements.assign(seen.begin(), seen.end());
  }

  SymmetryGroup const& SymmetryGroup::standard() {
    static SymmetryGroup const group;
    return group;
  }

  StateSet SymmetryGroup::orbit(State x) const {
    StateSet out;
    for (auto const& sigma : _elements) {
      out.insert(sigma.apply(x));
    }
    return out;
  }

  StateSet equilibria(Transformation const& t) {
    StateSet out;
    for (int x = 0; x < kStates; ++x) {
      if (t[static_cast<State>(x)] == x) {
        out.insert(static_cast<State>(x));
      }
    }
    return out;
  }

  std::vector<StateSet> iso_classes(StateSet states) {
    std::vector<StateSet> out;
    StateSet              left = states;
    while (!left.empty()) {
      StateSet cls = SymmetryGroup::standard().orbit(left.min()) & states;
      out.push_back(cls);
      left = left.without(cls);
    }
    return out;
  }

  NaturalSubsystem natural_subsystem(Word const& w, GeneratorSet const& gens) {
    NaturalSubsystem out;
    out.word    = w;
    out.map     = gens.eval(w);
    out.carrier = power(out.map, kStates).image();
    StateSet seen;
    for (State x : out.carrier) {
      if (seen.contains(x)) {
        continue;
      }
      std::vector<State> cycle;
      State              y = x;
      do {
        cycle.push_back(y);
        seen.insert(y);
        y = out.map[y];
      } while (y != x);
      if (cycle.size() == 1) {
        out.fixed_points.push_back(x);
      } else {
        out.cycles.push_back(std::move(cycle));
      }
    }
    return out;
  }

  OrbitDiagram orbit_diagram(Transformation const& f, StateSet seeds, bool draw_edges) {
    StateSet reached = seeds;
    StateSet frontier = seeds;
    while (!frontier.empty()) {
      StateSet next = f.image(frontier).without(reached);
      reached       = reached | next;
      frontier      = next;
    }
    OrbitDiagram out;
    out.nodes = reached.to_vector();
    if (draw_edges) {
      for (State x : reached) {
        out.edges.emplace_back(x, f[x]);
      }
    }
    return out;
  }

  OrbitDiagram orbit_diagram(Word const& w, GeneratorSet const& gens, StateSet seeds) {
    return orbit_diagram(gens.eval(w), seeds, !w.empty());
  }

}  // namespace pdkr
