#ifndef PDKR_PIPELINE_HPP_
#define PDKR_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "pdkr/holonomy.hpp"
#include "pdkr/pd_model.hpp"
#include "pdkr/semigroup.hpp"
#include "pdkr/skeleton.hpp"

namespace pdkr {

  struct PipelineOptions {
    ClosureBudget budget;
    int           workers = 0;
    Kernel        kernel  = Kernel::parallel;
    // Skip enumerating S; the decomposition itself only needs the generators.
    bool skip_closure = false;
    // Directory for closure caches; empty disables caching.
    std::filesystem::path cache_dir;
  };

  struct Decomposition {
    Rational                    b;
    std::vector<int>            open_cells;
    Regime                      regime = Regime::A;
    std::optional<std::size_t>  semigroup_order;
    std::optional<std::size_t>  semigroup_depth;
    Skeleton                    skeleton;
    std::vector<HolonomyLevel>  levels;
    int                         kr_bound = 0;
    double                      seconds  = 0;

    std::vector<std::pair<std::size_t, GroupId>> groups() const {
      return nontrivial_support(levels);
    }
  };

  // step map -> closure -> image system -> classes and heights -> holonomy
  // groups -> bound. ResourceErrors carry the phase that was running.
  Decomposition decompose(Rational const&         b,
                          std::vector<int> const& open_cells,
                          PipelineOptions const&  opts = {});

  // The nine open-cell configurations with 2, 3 and 4 open cells that are
  // distinct up to lattice symmetry, in table order.
  std::vector<std::vector<int>> const& table2_configurations();

  struct Table2Column {
    std::vector<int>                              open_cells;
    int                                           raw_bound     = 0;
    int                                           refined_bound = 0;
    std::vector<std::pair<std::size_t, GroupId>>  groups;
    std::optional<std::size_t>                    semigroup_order;
    std::size_t                                   image_sets = 0;
    std::size_t                                   classes    = 0;
    int                                           depth      = 0;
    double                                        seconds    = 0;
  };

  std::vector<Table2Column> table2(Rational const& b, PipelineOptions const& opts = {}, bool refine = true);

  struct RegimeInterval {
    Rational              lo;
    Rational              hi;
    bool                  lo_closed = true;
    bool                  hi_closed = true;
    Regime                regime    = Regime::A;
    Transformation        map;
    std::vector<Rational> samples;
  };

  // Splits [lo, hi] at the critical values; throws InvariantError if a
  // sampled map differs inside a piece or two neighbouring pieces agree.
  std::vector<RegimeInterval> regimes(Rational const& lo, Rational const& hi);

}  // namespace pdkr

#endif  // PDKR_PIPELINE_HPP_
