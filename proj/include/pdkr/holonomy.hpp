#ifndef PDKR_HOLONOMY_HPP_
#define PDKR_HOLONOMY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pdkr/pd_model.hpp"
#include "pdkr/skeleton.hpp"
#include "pdkr/word.hpp"

namespace pdkr {

  // Image of point i is perm[i].
  using Permutation = std::vector<std::uint8_t>;

  Permutation identity_permutation(std::size_t degree);
  // p then q.
  Permutation compose(Permutation const& p, Permutation const& q);
  bool        is_identity(Permutation const& p) noexcept;

  // Maximal proper subsets of P among the system's sets (singletons
  // included), canonically ordered.
  struct TileSet {
    StateSet              parent;
    std::vector<StateSet> tiles;
  };

  TileSet tiles(StateSet p, ImageSystem const& sys);

  enum class GroupName { trivial, C2, C3, C4, V4, C5, C6, S3, other };

  struct GroupId {
    std::size_t order   = 1;
    bool        abelian = true;
    GroupName   name    = GroupName::trivial;

    bool operator==(GroupId const&) const = default;
    bool trivial() const noexcept {
      return order == 1;
    }
    // "C2", "S3", "other(8,nonabelian)"
    std::string to_string() const;
  };

  // Classifies a closed set of permutations by order, commutativity and
  // element orders; only order <= 6 is named.
  GroupId identify_group(std::vector<Permutation> const& group);

  // Closure of the generators under composition; throws ResourceError past
  // max_order elements.
  std::vector<Permutation> generate_group(std::vector<Permutation> const& gens,
                                          std::size_t                     degree,
                                          std::size_t                     max_order = 1'000'000);

  struct HolonomyGroup {
    StateSet                 parent;
    std::vector<StateSet>    tiles;
    std::vector<Permutation> elements;     // sorted, identity first
    std::vector<Permutation> generators;   // irredundant, shortest witnesses first
    std::vector<Word>        generator_witnesses;
    GroupId                  id;

    std::size_t degree() const noexcept {
      return tiles.size();
    }
  };

  // Permutation group induced on the tiles of P by the elements of S that
  // map P onto itself. Built from Schreier generators over the strongly
  // connected part of P's orbit, so S itself is never enumerated.
  HolonomyGroup holonomy_group(std::size_t set_index, Skeleton const& sk);
  HolonomyGroup holonomy_group(StateSet p, Skeleton const& sk);

  struct HolonomyEntry {
    std::size_t       class_index = 0;
    StateSet          representative;
    std::size_t       degree = 0;
    GroupId           group;
    std::vector<Word> witnesses;
  };

  struct HolonomyLevel {
    int                        height = 0;
    std::vector<HolonomyEntry> entries;

    bool nontrivial() const noexcept;
  };

  // One entry per non-singleton class representative, grouped by height
  // (ascending). Per-class groups are computed on `workers` threads.
  std::vector<HolonomyLevel> decomposition(Skeleton const& sk, int workers = 0);

  // Number of heights holding at least one nontrivial group.
  int kr_upper_bound(std::vector<HolonomyLevel> const& levels);

  // Distinct nontrivial (degree, group) pairs, e.g. {(3,C2),(2,C2)}.
  std::vector<std::pair<std::size_t, GroupId>> nontrivial_support(std::vector<HolonomyLevel> const& levels);

  // "(3,C2)"
  std::string to_string(std::pair<std::size_t, GroupId> const& entry);

  struct ConfigKey {
    Rational         b;
    std::vector<int> open_cells;  // sorted

    bool operator<(ConfigKey const& o) const {
      if (b != o.b) {
        return b < o.b;
      }
      return open_cells < o.open_cells;
    }
    bool operator==(ConfigKey const&) const = default;
  };

  // bound(O) := min over computed O' containing O at the same b. A
  // subsemigroup's complexity never exceeds that of the semigroup
  // containing it.
  std::map<ConfigKey, int> refine_bound_by_inclusion(std::map<ConfigKey, int> const& results);

}  // namespace pdkr

#endif  // PDKR_HOLONOMY_HPP_
