#include "pdkr/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <functional>
#include <unordered_set>

#include <omp.h>

#include "pdkr/errors.hpp"

namespace pdkr {

  ImageSystem ImageSystem::build(GeneratorSet const& gens, StateSet base) {
    if (base.empty()) {
      throw DomainError("image system needs a non-empty base set");
    }
    ImageSystem sys;
    sys._base  = base;
    sys._ngens = gens.size();

    std::unordered_set<StateSet> seen{base};
    std::vector<StateSet>        queue{base};
    StateSet                     support = base;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Transformation const& g : gens.maps()) {
        StateSet img = g.image(queue[head]);
        if (seen.insert(img).second) {
          queue.push_back(img);
          support = support | img;
        }
      }
    }
    for (State x : support) {
      seen.insert(StateSet::singleton(x));
    }
    sys._sets.assign(seen.begin(), seen.end());
    std::sort(sys._sets.begin(), sys._sets.end(), CanonicalLess());
    sys._index.reserve(sys._sets.size());
    for (std::size_t i = 0; i < sys._sets.size(); ++i) {
      sys._index.emplace(sys._sets[i], i);
    }
    sys._base_index = sys._index.at(base);

    sys._succ.resize(sys._sets.size() * sys._ngens);
    for (std::size_t i = 0; i < sys._sets.size(); ++i) {
      for (std::size_t g = 0; g < sys._ngens; ++g) {
        auto it = sys._index.find(gens.map(g).image(sys._sets[i]));
        if (it == sys._index.end()) {
          throw InvariantError("image system is not closed under the generators");
        }
        sys._succ[i * sys._ngens + g] = static_cast<std::uint32_t>(it->second);
      }
    }
    return sys;
  }

  std::optional<std::size_t> ImageSystem::index_of(StateSet p) const noexcept {
    auto it = _index.find(p);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  namespace {

    // down.row(r) = { p : set(p) is a subset of set(r) }
    BitMatrix containment(ImageSystem const& sys) {
      std::size_t n = sys.size();
      BitMatrix   down(n);
      for (std::size_t r = 0; r < n; ++r) {
        StateSet big = sys.set(r);
        // Canonical order sorts by size, so subsets never come after r.
        for (std::size_t p = 0; p <= r; ++p) {
          if (sys.set(p).subset_of(big)) {
            down.set(r, p);
          }
        }
      }
      return down;
    }

    void fill_row(ImageSystem const&        sys,
                  BitMatrix const&          down,
                  std::size_t               q,
                  std::uint64_t*            out,
                  std::vector<std::uint8_t>& mark,
                  std::vector<std::uint32_t>& queue) {
      std::size_t words = down.words();
      std::fill(mark.begin(), mark.end(), 0);
      queue.clear();
      queue.push_back(static_cast<std::uint32_t>(q));
      mark[q] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t        r   = queue[head];
        std::uint64_t const* src = down.row(r);
        for (std::size_t w = 0; w < words; ++w) {
          out[w] |= src[w];
        }
        for (std::size_t g = 0; g < sys.generator_count(); ++g) {
          std::uint32_t next = sys.successor(r, g);
          if (!mark[next]) {
            mark[next] = 1;
            queue.push_back(next);
          }
        }
      }
    }

  }  // namespace

  BitMatrix subduction_matrix(ImageSystem const& sys, Kernel kernel, int workers) {
    std::size_t n    = sys.size();
    BitMatrix   down = containment(sys);
    BitMatrix   sub(n);
    if (kernel == Kernel::serial) {
      std::vector<std::uint8_t>  mark(n);
      std::vector<std::uint32_t> queue;
      for (std::size_t q = 0; q < n; ++q) {
        fill_row(sys, down, q, sub.row(q), mark, queue);
      }
      return sub;
    }
    int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
      std::vector<std::uint8_t>  mark(n);
      std::vector<std::uint32_t> queue;
#pragma omp for schedule(dynamic, 16)
      for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(n); ++q) {
        fill_row(sys, down, static_cast<std::size_t>(q), sub.row(static_cast<std::size_t>(q)), mark, queue);
      }
    }
    return sub;
  }

  Skeleton::Skeleton(GeneratorSet gens, StateSet base, SkeletonOptions opts)
      : _gens(std::move(gens)),
        _sys(ImageSystem::build(_gens, base)),
        _sub(subduction_matrix(_sys, opts.kernel, opts.workers)) {
    std::size_t const        n = _sys.size();
    constexpr std::size_t    unassigned = SIZE_MAX;
    std::vector<std::size_t> cls(n, unassigned);
    std::vector<SubductionClass> raw;
    for (std::size_t i = 0; i < n; ++i) {
      if (cls[i] != unassigned) {
        continue;
      }
      SubductionClass c;
      c.representative = i;
      for (std::size_t j = i; j < n; ++j) {
        if (cls[j] == unassigned && subducts(i, j) && subducts(j, i)) {
          cls[j] = raw.size();
          c.members.push_back(j);
        }
      }
      raw.push_back(std::move(c));
    }

    // Heights by memoised descent; every step goes strictly down, so the
    // recursion depth is bounded by the height of the base set.
    std::vector<int>                    height(raw.size(), -1);
    std::function<int(std::size_t)> h = [&](std::size_t c) -> int {
      if (height[c] >= 0) {
        return height[c];
      }
      std::size_t rep  = raw[c].representative;
      int         best = 0;
      if (_sys.set(rep).size() > 1) {
        for (std::size_t d = 0; d < raw.size(); ++d) {
          if (d != c && strictly_below(raw[d].representative, rep)) {
            best = std::max(best, h(d) + 1);
          }
        }
      }
      height[c] = best;
      return best;
    };
    for (std::size_t c = 0; c < raw.size(); ++c) {
      raw[c].height = h(c);
    }

    std::vector<std::size_t> order(raw.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
      order[c] = c;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return raw[a].height < raw[b].height;
    });
    _class_of.assign(n, 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      _classes.push_back(std::move(raw[order[k]]));
      for (std::size_t m : _classes.back().members) {
        _class_of[m] = k;
      }
    }
  }

  bool subducts(StateSet p, StateSet q, GeneratorSet const& gens) {
    std::unordered_set<StateSet> seen{q};
    std::vector<StateSet>        queue{q};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      if (p.subset_of(queue[head])) {
        return true;
      }
      for (Transformation const& g : gens.maps()) {
        StateSet img = g.image(queue[head]);
        if (img.size() >= p.size() && seen.insert(img).second) {
          queue.push_back(img);
        }
      }
    }
    return false;
  }

  bool subducts(StateSet p, StateSet q, Semigroup const& s) {
    return subducts(p, q, s.generators());
  }

  std::vector<StateSet> subduction_chain(Transformation const& t, StateSet start) {
    std::vector<StateSet> chain{start};
    std::unordered_set<StateSet> seen{start};
    StateSet cur = start;
    for (int k = 0; k <= kStates; ++k) {
      StateSet next = t.image(cur);
      if (!seen.insert(next).second) {
        break;
      }
      chain.push_back(next);
      cur = next;
    }
    return chain;
  }

}  // namespace pdkr
