#include "pdkr/holonomy.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>
#include <unordered_map>

#include <omp.h>

#include "pdkr/errors.hpp"

namespace pdkr {

  Permutation identity_permutation(std::size_t degree) {
    Permutation p(degree);
    std::iota(p.begin(), p.end(), std::uint8_t(0));
    return p;
  }

  Permutation compose(Permutation const& p, Permutation const& q) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[i] = q[p[i]];
    }
    return r;
  }

  bool is_identity(Permutation const& p) noexcept {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != i) {
        return false;
      }
    }
    return true;
  }

  TileSet tiles(StateSet p, ImageSystem const& sys) {
    if (p.size() < 2) {
      throw DomainError("tiles need a set with at least two states, got " + p.to_string());
    }
    std::vector<StateSet> candidates;
    for (StateSet q : sys.sets()) {
      if (q.proper_subset_of(p) && !q.empty()) {
        candidates.push_back(q);
      }
    }
    for (State x : p) {
      if (!sys.index_of(StateSet::singleton(x))) {
        candidates.push_back(StateSet::singleton(x));
      }
    }
    TileSet out{p, {}};
    for (StateSet q : candidates) {
      bool maximal = std::none_of(candidates.begin(), candidates.end(),
                                  [q](StateSet r) { return q.proper_subset_of(r); });
      if (maximal) {
        out.tiles.push_back(q);
      }
    }
    std::sort(out.tiles.begin(), out.tiles.end(), CanonicalLess());
    return out;
  }

  std::string GroupId::to_string() const {
    switch (name) {
      case GroupName::trivial:
        return "trivial";
      case GroupName::C2:
        return "C2";
      case GroupName::C3:
        return "C3";
      case GroupName::C4:
        return "C4";
      case GroupName::V4:
        return "V4";
      case GroupName::C5:
        return "C5";
      case GroupName::C6:
        return "C6";
      case GroupName::S3:
        return "S3";
      case GroupName::other:
        break;
    }
    return "other(" + std::to_string(order) + "," + (abelian ? "abelian" : "nonabelian") + ")";
  }

  namespace {

    std::size_t element_order(Permutation const& p) {
      Permutation q     = p;
      std::size_t order = 1;
      while (!is_identity(q)) {
        q = compose(q, p);
        ++order;
      }
      return order;
    }

  }  // namespace

  GroupId identify_group(std::vector<Permutation> const& group) {
    GroupId id;
    id.order = group.size();
    for (std::size_t i = 0; i < group.size() && id.abelian; ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        if (compose(group[i], group[j]) != compose(group[j], group[i])) {
          id.abelian = false;
          break;
        }
      }
    }
    switch (id.order) {
      case 1:
        id.name = GroupName::trivial;
        break;
      case 2:
        id.name = GroupName::C2;
        break;
      case 3:
        id.name = GroupName::C3;
        break;
      case 4:
        id.name = std::any_of(group.begin(), group.end(),
                              [](Permutation const& p) { return element_order(p) == 4; })
                      ? GroupName::C4
                      : GroupName::V4;
        break;
      case 5:
        id.name = GroupName::C5;
        break;
      case 6:
        id.name = id.abelian ? GroupName::C6 : GroupName::S3;
        break;
      default:
        id.name = GroupName::other;
    }
    return id;
  }

  std::vector<Permutation> generate_group(std::vector<Permutation> const& gens,
                                          std::size_t                     degree,
                                          std::size_t                     max_order) {
    std::set<Permutation>    seen{identity_permutation(degree)};
    std::vector<Permutation> queue{identity_permutation(degree)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Permutation const& g : gens) {
        Permutation next = compose(queue[head], g);
        if (seen.insert(next).second) {
          if (seen.size() > max_order) {
            throw ResourceError(Limit::elements,
                                "holonomy group exceeds " + std::to_string(max_order) + " elements",
                                seen.size());
          }
          queue.push_back(std::move(next));
        }
      }
    }
    // std::set order puts the identity first.
    return {seen.begin(), seen.end()};
  }

  namespace {

    std::uint64_t lcm_cycles(Transformation const& f, StateSet p) {
      std::uint64_t order = 1;
      StateSet      done;
      for (State x : p) {
        if (done.contains(x)) {
          continue;
        }
        std::uint64_t len = 0;
        State         y   = x;
        do {
          done.insert(y);
          y = f[y];
          ++len;
        } while (y != x);
        order = std::lcm(order, len);
      }
      return order;
    }

    bool acts_as_identity_on(Transformation const& f, StateSet p) {
      return std::all_of(p.begin(), p.end(), [&f](State x) { return f[x] == x; });
    }

    // Schreier-generator search over the strongly connected component of P
    // in the action graph of the image system.
    class PermutatorSearch {
     public:
      PermutatorSearch(std::size_t root, Skeleton const& sk)
          : _sys(sk.system()), _gens(sk.generators()), _root(root) {
        forward();
        backward();
      }

      HolonomyGroup run() {
        HolonomyGroup out;
        out.parent = _sys.set(_root);
        out.tiles  = tiles(out.parent, _sys).tiles;
        std::unordered_map<StateSet, std::uint8_t> tile_index;
        for (std::size_t i = 0; i < out.tiles.size(); ++i) {
          tile_index.emplace(out.tiles[i], static_cast<std::uint8_t>(i));
        }
        if (out.tiles.size() > 255) {
          throw DomainError("more than 255 tiles under " + out.parent.to_string());
        }

        StateSet const p = out.parent;
        for (std::uint32_t q : _scc) {
          Transformation pi = compose(_u[q], _w[q]);
          if (!is_permutation_on(pi, p)) {
            throw InvariantError("orbit round trip does not permute " + p.to_string());
          }
          std::uint64_t k = lcm_cycles(pi, p);
          _k[q]           = k;
          _v[q]           = k > 1 ? compose(_w[q], power(pi, k - 1)) : _w[q];
          if (!acts_as_identity_on(compose(_u[q], _v[q]), p)) {
            throw InvariantError("orbit return map is not inverse on " + p.to_string());
          }
        }

        // Best witness per distinct tile permutation.
        std::map<Permutation, std::vector<std::uint8_t>> best;
        for (std::uint32_t q : _scc) {
          for (std::size_t g = 0; g < _gens.size(); ++g) {
            std::uint32_t r = _sys.successor(q, g);
            if (!_in_scc[r]) {
              continue;
            }
            Transformation s = compose(compose(_u[q], _gens.map(g)), _v[r]);
            if (!is_permutation_on(s, p)) {
              throw InvariantError("Schreier generator does not permute " + p.to_string());
            }
            Permutation perm(out.tiles.size());
            for (std::size_t i = 0; i < out.tiles.size(); ++i) {
              auto it = tile_index.find(s.image(out.tiles[i]));
              if (it == tile_index.end()) {
                throw InvariantError("a permutator of " + p.to_string() + " does not map tiles to tiles");
              }
              perm[i] = it->second;
            }
            if (is_identity(perm)) {
              continue;
            }
            std::vector<std::uint8_t> word = schreier_word(q, static_cast<std::uint8_t>(g), r);
            auto it = best.find(perm);
            if (it == best.end() || shortlex_less(_gens.word_of(word), _gens.word_of(it->second))) {
              best[perm] = std::move(word);
            }
          }
        }

        std::vector<std::pair<std::vector<std::uint8_t>, Permutation>> ranked;
        for (auto& [perm, word] : best) {
          ranked.emplace_back(word, perm);
        }
        std::sort(ranked.begin(), ranked.end(), [this](auto const& a, auto const& b) {
          return shortlex_less(_gens.word_of(a.first), _gens.word_of(b.first));
        });

        std::size_t const     degree = out.tiles.size();
        std::set<Permutation> group{identity_permutation(degree)};
        for (auto const& [word, perm] : ranked) {
          if (group.count(perm) != 0) {
            continue;
          }
          Transformation s = _gens.eval_indices(word);
          if (s.image(p) != p) {
            throw InvariantError("holonomy witness " + to_string(_gens.word_of(word)) + " does not stabilise "
                                 + p.to_string());
          }
          out.generators.push_back(perm);
          out.generator_witnesses.push_back(_gens.word_of(word));
          auto closed = generate_group(out.generators, degree);
          group       = {closed.begin(), closed.end()};
        }
        out.elements.assign(group.begin(), group.end());
        out.id = identify_group(out.elements);
        return out;
      }

     private:
      void forward() {
        std::size_t n = _sys.size();
        _fparent.assign(n, {UINT32_MAX, 0});
        _seen.assign(n, 0);
        _u.assign(n, Transformation());
        _seen[_root] = 1;
        _order.push_back(static_cast<std::uint32_t>(_root));
        for (std::size_t head = 0; head < _order.size(); ++head) {
          std::uint32_t q = _order[head];
          for (std::size_t g = 0; g < _gens.size(); ++g) {
            std::uint32_t r = _sys.successor(q, g);
            if (!_seen[r]) {
              _seen[r]    = 1;
              _fparent[r] = {q, static_cast<std::uint8_t>(g)};
              _u[r]       = compose(_u[q], _gens.map(g));
              _order.push_back(r);
            }
          }
        }
      }

      void backward() {
        std::size_t n = _sys.size();
        std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint8_t>>> preds;
        for (std::uint32_t q : _order) {
          for (std::size_t g = 0; g < _gens.size(); ++g) {
            preds[_sys.successor(q, g)].emplace_back(q, static_cast<std::uint8_t>(g));
          }
        }
        _bnext.assign(n, {UINT32_MAX, 0});
        _in_scc.assign(n, 0);
        _w.assign(n, Transformation());
        _k.assign(n, 1);
        _v.assign(n, Transformation());
        std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(_root)};
        _in_scc[_root] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          std::uint32_t r  = queue[head];
          auto          it = preds.find(r);
          if (it == preds.end()) {
            continue;
          }
          for (auto [q, g] : it->second) {
            if (!_in_scc[q]) {
              _in_scc[q] = 1;
              _bnext[q]  = {r, g};
              _w[q]      = compose(_gens.map(g), _w[r]);
              queue.push_back(q);
            }
          }
        }
        // Reached from P (every pred came from the forward orbit) and reaching P.
        for (std::uint32_t q : _order) {
          if (_in_scc[q]) {
            _scc.push_back(q);
          }
        }
      }

      std::vector<std::uint8_t> u_word(std::uint32_t q) const {
        std::vector<std::uint8_t> w;
        while (q != _root) {
          w.push_back(_fparent[q].second);
          q = _fparent[q].first;
        }
        std::reverse(w.begin(), w.end());
        return w;
      }

      std::vector<std::uint8_t> w_word(std::uint32_t q) const {
        std::vector<std::uint8_t> w;
        while (q != _root) {
          w.push_back(_bnext[q].second);
          q = _bnext[q].first;
        }
        return w;
      }

      // u_q g w_r (u_r w_r)^(k_r - 1)
      std::vector<std::uint8_t> schreier_word(std::uint32_t q, std::uint8_t g, std::uint32_t r) const {
        std::vector<std::uint8_t> word = u_word(q);
        word.push_back(g);
        std::vector<std::uint8_t> wr = w_word(r);
        word.insert(word.end(), wr.begin(), wr.end());
        if (_k[r] > 1) {
          std::vector<std::uint8_t> loop = u_word(r);
          loop.insert(loop.end(), wr.begin(), wr.end());
          for (std::uint64_t i = 1; i < _k[r]; ++i) {
            word.insert(word.end(), loop.begin(), loop.end());
          }
        }
        return word;
      }

      ImageSystem const&  _sys;
      GeneratorSet const& _gens;
      std::size_t         _root;

      std::vector<std::uint32_t>                        _order;
      std::vector<std::uint8_t>                         _seen;
      std::vector<std::pair<std::uint32_t, std::uint8_t>> _fparent;
      std::vector<std::pair<std::uint32_t, std::uint8_t>> _bnext;
      std::vector<std::uint8_t>                         _in_scc;
      std::vector<std::uint32_t>                        _scc;
      std::vector<Transformation>                       _u;
      std::vector<Transformation>                       _w;
      std::vector<Transformation>                       _v;
      std::vector<std::uint64_t>                        _k;
    };

  }  // namespace

  HolonomyGroup holonomy_group(std::size_t set_index, Skeleton const& sk) {
    if (set_index >= sk.system().size()) {
      throw DomainError("set index outside the image system");
    }
    if (sk.system().set(set_index).size() < 2) {
      throw DomainError("holonomy needs a set with at least two states");
    }
    return PermutatorSearch(set_index, sk).run();
  }

  HolonomyGroup holonomy_group(StateSet p, Skeleton const& sk) {
    auto idx = sk.system().index_of(p);
    if (!idx) {
      throw DomainError(p.to_string() + " is not in the image system");
    }
    return holonomy_group(*idx, sk);
  }

  bool HolonomyLevel::nontrivial() const noexcept {
    return std::any_of(entries.begin(), entries.end(), [](HolonomyEntry const& e) { return !e.group.trivial(); });
  }

  std::vector<HolonomyLevel> decomposition(Skeleton const& sk, int workers) {
    auto const&              classes = sk.classes();
    std::vector<std::size_t> todo;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (sk.system().set(classes[c].representative).size() >= 2) {
        todo.push_back(c);
      }
    }
    std::vector<HolonomyEntry>      entries(todo.size());
    std::vector<std::exception_ptr> errors(todo.size());
    int                             threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(todo.size()); ++k) {
      std::size_t i = static_cast<std::size_t>(k);
      try {
        std::size_t   c   = todo[i];
        HolonomyGroup grp = holonomy_group(classes[c].representative, sk);
        entries[i]        = HolonomyEntry{c, grp.parent, grp.degree(), grp.id, grp.generator_witnesses};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto const& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }

    std::vector<HolonomyLevel> levels;
    for (HolonomyEntry& e : entries) {
      int h = classes[e.class_index].height;
      if (levels.empty() || levels.back().height != h) {
        levels.push_back(HolonomyLevel{h, {}});
      }
      levels.back().entries.push_back(std::move(e));
    }
    return levels;
  }

  int kr_upper_bound(std::vector<HolonomyLevel> const& levels) {
    return static_cast<int>(
        std::count_if(levels.begin(), levels.end(), [](HolonomyLevel const& l) { return l.nontrivial(); }));
  }

  std::vector<std::pair<std::size_t, GroupId>> nontrivial_support(std::vector<HolonomyLevel> const& levels) {
    std::vector<std::pair<std::size_t, GroupId>> out;
    for (auto const& level : levels) {
      for (auto const& e : level.entries) {
        if (e.group.trivial()) {
          continue;
        }
        std::pair<std::size_t, GroupId> key{e.degree, e.group};
        if (std::find(out.begin(), out.end(), key) == out.end()) {
          out.push_back(key);
        }
      }
    }
    // Largest degree first, then by group order descending: "(3,S3) (4,C2)..."
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      if (a.second.order != b.second.order) {
        return a.second.order > b.second.order;
      }
      return a.first > b.first;
    });
    return out;
  }

  std::string to_string(std::pair<std::size_t, GroupId> const& entry) {
    return "(" + std::to_string(entry.first) + "," + entry.second.to_string() + ")";
  }

  std::map<ConfigKey, int> refine_bound_by_inclusion(std::map<ConfigKey, int> const& results) {
    std::map<ConfigKey, int> out;
    for (auto const& [key, bound] : results) {
      int refined = bound;
      for (auto const& [other, other_bound] : results) {
        if (other.b == key.b
            && std::includes(other.open_cells.begin(), other.open_cells.end(), key.open_cells.begin(),
                             key.open_cells.end())) {
          refined = std::min(refined, other_bound);
        }
      }
      out.emplace(key, refined);
    }
    return out;
  }

}  // namespace pdkr
