#include "pdkr/semigroup.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>

#include <omp.h>

#include "pdkr/errors.hpp"

namespace pdkr {

  namespace detail {

    void TransformationIndex::reserve(std::size_t n) {
      std::size_t want = 16;
      while (want < 2 * n) {
        want <<= 1U;
      }
      if (want > _slots.size()) {
        // Rehash happens lazily through grow(); only empty tables are sized here.
        if (_count == 0) {
          _slots.assign(want, 0);
        }
      }
    }

    std::uint32_t TransformationIndex::find(Transformation const&              f,
                                            std::vector<Transformation> const& elements) const noexcept {
      if (_slots.empty()) {
        return npos;
      }
      std::size_t mask = _slots.size() - 1;
      std::size_t pos  = f.hash() & mask;
      while (true) {
        std::uint32_t slot = _slots[pos];
        if (slot == 0) {
          return npos;
        }
        if (elements[slot - 1] == f) {
          return slot - 1;
        }
        pos = (pos + 1) & mask;
      }
    }

    void TransformationIndex::insert(std::uint32_t id, std::vector<Transformation> const& elements) {
      if (2 * (_count + 1) > _slots.size()) {
        grow(elements);
      }
      std::size_t mask = _slots.size() - 1;
      std::size_t pos  = elements[id].hash() & mask;
      while (_slots[pos] != 0) {
        pos = (pos + 1) & mask;
      }
      _slots[pos] = id + 1;
      ++_count;
    }

    void TransformationIndex::grow(std::vector<Transformation> const& elements) {
      std::vector<std::uint32_t> old = std::move(_slots);
      _slots.assign(std::max<std::size_t>(16, old.size() * 2), 0);
      std::size_t mask = _slots.size() - 1;
      for (std::uint32_t slot : old) {
        if (slot == 0) {
          continue;
        }
        std::size_t pos = elements[slot - 1].hash() & mask;
        while (_slots[pos] != 0) {
          pos = (pos + 1) & mask;
        }
        _slots[pos] = slot;
      }
    }

  }  // namespace detail

  std::optional<std::size_t> Semigroup::find(Transformation const& f) const noexcept {
    std::uint32_t id = _index.find(f, _elements);
    if (id == detail::TransformationIndex::npos) {
      return std::nullopt;
    }
    return id;
  }

  std::vector<std::uint8_t> Semigroup::witness_indices(std::size_t i) const {
    std::vector<std::uint8_t> w;
    std::uint32_t             cur = static_cast<std::uint32_t>(i);
    while (cur != no_parent) {
      w.push_back(_last_gen.at(cur));
      cur = _parent[cur];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  Word Semigroup::witness(std::size_t i) const {
    return _gens.word_of(witness_indices(i));
  }

  std::size_t Semigroup::bytes() const noexcept {
    return _elements.capacity() * sizeof(Transformation) + _parent.capacity() * sizeof(std::uint32_t)
           + _last_gen.capacity() + _index.bytes();
  }

  class ClosureBuilder {
   public:
    ClosureBuilder(GeneratorSet const& gens, ClosureBudget const& budget)
        : _budget(budget), _start(std::chrono::steady_clock::now()) {
      if (gens.empty()) {
        throw DomainError("closure needs at least one generator");
      }
      if (gens.size() > 255) {
        throw DomainError("at most 255 generators are supported");
      }
      _s._gens = gens;
    }

    // Level 1: the generators themselves, first occurrence wins.
    void seed() {
      _s._level_start.push_back(0);
      for (std::size_t g = 0; g < _s._gens.size(); ++g) {
        try_insert(_s._gens.map(g), Semigroup::no_parent, static_cast<std::uint8_t>(g));
      }
      _s._level_start.push_back(_s._elements.size());
    }

    bool try_insert(Transformation const& f, std::uint32_t parent, std::uint8_t gen) {
      if (_s._index.find(f, _s._elements) != detail::TransformationIndex::npos) {
        return false;
      }
      if (_s._elements.size() >= _budget.max_elements) {
        throw ResourceError(Limit::elements,
                            "closure exceeded the element budget of " + std::to_string(_budget.max_elements),
                            _s._elements.size());
      }
      _s._elements.push_back(f);
      _s._parent.push_back(parent);
      _s._last_gen.push_back(gen);
      _s._index.insert(static_cast<std::uint32_t>(_s._elements.size() - 1), _s._elements);
      if ((_s._elements.size() & 0xFFFFU) == 0) {
        check_soft_limits();
      }
      return true;
    }

    void check_soft_limits() const {
      if (_s.bytes() > _budget.max_bytes) {
        throw ResourceError(Limit::memory,
                            "closure exceeded the memory budget of " + std::to_string(_budget.max_bytes) + " bytes",
                            _s._elements.size());
      }
      auto elapsed = std::chrono::steady_clock::now() - _start;
      if (elapsed > _budget.timeout) {
        throw ResourceError(Limit::wall_clock,
                            "closure exceeded the time budget of " + std::to_string(_budget.timeout.count()) + " s",
                            _s._elements.size());
      }
    }

    void run_serial() {
      seed();
      std::size_t const ngens = _s._gens.size();
      Transformation    product;
      while (_s._level_start.back() > _s._level_start[_s._level_start.size() - 2]) {
        std::size_t lo = _s._level_start[_s._level_start.size() - 2];
        std::size_t hi = _s._level_start.back();
        for (std::size_t i = lo; i < hi; ++i) {
          for (std::size_t g = 0; g < ngens; ++g) {
            compose_into(_s._elements[i], _s._gens.map(g), product);
            try_insert(product, static_cast<std::uint32_t>(i), static_cast<std::uint8_t>(g));
          }
        }
        check_soft_limits();
        _s._level_start.push_back(_s._elements.size());
      }
      _s._level_start.pop_back();
    }

    void run_parallel(int workers) {
      seed();
      std::size_t const           ngens = _s._gens.size();
      std::size_t const           block = std::size_t(1) << 15U;
      std::vector<Transformation> products;
      std::vector<std::uint8_t>   known;
      while (_s._level_start.back() > _s._level_start[_s._level_start.size() - 2]) {
        std::size_t lo = _s._level_start[_s._level_start.size() - 2];
        std::size_t hi = _s._level_start.back();
        for (std::size_t first = lo; first < hi; first += block) {
          std::size_t    count = std::min(block, hi - first);
          std::ptrdiff_t n     = static_cast<std::ptrdiff_t>(count * ngens);
          products.resize(static_cast<std::size_t>(n));
          known.resize(static_cast<std::size_t>(n));
          auto const& elements = _s._elements;
          auto const& index    = _s._index;
          auto const& gens     = _s._gens;
#pragma omp parallel for num_threads(workers) schedule(static)
          for (std::ptrdiff_t k = 0; k < n; ++k) {
            std::size_t u = static_cast<std::size_t>(k);
            compose_into(elements[first + u / ngens], gens.map(u % ngens), products[u]);
            known[u] = index.find(products[u], elements) != detail::TransformationIndex::npos;
          }
          // Canonical merge: products are visited in (parent, generator) order.
          for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u) {
            if (!known[u]) {
              try_insert(products[u], static_cast<std::uint32_t>(first + u / ngens),
                         static_cast<std::uint8_t>(u % ngens));
            }
          }
          check_soft_limits();
        }
        _s._level_start.push_back(_s._elements.size());
      }
      _s._level_start.pop_back();
    }

    Semigroup take() && {
      return std::move(_s);
    }

    // Used by the cache loader; elements arrive in canonical order.
    static Semigroup assemble(GeneratorSet const&           gens,
                              std::vector<Transformation>   elements,
                              std::vector<std::uint32_t>    parent,
                              std::vector<std::uint8_t>     last_gen) {
      Semigroup s;
      s._gens     = gens;
      s._elements = std::move(elements);
      s._parent   = std::move(parent);
      s._last_gen = std::move(last_gen);
      s._index.reserve(s._elements.size());
      std::vector<std::size_t> depth(s._elements.size(), 0);
      for (std::size_t i = 0; i < s._elements.size(); ++i) {
        if (s._index.find(s._elements[i], s._elements) != detail::TransformationIndex::npos) {
          throw ParseError("closure cache holds a duplicate element");
        }
        s._index.insert(static_cast<std::uint32_t>(i), s._elements);
        std::uint32_t p = s._parent[i];
        if (p != Semigroup::no_parent && p >= i) {
          throw ParseError("closure cache witness tree is not in BFS order");
        }
        if (s._last_gen[i] >= gens.size()) {
          throw ParseError("closure cache names an unknown generator");
        }
        depth[i] = p == Semigroup::no_parent ? 1 : depth[p] + 1;
        while (s._level_start.size() < depth[i]) {
          s._level_start.push_back(i);
        }
      }
      s._level_start.push_back(s._elements.size());
      return s;
    }

   private:
    Semigroup                             _s;
    ClosureBudget                         _budget;
    std::chrono::steady_clock::time_point _start;
  };

  Semigroup closure_serial(GeneratorSet const& gens, ClosureBudget const& budget) {
    ClosureBuilder builder(gens, budget);
    builder.run_serial();
    return std::move(builder).take();
  }

  Semigroup closure_parallel(GeneratorSet const& gens, ClosureBudget const& budget, int workers) {
    ClosureBuilder builder(gens, budget);
    builder.run_parallel(workers > 0 ? workers : omp_get_max_threads());
    return std::move(builder).take();
  }

  Semigroup closure(GeneratorSet const& gens, ClosureBudget const& budget, int workers) {
    if (workers == 1) {
      return closure_serial(gens, budget);
    }
    return closure_parallel(gens, budget, workers);
  }

  std::vector<StateSet> subset_action(Semigroup const& s, StateSet p) {
    std::set<StateSet, CanonicalLess> images;
    for (Transformation const& f : s.elements()) {
      images.insert(f.image(p));
    }
    return {images.begin(), images.end()};
  }

  namespace {

    constexpr char          kMagic[8]     = {'P', 'D', 'K', 'R', 'S', 'G', 'R', 'P'};
    constexpr std::uint32_t kCacheVersion = 1;

    std::uint8_t open_mask(std::vector<int> const& open_cells) {
      std::uint8_t mask = 0;
      for (int c : normalize_open_cells(open_cells)) {
        mask = static_cast<std::uint8_t>(mask | (1U << (c - 1)));
      }
      return mask;
    }

    template <typename T>
    void put(std::ofstream& out, T const& value) {
      out.write(reinterpret_cast<char const*>(&value), sizeof(T));
    }

    template <typename T>
    T get(std::ifstream& in) {
      T value{};
      if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
        throw ParseError("closure cache is truncated");
      }
      return value;
    }

  }  // namespace

  void save_closure(std::filesystem::path const& path,
                    Rational const&              b,
                    std::vector<int> const&      open_cells,
                    Semigroup const&             s) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write closure cache " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    put(out, kCacheVersion);
    put(out, static_cast<std::int64_t>(b.numerator()));
    put(out, static_cast<std::int64_t>(b.denominator()));
    put(out, open_mask(open_cells));
    put(out, static_cast<std::uint64_t>(s.size()));
    for (Transformation const& f : s.elements()) {
      out.write(reinterpret_cast<char const*>(f.data()), kStates);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      put(out, s.parent(i));
      put(out, s.last_generator(i));
    }
    if (!out) {
      throw std::runtime_error("failed writing closure cache " + path.string());
    }
  }

  Semigroup load_closure(std::filesystem::path const& path,
                         Rational const&              b,
                         std::vector<int> const&      open_cells) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw ParseError("cannot open closure cache " + path.string());
    }
    char magic[sizeof(kMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
      throw ParseError("not a closure cache: " + path.string());
    }
    if (get<std::uint32_t>(in) != kCacheVersion) {
      throw ParseError("unsupported closure cache version in " + path.string());
    }
    auto num  = get<std::int64_t>(in);
    auto den  = get<std::int64_t>(in);
    auto mask = get<std::uint8_t>(in);
    if (Rational(num, den) != b || mask != open_mask(open_cells)) {
      throw ParseError("closure cache " + path.string() + " was built for another (b, O)");
    }
    auto                        count = get<std::uint64_t>(in);
    std::vector<Transformation> elements(count);
    for (auto& f : elements) {
      Transformation::container_type images;
      if (!in.read(reinterpret_cast<char*>(images.data()), kStates)) {
        throw ParseError("closure cache is truncated");
      }
      for (State x : images) {
        if (x >= kStates) {
          throw ParseError("closure cache holds an out-of-range image");
        }
      }
      f = Transformation(images);
    }
    std::vector<std::uint32_t> parent(count);
    std::vector<std::uint8_t>  last_gen(count);
    for (std::size_t i = 0; i < count; ++i) {
      parent[i]   = get<std::uint32_t>(in);
      last_gen[i] = get<std::uint8_t>(in);
    }
    GeneratorSet gens(b, open_cells);
    Semigroup    s = ClosureBuilder::assemble(gens, std::move(elements), std::move(parent), std::move(last_gen));
    // Spot-check that the cache matches these generators.
    for (std::size_t i = 0; i < s.size(); i += std::max<std::size_t>(1, s.size() / 64)) {
      if (gens.eval_indices(s.witness_indices(i)) != s.element(i)) {
        throw ParseError("closure cache does not match the generators for this (b, O)");
      }
    }
    return s;
  }

}  // namespace pdkr
