#include "pdkr/pipeline.hpp"

#include <chrono>

#include "pdkr/errors.hpp"

namespace pdkr {

  namespace {

    std::filesystem::path cache_path(std::filesystem::path const& dir,
                                     Rational const&              b,
                                     std::vector<int> const&      open_cells) {
      std::string name = "closure_b" + std::to_string(b.numerator()) + "_" + std::to_string(b.denominator()) + "_O";
      for (int c : open_cells) {
        name += std::to_string(c);
      }
      return dir / (name + ".bin");
    }

    template <typename F>
    auto in_phase(char const* phase, F&& f) {
      try {
        return f();
      } catch (ResourceError& e) {
        if (e.phase().empty()) {
          e.set_phase(phase);
        }
        throw;
      }
    }

  }  // namespace

  Decomposition decompose(Rational const& b, std::vector<int> const& open_cells, PipelineOptions const& opts) {
    auto                   start = std::chrono::steady_clock::now();
    std::vector<int> const open  = normalize_open_cells(open_cells);
    Regime const           reg   = regime_of(b);
    GeneratorSet           gens(b, open);

    std::optional<std::size_t> order;
    std::optional<std::size_t> depth;
    if (!opts.skip_closure) {
      Semigroup s = in_phase("closure", [&] {
        if (!opts.cache_dir.empty()) {
          auto path = cache_path(opts.cache_dir, b, open);
          if (std::filesystem::exists(path)) {
            return load_closure(path, b, open);
          }
          Semigroup fresh = closure(gens, opts.budget, opts.workers);
          std::filesystem::create_directories(opts.cache_dir);
          save_closure(path, b, open, fresh);
          return fresh;
        }
        return closure(gens, opts.budget, opts.workers);
      });
      order = s.size();
      depth = s.depth();
    }

    SkeletonOptions sk_opts{opts.kernel, opts.workers};
    Skeleton        sk = in_phase("skeleton", [&] { return Skeleton(gens, StateSet::all(), sk_opts); });
    auto levels        = in_phase("holonomy", [&] { return decomposition(sk, opts.workers); });
    int  bound         = kr_upper_bound(levels);
    double secs        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return Decomposition{b, open, reg, order, depth, std::move(sk), std::move(levels), bound, secs};
  }

  std::vector<std::vector<int>> const& table2_configurations() {
    static std::vector<std::vector<int>> const configs{
        {1, 3}, {1, 4}, {1, 2}, {1, 4, 5}, {1, 3, 5}, {1, 2, 3}, {1, 2, 3, 4}, {1, 3, 4, 6}, {1, 2, 3, 5}};
    return configs;
  }

  std::vector<Table2Column> table2(Rational const& b, PipelineOptions const& opts, bool refine) {
    std::vector<Table2Column> columns;
    std::map<ConfigKey, int>  raw;
    for (auto const& open : table2_configurations()) {
      Decomposition d = decompose(b, open, opts);
      Table2Column  col;
      col.open_cells      = d.open_cells;
      col.raw_bound       = d.kr_bound;
      col.groups          = d.groups();
      col.semigroup_order = d.semigroup_order;
      col.image_sets      = d.skeleton.system().size();
      col.classes         = d.skeleton.classes().size();
      col.depth           = d.skeleton.depth();
      col.seconds         = d.seconds;
      raw.emplace(ConfigKey{b, d.open_cells}, d.kr_bound);
      columns.push_back(std::move(col));
    }
    auto refined = refine ? refine_bound_by_inclusion(raw) : raw;
    for (auto& col : columns) {
      col.refined_bound = refined.at(ConfigKey{b, col.open_cells});
    }
    return columns;
  }

  namespace {

    // Five interior points of (a, b).
    std::vector<Rational> interior_samples(Rational const& a, Rational const& b) {
      std::vector<Rational> out;
      for (int k = 1; k <= 5; ++k) {
        out.push_back(a + (b - a) * Rational(k, 6));
      }
      return out;
    }

  }  // namespace

  std::vector<RegimeInterval> regimes(Rational const& lo, Rational const& hi) {
    check_temptation(lo);
    if (hi < lo) {
      throw DomainError("empty range [" + to_string(lo) + ", " + to_string(hi) + "]");
    }
    std::vector<Rational> cuts;
    for (Rational const& c : critical_b_values()) {
      if (c >= lo && c <= hi) {
        cuts.push_back(c);
      }
    }

    std::vector<RegimeInterval> pieces;
    auto add_point = [&](Rational const& x) {
      RegimeInterval p{x, x, true, true, regime_of(x), step_map(x), {x}};
      pieces.push_back(std::move(p));
    };
    auto add_open = [&](Rational const& a, Rational const& b) {
      RegimeInterval p;
      p.lo        = a;
      p.hi        = b;
      p.lo_closed = false;
      p.hi_closed = false;
      p.samples   = interior_samples(a, b);
      p.map       = step_map(p.samples.front());
      p.regime    = regime_of(p.samples.front());
      pieces.push_back(std::move(p));
    };

    if (lo == hi) {
      add_point(lo);
    } else {
      std::vector<Rational> marks{lo};
      for (Rational const& c : cuts) {
        if (c != lo && c != hi) {
          marks.push_back(c);
        }
      }
      marks.push_back(hi);
      for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        bool const cut_lo = i > 0 || (!cuts.empty() && cuts.front() == lo);
        if (cut_lo) {
          add_point(marks[i]);
        }
        add_open(marks[i], marks[i + 1]);
        // Uncut range ends belong to the neighbouring open piece.
        if (!cut_lo) {
          pieces.back().lo_closed = true;
          pieces.back().samples.insert(pieces.back().samples.begin(), marks[i]);
        }
      }
      if (!cuts.empty() && cuts.back() == hi) {
        add_point(hi);
      } else {
        pieces.back().hi_closed = true;
        pieces.back().samples.push_back(hi);
      }
    }

    for (auto const& p : pieces) {
      for (Rational const& s : p.samples) {
        if (step_map(s) != p.map) {
          throw InvariantError("step map is not constant on the piece containing b = " + to_string(s));
        }
        if (regime_of(s) != p.regime) {
          throw InvariantError("regime label changes inside a piece at b = " + to_string(s));
        }
      }
    }
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      if (pieces[i].map == pieces[i + 1].map) {
        throw InvariantError("neighbouring regimes share a step map near b = " + to_string(pieces[i].hi));
      }
    }
    return pieces;
  }

}  // namespace pdkr
