// Acceptance suite: one PASS/FAIL line per criterion, followed by detail
// lines for anything that did not match. Exit status is 0 only when every
// selected criterion passes. Pass criterion numbers to run a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "compare.hpp"
#include "pdkr/analysis.hpp"
#include "pdkr/errors.hpp"
#include "pdkr/pipeline.hpp"

using namespace pdkr;

namespace {

  struct Outcome {
    bool                     pass = true;
    std::vector<std::string> notes;

    void expect(bool ok, std::string const& what) {
      if (!ok) {
        pass = false;
        notes.push_back(what);
      }
    }
  };

  struct Criterion {
    int                      id;
    char const*              name;
    double                   budget_seconds;
    std::function<Outcome()> run;
  };

  std::vector<Rational> const kRepresentatives{Rational(3), Rational(7, 2), Rational(4), Rational(5)};

  std::string join(std::vector<std::string> const& items) {
    std::string out;
    for (auto const& s : items) {
      out += (out.empty() ? "" : " ") + s;
    }
    return out.empty() ? "---" : out;
  }

  // 1
  Outcome regime_partition() {
    Outcome o;
    auto    pieces = regimes(Rational(3), Rational(6));
    o.expect(pieces.size() == 4, "expected 4 regimes, got " + std::to_string(pieces.size()));
    if (pieces.size() != 4) {
      return o;
    }
    std::string labels;
    for (auto const& p : pieces) {
      labels += to_char(p.regime);
    }
    o.expect(labels == "DCBA", "regime order " + labels);
    o.expect(pieces[0].lo == Rational(3) && pieces[0].hi == Rational(3), "D is not the point b = 3");
    o.expect(pieces[1].lo == Rational(3) && pieces[1].hi == Rational(4) && !pieces[1].lo_closed
                 && !pieces[1].hi_closed,
             "C is not the open interval (3, 4)");
    o.expect(pieces[2].lo == Rational(4) && pieces[2].hi == Rational(4), "B is not the point b = 4");
    o.expect(pieces[3].lo == Rational(4) && pieces[3].hi == Rational(6) && !pieces[3].lo_closed,
             "A is not (4, 6]");
    for (auto const& p : pieces) {
      std::size_t interior = 0;
      for (Rational const& s : p.samples) {
        interior += (s > p.lo && s < p.hi) ? 1 : 0;
        o.expect(step_map(s) == p.map, "map differs inside regime at b = " + to_string(s));
      }
      if (p.lo != p.hi) {
        o.expect(interior >= 5, std::string("fewer than 5 interior samples in regime ") + to_char(p.regime));
      }
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (std::size_t k = i + 1; k < pieces.size(); ++k) {
        o.expect(pieces[i].map != pieces[k].map, std::string("regimes ") + to_char(pieces[i].regime) + " and "
                                                     + to_char(pieces[k].regime) + " share a step map");
      }
    }
    return o;
  }

  // 2
  Outcome regime_a_attractor() {
    Outcome        o;
    Transformation t = step_map(Rational(5));
    for (int x = 0; x < 63; ++x) {
      State s = static_cast<State>(x);
      o.expect(t[t[s]] == 0, "t^2(" + std::to_string(x) + ") = " + std::to_string(t[t[s]]));
    }
    o.expect(t[63] == 63, "t(63) != 63");
    return o;
  }

  // 3
  Outcome subduction_chains() {
    Outcome  o;
    StateSet no63 = StateSet::all().without(StateSet{63});
    struct Case {
      Rational              b;
      StateSet              start;
      std::vector<StateSet> expected;
    };
    std::vector<Case> cases{
        {Rational(5), no63, {no63, StateSet{0, 1, 2, 4, 5, 8, 10, 16, 17, 20, 32, 34, 40}, StateSet{0}}},
        {Rational(4),
         no63,
         {no63, StateSet{0, 5, 10, 17, 20, 21, 23, 29, 34, 40, 42, 43, 46, 53, 58},
          StateSet{0, 21, 23, 29, 42, 43, 46, 53, 58}}},
        {Rational(7, 2),
         StateSet::all(),
         {StateSet::all(), StateSet{0, 5, 10, 17, 20, 23, 29, 34, 40, 43, 46, 53, 58, 63},
          StateSet{0, 23, 29, 43, 46, 53, 58, 63}}},
        {Rational(3), StateSet::all(), {StateSet::all(), StateSet{0, 23, 29, 31, 43, 46, 47, 53, 55, 58, 59, 61, 62, 63}}},
    };
    for (auto const& c : cases) {
      auto got = subduction_chain(step_map(c.b), c.start);
      if (got != c.expected) {
        std::string s;
        for (StateSet n : got) {
          s += n.to_string() + " ";
        }
        o.expect(false, "b = " + to_string(c.b) + ": got " + s);
      }
    }
    return o;
  }

  // 4
  Outcome equilibrium_classes() {
    Outcome o;
    auto    c4 = iso_classes(equilibria(step_map(Rational(4))));
    std::set<std::uint64_t> got4;
    for (StateSet c : c4) {
      got4.insert(c.bits());
    }
    std::set<std::uint64_t> want4{StateSet{0}.bits(), StateSet{63}.bits(), StateSet{21, 42}.bits(),
                                  StateSet{23, 29, 43, 46, 53, 58}.bits()};
    o.expect(got4 == want4, "b = 4 classes differ");
    auto c3 = iso_classes(equilibria(step_map(Rational(3))));
    std::set<std::uint64_t> got3;
    for (StateSet c : c3) {
      got3.insert(c.bits());
    }
    o.expect(got3.count(StateSet{31, 47, 55, 59, 61, 62}.bits()) == 1, "b = 3 lacks the class [31]");
    std::set<std::uint64_t> new3;
    for (auto x : got3) {
      if (!got4.count(x)) {
        new3.insert(x);
      }
    }
    o.expect(new3 == std::set<std::uint64_t>{StateSet{31, 47, 55, 59, 61, 62}.bits()},
             "b = 3 classes are not the b = 4 classes plus [31] (less [21])");
    return o;
  }

  // 5
  Outcome open_cell_table() {
    Outcome o;
    std::vector<int> const want_bounds{0, 0, 2, 0, 2, 4, 4, 4, 7};
    std::vector<std::vector<std::string>> const want_groups{
        {}, {}, {"(3,C2)", "(2,C2)"}, {}, {"(2,C2)"}, {"(4,C2)", "(3,C2)", "(2,C2)"},
        {"(4,C2)", "(3,C2)", "(2,C2)"}, {"(4,C2)", "(3,C2)", "(2,C2)"}, {"(3,S3)", "(4,C2)", "(3,C2)", "(2,C2)"}};
    std::vector<Table2Column> cols;
    try {
      cols = table2(Rational(7, 2));
    } catch (ResourceError const& e) {
      o.expect(false, std::string("resource limit '") + to_string(e.limit()) + "' reached in phase " + e.phase()
                          + " at " + std::to_string(e.reached()));
      return o;
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      auto const& c = cols[i];
      std::vector<std::string> groups;
      for (auto const& g : c.groups) {
        groups.push_back(to_string(g));
      }
      std::string cells;
      for (int x : c.open_cells) {
        cells += (cells.empty() ? "" : ",") + std::to_string(x);
      }
      std::ostringstream line;
      line << "O={" << cells << "} bound " << c.raw_bound;
      if (c.refined_bound != c.raw_bound) {
        line << "->" << c.refined_bound;
      }
      line << "  groups " << join(groups) << "  |S| "
           << (c.semigroup_order ? std::to_string(*c.semigroup_order) : "-") << "  " << std::fixed
           << std::setprecision(1) << c.seconds << "s";
      std::printf("       %s\n", line.str().c_str());
      o.expect(c.refined_bound == want_bounds[i], "O={" + cells + "}: bound " + std::to_string(c.refined_bound)
                                                      + ", expected " + std::to_string(want_bounds[i]));
      std::set<std::string> got(groups.begin(), groups.end());
      std::set<std::string> want(want_groups[i].begin(), want_groups[i].end());
      o.expect(got == want, "O={" + cells + "}: groups " + join(groups) + ", expected " + join(want_groups[i]));
      o.expect(c.seconds <= 1800, "O={" + cells + "} exceeded 30 minutes");
    }
    o.expect(cols.size() == 9 && cols[5].raw_bound == 6, "O={1,2,3} raw bound is not 6");
    return o;
  }

  // 6
  Outcome pool_of_reversibility() {
    Outcome          o;
    GeneratorSet     gens(Rational(7, 2), {1, 2});
    NaturalSubsystem ns = natural_subsystem(parse_word("d2 c1 t"), gens);
    o.expect(ns.cycles.size() == 1 && ns.cycles[0] == std::vector<State>{10, 63}, "cycle structure is not (10 63)");
    auto fixes = [&](State x) {
      return std::find(ns.fixed_points.begin(), ns.fixed_points.end(), x) != ns.fixed_points.end();
    };
    o.expect(fixes(0), "0 is not fixed");
    o.expect(fixes(43), "43 is not fixed");
    Decomposition d     = decompose(Rational(7, 2), {1, 2});
    bool          found = false;
    for (auto const& [deg, g] : d.groups()) {
      found = found || (deg == 3 && g.name == GroupName::C2);
    }
    o.expect(found, "no degree-3 C2 holonomy group");
    return o;
  }

  // 7
  Outcome regime_ab_trivial() {
    Outcome o;
    for (Rational const& b : {Rational(5), Rational(4)}) {
      Decomposition d = decompose(b, {1, 2});
      o.expect(d.kr_bound == 0, "b = " + to_string(b) + ": bound " + std::to_string(d.kr_bound));
      o.expect(d.groups().empty(), "b = " + to_string(b) + ": nontrivial groups present");
    }
    return o;
  }

  // 8
  Outcome property_suites() {
    Outcome o;
    for (Rational const& b : kRepresentatives) {
      std::string    at = " at b = " + to_string(b);
      Transformation t  = step_map(b);

      std::size_t checks = 0;
      bool        equivariant = true;
      for (auto const& p : SymmetryGroup::standard().elements()) {
        for (int x = 0; x < kStates; ++x) {
          State s = static_cast<State>(x);
          equivariant = equivariant && t[p.apply(s)] == p.apply(t[s]);
          ++checks;
        }
      }
      o.expect(equivariant && checks == 64 * 12, "(a) equivariance" + at);

      bool resets = true;
      for (int i = 1; i <= 6; ++i) {
        auto ci = reset_map(i, Strategy::cooperate);
        auto di = reset_map(i, Strategy::defect);
        resets  = resets && compose(ci, ci) == ci && compose(di, di) == di && compose(ci, di) == di
                 && compose(di, ci) == ci;
        for (int j = 1; j <= 6; ++j) {
          if (j != i) {
            for (auto s : {Strategy::cooperate, Strategy::defect}) {
              auto rj = reset_map(j, s);
              resets  = resets && compose(ci, rj) == compose(rj, ci) && compose(di, rj) == compose(rj, di);
            }
          }
        }
      }
      o.expect(resets, "(b) reset algebra" + at);

      Skeleton    sk(GeneratorSet(b, {1, 2}));
      auto const& sys = sk.system();
      std::size_t n   = sys.size();
      bool        preorder = true;
      for (std::size_t p = 0; p < n && preorder; ++p) {
        preorder = sk.subducts(p, p);
        for (std::size_t q = 0; q < n && preorder; ++q) {
          if (sys.set(p).subset_of(sys.set(q)) && !sk.subducts(p, q)) {
            preorder = false;
          }
          if (sk.subducts(p, q)) {
            for (std::size_t r = 0; r < n; ++r) {
              if (sk.subducts(q, r) && !sk.subducts(p, r)) {
                preorder = false;
              }
            }
          }
        }
      }
      o.expect(preorder, "(c) subduction preorder / inclusion" + at);

      bool same_group = true;
      for (auto const& cl : sk.classes()) {
        if (sys.set(cl.representative).size() < 2) {
          continue;
        }
        GroupId rep = holonomy_group(cl.representative, sk).id;
        for (std::size_t m : cl.members) {
          same_group = same_group && holonomy_group(m, sk).id == rep;
        }
      }
      o.expect(same_group, "(d) class members with different groups" + at);

      GeneratorSet gens(b, {1, 2});
      Semigroup    a = closure(gens, {}, 1);
      Semigroup    c = closure(gens, {}, 4);
      bool         same = a.elements() == c.elements();
      for (std::size_t i = 0; same && i < a.size(); ++i) {
        same = a.witness_indices(i) == c.witness_indices(i);
      }
      o.expect(same, "(e) closure differs between 1 and 4 workers" + at);
    }
    return o;
  }

  // 9
  Outcome oracle_equivalence() {
    Outcome o;
    for (auto const& open : std::vector<std::vector<int>>{{1}, {1, 2}}) {
      for (auto const& d : naive::differences(Rational(7, 2), open)) {
        o.expect(false, "O size " + std::to_string(open.size()) + ": " + d);
      }
    }
    return o;
  }

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> const criteria{
      {1, "regime partition of [3,6]", 1, regime_partition},
      {2, "regime A defection attractor", 1, regime_a_attractor},
      {3, "subduction chains of <t>", 4, subduction_chains},
      {4, "equilibrium classes at b=4 and b=3", 1, equilibrium_classes},
      {5, "open-cell table at b=7/2", 9 * 1800, open_cell_table},
      {6, "pool of reversibility of d2 c1 t", 300, pool_of_reversibility},
      {7, "regimes A and B are trivial for O={1,2}", 300, regime_ab_trivial},
      {8, "property suites on b in {3,7/2,4,5}", 600, property_suites},
      {9, "brute-force oracle equivalence", 600, oracle_equivalence},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::atoi(argv[i]));
  }

  int failed = 0;
  for (auto const& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) {
      continue;
    }
    auto    start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (std::exception const& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.expect(secs <= c.budget_seconds, "took " + std::to_string(secs) + "s, budget "
                                             + std::to_string(c.budget_seconds) + "s");
    std::printf("[%s] %d  %-44s %8.2fs\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs);
    for (auto const& note : out.notes) {
      std::printf("       - %s\n", note.c_str());
    }
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
