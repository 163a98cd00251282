// pdkr: holonomy decomposition of the spatial prisoner's dilemma on the
// 2x3 torus.
//
// Exit codes: 0 success, 2 usage error, 3 resource budget exceeded,
// 4 internal invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pdkr/analysis.hpp"
#include "pdkr/errors.hpp"
#include "pdkr/pipeline.hpp"
#include "pdkr/report.hpp"

namespace {

  using namespace pdkr;
  using report::Json;

  constexpr int kExitUsage     = 2;
  constexpr int kExitResource  = 3;
  constexpr int kExitInvariant = 4;

  struct Common {
    std::string format = "json";
    std::string out;
  };

  struct Config {
    std::string b = "7/2";
    std::string open;
    std::string exclude;
    std::string seeds;
    std::string word;
    std::string lo = "3";
    std::string hi = "6";
    std::string cache_dir;
    std::size_t max_elements = ClosureBudget{}.max_elements;
    long        timeout      = ClosureBudget{}.timeout.count();
    int         workers      = 0;
    bool        no_closure   = false;
    bool        no_refine    = false;
    bool        all_entries  = false;
    bool        timing       = false;
  };

  std::vector<std::string> split_list(std::string const& text) {
    std::vector<std::string> out;
    std::string              item;
    std::istringstream       in(text);
    while (std::getline(in, item, ',')) {
      auto first = item.find_first_not_of(" \t");
      auto last  = item.find_last_not_of(" \t");
      if (first == std::string::npos) {
        throw ParseError("empty item in list '" + text + "'");
      }
      out.push_back(item.substr(first, last - first + 1));
    }
    return out;
  }

  std::vector<int> parse_cells(std::string const& text) {
    std::vector<int> cells;
    if (text.empty()) {
      return cells;
    }
    for (auto const& item : split_list(text)) {
      if (item.size() != 1 || item[0] < '1' || item[0] > '6') {
        throw ParseError("invalid cell '" + item + "' (expected 1..6)");
      }
      cells.push_back(item[0] - '0');
    }
    return normalize_open_cells(cells);
  }

  StateSet parse_states(std::string const& text) {
    StateSet s;
    if (text.empty()) {
      return s;
    }
    for (auto const& item : split_list(text)) {
      s.insert(parse_state(item));
    }
    return s;
  }

  PipelineOptions pipeline_options(Config const& cfg) {
    PipelineOptions opts;
    opts.budget.max_elements = cfg.max_elements;
    opts.budget.timeout      = std::chrono::seconds(cfg.timeout);
    opts.workers             = cfg.workers;
    opts.skip_closure        = cfg.no_closure;
    opts.cache_dir           = cfg.cache_dir;
    return opts;
  }

  void emit(Common const& common, std::string const& text) {
    if (common.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(common.out);
    if (!out) {
      throw ParseError("cannot write " + common.out);
    }
    out << text;
  }

  void require_format(Common const& common, std::initializer_list<char const*> allowed, char const* command) {
    for (char const* f : allowed) {
      if (common.format == f) {
        return;
      }
    }
    throw ParseError(std::string("format '") + common.format + "' is not available for " + command);
  }

  void run_regimes(Common const& common, Config const& cfg) {
    require_format(common, {"json", "text"}, "regimes");
    Rational lo     = parse_rational(cfg.lo);
    Rational hi     = parse_rational(cfg.hi);
    auto     pieces = regimes(lo, hi);
    emit(common, common.format == "text" ? report::regimes_text(pieces) : report::dump(report::regimes(pieces, lo, hi)));
  }

  void run_decompose(Common const& common, Config const& cfg) {
    require_format(common, {"json", "text"}, "decompose");
    Decomposition d = decompose(parse_rational(cfg.b), parse_cells(cfg.open), pipeline_options(cfg));
    if (common.format == "text") {
      emit(common, report::decomposition_text(d));
      return;
    }
    Json j = report::decomposition(d, cfg.all_entries);
    if (cfg.timing) {
      j["timing"]["seconds"] = d.seconds;
    }
    emit(common, report::dump(j));
  }

  void run_table2(Common const& common, Config const& cfg) {
    require_format(common, {"json", "text"}, "table2");
    Rational b    = parse_rational(cfg.b);
    auto     cols = table2(b, pipeline_options(cfg), !cfg.no_refine);
    if (common.format == "text") {
      emit(common, report::table2_text(cols, b, !cfg.no_refine));
      return;
    }
    Json j = report::table2(cols, b, !cfg.no_refine);
    if (cfg.timing) {
      Json secs = Json::array();
      for (auto const& c : cols) {
        secs.push_back(c.seconds);
      }
      j["timing"]["seconds"] = secs;
    }
    emit(common, report::dump(j));
  }

  void run_chain(Common const& common, Config const& cfg) {
    require_format(common, {"json", "dot"}, "chain");
    Rational b       = parse_rational(cfg.b);
    StateSet exclude = parse_states(cfg.exclude);
    auto     nodes   = subduction_chain(step_map(b), StateSet::all().without(exclude));
    emit(common, common.format == "dot" ? report::chain_dot(nodes) : report::dump(report::chain(nodes, b, exclude)));
  }

  void run_orbits(Common const& common, Config const& cfg) {
    require_format(common, {"json", "dot"}, "orbits");
    Rational         b    = parse_rational(cfg.b);
    std::vector<int> open = parse_cells(cfg.open);
    GeneratorSet     gens(b, open);
    Word             w = parse_word(cfg.word);
    if (w.empty()) {
      throw ParseError("--word must name at least one generator");
    }
    NaturalSubsystem ns      = natural_subsystem(w, gens);
    StateSet         seeds   = cfg.seeds.empty() ? ns.carrier : parse_states(cfg.seeds);
    OrbitDiagram     diagram = orbit_diagram(w, gens, seeds);
    emit(common, common.format == "dot" ? report::orbits_dot(diagram)
                                        : report::dump(report::orbits(ns, diagram, b, open)));
  }

  void run_equilibria(Common const& common, Config const& cfg) {
    require_format(common, {"json", "text"}, "equilibria");
    Rational b       = parse_rational(cfg.b);
    StateSet fixed   = equilibria(step_map(b));
    auto     classes = iso_classes(fixed);
    emit(common, common.format == "text" ? report::equilibria_text(b, fixed, classes)
                                         : report::dump(report::equilibria(b, fixed, classes)));
  }

  void add_common(CLI::App* app, Common& common) {
    app->add_option("--format", common.format, "Output format: json, text or dot (per command)");
    app->add_option("--out", common.out, "Write output to PATH instead of stdout");
  }

  void add_budget(CLI::App* app, Config& cfg) {
    app->add_option("--max-elements", cfg.max_elements, "Closure element budget");
    app->add_option("--timeout", cfg.timeout, "Closure wall-clock budget in seconds");
    app->add_option("--workers", cfg.workers, "OpenMP threads (0 = runtime default, 1 = serial kernels)");
    app->add_flag("--no-closure", cfg.no_closure, "Do not enumerate the semigroup (order is reported as null)");
    app->add_option("--cache-dir", cfg.cache_dir, "Directory for binary closure caches");
    app->add_flag("--timing", cfg.timing, "Add wall-clock timing to the JSON report");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy decomposition of the spatial prisoner's dilemma on a 2x3 torus"};
  app.require_subcommand(1);
  Common common;
  Config cfg;

  auto* regimes_cmd = app.add_subcommand("regimes", "Partition a range of b into regimes of constant step map");
  regimes_cmd->add_option("--lo", cfg.lo, "Lower end of the b range (>= 3)");
  regimes_cmd->add_option("--hi", cfg.hi, "Upper end of the b range");
  add_common(regimes_cmd, common);

  auto* decompose_cmd = app.add_subcommand("decompose", "Holonomy decomposition for one (b, open cells)");
  decompose_cmd->add_option("--b", cfg.b, "Temptation to defect, p/q or decimal");
  decompose_cmd->add_option("--open", cfg.open, "Open cells, e.g. 1,2,3");
  decompose_cmd->add_flag("--all-entries", cfg.all_entries, "List trivial holonomy entries too");
  add_budget(decompose_cmd, cfg);
  add_common(decompose_cmd, common);

  auto* table2_cmd = app.add_subcommand("table2", "Bounds and groups for the nine 2-4 open-cell configurations");
  table2_cmd->add_option("--b", cfg.b, "Temptation to defect");
  table2_cmd->add_flag("--no-refine", cfg.no_refine, "Report raw bounds without superset refinement");
  add_budget(table2_cmd, cfg);
  add_common(table2_cmd, common);

  auto* chain_cmd = app.add_subcommand("chain", "Subduction chain X, X.t, X.t^2, ... of the step map");
  chain_cmd->add_option("--b", cfg.b, "Temptation to defect");
  chain_cmd->add_option("--exclude", cfg.exclude, "States left out of X, e.g. 63");
  add_common(chain_cmd, common);

  auto* orbits_cmd = app.add_subcommand("orbits", "Natural subsystem and orbit diagram of a word");
  orbits_cmd->add_option("--b", cfg.b, "Temptation to defect");
  orbits_cmd->add_option("--open", cfg.open, "Open cells");
  orbits_cmd->add_option("--word", cfg.word, "Generator word, e.g. \"d2 c1 t\"")->required();
  orbits_cmd->add_option("--seeds", cfg.seeds, "Start states (default: the natural subsystem)");
  add_common(orbits_cmd, common);

  auto* eq_cmd = app.add_subcommand("equilibria", "Fixed points of the step map up to lattice symmetry");
  eq_cmd->add_option("--b", cfg.b, "Temptation to defect");
  add_common(eq_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*regimes_cmd) {
      run_regimes(common, cfg);
    } else if (*decompose_cmd) {
      run_decompose(common, cfg);
    } else if (*table2_cmd) {
      run_table2(common, cfg);
    } else if (*chain_cmd) {
      run_chain(common, cfg);
    } else if (*orbits_cmd) {
      run_orbits(common, cfg);
    } else if (*eq_cmd) {
      run_equilibria(common, cfg);
    }
  } catch (ParseError const& e) {
    std::cerr << "pdkr: " << e.what() << "\n";
    return kExitUsage;
  } catch (DomainError const& e) {
    std::cerr << "pdkr: " << e.what() << "\n";
    return kExitUsage;
  } catch (ResourceError const& e) {
    Json diag;
    diag["error"]   = "resource_budget_exceeded";
    diag["limit"]   = to_string(e.limit());
    diag["phase"]   = e.phase().empty() ? "unknown" : e.phase();
    diag["reached"] = e.reached();
    diag["message"] = e.what();
    std::cerr << diag.dump(2) << "\n";
    return kExitResource;
  } catch (InvariantError const& e) {
    std::cerr << "pdkr: internal invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (std::exception const& e) {
    std::cerr << "pdkr: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
