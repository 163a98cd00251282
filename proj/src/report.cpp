#include "pdkr/report.hpp"

#include <iomanip>
#include <sstream>

namespace pdkr::report {

  namespace {

    std::string cells_string(std::vector<int> const& cells) {
      std::string out = "{";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out += (i ? "," : "") + std::to_string(cells[i]);
      }
      return out + "}";
    }

    std::string interval_string(RegimeInterval const& p) {
      if (p.lo == p.hi) {
        return "b = " + to_string(p.lo);
      }
      return std::string(p.lo_closed ? "[" : "(") + to_string(p.lo) + ", " + to_string(p.hi)
             + (p.hi_closed ? "]" : ")");
    }

    Json group_list(std::vector<std::pair<std::size_t, GroupId>> const& groups) {
      Json out = Json::array();
      for (auto const& g : groups) {
        out.push_back(to_string(g));
      }
      return out;
    }

    std::string group_line(std::vector<std::pair<std::size_t, GroupId>> const& groups) {
      if (groups.empty()) {
        return "---";
      }
      std::string out;
      for (auto const& g : groups) {
        out += (out.empty() ? "" : " ") + to_string(g);
      }
      return out;
    }

  }  // namespace

  Json header(std::string const& command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"]           = kToolName;
    j["tool_version"]   = kToolVersion;
    j["command"]        = command;
    return j;
  }

  Json to_json(StateSet s) {
    Json out = Json::array();
    for (State x : s) {
      out.push_back(static_cast<int>(x));
    }
    return out;
  }

  Json to_json(GroupId const& g) {
    Json j;
    j["name"]    = g.to_string();
    j["order"]   = g.order;
    j["abelian"] = g.abelian;
    return j;
  }

  Json decomposition(Decomposition const& d, bool all_entries) {
    Json j            = header("decompose");
    j["config"]["b"]  = to_string(d.b);
    j["config"]["open_cells"] = d.open_cells;
    j["regime"]       = std::string(1, to_char(d.regime));
    j["semigroup"]["order"] = d.semigroup_order ? Json(*d.semigroup_order) : Json(nullptr);
    j["semigroup"]["depth"] = d.semigroup_depth ? Json(*d.semigroup_depth) : Json(nullptr);
    Skeleton const& sk      = d.skeleton;
    j["image_system"]["sets"]    = sk.system().size();
    j["image_system"]["classes"] = sk.classes().size();
    j["image_system"]["height"]  = sk.depth();
    j["kr_bound"]["raw"]         = d.kr_bound;
    j["groups"]                  = group_list(d.groups());
    Json levels                  = Json::array();
    for (auto const& level : d.levels) {
      if (!all_entries && !level.nontrivial()) {
        continue;
      }
      Json lj;
      lj["height"]  = level.height;
      lj["entries"] = Json::array();
      for (auto const& e : level.entries) {
        if (!all_entries && e.group.trivial()) {
          continue;
        }
        Json ej;
        ej["representative"] = to_json(e.representative);
        ej["degree"]         = e.degree;
        ej["group"]          = to_json(e.group);
        ej["members"]        = sk.classes()[e.class_index].members.size();
        Json words           = Json::array();
        for (auto const& w : e.witnesses) {
          words.push_back(to_string(w));
        }
        ej["witnesses"] = words;
        lj["entries"].push_back(ej);
      }
      levels.push_back(lj);
    }
    j["levels"] = levels;
    Transformation t    = step_map(d.b);
    StateSet       fixed = pdkr::equilibria(t);
    Json           classes = Json::array();
    for (StateSet c : iso_classes(fixed)) {
      classes.push_back(to_json(c));
    }
    j["equilibria"]["states"]  = to_json(fixed);
    j["equilibria"]["classes"] = classes;
    return j;
  }

  std::string decomposition_text(Decomposition const& d) {
    std::ostringstream os;
    os << "b = " << to_string(d.b) << " (regime " << to_char(d.regime) << "), open cells "
       << cells_string(d.open_cells) << "\n";
    if (d.semigroup_order) {
      os << "semigroup order: " << *d.semigroup_order << "\n";
    }
    os << "image sets: " << d.skeleton.system().size() << ", subduction classes: " << d.skeleton.classes().size()
       << ", height of X: " << d.skeleton.depth() << "\n";
    for (auto const& level : d.levels) {
      if (!level.nontrivial()) {
        continue;
      }
      os << "  height " << level.height << ":";
      for (auto const& e : level.entries) {
        if (!e.group.trivial()) {
          os << " " << to_string(std::pair{e.degree, e.group});
        }
      }
      os << "\n";
    }
    os << "groups: " << group_line(d.groups()) << "\n";
    os << "KR complexity upper bound: " << d.kr_bound << "\n";
    return os.str();
  }

  Json table2(std::vector<Table2Column> const& cols, Rational const& b, bool refine) {
    Json j                   = header("table2");
    j["config"]["b"]         = to_string(b);
    j["config"]["refine"]    = refine;
    Json columns             = Json::array();
    for (auto const& c : cols) {
      Json cj;
      cj["open_cells"]    = c.open_cells;
      cj["kr_bound"]      = c.refined_bound;
      cj["kr_bound_raw"]  = c.raw_bound;
      cj["groups"]        = group_list(c.groups);
      cj["semigroup_order"] = c.semigroup_order ? Json(*c.semigroup_order) : Json(nullptr);
      cj["image_sets"]    = c.image_sets;
      cj["classes"]       = c.classes;
      cj["height"]        = c.depth;
      columns.push_back(cj);
    }
    j["columns"] = columns;
    return j;
  }

  std::string table2_text(std::vector<Table2Column> const& cols, Rational const& b, bool refine) {
    std::ostringstream os;
    os << "b = " << to_string(b) << (refine ? "" : " (refinement disabled)") << "\n";
    os << std::left << std::setw(12) << "open cells" << std::setw(10) << "KR bound"
       << "groups\n";
    for (auto const& c : cols) {
      std::string bound = std::to_string(c.refined_bound);
      if (c.refined_bound != c.raw_bound) {
        bound = std::to_string(c.raw_bound) + " -> " + bound;
      }
      os << std::left << std::setw(12) << cells_string(c.open_cells) << std::setw(10) << bound
         << group_line(c.groups) << "\n";
    }
    return os.str();
  }

  Json regimes(std::vector<RegimeInterval> const& pieces, Rational const& lo, Rational const& hi) {
    Json j              = header("regimes");
    j["config"]["lo"]   = to_string(lo);
    j["config"]["hi"]   = to_string(hi);
    Json breaks         = Json::array();
    for (auto const& p : pieces) {
      if (p.lo == p.hi && pieces.size() > 1) {
        breaks.push_back(to_string(p.lo));
      }
    }
    j["breakpoints"] = breaks;
    Json list        = Json::array();
    for (auto const& p : pieces) {
      Json pj;
      pj["regime"]    = std::string(1, to_char(p.regime));
      pj["lo"]        = to_string(p.lo);
      pj["hi"]        = to_string(p.hi);
      pj["lo_closed"] = p.lo_closed;
      pj["hi_closed"] = p.hi_closed;
      Json samples    = Json::array();
      for (auto const& s : p.samples) {
        samples.push_back(to_string(s));
      }
      pj["samples"]     = samples;
      std::vector<int> images(p.map.images().begin(), p.map.images().end());
      pj["step_map"]    = images;
      pj["equilibria"]  = to_json(pdkr::equilibria(p.map));
      list.push_back(pj);
    }
    j["regimes"] = list;
    return j;
  }

  std::string regimes_text(std::vector<RegimeInterval> const& pieces) {
    std::ostringstream os;
    for (auto const& p : pieces) {
      os << to_char(p.regime) << "  " << interval_string(p) << "  equilibria " << pdkr::equilibria(p.map)
         << "\n";
    }
    return os.str();
  }

  Json chain(std::vector<StateSet> const& nodes, Rational const& b, StateSet exclude) {
    Json j               = header("chain");
    j["config"]["b"]     = to_string(b);
    j["config"]["exclude"] = to_json(exclude);
    j["regime"]          = std::string(1, to_char(regime_of(b)));
    Json list            = Json::array();
    for (StateSet s : nodes) {
      list.push_back(to_json(s));
    }
    j["chain"] = list;
    return j;
  }

  std::string chain_dot(std::vector<StateSet> const& nodes) {
    std::ostringstream os;
    os << "digraph chain {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      os << "  n" << i << " [label=\"" << nodes[i] << "\"];\n";
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      os << "  n" << i << " -> n" << i + 1 << ";\n";
    }
    os << "}\n";
    return os.str();
  }

  Json orbits(NaturalSubsystem const& ns, OrbitDiagram const& diagram, Rational const& b,
              std::vector<int> const& open_cells) {
    Json j                    = header("orbits");
    j["config"]["b"]          = to_string(b);
    j["config"]["open_cells"] = open_cells;
    j["config"]["word"]       = to_string(ns.word);
    j["carrier"]              = to_json(ns.carrier);
    Json fixed                = Json::array();
    for (State x : ns.fixed_points) {
      fixed.push_back(static_cast<int>(x));
    }
    j["fixed_points"] = fixed;
    Json cycles       = Json::array();
    for (auto const& c : ns.cycles) {
      Json cj = Json::array();
      for (State x : c) {
        cj.push_back(static_cast<int>(x));
      }
      cycles.push_back(cj);
    }
    j["cycles"]       = cycles;
    j["permutation"]  = !ns.cycles.empty();
    Json nodes        = Json::array();
    for (State x : diagram.nodes) {
      Json nj;
      nj["state"]  = static_cast<int>(x);
      nj["binary"] = to_binary(x);
      nodes.push_back(nj);
    }
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (auto [from, to] : diagram.edges) {
      edges.push_back(Json::array({static_cast<int>(from), static_cast<int>(to)}));
    }
    j["edges"] = edges;
    return j;
  }

  std::string orbits_dot(OrbitDiagram const& diagram) {
    std::ostringstream os;
    os << "digraph orbits {\n";
    for (State x : diagram.nodes) {
      os << "  s" << int(x) << " [label=\"" << int(x) << " (" << to_binary(x) << ")\"];\n";
    }
    for (auto [from, to] : diagram.edges) {
      os << "  s" << int(from) << " -> s" << int(to) << ";\n";
    }
    os << "}\n";
    return os.str();
  }

  Json equilibria(Rational const& b, StateSet fixed, std::vector<StateSet> const& classes) {
    Json j             = header("equilibria");
    j["config"]["b"]   = to_string(b);
    j["regime"]        = std::string(1, to_char(regime_of(b)));
    j["equilibria"]    = to_json(fixed);
    Json list          = Json::array();
    for (StateSet c : classes) {
      Json cj;
      cj["representative"] = static_cast<int>(c.min());
      cj["members"]        = to_json(c);
      Json bin             = Json::array();
      for (State x : c) {
        bin.push_back(to_binary(x));
      }
      cj["binary"] = bin;
      list.push_back(cj);
    }
    j["classes"] = list;
    return j;
  }

  std::string equilibria_text(Rational const& b, StateSet fixed, std::vector<StateSet> const& classes) {
    std::ostringstream os;
    os << "b = " << to_string(b) << " (regime " << to_char(regime_of(b)) << "): " << fixed.size()
       << " equilibria\n";
    for (StateSet c : classes) {
      os << "  [" << int(c.min()) << "] = " << c << "\n";
    }
    return os.str();
  }

  std::string dump(Json const& j) {
    return j.dump(2) + "\n";
  }

}  // namespace pdkr::report
