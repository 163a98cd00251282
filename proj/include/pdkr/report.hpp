#ifndef PDKR_REPORT_HPP_
#define PDKR_REPORT_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "pdkr/analysis.hpp"
#include "pdkr/pipeline.hpp"

namespace pdkr::report {

  using Json = nlohmann::ordered_json;

  inline constexpr int         kSchemaVersion = 1;
  inline constexpr char const* kToolName      = "pdkr";
  inline constexpr char const* kToolVersion   = "0.1.0";

  // schema_version, tool, tool_version, command.
  Json header(std::string const& command);

  Json to_json(StateSet s);
  Json to_json(GroupId const& g);

  // Levels list nontrivial entries only unless all_entries is set.
  Json decomposition(Decomposition const& d, bool all_entries = false);
  std::string decomposition_text(Decomposition const& d);

  Json        table2(std::vector<Table2Column> const& cols, Rational const& b, bool refine);
  std::string table2_text(std::vector<Table2Column> const& cols, Rational const& b, bool refine);

  Json        regimes(std::vector<RegimeInterval> const& pieces, Rational const& lo, Rational const& hi);
  std::string regimes_text(std::vector<RegimeInterval> const& pieces);

  Json        chain(std::vector<StateSet> const& nodes, Rational const& b, StateSet exclude);
  std::string chain_dot(std::vector<StateSet> const& nodes);

  Json        orbits(NaturalSubsystem const& ns, OrbitDiagram const& diagram, Rational const& b,
                     std::vector<int> const& open_cells);
  std::string orbits_dot(OrbitDiagram const& diagram);

  Json        equilibria(Rational const& b, StateSet fixed, std::vector<StateSet> const& classes);
  std::string equilibria_text(Rational const& b, StateSet fixed, std::vector<StateSet> const& classes);

  // Canonical serialisation: two-space indent and a trailing newline.
  std::string dump(Json const& j);

}  // namespace pdkr::report

#endif  // PDKR_REPORT_HPP_
