#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "seatplan/constraint_graph.hpp"
#include "seatplan/ingest.hpp"
#include "seatplan/solvers.hpp"

namespace seatplan {

// Workspace interchange:
//   {units, source, workspaces:[{id, bbox:[x0,y0,x1,y1], centroid:[x,y], tag}]}
nlohmann::ordered_json floorplan_to_json(const Floorplan& fp);
Floorplan floorplan_from_json(const nlohmann::ordered_json& doc);

// Plan: {method, d, objective, allocated, assignments:{ws: unit}, unallocated:[ws]}
nlohmann::ordered_json plan_to_json(const AllocationPlan& plan);
AllocationPlan plan_from_json(const nlohmann::ordered_json& doc);

struct UnitsDocument {
    std::vector<BusinessUnit> units;
    std::optional<AllocationPlan> prior;
};

// {units:[{id, headcount}], prior:{ws: unit}}
UnitsDocument units_from_json(const nlohmann::ordered_json& doc);

/// Reads a prior plan from either a units document ("prior") or a plan
/// document ("assignments"). Duplicate workspace keys are rejected.
AllocationPlan prior_from_text(const std::string& text);

// Debug export: {d, nodes:[id], edges:[[a, b, w]]}
nlohmann::ordered_json graph_to_json(const ConstraintGraph& g);

/// Parses JSON text, mapping syntax errors to ErrorCode::parse.
nlohmann::ordered_json parse_json(const std::string& text, const std::string& what);

/// Stable text form used for every JSON file the tools write.
std::string dump(const nlohmann::ordered_json& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace seatplan
