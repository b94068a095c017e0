#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "finnet/cycles.hpp"
#include "finnet/equilibria.hpp"
#include "finnet/intervene.hpp"
#include "finnet/invariance.hpp"
#include "finnet/polyhedron.hpp"
#include "finnet/robust.hpp"

namespace finnet::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportBundle {
    std::string command;
    nlohmann::json inputs;
    nlohmann::json results;
    std::string tool_version = kToolVersion;
    double wall_time_seconds = 0.0;

    nlohmann::json to_json() const;
    static ReportBundle from_json(const nlohmann::json& j);
    std::string serialize() const;  // pretty JSON with a trailing newline

    /// Equality of everything except the wall time.
    bool same_content(const ReportBundle& other) const;
};

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Polyhedron& p);
nlohmann::json to_json(const EquilibriumRecord& r);
nlohmann::json to_json(const ExistenceReport& r);
nlohmann::json to_json(const InvarianceReport& r);
nlohmann::json to_json(const LimitClassification& c);
nlohmann::json to_json(const NoPeriod2Report& r);
nlohmann::json to_json(const InterventionPlan& p);

/// Header t,x_1,...,x_n then one row per state, 9 significant digits.
void write_csv(std::ostream& out, const std::vector<Vector>& states);

}  // namespace finnet::cli
