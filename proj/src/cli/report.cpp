#include "finnet/cli/report.hpp"

namespace finnet::cli {

using nlohmann::json;

json ReportBundle::to_json() const {
    return {{"command", command},
            {"inputs", inputs},
            {"results", results},
            {"tool_version", tool_version},
            {"wall_time_seconds", wall_time_seconds}};
}

ReportBundle ReportBundle::from_json(const json& j) {
    ReportBundle b;
    b.command = j.at("command").get<std::string>();
    b.inputs = j.at("inputs");
    b.results = j.at("results");
    b.tool_version = j.at("tool_version").get<std::string>();
    b.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    return b;
}

std::string ReportBundle::serialize() const { return to_json().dump(2) + "\n"; }

bool ReportBundle::same_content(const ReportBundle& o) const {
    return command == o.command && inputs == o.inputs && results == o.results &&
           tool_version == o.tool_version;
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(Vector(m.row(i).begin(), m.row(i).end()));
    return rows;
}

json to_json(const Polyhedron& p) {
    return {{"label", p.label},
            {"certified", p.certified},
            {"horizon", p.horizon()},
            {"A", to_json(p.A())},
            {"b", p.b()},
            {"block", p.blocks()}};
}

json to_json(const EquilibriumRecord& r) {
    return {{"orthant", r.orthant.value()},
            {"phi", r.orthant.characteristic()},
            {"x_bar", r.x_bar},
            {"V_bar", r.v_bar},
            {"consistent", r.consistent},
            {"interior", r.interior}};
}

json to_json(const ExistenceReport& r) {
    return {{"positive_exists", r.positive_exists},
            {"positive_unique", r.positive_unique},
            {"negative_exists", r.negative_exists},
            {"negative_unique", r.negative_unique},
            {"resolvent_r", r.w_healthy},
            {"resolvent_r_minus_beta", r.w_failed}};
}

json to_json(const InvarianceReport& r) {
    json inter = json::array();
    for (const auto& [k, v] : r.intermediate) {
        json e = {{"orthant", k}, {"verdict", to_string(v.verdict)}};
        e["escape_witness"] = v.escape_witness ? json(*v.escape_witness) : json(nullptr);
        inter.push_back(std::move(e));
    }
    return {{"orthant0_invariant", r.orthant0_invariant},
            {"last_orthant_invariant", r.last_orthant_invariant},
            {"r", r.r},
            {"beta", r.beta},
            {"intermediate", inter}};
}

json to_json(const LimitClassification& c) {
    json orbit = json::array();
    for (const auto& s : c.orbit) orbit.push_back(s);
    return {{"kind", to_string(c.kind)}, {"period", c.period},
            {"orbit", orbit},            {"transient", c.transient},
            {"critical_time", c.critical_time}, {"steps", c.steps},
            {"rho", c.rho}};
}

json to_json(const NoPeriod2Report& r) {
    json w = json::array();
    for (const auto& s : r.witnesses) w.push_back(s);
    return {{"trials", r.trials},       {"period2_found", r.period2_found},
            {"equilibria", r.equilibria}, {"cycles", r.cycles},
            {"undetermined", r.undetermined}, {"witnesses", w}};
}

json to_json(const InterventionPlan& p) {
    json steps = json::array();
    for (const auto& s : p.steps) {
        steps.push_back({{"D", to_json(s.D)},
                         {"x", s.x},
                         {"v", s.v},
                         {"objective", s.objective},
                         {"feasible", s.feasible}});
    }
    return {{"x0", p.x0},
            {"initial_v", p.initial_v},
            {"target", to_json(p.target)},
            {"steps", steps},
            {"iterations", p.iterations()},
            {"success", p.success},
            {"iteration_cap_reached", p.iteration_cap_reached}};
}

void write_csv(std::ostream& out, const std::vector<Vector>& states) {
    const std::size_t n = states.empty() ? 0 : states.front().size();
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
    out << '\n';
    const auto old = out.precision(9);
    for (std::size_t t = 0; t < states.size(); ++t) {
        out << t;
        for (double v : states[t]) out << ',' << v;
        out << '\n';
    }
    out.precision(old);
}

}  // namespace finnet::cli
