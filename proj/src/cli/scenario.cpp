#include "finnet/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace finnet::cli {

using nlohmann::json;

void Options::merge(const Options& o) {
    if (o.seed) seed = o.seed;
    if (o.tol) tol = o.tol;
    if (o.horizon) horizon = o.horizon;
    if (o.hmax) hmax = o.hmax;
    if (o.rho) rho = o.rho;
    if (o.trials) trials = o.trials;
    if (o.nonnegative_injection) nonnegative_injection = o.nonnegative_injection;
    if (o.clamped_v_update) clamped_v_update = o.clamped_v_update;
    if (o.sampler) sampler = o.sampler;
    if (!o.switching_sequence.empty()) switching_sequence = o.switching_sequence;
    if (!o.orthants.empty()) orthants = o.orthants;
}

std::size_t Scenario::dimension() const {
    if (network) return network->size();
    if (interval) return interval->size();
    return 0;
}

const FinancialNetwork& Scenario::require_network() const {
    if (!network) throw InputError("scenario: this command needs a \"network\" block");
    return *network;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError("scenario field '" + path + "': " + what);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "not finite");
    return v;
}

Vector vector_field(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    Vector out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix matrix_field(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        rows.push_back(vector_field(j[i], rp));
        if (rows.back().size() != rows.front().size()) fail(rp, "row length differs from row 0");
    }
    if (rows.front().empty()) fail(path, "rows are empty");
    return Matrix::from_rows(rows);
}

const json& member(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) fail(path + "." + key, "missing");
    return obj.at(key);
}

std::uint64_t count_field(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

bool bool_field(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

FinancialNetwork parse_network(const json& j) {
    const std::string base = "network";
    if (!j.is_object()) fail(base, "expected an object");
    FinancialNetwork net;
    net.cross_holdings = matrix_field(member(j, "C", base), base + ".C");
    net.asset_shares = matrix_field(member(j, "D", base), base + ".D");
    net.prices = vector_field(member(j, "p", base), base + ".p");
    net.failure_costs = vector_field(member(j, "beta", base), base + ".beta");
    net.thresholds = vector_field(member(j, "V_lower", base), base + ".V_lower");
    const std::size_t n = net.cross_holdings.rows();
    if (!net.cross_holdings.square()) fail(base + ".C", "must be square");
    if (net.asset_shares.rows() != n) fail(base + ".D", "must have n = " + std::to_string(n) + " rows");
    if (net.asset_shares.cols() != net.prices.size()) {
        fail(base + ".p", "length must equal the column count of D");
    }
    if (net.failure_costs.size() != n) fail(base + ".beta", "length must be n");
    if (net.thresholds.size() != n) fail(base + ".V_lower", "length must be n");
    return net;
}

IntervalNetwork parse_interval(const json& j, const std::optional<FinancialNetwork>& net) {
    const std::string base = "interval";
    if (!j.is_object()) fail(base, "expected an object");
    if (j.contains("relative")) {
        if (!net) fail(base + ".relative", "needs a network block to scale");
        const double rel = number(j.at("relative"), base + ".relative");
        if (!(rel >= 0.0 && rel < 1.0)) fail(base + ".relative", "must be in [0, 1)");
        return IntervalNetwork::around(net->cross_holdings, ShiftedModel(*net).r(), rel);
    }
    IntervalNetwork inet;
    inet.c_lower = matrix_field(member(j, "C_lower", base), base + ".C_lower");
    inet.c_upper = matrix_field(member(j, "C_upper", base), base + ".C_upper");
    if (j.contains("r")) {
        inet.r = vector_field(j.at("r"), base + ".r");
    } else if (net) {
        inet.r = ShiftedModel(*net).r();
    } else {
        fail(base + ".r", "missing (and no network block to derive it from)");
    }
    const std::size_t n = inet.r.size();
    for (const auto& [name, m] : {std::pair{"C_lower", &inet.c_lower}, {"C_upper", &inet.c_upper}})
        if (m->rows() != n || m->cols() != n) fail(base + "." + name, "must be n x n, n = length of r");
    return inet;
}

Options parse_options(const json& j) {
    const std::string base = "options";
    if (!j.is_object()) fail(base, "expected an object");
    Options o;
    for (const auto& [key, val] : j.items()) {
        const std::string path = base + "." + key;
        if (key == "seed") o.seed = count_field(val, path);
        else if (key == "tol") o.tol = number(val, path);
        else if (key == "horizon") o.horizon = count_field(val, path);
        else if (key == "hmax") o.hmax = count_field(val, path);
        else if (key == "rho") o.rho = number(val, path);
        else if (key == "trials") o.trials = count_field(val, path);
        else if (key == "nonnegative_injection") o.nonnegative_injection = bool_field(val, path);
        else if (key == "clamped_v_update") o.clamped_v_update = bool_field(val, path);
        else if (key == "sampler") {
            if (!val.is_string()) fail(path, "expected a string");
            o.sampler = val.get<std::string>();
        } else if (key == "switching_sequence") {
            if (!val.is_array()) fail(path, "expected an array of matrices");
            for (std::size_t i = 0; i < val.size(); ++i)
                o.switching_sequence.push_back(
                    matrix_field(val[i], path + "[" + std::to_string(i) + "]"));
        } else if (key == "orthants") {
            if (!val.is_array()) fail(path, "expected an array of integers");
            for (std::size_t i = 0; i < val.size(); ++i)
                o.orthants.push_back(count_field(val[i], path + "[" + std::to_string(i) + "]"));
        } else {
            fail(path, "unknown option");
        }
    }
    return o;
}

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("scenario is not valid JSON at " + locate(text, e.byte) + ": " +
                         e.what());
    }
    if (!doc.is_object()) throw InputError("scenario: top level must be a JSON object");
    for (const auto& [key, val] : doc.items()) {
        if (key != "network" && key != "interval" && key != "initial_states" &&
            key != "options" && key != "description") {
            fail(key, "unknown top-level field");
        }
    }

    Scenario sc;
    sc.source = doc;
    if (doc.contains("network")) sc.network = parse_network(doc.at("network"));
    if (doc.contains("interval")) sc.interval = parse_interval(doc.at("interval"), sc.network);
    if (!sc.network && !sc.interval) {
        throw InputError("scenario: needs a \"network\" or an \"interval\" block");
    }
    if (sc.network && sc.interval && sc.interval->size() != sc.network->size()) {
        fail("interval", "dimension differs from the network");
    }
    if (doc.contains("initial_states")) {
        const auto& arr = doc.at("initial_states");
        if (!arr.is_array()) fail("initial_states", "expected an array of state vectors");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "initial_states[" + std::to_string(i) + "]";
            sc.initial_states.push_back(vector_field(arr[i], path));
            if (sc.initial_states.back().size() != sc.dimension()) {
                fail(path, "length must be n = " + std::to_string(sc.dimension()));
            }
        }
    }
    if (doc.contains("options")) sc.options = parse_options(doc.at("options"));
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace finnet::cli
