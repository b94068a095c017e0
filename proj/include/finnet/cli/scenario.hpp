#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "finnet/errors.hpp"
#include "finnet/network.hpp"
#include "finnet/robust.hpp"

namespace finnet::cli {

/// Malformed scenario file; the message carries the line or field.
class InputError : public Error {
public:
    using Error::Error;
};

/// Command options. Values left unset fall back to per-command defaults;
/// command-line flags override what the file says.
struct Options {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::size_t> horizon;
    std::optional<std::size_t> hmax;
    std::optional<double> rho;
    std::optional<std::size_t> trials;
    std::optional<bool> nonnegative_injection;
    std::optional<bool> clamped_v_update;
    std::optional<std::string> sampler;
    std::vector<Matrix> switching_sequence;
    std::vector<std::uint64_t> orthants;

    /// Fields set in other win.
    void merge(const Options& other);
};

/// {
///   "network":  {"C": [[..]], "D": [[..]], "p": [..], "beta": [..], "V_lower": [..]},
///   "interval": {"C_lower": [[..]], "C_upper": [[..]], "r": [..]}   or
///               {"relative": 0.1}   (bounds (1 -/+ rel) C, r from the network),
///   "initial_states": [[..], ..],
///   "options":  {"seed": 1, "tol": 1e-9, "horizon": 200, "hmax": 64, "rho": 1e-6,
///                "trials": 100, "sampler": "iid-uniform",
///                "switching_sequence": [[[..]]], "orthants": [1, 2],
///                "nonnegative_injection": false, "clamped_v_update": false}
/// }
struct Scenario {
    std::optional<FinancialNetwork> network;
    std::optional<IntervalNetwork> interval;
    std::vector<Vector> initial_states;
    Options options;
    nlohmann::json source;

    std::size_t dimension() const;
    /// Throws InputError when the scenario has no network block.
    const FinancialNetwork& require_network() const;
};

/// Parses and checks shapes. Network invariants are left to validate().
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace finnet::cli
