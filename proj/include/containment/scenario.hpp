#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "containment/sim.hpp"

namespace containment {

/// Scenario file schema (indices are 1-based; leader links are [leader, follower]):
///
///   {
///     "graph":   {"n": 4, "m": 3, "edges": [[1,2], [5,1], ...]},
///     "leaders": {"mu": 0.5,
///                 "trajectory": {"kind": "circle", "R": 2.0, "omega": 0.5, "theta0": 0.0},
///                 "offsets": [[x, y, theta], ...]},
///     "gains":   {"g1":1, "g2":1, "g3":1, "g4":1, "gamma1":1, "gamma2":1},
///     "sim":     {"dt": 1e-3, "tFinal": 40, "logEvery": 100, "seed": 7, "initialBox": 3.0},
///     "initial": [{"eta":[...], "phi":[...], "rho":[...]}, ...],          (optional)
///     "etaBar":  {"horizon": 12.57, "samples": 2001}                       (optional)
///   }
///
/// Trajectory kinds: "stationary" {eta}, "line" {eta, velocity},
/// "circle" {R, omega, theta0, spin}, "lissajous" {offset, amplitude, frequency, phase}.
ScenarioConfig parse_scenario(const nlohmann::json& doc, std::optional<std::uint64_t> seed = {});

/// Parses only the "leaders" block.
LeaderModel parse_leader_block(const nlohmann::json& leaders);

/// Reads and parses a scenario file. Syntax and schema problems raise
/// ParseError naming the line or the offending field.
ScenarioConfig load_scenario(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed = {});

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace containment
