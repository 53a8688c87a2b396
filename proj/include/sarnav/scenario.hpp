#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sarnav/backprojection.hpp"
#include "sarnav/error_analysis.hpp"

namespace sarnav {

enum class DataPath { Synthesize, Simulate };

// Fully validated experiment description.
struct Scenario {
    FlightParams flight;
    ChirpParams chirp;
    SlowTimeGrid collection;
    std::vector<Target> targets;
    ImageGrid grid;
    ErrorState error;
    std::string error_preset; // empty when the error was given explicitly
    DataPath data_path = DataPath::Synthesize;
    double gate_margin_m = 25.0;

    void validate() const;
};

// Named error presets (magnitudes from the nine injection experiments):
//   zero,
//   sim-xpos/ypos/zpos   3 m position,
//   sim-xvel 0.1 m/s, sim-yvel/zvel 0.05 m/s,
//   sim-roll 0.001 rad, sim-pitch 0.02 rad, sim-yaw 0.1 rad,
//   real-xpos/ypos/zpos  3 m,
//   real-xvel 1 m/s, real-yvel/zvel 0.2 m/s,
//   real-roll 0.01 rad, real-pitch 0.5 rad, real-yaw 0.1 rad.
ErrorState preset_error_state(const std::string& name);
std::vector<std::string> preset_names();

// Parses "preset:<name>" or "dp=a,b,c dv=a,b,c dth=a,b,c" (unset groups zero).
ErrorState parse_error_spec(const std::string& spec);

// Loads and validates a JSON scenario file. Unknown keys are errors.
Scenario load_scenario(const std::string& path);

// Fast-time gate covering every pixel and target of the scenario, with the
// configured slack on both sides. Times are on the delay-absorbed axis.
struct Gate {
    double t_start = 0.0; // raw echo window start (physical two-way time)
    std::size_t n_fast_raw = 0;
    double u_start = 0.0; // range-compressed axis start
    std::size_t n_fast_rc = 0;
};
Gate compute_gate(const Scenario& s);

} // namespace sarnav
