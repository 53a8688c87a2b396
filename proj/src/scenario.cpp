#include "sarnav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sarnav/errors.hpp"
#include "sarnav/waveform.hpp"

namespace sarnav {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw ParseError("unknown key '" + key + "' in " + where);
    }
}

Vec3 as_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(where + " must be an array of 3 numbers");
    for (const auto& e : j)
        if (!e.is_number()) throw ParseError(where + " must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double as_num(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + " must be a number");
    return j.get<double>();
}

std::size_t as_size(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) throw ParseError(where + " must be a non-negative integer");
    return j.get<std::size_t>();
}

struct Preset {
    const char* name;
    ErrorState state;
};

const Preset kPresets[] = {
    {"zero", {}},
    {"sim-xpos", {{3.0, 0.0, 0.0}, {}, {}}},
    {"sim-ypos", {{0.0, 3.0, 0.0}, {}, {}}},
    {"sim-zpos", {{0.0, 0.0, 3.0}, {}, {}}},
    {"sim-xvel", {{}, {0.1, 0.0, 0.0}, {}}},
    {"sim-yvel", {{}, {0.0, 0.05, 0.0}, {}}},
    {"sim-zvel", {{}, {0.0, 0.0, 0.05}, {}}},
    {"sim-roll", {{}, {}, {0.001, 0.0, 0.0}}},
    {"sim-pitch", {{}, {}, {0.0, 0.02, 0.0}}},
    {"sim-yaw", {{}, {}, {0.0, 0.0, 0.1}}},
    {"real-xpos", {{3.0, 0.0, 0.0}, {}, {}}},
    {"real-ypos", {{0.0, 3.0, 0.0}, {}, {}}},
    {"real-zpos", {{0.0, 0.0, 3.0}, {}, {}}},
    {"real-xvel", {{}, {1.0, 0.0, 0.0}, {}}},
    {"real-yvel", {{}, {0.0, 0.2, 0.0}, {}}},
    {"real-zvel", {{}, {0.0, 0.0, 0.2}, {}}},
    {"real-roll", {{}, {}, {0.01, 0.0, 0.0}}},
    {"real-pitch", {{}, {}, {0.0, 0.5, 0.0}}},
    {"real-yaw", {{}, {}, {0.0, 0.0, 0.1}}},
};

Vec3 parse_triplet(const std::string& text, const std::string& where) {
    Vec3 v;
    char tail = 0;
    const int n = std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &v.x, &v.y, &v.z, &tail);
    if (n != 3) throw ParseError("bad triplet '" + text + "' for " + where);
    return v;
}

} // namespace

ErrorState preset_error_state(const std::string& name) {
    for (const Preset& p : kPresets)
        if (name == p.name) return p.state;
    std::string known;
    for (const Preset& p : kPresets) known += std::string(known.empty() ? "" : ", ") + p.name;
    throw ParseError("unknown error preset '" + name + "' (known: " + known + ")");
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const Preset& p : kPresets) out.emplace_back(p.name);
    return out;
}

ErrorState parse_error_spec(const std::string& spec) {
    if (spec.rfind("preset:", 0) == 0) return preset_error_state(spec.substr(7));
    ErrorState e;
    std::istringstream is(spec);
    std::string tok;
    bool any = false;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("bad error spec token '" + tok + "' (want key=a,b,c)");
        const std::string key = tok.substr(0, eq);
        const Vec3 v = parse_triplet(tok.substr(eq + 1), key);
        if (key == "dp")
            e.dp = v;
        else if (key == "dv")
            e.dv = v;
        else if (key == "dth")
            e.dtheta = v;
        else
            throw ParseError("unknown error spec key '" + key + "' (want dp, dv, or dth)");
        any = true;
    }
    if (!any) throw ParseError("empty error spec");
    e.validate();
    return e;
}

void Scenario::validate() const {
    flight.validate();
    chirp.validate();
    collection.validate();
    if (targets.empty()) throw ValidationError("scenario needs at least one target");
    for (const Target& t : targets) t.validate();
    grid.validate();
    error.validate();
    if (!std::isfinite(gate_margin_m) || gate_margin_m <= 0.0)
        throw ValidationError("gate_margin_m must be positive");
}

Scenario load_scenario(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open scenario file " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(path + ": top level must be an object");
    reject_unknown(j, {"flight", "chirp", "collection", "targets", "grid", "error",
                       "data_path", "gate_margin_m"},
                   "scenario");

    Scenario s;
    if (j.contains("flight")) {
        const json& f = j["flight"];
        reject_unknown(f, {"v0", "g"}, "flight");
        if (f.contains("v0")) s.flight.v0 = as_vec3(f["v0"], "flight.v0");
        if (f.contains("g")) s.flight.g = as_num(f["g"], "flight.g");
    }

    // Defaults: 150 MHz symmetric baseband chirp at X band, sampled fast
    // enough that linear interpolation holds up in the image domain.
    s.chirp = {-75.0e6, 1.5e13, 10.0e-6, 800.0e6, 10.0e9};
    if (j.contains("chirp")) {
        const json& c = j["chirp"];
        reject_unknown(c, {"f0", "K", "T", "fs", "fc"}, "chirp");
        if (c.contains("f0")) s.chirp.f0 = as_num(c["f0"], "chirp.f0");
        if (c.contains("K")) s.chirp.K = as_num(c["K"], "chirp.K");
        if (c.contains("T")) s.chirp.T = as_num(c["T"], "chirp.T");
        if (c.contains("fs")) s.chirp.fs = as_num(c["fs"], "chirp.fs");
        if (c.contains("fc")) s.chirp.fc = as_num(c["fc"], "chirp.fc");
    }

    s.collection = {256.0, 128};
    if (j.contains("collection")) {
        const json& c = j["collection"];
        reject_unknown(c, {"prf", "n_pulses"}, "collection");
        if (c.contains("prf")) s.collection.prf = as_num(c["prf"], "collection.prf");
        if (c.contains("n_pulses"))
            s.collection.n_pulses = as_size(c["n_pulses"], "collection.n_pulses");
    }

    s.targets = {Target{{25.0, 2500.0, 500.0}, 1.0}};
    if (j.contains("targets")) {
        if (!j["targets"].is_array()) throw ParseError("targets must be an array");
        s.targets.clear();
        std::size_t idx = 0;
        for (const json& t : j["targets"]) {
            const std::string where = "targets[" + std::to_string(idx++) + "]";
            if (!t.is_object()) throw ParseError(where + " must be an object");
            reject_unknown(t, {"position", "amplitude"}, where);
            Target tgt;
            if (!t.contains("position")) throw ParseError(where + " needs a position");
            tgt.position = as_vec3(t["position"], where + ".position");
            if (t.contains("amplitude"))
                tgt.amplitude = as_num(t["amplitude"], where + ".amplitude");
            s.targets.push_back(tgt);
        }
    }

    // Default grid: centered on the first target, ground plane through its z.
    {
        const Vec3& p = s.targets.front().position;
        s.grid.n_along = 128;
        s.grid.n_cross = 128;
        s.grid.spacing_along = 0.2;
        s.grid.spacing_cross = 0.3;
        s.grid.axis_along = {1.0, 0.0, 0.0};
        s.grid.axis_cross = {0.0, 1.0, 0.0};
        s.grid.origin = {p.x - 63.5 * s.grid.spacing_along, p.y - 63.5 * s.grid.spacing_cross,
                         p.z};
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        reject_unknown(g,
                       {"origin", "axis_along", "axis_cross", "spacing_along", "spacing_cross",
                        "n_along", "n_cross", "center"},
                       "grid");
        if (g.contains("spacing_along"))
            s.grid.spacing_along = as_num(g["spacing_along"], "grid.spacing_along");
        if (g.contains("spacing_cross"))
            s.grid.spacing_cross = as_num(g["spacing_cross"], "grid.spacing_cross");
        if (g.contains("n_along")) s.grid.n_along = as_size(g["n_along"], "grid.n_along");
        if (g.contains("n_cross")) s.grid.n_cross = as_size(g["n_cross"], "grid.n_cross");
        if (g.contains("axis_along")) s.grid.axis_along = as_vec3(g["axis_along"], "grid.axis_along");
        if (g.contains("axis_cross")) s.grid.axis_cross = as_vec3(g["axis_cross"], "grid.axis_cross");
        if (g.contains("origin") && g.contains("center"))
            throw ParseError("grid takes origin or center, not both");
        if (g.contains("origin")) {
            s.grid.origin = as_vec3(g["origin"], "grid.origin");
        } else {
            const Vec3 center = g.contains("center") ? as_vec3(g["center"], "grid.center")
                                                     : s.targets.front().position;
            s.grid.origin =
                center -
                s.grid.axis_along *
                    (0.5 * static_cast<double>(s.grid.n_along - 1) * s.grid.spacing_along) -
                s.grid.axis_cross *
                    (0.5 * static_cast<double>(s.grid.n_cross - 1) * s.grid.spacing_cross);
        }
    }

    if (j.contains("error")) {
        const json& e = j["error"];
        if (e.is_string()) {
            std::string spec = e.get<std::string>();
            s.error = parse_error_spec(spec);
            if (spec.rfind("preset:", 0) == 0) s.error_preset = spec.substr(7);
        } else if (e.is_object()) {
            reject_unknown(e, {"dp", "dv", "dtheta"}, "error");
            if (e.contains("dp")) s.error.dp = as_vec3(e["dp"], "error.dp");
            if (e.contains("dv")) s.error.dv = as_vec3(e["dv"], "error.dv");
            if (e.contains("dtheta")) s.error.dtheta = as_vec3(e["dtheta"], "error.dtheta");
        } else {
            throw ParseError("error must be a string spec or an object");
        }
    }

    if (j.contains("data_path")) {
        const std::string dp = j["data_path"].is_string() ? j["data_path"].get<std::string>()
                                                          : std::string();
        if (dp == "synthesize")
            s.data_path = DataPath::Synthesize;
        else if (dp == "simulate")
            s.data_path = DataPath::Simulate;
        else
            throw ParseError("data_path must be 'synthesize' or 'simulate'");
    }

    if (j.contains("gate_margin_m"))
        s.gate_margin_m = as_num(j["gate_margin_m"], "gate_margin_m");

    s.validate();
    return s;
}

Gate compute_gate(const Scenario& s) {
    const Trajectory truth = truth_trajectory(s.flight, s.collection);
    const Trajectory bad = corrupted_trajectory(s.flight, s.collection, s.error);

    double r_min = std::numeric_limits<double>::infinity();
    double r_max = 0.0;
    auto fold = [&](const Vec3& p) {
        for (const Trajectory* traj : {&truth, &bad}) {
            for (const Vec3& plat : traj->positions) {
                const double r = slant_range(p, plat);
                r_min = std::min(r_min, r);
                r_max = std::max(r_max, r);
            }
        }
    };
    for (const Target& t : s.targets) fold(t.position);
    const auto ia = static_cast<double>(s.grid.n_along - 1);
    const auto ja = static_cast<double>(s.grid.n_cross - 1);
    for (const auto& [i, j] :
         {std::pair{0.0, 0.0}, {ia, 0.0}, {0.0, ja}, {ia, ja}})
        fold(s.grid.pixel(i, j));

    const double c = kSpeedOfLight;
    const double t_lo = 2.0 * (r_min - s.gate_margin_m) / c;
    const double t_hi = 2.0 * (r_max + s.gate_margin_m) / c;
    if (t_lo < 0.0) throw ValidationError("gate margin reaches behind zero range");

    Gate g;
    g.u_start = t_lo;
    g.n_fast_rc = static_cast<std::size_t>(std::ceil((t_hi - t_lo) * s.chirp.fs)) + 1;
    // Raw echoes occupy [2R/c, 2R/c + T], so the raw window needs T more room.
    g.t_start = t_lo;
    g.n_fast_raw =
        static_cast<std::size_t>(std::ceil((t_hi - t_lo + s.chirp.T) * s.chirp.fs)) + 1;
    return g;
}

} // namespace sarnav
