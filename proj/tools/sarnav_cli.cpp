#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sarnav/container_io.hpp"
#include "sarnav/errors.hpp"
#include "sarnav/pipeline.hpp"

using namespace sarnav;

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    std::string error_spec;
    unsigned threads = 1;
    unsigned seed = 0; // reserved: everything downstream is deterministic
};

void add_common(CLI::App* cmd, CommonArgs& a, bool need_config = true) {
    auto* c = cmd->add_option("--config", a.config, "scenario file (JSON)");
    if (need_config) c->required();
    cmd->add_option("--out", a.out, "output path")->required();
    cmd->add_option("--error", a.error_spec,
                    "error override: preset:<name> or \"dp=.. dv=.. dth=..\"");
    cmd->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "reserved; the pipeline is deterministic");
}

Scenario load(const CommonArgs& a) {
    Scenario s = load_scenario(a.config);
    if (!a.error_spec.empty()) {
        s.error = parse_error_spec(a.error_spec);
        s.error_preset =
            a.error_spec.rfind("preset:", 0) == 0 ? a.error_spec.substr(7) : "";
    }
    return s;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"point-target SAR back-projection with navigation error injection"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string in_path, ref_path, test_path;
    bool use_corrupted = false;
    double db_floor = -40.0;

    auto* simulate = app.add_subcommand("simulate", "raw echo data for the truth trajectory");
    add_common(simulate, a);

    auto* synth = app.add_subcommand("synth-rc", "range-compressed data via the closed form");
    add_common(synth, a);

    auto* rcomp = app.add_subcommand("rangecompress", "matched-filter raw data");
    add_common(rcomp, a);
    rcomp->add_option("--in", in_path, "raw .sarc input")->required();

    auto* bp = app.add_subcommand("backproject", "form an image from range-compressed data");
    add_common(bp, a);
    bp->add_option("--in", in_path, "range-compressed .sarc input")->required();
    bp->add_flag("--corrupted", use_corrupted,
                 "back-project with the error-corrupted trajectory");

    auto* predict = app.add_subcommand("predict", "closed-form shift prediction and "
                                                  "per-component distortion classes");
    add_common(predict, a);

    auto* compare = app.add_subcommand("compare", "predicted vs measured shift report");
    add_common(compare, a);
    compare->add_option("--ref", ref_path, "reference .sari image")->required();
    compare->add_option("--test", test_path, "error-injected .sari image")->required();

    auto* run = app.add_subcommand("run", "full pipeline into a directory");
    add_common(run, a);

    auto* render = app.add_subcommand("render", "log-magnitude PGM of a .sari image");
    render->add_option("--in", in_path, "input .sari image")->required();
    render->add_option("--out", a.out, "output .pgm path")->required();
    render->add_option("--db-floor", db_floor, "dB clip floor (negative)");

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        const Scenario s = load(a);
        const Gate g = compute_gate(s);
        const Trajectory truth = truth_trajectory(s.flight, s.collection);
        std::size_t misses = 0;
        const DataMatrix raw = simulate_raw(s.targets, truth, s.chirp, g.n_fast_raw,
                                            g.t_start, s.collection.prf, &misses);
        save_data_matrix(raw, a.out);
        std::printf("wrote %s (%zu pulses x %zu samples, %zu gate misses)\n", a.out.c_str(),
                    raw.n_pulses, raw.n_fast, misses);
    } else if (synth->parsed()) {
        const Scenario s = load(a);
        const Gate g = compute_gate(s);
        const Trajectory truth = truth_trajectory(s.flight, s.collection);
        const DataMatrix rc = synthesize_range_compressed(s.targets, truth, s.chirp,
                                                          g.n_fast_rc, g.u_start,
                                                          s.collection.prf);
        save_data_matrix(rc, a.out);
        std::printf("wrote %s (%zu pulses x %zu samples)\n", a.out.c_str(), rc.n_pulses,
                    rc.n_fast);
    } else if (rcomp->parsed()) {
        const Scenario s = load(a);
        const DataMatrix raw = load_data_matrix(in_path);
        const DataMatrix rc = range_compress(raw, s.chirp);
        save_data_matrix(rc, a.out);
        std::printf("wrote %s (%zu pulses x %zu samples)\n", a.out.c_str(), rc.n_pulses,
                    rc.n_fast);
    } else if (bp->parsed()) {
        const Scenario s = load(a);
        const DataMatrix rc = load_data_matrix(in_path);
        const Trajectory traj = use_corrupted
                                    ? corrupted_trajectory(s.flight, s.collection, s.error)
                                    : truth_trajectory(s.flight, s.collection);
        const ComplexImage img =
            backproject(rc, traj, s.grid, s.chirp, {Interpolation::Linear, a.threads});
        save_image(img, a.out);
        std::printf("wrote %s (%zu x %zu)\n", a.out.c_str(), img.grid.n_along,
                    img.grid.n_cross);
    } else if (predict->parsed()) {
        const Scenario s = load(a);
        const Vec3& p_t = s.targets.front().position;
        const ShiftPrediction p = predict_shift(p_t, s.flight, s.collection, s.error);
        std::string text;
        auto emit = [&](const char* k, double v) {
            if (v == 0.0) v = 0.0; // normalize -0
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s=%.12g\n", k, v);
            text += buf;
        };
        emit("r0", p.r0);
        emit("eta0", p.eta0);
        emit("r0_hat", p.r0_hat);
        emit("eta0_hat", p.eta0_hat);
        emit("d_range", p.d_range);
        emit("d_eta", p.d_eta);
        emit("d_along", p.d_along);
        emit("predicted_shift_along", -p.d_along);
        emit("predicted_shift_range", -p.d_range);
        const DistortionReport dr = classify_distortion(s.error, p_t, s.flight);
        const auto& names = DistortionReport::component_names();
        auto sgn = [](ShiftSign v) { return v == ShiftSign::Positive  ? "+"
                                            : v == ShiftSign::Negative ? "-"
                                                                       : "0"; };
        for (std::size_t i = 0; i < 9; ++i) {
            const ComponentEffect& ce = dr.components[i];
            text += std::string("component_") + names[i] + "=shift_range:" +
                    sgn(ce.shift_range) + " shift_azimuth:" + sgn(ce.shift_azimuth) +
                    " blur_azimuth:" + (ce.blur_azimuth ? "1" : "0") + "\n";
        }
        write_text_atomic(a.out, text);
        std::fputs(text.c_str(), stdout);
    } else if (compare->parsed()) {
        const Scenario s = load(a);
        const ComplexImage ref = load_image(ref_path);
        const ComplexImage test = load_image(test_path);
        const CompareReport r = compare_images(s, ref, test);
        write_text_atomic(a.out, r.to_text());
        std::fputs(r.to_text().c_str(), stdout);
    } else if (run->parsed()) {
        const Scenario s = load(a);
        const PipelineResult res = run_pipeline(s, a.out, {a.threads, true});
        std::fputs(res.report.to_text().c_str(), stdout);
        std::printf("artifacts: %s %s %s\n", res.ref_image_path.c_str(),
                    res.test_image_path.c_str(), res.report_path.c_str());
    } else if (render->parsed()) {
        const ComplexImage img = load_image(in_path);
        render_image_pgm(img, a.out, db_floor);
        std::printf("wrote %s\n", a.out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
