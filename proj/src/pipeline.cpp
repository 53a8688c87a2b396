#include "sarnav/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "sarnav/container_io.hpp"
#include "sarnav/errors.hpp"

namespace sarnav {

namespace {

std::string fmt(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(std::string& out, const std::string& key, double v) {
    out += key + "=" + fmt(v) + "\n";
}

} // namespace

std::string CompareReport::to_text() const {
    std::string out;
    emit(out, "r0", prediction.r0);
    emit(out, "eta0", prediction.eta0);
    emit(out, "r0_hat", prediction.r0_hat);
    emit(out, "eta0_hat", prediction.eta0_hat);
    emit(out, "d_range", prediction.d_range);
    emit(out, "d_eta", prediction.d_eta);
    emit(out, "d_along", prediction.d_along);
    emit(out, "predicted_shift_along", predicted_shift_along);
    emit(out, "predicted_shift_range", predicted_shift_range);
    emit(out, "measured_shift_along", measured.d_along);
    emit(out, "measured_shift_cross", measured.d_cross);
    emit(out, "measured_shift_range", measured_shift_range);
    emit(out, "ref_peak_mag", ref.peak_mag);
    emit(out, "ref_width3db_along", ref.width3db_along);
    emit(out, "ref_width3db_cross", ref.width3db_cross);
    emit(out, "ref_entropy", ref.entropy);
    emit(out, "test_peak_mag", test.peak_mag);
    emit(out, "test_width3db_along", test.width3db_along);
    emit(out, "test_width3db_cross", test.width3db_cross);
    emit(out, "test_entropy", test.entropy);
    emit(out, "tol_range_m", tol_range_m);
    emit(out, "tol_azimuth_m", tol_azimuth_m);
    out += std::string("shift_along_ok=") + (shift_along_ok ? "1" : "0") + "\n";
    out += std::string("shift_range_ok=") + (shift_range_ok ? "1" : "0") + "\n";
    return out;
}

CompareReport parse_report(const std::string& text) {
    std::map<std::string, double> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("malformed report line '" + line + "'");
        try {
            kv[line.substr(0, eq)] = std::stod(line.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError("non-numeric report value in '" + line + "'");
        }
    }
    auto want = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("report is missing key '" + key + "'");
        return it->second;
    };
    CompareReport r;
    r.prediction.r0 = want("r0");
    r.prediction.eta0 = want("eta0");
    r.prediction.r0_hat = want("r0_hat");
    r.prediction.eta0_hat = want("eta0_hat");
    r.prediction.d_range = want("d_range");
    r.prediction.d_eta = want("d_eta");
    r.prediction.d_along = want("d_along");
    r.predicted_shift_along = want("predicted_shift_along");
    r.predicted_shift_range = want("predicted_shift_range");
    r.measured.d_along = want("measured_shift_along");
    r.measured.d_cross = want("measured_shift_cross");
    r.measured_shift_range = want("measured_shift_range");
    r.ref.peak_mag = want("ref_peak_mag");
    r.ref.width3db_along = want("ref_width3db_along");
    r.ref.width3db_cross = want("ref_width3db_cross");
    r.ref.entropy = want("ref_entropy");
    r.test.peak_mag = want("test_peak_mag");
    r.test.width3db_along = want("test_width3db_along");
    r.test.width3db_cross = want("test_width3db_cross");
    r.test.entropy = want("test_entropy");
    r.tol_range_m = want("tol_range_m");
    r.tol_azimuth_m = want("tol_azimuth_m");
    r.shift_along_ok = want("shift_along_ok") != 0.0;
    r.shift_range_ok = want("shift_range_ok") != 0.0;
    return r;
}

CompareReport compare_images(const Scenario& s, const ComplexImage& ref,
                             const ComplexImage& test) {
    CompareReport r;
    const Vec3& p_t = s.targets.front().position;
    r.prediction = predict_shift(p_t, s.flight, s.collection, s.error);
    r.predicted_shift_along = -r.prediction.d_along;
    r.predicted_shift_range = -r.prediction.d_range;

    r.ref = compute_metrics(ref);
    r.test = compute_metrics(test);
    r.measured = measure_shift(r.ref, r.test, ref.grid);

    // Project the in-plane peak displacement onto the broadside line of sight
    // at the true closest approach, so it compares against d_range directly.
    const Vec3 p_ca = s.flight.v0 * r.prediction.eta0;
    const Vec3 los = (p_t - p_ca).normalized();
    const Vec3 disp = ref.grid.axis_along * r.measured.d_along +
                      ref.grid.axis_cross * r.measured.d_cross;
    r.measured_shift_range = disp.dot(los);

    const double range_res = 0.886 * kSpeedOfLight / (2.0 * s.chirp.bandwidth());
    r.tol_range_m = 0.5 * range_res;
    r.tol_azimuth_m = 0.5 * ref.grid.spacing_along;
    r.shift_along_ok =
        std::abs(r.measured.d_along - r.predicted_shift_along) <= r.tol_azimuth_m;
    r.shift_range_ok =
        std::abs(r.measured_shift_range - r.predicted_shift_range) <= r.tol_range_m;
    return r;
}

PipelineResult run_pipeline(const Scenario& s, const std::string& out_dir,
                            const PipelineOptions& opt) {
    s.validate();
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    const Gate gate = compute_gate(s);
    const Trajectory truth = truth_trajectory(s.flight, s.collection);
    const Trajectory bad = corrupted_trajectory(s.flight, s.collection, s.error);

    DataMatrix rc;
    if (s.data_path == DataPath::Synthesize) {
        rc = synthesize_range_compressed(s.targets, truth, s.chirp, gate.n_fast_rc,
                                         gate.u_start, s.collection.prf);
    } else {
        const DataMatrix raw = simulate_raw(s.targets, truth, s.chirp, gate.n_fast_raw,
                                            gate.t_start, s.collection.prf);
        save_data_matrix(raw, (dir / "raw.sarc").string());
        rc = range_compress(raw, s.chirp);
    }
    if (opt.write_rc) save_data_matrix(rc, (dir / "rc.sarc").string());

    const BackprojectOptions bp{Interpolation::Linear, opt.threads};
    const ComplexImage ref = backproject(rc, truth, s.grid, s.chirp, bp);
    const ComplexImage test = backproject(rc, bad, s.grid, s.chirp, bp);

    PipelineResult out;
    out.ref_image_path = (dir / "image_ref.sari").string();
    out.test_image_path = (dir / "image_test.sari").string();
    out.report_path = (dir / "report.txt").string();
    save_image(ref, out.ref_image_path);
    save_image(test, out.test_image_path);

    out.report = compare_images(s, ref, test);
    write_text_atomic(out.report_path, out.report.to_text());
    return out;
}

} // namespace sarnav
