#pragma once

#include <string>

#include "sarnav/error_analysis.hpp"
#include "sarnav/scenario.hpp"

namespace sarnav {

// Predicted (closest-approach method) vs measured (image peak) target shift,
// plus focus metrics for the reference and error-injected images.
// Predicted apparent displacements carry the sign the target actually moves
// in the image: minus the (r0_hat - r0, eta0_hat - eta0) deltas.
struct CompareReport {
    ShiftPrediction prediction;
    double predicted_shift_along = 0.0; // -d_along
    double predicted_shift_range = 0.0; // -d_range
    MeasuredShift measured;             // grid-axis meters, test - ref
    double measured_shift_range = 0.0;  // cross shift projected onto the line of sight
    ImageMetrics ref;
    ImageMetrics test;
    double tol_range_m = 0.0;   // half a range resolution cell
    double tol_azimuth_m = 0.0; // half an along-track pixel
    bool shift_along_ok = false;
    bool shift_range_ok = false;

    std::string to_text() const;
};

CompareReport parse_report(const std::string& text);

struct PipelineOptions {
    unsigned threads = 1;
    bool write_rc = true; // keep intermediate range-compressed data on disk
};

struct PipelineResult {
    CompareReport report;
    std::string ref_image_path;
    std::string test_image_path;
    std::string report_path;
};

// Full experiment: build the range-compressed data for the truth trajectory
// (analytic synthesis or simulate + range compress per the scenario), form
// the reference image with truth and the test image with the corrupted
// trajectory, then predict and measure the shift. Artifacts land in out_dir.
PipelineResult run_pipeline(const Scenario& s, const std::string& out_dir,
                            const PipelineOptions& opt = {});

// Comparison/report step alone, for images already on disk.
CompareReport compare_images(const Scenario& s, const ComplexImage& ref,
                             const ComplexImage& test);

} // namespace sarnav
