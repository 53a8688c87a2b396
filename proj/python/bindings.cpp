#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sarnav/container_io.hpp"
#include "sarnav/errors.hpp"
#include "sarnav/pipeline.hpp"
#include "sarnav/quaternion.hpp"

namespace py = pybind11;
using namespace sarnav;

namespace {

py::array_t<std::complex<double>> matrix_values(const DataMatrix& dm) {
    py::array_t<std::complex<double>> out({dm.n_pulses, dm.n_fast});
    std::copy(dm.values.begin(), dm.values.end(), out.mutable_data());
    return out;
}

py::array_t<std::complex<double>> image_values(const ComplexImage& img) {
    py::array_t<std::complex<double>> out({img.grid.n_along, img.grid.n_cross});
    std::copy(img.values.begin(), img.values.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_sarnav, m) {
    m.doc() = "SAR back-projection navigation-error sensitivity core";

    // Translators run most-recently-registered first, so the base class goes
    // first and the more specific ValidationError takes precedence.
    py::register_exception<Error>(m, "SarnavError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init<double, double, double>())
        .def(py::init([](const py::sequence& s) {
            if (py::len(s) != 3) throw py::value_error("Vec3 wants 3 numbers");
            return Vec3{s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>()};
        }))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("norm", &Vec3::norm)
        .def("__iter__",
             [](const Vec3& v) { return py::iter(py::make_tuple(v.x, v.y, v.z)); })
        .def("__repr__", [](const Vec3& v) {
            return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
                   std::to_string(v.z) + ")";
        });
    py::implicitly_convertible<py::sequence, Vec3>();

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<>())
        .def(py::init<double, double, double, double>())
        .def_readwrite("w", &Quaternion::w)
        .def_readwrite("x", &Quaternion::x)
        .def_readwrite("y", &Quaternion::y)
        .def_readwrite("z", &Quaternion::z);
    m.def("quat_from_axis_angle", &Quaternion::from_axis_angle, py::arg("axis"),
          py::arg("angle"));
    m.def("quat_product", &quat_product);
    m.def("attitude_error", &attitude_error, py::arg("q_true"), py::arg("q_est"));

    py::class_<ErrorState>(m, "ErrorState")
        .def(py::init<>())
        .def(py::init([](const Vec3& dp, const Vec3& dv, const Vec3& dtheta) {
                 return ErrorState{dp, dv, dtheta};
             }),
             py::arg("dp") = Vec3{}, py::arg("dv") = Vec3{}, py::arg("dtheta") = Vec3{})
        .def_readwrite("dp", &ErrorState::dp)
        .def_readwrite("dv", &ErrorState::dv)
        .def_readwrite("dtheta", &ErrorState::dtheta)
        .def("validate", &ErrorState::validate)
        .def("is_zero", &ErrorState::is_zero);

    py::class_<FlightParams>(m, "FlightParams")
        .def(py::init<>())
        .def_readwrite("v0", &FlightParams::v0)
        .def_readwrite("g", &FlightParams::g);

    m.def("propagate_error_state", &propagate_error_state, py::arg("e0"), py::arg("dt"),
          py::arg("params"));
    m.def("position_error_closed_form", &position_error_closed_form, py::arg("e0"),
          py::arg("dt"), py::arg("params"));

    py::class_<SlowTimeGrid>(m, "SlowTimeGrid")
        .def(py::init([](double prf, std::size_t n) { return SlowTimeGrid{prf, n}; }),
             py::arg("prf"), py::arg("n_pulses"))
        .def_readwrite("prf", &SlowTimeGrid::prf)
        .def_readwrite("n_pulses", &SlowTimeGrid::n_pulses)
        .def("eta", &SlowTimeGrid::eta);

    py::class_<Target>(m, "Target")
        .def(py::init([](const Vec3& p, double a) { return Target{p, a}; }),
             py::arg("position"), py::arg("amplitude") = 1.0)
        .def_readwrite("position", &Target::position)
        .def_readwrite("amplitude", &Target::amplitude);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("positions", &Trajectory::positions)
        .def_readonly("v0", &Trajectory::v0);
    m.def("truth_trajectory", &truth_trajectory);
    m.def("corrupted_trajectory", &corrupted_trajectory);
    m.def("slant_range", &slant_range);

    py::class_<ClosestApproach>(m, "ClosestApproach")
        .def_readonly("r0", &ClosestApproach::r0)
        .def_readonly("eta0", &ClosestApproach::eta0);
    m.def("closest_approach", &closest_approach);

    py::class_<ChirpParams>(m, "ChirpParams")
        .def(py::init([](double f0, double K, double T, double fs, double fc) {
                 return ChirpParams{f0, K, T, fs, fc};
             }),
             py::arg("f0"), py::arg("K"), py::arg("T"), py::arg("fs"), py::arg("fc"))
        .def_readwrite("f0", &ChirpParams::f0)
        .def_readwrite("K", &ChirpParams::K)
        .def_readwrite("T", &ChirpParams::T)
        .def_readwrite("fs", &ChirpParams::fs)
        .def_readwrite("fc", &ChirpParams::fc)
        .def("bandwidth", &ChirpParams::bandwidth)
        .def("wavelength", &ChirpParams::lambda)
        .def("validate", &ChirpParams::validate);

    py::class_<DataMatrix>(m, "DataMatrix")
        .def_readonly("n_pulses", &DataMatrix::n_pulses)
        .def_readonly("n_fast", &DataMatrix::n_fast)
        .def_readonly("t_start", &DataMatrix::t_start)
        .def_readonly("fs", &DataMatrix::fs)
        .def_readonly("prf", &DataMatrix::prf)
        .def_property_readonly("values", &matrix_values);

    py::enum_<ConvolutionMethod>(m, "ConvolutionMethod")
        .value("FFT", ConvolutionMethod::Fft)
        .value("DIRECT", ConvolutionMethod::Direct);

    m.def("gen_chirp", &gen_chirp);
    m.def(
        "simulate_raw",
        [](const std::vector<Target>& targets, const Trajectory& traj,
           const ChirpParams& params, std::size_t n_fast, double t_start, double prf) {
            return simulate_raw(targets, traj, params, n_fast, t_start, prf);
        },
        py::arg("targets"), py::arg("trajectory"), py::arg("chirp"), py::arg("n_fast"),
        py::arg("t_start"), py::arg("prf"));
    m.def("range_compress", &range_compress, py::arg("raw"), py::arg("chirp"),
          py::arg("method") = ConvolutionMethod::Fft);
    m.def("analytic_range_compressed_pulse", &analytic_range_compressed_pulse);
    m.def(
        "synthesize_range_compressed",
        [](const std::vector<Target>& targets, const Trajectory& traj,
           const ChirpParams& params, std::size_t n_fast, double t_start, double prf) {
            return synthesize_range_compressed(targets, traj, params, n_fast, t_start, prf);
        },
        py::arg("targets"), py::arg("trajectory"), py::arg("chirp"), py::arg("n_fast"),
        py::arg("t_start"), py::arg("prf"));

    py::class_<ImageGrid>(m, "ImageGrid")
        .def(py::init<>())
        .def_readwrite("origin", &ImageGrid::origin)
        .def_readwrite("axis_along", &ImageGrid::axis_along)
        .def_readwrite("axis_cross", &ImageGrid::axis_cross)
        .def_readwrite("spacing_along", &ImageGrid::spacing_along)
        .def_readwrite("spacing_cross", &ImageGrid::spacing_cross)
        .def_readwrite("n_along", &ImageGrid::n_along)
        .def_readwrite("n_cross", &ImageGrid::n_cross)
        .def("pixel", &ImageGrid::pixel)
        .def("validate", &ImageGrid::validate);

    py::class_<ComplexImage>(m, "ComplexImage")
        .def_readonly("grid", &ComplexImage::grid)
        .def_property_readonly("values", &image_values)
        .def_property_readonly("skipped_fraction", [](const ComplexImage& img) {
            py::array_t<double> out({img.grid.n_along, img.grid.n_cross});
            std::copy(img.skipped_fraction.begin(), img.skipped_fraction.end(),
                      out.mutable_data());
            return out;
        });

    m.def(
        "backproject",
        [](const DataMatrix& rc, const Trajectory& traj, const ImageGrid& grid,
           const ChirpParams& params, unsigned threads) {
            return backproject(rc, traj, grid, params, {Interpolation::Linear, threads});
        },
        py::arg("rc"), py::arg("trajectory"), py::arg("grid"), py::arg("chirp"),
        py::arg("threads") = 1);

    py::class_<TaylorExpansion>(m, "TaylorExpansion")
        .def_readonly("r0_hat", &TaylorExpansion::r0_hat)
        .def_readonly("quad_coeff", &TaylorExpansion::quad_coeff)
        .def_readonly("eta0_ref", &TaylorExpansion::eta0_ref)
        .def_readonly("q_term", &TaylorExpansion::q_term)
        .def("eval", &TaylorExpansion::eval);

    py::class_<ShiftPrediction>(m, "ShiftPrediction")
        .def_readonly("r0", &ShiftPrediction::r0)
        .def_readonly("eta0", &ShiftPrediction::eta0)
        .def_readonly("r0_hat", &ShiftPrediction::r0_hat)
        .def_readonly("eta0_hat", &ShiftPrediction::eta0_hat)
        .def_readonly("d_range", &ShiftPrediction::d_range)
        .def_readonly("d_eta", &ShiftPrediction::d_eta)
        .def_readonly("d_along", &ShiftPrediction::d_along);

    py::class_<ImageMetrics>(m, "ImageMetrics")
        .def_readonly("peak_i", &ImageMetrics::peak_i)
        .def_readonly("peak_j", &ImageMetrics::peak_j)
        .def_readonly("peak_sub_i", &ImageMetrics::peak_sub_i)
        .def_readonly("peak_sub_j", &ImageMetrics::peak_sub_j)
        .def_readonly("peak_mag", &ImageMetrics::peak_mag)
        .def_readonly("width3db_along", &ImageMetrics::width3db_along)
        .def_readonly("width3db_cross", &ImageMetrics::width3db_cross)
        .def_readonly("entropy", &ImageMetrics::entropy);

    m.def("estimated_range", &estimated_range);
    m.def("taylor_coefficients", &taylor_coefficients);
    m.def("predict_shift", &predict_shift);
    m.def("compute_metrics", &compute_metrics);
    m.def("image_entropy", &image_entropy);

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("flight", &Scenario::flight)
        .def_readwrite("chirp", &Scenario::chirp)
        .def_readwrite("collection", &Scenario::collection)
        .def_readwrite("targets", &Scenario::targets)
        .def_readwrite("grid", &Scenario::grid)
        .def_readwrite("error", &Scenario::error)
        .def("validate", &Scenario::validate);
    m.def("load_scenario", &load_scenario);
    m.def("parse_error_spec", &parse_error_spec);
    m.def("preset_error_state", &preset_error_state);
    m.def("preset_names", &preset_names);

    py::class_<CompareReport>(m, "CompareReport")
        .def_readonly("prediction", &CompareReport::prediction)
        .def_readonly("predicted_shift_along", &CompareReport::predicted_shift_along)
        .def_readonly("predicted_shift_range", &CompareReport::predicted_shift_range)
        .def_readonly("measured_shift_range", &CompareReport::measured_shift_range)
        .def_readonly("ref", &CompareReport::ref)
        .def_readonly("test", &CompareReport::test)
        .def_readonly("shift_along_ok", &CompareReport::shift_along_ok)
        .def_readonly("shift_range_ok", &CompareReport::shift_range_ok)
        .def("to_text", &CompareReport::to_text);

    m.def(
        "run_pipeline",
        [](const Scenario& s, const std::string& out_dir, unsigned threads) {
            return run_pipeline(s, out_dir, {threads, true}).report;
        },
        py::arg("scenario"), py::arg("out_dir"), py::arg("threads") = 1);

    m.def("save_data_matrix", &save_data_matrix);
    m.def("load_data_matrix", &load_data_matrix);
    m.def("save_image", &save_image);
    m.def("load_image", &load_image);
    m.def("render_image_pgm", &render_image_pgm, py::arg("image"), py::arg("path"),
          py::arg("db_floor") = -40.0);
}
