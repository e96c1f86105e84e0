#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gkp/diagnostics.hpp"
#include "gkp/fft.hpp"
#include "gkp/fit.hpp"
#include "gkp/runner.hpp"

namespace py = pybind11;
using namespace gkp;

namespace {

RealField field_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                           double lx, double ly) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D array (ny, nx)");
    int ny = static_cast<int>(a.shape(0));
    int nx = static_cast<int>(a.shape(1));
    RealField f(make_grid(nx, ny, lx, ly));
    std::copy(a.data(), a.data() + f.values.size(), f.values.begin());
    return f;
}

py::array_t<std::complex<double>> coef_array(const SpectralField& F) {
    const Grid2D& g = *F.grid;
    py::array_t<std::complex<double>> out({g.ny, g.nx});
    std::copy(F.coef.begin(), F.coef.end(), out.mutable_data());
    return out;
}

py::dict fit_dict(const FitResult& f) {
    py::dict d;
    d["C"] = f.C;
    d["c"] = f.c;
    d["t_star"] = f.t_star;
    d["residual"] = f.residual;
    d["k_last"] = f.k_last;
    d["norm_id"] = f.norm_id;
    d["converged"] = f.converged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_gkps, m) {
    m.doc() = "Pseudospectral solvers for generalized KP equations";

    m.def("forward", [](py::array_t<double, py::array::c_style | py::array::forcecast> u,
                        double lx, double ly) {
        return coef_array(forward(field_from_array(u, lx, ly)));
    }, py::arg("u"), py::arg("scale_x"), py::arg("scale_y"),
       "2D Fourier coefficients of a field sampled on the periodic box");

    m.def("inverse", [](py::array_t<std::complex<double>,
                                    py::array::c_style | py::array::forcecast> F,
                        double lx, double ly) {
        if (F.ndim() != 2) throw std::invalid_argument("expected a 2D array (ny, nx)");
        int ny = static_cast<int>(F.shape(0));
        int nx = static_cast<int>(F.shape(1));
        SpectralField s(make_grid(nx, ny, lx, ly));
        std::copy(F.data(), F.data() + s.coef.size(), s.coef.begin());
        RealField f = inverse(s);
        py::array_t<double> out({ny, nx});
        std::copy(f.values.begin(), f.values.end(), out.mutable_data());
        return out;
    }, py::arg("F"), py::arg("scale_x"), py::arg("scale_y"));

    m.def("mass", [](py::array_t<double, py::array::c_style | py::array::forcecast> u,
                     double lx, double ly) {
        return mass(forward(field_from_array(u, lx, ly)));
    }, py::arg("u"), py::arg("scale_x"), py::arg("scale_y"), "L2 norm via Parseval");

    m.def("energy", [](py::array_t<double, py::array::c_style | py::array::forcecast> u,
                       long p, long q, int lam, double lx, double ly) {
        return energy(forward(field_from_array(u, lx, ly)), Rational{p, q}, lam);
    }, py::arg("u"), py::arg("p"), py::arg("q"), py::arg("lambda_"),
       py::arg("scale_x"), py::arg("scale_y"));

    m.def("fit_log_power", [](std::vector<double> t, std::vector<double> v, int k_last,
                              std::array<double, 3> guess) {
        NormTrace tr;
        for (std::size_t i = 0; i < t.size(); ++i) tr.push(t[i], v[i]);
        return fit_dict(fit_log_power(tr, k_last, guess));
    }, py::arg("t"), py::arg("v"), py::arg("k_last"), py::arg("guess"));

    m.def("predict_rates", [](long p, long q) {
        RatePrediction r = predict_rates(Rational{p, q});
        py::dict d;
        d["regime"] = to_string(r.regime);
        d["linf_exp"] = r.linf_exp;
        d["l2uy_exp"] = r.l2uy_exp;
        d["l2uy_sq_exp"] = r.l2uy_sq_exp;
        return d;
    }, py::arg("p"), py::arg("q"));

    m.def("preset_names", [] {
        std::vector<std::string> names;
        for (const auto& p : preset_registry()) names.push_back(p.name);
        return names;
    });

    m.def("run_preset", [](const std::string& name, const std::string& output_dir,
                           int scale_factor, int threads, bool deterministic) {
        RunOptions opt;
        opt.output_dir = output_dir;
        opt.scale_factor = scale_factor;
        opt.threads = threads;
        opt.deterministic = deterministic;
        ExitReport rep = run_preset(name, opt);
        py::dict d;
        d["reason"] = to_string(rep.reason);
        d["exit_code"] = rep.exit_code;
        d["t_final"] = rep.t_final;
        d["report_path"] = rep.report_path;
        py::list fits;
        for (const auto& f : rep.fits) fits.append(fit_dict(f));
        d["fits"] = fits;
        return d;
    }, py::arg("name"), py::arg("output_dir"), py::arg("scale_factor") = 1,
       py::arg("threads") = 1, py::arg("deterministic") = false);
}
