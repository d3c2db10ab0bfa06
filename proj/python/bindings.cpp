// Python entry points. Configs and results cross the boundary as JSON text;
// the package wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "equitheta/cli.hpp"
#include "equitheta/cohomcheck.hpp"
#include "equitheta/errors.hpp"
#include "equitheta/harness.hpp"
#include "equitheta/lfun.hpp"
#include "equitheta/serialize.hpp"

namespace py = pybind11;
using namespace equitheta;
using serialize::json;

namespace {

lfun::LDataRequest parse_request(const std::string& config) {
    const json j = json::parse(config);
    auto req = serialize::request_from_json(j);
    if (!j.contains("S0")) {
        req.s0 = {ffq::Place::infinity()};
        for (const auto& v : req.model->ramified())
            if (!v.is_infinite()) req.s0.push_back(v);
    }
    return req;
}

std::string theta(const std::string& config) { return serialize::to_json(lfun::theta(parse_request(config))).dump(); }

std::string special_values(const std::string& config, int n) {
    const auto th = lfun::theta(parse_request(config));
    json out = {{"theta_special", serialize::to_json(lfun::theta_special(th, n))}};
    if (!th.is_rational()) out["twist_project"] = serialize::to_json(lfun::twist_project(th, n));
    return out.dump();
}

std::string predict_h2(const std::string& config, int n, int ell, int k, const std::string& witnesses) {
    const auto base = parse_request(config);
    std::vector<std::vector<ffq::Place>> w;
    for (const auto& t0 : json::parse(witnesses)) {
        std::vector<ffq::Place> places;
        for (const auto& v : t0) places.push_back(serialize::place_from_json(base.model->ring(), v));
        w.push_back(std::move(places));
    }
    return serialize::to_json(cohom::predict_h2(base, n, ell, k, w)).dump();
}

std::string fitlab(const std::string& property, std::uint64_t seed, int count) {
    harness::Config cfg;
    cfg.seed = seed;
    cfg.count = count;
    json out = json::array();
    for (const auto& r : harness::run(property, cfg))
        out.push_back({{"property", r.property},
                       {"seed", r.seed},
                       {"index", r.index},
                       {"instance", json::parse(r.instance)},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"pass", r.pass}});
    return out.dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> all{"equitheta"};
    all.insert(all.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : all) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = 0;
    {
        py::gil_scoped_release release;
        code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_equitheta, m) {
    m.doc() = "Equivariant L-functions of abelian extensions of F_q(t) and Fitting-ideal checks";

    auto base = py::register_exception<Error>(m, "EquithetaError", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<StabilizationFailure>(m, "StabilizationFailure", base.ptr());
    py::register_exception<NumericFailure>(m, "NumericFailure", base.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

    m.def("theta", &theta, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("special_values", &special_values, py::arg("config"), py::arg("n"),
          py::call_guard<py::gil_scoped_release>());
    m.def("predict_h2", &predict_h2, py::arg("config"), py::arg("n"), py::arg("ell"), py::arg("k"),
          py::arg("witnesses"), py::call_guard<py::gil_scoped_release>());
    m.def("fitlab", &fitlab, py::arg("property"), py::arg("seed"), py::arg("count"),
          py::call_guard<py::gil_scoped_release>());
    m.def("properties", &harness::property_names);
    m.def("run_cli", &run_cli, py::arg("args"));
}
