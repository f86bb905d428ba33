#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modwin/extensions.hpp"
#include "modwin/io.hpp"
#include "modwin/lcc.hpp"
#include "modwin/policy.hpp"
#include "modwin/scenarios.hpp"

namespace py = pybind11;
using namespace modwin;
using io::json;

namespace {

Window window_of(const std::string& w) { return w.empty() ? Window::all() : io::window(io::parse_text(w)); }

std::string lcc(const std::string& pop, const std::string& method) {
    Population p = io::population(io::parse_text(pop));
    require_valid(p);
    if (method == "exact") return io::to_json(lcc_exact(p)).dump();
    if (method == "theta-one") return io::to_json(lcc_theta_one(p)).dump();
    if (method == "core") return io::to_json(mutually_compatible_core(p)).dump();
    if (method == "one-sided") return io::to_json(lcc_one_sided(p)).dump();
    throw std::invalid_argument("unknown method " + method);
}

std::string fair_limit(const std::string& pop, const std::string& window) {
    json j = io::parse_text(pop);
    Window w = window_of(window);
    if (io::is_stacked(j)) return io::to_json(fair_limit_min_quotient(io::stacked(j), w)).dump();
    return io::to_json(fair_limit_min(io::population(j), w)).dump();
}

std::string best_window(const std::string& pop, unsigned jobs) {
    json j = io::parse_text(pop);
    if (io::is_stacked(j)) return io::to_json(best_guaranteed_window(io::stacked(j), jobs)).dump();
    return io::to_json(best_guaranteed_window(io::population(j), jobs)).dump();
}

std::string simulate_json(const std::string& pop, const std::string& window, const std::string& schedule, long horizon) {
    json j = io::parse_text(pop);
    Population p = io::is_stacked(j) ? io::stacked(j).expand() : io::population(j);
    require_valid(p);
    return io::to_json(simulate(p, Policy::fixed(window_of(window)), io::schedule(io::parse_text(schedule)), horizon))
        .dump();
}

std::string compete(const std::string& cfg, int focus) {
    json j = io::parse_text(cfg);
    if (io::is_stacked(j)) return io::to_json(multi_fair_limit_quotient(io::stacked_competition(j), focus)).dump();
    return io::to_json(multi_fair_limit(io::competition(j), focus)).dump();
}

std::string robust(const std::string& pop, const std::string& window, int k, unsigned jobs) {
    RobustReport r = robust_size(io::population(io::parse_text(pop)), window_of(window), k, jobs);
    return json{{"robust_size", r.robust_size}, {"worst", io::to_json(r.worst)}, {"shocks_evaluated", r.shocks_evaluated}}
        .dump();
}

std::string scenario(const std::string& name, int n, const std::string& theta, std::uint64_t seed) {
    namespace sc = modwin::scenarios;
    auto th = [&](Rational d) { return theta.empty() ? d : Rational::parse(theta); };
    auto size = [&](int d) { return n > 0 ? n : d; };
    if (name == "five-user") return io::to_json(sc::five_user()).dump();
    if (name == "trolls") return io::to_json(sc::trolls(size(12), th(Rational(1, 2)))).dump();
    if (name == "ideological") return io::to_json(sc::ideological(size(20), 1).pop).dump();
    if (name == "insurgency") return io::to_json(sc::insurgency(size(40), Rational(1, 10))).dump();
    if (name == "cycling-single") return io::to_json(sc::cycling_single(size(20))).dump();
    if (name == "adversaries") return io::to_json(sc::adversaries_example()).dump();
    if (name == "robust-family") return io::to_json(sc::robust_family(size(9), th(Rational(1, 2)))).dump();
    if (name == "one-sided-random") return io::to_json(sc::one_sided_random(size(8), th(Rational(1, 2)), seed)).dump();
    if (name == "mutual-random") return io::to_json(sc::mutual_random(size(8), 1, 1, seed)).dump();
    throw std::invalid_argument("unknown scenario " + name);
}

std::string expand(const std::string& fp) {
    return io::to_json(expand_frequencies(io::freq_population(io::parse_text(fp)))).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<io::input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<cap_exceeded>(m, "CapExceeded", PyExc_RuntimeError);
    m.def("lcc", &lcc, py::arg("population"), py::arg("method") = "exact");
    m.def("fair_limit", &fair_limit, py::arg("population"), py::arg("window") = "");
    m.def("best_window", &best_window, py::arg("population"), py::arg("jobs") = 1);
    m.def("simulate", &simulate_json, py::arg("population"), py::arg("window"), py::arg("schedule"),
          py::arg("horizon"));
    m.def("compete", &compete, py::arg("config"), py::arg("focus") = 0);
    m.def("robust", &robust, py::arg("population"), py::arg("window"), py::arg("k"), py::arg("jobs") = 1);
    m.def("scenario", &scenario, py::arg("name"), py::arg("n") = 0, py::arg("theta") = "", py::arg("seed") = 0);
    m.def("expand_frequencies", &expand, py::arg("population"));
}
