// Copyright 2026 The ueks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ueks/distributions.hpp"
#include "ueks/efficiency.hpp"
#include "ueks/errors.hpp"
#include "ueks/kernels.hpp"
#include "ueks/large_deviation.hpp"
#include "ueks/montecarlo.hpp"
#include "ueks/sample.hpp"
#include "ueks/statistics.hpp"

namespace py = pybind11;

namespace {

py::dict side_dict(const ueks::sup_result& r) {
  py::dict d;
  d["value"] = r.value;
  d["argmax_t"] = r.argmax_t;
  return d;
}

py::dict statistic(const std::string& test, std::vector<double> values, const std::string& side,
                   const std::optional<std::string>& reference, bool center) {
  ueks::statistic_options opt;
  if (reference) opt.reference = ueks::distribution::parse(*reference);
  opt.center = center;
  const ueks::sample s(std::move(values));
  ueks::statistic_evaluator ev(test, opt);
  const ueks::side_values v = ev.evaluate(s.values());
  py::dict d;
  d["test"] = test;
  d["n"] = s.size();
  const ueks::sup_result& r = v.get(ueks::parse_side(side));
  d["side"] = side;
  d["value"] = r.value;
  d["argmax_t"] = r.argmax_t;
  d["plus"] = side_dict(v.plus);
  d["minus"] = side_dict(v.minus);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "U-empirical Kolmogorov-Smirnov statistics, rates and efficiencies";

  static py::exception<ueks::error> base(m, "UeksError", PyExc_ValueError);
  static py::exception<ueks::tie_error> ties(m, "TieError", base.ptr());
  static py::exception<ueks::size_error> size(m, "SizeError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ueks::tie_error& e) {
      py::set_error(ties, e.what());
    } catch (const ueks::size_error& e) {
      py::set_error(size, e.what());
    } catch (const ueks::error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("statistic", &statistic, py::arg("test"), py::arg("values"),
        py::arg("side") = "two-sided", py::arg("reference") = py::none(),
        py::arg("center") = false,
        "Exact supremum statistic. Values must be free of ties.");

  m.def("test_ids", [] {
    std::vector<std::string> ids;
    for (auto id : ueks::builtin_ids()) ids.emplace_back(id);
    return ids;
  });

  m.def("draw",
        [](const std::string& dist, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          return ueks::draw(ueks::distribution::parse(dist), n, seed, stream);
        },
        py::arg("dist"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

  m.def("cdf", [](const std::string& dist, double x) {
    return ueks::distribution::parse(dist).cdf(x);
  });
  m.def("quantile", [](const std::string& dist, double p) {
    return ueks::distribution::parse(dist).quantile(p);
  });

  m.def("variance", [](const std::string& test, double t) {
    return ueks::variance_at(ueks::builtin_family(test), t);
  });
  m.def("projection", [](const std::string& test, double s, double t) {
    return ueks::projection(ueks::builtin_family(test), s, t);
  });
  m.def("kernel", [](const std::string& test, std::vector<double> args, double t) {
    return ueks::eval_kernel(ueks::builtin_family(test), args, t);
  });

  m.def("maximize_variance", [](const std::string& test) {
    const auto r = ueks::maximize_variance(ueks::builtin_family(test));
    return py::make_tuple(r.t_star, r.phi0_sq);
  });
  m.def("leading_coeff", [](const std::string& test) {
    return ueks::ld_leading_coeff(ueks::builtin_family(test)).leading_coeff;
  });
  m.def("kolmogorov_f", &ueks::kolmogorov_f, py::arg("a"), py::arg("t"));
  m.def("kolmogorov_f0", &ueks::kolmogorov_f0, py::arg("a"));
  m.def("arcones_bound", &ueks::arcones_bound, py::arg("n"), py::arg("z"), py::arg("m"),
        py::arg("sigma_sq"), py::arg("M"));
  m.def("binomial_tail_bound", &ueks::binomial_tail_bound, py::arg("n"), py::arg("N"),
        py::arg("tau"));

  m.def("kl_divergence", [](const std::string& f, const std::string& g) {
    return ueks::kl_divergence(ueks::distribution::parse(f), ueks::distribution::parse(g));
  });
  m.def("min_kl_to_null", [](const std::string& alt, const std::string& family) {
    return ueks::min_kl_to_null(ueks::distribution::parse(alt), ueks::parse_null_family(family))
        .divergence;
  });
  m.def("population_limit", [](const std::string& test, const std::string& alt) {
    return ueks::population_limit(test, ueks::distribution::parse(alt));
  });
  m.def("local_efficiency", [](const std::string& test, const std::string& alt) {
    const auto r = ueks::local_efficiency(test, ueks::alternative_family::builtin(alt));
    py::dict d;
    d["test"] = r.test_id;
    d["alternative"] = r.alt_id;
    d["slope_coeff"] = r.slope_coeff;
    d["kl_coeff"] = r.kl_coeff;
    d["efficiency"] = r.efficiency;
    d["flags"] = r.flags;
    return d;
  });

  py::class_<ueks::null_simulation>(m, "NullSimulation")
      .def_readonly("test", &ueks::null_simulation::test_id)
      .def_readonly("n", &ueks::null_simulation::n)
      .def_readonly("reps", &ueks::null_simulation::reps)
      .def_readonly("seed", &ueks::null_simulation::seed)
      .def_readonly("values", &ueks::null_simulation::values)
      .def("critical_value", &ueks::critical_value, py::arg("alpha"))
      .def("p_value", &ueks::p_value, py::arg("observed"));

  m.def("simulate_null",
        [](const std::string& test, std::size_t n, std::size_t reps, std::uint64_t seed,
           const std::string& side, unsigned threads) {
          ueks::simulation_options opt;
          opt.which = ueks::parse_side(side);
          opt.threads = threads;
          py::gil_scoped_release release;
          return ueks::simulate_null(test, n, reps, seed, opt);
        },
        py::arg("test"), py::arg("n"), py::arg("reps"), py::arg("seed"),
        py::arg("side") = "two-sided", py::arg("threads") = 0);
}
