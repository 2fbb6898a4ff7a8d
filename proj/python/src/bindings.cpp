// Copyright 2026 The ccx Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ccx/cli.hpp"
#include "ccx/io.hpp"
#include "ccx/km.hpp"
#include "ccx/random.hpp"

namespace py = pybind11;
using namespace ccx;

namespace {

py::dict report_dict(const ExtremalityReport& r, const CPMap& phi, const GroupAction& act, const Tolerances& tol) {
  py::dict out;
  out["verdict"] = to_string(r.verdict);
  out["certificate"] = r.certificate;
  out["commutant_dim"] = r.commutant_dim;
  out["samples_tested"] = r.samples_tested;
  out["samples_unknown"] = r.samples_unknown;
  if (r.witness) {
    py::dict w;
    w["T"] = r.witness->T;
    w["alpha"] = r.witness->alpha;
    w["T1"] = r.witness->split.T1;
    w["T2"] = r.witness->split.T2;
    w["phi1"] = r.witness->split.phi1;
    w["phi2"] = r.witness->split.phi2;
    w["verified"] = verify_witness(phi, act, *r.witness, tol);
    out["witness"] = w;
  } else {
    out["witness"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Group-invariant unital completely positive maps and their C*-extreme points.";

  static py::exception<Error> error(m, "CcxError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("psd_floor", &Tolerances::psd_floor)
      .def_readwrite("rank_cut", &Tolerances::rank_cut)
      .def_readwrite("eq_tol", &Tolerances::eq_tol)
      .def_readwrite("herm_tol", &Tolerances::herm_tol);

  py::class_<StarAlgebra>(m, "StarAlgebra")
      .def(py::init<std::vector<int>>(), py::arg("block_dims"))
      .def_property_readonly("block_dims", &StarAlgebra::block_dims)
      .def_property_readonly("ambient_dim", &StarAlgebra::ambient_dim)
      .def_property_readonly("basis_size", &StarAlgebra::basis_size)
      .def("basis_unit", &StarAlgebra::basis_unit)
      .def("unit_name", &StarAlgebra::unit_name)
      .def("__repr__", [](const StarAlgebra& a) {
        std::string s = "StarAlgebra([";
        for (size_t i = 0; i < a.block_dims().size(); ++i) s += (i ? ", " : "") + std::to_string(a.block_dims()[i]);
        return s + "])";
      });

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def(py::init<std::vector<std::vector<int>>, int>(), py::arg("table"), py::arg("identity"))
      .def_static("trivial", &FiniteGroup::trivial)
      .def_static("cyclic", &FiniteGroup::cyclic)
      .def_static("product", &FiniteGroup::product)
      .def_static("symmetric3", &FiniteGroup::symmetric3)
      .def_property_readonly("order", &FiniteGroup::order)
      .def("multiply", &FiniteGroup::multiply)
      .def("inverse", &FiniteGroup::inverse);

  py::class_<GroupAction>(m, "GroupAction")
      .def_static("inner", &GroupAction::inner, py::arg("group"), py::arg("algebra"), py::arg("unitaries"))
      .def_static("general", &GroupAction::general, py::arg("group"), py::arg("algebra"), py::arg("maps"))
      .def_static("trivial", &GroupAction::trivial, py::arg("algebra"))
      .def_property_readonly("group", &GroupAction::group)
      .def_property_readonly("algebra", &GroupAction::algebra)
      .def("apply", [](const GroupAction& a, int g, const CMatrix& x) { return apply_action(a, g, x); })
      .def("validate", [](const GroupAction& a, const Tolerances& tol) { return validate_action(a, tol).failures; },
           py::arg("tol") = Tolerances{});

  py::class_<CPMap>(m, "CPMap")
      .def_static("from_choi", &CPMap::from_choi, py::arg("domain"), py::arg("d"), py::arg("blocks"),
                  py::arg("tol") = Tolerances{})
      .def_static("from_kraus", &CPMap::from_kraus, py::arg("domain"), py::arg("d"), py::arg("kraus"),
                  py::arg("tol") = Tolerances{})
      .def_property_readonly("domain", &CPMap::domain)
      .def_property_readonly("codomain_dim", &CPMap::codomain_dim)
      .def_property_readonly("choi_blocks", &CPMap::choi_blocks)
      .def_property_readonly("kraus", &CPMap::kraus)
      .def_property_readonly("images", &CPMap::images)
      .def("__call__", &CPMap::apply);

  m.def("identity_map", &identity_map);
  m.def("conjugation_map", &conjugation_map, py::arg("algebra"), py::arg("W"));
  m.def("state_inflation", &state_inflation, py::arg("algebra"), py::arg("rho"), py::arg("d"));
  m.def("choi_distance", &choi_distance);
  m.def(
      "validate_map",
      [](const CPMap& phi, const GroupAction* act, const Tolerances& tol) {
        const MapValidation v = validate_map(phi, act, tol);
        py::dict out;
        out["cp"] = v.cp;
        out["unital"] = v.unital;
        out["invariant"] = v.invariant ? py::cast(*v.invariant) : py::none();
        return out;
      },
      py::arg("phi"), py::arg("action") = nullptr, py::arg("tol") = Tolerances{});
  m.def("twirl", &twirl, py::arg("phi"), py::arg("action"), py::arg("tol") = Tolerances{});
  m.def(
      "cstar_combine",
      [](const std::vector<std::pair<CMatrix, CPMap>>& terms, const Tolerances& tol) {
        CCombination c;
        for (const auto& [t, phi] : terms) c.terms.push_back({t, phi});
        return cstar_combine(c, tol);
      },
      py::arg("terms"), py::arg("tol") = Tolerances{});

  py::class_<StinespringTriple>(m, "StinespringTriple")
      .def_readonly("dilation_dim", &StinespringTriple::dilation_dim)
      .def_readonly("multiplicities", &StinespringTriple::multiplicities)
      .def_readonly("V", &StinespringTriple::V)
      .def_readonly("minimal", &StinespringTriple::minimal)
      .def("pi", &StinespringTriple::pi);
  m.def("minimal_dilation", &minimal_dilation, py::arg("phi"), py::arg("tol") = Tolerances{});
  m.def(
      "covariant_unitaries",
      [](const CPMap& phi, const StinespringTriple& t, const GroupAction& act, const Tolerances& tol) {
        return covariant_unitaries(phi, t, act, tol).U;
      },
      py::arg("phi"), py::arg("triple"), py::arg("action"), py::arg("tol") = Tolerances{});

  m.def(
      "rn_forward",
      [](const CPMap& phi, const GroupAction& act, const CMatrix& t, const Tolerances& tol) {
        const RNContext ctx = build_context(phi, act, tol);
        return rn_forward(ctx, make_operator(ctx, t, tol), tol).map;
      },
      py::arg("phi"), py::arg("action"), py::arg("T"), py::arg("tol") = Tolerances{});
  m.def(
      "rn_inverse",
      [](const CPMap& phi, const GroupAction& act, const CPMap& psi, const Tolerances& tol) {
        return rn_inverse(build_context(phi, act, tol), psi, tol).op.T;
      },
      py::arg("phi"), py::arg("action"), py::arg("psi"), py::arg("tol") = Tolerances{});
  m.def(
      "extremality",
      [](const CPMap& phi, const GroupAction& act, int samples, std::uint64_t seed, const Tolerances& tol) {
        const ExtremalityReport r = extremality_verdict(phi, act, Budget{samples, seed, 6}, tol);
        return report_dict(r, phi, act, tol);
      },
      py::arg("phi"), py::arg("action"), py::arg("samples") = 16, py::arg("seed") = 0,
      py::arg("tol") = Tolerances{});
  m.def("linear_extremality_check", &linear_extremality_check, py::arg("phi"), py::arg("tol") = Tolerances{});

  py::class_<FixedPointContext>(m, "FixedPointContext")
      .def_readonly("block_form", &FixedPointContext::block_form)
      .def_readonly("multiplicities", &FixedPointContext::multiplicities)
      .def_readonly("units", &FixedPointContext::units);
  m.def("fixed_point_algebra", &fixed_point_algebra, py::arg("action"), py::arg("tol") = Tolerances{});
  m.def("restrict_E", &restrict_E, py::arg("phi"), py::arg("ctx"), py::arg("tol") = Tolerances{});
  m.def("extend_Einv", &extend_Einv, py::arg("psi"), py::arg("ctx"), py::arg("tol") = Tolerances{});

  m.def(
      "random_invariant_ucp",
      [](const GroupAction& act, int d, int rank, std::uint64_t seed, const Tolerances& tol) {
        Rng rng(seed);
        return twirl(random_ucp(rng, act.algebra(), d, rank, tol), act, tol);
      },
      py::arg("action"), py::arg("d"), py::arg("rank"), py::arg("seed"), py::arg("tol") = Tolerances{});

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ccx");
        std::vector<const char*> argv;
        for (const std::string& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in process; returns (exit_code, stdout, stderr).");
}
