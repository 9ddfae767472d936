#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fglthh/errors.hpp"
#include "fglthh/report.hpp"

namespace py = pybind11;
using namespace fglthh;

namespace {

Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::object to_py(const Integer& n) { return py::module_::import("builtins").attr("int")(n.get_str()); }

IntMatrix to_matrix(const py::sequence& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? py::len(rows[0]) : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const py::sequence row = rows[i];
    if (row.size() != c) throw py::value_error("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = to_integer(row[j]);
  }
  return m;
}

py::dict group_dict(const FinAbGroup& g) {
  py::list inv, prim;
  for (const auto& d : g.invariant_factors) inv.append(to_py(d));
  for (const auto& d : g.primary()) prim.append(to_py(d));
  py::dict out;
  out["free_rank"] = g.free_rank;
  out["invariant_factors"] = inv;
  out["primary"] = prim;
  return out;
}

py::object json_to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

RunConfig make_config(const std::string& command, const std::string& flavor, long prime, int truncation,
                      std::optional<std::int64_t> max_degree, std::optional<int> max_n, bool unsafe) {
  RunConfig c;
  c.command = command;
  c.flavor = parse_flavor(flavor);
  c.prime = prime;
  c.truncation = truncation;
  c.max_degree = max_degree;
  c.max_n = max_n;
  c.unsafe_large_prime = unsafe;
  return c;
}

}  // namespace

PYBIND11_MODULE(_fglthh, m) {
  m.doc() = "Formal group laws, Hopf algebroids and sigma-cohomology of THH(MU) and THH(BP)";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);
  py::register_exception<IntegralityError>(m, "IntegralityError", PyExc_ArithmeticError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);

  m.attr("SCHEMA") = kSchema;

  m.def(
      "report",
      [](const std::string& command, const std::string& flavor, long prime, int truncation,
         std::optional<std::int64_t> max_degree, std::optional<int> max_n, bool unsafe_large_prime) {
        const RunConfig c = make_config(command, flavor, prime, truncation, max_degree, max_n, unsafe_large_prime);
        Json doc;
        {
          py::gil_scoped_release release;
          doc = build_report(c);
        }
        return json_to_py(doc);
      },
      py::arg("command"), py::arg("flavor") = "mu-moving", py::arg("prime") = 2, py::arg("truncation") = 12,
      py::arg("max_degree") = py::none(), py::arg("max_n") = py::none(), py::arg("unsafe_large_prime") = false,
      "Build a report document (the JSON the command-line tool emits) as a dict.");

  m.def(
      "render",
      [](const std::string& command, const std::string& format, const std::string& flavor, long prime, int truncation,
         std::optional<std::int64_t> max_degree, std::optional<int> max_n) {
        RunConfig c = make_config(command, flavor, prime, truncation, max_degree, max_n, false);
        c.format = parse_format(format);
        return render(build_report(c), c.format);
      },
      py::arg("command"), py::arg("format") = "text", py::arg("flavor") = "mu-moving", py::arg("prime") = 2,
      py::arg("truncation") = 12, py::arg("max_degree") = py::none(), py::arg("max_n") = py::none());

  m.def(
      "sigma",
      [](const std::string& flavor, int n, int truncation, long prime) {
        const Flavor f = parse_flavor(flavor);
        if (f == Flavor::BP) return sigma_table_bp(hazewinkel_generators(prime, n)).on_base(n).to_text();
        if (n > truncation) throw DomainError("n exceeds the truncation");
        return sigma_table_mu(MUAlgebroid(truncation), f).on_base(n).to_text();
      },
      py::arg("flavor"), py::arg("n"), py::arg("truncation") = 12, py::arg("prime") = 2,
      "sigma of the n-th polynomial generator, as text.");

  m.def(
      "eta_R",
      [](int n, int truncation) { return MUAlgebroid(truncation).eta_R_x(n).to_text(); }, py::arg("n"),
      py::arg("truncation") = 12, "Right unit on x_n, as text.");

  m.def(
      "cohomology",
      [](const std::string& flavor, std::optional<std::int64_t> max_degree, int truncation, long prime) {
        const Flavor f = parse_flavor(flavor);
        CohomologyTable t;
        {
          py::gil_scoped_release release;
          if (f == Flavor::BP) {
            t = bp_cohomology_table(prime);
            if (max_degree && *max_degree + 1 < static_cast<std::int64_t>(t.degrees.size()))
              t.degrees.resize(static_cast<std::size_t>(*max_degree + 1));
          } else {
            t = cohomology_groups(sigma_table_mu(MUAlgebroid(truncation), f), max_degree.value_or(10));
          }
        }
        py::list out;
        for (const auto& d : t.degrees) out.append(group_dict(d.group));
        return out;
      },
      py::arg("flavor") = "mu-moving", py::arg("max_degree") = py::none(), py::arg("truncation") = 12, py::arg("prime") = 2,
      "Cohomology groups by degree, each as {free_rank, invariant_factors, primary}.");

  m.def(
      "smith_diagonal", [](const py::sequence& rows) {
        py::list out;
        for (const auto& d : smith_diagonal(to_matrix(rows))) out.append(to_py(d));
        return out;
      },
      py::arg("matrix"), "Nonzero invariant factors of an integer matrix.");

  m.def(
      "homology", [](const py::sequence& d_in, const py::sequence& d_out) {
        return group_dict(subquotient_group(to_matrix(d_in), to_matrix(d_out)));
      },
      py::arg("d_in"), py::arg("d_out"), "ker(d_out) / im(d_in) as a finitely generated abelian group.");

  m.def("thread_cap", &thread_cap);
}
