#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qact/actions.hpp"
#include "qact/error.hpp"
#include "qact/report.hpp"
#include "qact/siegel.hpp"

namespace py = pybind11;
using namespace qact;

namespace {

IntMatrix to_int_matrix(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) fail(ErrorKind::InvalidParameter, "empty matrix");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) fail(ErrorKind::InvalidParameter, "ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<long>> from_int_matrix(const IntMatrix& m) {
    std::vector<std::vector<long>> rows(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

std::vector<NamedMatrix> to_generators(const std::vector<std::pair<std::string, std::vector<std::vector<long>>>>& gens) {
    std::vector<NamedMatrix> out;
    for (const auto& [name, rows] : gens) out.push_back({name, to_int_matrix(rows)});
    return out;
}

report::Options to_options(const py::dict& d) {
    report::Options o;
    for (auto [k, v] : d) {
        const auto key = k.cast<std::string>();
        if (key == "n") o.n = v.cast<int>();
        else if (key == "group") o.group = v.cast<std::string>();
        else if (key == "signature") o.signature = v.cast<std::string>();
        else if (key == "ske_file") o.ske_file = v.cast<std::string>();
        else if (key == "family") o.family = v.cast<std::string>();
        else if (key == "param") o.param = v.cast<int>();
        else if (key == "subgroup") o.subgroup = v.cast<std::string>();
        else if (key == "fixture") o.fixture = v.cast<std::string>();
        else if (key == "seed") o.seed = v.cast<unsigned>();
        else if (key == "a") o.a = v.cast<std::string>();
        else if (key == "b") o.b = v.cast<std::string>();
        else if (key == "count_orbits") o.count_orbits = v.cast<bool>();
        else if (key == "max_b") o.max_b = v.cast<int>();
        else if (key == "max_periods") o.max_periods = v.cast<int>();
        else if (key == "starts") o.starts = v.cast<int>();
        else if (key == "tol") o.tol = v.cast<double>();
        else if (key == "t") o.t = v.cast<std::string>();
        else if (key == "verify") o.verify = v.cast<bool>();
        else if (key == "samples") o.samples = v.cast<int>();
        else if (key == "update") o.update = v.cast<bool>();
        else if (key == "expected_dir") o.expected_dir = v.cast<std::string>();
        else fail(ErrorKind::InvalidParameter, "unknown option " + key);
    }
    if (o.n < 3 || o.n > 7) fail(ErrorKind::InvalidParameter, "n must lie in 3..7");
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quaternion group actions: native core";

    py::register_exception<Error>(m, "QactError", PyExc_ValueError);

    m.def(
        "run_report",
        [](const std::string& command, const py::dict& options) {
            const auto o = to_options(options);
            report::Outcome out;
            if (command == "groups") out = report::groups(o);
            else if (command == "chars") out = report::chars(o);
            else if (command == "decompose") out = report::decompose(o);
            else if (command == "classify") out = report::classify(o);
            else if (command == "families") out = report::families(o);
            else if (command == "genus-zero") out = report::genus_zero(o);
            else if (command == "quotient") out = report::quotient(o);
            else if (command == "extend") out = report::extend(o);
            else if (command == "curve") out = report::curve(o);
            else if (command == "reproduce") out = report::reproduce(o);
            else if (command.rfind("siegel ", 0) == 0) out = report::siegel(o, command.substr(7));
            else fail(ErrorKind::InvalidParameter, "unknown command " + command);
            return py::make_tuple(out.ok, out.results.dump());
        },
        py::arg("command"), py::arg("options"), "Run a report; returns (ok, JSON text).");

    m.def("genus", [](int order, const std::string& signature) {
        auto g = genus_from_signature(order, Signature::parse(signature));
        return g ? py::object(py::int_(*g)) : py::object(py::none());
    }, py::arg("order"), py::arg("signature"), "Riemann-Hurwitz genus, or None if not an integer >= 2.");

    m.def("symplectic_form", [](int g) { return from_int_matrix(symplectic_form(g)); }, py::arg("g"));
    m.def("is_symplectic", [](const std::vector<std::vector<long>>& r) { return is_symplectic(to_int_matrix(r)); },
          py::arg("matrix"));
    m.def("in_siegel_space", [](const ComplexMatrix& z, double tol) { return in_siegel_space(z, tol); }, py::arg("z"),
          py::arg("tol") = 1e-10);
    m.def("act", [](const std::vector<std::vector<long>>& r, const ComplexMatrix& z) { return act(to_int_matrix(r), z); },
          py::arg("matrix"), py::arg("z"), "(AZ + B)(CZ + D)^-1");
    m.def(
        "fixed_point_residual",
        [](const std::vector<std::pair<std::string, std::vector<std::vector<long>>>>& gens, const ComplexMatrix& z) {
            return verify_fixed_point_numeric(to_generators(gens), z);
        },
        py::arg("generators"), py::arg("z"));
    m.def(
        "fixed_locus_dimension",
        [](const std::vector<std::pair<std::string, std::vector<std::vector<long>>>>& gens, int starts, unsigned seed) {
            LocusOptions lo;
            lo.starts = starts;
            lo.seed = seed;
            auto r = fixed_locus_dimension(to_generators(gens), lo);
            py::dict d;
            d["dimension"] = r.dimension;
            d["point"] = r.point;
            d["residual"] = r.residual;
            d["singular_values"] = r.singular_values;
            d["cross_validated"] = r.cross_validated;
            return d;
        },
        py::arg("generators"), py::arg("starts") = 16, py::arg("seed") = 1);
    m.def(
        "load_fixture",
        [](const std::string& name) {
            auto fx = load_fixture(name);
            py::dict d;
            d["name"] = fx.name;
            d["path"] = fx.path;
            d["g"] = fx.g;
            py::list gens;
            for (const auto& g : fx.generators) gens.append(py::make_tuple(g.name, from_int_matrix(g.matrix)));
            d["generators"] = gens;
            d["target"] = fx.target;
            d["target_order"] = fx.target_order;
            d["relators"] = fx.relators;
            py::list fams;
            for (const auto& f : fx.families) fams.append(f.label);
            d["families"] = fams;
            d["expected_dimension"] = fx.expected_dimension ? py::object(py::int_(*fx.expected_dimension)) : py::object(py::none());
            d["sha256"] = fx.sha256;
            return d;
        },
        py::arg("name"));
    m.def("fixture_dir", &default_fixture_dir);
}
