#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "permutadkit/bar_construction.hpp"
#include "permutadkit/homotopy_relations.hpp"
#include "permutadkit/per_operads.hpp"

namespace py = pybind11;
using namespace permutadkit;

namespace {

py::dict betti_dict(const std::map<int, int>& b) {
    py::dict d;
    for (const auto& [deg, v] : b) d[py::int_(deg)] = v;
    return d;
}

std::string koszulity_report_json(const std::string& target, int nmax) {
    QuadraticPresentation pres;
    std::string name = target;
    if (target == "peras")
        pres = terminal_presentation();
    else if (target == "twisted")
        pres = twisted_presentation();
    else {
        pres = presentation_from_json(target);
        name = "custom"; // the raw body must not be embedded in the report
    }
    pres.truncation = std::max(pres.truncation, nmax);
    auto rep = koszulity_check(pres, nmax, name);

    // compact report with the CLI schema
    std::ostringstream os;
    os << "{\"target\":\"" << rep.target << "\",\"nmax\":" << rep.nmax << ",\"per_arity\":[";
    for (std::size_t i = 0; i < rep.per_arity.size(); ++i) {
        const auto& item = rep.per_arity[i];
        os << (i ? "," : "") << "{\"n\":" << item.n << ",\"dims\":[";
        for (std::size_t j = 0; j < item.dims.size(); ++j)
            os << (j ? "," : "") << item.dims[j];
        os << "],\"d_squared_zero\":" << (item.d_squared_zero ? "true" : "false")
           << ",\"h0_expected\":" << item.h0_expected << ",\"betti\":{";
        bool first = true;
        for (const auto& [d, v] : item.betti) {
            os << (first ? "" : ",") << "\"" << d << "\":" << v;
            first = false;
        }
        os << "},\"ok\":" << (item.ok ? "true" : "false") << "}";
    }
    os << "],\"verdict\":\"" << (rep.koszul ? "koszul" : "not-koszul") << "\"}";
    return os.str();
}

} // namespace

PYBIND11_MODULE(_permutadkit, m) {
    m.doc() = "exact computations with shuffle algebras, their Koszul duals, and the "
              "operads of the underlying combinatorial category";

    py::class_<Surjection>(m, "Surjection")
        .def(py::init<std::vector<int>>())
        .def("images", &Surjection::images)
        .def("domain_size", &Surjection::domain_size)
        .def("codomain_size", &Surjection::codomain_size)
        .def("__str__", &Surjection::str)
        .def("__repr__", [](const Surjection& s) { return "Surjection(" + s.str() + ")"; })
        .def("__eq__", [](const Surjection& a, const Surjection& b) { return a == b; })
        .def_static("parse", &Surjection::parse)
        .def_static("identity", &Surjection::identity)
        .def_static("collapse", &Surjection::collapse);

    m.def("all_surjections", &all_surjections, py::arg("n"), py::arg("k"));
    m.def("count_surjections", &count_surjections);
    m.def("shuffle_sign", &shuffle_sign);
    m.def("block_sizes", &block_sizes);
    m.def("partition_str",
          [](const Surjection& r) { return partition_str(partition_of_surjection(r)); });
    m.def("compose_left", &compose_left);
    m.def("compose_right", &compose_right);
    m.def("substitute", &substitute);

    m.def("cardinality", &cardinality);
    m.def("morphism_fibers", [](const Surjection& source, const Surjection& gamma) {
        return morphism_fibers(PerMorphism(source, gamma));
    });
    m.def("elementary_morphisms", [](const Surjection& alpha) {
        py::list out;
        for (const auto& e : elementary_morphisms(alpha)) {
            py::dict d;
            d["slot"] = e.slot;
            d["fiber"] = e.fiber;
            d["quotient"] = e.quotient;
            out.append(d);
        }
        return out;
    });
    m.def("grothendieck_fiber_count", &grothendieck_fiber_count);

    m.def("koszulity_report", &koszulity_report_json, py::arg("target"), py::arg("nmax"),
          "JSON report for peras, twisted, or a presentation JSON string");

    m.def("xi_check", [](int n) { return xi_check(n); });
    m.def("zeta_check", [](int n) {
        auto rep = zeta_check(n);
        py::dict d;
        d["chain_iso"] = rep.chain_iso;
        if (rep.witness) {
            auto [x, y, r] = *rep.witness;
            py::dict w;
            w["x"] = x.str();
            w["y"] = y.str();
            w["shape"] = r;
            d["witness"] = w;
        } else {
            d["witness"] = py::none();
        }
        return d;
    });

    m.def("series_coefficients", [](const std::string& target, int terms) {
        QuadraticPresentation pres;
        if (target == "peras")
            pres = terminal_presentation();
        else if (target == "twisted")
            pres = twisted_presentation();
        else if (target == "perasdual")
            pres = quadratic_dual(terminal_presentation());
        else if (target == "twisteddual")
            pres = quadratic_dual(twisted_presentation());
        else
            throw std::invalid_argument("unknown series target " + target);
        pres.truncation = std::max(pres.truncation, terms);
        QuotientData q(pres);
        std::map<std::pair<int, int>, int> dims;
        for (int n = 1; n <= terms; ++n)
            for (const auto& [d, v] : q.dims_by_degree(n)) dims[{n, d}] = v;
        auto f = generating_series(dims, terms);
        std::vector<std::string> out;
        for (int mdeg = 1; mdeg <= terms; ++mdeg) out.push_back(f.at(mdeg).str());
        return out;
    });

    m.def("gk_functional_check", [](const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
        int T = static_cast<int>(std::min(a.size(), b.size()));
        PowerSeries fa(T), fb(T);
        for (int i = 0; i < T; ++i) {
            fa.coeffs[i + 1] = Rational::parse(a[i]);
            fb.coeffs[i + 1] = Rational::parse(b[i]);
        }
        return gk_functional_check(fa, fb, T);
    });

    m.def("permutohedron_cells", [](int n) {
        auto cells = permutohedron_complex(n);
        std::vector<int> dims;
        for (int d = 0; d <= cells.top_degree(); ++d) dims.push_back(cells.dim(d));
        return dims;
    });
    m.def("permutohedron_betti", [](int n) { return betti_dict(betti(permutohedron_complex(n))); });

    m.def("minimal_model_report", [](const std::string& alpha_text) {
        auto alpha = Surjection::parse(alpha_text);
        auto mm = minimal_model_complex(alpha);
        py::dict d;
        std::vector<int> dims;
        for (int deg = 0; deg <= mm.complex.top_degree(); ++deg)
            dims.push_back(mm.complex.dim(deg));
        d["dims"] = dims;
        d["d_squared_zero"] = is_complex(mm.complex);
        d["betti"] = betti_dict(betti(mm.complex));
        return d;
    });

    m.def("sh_relation", [](const std::string& alpha_text, bool primed) {
        return relation_to_json(generate_relation(Surjection::parse(alpha_text), primed));
    });

    m.def("one_per_quotient_dim", [](const std::string& alpha_text) {
        PerQuotientData q(one_per_presentation());
        return q.total_dim(Surjection::parse(alpha_text));
    });

    m.def("rank_of_coordinate_matrix", [](int rows, int cols, const std::string& text) {
        return rank(SparseMatrix::from_coordinate_text(rows, cols, text));
    });
}
