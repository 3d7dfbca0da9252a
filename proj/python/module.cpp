#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <coning/bitstream.hpp>
#include <coning/combinatorics.hpp>
#include <coning/experiments.hpp>
#include <coning/gtheorem.hpp>
#include <coning/sts.hpp>

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

coning::BigInt bigint_from_py(py::handle h) {
    py::int_ v(py::reinterpret_borrow<py::object>(h));
    return coning::bigint_from_string(static_cast<std::string>(py::str(v)));
}

py::int_ bigint_to_py(const coning::BigInt& v) {
    PyObject* p = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    if (!p) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(p);
}

std::vector<coning::BigInt> vec_from_py(const py::sequence& seq) {
    std::vector<coning::BigInt> out;
    out.reserve(py::len(seq));
    for (py::handle h : seq) out.push_back(bigint_from_py(h));
    return out;
}

py::list vec_to_py(const std::vector<coning::BigInt>& v) {
    py::list out;
    for (const auto& c : v) out.append(bigint_to_py(c));
    return out;
}

coning::sts::SuiteParams params_from_kwargs(double alpha, int block_frequency_m,
                                            int approx_entropy_m, int serial_m,
                                            int linear_complexity_m) {
    coning::sts::SuiteParams p;
    p.alpha = alpha;
    p.block_frequency_m = block_frequency_m;
    p.approx_entropy_m = approx_entropy_m;
    p.serial_m = serial_m;
    p.linear_complexity_m = linear_complexity_m;
    return p;
}

}  // namespace

PYBIND11_MODULE(coning, m) {
    m.doc() = "f/h-vector constructions, bit encoding and randomness testing";

    m.def("cone_f", [](const py::sequence& f) {
        return vec_to_py(coning::cone_f(coning::FVector(vec_from_py(f))).components());
    });
    m.def("iterate_cone", [](const py::sequence& f, unsigned j) {
        return vec_to_py(
            coning::iterate_cone(coning::FVector(vec_from_py(f)), j).components());
    });
    m.def("simplex_dual_f", [](unsigned L) {
        return vec_to_py(coning::simplex_dual_f(L).components());
    });
    m.def("f_to_h", [](const py::sequence& f) {
        return vec_to_py(coning::f_to_h(coning::FVector(vec_from_py(f))).components());
    });
    m.def("h_to_f", [](const py::sequence& h) {
        return vec_to_py(coning::h_to_f(coning::HVector(vec_from_py(h))).components());
    });
    m.def("palindromic_h", [](unsigned L, py::handle c) {
        return vec_to_py(coning::palindromic_h(L, bigint_from_py(c)).components());
    });
    m.def("is_symmetrical", [](const py::sequence& f) {
        return coning::is_symmetrical(coning::FVector(vec_from_py(f)));
    });
    m.def("binomial", [](std::uint64_t n, std::int64_t k) {
        return bigint_to_py(coning::binomial(n, k));
    });
    m.def(
        "random_graph",
        [](std::uint64_t n, const std::string& p, std::uint64_t seed) {
            const auto g =
                coning::random_graph(n, coning::Rational::parse(p), coning::RngConfig{seed});
            py::dict d;
            d["num_vertices"] = g.num_vertices;
            d["num_edges"] = g.num_edges;
            d["seed"] = g.seed;
            d["edge_probability"] = g.edge_probability.str();
            return d;
        },
        py::arg("n"), py::arg("p"), py::arg("seed") = 0);
    m.def("f_of_graph", [](std::uint64_t vertices, std::uint64_t edges) {
        coning::GraphSummary g;
        g.num_vertices = vertices;
        g.num_edges = edges;
        return vec_to_py(coning::f_of_graph(g).components());
    });

    m.def("complex_to_polytope_profile", [](const py::sequence& f) {
        return vec_to_py(
            coning::complex_to_polytope_profile(coning::FVector(vec_from_py(f)))
                .components());
    });
    m.def("g_vector", [](const py::sequence& f, int d) {
        return vec_to_py(coning::g_vector(coning::FVector(vec_from_py(f)), d).components);
    });
    m.def("check_dehn_sommerville", [](const py::sequence& h) {
        return coning::check_dehn_sommerville(coning::HVector(vec_from_py(h)));
    });
    m.def("macaulay_rep", [](py::handle a, int i) {
        py::list out;
        for (const auto& term : coning::macaulay_rep(bigint_from_py(a), i)) {
            out.append(py::make_tuple(bigint_to_py(term.index), term.lower));
        }
        return out;
    });
    m.def("pseudo_power", [](py::handle a, int i) {
        return bigint_to_py(coning::pseudo_power(bigint_from_py(a), i));
    });
    m.def("check_mcmullen", [](const py::sequence& f, int d) {
        const auto r = coning::check_mcmullen(coning::FVector(vec_from_py(f)), d);
        py::dict out;
        out["symmetric_ok"] = r.symmetric_ok;
        out["monotone_ok"] = r.monotone_ok;
        out["growth_ok"] = r.growth_ok;
        out["m_index"] = r.m_index;
        out["half_index"] = r.half_index;
        out["pass"] = r.pass();
        if (r.first_violation) {
            out["first_violation"] =
                py::make_tuple(static_cast<int>(r.first_violation->first),
                               r.first_violation->second);
        } else {
            out["first_violation"] = py::none();
        }
        return out;
    });
    m.def("vertex_equation_holds", [](const py::sequence& f, int d) {
        return coning::vertex_equation_holds(coning::FVector(vec_from_py(f)), d);
    });
    m.def("cone_failure_threshold", [](std::int64_t s, std::int64_t t) -> py::object {
        const auto r = coning::cone_failure_threshold(s, t);
        if (!r) return py::none();
        return py::make_tuple(r->num, r->den);
    });

    m.def(
        "encode_vector",
        [](const py::sequence& components, bool byte_aligned) {
            const auto comps = vec_from_py(components);
            const auto stream = byte_aligned ? coning::encode_vector_byte_aligned(comps)
                                             : coning::encode_vector(comps);
            return py::make_tuple(
                py::bytes(reinterpret_cast<const char*>(stream.payload().data()),
                          stream.payload().size()),
                stream.bit_length());
        },
        py::arg("components"), py::arg("byte_aligned") = false);
    m.def("encode_integer", [](py::handle v) {
        const auto stream = coning::encode_integer(bigint_from_py(v));
        return py::make_tuple(
            py::bytes(reinterpret_cast<const char*>(stream.payload().data()),
                      stream.payload().size()),
            stream.bit_length());
    });

    m.def(
        "run_suite",
        [](const py::bytes& payload, std::uint64_t bit_length, double alpha,
           int block_frequency_m, int approx_entropy_m, int serial_m,
           int linear_complexity_m) {
            const std::string raw(payload);
            std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
            const auto stream = coning::BitStream::from_payload(std::move(bytes), bit_length);
            const auto report = coning::sts::run_suite(
                stream, params_from_kwargs(alpha, block_frequency_m, approx_entropy_m,
                                           serial_m, linear_complexity_m));
            const std::string dumped = coning::suite_report_to_json(report).dump();
            return py::module_::import("json").attr("loads")(dumped);
        },
        py::arg("payload"), py::arg("bit_length"), py::arg("alpha") = 0.01,
        py::arg("block_frequency_m") = 128, py::arg("approx_entropy_m") = 10,
        py::arg("serial_m") = 14, py::arg("linear_complexity_m") = 500);

    m.attr("__version__") = "0.1.0";
}
