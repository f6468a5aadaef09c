#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exoflex/bricard.hpp"
#include "exoflex/configspace.hpp"
#include "exoflex/elliptic.hpp"
#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"
#include "exoflex/volume.hpp"

namespace py = pybind11;
using namespace exoflex;

namespace {

Component component_from(const std::string& name) {
    if (name == "plus") return Component::plus;
    if (name == "minus") return Component::minus;
    throw std::invalid_argument("component must be 'plus' or 'minus'");
}

py::dict profile_dict(const VolumeProfile& prof) {
    py::list theta, delta2, eps2, arc, y, area1, area2, lifted;
    for (size_t k = 0; k < prof.nodes.size(); ++k) {
        theta.append(prof.nodes[k].state.theta);
        delta2.append(prof.nodes[k].state.delta2);
        eps2.append(prof.nodes[k].state.eps2);
        arc.append(prof.nodes[k].arc);
        y.append(prof.y[k]);
        area1.append(prof.area1[k]);
        area2.append(prof.area2[k]);
        lifted.append(prof.lifted[k]);
    }
    py::dict d;
    d["theta"] = theta;
    d["delta2"] = delta2;
    d["eps2"] = eps2;
    d["arc"] = arc;
    d["y"] = y;
    d["area1"] = area1;
    d["area2"] = area2;
    d["lifted"] = lifted;
    d["spread"] = prof.spread;
    d["vmin"] = prof.vmin;
    d["vmax"] = prof.vmax;
    d["loop_increment"] = loop_increment(prof);
    return d;
}

}  // namespace

PYBIND11_MODULE(exoflex_py, m) {
    m.doc() = "exotic flexible octahedra on the 3-sphere";

    py::class_<ExoticParams>(m, "ExoticParams")
        .def(py::init<double, double, double, double>(), py::arg("p1"), py::arg("p2"),
             py::arg("q1"), py::arg("q2"))
        .def_readwrite("p1", &ExoticParams::p1)
        .def_readwrite("p2", &ExoticParams::p2)
        .def_readwrite("q1", &ExoticParams::q1)
        .def_readwrite("q2", &ExoticParams::q2)
        .def("__repr__", [](const ExoticParams& p) {
            return "ExoticParams(" + std::to_string(p.p1) + ", " + std::to_string(p.p2) +
                   ", " + std::to_string(p.q1) + ", " + std::to_string(p.q2) + ")";
        });

    py::class_<FlexState>(m, "FlexState")
        .def(py::init([](double theta, int delta1, int delta2, int eps1, int eps2) {
                 FlexState s;
                 s.theta = theta;
                 s.delta1 = delta1;
                 s.delta2 = delta2;
                 s.eps1 = eps1;
                 s.eps2 = eps2;
                 return s;
             }),
             py::arg("theta"), py::arg("delta1") = 1, py::arg("delta2") = 1,
             py::arg("eps1") = 1, py::arg("eps2") = 1)
        .def_readwrite("theta", &FlexState::theta)
        .def_readwrite("delta1", &FlexState::delta1)
        .def_readwrite("delta2", &FlexState::delta2)
        .def_readwrite("eps1", &FlexState::eps1)
        .def_readwrite("eps2", &FlexState::eps2);

    m.attr("SPHERE_VOLUME") = kSphereVolume;

    m.def("validate", [](const ExoticParams& p) {
        const auto rep = validate_params(p);
        return py::make_tuple(rep.ok, rep.violations);
    });
    m.def("theta_bounds", [](const ExoticParams& p) {
        const auto [lo, hi] = theta_bounds(p);
        return py::make_tuple(lo, hi);
    });
    m.def("y_bounds", [](const ExoticParams& p) {
        const auto [lo, hi] = y_bounds(p);
        return py::make_tuple(lo, hi);
    });

    m.def("vertices", [](const ExoticParams& p, const FlexState& s) {
        const auto o = build(p, s);
        py::dict d;
        for (int v = 0; v < 6; ++v) {
            const auto id = static_cast<VertexId>(v);
            const auto& c = o.at(id);
            d[vertex_name(id)] = py::make_tuple(c[0], c[1], c[2], c[3]);
        }
        return d;
    });

    m.def("edge_lengths", [](const ExoticParams& p, const FlexState& s) {
        const auto len = edge_lengths(build(p, s));
        py::dict d;
        const auto es = edges();
        for (int e = 0; e < 12; ++e) {
            const std::string key =
                std::string(vertex_name(es[e].u)) + "-" + vertex_name(es[e].v);
            d[key.c_str()] = len.len[e];
        }
        return d;
    });

    m.def("dihedral", [](const ExoticParams& p, const FlexState& s, const std::string& u,
                         const std::string& v) {
        const auto o = build(p, s);
        return oriented_dihedral_angle(o, vertex_from_name(u), vertex_from_name(v));
    });

    m.def("biquad_residuals", [](const ExoticParams& p, const FlexState& s) {
        const auto res = biquad_residuals(build(p, s));
        return std::vector<double>(res.begin(), res.end());
    });

    m.def("link_shapes", [](const ExoticParams& p, const FlexState& s) {
        const auto o = build(p, s);
        py::dict d;
        for (int v = 0; v < 6; ++v) {
            const auto id = static_cast<VertexId>(v);
            const auto link = vertex_link(o, id);
            const auto cls = classify_quad(link.side);
            d[vertex_name(id)] = py::make_tuple(quad_shape_name(cls.shape), cls.pairing);
        }
        return d;
    });

    m.def(
        "exotic_check",
        [](const ExoticParams& p, int samples) {
            const auto rep = exotic_face_check(p, samples);
            py::dict d;
            d["pass"] = rep.pass;
            d["nu1"] = rep.nu1;
            d["nu2"] = rep.nu2;
            d["states_checked"] = rep.states_checked;
            d["failures"] = rep.failures;
            return d;
        },
        py::arg("params"), py::arg("samples") = 32);

    m.def("y_of_state", [](const ExoticParams& p, const FlexState& s) {
        return y_of_state(p, s);
    });

    m.def("recover", [](const ExoticParams& p, double y1, double y2, double y3) {
        const auto rec = recover_state(p, DiagonalCosines{y1, y2, y3});
        py::dict d;
        d["theta"] = rec.state.theta;
        d["delta1"] = rec.state.delta1;
        d["delta2"] = rec.state.delta2;
        d["eps1"] = rec.state.eps1;
        d["eps2"] = rec.state.eps2;
        d["delta2_immaterial"] = rec.delta2_immaterial;
        d["eps2_immaterial"] = rec.eps2_immaterial;
        return d;
    });

    m.def(
        "closed_form_volume",
        [](const ExoticParams& p, const FlexState& s) {
            const auto v = closed_form_volume(p, s);
            return py::make_tuple(v.lifted, v.representative);
        },
        py::arg("params"), py::arg("state"));

    m.def(
        "volume_profile",
        [](const ExoticParams& p, const std::string& component, int n) {
            return profile_dict(volume_profile(p, component_from(component), n));
        },
        py::arg("params"), py::arg("component") = "plus", py::arg("samples") = 64);

    m.def(
        "bellows",
        [](const ExoticParams& p, int n, double threshold) {
            const auto rep = bellows_sweep(p, n, threshold);
            py::dict masks;
            for (AntipodeMask mask = 0; mask < 64; ++mask) {
                const auto& e = rep.entries[mask];
                py::dict mj;
                mj["spread"] = e.spread;
                mj["min"] = e.vmin;
                mj["max"] = e.vmax;
                mj["nonconstant"] = e.nonconstant;
                masks[mask_name(mask).c_str()] = mj;
            }
            py::dict d;
            d["counterexample_confirmed"] = rep.counterexample_confirmed;
            d["masks"] = masks;
            return d;
        },
        py::arg("params"), py::arg("samples") = 64, py::arg("threshold") = 1e-6);

    m.def(
        "kind_report",
        [](const ExoticParams& p, int face, int n) {
            const auto ev = classify_kind(p, face, n);
            const auto fit = structural_fit(face_tangent_series(p, face, Component::plus, n));
            py::dict d;
            d["label"] = kind_name(ev.kind);
            d["a"] = fit.a;
            d["b"] = fit.b;
            d["residual"] = fit.residual;
            d["sign_ab"] = fit.sign_ab;
            d["k_prime_estimate"] = fit.k_prime_estimate;
            return d;
        },
        py::arg("params"), py::arg("face"), py::arg("samples") = 64);

    m.def("face_name", [](int f) { return std::string(face_name(f)); });

    m.def("elliptic_K", &elliptic_K, py::arg("k"));
    m.def(
        "jacobi",
        [](double u, double k) {
            const auto jv = jacobi(u, k);
            return py::make_tuple(jv.sn, jv.cn, jv.dn);
        },
        py::arg("u"), py::arg("k"));
}
