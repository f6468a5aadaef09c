#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exoflex/bricard.hpp"
#include "exoflex/configspace.hpp"
#include "exoflex/elliptic.hpp"
#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"
#include "exoflex/tolerances.hpp"
#include "exoflex/volume.hpp"

namespace {

using exoflex::Component;
using exoflex::ExoticParams;
using json = nlohmann::ordered_json;

struct Scenario {
    ExoticParams params{0.1, 0.6, 0.2, 0.5};
    int samples = 512;
    std::uint64_t seed = 42;
    std::string component = "both";
    std::vector<std::string> masks;  // empty = all 64
    std::map<std::string, double> tol_overrides;
    std::string out_dir = "out";
    exoflex::Tolerances tol;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json params_json(const ExoticParams& p) { return json::array({p.p1, p.p2, p.q1, p.q2}); }

json number_or_null(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::filesystem::path ensure_out(const Scenario& sc) {
    std::filesystem::path dir(sc.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<Component> selected_components(const Scenario& sc) {
    if (sc.component == "plus") return {Component::plus};
    if (sc.component == "minus") return {Component::minus};
    return {Component::plus, Component::minus};
}

const char* component_name(Component c) { return c == Component::plus ? "plus" : "minus"; }

// Exits 1 via the caller when params fail validation.
bool report_invalid(const ExoticParams& p) {
    const auto rep = exoflex::validate_params(p);
    if (rep.ok) return false;
    std::cerr << "invalid params:";
    for (const auto& v : rep.violations) std::cerr << " [" << v << "]";
    std::cerr << "\n";
    return true;
}

int run_validate(const Scenario& sc) {
    const auto rep = exoflex::validate_params(sc.params);
    json j;
    j["params"] = params_json(sc.params);
    j["ok"] = rep.ok;
    j["violations"] = rep.violations;
    if (rep.ok) {
        const auto [tmin, tmax] = exoflex::theta_bounds(sc.params);
        const auto [ymin, ymax] = exoflex::y_bounds(sc.params);
        j["theta_min"] = tmin;
        j["theta_max"] = tmax;
        j["y_min"] = ymin;
        j["y_max"] = ymax;
    }
    const std::string text = j.dump(2) + "\n";
    write_text(ensure_out(sc) / "validate.json", text);
    std::cout << text;
    return rep.ok ? 0 : 1;
}

int run_sweep(const Scenario& sc) {
    if (report_invalid(sc.params)) return 1;
    const auto dir = ensure_out(sc);
    json summary;
    summary["params"] = params_json(sc.params);
    summary["samples"] = sc.samples;
    for (Component c : selected_components(sc)) {
        const auto prof = exoflex::volume_profile(sc.params, c, sc.samples);
        std::string csv = "arc,theta,delta2,eps2,y,A1,A2,V_lifted,V_mod\n";
        for (int k = 0; k < sc.samples; ++k) {
            const auto& node = prof.nodes[k];
            csv += fmt(node.arc) + "," + fmt(node.state.theta) + "," +
                   std::to_string(node.state.delta2) + "," + std::to_string(node.state.eps2) +
                   "," + fmt(prof.y[k]) + "," + fmt(prof.area1[k]) + "," + fmt(prof.area2[k]) +
                   "," + fmt(prof.lifted[k]) + "," +
                   fmt(exoflex::make_volume_class(prof.lifted[k]).representative) + "\n";
        }
        const std::string name = std::string("profile_") + component_name(c);
        write_text(dir / (name + ".csv"), csv);
        json cj;
        cj["spread"] = prof.spread;
        cj["vmin"] = prof.vmin;
        cj["vmax"] = prof.vmax;
        cj["loop_increment"] = exoflex::loop_increment(prof);
        summary[component_name(c)] = cj;
        std::cout << "component " << component_name(c) << ": spread " << fmt(prof.spread)
                  << ", loop increment " << fmt(exoflex::loop_increment(prof)) << "\n";
    }
    write_text(dir / "sweep.json", summary.dump(2) + "\n");
    return 0;
}

int run_bellows(const Scenario& sc) {
    if (report_invalid(sc.params)) return 1;
    std::set<exoflex::AntipodeMask> wanted;
    for (const auto& name : sc.masks) wanted.insert(exoflex::mask_from_name(name));
    const bool full = wanted.empty();

    const double threshold =
        sc.tol_overrides.count("spread_min") ? sc.tol.spread_min : 1e-6;
    const auto rep = exoflex::bellows_sweep(sc.params, sc.samples, threshold);

    json j;
    j["params"] = params_json(sc.params);
    j["samples"] = sc.samples;
    j["spread_threshold"] = threshold;
    bool all_selected_ok = true;
    json masks = json::object();
    for (exoflex::AntipodeMask m = 0; m < 64; ++m) {
        if (!full && !wanted.count(m)) continue;
        const auto& e = rep.entries[m];
        json mj;
        mj["spread"] = e.spread;
        mj["min"] = e.vmin;
        mj["max"] = e.vmax;
        mj["verdict"] = e.nonconstant ? "nonconstant" : "constant";
        masks[exoflex::mask_name(m)] = mj;
        if (!e.nonconstant) all_selected_ok = false;
    }
    if (full) j["counterexample_confirmed"] = rep.counterexample_confirmed;
    j["masks"] = masks;
    write_text(ensure_out(sc) / "bellows.json", j.dump(2) + "\n");
    const bool ok = full ? rep.counterexample_confirmed : all_selected_ok;
    std::cout << (full ? std::string("all 64 masks: ") : "selected masks: ")
              << (ok ? "nonconstant" : "CONSTANT PROFILE FOUND") << "\n";
    return ok ? 0 : 2;
}

int run_classify(const Scenario& sc) {
    if (report_invalid(sc.params)) return 1;
    const auto dir = ensure_out(sc);
    bool ok = true;

    // Link shapes are flex-invariant; one interior state suffices.
    const auto [tmin, tmax] = exoflex::theta_bounds(sc.params);
    exoflex::FlexState mid;
    mid.theta = (tmin + tmax) / 2.0;
    const auto oct = exoflex::build(sc.params, mid);
    json links;
    links["params"] = params_json(sc.params);
    json vertices = json::object();
    for (int v = 0; v < 6; ++v) {
        const auto id = static_cast<exoflex::VertexId>(v);
        const auto link = exoflex::vertex_link(oct, id);
        const auto cls = exoflex::classify_quad(link.side, sc.tol.geometry);
        json vj;
        vj["shape"] = exoflex::quad_shape_name(cls.shape);
        vj["pairing"] = cls.pairing;
        vj["sides"] = json::array({link.side[0], link.side[1], link.side[2], link.side[3]});
        vertices[exoflex::vertex_name(id)] = vj;
    }
    links["vertices"] = vertices;
    const auto wit = exoflex::exotic_face_check(sc.params, 64, sc.tol.geometry);
    json wj;
    wj["pass"] = wit.pass;
    wj["nu1"] = wit.nu1;
    wj["nu2"] = wit.nu2;
    wj["states_checked"] = wit.states_checked;
    wj["failures"] = wit.failures;
    links["witnesses"] = wj;
    write_text(dir / "links.json", links.dump(2) + "\n");
    if (!wit.pass) ok = false;

    json kinds;
    kinds["params"] = params_json(sc.params);
    json faces = json::object();
    for (int f = 0; f < 8; ++f) {
        const auto ev = exoflex::classify_kind(sc.params, f, sc.samples, sc.tol.degenerate_sin);
        const auto fit =
            exoflex::structural_fit(exoflex::face_tangent_series(sc.params, f,
                                                                 Component::plus, sc.samples));
        json fj;
        fj["label"] = exoflex::kind_name(ev.kind);
        fj["residual"] = fit.residual;
        fj["sign_ab"] = fit.sign_ab;
        fj["k_prime_estimate"] = number_or_null(fit.k_prime_estimate);
        faces[exoflex::face_name(f)] = fj;

        const int expect_deg = ((f & 1) ? 1 : 0) + ((f & 2) ? 1 : 0);
        const exoflex::Kind expect = expect_deg == 0   ? exoflex::Kind::first
                                     : expect_deg == 1 ? exoflex::Kind::second
                                                       : exoflex::Kind::third;
        const int expect_sign = (expect == exoflex::Kind::first) ? 1 : -1;
        if (ev.kind != expect || fit.residual >= sc.tol.fit_residual ||
            fit.sign_ab != expect_sign)
            ok = false;
        std::cout << exoflex::face_name(f) << ": " << exoflex::kind_name(ev.kind)
                  << ", fit residual " << fmt(fit.residual) << ", sign(ab) " << fit.sign_ab
                  << "\n";
    }
    kinds["faces"] = faces;
    write_text(dir / "kinds.json", kinds.dump(2) + "\n");
    std::cout << "links: a1 " << vertices["a1"]["shape"].get<std::string>() << ", a2 "
              << vertices["a2"]["shape"].get<std::string>() << ", witnesses "
              << (wit.pass ? "pass" : "fail") << "\n";
    return ok ? 0 : 2;
}

// Complete elliptic integral by Simpson quadrature of
// integral_0^{pi/2} dphi / sqrt(1 - k^2 sin^2 phi); independent of the AGM.
double elliptic_K_quadrature(double k) {
    const int panels = 1 << 14;
    const double h = (exoflex::kPi / 2.0) / panels;
    auto f = [&](double phi) {
        const double s = std::sin(phi);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
    };
    double acc = f(0.0) + f(exoflex::kPi / 2.0);
    for (int i = 1; i < panels; ++i) acc += f(i * h) * ((i & 1) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

struct CheckList {
    bool all_ok = true;
    json entries = json::array();

    void add(const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << " (" << detail << ")\n";
        json e;
        e["name"] = name;
        e["pass"] = pass;
        e["detail"] = detail;
        entries.push_back(e);
        if (!pass) all_ok = false;
    }
};

int run_elliptic_check(const Scenario& sc) {
    CheckList cl;

    cl.add("K_at_zero", std::abs(exoflex::elliptic_K(0.0) - exoflex::kPi / 2.0) < 1e-14,
           "K(0) = " + fmt(exoflex::elliptic_K(0.0)));

    double worst_quad = 0.0;
    bool increasing = true;
    double prev = 0.0;
    for (int i = 1; i <= 19; ++i) {
        const double k = 0.05 * i;
        const double agm = exoflex::elliptic_K(k);
        worst_quad = std::max(worst_quad, std::abs(agm - elliptic_K_quadrature(k)));
        if (i > 1 && agm <= prev) increasing = false;
        prev = agm;
    }
    cl.add("K_agm_vs_quadrature", worst_quad < 1e-12, "worst |diff| = " + fmt(worst_quad));
    cl.add("K_increasing", increasing, "k grid 0.05..0.95");

    double worst_id = 0.0;
    bool dn_in_range = true;
    for (double k : {0.1, 0.5, 0.9}) {
        const auto mod = exoflex::make_modulus(k);
        for (int i = 0; i <= 256; ++i) {
            const double u = -3.0 * mod.K + (6.0 * mod.K) * i / 256.0;
            const auto jv = exoflex::jacobi(u, k);
            worst_id = std::max(worst_id,
                                std::abs(jv.sn * jv.sn + jv.cn * jv.cn - 1.0));
            worst_id = std::max(
                worst_id, std::abs(jv.dn * jv.dn + k * k * jv.sn * jv.sn - 1.0));
            if (jv.dn < mod.k_prime - 1e-12 || jv.dn > 1.0 + 1e-12) dn_in_range = false;
        }
    }
    cl.add("jacobi_identities", worst_id < 1e-12, "worst residual = " + fmt(worst_id));
    cl.add("dn_range", dn_in_range, "dn within [k', 1] on the grid");

    double worst_quarter = 0.0;
    for (double k : {0.1, 0.5, 0.9}) {
        const auto mod = exoflex::make_modulus(k);
        const auto jv = exoflex::jacobi(mod.K, k);
        worst_quarter = std::max({worst_quarter, std::abs(jv.sn - 1.0), std::abs(jv.cn),
                                  std::abs(jv.dn - mod.k_prime)});
    }
    cl.add("quarter_period", worst_quarter < 1e-10, "worst |diff| = " + fmt(worst_quarter));

    // cn/sn sweeps R union {infinity}: zero at K, huge near u -> 0+.
    {
        const double k = 0.5;
        const auto at_K = exoflex::jacobi(exoflex::elliptic_K(k), k);
        const auto near0 = exoflex::jacobi(1e-8, k);
        const bool cover = std::abs(at_K.cn / at_K.sn) < 1e-10 &&
                           std::abs(near0.cn / near0.sn) > 1e7;
        cl.add("cnsn_coverage", cover,
               "cn/sn(K) = " + fmt(at_K.cn / at_K.sn) +
                   ", cn/sn(1e-8) = " + fmt(near0.cn / near0.sn));
    }

    json j;
    j["checks"] = cl.entries;
    j["ok"] = cl.all_ok;
    write_text(ensure_out(sc) / "elliptic.json", j.dump(2) + "\n");
    return cl.all_ok ? 0 : 2;
}

int run_verify(const Scenario& sc) {
    if (report_invalid(sc.params)) return 1;
    const ExoticParams& p = sc.params;
    const int n = sc.samples;
    const exoflex::Tolerances& tol = sc.tol;
    CheckList cl;

    std::vector<exoflex::ComponentTrace> traces;
    for (Component c : {Component::plus, Component::minus})
        traces.push_back(exoflex::trace_component(p, c, n));

    {
        double worst = 0.0;
        for (const auto& tr : traces) {
            const auto ref = exoflex::edge_lengths(exoflex::build(p, tr.nodes[0].state));
            for (const auto& node : tr.nodes) {
                const auto len = exoflex::edge_lengths(exoflex::build(p, node.state));
                for (int e = 0; e < 12; ++e)
                    worst = std::max(worst, std::abs(len.len[e] - ref.len[e]));
            }
        }
        cl.add("edge_lengths_constant", worst < tol.roundtrip, "worst drift = " + fmt(worst));
    }

    {
        double worst = 0.0;
        for (const auto& tr : traces)
            for (const auto& node : tr.nodes) {
                const auto res = exoflex::biquad_residuals(exoflex::build(p, node.state));
                for (double r : res) worst = std::max(worst, r);
            }
        cl.add("bricard_residuals", worst < tol.geometry, "worst residual = " + fmt(worst));
    }

    {
        const auto wit = exoflex::exotic_face_check(p, 64, tol.geometry);
        cl.add("link_structure", wit.pass,
               "nu1 = " + std::to_string(wit.nu1) + ", nu2 = " + std::to_string(wit.nu2));
    }

    {
        double worst_theta = 0.0;
        bool signs_ok = true;
        for (const auto& tr : traces)
            for (const auto& node : tr.nodes) {
                const auto rec =
                    exoflex::recover_state(p, exoflex::diagonals(exoflex::build(p, node.state)));
                const exoflex::FlexState mirror = node.state;  // gauge delta1 = eps1 = +1 holds
                worst_theta = std::max(worst_theta,
                                       std::abs(rec.state.theta - mirror.theta));
                if (mirror.delta1 == 1 && mirror.eps1 == 1) {
                    if (!rec.delta2_immaterial && rec.state.delta2 != mirror.delta2)
                        signs_ok = false;
                    if (!rec.eps2_immaterial && rec.state.eps2 != mirror.eps2) signs_ok = false;
                }
            }
        cl.add("state_roundtrip", worst_theta < 1e-10 && signs_ok,
               "worst |dtheta| = " + fmt(worst_theta));
    }

    {
        double worst = 0.0;
        for (const auto& tr : traces)
            for (const auto& node : tr.nodes) {
                const double ct = std::cos(node.state.theta);
                const double y = exoflex::y_of_state(p, node.state);
                worst = std::max(worst,
                                 std::abs(exoflex::hyperbola_residual(p, 1.0 / (ct * ct), y)));
            }
        cl.add("hyperbola_residual", worst < tol.geometry, "worst residual = " + fmt(worst));
    }

    {
        exoflex::OracleOptions opts;
        opts.seed = sc.seed;
        opts.samples = 200000;
        double worst_sigma = 0.0;
        const auto [tmin, tmax] = exoflex::theta_bounds(p);
        for (int i = 0; i < 3; ++i) {
            exoflex::FlexState s;
            s.theta = tmin + (tmax - tmin) * (0.2 + 0.3 * i);
            s.delta2 = (i % 2) ? -1 : 1;
            s.eps2 = (i == 2) ? -1 : 1;
            const auto cf = exoflex::closed_form_volume(p, s);
            const auto est = exoflex::decomposition_volume(exoflex::build(p, s), opts);
            const double d = exoflex::volume_class_distance(cf.representative,
                                                            est.vol.representative);
            worst_sigma = std::max(worst_sigma, d / est.stderr_est);
        }
        cl.add("volume_oracle", worst_sigma < tol.oracle_sigmas,
               "worst deviation = " + fmt(worst_sigma) + " sigma");
    }

    {
        const auto [ymin, ymax] = exoflex::y_bounds(p);
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double y0 = ymin + (ymax - ymin) * i / 21.0;
            const double x = (1.0 - y0 * y0) /
                             ((p.p1 * p.p1 + p.p2 * p.p2) - 2.0 * p.p1 * p.p2 * y0);
            const double theta = std::acos(std::sqrt(1.0 / x));
            exoflex::FlexState sp, sm;
            sp.theta = sm.theta = theta;
            sp.delta2 = sm.delta2 =
                (y0 >= p.p1 * p.p2 * x) ? 1 : -1;  // x = 1/cos^2 theta
            sm.eps2 = -1;
            const double gap = exoflex::closed_form_volume(p, sp).representative -
                               exoflex::closed_form_volume(p, sm).representative;
            const double expect = (p.p2 > 0 ? 1.0 : -1.0) * exoflex::kPi *
                                  exoflex::diagonal_triangle_area(2, p, y0);
            worst = std::max(worst, exoflex::volume_class_distance(gap, expect));
        }
        cl.add("eps2_gap", worst < tol.geometry, "worst |diff| = " + fmt(worst));
    }

    std::array<exoflex::VolumeProfile, 2> profs = {
        exoflex::volume_profile(p, Component::plus, n),
        exoflex::volume_profile(p, Component::minus, n)};
    cl.add("profile_nonconstant",
           profs[0].spread > tol.spread_min && profs[1].spread > tol.spread_min,
           "spreads " + fmt(profs[0].spread) + ", " + fmt(profs[1].spread));
    cl.add("loop_increment_zero",
           std::abs(exoflex::loop_increment(profs[0])) < 1e-6 &&
               std::abs(exoflex::loop_increment(profs[1])) < 1e-6,
           "increments " + fmt(exoflex::loop_increment(profs[0])) + ", " +
               fmt(exoflex::loop_increment(profs[1])));

    {
        const auto sp = exoflex::schlafli_check(p, Component::plus, n);
        const auto sm = exoflex::schlafli_check(p, Component::minus, n);
        cl.add("schlafli", sp.residual < 1e-4 && sm.residual < 1e-4 && sp.sign == sm.sign,
               "residuals " + fmt(sp.residual) + ", " + fmt(sm.residual) + ", sign " +
                   std::to_string(sp.sign));
    }

    {
        const auto rep = exoflex::bellows_sweep(p, n, 1e-6);
        double min_spread = rep.entries[0].spread;
        for (const auto& e : rep.entries) min_spread = std::min(min_spread, e.spread);
        cl.add("bellows_all_masks", rep.counterexample_confirmed,
               "min spread over 64 masks = " + fmt(min_spread));
    }

    {
        bool ok = true;
        double worst_fit = 0.0;
        for (int f = 0; f < 8; ++f) {
            const auto ev = exoflex::classify_kind(p, f, std::min(n, 256), tol.degenerate_sin);
            const auto fit = exoflex::structural_fit(
                exoflex::face_tangent_series(p, f, Component::plus, std::min(n, 256)));
            const int deg = ((f & 1) ? 1 : 0) + ((f & 2) ? 1 : 0);
            const exoflex::Kind expect = deg == 0   ? exoflex::Kind::first
                                         : deg == 1 ? exoflex::Kind::second
                                                    : exoflex::Kind::third;
            if (ev.kind != expect) ok = false;
            if (fit.sign_ab != (deg == 0 ? 1 : -1)) ok = false;
            worst_fit = std::max(worst_fit, fit.residual);
        }
        cl.add("kind_classification", ok && worst_fit < tol.fit_residual,
               "worst fit residual = " + fmt(worst_fit));
    }

    {
        double worst = std::abs(exoflex::elliptic_K(0.0) - exoflex::kPi / 2.0);
        for (double k : {0.1, 0.5, 0.9}) {
            const auto mod = exoflex::make_modulus(k);
            const auto jv = exoflex::jacobi(0.7 * mod.K, k);
            worst = std::max(worst, std::abs(jv.sn * jv.sn + jv.cn * jv.cn - 1.0));
            worst = std::max(worst, std::abs(jv.dn * jv.dn + k * k * jv.sn * jv.sn - 1.0));
        }
        cl.add("elliptic_identities", worst < 1e-12, "worst residual = " + fmt(worst));
    }

    json j;
    j["params"] = params_json(p);
    j["samples"] = n;
    j["checks"] = cl.entries;
    j["ok"] = cl.all_ok;
    write_text(ensure_out(sc) / "verify.json", j.dump(2) + "\n");
    std::cout << (cl.all_ok ? "all checks passed\n" : "CHECKS FAILED\n");
    return cl.all_ok ? 0 : 2;
}

struct RawArgs {
    std::string scenario_file;
    std::string params_str;
    std::string component;
    std::string out_dir;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> tol_kv;
    std::vector<std::string> masks;
};

ExoticParams parse_params(const std::string& s) {
    std::array<double, 4> v{};
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t used = 0;
        v[i] = std::stod(s.substr(pos), &used);
        pos += used;
        if (i < 3) {
            if (pos >= s.size() || s[pos] != ',')
                throw std::invalid_argument("--params needs p1,p2,q1,q2");
            ++pos;
        }
    }
    if (pos != s.size()) throw std::invalid_argument("--params needs p1,p2,q1,q2");
    return {v[0], v[1], v[2], v[3]};
}

Scenario assemble(const RawArgs& raw, const CLI::App* sub) {
    Scenario sc;
    if (!raw.scenario_file.empty()) {
        std::ifstream in(raw.scenario_file);
        if (!in) throw std::invalid_argument("cannot read scenario " + raw.scenario_file);
        json j = json::parse(in);
        if (j.contains("params")) {
            const auto& a = j["params"];
            if (!a.is_array() || a.size() != 4)
                throw std::invalid_argument("scenario params must be [p1,p2,q1,q2]");
            sc.params = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>(),
                         a[3].get<double>()};
        }
        if (j.contains("samples")) sc.samples = j["samples"].get<int>();
        if (j.contains("seed")) sc.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("component")) sc.component = j["component"].get<std::string>();
        if (j.contains("masks")) sc.masks = j["masks"].get<std::vector<std::string>>();
        if (j.contains("tolerances"))
            for (const auto& [key, val] : j["tolerances"].items())
                sc.tol_overrides[key] = val.get<double>();
        if (j.contains("out")) sc.out_dir = j["out"].get<std::string>();
    }
    if (sub->count("--params")) sc.params = parse_params(raw.params_str);
    if (sub->count("--samples")) sc.samples = static_cast<int>(raw.samples);
    if (sub->count("--seed")) sc.seed = raw.seed;
    if (sub->count("--component")) sc.component = raw.component;
    if (sub->count("--out")) sc.out_dir = raw.out_dir;
    if (sub->count("--mask")) sc.masks = raw.masks;
    for (const auto& kv : raw.tol_kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--tol expects KEY=VAL");
        sc.tol_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    sc.tol.apply(sc.tol_overrides);
    if (sc.component != "plus" && sc.component != "minus" && sc.component != "both")
        throw std::invalid_argument("--component must be plus, minus, or both");
    if (sc.samples < 8 || sc.samples % 4 != 0)
        throw std::invalid_argument("--samples must be a multiple of 4, at least 8");
    return sc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exotic flexible octahedra on the 3-sphere: construction, tracing, verification"};
    app.require_subcommand(1);

    RawArgs raw;
    std::function<int(const Scenario&)> action;
    const CLI::App* chosen = nullptr;

    auto add_sub = [&](const std::string& name, const std::string& desc,
                       int (*fn)(const Scenario&)) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--scenario", raw.scenario_file, "scenario JSON file");
        sub->add_option("--params", raw.params_str, "p1,p2,q1,q2");
        sub->add_option("--samples", raw.samples, "trace nodes per component");
        sub->add_option("--seed", raw.seed, "oracle seed");
        sub->add_option("--component", raw.component, "plus, minus, or both");
        sub->add_option("--out", raw.out_dir, "output directory");
        sub->add_option("--tol", raw.tol_kv, "tolerance override KEY=VAL")
            ->take_all();
        sub->add_option("--mask", raw.masks, "restrict to these antipode masks")->take_all();
        sub->callback([&, fn, sub]() {
            action = fn;
            chosen = sub;
        });
        return sub;
    };

    add_sub("validate", "check parameters and report family constants", run_validate);
    add_sub("sweep", "trace components and write volume-profile CSVs", run_sweep);
    add_sub("bellows", "sweep all 64 antipode masks for non-constant volume", run_bellows);
    add_sub("classify", "report link shapes and per-face kinds", run_classify);
    add_sub("verify", "run the full invariant suite", run_verify);
    add_sub("elliptic-check", "verify the elliptic-function layer", run_elliptic_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        return action(assemble(raw, chosen));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
