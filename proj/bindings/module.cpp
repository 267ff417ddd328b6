#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "brjuno/contfrac.hpp"
#include "brjuno/dynamics.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/julia.hpp"
#include "brjuno/perturb.hpp"
#include "brjuno/phi.hpp"
#include "brjuno/siegel.hpp"

namespace py = pybind11;
using namespace brjuno;

namespace {

mpq_class rat(const std::string& s) {
    mpq_class q(s, 10);
    q.canonicalize();
    return q;
}

py::tuple endpoints(const interval& v) {
    return py::make_tuple(v.lo_double(), v.hi_double());
}

py::tuple phi_enclosure(const std::string& cf_text, long prec) {
    contfrac cf = contfrac::parse(cf_text);
    interval v = cf.tail() == cf_tail::terminating ? phi_trunc(cf, prec) : phi(cf, prec);
    return endpoints(v);
}

py::tuple phi_trunc_enclosure(const std::string& rational, long prec) {
    return endpoints(phi_trunc(rat(rational), prec));
}

py::list convergents_py(const std::string& cf_text, size_t count) {
    py::list rows;
    for (const cf_convergent& c : contfrac::parse(cf_text).convergents(count))
        rows.append(py::make_tuple(c.p.get_str(), c.q.get_str()));
    return rows;
}

py::dict theta_to_c_py(const std::string& rational) {
    cinterval c = theta_to_c(rat(rational), interval::default_prec);
    py::dict d;
    d["re"] = endpoints(c.re);
    d["im"] = endpoints(c.im);
    return d;
}

py::dict upsilon_rational_py(const std::string& rational) {
    upsilon_row row = upsilon_rational_detail(rat(rational));
    py::dict d;
    d["p"] = row.p.get_str();
    d["q"] = row.q.get_str();
    d["phi_trunc"] = endpoints(row.phi_trunc);
    d["abs_a"] = endpoints(row.abs_a);
    d["l"] = endpoints(row.l);
    d["upsilon"] = endpoints(row.upsilon);
    d["endpoint_convention"] = row.endpoint_convention;
    return d;
}

py::dict choose_m_py(const std::string& cf_text, size_t n, const std::string& eps) {
    m_choice mc = choose_m(contfrac::parse(cf_text), n, rat(eps));
    py::dict d;
    d["m"] = mc.m;
    d["m_tail"] = mc.m_tail;
    d["m_slack"] = mc.m_slack;
    d["m_guard"] = mc.m_guard;
    return d;
}

py::dict find_crossing_py(const std::string& cf_text, size_t n, size_t m,
                          const std::string& eps) {
    perturbation_plan plan = find_crossing(contfrac::parse(cf_text), n, m, rat(eps));
    py::dict d;
    d["digit_bits"] = double(mpz_sizeinbase(plan.big_digit.get_mpz_t(), 2));
    d["digit"] = plan.big_digit.get_str();
    d["exact_first_crossing"] = plan.exact_first_crossing;
    d["phi_omega"] = endpoints(plan.phi_omega);
    d["phi_beta"] = endpoints(plan.phi_beta);
    d["visited"] = plan.visited.size();
    return d;
}

py::dict classify_connectivity_py(const std::string& c_re, const std::string& c_im,
                                  size_t maxiter) {
    mpq_class re = rat(c_re), im = rat(c_im);
    mpq_class radius = abs(re) + abs(im);
    if (radius < 2) radius = 2;
    radius += 1;
    connectivity_report rep =
        classify_connectivity(cinterval::from_mpq(re, im, 96), maxiter, radius);
    py::dict d;
    switch (rep.verdict) {
    case connectivity::connected: d["verdict"] = "connected"; break;
    case connectivity::cantor: d["verdict"] = "cantor"; break;
    default: d["verdict"] = "undecided"; break;
    }
    d["escape_index"] = rep.escape_index;
    d["iterations"] = rep.iterations;
    return d;
}

py::dict render_to_files_py(const std::string& c_re, const std::string& c_im,
                            const std::string& half_width, size_t res, long m,
                            size_t maxiter, const std::string& image_path,
                            const std::string& balls_path) {
    render_params p;
    p.c_re = rat(c_re);
    p.c_im = rat(c_im);
    p.half_width = rat(half_width);
    p.res = res;
    p.m = m;
    p.maxiter = maxiter;
    render_result r = render(p);
    // the emitters add their own comment marker
    std::string echo = "brjuno render --c=" + c_re + "+" + c_im + "i --half-width=" +
                       half_width + " --res=" + std::to_string(res) + " --m=" +
                       std::to_string(m);
    if (!image_path.empty()) write_pgm(r.grid, image_path, echo);
    if (!balls_path.empty()) write_balls_jsonl(r.balls, balls_path, echo);
    py::dict d;
    d["outside"] = r.grid.count(pixel_verdict::outside_k);
    d["inside"] = r.grid.count(pixel_verdict::inside_k);
    d["near"] = r.grid.count(pixel_verdict::near_j);
    d["unresolved"] = r.grid.count(pixel_verdict::unresolved);
    d["balls"] = r.balls.balls.size();
    d["has_claim"] = r.balls.has_claim;
    d["claimed_m"] = r.balls.claimed_m;
    return d;
}

py::tuple hausdorff_files_py(const std::string& a_path, const std::string& b_path,
                             const std::string& tolerance) {
    hausdorff_options opt;
    opt.tolerance = rat(tolerance);
    return endpoints(hausdorff(read_balls_jsonl(a_path), read_balls_jsonl(b_path), opt));
}

py::dict conformal_radius_py(const std::string& cf_text, size_t order) {
    radius_estimate est = conformal_radius(contfrac::parse(cf_text), order);
    py::dict d;
    d["radius_hat"] = est.point_estimate;
    d["oscillation"] = est.oscillation;
    d["rigorous"] = est.rigorous;
    return d;
}

py::dict upsilon_estimate_py(const std::string& cf_text, size_t order) {
    upsilon_report rep = upsilon_estimate(contfrac::parse(cf_text), order);
    py::dict d;
    d["phi"] = endpoints(rep.phi);
    d["radius_hat"] = rep.radius_hat;
    d["upsilon_hat"] = rep.upsilon_hat;
    d["oscillation"] = rep.oscillation;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "certified enclosures for quadratic dynamics at rotation numbers";

    py::register_exception<precision_error>(mod, "PrecisionError");
    py::register_exception<digit_cap_error>(mod, "DigitCapError");
    py::register_exception<overshoot_error>(mod, "OvershootError");

    mod.def("phi", &phi_enclosure, py::arg("cf"), py::arg("prec") = 40,
            "enclosure (lo, hi) of the rotation series value of a continued fraction");
    mod.def("phi_trunc", &phi_trunc_enclosure, py::arg("rational"), py::arg("prec") = 40,
            "enclosure of the truncated series value of a rational");
    mod.def("convergents", &convergents_py, py::arg("cf"), py::arg("count") = 10,
            "list of (p, q) decimal strings");
    mod.def("theta_to_c", &theta_to_c_py, py::arg("rational"),
            "quadratic parameter c for rotation number theta");
    mod.def("upsilon_rational", &upsilon_rational_py, py::arg("rational"),
            "certified upsilon row at a rational rotation number");
    mod.def("choose_m", &choose_m_py, py::arg("cf"), py::arg("n"), py::arg("eps"),
            "insertion-depth choice for a certified increment");
    mod.def("find_crossing", &find_crossing_py, py::arg("cf"), py::arg("n"), py::arg("m"),
            py::arg("eps"), "summary of the digit insertion crossing phi + eps");
    mod.def("classify_connectivity", &classify_connectivity_py, py::arg("c_re"),
            py::arg("c_im"), py::arg("maxiter") = 256,
            "connected / cantor / undecided with escape index");
    mod.def("render_to_files", &render_to_files_py, py::arg("c_re"), py::arg("c_im"),
            py::arg("half_width") = "5/4", py::arg("res") = 128, py::arg("m") = 6,
            py::arg("maxiter") = 4096, py::arg("image_path") = "",
            py::arg("balls_path") = "", "render a certified grid and write outputs");
    mod.def("hausdorff_files", &hausdorff_files_py, py::arg("a_path"), py::arg("b_path"),
            py::arg("tolerance") = "1/4096",
            "distance enclosure between two ball-set files");
    mod.def("conformal_radius", &conformal_radius_py, py::arg("cf"), py::arg("order") = 256,
            "non-rigorous linearizer-decay radius estimate");
    mod.def("upsilon_estimate", &upsilon_estimate_py, py::arg("cf"), py::arg("order") = 256,
            "non-rigorous upsilon estimate from the radius estimate");
}
