#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brjuno/contfrac.hpp"
#include "brjuno/dynamics.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/julia.hpp"
#include "brjuno/perturb.hpp"
#include "brjuno/phi.hpp"
#include "brjuno/siegel.hpp"

namespace {

using namespace brjuno;

void atomic_write_text(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f.write(bytes.data(), std::streamsize(bytes.size()));
        if (!f) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        atomic_write_text(out_path, text);
}

mpq_class parse_rational(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1); // mpq_set_str rejects a leading +
    if (t.empty()) throw std::invalid_argument("empty number");
    size_t dot = t.find('.');
    if (dot != std::string::npos) {
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        size_t frac_len = t.size() - dot - 1;
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    mpq_class q(t, 10);
    q.canonicalize();
    return q;
}

// "a", "a+bi", "a-bi", "bi" with rational or decimal parts
std::pair<mpq_class, mpq_class> parse_complex(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    if (t.back() == 'i') {
        t.pop_back();
        // split the imaginary part at the last top-level sign
        size_t split = std::string::npos;
        for (size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '+' &&
                t[i - 1] != '-') {
                split = i;
                break;
            }
        }
        std::string re = split == std::string::npos ? "" : t.substr(0, split);
        std::string im = split == std::string::npos ? t : t.substr(split);
        if (im.empty() || im == "+") im = "1";
        else if (im == "-") im = "-1";
        return {re.empty() ? mpq_class(0) : parse_rational(re), parse_rational(im)};
    }
    return {parse_rational(t), mpq_class(0)};
}

std::string echo_line(const std::string& sub, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string line = "# brjuno " + sub;
    for (const auto& [k, v] : kv) line += " --" + k + "=" + v;
    return line;
}

struct cli_state {
    bool midpoint = false;
};

std::string ival(const interval& v, bool midpoint, int digits = 17) {
    if (midpoint) {
        std::ostringstream os;
        os.precision(digits);
        os << v.mid_double();
        return os.str();
    }
    return v.str(digits);
}

int run_phi(const std::string& cf_text, long prec, const std::string& out,
            bool midpoint) {
    contfrac cf = contfrac::parse(cf_text);
    interval v = cf.tail() == cf_tail::terminating ? phi_trunc(cf, prec) : phi(cf, prec);
    std::ostringstream os;
    os << echo_line("phi", {{"cf", cf.format()}, {"prec", std::to_string(prec)}}) << "\n";
    os << ival(v, midpoint) << "\n";
    emit(out, os.str());
    return 0;
}

int run_convergents(const std::string& cf_text, size_t count, const std::string& out) {
    contfrac cf = contfrac::parse(cf_text);
    std::ostringstream os;
    os << echo_line("convergents", {{"cf", cf.format()}, {"count", std::to_string(count)}})
       << "\n";
    os << "n,p,q\n";
    std::vector<cf_convergent> cs = cf.convergents(count);
    for (size_t n = 0; n < cs.size(); ++n)
        os << n + 1 << "," << cs[n].p.get_str() << "," << cs[n].q.get_str() << "\n";
    emit(out, os.str());
    return 0;
}

std::string digit_brief(const mpz_class& n) {
    std::string dec = n.get_str();
    if (dec.size() <= 40) return dec;
    return dec.substr(0, 20) + "..(" + std::to_string(mpz_sizeinbase(n.get_mpz_t(), 2)) +
           " bits)";
}

int run_perturb_search(const std::string& cf_text, long n_flag, const std::string& eps_text,
                       const std::string& out, bool midpoint) {
    contfrac omega = contfrac::parse(cf_text);
    mpq_class eps = parse_rational(eps_text);
    size_t n = n_flag < 0 ? omega.prefix_len() : size_t(n_flag);
    m_choice mc = choose_m(omega, n, eps);
    size_t m = mc.m;
    perturbation_plan plan;
    for (int bump = 0;; ++bump) {
        try {
            plan = find_crossing(omega, n, m, eps);
            break;
        } catch (const overshoot_error&) {
            if (bump >= 8) throw;
            ++m;
        }
    }
    std::ostringstream os;
    os << echo_line("perturb-search", {{"cf", omega.format()},
                                       {"n", std::to_string(n)},
                                       {"eps", eps.get_str()}})
       << "\n";
    os << "m=" << m << " (tail=" << mc.m_tail << " slack=" << mc.m_slack
       << " guard=" << mc.m_guard << ")\n";
    os << "digit=" << digit_brief(plan.big_digit) << "\n";
    os << "exact_first_crossing=" << (plan.exact_first_crossing ? "true" : "false") << "\n";
    os << "phi_omega=" << ival(plan.phi_omega, midpoint) << "\n";
    os << "phi_beta=" << ival(plan.phi_beta, midpoint) << "\n";
    os << "visited=" << plan.visited.size() << "\n";
    emit(out, os.str());
    return 0;
}

int run_staircase(const std::string& prefix_text, size_t steps,
                  const std::string& schedule_text, long target_bits,
                  double cap_bits, const std::string& out) {
    contfrac prefix = contfrac::parse(prefix_text);
    std::vector<mpq_class> schedule;
    if (!schedule_text.empty()) {
        std::stringstream ss(schedule_text);
        std::string item;
        while (std::getline(ss, item, ',')) schedule.push_back(parse_rational(item));
    } else if (target_bits > 0) {
        contfrac gamma(prefix.prefix(), cf_tail::all_ones);
        for (size_t i = 0; i < steps; ++i) {
            // size each increment so the next digit stays near target_bits
            schedule.push_back(feasible_epsilon(gamma, gamma.prefix_len(), target_bits));
            perturb_options opt;
            m_choice mc = choose_m(gamma, gamma.prefix_len(), schedule.back());
            perturbation_plan plan =
                find_crossing(gamma, gamma.prefix_len(), mc.m, schedule.back(), opt);
            gamma = plan.beta;
        }
    } else {
        schedule = geometric_schedule(steps);
    }

    perturb_options opt;
    opt.digit_cap_bits = cap_bits;
    staircase_result res = staircase(prefix, schedule, opt);

    std::ostringstream os;
    os << echo_line("staircase", {{"prefix", prefix.format()},
                                  {"steps", std::to_string(schedule.size())}})
       << "\n";
    os << "step,eps,m,digit,phi_lo,phi_hi,window_l,window_r\n";
    for (const fooling_state& st : res.states) {
        os << st.step << "," << st.epsilon.get_str() << "," << st.m << ","
           << digit_brief(st.digit) << "," << st.phi.lo_dyadic().to_double() << ","
           << st.phi.hi_dyadic().to_double() << "," << st.l.to_double() << ","
           << st.r.to_double() << "\n";
    }
    if (!res.complete) {
        os << "# incomplete: " << res.failure << "\n";
        emit(out, os.str());
        return 4;
    }
    emit(out, os.str());
    return 0;
}

int run_upsilon_table(const std::string& thetas_text, size_t fibonacci,
                      const std::string& out, bool midpoint) {
    std::vector<mpq_class> thetas;
    if (!thetas_text.empty()) {
        std::stringstream ss(thetas_text);
        std::string item;
        while (std::getline(ss, item, ',')) thetas.push_back(parse_rational(item));
    } else {
        auto cs = contfrac::golden().convergents(fibonacci);
        for (const auto& c : cs) thetas.emplace_back(mpq_class(c.p, c.q));
    }
    std::ostringstream os;
    os << echo_line("upsilon-table",
                    {{"count", std::to_string(thetas.size())}})
       << "\n";
    if (midpoint)
        os << "p,q,phi_trunc,abs_a,l,upsilon\n";
    else
        os << "p,q,phi_trunc_lo,phi_trunc_hi,abs_a_lo,abs_a_hi,l_lo,l_hi,upsilon_lo,upsilon_hi\n";
    for (const mpq_class& t : thetas) {
        upsilon_row row = upsilon_rational_detail(t);
        os << row.p.get_str() << "," << row.q.get_str() << ",";
        if (midpoint) {
            os << row.phi_trunc.mid_double() << "," << row.abs_a.mid_double() << ","
               << row.l.mid_double() << "," << row.upsilon.mid_double();
        } else {
            os << row.phi_trunc.lo_double() << "," << row.phi_trunc.hi_double() << ","
               << row.abs_a.lo_double() << "," << row.abs_a.hi_double() << ","
               << row.l.lo_double() << "," << row.l.hi_double() << ","
               << row.upsilon.lo_double() << "," << row.upsilon.hi_double();
        }
        if (row.endpoint_convention) os << ",endpoint_convention";
        os << "\n";
    }
    emit(out, os.str());
    return 0;
}

int run_render(const std::string& c_text, const std::string& view_text,
               const std::string& half_text, size_t res, long m, size_t maxiter,
               size_t threads, const std::string& image_out, const std::string& balls_out) {
    render_params p;
    auto c = parse_complex(c_text);
    p.c_re = c.first;
    p.c_im = c.second;
    auto view = parse_complex(view_text);
    p.view_re = view.first;
    p.view_im = view.second;
    p.half_width = parse_rational(half_text);
    p.res = res;
    p.m = m;
    p.maxiter = maxiter;
    p.threads = threads;

    std::string echo = echo_line("render", {{"c", c_text},
                                            {"view-center", view_text},
                                            {"half-width", half_text},
                                            {"res", std::to_string(res)},
                                            {"m", std::to_string(m)},
                                            {"maxiter", std::to_string(maxiter)}});
    render_result r = render(p);
    std::string bare = echo.substr(2); // the emitters add their own comment marker
    if (!image_out.empty()) {
        if (image_out.size() >= 4 && image_out.substr(image_out.size() - 4) == ".ppm")
            write_ppm(r.grid, image_out, bare);
        else
            write_pgm(r.grid, image_out, bare);
    }
    if (!balls_out.empty()) write_balls_jsonl(r.balls, balls_out, bare);

    std::ostringstream os;
    os << echo << "\n";
    os << "outside=" << r.grid.count(pixel_verdict::outside_k)
       << " inside=" << r.grid.count(pixel_verdict::inside_k)
       << " near=" << r.grid.count(pixel_verdict::near_j)
       << " unresolved=" << r.grid.count(pixel_verdict::unresolved) << "\n";
    os << "balls=" << r.balls.balls.size() << " has_claim="
       << (r.balls.has_claim ? "true" : "false") << " claimed_m=" << r.balls.claimed_m
       << "\n";
    std::cout << os.str();
    return 0;
}

int run_radius(const std::string& cf_text, size_t order, long prec_phi,
               const std::string& out, bool midpoint) {
    contfrac cf = contfrac::parse(cf_text);
    upsilon_report rep = upsilon_estimate(cf, order, prec_phi);
    std::ostringstream os;
    os << echo_line("radius", {{"cf", cf.format()}, {"order", std::to_string(order)}})
       << "\n";
    os << "radius_hat=" << rep.radius_hat << " (non-rigorous)\n";
    os << "oscillation=" << rep.oscillation << "\n";
    os << "phi=" << ival(rep.phi, midpoint) << "\n";
    os << "upsilon_hat=" << rep.upsilon_hat << " (non-rigorous)\n";
    emit(out, os.str());
    return 0;
}

int run_hausdorff(const std::string& a_path, const std::string& b_path,
                  const std::string& tol_text, const std::string& out, bool midpoint) {
    dyadic_ball_set a = read_balls_jsonl(a_path);
    dyadic_ball_set b = read_balls_jsonl(b_path);
    hausdorff_options opt;
    opt.tolerance = parse_rational(tol_text);
    interval d = hausdorff(a, b, opt);
    std::ostringstream os;
    os << echo_line("hausdorff", {{"a", a_path}, {"b", b_path}}) << "\n";
    os << ival(d, midpoint) << "\n";
    emit(out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified quadratic-dynamics toolkit"};
    app.require_subcommand(1);
    cli_state state;
    app.add_flag("--midpoint", state.midpoint,
                 "print point estimates instead of intervals (non-rigorous)");

    std::string cf_text = "[;ones]", out_path, eps_text = "1/2";
    long prec = 40;
    size_t count = 10;
    long n_flag = -1;

    auto* sc_phi = app.add_subcommand("phi", "enclose the rotation-series value of a continued fraction");
    sc_phi->add_option("--cf", cf_text, "continued fraction, e.g. [1,1,1,20;ones]")->required();
    sc_phi->add_option("--prec", prec, "result width bound 2^-prec");
    sc_phi->add_option("--out", out_path, "output file (default stdout)");

    auto* sc_conv = app.add_subcommand("convergents", "list convergents p_n/q_n");
    sc_conv->add_option("--cf", cf_text)->required();
    sc_conv->add_option("--count", count);
    sc_conv->add_option("--out", out_path);

    auto* sc_pert = app.add_subcommand("perturb-search", "find the digit insertion crossing phi + eps");
    sc_pert->add_option("--cf", cf_text)->required();
    sc_pert->add_option("--eps", eps_text, "rational increment");
    sc_pert->add_option("--n", n_flag, "formal prefix length (default: prefix length)");
    sc_pert->add_option("--out", out_path);

    std::string prefix_text = "[1]", schedule_text;
    size_t steps = 5;
    long target_bits = 0;
    double cap_bits = double(1L << 26);
    auto* sc_stair = app.add_subcommand("staircase", "iterated certified increments of the series value");
    sc_stair->add_option("--prefix", prefix_text);
    sc_stair->add_option("--steps", steps);
    sc_stair->add_option("--schedule", schedule_text, "comma list of rational increments");
    sc_stair->add_option("--target-bits", target_bits,
                         "derive a feasible schedule keeping digits near this size");
    sc_stair->add_option("--digit-cap-bits", cap_bits);
    sc_stair->add_option("--out", out_path);

    std::string thetas_text;
    size_t fibonacci = 10;
    auto* sc_ups = app.add_subcommand("upsilon-table", "rational upsilon table as CSV");
    sc_ups->add_option("--thetas", thetas_text, "comma list of rationals");
    sc_ups->add_option("--fibonacci", fibonacci, "golden-mean convergents up to this index");
    sc_ups->add_option("--out", out_path);

    std::string c_text = "0+0i", view_text = "0+0i", half_text = "5/4";
    std::string image_out, balls_out;
    size_t res = 512, maxiter = 4096, threads = 0;
    long m_exp = 6;
    auto* sc_render = app.add_subcommand(
        "render", "certified pixel classification of a filled Julia set over the "
                  "declared sub-window (default half-width 5/4 around 0)");
    sc_render->add_option("--c", c_text, "parameter, e.g. 0+0i or -3/4+0i")->required();
    sc_render->add_option("--view-center", view_text);
    sc_render->add_option("--half-width", half_text, "dyadic half width of the window");
    sc_render->add_option("--res", res, "pixels per side (power of two)");
    sc_render->add_option("--m", m_exp, "claimed-precision exponent");
    sc_render->add_option("--maxiter", maxiter);
    sc_render->add_option("--threads", threads, "0 = hardware count");
    sc_render->add_option("--out", image_out, "image file (.pgm or .ppm)");
    sc_render->add_option("--balls", balls_out, "ball set as JSON lines");

    size_t order = 256;
    auto* sc_rad = app.add_subcommand("radius", "linearizer-decay radius estimate (non-rigorous)");
    sc_rad->add_option("--cf", cf_text)->required();
    sc_rad->add_option("--order", order);
    sc_rad->add_option("--prec", prec, "phi enclosure width 2^-prec");
    sc_rad->add_option("--out", out_path);

    std::string a_path, b_path, tol_text = "1/4096";
    auto* sc_haus = app.add_subcommand("hausdorff", "distance enclosure between two ball sets");
    sc_haus->add_option("--a", a_path)->required();
    sc_haus->add_option("--b", b_path)->required();
    sc_haus->add_option("--tolerance", tol_text);
    sc_haus->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_phi->parsed()) return run_phi(cf_text, prec, out_path, state.midpoint);
        if (sc_conv->parsed()) return run_convergents(cf_text, count, out_path);
        if (sc_pert->parsed())
            return run_perturb_search(cf_text, n_flag, eps_text, out_path, state.midpoint);
        if (sc_stair->parsed())
            return run_staircase(prefix_text, steps, schedule_text, target_bits, cap_bits,
                                 out_path);
        if (sc_ups->parsed())
            return run_upsilon_table(thetas_text, fibonacci, out_path, state.midpoint);
        if (sc_render->parsed())
            return run_render(c_text, view_text, half_text, res, m_exp, maxiter, threads,
                              image_out, balls_out);
        if (sc_rad->parsed()) return run_radius(cf_text, order, prec, out_path, state.midpoint);
        if (sc_haus->parsed())
            return run_hausdorff(a_path, b_path, tol_text, out_path, state.midpoint);
    } catch (const digit_cap_error& e) {
        std::cerr << "digit cap: " << e.what() << "\n";
        return 4;
    } catch (const precision_error& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return 3;
    } catch (const overshoot_error& e) {
        std::cerr << "window overshoot: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
