#include "brjuno/julia.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "brjuno/dival.hpp"
#include "brjuno/errors.hpp"

namespace brjuno {

namespace {

double down_mpq(const mpq_class& q) {
    double d = q.get_d(); // truncated toward zero
    if (mpq_class(d) <= q) return d;
    return dival::down(d);
}

double up_mpq(const mpq_class& q) {
    double d = q.get_d();
    if (mpq_class(d) >= q) return d;
    return dival::up(d);
}

dival dival_of(const mpq_class& q) { return {down_mpq(q), up_mpq(q)}; }

dival dival_of(const dyadic& lo, const dyadic& hi) {
    return {down_mpq(lo.to_mpq()), up_mpq(hi.to_mpq())};
}

bool is_dyadic(const mpq_class& q) {
    mpz_class den = q.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

dyadic dyadic_of(const mpq_class& q) {
    if (!is_dyadic(q)) throw std::invalid_argument("render: value is not dyadic");
    long k = long(mpz_sizeinbase(q.get_den().get_mpz_t(), 2)) - 1;
    return dyadic(q.get_num(), -k);
}

struct pixel_axis {
    dyadic center;
    dival box;   // [center - h/2, center + h/2]
    dival point; // center as a (possibly 1-ulp) box
};

std::vector<pixel_axis> build_axis(const dyadic& origin, const dyadic& h, size_t res) {
    dyadic half = h.mul_2exp(-1);
    std::vector<pixel_axis> axis;
    axis.reserve(res);
    for (size_t i = 0; i < res; ++i) {
        pixel_axis a;
        a.center = origin + h * dyadic(long(i));
        a.box = dival_of(a.center - half, a.center + half);
        a.point = dival_of(a.center, a.center);
        axis.push_back(a);
    }
    return axis;
}

} // namespace

size_t render_grid::count(pixel_verdict v) const {
    return size_t(std::count(verdicts.begin(), verdicts.end(), v));
}

distance_estimate_result distance_estimate(const cinterval& c, const cinterval& z,
                                           size_t maxiter) {
    mpfr_prec_t prec = std::max(z.re.prec(), mpfr_prec_t(96));
    if (!c.abs2().certainly_lt(mpq_class(1000000) * 1000000))
        throw std::invalid_argument("distance_estimate: |c| out of supported range");

    distance_estimate_result out;
    out.bound = interval::from_double(0.0, std::numeric_limits<double>::infinity());

    mpq_class esc2("10000000000000000"); // |z| >= 1e8
    cinterval zc = z;
    cinterval dz = cinterval::exact(1, 0, prec);
    for (size_t n = 1; n <= maxiter; ++n) {
        dz = (zc * dz).mul_2exp(1);
        zc = zc.sqr() + c;
        interval az2 = zc.abs2();
        if (!az2.certainly_gt(esc2)) continue;

        // G = 2^-n log|z_n| up to the tail sum of 2^-(k+1) log|1 + c/z_k^2|
        interval u = c.abs2().sqrt() / az2;
        if (!u.certainly_lt(mpq_class(1, 16))) break; // enclosure too loose
        interval g_main = az2.log().mul_2exp(-1 - long(n));
        dyadic rem = u.mul_2exp(2 - long(n)).hi_dyadic();
        interval g = g_main + interval::from_dyadic(-rem, rem);
        if (!g.is_positive()) break;

        // |grad G| = 2^-n |dz_n| / |z_n| with the same multiplicative tail
        interval base = (dz.abs2() / az2).sqrt().mul_2exp(-long(n));
        dyadic slack = u.mul_2exp(3).hi_dyadic();
        interval corr = interval(1, prec) + interval::from_dyadic(-slack, slack);
        interval grad = base * corr;
        out.escaped = true;
        out.iterations = n;
        if (!grad.is_positive()) return out; // z' met 0; only the trivial bound
        interval one_minus = -((-g.mul_2exp(1)).expm1()); // 1 - e^{-2G}
        out.bound = one_minus / grad.mul_2exp(2);
        return out;
    }
    out.iterations = maxiter;
    return out;
}

render_result render(const render_params& p) {
    if (p.res < 4 || (p.res & (p.res - 1)) != 0)
        throw std::invalid_argument("render: resolution must be a power of two >= 4");
    if (p.half_width <= 0 || !is_dyadic(p.half_width) || !is_dyadic(p.view_re) ||
        !is_dyadic(p.view_im))
        throw std::invalid_argument("render: viewport data must be dyadic");
    if (p.m < 1) throw std::invalid_argument("render: m must be >= 1");
    if (p.maxiter < 16) throw std::invalid_argument("render: maxiter too small");

    render_result out;
    render_grid& grid = out.grid;
    grid.res = p.res;
    grid.h = dyadic_of(p.half_width * 2 / long(p.res));
    dyadic half = grid.h.mul_2exp(-1);
    grid.x0 = dyadic_of(p.view_re - p.half_width) + half;
    grid.y0 = dyadic_of(p.view_im - p.half_width) + half;
    grid.verdicts.assign(p.res * p.res, pixel_verdict::unresolved);
    grid.escape_witness.assign(p.res * p.res, -1);

    dyadic r_ball = grid.h.mul_2exp(-5) * dyadic(23); // >= pixel half-diagonal
    mpq_class r_ball_q = r_ball.to_mpq();

    mpq_class abs_c_over = std::max(mpq_class(abs(p.c_re) + abs(p.c_im)), mpq_class(2));
    mpq_class escape_r = abs_c_over + 1;
    double r2_hi = up_mpq(escape_r * escape_r);
    bool trap_enabled = p.c_re * p.c_re + p.c_im * p.c_im < mpq_class(1, 16);
    const double trap2 = 0.25;
    const double blow2 = 1e10;

    cdival cbox = {dival_of(p.c_re), dival_of(p.c_im)};
    cinterval c_iv = cinterval::from_mpq(p.c_re, p.c_im, 96);

    std::vector<pixel_axis> xs = build_axis(grid.x0, grid.h, p.res);
    std::vector<pixel_axis> ys = build_axis(grid.y0, grid.h, p.res);

    dyadic quarter = grid.h.mul_2exp(-2);
    auto box_traps = [&](const cdival& b) {
        cdival z = b;
        for (size_t i = 1; i <= p.maxiter; ++i) {
            z = z.sqr_plus(cbox);
            if (!z.valid()) return false;
            dival m2 = z.mod2();
            if (m2.hi <= trap2) return true;
            if (m2.lo > r2_hi || m2.hi > blow2) return false;
        }
        return false;
    };

    auto run_pixel = [&](size_t ix, size_t iy) {
        size_t idx = iy * p.res + ix;
        cdival box = {xs[ix].box, ys[iy].box};
        cdival z = box;
        for (size_t i = 1; i <= p.maxiter; ++i) {
            z = z.sqr_plus(cbox);
            if (!z.valid()) break;
            dival m2 = z.mod2();
            if (m2.lo > r2_hi) {
                grid.verdicts[idx] = pixel_verdict::outside_k;
                grid.escape_witness[idx] = long(i);
                return;
            }
            if (trap_enabled && m2.hi <= trap2) {
                grid.verdicts[idx] = pixel_verdict::inside_k;
                return;
            }
            if (m2.hi > blow2) break;
        }

        // box inconclusive: escape through the center point, then try to
        // clear the whole pixel with the distance bound
        cdival zc = {xs[ix].point, ys[iy].point};
        cdival zn = zc;
        for (size_t i = 1; i <= p.maxiter; ++i) {
            zn = zn.sqr_plus(cbox);
            if (!zn.valid()) return; // unresolved
            dival m2 = zn.mod2();
            if (m2.lo > r2_hi) {
                cinterval center = cinterval::from_dyadic(xs[ix].center, ys[iy].center);
                distance_estimate_result est = distance_estimate(c_iv, center, p.maxiter);
                if (est.escaped && est.bound.certainly_gt(r_ball_q))
                    grid.verdicts[idx] = pixel_verdict::outside_k;
                else
                    grid.verdicts[idx] = pixel_verdict::near_j;
                grid.escape_witness[idx] = long(i);
                return;
            }
            if (trap_enabled && m2.hi <= trap2) {
                // the center provably reaches the interior trap; refine on a
                // 4x4 subdivision: if every sub-box traps the whole pixel is
                // interior, otherwise it may meet the boundary and keeps its
                // ball, which leaves the cover faithful either way
                bool whole = true;
                for (int sy = 0; sy < 4 && whole; ++sy) {
                    dival by = dival_of(ys[iy].center - half + quarter * dyadic(long(sy)),
                                        ys[iy].center - half + quarter * dyadic(long(sy + 1)));
                    for (int sx = 0; sx < 4 && whole; ++sx) {
                        dival bx =
                            dival_of(xs[ix].center - half + quarter * dyadic(long(sx)),
                                     xs[ix].center - half + quarter * dyadic(long(sx + 1)));
                        whole = box_traps({bx, by});
                    }
                }
                grid.verdicts[idx] =
                    whole ? pixel_verdict::inside_k : pixel_verdict::near_j;
                return;
            }
            if (m2.hi > blow2) return; // unresolved
        }
    };

    size_t nt = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min(nt, p.res);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&](size_t t) {
        try {
            for (size_t iy = t; iy < p.res; iy += nt)
                for (size_t ix = 0; ix < p.res; ++ix) run_pixel(ix, iy);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (size_t t = 1; t < nt; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    for (size_t iy = 0; iy < p.res; ++iy)
        for (size_t ix = 0; ix < p.res; ++ix)
            if (grid.at(ix, iy) == pixel_verdict::near_j)
                out.balls.balls.push_back({xs[ix].center, ys[iy].center, r_ball});

    // every pixel certified and balls small enough: the ball set is within
    // 2^-m of the true set in the window (an empty set certifies an empty
    // intersection, so no nonemptiness condition here)
    bool all_resolved = grid.count(pixel_verdict::unresolved) == 0;
    mpq_class claim_r = mpq_class(1) / (mpz_class(1) << p.m);
    if (all_resolved && r_ball_q <= claim_r) {
        out.balls.has_claim = true;
        out.balls.claimed_m = p.m;
    }
    return out;
}

namespace {

void atomic_write(const std::string& path, const std::string& bytes) {
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

unsigned char gray_of(pixel_verdict v) {
    switch (v) {
    case pixel_verdict::outside_k: return 255;
    case pixel_verdict::inside_k: return 64;
    case pixel_verdict::near_j: return 0;
    default: return 160;
    }
}

void rgb_of(pixel_verdict v, unsigned char* px) {
    switch (v) {
    case pixel_verdict::outside_k: px[0] = 255; px[1] = 255; px[2] = 255; break;
    case pixel_verdict::inside_k: px[0] = 60; px[1] = 60; px[2] = 200; break;
    case pixel_verdict::near_j: px[0] = 0; px[1] = 0; px[2] = 0; break;
    default: px[0] = 255; px[1] = 80; px[2] = 80; break;
    }
}

} // namespace

void write_pgm(const render_grid& grid, const std::string& path,
               const std::string& config_echo) {
    std::ostringstream os;
    os << "P5\n# " << config_echo << "\n" << grid.res << " " << grid.res << "\n255\n";
    std::string body;
    body.reserve(grid.res * grid.res);
    for (size_t row = 0; row < grid.res; ++row) {
        size_t iy = grid.res - 1 - row; // image scans top-down
        for (size_t ix = 0; ix < grid.res; ++ix)
            body.push_back(char(gray_of(grid.at(ix, iy))));
    }
    atomic_write(path, os.str() + body);
}

void write_ppm(const render_grid& grid, const std::string& path,
               const std::string& config_echo) {
    std::ostringstream os;
    os << "P6\n# " << config_echo << "\n" << grid.res << " " << grid.res << "\n255\n";
    std::string body;
    body.reserve(grid.res * grid.res * 3);
    for (size_t row = 0; row < grid.res; ++row) {
        size_t iy = grid.res - 1 - row;
        for (size_t ix = 0; ix < grid.res; ++ix) {
            unsigned char px[3];
            rgb_of(grid.at(ix, iy), px);
            body.append(reinterpret_cast<char*>(px), 3);
        }
    }
    atomic_write(path, os.str() + body);
}

void write_balls_jsonl(const dyadic_ball_set& set, const std::string& path,
                       const std::string& config_echo) {
    std::ostringstream os;
    os << "# " << config_echo << "\n";
    nlohmann::json meta;
    meta["type"] = "meta";
    meta["count"] = set.balls.size();
    meta["has_claim"] = set.has_claim;
    meta["claimed_m"] = set.claimed_m;
    os << meta.dump() << "\n";
    for (const dyadic_ball& b : set.balls) {
        nlohmann::json j;
        j["cx"] = b.cx.str();
        j["cy"] = b.cy.str();
        j["r"] = b.r.str();
        os << j.dump() << "\n";
    }
    atomic_write(path, os.str());
}

dyadic_ball_set read_balls_jsonl(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    dyadic_ball_set set;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        nlohmann::json j = nlohmann::json::parse(line);
        if (j.contains("type") && j["type"] == "meta") {
            set.has_claim = j.value("has_claim", false);
            set.claimed_m = j.value("claimed_m", 0L);
            continue;
        }
        dyadic_ball b;
        b.cx = dyadic::parse(j.at("cx").get<std::string>());
        b.cy = dyadic::parse(j.at("cy").get<std::string>());
        b.r = dyadic::parse(j.at("r").get<std::string>());
        if (b.r.sgn() <= 0) throw std::runtime_error("ball radius must be positive");
        set.balls.push_back(b);
    }
    return set;
}

} // namespace brjuno
