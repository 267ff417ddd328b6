#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brjuno/dival.hpp"
#include "brjuno/julia.hpp"

namespace brjuno {

namespace {

double down_mpq(const mpq_class& q) {
    double d = q.get_d();
    if (mpq_class(d) <= q) return d;
    return dival::down(d);
}

double up_mpq(const mpq_class& q) {
    double d = q.get_d();
    if (mpq_class(d) >= q) return d;
    return dival::up(d);
}

dival dival_of(const dyadic& d) {
    mpq_class q = d.to_mpq();
    return {down_mpq(q), up_mpq(q)};
}

struct flat_ball {
    dival cx, cy, r;
};

// Uniform-cell index over ball centers.  Queries walk Chebyshev rings
// outward; a ring bound certifies that unvisited balls cannot reduce the
// minimum below what has been seen.
struct ball_index {
    std::vector<flat_ball> balls;
    std::map<std::pair<long, long>, std::vector<size_t>> cells;
    double cell = 1.0, ox = 0.0, oy = 0.0;
    double max_r_hi = 0.0;
    long kx_lo = 0, kx_hi = 0, ky_lo = 0, ky_hi = 0;

    explicit ball_index(const std::vector<dyadic_ball>& in) {
        balls.reserve(in.size());
        double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
        for (const dyadic_ball& b : in) {
            flat_ball f{dival_of(b.cx), dival_of(b.cy), dival_of(b.r)};
            xlo = std::fmin(xlo, f.cx.lo);
            xhi = std::fmax(xhi, f.cx.hi);
            ylo = std::fmin(ylo, f.cy.lo);
            yhi = std::fmax(yhi, f.cy.hi);
            max_r_hi = std::fmax(max_r_hi, f.r.hi);
            balls.push_back(f);
        }
        ox = xlo;
        oy = ylo;
        double extent = std::fmax(xhi - xlo, yhi - ylo);
        double target = std::ceil(std::sqrt(double(balls.size())));
        cell = std::fmax(extent / std::fmax(target, 1.0), 1e-12);
        bool first = true;
        for (size_t i = 0; i < balls.size(); ++i) {
            auto k = key(balls[i].cx.lo, balls[i].cy.lo);
            cells[k].push_back(i);
            if (first || k.first < kx_lo) kx_lo = k.first;
            if (first || k.first > kx_hi) kx_hi = k.first;
            if (first || k.second < ky_lo) ky_lo = k.second;
            if (first || k.second > ky_hi) ky_hi = k.second;
            first = false;
        }
    }

    std::pair<long, long> key(double x, double y) const {
        return {long(std::floor((x - ox) / cell)), long(std::floor((y - oy) / cell))};
    }

    // encloses min over balls of (|p - center| - radius); argmin, when
    // requested, names a ball attaining the smallest upper gap
    dival min_gap(const dival& px, const dival& py, size_t* argmin = nullptr) const {
        dival best{1e300, 1e300};
        auto visit = [&](size_t i) {
            const flat_ball& b = balls[i];
            dival d = ((px - b.cx).sqr() + (py - b.cy).sqr()).sqrt() - b.r;
            best.lo = std::fmin(best.lo, d.lo);
            if (d.hi < best.hi) {
                best.hi = d.hi;
                if (argmin) *argmin = i;
            }
        };
        // the query may sit far outside the populated box, so walk rings
        // around a clamped center and account for the offset in the bound
        double qx = 0.5 * (px.lo + px.hi), qy = 0.5 * (py.lo + py.hi);
        double ix = std::floor((qx - ox) / cell), iy = std::floor((qy - oy) / cell);
        long cx = long(std::fmin(std::fmax(ix, double(kx_lo - 1)), double(kx_hi + 1)));
        long cy = long(std::fmin(std::fmax(iy, double(ky_lo - 1)), double(ky_hi + 1)));
        double off = std::fmax(std::fabs(ix - double(cx)), std::fabs(iy - double(cy)));
        long maxring = 0;
        maxring = std::max(maxring, std::labs(kx_lo - cx));
        maxring = std::max(maxring, std::labs(kx_hi - cx));
        maxring = std::max(maxring, std::labs(ky_lo - cy));
        maxring = std::max(maxring, std::labs(ky_hi - cy));
        auto cell_at = [&](long dx, long dy) {
            auto it = cells.find({cx + dx, cy + dy});
            if (it == cells.end()) return;
            for (size_t i : it->second) visit(i);
        };
        for (long ring = 0; ring <= maxring; ++ring) {
            if (ring == 0) {
                cell_at(0, 0);
            } else {
                for (long dx = -ring; dx <= ring; ++dx) {
                    cell_at(dx, -ring);
                    cell_at(dx, ring);
                }
                for (long dy = -ring + 1; dy <= ring - 1; ++dy) {
                    cell_at(-ring, dy);
                    cell_at(ring, dy);
                }
            }
            // a ball not yet visited sits in a cell at least ring+1 rings from
            // the walk center, hence at least ring-off rings from the query
            // cell; one more ring of slack absorbs in-cell positions, so its
            // center is at least (ring-off-1) cells away from the query point
            double floor_gap = dival::down(
                dival::down(dival::down(double(ring) - off - 1.0) * cell) - max_r_hi);
            if (floor_gap >= best.hi) break;
        }
        return best;
    }
};

// certified lower bound of sup over points of ball a of dist(point, union b)
double directed_lower(const flat_ball& a, const ball_index& bx, size_t samples) {
    double best = 0.0;
    auto probe = [&](const dival& px, const dival& py) {
        dival g = bx.min_gap(px, py);
        best = std::fmax(best, std::fmax(g.lo, 0.0));
    };
    // a sample only counts once it is certifiably inside the ball, so aim
    // slightly below the radius; the loss is ~r*2^-38, far below tolerance
    double inset = a.r.lo * (1.0 - 0x1p-38);
    auto probe_offset = [&](double oxr, double oyr) {
        for (int shrink = 0; shrink < 4; ++shrink) {
            dival px = a.cx + dival::point(oxr);
            dival py = a.cy + dival::point(oyr);
            dival d2 = (px - a.cx).sqr() + (py - a.cy).sqr();
            if (d2.hi <= a.r.lo * a.r.lo) {
                probe(px, py);
                return;
            }
            oxr *= 0.875;
            oyr *= 0.875;
        }
    };
    size_t nearest = 0;
    dival g0 = bx.min_gap(a.cx, a.cy, &nearest);
    best = std::fmax(best, std::fmax(g0.lo, 0.0));
    // the boundary point facing away from the nearest ball attains the
    // directed distance when that ball dominates, so probe it directly
    double dx = 0.5 * (a.cx.lo + a.cx.hi) - 0.5 * (bx.balls[nearest].cx.lo + bx.balls[nearest].cx.hi);
    double dy = 0.5 * (a.cy.lo + a.cy.hi) - 0.5 * (bx.balls[nearest].cy.lo + bx.balls[nearest].cy.hi);
    double norm = std::hypot(dx, dy);
    if (norm > 0.0 && std::isfinite(norm))
        probe_offset(dx / norm * inset, dy / norm * inset);
    for (size_t s = 0; s < samples; ++s) {
        double t = 2.0 * M_PI * double(s) / double(samples);
        probe_offset(std::cos(t) * inset, std::sin(t) * inset);
    }
    return best;
}

// [lower, upper] on h(A -> B) = sup over A of dist(-, B)
dival directed_hausdorff(const ball_index& ax, const ball_index& bx,
                         size_t samples) {
    double upper = 0.0, lower = 0.0;
    for (const flat_ball& a : ax.balls) {
        dival g = bx.min_gap(a.cx, a.cy);
        upper = std::fmax(upper, std::fmax(dival::up(g.hi + a.r.hi), 0.0));
        lower = std::fmax(lower, directed_lower(a, bx, samples));
    }
    return {lower, upper};
}

} // namespace

interval hausdorff(const dyadic_ball_set& a, const dyadic_ball_set& b,
                   const hausdorff_options& opt) {
    if (a.balls.empty() || b.balls.empty())
        throw std::invalid_argument("hausdorff: empty ball set");

    ball_index ax(a.balls), bx(b.balls);
    double tol = up_mpq(opt.tolerance);
    size_t samples = 8;
    dival best{0.0, 1e300};
    for (size_t round = 0;; ++round) {
        dival ab = directed_hausdorff(ax, bx, samples);
        dival ba = directed_hausdorff(bx, ax, samples);
        dival d{std::fmax(ab.lo, ba.lo), std::fmax(ab.hi, ba.hi)};
        best.lo = std::fmax(best.lo, d.lo); // lower bounds only improve
        best.hi = std::fmin(best.hi, d.hi);
        if (best.hi - best.lo <= tol || round + 1 >= opt.max_rounds) break;
        samples *= 2;
    }
    return interval::from_double(best.lo, best.hi);
}

} // namespace brjuno
