#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "brjuno/complex_interval.hpp"
#include "brjuno/dyadic.hpp"
#include "brjuno/interval.hpp"

namespace brjuno {

struct dyadic_ball {
    dyadic cx, cy;
    dyadic r; // > 0
    bool operator==(const dyadic_ball& o) const {
        return cx == o.cx && cy == o.cy && r == o.r;
    }
};

struct dyadic_ball_set {
    std::vector<dyadic_ball> balls;
    // when true, the emitter certifies the coverage direction: every point of
    // the target set inside the window lies within 2^-claimed_m of a ball
    // center.  The reverse direction (balls close to the target) holds only
    // empirically and is what the fidelity checks measure.
    bool has_claim = false;
    long claimed_m = 0;
};

enum class pixel_verdict : unsigned char { inside_k, outside_k, near_j, unresolved };

struct render_grid {
    size_t res = 0;
    dyadic x0, y0, h; // pixel (ix, iy) center = (x0 + ix h, y0 + iy h)
    std::vector<pixel_verdict> verdicts; // row-major, index iy * res + ix
    std::vector<long> escape_witness;    // center escape index, -1 when none

    pixel_verdict at(size_t ix, size_t iy) const { return verdicts[iy * res + ix]; }
    long witness(size_t ix, size_t iy) const { return escape_witness[iy * res + ix]; }
    dyadic center_x(size_t ix) const { return x0 + h * dyadic(long(ix)); }
    dyadic center_y(size_t iy) const { return y0 + h * dyadic(long(iy)); }
    size_t count(pixel_verdict v) const;
};

struct render_params {
    mpq_class c_re = 0, c_im = 0;       // parameter c of z^2 + c
    mpq_class view_re = 0, view_im = 0; // viewport center, dyadic
    mpq_class half_width = mpq_class(5, 4); // dyadic, > 0
    size_t res = 512;                   // pixels per side, power of two
    long m = 6;                         // claimed-precision exponent
    size_t maxiter = 4096;
    size_t threads = 0;                 // 0 picks the hardware count
};

struct render_result {
    render_grid grid;
    dyadic_ball_set balls;
};

// Classifies every pixel of the square viewport against K(z^2 + c):
//   outside_k: certified escape (whole pixel box, or center escape plus a
//              distance bound clearing the pixel ball)
//   inside_k:  pixel box certifiably enters the trap disk (|c| < 1/4 only)
//   near_j:    center escapes but the distance bound cannot clear the pixel
//   unresolved: no certificate within maxiter
// One ball per near_j pixel, radius 23/32 h (covers the pixel).  The claim is
// set only when every pixel resolved and the ball radius is within 2^-m.
render_result render(const render_params& params);

struct distance_estimate_result {
    bool escaped = false;
    interval bound; // certified lower bound on dist(z, J) when escaped
    size_t iterations = 0;
};

// Lower bound on the distance from z to J(z^2 + c) through the escape-rate
// function G: dist >= (1 - e^{-2G}) / (4 |grad G|), evaluated at the first
// iterate beyond |z| = 1e8 with certified remainder terms.  When z does not
// certifiably escape within maxiter the result carries escaped = false and a
// trivial bound.
distance_estimate_result distance_estimate(const cinterval& c, const cinterval& z,
                                           size_t maxiter);

struct hausdorff_options {
    mpq_class tolerance = mpq_class(1, 4096); // stop refining below this width
    size_t max_rounds = 4;                    // boundary-sample doublings
};

// Enclosure of the Hausdorff distance between the two ball unions.
interval hausdorff(const dyadic_ball_set& a, const dyadic_ball_set& b,
                   const hausdorff_options& opt = {});

// File emitters; all write through a temp file and rename, and produce
// byte-identical output for identical inputs.
void write_pgm(const render_grid& grid, const std::string& path,
               const std::string& config_echo);
void write_ppm(const render_grid& grid, const std::string& path,
               const std::string& config_echo);
void write_balls_jsonl(const dyadic_ball_set& set, const std::string& path,
                       const std::string& config_echo);
dyadic_ball_set read_balls_jsonl(const std::string& path);

} // namespace brjuno
