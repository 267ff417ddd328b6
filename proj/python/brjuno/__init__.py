"""Certified enclosures for quadratic dynamics at irrational rotation numbers.

Thin convenience layer over the compiled core. All enclosure-returning
functions yield (lo, hi) float pairs that bound the exact value.
"""

from ._core import (
    DigitCapError,
    OvershootError,
    PrecisionError,
    choose_m,
    classify_connectivity,
    conformal_radius,
    find_crossing,
    hausdorff_files,
    phi,
    phi_trunc,
    render_to_files,
    theta_to_c,
    upsilon_estimate,
    upsilon_rational,
)
from ._core import convergents as _convergents_raw

__all__ = [
    "DigitCapError",
    "OvershootError",
    "PrecisionError",
    "choose_m",
    "classify_connectivity",
    "conformal_radius",
    "convergents",
    "find_crossing",
    "hausdorff_files",
    "phi",
    "phi_trunc",
    "render_to_files",
    "theta_to_c",
    "upsilon_estimate",
    "upsilon_rational",
]


def convergents(cf, count=10):
    """Convergents (p_n, q_n) of a continued fraction, as Python ints."""
    return [(int(p), int(q)) for p, q in _convergents_raw(cf, count)]
