"""Shared random generators for the property tests.

Everything takes an explicit random.Random so each test controls its own
seed; coefficients are exact rationals (optionally with an imaginary
part) so all comparisons downstream stay exact.
"""

from fractions import Fraction

from deltastar import DeltaTerm, PiecewiseDist, Poly, Scalar
from deltastar.boundary_ops import BoundaryJet


def rand_frac(rng, span=3, dens=(1, 2, 3, 4)):
    return Fraction(rng.randint(-span, span), rng.choice(dens))


def rand_scalar(rng, span=3, imag_rate=0.3):
    im = rand_frac(rng, span) if rng.random() < imag_rate else 0
    return Scalar(rand_frac(rng, span), im)


def rand_poly(rng, max_deg=3, imag_rate=0.3):
    return Poly(
        [rand_scalar(rng, imag_rate=imag_rate)
         for _ in range(rng.randint(0, max_deg) + 1)]
    )


def rand_dist(rng, n=1, points=(-1, 0, 1), max_deg=3, max_order=None,
              imag_rate=0.3, delta_rate=0.5):
    """Random element with breakpoints and delta points inside ``points``."""
    if max_order is None:
        max_order = n
    pts = sorted(rng.sample(points, rng.randint(0, len(points))))
    pieces = [rand_poly(rng, max_deg, imag_rate) for _ in range(len(pts) + 1)]
    deltas = [
        DeltaTerm(Fraction(p), rng.randint(0, max_order),
                  rand_scalar(rng, imag_rate=imag_rate))
        for p in points
        if rng.random() < delta_rate
    ]
    return PiecewiseDist(n, [Fraction(p) for p in pts], pieces, deltas)


def rand_jet(rng, span=4):
    return BoundaryJet(
        rand_scalar(rng, span),
        rand_scalar(rng, span),
        rand_scalar(rng, span),
        rand_scalar(rng, span),
    )


def jet_from_vector(v):
    return BoundaryJet(v[0], v[1], v[2], v[3])
