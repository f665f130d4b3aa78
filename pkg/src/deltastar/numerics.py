"""Floating-point lab for the exact layer.

Three independent checks live here:

* mollified one-sided limits — pair a piecewise polynomial against the
  shifted bump kernel v_eps^(n)(x -+ eps) by adaptive quadrature and
  compare with the exact one-sided jet value;
* scattering and bound states of a rank-2 boundary condition, from the
  2x2 linear systems on plane-wave and decaying-exponential jets;
* a Dirichlet finite-difference Hamiltonian on [-L, L] whose low
  eigenvalues can be compared against the bound-state energies of the
  operator the regularized potential approximates.

Everything here is float; the exact reference values come from the
symbolic modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad
from scipy.linalg import eigvalsh_tridiagonal
from scipy.optimize import brentq

from .boundary_ops import PreconditionError, SidedDelta, apply_shifting_delta_dist
from .dist_core import as_poly, pair_polynomial_test
from .schrodinger import BCMatrix, extract_bc


# --------------------------------------------------------------------------
# the bump kernel


_bump_norm_cache = []
_bump_poly_cache = [[Fraction(1)]]


def _bump_norm():
    """1 / integral of exp(-1/(1-x^2)) over (-1, 1), computed once."""
    if not _bump_norm_cache:
        raw, _ = quad(lambda x: math.exp(-1.0 / (1.0 - x * x)), -1.0, 1.0,
                      epsabs=1e-12, epsrel=1e-10)
        _bump_norm_cache.append(1.0 / raw)
    return _bump_norm_cache[0]


def _bump_poly(order):
    """Numerator of the rational prefactor in the order-th derivative.

    d^k/dx^k exp(-1/(1-x^2)) = P_k(x)/(1-x^2)^(2k) * exp(-1/(1-x^2)),
    with P_{k+1} = (P_k'(1-x^2) + 4k x P_k)(1-x^2) - 2x P_k, kept exact.
    """
    while len(_bump_poly_cache) <= order:
        k = len(_bump_poly_cache) - 1
        p = _bump_poly_cache[-1]

        def times_x(c):
            return [Fraction(0)] + c

        def minus_x2(c):  # c * (1 - x^2)
            out = c + [Fraction(0), Fraction(0)]
            for j, a in enumerate(c):
                out[j + 2] -= a
            return out

        dp = [j * a for j, a in enumerate(p)][1:] or [Fraction(0)]
        inner = minus_x2(dp)
        for j, a in enumerate(times_x(p)):
            inner[j] += 4 * k * a
        nxt = minus_x2(inner)
        for j, a in enumerate(times_x(p)):
            nxt[j] -= 2 * a
        while len(nxt) > 1 and not nxt[-1]:
            nxt.pop()
        _bump_poly_cache.append(nxt)
    return _bump_poly_cache[order]


def bump(x, order=0):
    """order-th derivative of the unit-mass bump at a float point."""
    t = 1.0 - x * x
    if t < 1e-6:  # exp(-1/t) underflows long before this
        return 0.0
    num = 0.0
    for c in reversed(_bump_poly(order)):
        num = num * x + float(c)
    return _bump_norm() * math.exp(-1.0 / t) * num / t ** (2 * order)


@dataclass(frozen=True)
class SmoothingKernel:
    """Shifted, scaled bump derivative v_eps^(order)(x -+ eps).

    side "right" shifts the support to (0, 2*eps); side "left" to
    (-2*eps, 0).  As eps -> 0 pairing against the kernel converges to the
    corresponding one-sided jet sample.
    """

    eps: float
    order: int = 0
    side: str = "right"

    def __post_init__(self):
        if not self.eps > 0:
            raise PreconditionError("eps must be positive")
        if self.side not in ("left", "right"):
            raise PreconditionError("side must be 'left' or 'right'")

    @property
    def support(self):
        if self.side == "right":
            return (0.0, 2.0 * self.eps)
        return (-2.0 * self.eps, 0.0)

    def __call__(self, x):
        center = self.eps if self.side == "right" else -self.eps
        return bump((x - center) / self.eps, self.order) / self.eps ** (
            1 + self.order
        )

    def mass(self):
        """Quadrature of the kernel over its support (1 for order 0).

        For order >= 1 the true value is 0 by total cancellation between
        lobes of size eps**-order, so the absolute tolerance is scaled by
        that swing; otherwise quad stalls on roundoff.
        """
        lo, hi = self.support
        swing = max(1.0, self.eps ** (-self.order))
        val, _ = quad(
            self, lo, hi, epsabs=1e-11 * swing, epsrel=1e-10, limit=200
        )
        return val


# --------------------------------------------------------------------------
# weak one-sided limits


def weak_limit_value(F, t=1, order=0, side="right"):
    """Exact limit of the mollified pairing, via the sided-delta action."""
    combo = apply_shifting_delta_dist(SidedDelta(side, order), F)
    return pair_polynomial_test(combo, t)


def mollified_pairing(F, t=1, order=0, side="right", eps=0.1):
    """<v_eps^(order)(. -+ eps) F, t> by adaptive quadrature.

    F must be purely piecewise-polynomial (no delta terms); the integrand
    is split at breakpoints of F inside the kernel support.
    """
    if F.deltas:
        raise PreconditionError("mollified pairing needs a delta-free F")
    tp = as_poly(t)
    kern = SmoothingKernel(eps, order, side)
    lo, hi = kern.support
    cuts = [lo] + [
        float(b) for b in F.breakpoints if lo < float(b) < hi
    ] + [hi]

    has_imag = any(
        c.im for p in F.pieces for c in p.coeffs
    ) or any(c.im for c in tp.coeffs)

    def integrand(part):
        def f(x):
            v = F.eval_float(x) * tp.eval_float(x) * kern(x)
            return v.real if part == "re" else v.imag
        return f

    total = 0.0 + 0.0j
    for a, b in zip(cuts, cuts[1:]):
        re, _ = quad(integrand("re"), a, b, epsabs=1e-12, epsrel=1e-10,
                     limit=200)
        im = 0.0
        if has_imag:
            im, _ = quad(integrand("im"), a, b, epsabs=1e-12, epsrel=1e-10,
                         limit=200)
        total += re + 1j * im
    return total


def weak_limit_check(F, t=1, order=0, side="right",
                     eps_list=(0.1, 0.05, 0.025)):
    """Absolute quadrature-vs-exact errors, one per eps.

    Exercises the convergence of the mollified one-sided action for jet
    orders 0 and 1; errors should decrease (not necessarily strictly, an
    exact-zero limit can hit quadrature noise) as eps shrinks.
    """
    exact = complex(weak_limit_value(F, t, order, side))
    return [
        abs(mollified_pairing(F, t, order, side, eps) - exact)
        for eps in eps_list
    ]


# --------------------------------------------------------------------------
# scattering and bound states

_NAN = complex(float("nan"), float("nan"))


@dataclass(frozen=True)
class ScatteringData:
    """Reflection/transmission amplitudes at one wavenumber.

    singular means the jet system was degenerate at this k (a bound state
    embedded at the sampling energy or a rank defect); the amplitudes are
    NaN in that case.
    """

    k: float
    r_left: complex = _NAN
    t_left: complex = _NAN
    r_right: complex = _NAN
    t_right: complex = _NAN
    singular: bool = False


def _as_bc(bc):
    return bc if isinstance(bc, BCMatrix) else extract_bc(bc)


def _solve_rt(rows, jet0, jet_r, jet_t):
    A = np.array(
        [[np.dot(r, jet_r), np.dot(r, jet_t)] for r in rows], dtype=complex
    )
    b = np.array([-np.dot(r, jet0) for r in rows], dtype=complex)
    scale = max(1.0, float(np.abs(A).max()))
    if abs(np.linalg.det(A)) <= 1e-12 * scale * scale:
        return None
    sol = np.linalg.solve(A, b)
    return complex(sol[0]), complex(sol[1])


def scattering(bc, k):
    """Plane-wave amplitudes for a rank-2 boundary condition.

    Solves row . jet = 0 on e^{ikx} + r e^{-ikx} | t e^{ikx} (left
    incidence) and its mirror (right incidence).
    """
    bc = _as_bc(bc)
    if bc.rank != 2:
        raise PreconditionError("scattering needs a rank-2 boundary condition")
    if not k > 0:
        raise PreconditionError("wavenumber must be positive")
    rows = [np.array(r, dtype=complex) for r in bc.as_complex()]
    ik = 1j * k
    left = _solve_rt(
        rows,
        np.array([1, 0, ik, 0]),
        np.array([1, 0, -ik, 0]),
        np.array([0, 1, 0, ik]),
    )
    right = _solve_rt(
        rows,
        np.array([0, 1, 0, -ik]),
        np.array([0, 1, 0, ik]),
        np.array([1, 0, -ik, 0]),
    )
    if left is None or right is None:
        return ScatteringData(k, singular=True)
    return ScatteringData(k, left[0], left[1], right[0], right[1])


def bound_states(bc, kappa_max=50.0, samples=10000):
    """Negative-energy eigenvalues E = -kappa^2, ascending.

    Roots of the determinant of the boundary condition on the decaying
    jets (1, 0, kappa, 0) and (0, 1, 0, -kappa), located by sign-change
    bracketing on a uniform kappa grid and polished by brentq.
    """
    bc = _as_bc(bc)
    if bc.rank != 2:
        raise PreconditionError("bound states need a rank-2 boundary condition")
    r1, r2 = [np.array(r, dtype=complex) for r in bc.as_complex()]

    def det(kappa):
        a = r1[0] + kappa * r1[2]
        b = r1[1] - kappa * r1[3]
        c = r2[0] + kappa * r2[2]
        d = r2[1] - kappa * r2[3]
        return a * d - b * c

    kappas = np.linspace(kappa_max / samples, kappa_max, samples)
    vals = np.array([det(k) for k in kappas])
    scale = float(np.abs(vals).max())
    if scale == 0.0:
        return []
    phase = vals[int(np.abs(vals).argmax())]
    phase /= abs(phase)
    real = (vals / phase).real

    roots = []
    for j in range(len(kappas) - 1):
        a, b = real[j], real[j + 1]
        if a == 0.0:
            roots.append(float(kappas[j]))
        elif a * b < 0.0:
            roots.append(
                brentq(
                    lambda k: (det(k) / phase).real,
                    float(kappas[j]),
                    float(kappas[j + 1]),
                    xtol=1e-14,
                    rtol=8.9e-16,
                )
            )
    if real[-1] == 0.0:
        roots.append(float(kappas[-1]))

    good = []
    for k in roots:
        if abs(det(k)) > 1e-7 * scale:
            continue  # phase-projected crossing, not a true root
        if good and abs(k - good[-1]) < 1e-9 * max(1.0, k):
            continue
        good.append(k)
    return sorted(-k * k for k in good)


# --------------------------------------------------------------------------
# grid Hamiltonian


@dataclass(frozen=True)
class GridHamiltonian:
    """Central-difference -psi'' + V psi on [-L, L], Dirichlet at the ends.

    diag/offdiag form the symmetric tridiagonal matrix over the N interior
    points x_j = -L + (j+1) h, h = 2L/(N+1).
    """

    L: float
    N: int
    x: np.ndarray
    diag: np.ndarray
    offdiag: np.ndarray


def grid_hamiltonian(L, N, potential=None):
    if N < 3:
        raise PreconditionError("need at least 3 grid points")
    if not L > 0:
        raise PreconditionError("half-width must be positive")
    h = 2.0 * L / (N + 1)
    x = -L + h * (np.arange(N) + 1)
    v = np.zeros(N) if potential is None else np.array(
        [float(potential(float(xi))) for xi in x]
    )
    diag = 2.0 / (h * h) + v
    offdiag = np.full(N - 1, -1.0 / (h * h))
    return GridHamiltonian(L, N, x, diag, offdiag)


def grid_eigenvalues(H, m):
    """m smallest eigenvalues of the grid Hamiltonian, ascending."""
    if not 1 <= m <= H.N:
        raise PreconditionError("need 1 <= m <= N eigenvalues")
    vals = eigvalsh_tridiagonal(
        H.diag, H.offdiag, select="i", select_range=(0, m - 1)
    )
    return [float(v) for v in vals]
