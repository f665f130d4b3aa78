"""Exact arithmetic for piecewise-polynomial distributions with point masses.

A distribution is stored as a regularity index ``n``, ascending rational
breakpoints x_1 < ... < x_m, the m+1 polynomial pieces living on the open
intervals between them (the first piece starts at -inf, the last ends at
+inf), and a list of point masses c * delta^(j)(x - x_i) sitting on
breakpoints with j <= n.  All coefficients are complex numbers with
rational real and imaginary parts, so every operation in this module is
exact and equality is decidable.

Canonical form, enforced by the constructor:

  * breakpoints strictly increasing; every delta location is a breakpoint
    (missing ones are inserted, splitting the covering piece);
  * deltas merged by (point, order), zero coefficients dropped, sorted;
  * a breakpoint carrying no delta whose two adjacent pieces are equal
    polynomials is removed;
  * the zero distribution has no breakpoints and a single zero piece.

The product ``star`` is one-sided: star(F, G) is the limit of
F(x) * G(x + eps) as eps -> 0 from above, so deltas of F see the piece of
G to the *right* of their location while deltas of G see the piece of F
to the *left*.  The product is associative and distributive but not
commutative (star(delta(0), heaviside(0)) = delta(0) while the reverse
order gives 0).  ``hormander_product`` is the classical product of
distributions whose singular supports do not meet; it is symmetric where
defined and agrees with star there.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction
from math import comb


class AlgebraError(ValueError):
    """Structural violation in exact distribution arithmetic."""


class DegreeCapError(AlgebraError):
    """A polynomial exceeded the configured degree cap."""


class RegularityError(AlgebraError):
    """A delta order exceeded the regularity index of its space."""


class DisjointnessError(AlgebraError):
    """Singular supports meet where the classical product needs them apart."""


class DivergentIntegralError(AlgebraError):
    """A pairing integral has unbounded support with a nonzero integrand."""


# --------------------------------------------------------------------------
# scalars


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError("expected an exact rational, got %r" % (x,))


class Scalar:
    """Complex number with exact rational real and imaginary parts.

    Accepts ints, Fractions and strings Fraction understands ("3/4",
    "0.25") for either part; where whole scalars are coerced, strings in
    the token form ("2i", "1-3/4i") work too.  Arithmetic mixes freely
    with ints and Fractions; floats are rejected to keep everything
    exact.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @property
    def is_zero(self):
        return not self.re and not self.im

    @property
    def is_real(self):
        return not self.im

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def __bool__(self):
        return not self.is_zero

    def __add__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if not d:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __eq__(self, other):
        other = as_scalar_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        # match the hash of the plain rational when the value is real
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def token(self):
        """Canonical text form: "p/q", "p/qi" or "a+bi" (lowest terms)."""
        if not self.im:
            return _rat_token(self.re)
        if not self.re:
            return _rat_token(self.im) + "i"
        sign = "+" if self.im > 0 else "-"
        return _rat_token(self.re) + sign + _rat_token(abs(self.im)) + "i"

    def __repr__(self):
        return self.token()


def _rat_token(q):
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (
        q.numerator,
        q.denominator,
    )


def as_scalar(x):
    s = as_scalar_or_none(x)
    if s is None:
        raise TypeError("cannot use %r as an exact scalar" % (x,))
    return s


def as_scalar_or_none(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        return parse_scalar(x)
    return None


def parse_scalar(text):
    """Inverse of Scalar.token: "3", "-1/2", "2i", "-i", "1-3/4i"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar token")
    if not s.endswith("i"):
        return Scalar(Fraction(s))
    body = s[:-1]
    # split an "a+bi" form at the sign separating the two parts
    cut = -1
    for k in range(1, len(body)):
        if body[k] in "+-" and body[k - 1] not in "+-/.":
            cut = k
    if cut == -1:
        re_part, im_part = "", body
    else:
        re_part, im_part = body[:cut], body[cut:]
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    re = Fraction(re_part) if re_part else Fraction(0)
    return Scalar(re, im)


# --------------------------------------------------------------------------
# polynomials

_DEGREE_CAP = 8


def degree_cap():
    return _DEGREE_CAP


def set_degree_cap(cap):
    """Set the module-wide polynomial degree cap (default 8)."""
    global _DEGREE_CAP
    if not isinstance(cap, int) or cap < 1:
        raise ValueError("degree cap must be a positive integer")
    _DEGREE_CAP = cap


class Poly:
    """Dense polynomial over Scalar; coeffs[k] multiplies x**k.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple and degree -1.  Construction past the module
    degree cap raises DegreeCapError.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        if len(cs) - 1 > _DEGREE_CAP:
            raise DegreeCapError(
                "polynomial degree %d exceeds cap %d" % (len(cs) - 1, _DEGREE_CAP)
            )
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([c + (b[k] if k < len(b) else 0) for k, c in enumerate(a)])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly()
            out = [Scalar(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for j, a in enumerate(self.coeffs):
                for k, b in enumerate(other.coeffs):
                    out[j + k] = out[j + k] + a * b
            return Poly(out)
        s = as_scalar_or_none(other)
        if s is None:
            return NotImplemented
        return Poly([c * s for c in self.coeffs])

    def __rmul__(self, other):
        s = as_scalar_or_none(other)
        if s is None:
            return NotImplemented
        return Poly([s * c for c in self.coeffs])

    def deriv(self, k=1):
        cs = self.coeffs
        for _ in range(k):
            cs = tuple(cs[j] * j for j in range(1, len(cs)))
        return Poly(cs)

    def eval(self, x):
        """Exact evaluation; x may be an int, Fraction or Scalar."""
        x = as_scalar(x)
        acc = Scalar(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def __repr__(self):
        return "Poly(%s)" % (", ".join(c.token() for c in self.coeffs))


def as_poly(p):
    if isinstance(p, Poly):
        return p
    if isinstance(p, (list, tuple)):
        return Poly(p)
    s = as_scalar_or_none(p)
    if s is not None:
        return Poly([s])
    raise TypeError("cannot use %r as a polynomial" % (p,))


# --------------------------------------------------------------------------
# distributions


def as_point(x):
    """Exact real location on the line."""
    if isinstance(x, Scalar):
        if x.im:
            raise AlgebraError("point %s is not real" % x.token())
        return x.re
    if isinstance(x, (int, Fraction, str)):
        return _frac(x) if not isinstance(x, str) else Fraction(x)
    raise TypeError("points must be exact rationals, got %r" % (x,))


class DeltaTerm:
    """One point mass coeff * delta^(order)(x - point)."""

    __slots__ = ("point", "order", "coeff")

    def __init__(self, point, order, coeff):
        self.point = as_point(point)
        if not isinstance(order, int) or order < 0:
            raise AlgebraError("delta order must be a nonnegative integer")
        self.order = order
        self.coeff = as_scalar(coeff)

    def __eq__(self, other):
        if not isinstance(other, DeltaTerm):
            return NotImplemented
        return (
            self.point == other.point
            and self.order == other.order
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.point, self.order, self.coeff))

    def __repr__(self):
        return "DeltaTerm(%s, %d, %s)" % (self.point, self.order, self.coeff.token())


class PiecewiseDist:
    """Canonical piecewise polynomial plus point masses; see module docstring.

    Equality compares the canonical content (breakpoints, pieces, deltas)
    only; the regularity index n is bookkeeping and operations promote it
    as needed.
    """

    __slots__ = ("n", "breakpoints", "pieces", "deltas")

    def __init__(self, n, breakpoints=(), pieces=None, deltas=()):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("regularity index must be a nonnegative integer")
        pts = [as_point(p) for p in breakpoints]
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise AlgebraError("breakpoints must be strictly increasing")
        if pieces is None:
            ps = [Poly() for _ in range(len(pts) + 1)]
        else:
            ps = [as_poly(p) for p in pieces]
        if len(ps) != len(pts) + 1:
            raise AlgebraError(
                "need %d pieces for %d breakpoints, got %d"
                % (len(pts) + 1, len(pts), len(ps))
            )

        merged = {}
        for d in deltas:
            if not isinstance(d, DeltaTerm):
                d = DeltaTerm(*d)
            key = (d.point, d.order)
            merged[key] = merged.get(key, Scalar(0)) + d.coeff
        ds = [
            DeltaTerm(p, o, c)
            for (p, o), c in sorted(merged.items())
            if not c.is_zero
        ]
        for d in ds:
            if d.order > n:
                raise RegularityError(
                    "delta order %d not allowed at regularity index %d"
                    % (d.order, n)
                )
            if d.point not in pts:
                k = bisect_left(pts, d.point)
                pts.insert(k, d.point)
                ps.insert(k, ps[k])

        delta_points = {d.point for d in ds}
        k = 0
        while k < len(pts):
            if pts[k] not in delta_points and ps[k] == ps[k + 1]:
                del pts[k]
                del ps[k + 1]
            else:
                k += 1

        self.n = n
        self.breakpoints = tuple(pts)
        self.pieces = tuple(ps)
        self.deltas = tuple(ds)

    # -- canonical content ------------------------------------------------

    @property
    def is_zero(self):
        return not self.deltas and all(p.is_zero for p in self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseDist):
            return NotImplemented
        return (
            self.breakpoints == other.breakpoints
            and self.pieces == other.pieces
            and self.deltas == other.deltas
        )

    def __hash__(self):
        return hash((self.breakpoints, self.pieces, self.deltas))

    def __repr__(self):
        return "PiecewiseDist(n=%d, breakpoints=%s, pieces=%s, deltas=%s)" % (
            self.n,
            list(self.breakpoints),
            list(self.pieces),
            list(self.deltas),
        )

    # -- piece lookup ------------------------------------------------------

    def piece_containing(self, x):
        """The piece on the interval containing x (right piece if x is a
        breakpoint)."""
        return self.pieces[bisect_right(self.breakpoints, x)]

    def piece_left_of(self, p):
        return self.pieces[bisect_left(self.breakpoints, p)]

    def piece_right_of(self, p):
        return self.pieces[bisect_right(self.breakpoints, p)]

    def pieces_over(self, pts):
        """Pieces re-expressed over a refinement pts of the breakpoints."""
        out = [self.pieces[0]]
        for p in pts:
            out.append(self.pieces[bisect_right(self.breakpoints, p)])
        return out

    def eval_float(self, x):
        """Pointwise value of the regular part as a complex float."""
        return self.pieces[bisect_right(self.breakpoints, x)].eval_float(x)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PiecewiseDist):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, PiecewiseDist):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, PiecewiseDist):
            return star(self, other)
        s = as_scalar_or_none(other)
        if s is None:
            return NotImplemented
        return scale(s, self)

    def __rmul__(self, other):
        s = as_scalar_or_none(other)
        if s is None:
            return NotImplemented
        return scale(s, self)


def canonicalize(n, breakpoints=(), pieces=None, deltas=()):
    """Build the canonical distribution from raw parts."""
    return PiecewiseDist(n, breakpoints, pieces, deltas)


# -- convenience constructors ----------------------------------------------


def zero(n=0):
    return PiecewiseDist(n)


def from_poly(p, n=0):
    return PiecewiseDist(n, (), [as_poly(p)])


def constant(c, n=0):
    return from_poly([c], n)


def heaviside(point=0, n=0):
    """Indicator of (point, +inf)."""
    return PiecewiseDist(n, [point], [Poly(), Poly([1])])


def delta_dist(point=0, order=0, coeff=1, n=None):
    if n is None:
        n = order
    return PiecewiseDist(
        n, [point], None, [DeltaTerm(point, order, coeff)]
    )


def indicator(lo, hi, poly=1, n=0):
    """poly restricted to the open interval (lo, hi); None means infinite."""
    p = as_poly(poly)
    pts, pieces = [], []
    if lo is not None:
        pts.append(as_point(lo))
        pieces.append(Poly())
    pieces.append(p)
    if hi is not None:
        pts.append(as_point(hi))
        pieces.append(Poly())
    if len(pts) == 2 and not pts[0] < pts[1]:
        raise AlgebraError("empty interval (%s, %s)" % (lo, hi))
    return PiecewiseDist(n, pts, pieces)


# -- linear structure --------------------------------------------------------


def add(F, G):
    n = max(F.n, G.n)
    pts = sorted(set(F.breakpoints) | set(G.breakpoints))
    fs = F.pieces_over(pts)
    gs = G.pieces_over(pts)
    return PiecewiseDist(
        n, pts, [a + b for a, b in zip(fs, gs)], F.deltas + G.deltas
    )


def scale(c, F):
    c = as_scalar(c)
    return PiecewiseDist(
        F.n,
        F.breakpoints,
        [c * p for p in F.pieces],
        [DeltaTerm(d.point, d.order, c * d.coeff) for d in F.deltas],
    )


# -- products ----------------------------------------------------------------


def delta_times_smooth(j, x0, f):
    """Expansion of delta^(j)(x - x0) * f(x) into point masses at x0.

    Moving the smooth factor onto the test function and differentiating j
    times gives

        delta^(j)(x - x0) f = sum_k (-1)^k C(j,k) f^(k)(x0) delta^(j-k)(x - x0).
    """
    x0 = as_point(x0)
    f = as_poly(f)
    out = []
    for k in range(j + 1):
        c = f.deriv(k).eval(x0) * ((-1) ** k * comb(j, k))
        out.append(DeltaTerm(x0, j - k, c))
    return out


def order_of(F):
    """0 for a regular distribution, otherwise max delta order + 1."""
    if not F.deltas:
        return 0
    return max(d.order for d in F.deltas) + 1


def n_sing_supp(F, k):
    """Points where F fails to be k-times continuously differentiable.

    Delta locations always qualify; a breakpoint qualifies when the
    one-sided derivative values of orders 0..k disagree.
    """
    bad = {d.point for d in F.deltas}
    for i, p in enumerate(F.breakpoints):
        if p in bad:
            continue
        left, right = F.pieces[i], F.pieces[i + 1]
        for j in range(k + 1):
            if left.deriv(j).eval(p) != right.deriv(j).eval(p):
                bad.add(p)
                break
    return tuple(sorted(bad))


def hormander_product(F, G):
    """Classical product; requires the singular supports to be disjoint.

    The disjointness is checked at the joint regularity index
    n = max(F.n, G.n): each delta of one factor must sit where the other
    factor is C^n, so its order-<= n jet is unambiguous there.
    """
    n = max(F.n, G.n)
    overlap = set(n_sing_supp(F, n)) & set(n_sing_supp(G, n))
    if overlap:
        raise DisjointnessError(
            "singular supports meet at %s" % sorted(overlap)
        )
    pts = sorted(set(F.breakpoints) | set(G.breakpoints))
    fs = F.pieces_over(pts)
    gs = G.pieces_over(pts)
    deltas = []
    for d in F.deltas:
        smooth = G.piece_right_of(d.point)  # C^n there, either side agrees
        deltas += [
            DeltaTerm(t.point, t.order, d.coeff * t.coeff)
            for t in delta_times_smooth(d.order, d.point, smooth)
        ]
    for d in G.deltas:
        smooth = F.piece_right_of(d.point)
        deltas += [
            DeltaTerm(t.point, t.order, d.coeff * t.coeff)
            for t in delta_times_smooth(d.order, d.point, smooth)
        ]
    return PiecewiseDist(n, pts, [a * b for a, b in zip(fs, gs)], deltas)


def star(F, G):
    """One-sided product: the limit of F(x) G(x + eps) as eps -> 0+.

    Over the merged breakpoints, pieces multiply pointwise; a delta of F
    at p is expanded against the piece of G immediately to the right of p,
    and a delta of G at p against the piece of F immediately to the left.
    The result does not depend on the chosen refinement because the
    expansion only samples jets of order <= n, which agree across
    breakpoints at matched points.
    """
    n = max(F.n, G.n)
    pts = sorted(set(F.breakpoints) | set(G.breakpoints))
    fs = F.pieces_over(pts)
    gs = G.pieces_over(pts)
    deltas = []
    for d in F.deltas:
        i = bisect_left(pts, d.point)
        deltas += [
            DeltaTerm(t.point, t.order, d.coeff * t.coeff)
            for t in delta_times_smooth(d.order, d.point, gs[i + 1])
        ]
    for d in G.deltas:
        i = bisect_left(pts, d.point)
        deltas += [
            DeltaTerm(t.point, t.order, d.coeff * t.coeff)
            for t in delta_times_smooth(d.order, d.point, fs[i])
        ]
    return PiecewiseDist(n, pts, [a * b for a, b in zip(fs, gs)], deltas)


# -- calculus ----------------------------------------------------------------


def derivative(F):
    """Distributional derivative.

    Pieces differentiate; each breakpoint contributes a jump delta
    (right value - left value) delta(x - p); existing deltas move up one
    order.  The regularity index grows just enough to hold the new
    highest delta order.
    """
    deltas = [DeltaTerm(d.point, d.order + 1, d.coeff) for d in F.deltas]
    for i, p in enumerate(F.breakpoints):
        jump = F.pieces[i + 1].eval(p) - F.pieces[i].eval(p)
        deltas.append(DeltaTerm(p, 0, jump))
    n = F.n
    if deltas:
        n = max(n, max(d.order for d in deltas))
    return PiecewiseDist(n, F.breakpoints, [p.deriv() for p in F.pieces], deltas)


def restrict(F, interval):
    """Restriction to an open interval (lo, hi); None bounds are infinite.

    Pieces are zeroed outside, finite endpoints become breakpoints, and
    deltas survive only strictly inside the interval.
    """
    lo, hi = interval
    lo = None if lo is None else as_point(lo)
    hi = None if hi is None else as_point(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise AlgebraError("empty interval (%s, %s)" % (lo, hi))

    def inside(x):
        return (lo is None or lo < x) and (hi is None or x < hi)

    pts = [] if lo is None else [lo]
    pts += [p for p in F.breakpoints if inside(p)]
    if hi is not None:
        pts.append(hi)
    pieces = [Poly()] if lo is not None else [F.pieces[0]]
    for p in pts:
        if hi is not None and p == hi:
            pieces.append(Poly())
        else:
            pieces.append(F.pieces[bisect_right(F.breakpoints, p)])
    deltas = [d for d in F.deltas if inside(d.point)]
    return PiecewiseDist(F.n, pts, pieces, deltas)


def pair_polynomial_test(F, t, interval=(None, None)):
    """Exact pairing <F, t> against a polynomial test function.

    t is treated as compactly supported on the (open) interval: pieces are
    integrated over it and deltas strictly inside contribute
    (-1)^order coeff t^(order)(point).  An infinite part of the interval
    where both the piece and t are nonzero raises DivergentIntegralError.
    """
    t = as_poly(t)
    lo, hi = interval
    lo = None if lo is None else as_point(lo)
    hi = None if hi is None else as_point(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise AlgebraError("empty interval (%s, %s)" % (lo, hi))

    cuts = [p for p in F.breakpoints if (lo is None or lo < p) and (hi is None or p < hi)]
    bounds = [lo] + cuts + [hi]
    total = Scalar(0)
    for a, b in zip(bounds, bounds[1:]):
        if a is not None:
            piece = F.pieces[bisect_right(F.breakpoints, a)]
        elif b is not None:
            piece = F.pieces[bisect_left(F.breakpoints, b)]
        else:
            piece = F.pieces[0]
        if piece.is_zero or t.is_zero:
            continue
        if a is None or b is None:
            raise DivergentIntegralError(
                "nonzero integrand on an unbounded interval"
            )
        for j, cf in enumerate(piece.coeffs):
            for k, ct in enumerate(t.coeffs):
                m = j + k + 1
                total = total + cf * ct * Fraction(b**m - a**m, m)
    for d in F.deltas:
        if (lo is None or lo < d.point) and (hi is None or d.point < hi):
            total = total + d.coeff * t.deriv(d.order).eval(d.point) * (
                (-1) ** d.order
            )
    return total
