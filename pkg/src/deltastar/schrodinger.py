"""Boundary conditions of point-perturbed 1D Schrodinger operators.

Everything here works on the two coefficient rows over the boundary jet
(p, q, r, s) = (psi(0-), psi(0+), psi'(0-), psi'(0+)) produced by
``boundary_ops.constraint_rows``: the pair of linear conditions cutting
the operator's domain out of the maximal one.  Conditions are compared as
row spaces (exact reduced row echelon form), since two sets of conditions
with the same kernel describe the same operator.

``classify`` decides, exactly, whether a plain point potential gives a
self-adjoint operator and of which kind:

  * InteractingSA(a, b, c): conditions couple the two half-lines,

        (1 - b) psi'(0+) - (1 + b) psi'(0-) = c (psi(0+) + psi(0-))/ ...
        written row-wise as [-c, -c, b-1, b+1; conj(b)+1, conj(b)-1, a, a]

  * SeparatingSA: one Dirichlet/Robin condition on each half-line, stored
    normalized per side as (a, b) meaning a psi' = b psi, with (1, t) for
    Robin and (0, 1) for Dirichlet;

  * NotSelfAdjoint(bc): anything else (the operator is a proper
    restriction of the maximal one).

The ``represent_*`` functions invert that: given target conditions they
produce the potentials (or, where no potential exists, a PseudoPotential)
that realize them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boundary_ops import (
    DeltaPrimeFamily,
    PointPotential,
    PreconditionError,
    PseudoPotential,
    constraint_rows,
)
from .dist_core import Scalar, as_scalar

_ZERO = Scalar(0)
_ONE = Scalar(1)


def _row4(entries):
    row = tuple(as_scalar(e) for e in entries)
    if len(row) != 4:
        raise ValueError("boundary rows have four entries")
    return row


def _rref(rows):
    """Exact reduced row echelon form; zero rows dropped."""
    work = [list(r) for r in rows]
    lead = 0
    for col in range(4):
        pivot = next(
            (k for k in range(lead, len(work)) if not work[k][col].is_zero),
            None,
        )
        if pivot is None:
            continue
        work[lead], work[pivot] = work[pivot], work[lead]
        inv = work[lead][col]
        work[lead] = [e / inv for e in work[lead]]
        for k in range(len(work)):
            if k != lead and not work[k][col].is_zero:
                factor = work[k][col]
                work[k] = [
                    e - factor * w for e, w in zip(work[k], work[lead])
                ]
        lead += 1
        if lead == len(work):
            break
    return tuple(
        tuple(row) for row in work if any(not e.is_zero for e in row)
    )


class BCMatrix:
    """Boundary conditions as rows over (p, q, r, s).

    Zero rows are dropped on construction; the originally supplied
    (nonzero) rows are kept for display.  Equality and hashing go through
    the reduced row echelon form, i.e. two matrices are equal when they
    cut out the same domain.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        kept = []
        for r in rows:
            row = _row4(r)
            if any(not e.is_zero for e in row):
                kept.append(row)
        self.rows = tuple(kept)

    def reduced(self):
        return _rref(self.rows)

    @property
    def rank(self):
        return len(self.reduced())

    def row_equivalent(self, other):
        return self.reduced() == other.reduced()

    def __eq__(self, other):
        if not isinstance(other, BCMatrix):
            return NotImplemented
        return self.reduced() == other.reduced()

    def __hash__(self):
        return hash(self.reduced())

    def kernel_basis(self):
        """Jets satisfying the conditions, one 4-tuple per free column."""
        red = self.reduced()
        pivots = []
        for row in red:
            pivots.append(next(j for j in range(4) if not row[j].is_zero))
        basis = []
        for j in range(4):
            if j in pivots:
                continue
            vec = [_ZERO] * 4
            vec[j] = _ONE
            for i, pc in enumerate(pivots):
                vec[pc] = -red[i][j]
            basis.append(tuple(vec))
        return basis

    def as_complex(self):
        return [[complex(e) for e in row] for row in self.rows]

    def __repr__(self):
        return "BCMatrix(%s)" % (
            [[e.token() for e in row] for row in self.rows],
        )


def extract_bc(spec):
    """Boundary-condition matrix of a point perturbation."""
    return BCMatrix(constraint_rows(spec))


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class InteractingSA:
    """Self-adjoint with conditions coupling the half-lines."""

    a: Scalar
    b: Scalar
    c: Scalar

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))


@dataclass(frozen=True)
class SeparatingSA:
    """Self-adjoint with one condition per half-line.

    Each side is normalized: (1, t) means psi' = t psi on that side
    (Robin; t = 0 is Neumann), (0, 1) means psi = 0 (Dirichlet).
    """

    a_minus: Scalar
    b_minus: Scalar
    a_plus: Scalar
    b_plus: Scalar

    def __post_init__(self):
        for name in ("a_minus", "b_minus", "a_plus", "b_plus"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))


@dataclass(frozen=True)
class NotSelfAdjoint:
    """Proper restriction of the maximal operator; conditions attached."""

    bc: BCMatrix


def normalize_side(a, b):
    """Normalize one side condition a psi' = b psi to (1, b/a) or (0, 1)."""
    a, b = as_scalar(a), as_scalar(b)
    if not a.is_zero:
        return (_ONE, b / a)
    if not b.is_zero:
        return (_ZERO, _ONE)
    raise PreconditionError("a side condition needs a nonzero coefficient")


def separating_sa(a_minus, b_minus, a_plus, b_plus):
    """SeparatingSA with both sides normalized."""
    am, bm = normalize_side(a_minus, b_minus)
    ap, bp = normalize_side(a_plus, b_plus)
    return SeparatingSA(am, bm, ap, bp)


def classify(spec):
    """Exact self-adjointness classification of a plain point potential.

    Returns InteractingSA, SeparatingSA or NotSelfAdjoint.  Only
    PointPotential specs are accepted.
    """
    if not isinstance(spec, PointPotential):
        raise PreconditionError(
            "classification works on plain point potentials"
        )
    c1, c2, b1, b2 = spec.c1, spec.c2, spec.b1, spec.b2
    not_unit = b1 != _ONE and b1 != -_ONE

    if not_unit and b1 == b2.conjugate():
        bb = b1.conjugate()
        den = (bb - b1) * (bb - b1) - 4
        c = (2 * c1 * (bb - _ONE) - 2 * c2 * (b1 + _ONE)) / den
        if c.is_real:
            return InteractingSA(_ZERO, (b1 + bb) / (bb - b1 + 2), c)
        return NotSelfAdjoint(extract_bc(spec))

    if not_unit and b2 == -b1:
        c = (c1 + c2) / (2 * (_ONE - b1))
        if c.is_real:
            return InteractingSA(_ZERO, _ZERO, c)
        return NotSelfAdjoint(extract_bc(spec))

    if b1 == _ONE and b2 == _ONE:
        if c2.is_real:
            return SeparatingSA(_ZERO, _ONE, _ONE, c2 / 2)
        return NotSelfAdjoint(extract_bc(spec))

    if b1 == -_ONE and b2 == -_ONE:
        if c1.is_real:
            return SeparatingSA(_ONE, -c1 / 2, _ZERO, _ONE)
        return NotSelfAdjoint(extract_bc(spec))

    if b1 == _ONE and b2 == -_ONE and not (c1 + c2).is_zero:
        return SeparatingSA(_ZERO, _ONE, _ZERO, _ONE)

    return NotSelfAdjoint(extract_bc(spec))


# --------------------------------------------------------------------------
# realization: interacting conditions


@dataclass(frozen=True)
class ConjugatePairFamily:
    """Potentials with b2 = conj(b1) realizing InteractingSA(0, b, c).

    The coupling strength c may be split as c = k1 + k2 between the two
    sides: c1 = k1/x1, c2 = k2/x2.  Any real split works; spec() defaults
    to the symmetric one.
    """

    b: Scalar
    c: Scalar
    b1: Scalar
    b2: Scalar
    x1: Scalar
    x2: Scalar

    def spec(self, k1=None):
        k1 = self.c / 2 if k1 is None else as_scalar(k1)
        if not k1.is_real:
            raise PreconditionError("the coupling split must be real")
        k2 = self.c - k1
        return PointPotential(k1 / self.x1, k2 / self.x2, self.b1, self.b2)

    def default(self):
        return self.spec()


@dataclass(frozen=True)
class OppositeSignFamily:
    """Potentials with b2 = -b1 realizing InteractingSA(0, 0, c).

    b1 is a free complex parameter away from +-1; the two couplings only
    need c1 + c2 = 2 c (1 - b1).  spec() defaults to b1 = 0 and the even
    split c1 = c2.
    """

    c: Scalar

    def spec(self, b1=0, c1=None):
        b1 = as_scalar(b1)
        if b1 == _ONE or b1 == -_ONE:
            raise PreconditionError("b1 = +-1 leaves the family")
        total = 2 * self.c * (_ONE - b1)
        c1 = total / 2 if c1 is None else as_scalar(c1)
        return PointPotential(c1, total - c1, b1, -b1)

    def default(self):
        return self.spec()


@dataclass(frozen=True)
class NotRepresentable:
    """No plain potential realizes the conditions; a PseudoPotential does."""

    reason: str
    pseudo: PseudoPotential


def interacting_pseudo(a, b, c):
    """PseudoPotential realizing the general interacting conditions.

    Built as c*sum - b*(sum o D) + a*(D o sum o D) + conj(b)*(D o sum)
    where sum is the order-0 sided-delta sum; its constraint rows are
    exactly [-c, -c, b-1, b+1] and [conj(b)+1, conj(b)-1, a, a].
    """
    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    bb = b.conjugate()
    return PseudoPotential(
        (c, c, bb, bb),
        (bb - b, bb - b, _ZERO, _ZERO),
        (a, a, _ZERO, _ZERO),
    )


def represent_interacting(a, b, c):
    """Potentials realizing InteractingSA(a, b, c), or NotRepresentable.

    a and c must be real and the conditions nondegenerate:
    (1 + conj(b))(1 - b) != a c.  Plain potentials exist exactly when
    a = 0 and b is neither +-1 nor purely imaginary nonzero.
    """
    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    if not (a.is_real and c.is_real):
        raise PreconditionError("a and c must be real")
    if ((_ONE + b.conjugate()) * (_ONE - b) - a * c).is_zero:
        raise PreconditionError("degenerate conditions: rank below two")
    if not a.is_zero:
        return NotRepresentable(
            "a second-derivative coefficient cannot come from a potential",
            interacting_pseudo(a, b, c),
        )
    if b.is_zero:
        return OppositeSignFamily(c)
    if (b + b.conjugate()).is_zero:
        return NotRepresentable(
            "purely imaginary coupling slope has no potential realization",
            interacting_pseudo(a, b, c),
        )
    bb = b.conjugate()
    s = b + bb
    b1 = (2 * b * bb + b - bb) / s
    b2 = (2 * b * bb - b + bb) / s
    x1 = -s / 4 + s / (4 * bb)
    x2 = s / 4 + s / (4 * bb)
    return ConjugatePairFamily(b, c, b1, b2, x1, x2)


# --------------------------------------------------------------------------
# realization: separating conditions


@dataclass(frozen=True)
class SeparatingFamily:
    """Potentials realizing a pair of one-sided conditions.

    c1/c2 hold the default couplings; names in ``free`` may be overridden
    in spec().  For the double-Dirichlet case the only constraint is
    c1 + c2 != 0.
    """

    b1: Scalar
    b2: Scalar
    c1: Scalar
    c2: Scalar
    free: tuple

    def spec(self, c1=None, c2=None):
        vals = {"c1": self.c1, "c2": self.c2}
        for name, given in (("c1", c1), ("c2", c2)):
            if given is None:
                continue
            if name not in self.free:
                raise PreconditionError("%s is fixed in this family" % name)
            vals[name] = as_scalar(given)
        if self.free == ("c1", "c2") and (vals["c1"] + vals["c2"]).is_zero:
            raise PreconditionError(
                "c1 + c2 = 0 drops the rank of the conditions"
            )
        return PointPotential(vals["c1"], vals["c2"], self.b1, self.b2)

    def default(self):
        return self.spec()


def separating_pseudo(a_minus, b_minus, a_plus, b_plus):
    """PseudoPotential realizing arbitrary one-sided conditions
    a psi'(0-/+) = b psi(0-/+)."""
    return represent_from_bc(
        (_ZERO, -as_scalar(b_plus), _ZERO, as_scalar(a_plus)),
        (-as_scalar(b_minus), _ZERO, as_scalar(a_minus), _ZERO),
    )


def represent_separating(a_minus, b_minus, a_plus, b_plus):
    """Potentials realizing separated conditions, or NotRepresentable.

    Inputs are the raw side conditions a psi' = b psi (real, each side
    nonzero).  A plain potential exists only when at most one side
    constrains the derivative trace.
    """
    am, bm = as_scalar(a_minus), as_scalar(b_minus)
    ap, bp = as_scalar(a_plus), as_scalar(b_plus)
    for v in (am, bm, ap, bp):
        if not v.is_real:
            raise PreconditionError("separated conditions must be real")
    if am.is_zero and bm.is_zero:
        raise PreconditionError("left side condition is empty")
    if ap.is_zero and bp.is_zero:
        raise PreconditionError("right side condition is empty")

    if am.is_zero and ap.is_zero:
        return SeparatingFamily(_ONE, -_ONE, _ONE, _ONE, ("c1", "c2"))
    if am.is_zero:
        return SeparatingFamily(_ONE, _ONE, _ZERO, 2 * bp / ap, ("c1",))
    if ap.is_zero:
        return SeparatingFamily(-_ONE, -_ONE, -2 * bm / am, _ZERO, ("c2",))
    return NotRepresentable(
        "both sides constrain the derivative trace",
        separating_pseudo(am, bm, ap, bp),
    )


# --------------------------------------------------------------------------
# realization: arbitrary two-row conditions


def represent_from_bc(f1, f2):
    """PseudoPotential whose conditions are exactly rows f1 and f2.

    The construction cancels the free part, then adds f1 against psi and
    the derivative of f2 against psi, so extract_bc returns rows
    (-f1, f2) — the same row space as [f1; f2].
    """
    f1 = _row4(f1)
    f2 = _row4(f2)
    direct = (f1[0], f1[1], f2[0] - _ONE, f2[1] + _ONE)
    after_dx = (f1[2] - 2 + f2[0], f1[3] + 2 + f2[1], _ZERO, _ZERO)
    dx_after_dx = (f2[2], f2[3], _ZERO, _ZERO)
    return PseudoPotential(direct, after_dx, dx_after_dx)


@dataclass(frozen=True)
class NoGoCertificate:
    """Why no realization with a vanishing D-sandwich block exists.

    With that block zero, one condition row is forced to read only the
    value traces (p, q).  When the 2x2 block of derivative columns of the
    reduced conditions is invertible, every nonzero row combination still
    reads a derivative trace, so no such realization exists; the block
    and its determinant are the certificate.
    """

    derivative_block: tuple
    det: Scalar


def check_potential_representable_B3_zero(bc):
    """Can rank-2 conditions be realized with no D-sandwich block?

    Returns (True, PseudoPotential) with a realizing spec whose
    dx_after_dx block is zero, or (False, NoGoCertificate).
    """
    if bc.rank != 2:
        raise PreconditionError("needs two independent conditions")
    r1, r2 = bc.reduced()
    d1 = (r1[2], r1[3])
    d2 = (r2[2], r2[3])
    det = d1[0] * d2[1] - d1[1] * d2[0]
    if not det.is_zero:
        return False, NoGoCertificate((d1, d2), det)
    # find a nonzero combination with zero derivative entries
    if d1[0].is_zero and d1[1].is_zero:
        v2, v1 = r1, r2
    elif d2[0].is_zero and d2[1].is_zero:
        v2, v1 = r2, r1
    else:
        if not d1[0].is_zero or not d2[0].is_zero:
            lam1, lam2 = d2[0], -d1[0]
        else:
            lam1, lam2 = d2[1], -d1[1]
        v2 = tuple(lam1 * a + lam2 * b for a, b in zip(r1, r2))
        v1 = r1 if not lam2.is_zero else r2
    return True, represent_from_bc(v1, v2)


# --------------------------------------------------------------------------
# special-form recognizers


def match_continuity_jump(bc):
    """If the conditions say psi continuous with psi'(0+) - psi'(0-) =
    a psi(0), return a; otherwise None."""
    if bc.rank != 2:
        return None
    # kernel must contain (0, 0, 1, 1)
    for row in bc.rows:
        if not (row[2] + row[3]).is_zero:
            return None
    # and (1, 1, 0, a) for a single a
    a = None
    for row in bc.rows:
        const = row[0] + row[1]
        if row[3].is_zero:
            if not const.is_zero:
                return None
            continue
        cand = -const / row[3]
        if a is None:
            a = cand
        elif a != cand:
            return None
    if a is None:
        return None
    # confirm: (1,1,0,a) must satisfy every row (rows with row[3] == 0
    # were checked above; the rest defined a consistently)
    return a


def match_theta_jump(bc):
    """If the conditions say psi(0+) = theta psi(0-) and
    psi'(0+) = psi'(0-)/theta, return theta; otherwise None."""
    if bc.rank != 2:
        return None
    pairs = []
    for row in bc.rows:
        pairs.append((row[0], row[1]))  # u + theta v = 0 from (1,theta,0,0)
        pairs.append((row[3], row[2]))  # from (0,0,theta,1)
    theta = None
    for u, v in pairs:
        if not v.is_zero:
            cand = -u / v
            if theta is None:
                theta = cand
            elif theta != cand:
                return None
        elif not u.is_zero:
            return None
    if theta is None or theta.is_zero:
        return None
    return theta


# --------------------------------------------------------------------------
# sesquilinear boundary forms


def boundary_form_raw(psi, phi):
    """conj(phi(0+)) psi'(0+) - conj(phi(0-)) psi'(0-): the boundary term
    of the maximal operator's quadratic form."""
    return (
        phi.psi_plus.conjugate() * psi.dpsi_plus
        - phi.psi_minus.conjugate() * psi.dpsi_minus
    )


def _potential_form_coeffs(spec):
    c1, c2, b1, b2 = spec.c1, spec.c2, spec.b1, spec.b2
    kind = classify(spec)
    if isinstance(kind, NotSelfAdjoint):
        raise PreconditionError(
            "the boundary form is only defined for self-adjoint conditions"
        )
    if isinstance(kind, InteractingSA):
        if b1 == b2.conjugate() and b1 != _ONE and b1 != -_ONE:
            return c1 / (_ONE - b1), c2 / (_ONE + b1.conjugate())
        return c1 / (_ONE - b1), c2 / (_ONE - b1)
    if b1 == _ONE and b2 == _ONE:
        return _ZERO, c2 / 2
    if b1 == -_ONE and b2 == -_ONE:
        return c1 / 2, _ZERO
    return _ZERO, _ZERO  # double Dirichlet


def sesquilinear_form(spec_or_classification, psi, phi):
    """Boundary part of the operator's sesquilinear form on jets.

    Accepts a PointPotential or a self-adjoint classification; on jets
    satisfying the boundary conditions it agrees with boundary_form_raw.
    """
    x = spec_or_classification
    if isinstance(x, InteractingSA):
        if not x.a.is_zero:
            raise PreconditionError(
                "no potential realization exists when a != 0"
            )
        x = represent_interacting(x.a, x.b, x.c).default()
    elif isinstance(x, SeparatingSA):
        x = represent_separating(
            x.a_minus, x.b_minus, x.a_plus, x.b_plus
        ).default()
    if not isinstance(x, PointPotential):
        raise TypeError("expected a point potential or a classification")
    A, B = _potential_form_coeffs(x)
    return (
        A * phi.psi_minus.conjugate() * psi.psi_minus
        + B * phi.psi_plus.conjugate() * psi.psi_plus
    )


# --------------------------------------------------------------------------
# named operators


def unconstrained_spec():
    """The perturbation whose constraint rows vanish identically: it
    cancels the boundary term of the maximal operator exactly."""
    return PseudoPotential(
        (_ZERO, _ZERO, -_ONE, _ONE),
        (-2, 2, _ZERO, _ZERO),
        (_ZERO,) * 4,
    )


def delta_well(a):
    """Continuity plus derivative jump a psi(0): the textbook delta
    interaction of strength a."""
    a = as_scalar(a)
    return PointPotential(a / 2, a / 2, _ZERO, _ZERO)


def delta_prime_interaction(theta):
    """Value and derivative scaling by theta across 0 (theta != -1, 0).

    Realized by PointPotential(0, 0, cc, cc) with cc = (theta-1)/(theta+1);
    theta = -1 is reachable only through DeltaPrimeFamily(c, c, 1, 1).
    """
    theta = as_scalar(theta)
    if theta.is_zero:
        raise PreconditionError("theta must be nonzero")
    if theta == -_ONE:
        raise PreconditionError(
            "theta = -1 needs DeltaPrimeFamily(c, c, 1, 1), not a potential"
        )
    cc = (theta - _ONE) / (theta + _ONE)
    return PointPotential(_ZERO, _ZERO, cc, cc)


def dirichlet_specs():
    """Two realizations of double-Dirichlet conditions psi(0-)=psi(0+)=0:
    a PseudoPotential built from the condition rows, and a plain
    potential."""
    pseudo = represent_from_bc((_ZERO, -_ONE, _ZERO, _ZERO), (-_ONE, _ZERO, _ZERO, _ZERO))
    plain = PointPotential(_ONE, _ONE, _ONE, -_ONE)
    return pseudo, plain
