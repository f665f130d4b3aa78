"""End-to-end acceptance checks, one test per criterion.

Run with `pytest -v tests/test_acceptance.py` to get a pass/fail line per
criterion.  Every exact claim is checked in rational arithmetic; the
numerical claims carry their stated tolerances and time budgets.
"""

import math
import random
import time
from fractions import Fraction

from deltastar import (
    Poly,
    Scalar,
    add,
    delta_dist,
    derivative,
    heaviside,
    indicator,
    star,
    star_limit_oracle,
)
from deltastar.numerics import (
    bound_states,
    bump,
    grid_eigenvalues,
    grid_hamiltonian,
    scattering,
    weak_limit_check,
)
from deltastar.schrodinger import (
    BCMatrix,
    DeltaPrimeFamily,
    InteractingSA,
    NoGoCertificate,
    NotSelfAdjoint,
    PointPotential,
    check_potential_representable_B3_zero,
    classify,
    delta_prime_interaction,
    delta_well,
    extract_bc,
    boundary_form_raw,
    match_continuity_jump,
    match_theta_jump,
    represent_from_bc,
    represent_interacting,
    sesquilinear_form,
)
from helpers import jet_from_vector, rand_dist, rand_frac, rand_scalar


def sa_corpus():
    """30 self-adjoint point interactions covering every branch."""
    out = [delta_well(a) for a in (-4, -2, -1, Fraction(-1, 2), 1, 3)]
    out += [delta_prime_interaction(t) for t in (2, 3, Fraction(1, 2), -3)]
    out += [
        PointPotential(0, 5, 1, 1),      # Dirichlet left, Robin right
        PointPotential(0, -3, 1, 1),
        PointPotential(5, 0, -1, -1),    # Robin left, Dirichlet right
        PointPotential(1, 1, 1, -1),     # double Dirichlet
    ]
    rng = random.Random(901)
    while len(out) < 30:
        c1, c2 = rand_frac(rng), rand_frac(rng)
        b = rand_frac(rng)
        if b == 1 or b == -1:
            continue
        spec = PointPotential(c1, c2, b, b)
        if not isinstance(classify(spec), NotSelfAdjoint):
            out.append(spec)
    return out


def constrained_jets(bc, rng, count):
    basis = bc.kernel_basis()
    jets = []
    for _ in range(count):
        vec = [Scalar(0)] * 4
        for v in basis:
            c = rand_scalar(rng)
            vec = [a + c * b for a, b in zip(vec, v)]
        jets.append(jet_from_vector(vec))
    return jets


def test_criterion_1_star_matches_limit_oracle():
    started = time.monotonic()
    rng = random.Random(11)
    for _ in range(200):
        F = rand_dist(rng, n=1, max_deg=3, max_order=1, imag_rate=0.0)
        G = rand_dist(rng, n=1, max_deg=3, max_order=1, imag_rate=0.0)
        assert star(F, G) == star_limit_oracle(F, G)
    assert time.monotonic() - started < 10.0


def test_criterion_2_algebra_laws():
    started = time.monotonic()
    rng = random.Random(12)
    for _ in range(100):
        F = rand_dist(rng, max_deg=2)
        G = rand_dist(rng, max_deg=2)
        K = rand_dist(rng, max_deg=2)
        assert star(star(F, G), K) == star(F, star(G, K))
        assert star(F, add(G, K)) == add(star(F, G), star(F, K))
        assert star(add(F, G), K) == add(star(F, K), star(G, K))
    for _ in range(100):
        F = rand_dist(rng, n=2, max_order=1)
        G = rand_dist(rng, n=2, max_order=1)
        lhs = derivative(star(F, G))
        rhs = add(star(derivative(F), G), star(F, derivative(G)))
        assert lhs == rhs
    assert time.monotonic() - started < 10.0


def test_criterion_3_fixed_value_table():
    H = heaviside(0, n=1)
    D = delta_dist(0, 0, 1, n=1)
    Dp = delta_dist(0, 1, 1, n=1)
    table = [
        (D, H, D),
        (H, D, None),
        (Dp, H, Dp),
        (H, Dp, None),
        (D, D, None),
    ]
    for F, G, expected in table:
        got = star(F, G)
        assert got == star_limit_oracle(F, G)
        if expected is None:
            assert got.is_zero
        else:
            assert got == expected


def test_criterion_4_bc_extraction_formulas():
    rng = random.Random(14)
    for _ in range(20):
        d, c = rand_frac(rng), rand_frac(rng)
        bc = extract_bc(PointPotential(d, c, 0, 0))
        a = c + d
        assert match_continuity_jump(bc) == a
        assert bc.row_equivalent(BCMatrix([[1, -1, 0, 0], [-a, 0, -1, 1]]))
    for _ in range(20):
        c = rand_frac(rng)
        if c == 1:
            continue
        bc = extract_bc(PointPotential(0, 0, c, c))
        theta = Fraction(c + 1, 1 - c)
        assert match_theta_jump(bc) == theta
        assert bc.row_equivalent(
            BCMatrix([[theta, -1, 0, 0], [0, 0, 1, -theta]])
        )
    drawn = 0
    while drawn < 20:
        c, e = rand_frac(rng), rand_frac(rng)
        if e == 1 - c:
            continue
        drawn += 1
        bc = extract_bc(DeltaPrimeFamily(c, c, e, e))
        theta = Fraction(1 - e + c, 1 - e - c)
        assert bc.row_equivalent(
            BCMatrix([[theta, -1, 0, 0], [0, 0, 1, -theta]])
        )
        if theta != 0:
            assert match_theta_jump(bc) == theta


def test_criterion_5_classification_round_trip():
    rng = random.Random(15)
    done = 0
    while done < 50:
        b = Scalar(rand_frac(rng), rand_frac(rng))
        if (b + b.conjugate()).is_zero or b == 1 or b == -1:
            continue
        done += 1
        c = Scalar(rand_frac(rng))
        fam = represent_interacting(0, b, c)
        assert classify(fam.default()) == InteractingSA(0, b, c)
    for _ in range(50):
        c1, c2 = rand_frac(rng), rand_frac(rng)
        b = rand_frac(rng)
        if b == 1 or b == -1:
            continue
        assert classify(PointPotential(c1, c2, b, b)) == InteractingSA(
            0, b, Fraction(c1 * (1 - b) + c2 * (1 + b), 2)
        )
        assert classify(PointPotential(c1, c2, b, -b)) == InteractingSA(
            0, 0, Fraction(c1 + c2) / (2 * (1 - b))
        )


def test_criterion_6_no_go_and_pseudo_realization():
    nn = BCMatrix([[0, 0, 1, 0], [0, 0, 0, 1]])
    ok, cert = check_potential_representable_B3_zero(nn)
    assert ok is False
    assert isinstance(cert, NoGoCertificate)
    assert not cert.det.is_zero
    pseudo = represent_from_bc([0, 0, 1, 0], [0, 0, 0, 1])
    assert extract_bc(pseudo).row_equivalent(nn)


def test_criterion_7_hermitian_boundary_forms():
    rng = random.Random(17)
    for spec in sa_corpus():
        bc = extract_bc(spec)
        jets = constrained_jets(bc, rng, 20)
        for psi in jets:
            for phi in jets:
                v = sesquilinear_form(spec, psi, phi)
                assert v == sesquilinear_form(spec, phi, psi).conjugate()
                assert v == boundary_form_raw(psi, phi)


def test_criterion_8_weak_limit_convergence():
    started = time.monotonic()
    H = heaviside(0)
    ramp = indicator(0, None, Poly([1, 1]))
    # the test polynomial is chosen per case so the quadrature error is
    # dominated by the kernel-width term rather than exact cancellations
    cases = [
        (H, Poly([1]), 0),
        (H, Poly([1]), 1),
        (ramp, Poly([1, -1]), 0),
        (ramp, Poly([1]), 1),
    ]
    floor = 1e-12
    for F, t, order in cases:
        for side in ("left", "right"):
            errs = weak_limit_check(
                F, t, order, side, eps_list=(0.1, 0.05, 0.025)
            )
            for a, b in zip(errs, errs[1:]):
                assert b < a or b < floor, (F, t, order, side, errs)
            assert errs[-1] < 1e-3, (F, t, order, side, errs)
    assert time.monotonic() - started < 30.0


def test_criterion_9a_bound_state_energies():
    for a in (Fraction(-1, 2), -1, -2, -4):
        E = bound_states(delta_well(a))
        assert len(E) == 1
        assert abs(E[0] - float(-Fraction(a) ** 2 / 4)) < 1e-10


def test_criterion_9b_grid_eigenvalue_match():
    """Lowest grid eigenvalue of the mollified strength -2 well vs -1.

    At kernel width eps = 0.05 the regularized operator's own ground
    state sits near -0.9564 (the first-order shift in the well depth is
    proportional to eps times the kernel's self-interaction), so the
    deviation from -1 at this width is ~4.4% before any grid error; the
    2% target would need eps below roughly 0.022.  The check is kept at
    its stated parameters rather than relaxed.
    """
    eps, L, N = 0.05, 20.0, 4000
    strength = -2.0

    def potential(x):
        return strength * bump(x / eps) / eps

    H = grid_hamiltonian(L, N, potential)
    lowest = grid_eigenvalues(H, 1)[0]
    exact = -1.0
    deviation = abs(lowest - exact) / abs(exact)
    assert deviation <= 0.02, (
        "grid ground state %.6f deviates %.2f%% from %.1f at eps=%g "
        "(kernel-width limited, not a grid artifact)"
        % (lowest, 100 * deviation, exact, eps)
    )


def test_criterion_9c_scattering_unitarity():
    started = time.monotonic()
    for spec in sa_corpus():
        for k in (0.1, 1.0, 10.0):
            d = scattering(spec, k)
            assert not d.singular
            assert abs(abs(d.r_left) ** 2 + abs(d.t_left) ** 2 - 1) < 1e-12
            assert abs(abs(d.r_right) ** 2 + abs(d.t_right) ** 2 - 1) < 1e-12
    assert time.monotonic() - started < 120.0
