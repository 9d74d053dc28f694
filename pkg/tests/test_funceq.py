"""Functional-equation layer: vanishing pattern, substitution family, reversion.

The left-hand-side builder is cross-checked against a from-scratch
implementation on plain (t_deg, z_deg) -> Fraction dicts, so the Series
engine never validates itself.
"""

from fractions import Fraction
from math import comb, factorial

import pytest

from hypertrees.combinat import StirlingTable
from hypertrees.funceq import (
    PhiCoefficients,
    diagonal_mismatches,
    edge_symbol_phi,
    hypertree_dictionary_report,
    lhs_series,
    phi_to_P,
    psi_from_phi,
    psi_uv_coefficients,
    random_phi,
    substituted_connected_gf,
    verify_psi_form,
)
from hypertrees.gf import compute_C
from hypertrees.series import Series, first_difference, make_context

CTX = make_context(t_max=5, z_max=5, magnitude_max=0, max_edge_size=2)


# -- an independent reimplementation on plain dicts -----------------------------


def _mul(a, b, t_max, z_max):
    out = {}
    for (ta, za), ca in a.items():
        for (tb, zb), cb in b.items():
            td, zd = ta + tb, za + zb
            if td <= t_max and zd <= z_max:
                out[(td, zd)] = out.get((td, zd), Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def _reference_lhs(phi: PhiCoefficients, t_max: int, z_max: int):
    total = {}
    for k in range(t_max + 1):
        # k * Phi(kz, z): the u^a v^b entry becomes k^(a+1) z^(a+b)
        arg = {}
        for (a, b), c in phi.items():
            if a + b <= z_max:
                key = (0, a + b)
                arg[key] = arg.get(key, Fraction(0)) + c * k ** (a + 1)
        summand = {(0, 0): Fraction(1)}
        power = {(0, 0): Fraction(1)}
        for j in range(1, z_max + 1):
            power = _mul(power, arg, t_max, z_max)
            if not power:
                break
            for key, v in power.items():
                summand[key] = summand.get(key, Fraction(0)) + v / factorial(j)
        front = Fraction(1, factorial(k))
        for (td, zd), v in summand.items():
            if td + k <= t_max:
                key = (td + k, zd)
                total[key] = total.get(key, Fraction(0)) + front * v
    # log via the alternating series on g = total - 1
    g = dict(total)
    g[(0, 0)] = g.get((0, 0), Fraction(0)) - 1
    g = {k: v for k, v in g.items() if v}
    out = {}
    power = {(0, 0): Fraction(1)}
    for j in range(1, t_max + z_max + 1):
        power = _mul(power, g, t_max, z_max)
        if not power:
            break
        sign = Fraction((-1) ** (j + 1), j)
        for key, v in power.items():
            out[key] = out.get(key, Fraction(0)) + sign * v
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("seed", [42, 43, 44, 45])
def test_lhs_matches_reference_implementation(seed):
    phi = random_phi(seed)
    L = lhs_series(phi, CTX)
    reference = _reference_lhs(phi, CTX.t_max, CTX.z_max)
    got = {(m.t_deg, m.z_deg): c for m, c in L.terms()}
    assert got == reference


# -- the coefficient array -------------------------------------------------------


def test_phi_coefficients_basics():
    phi = PhiCoefficients({(0, 1): Fraction(1, 2), (2, 0): 3})
    assert phi.coefficient(0, 1) == Fraction(1, 2)
    assert phi.coefficient(5, 5) == 0
    assert phi.max_weight == 2
    assert not phi.is_zero()
    assert PhiCoefficients({}).is_zero()
    with pytest.raises(ValueError):
        PhiCoefficients({(-1, 0): 1})


def test_phi_json_round_trip():
    phi = random_phi(7, include_constant=True)
    again = PhiCoefficients.from_json(phi.to_json())
    assert again == phi


def test_without_constant_splits_c00():
    phi = PhiCoefficients({(0, 0): Fraction(2, 3), (1, 0): 1})
    c00, reduced = phi.without_constant()
    assert c00 == Fraction(2, 3)
    assert reduced == PhiCoefficients({(1, 0): 1})
    assert reduced.constant_term == 0


def test_random_phi_is_deterministic_and_seed_stable():
    assert random_phi(11) == random_phi(11)
    assert random_phi(11) != random_phi(12)
    with_c, without_c = random_phi(11, include_constant=True), random_phi(11)
    _, reduced = with_c.without_constant()
    assert reduced == without_c  # the (0,0) draw never shifts the stream


def test_lhs_rejects_bad_inputs():
    with pytest.raises(ValueError):
        lhs_series(PhiCoefficients({(0, 0): 1}), CTX)
    no_z = make_context(t_max=4, magnitude_max=0, max_edge_size=2)
    with pytest.raises(ValueError):
        lhs_series(PhiCoefficients({(1, 0): 1}), no_z)


# -- vanishing pattern ------------------------------------------------------------


def test_zero_phi_gives_plain_t():
    L = lhs_series(PhiCoefficients({}), CTX)
    assert L == Series.variable(CTX, "t")


def test_vanishing_over_seeded_arrays():
    for seed in range(300, 320):
        report = verify_psi_form(lhs_series(random_phi(seed), CTX))
        assert report.ok, (seed, report.violations)


def test_verify_psi_form_flags_bad_support():
    bad = Series(
        CTX,
        {
            CTX.monomial(t=1): Fraction(1),
            CTX.monomial(z=2): Fraction(1),  # t^0: outside t * Psi(tz, z)
            CTX.monomial(t=3, z=1): Fraction(5),  # z below t - 1
        },
    )
    report = verify_psi_form(bad)
    assert not report.ok
    assert (0, 2, Fraction(1)) in report.violations
    assert (3, 1, Fraction(5)) in report.violations
    assert len(report.violations) == 2


def test_psi_uv_mapping():
    L = Series(
        CTX,
        {
            CTX.monomial(t=1): Fraction(1),
            CTX.monomial(t=2, z=1): Fraction(7),
            CTX.monomial(t=2, z=3): Fraction(9),
        },
    )
    assert psi_uv_coefficients(L) == [
        (0, 0, Fraction(1)),
        (1, 0, Fraction(7)),
        (1, 2, Fraction(9)),
    ]


# -- substitution family -----------------------------------------------------------


def test_falling_factorial_basis_change():
    # k^l = sum_m S(l, m) m! binom(k, m), the identity behind phi_to_P
    table = StirlingTable()
    for l in range(7):
        for k in range(7):
            rhs = sum(
                table.stirling2(l, m) * factorial(m) * comb(k, m)
                for m in range(l + 1)
            )
            assert k**l == rhs


def test_phi_to_P_single_entry():
    family = phi_to_P(PhiCoefficients({(1, 0): 1}), j_max=3)
    assert family.p(1, 1) == 1
    assert family.p(2, 0) == 2
    assert family.p(1, 0) == 0
    assert family.p(3, 0) == 0


def test_phi_to_P_images():
    ctx = make_context(t_max=4, z_max=4, magnitude_max=4, max_edge_size=5)
    family = phi_to_P(PhiCoefficients({(1, 0): 1}), j_max=4)
    u2_image = family.u_image(2, ctx)
    assert u2_image == Series.term(ctx, ctx.monomial(z=1), 2)
    t_image = family.t_image(ctx)
    # t * exp(z): coefficient of t z^2 is 1/2
    assert t_image.coefficient(ctx.monomial(t=1, z=2)) == Fraction(1, 2)


def test_t_image_requires_reduced_array():
    ctx = make_context(t_max=3, z_max=3, magnitude_max=0, max_edge_size=2)
    family = phi_to_P(PhiCoefficients({(0, 0): 1}), j_max=2)
    with pytest.raises(ValueError):
        family.t_image(ctx)


def test_substitution_reproduces_lhs():
    ctx = make_context(t_max=4, z_max=4, magnitude_max=4, max_edge_size=6)
    C = compute_C(ctx)
    for seed in (42, 99):
        phi = random_phi(seed)
        direct = lhs_series(phi, ctx)
        routed = substituted_connected_gf(phi, ctx, C=C)
        assert first_difference(direct, routed) is None, seed


def test_substitution_requires_magnitude_headroom():
    ctx = make_context(t_max=4, z_max=4, magnitude_max=2, max_edge_size=6)
    with pytest.raises(ValueError):
        substituted_connected_gf(random_phi(1), ctx)


# -- reversion route ---------------------------------------------------------------


def test_psi_of_zero_phi_is_one():
    ctx = make_context(t_max=4, magnitude_max=0, max_edge_size=2)
    pair = psi_from_phi(Series.zero(ctx), order=3)
    assert pair.w == Series.variable(ctx, "t")
    assert pair.psi == Series.one(ctx)


def test_diagonal_matches_lhs_for_seeded_arrays():
    ctx1 = make_context(t_max=5, magnitude_max=0, max_edge_size=2)
    for seed in range(60, 70):
        phi = random_phi(seed)
        L = lhs_series(phi, CTX)
        pair = psi_from_phi(phi.phi_series(ctx1), order=4)
        assert diagonal_mismatches(pair, L) == [], seed


def test_diagonal_detects_corruption():
    phi = random_phi(5)
    L = lhs_series(phi, CTX)
    ctx1 = make_context(t_max=5, magnitude_max=0, max_edge_size=2)
    pair = psi_from_phi(phi.phi_series(ctx1), order=4)
    bad = L + Series.term(CTX, CTX.monomial(t=3, z=2), Fraction(1, 7))
    mism = diagonal_mismatches(pair, bad)
    assert [(power, a - b) for power, a, b in mism] == [(2, Fraction(-1, 7))]


def test_psi_from_phi_validates():
    ctx = make_context(t_max=3, magnitude_max=0, max_edge_size=2)
    with pytest.raises(ValueError):
        psi_from_phi(Series.zero(ctx), order=3)  # needs t_max >= order + 1
    with pytest.raises(ValueError):
        psi_from_phi(Series.one(ctx), order=2)  # constant term


# -- the hypertree dictionary --------------------------------------------------------


def test_edge_symbol_phi_shape():
    ctx = make_context(t_max=4, magnitude_max=4, max_edge_size=5)
    phi = edge_symbol_phi(ctx)
    assert phi.coefficient(ctx.monomial(t=1, u={2: 1})) == Fraction(1, 2)
    assert phi.coefficient(ctx.monomial(t=3, u={4: 1})) == Fraction(1, 24)


def test_dictionary_reproduces_hypertree_series():
    ctx = make_context(t_max=5, magnitude_max=5, max_edge_size=6)
    report = hypertree_dictionary_report(ctx)
    assert report.ok, report.summary_lines()
    assert [c.key for c in report.checks] == ["dictionary-rooted", "dictionary-unrooted"]
