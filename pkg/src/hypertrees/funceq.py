"""A log-exp functional equation and its vanishing pattern, verified exactly.

For a two-variable coefficient array Phi(u, v) = sum c_{mn} u^m v^n with
zero constant term, the log-exp sum

    L(t, z) = log( sum_k t^k/k! * exp(k * Phi(kz, z)) )

has the shape t * Psi(tz, z): the coefficient of t^{n+1} z^m vanishes for
every m < n.  The diagonal slice psi(y) = Psi(y, 0) is obtained from
phi(u) = Phi(u, 0) by reverting

    y = w * exp(-phi(w) - w phi'(w)),        y psi(y) = w - w^2 phi'(w).

A nonzero constant c00 only rescales t: L_Phi(t, z) = L_0(t * e^c00, z)
where L_0 uses Phi - c00.  Exact rational arithmetic cannot carry the
transcendental factor e^c00, so every routine here works with the reduced
array and the CLI reports c00 as a log-scale for t; the vanishing and
diagonal statements are invariant under that rescaling.

The same machinery specializes to the hypergraph series: writing
phi(w) = sum_j u_{j+1} w^j/(j+1)! makes the reversion pair reproduce the
rooted and unrooted hypertree series R and T.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .combinat import StirlingTable
from .gf import IdentityReport, T_from_R, identity_check, solve_R_fixed_point
from .series import Series, TruncationContext, revert


class PhiCoefficients:
    """Finite coefficient array c_{mn} for Phi(u, v); exact rationals."""

    def __init__(self, entries: Mapping[tuple[int, int], Fraction | int]) -> None:
        data: dict[tuple[int, int], Fraction] = {}
        for key, value in entries.items():
            m, n = key
            if m < 0 or n < 0:
                raise ValueError("coefficient indices must be non-negative")
            c = Fraction(value)
            if c:
                data[(int(m), int(n))] = c
        self._entries = data

    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._entries.items())

    def coefficient(self, m: int, n: int) -> Fraction:
        return self._entries.get((m, n), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    @property
    def max_weight(self) -> int:
        """The largest m + n over the support (0 for the zero array)."""
        return max((m + n for (m, n) in self._entries), default=0)

    def is_zero(self) -> bool:
        return not self._entries

    def without_constant(self) -> tuple[Fraction, "PhiCoefficients"]:
        """(c00, reduced array); the reduction only rescales t in L."""
        c00 = self.constant_term
        rest = {k: v for k, v in self._entries.items() if k != (0, 0)}
        return c00, PhiCoefficients(rest)

    def phi_series(self, ctx: TruncationContext) -> Series:
        """phi(u) = Phi(u, 0) as a series in the t-slot of ctx."""
        if self.constant_term:
            raise ValueError("reduce the array first: phi needs a zero constant term")
        terms = {
            ctx.monomial(t=m): c for (m, n), c in self._entries.items() if n == 0
        }
        return Series(ctx, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhiCoefficients):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        body = ", ".join(f"({m},{n}): {c}" for (m, n), c in self.items())
        return f"PhiCoefficients({{{body}}})"

    def to_json(self) -> dict:
        return {
            "entries": [
                {"m": m, "n": n, "num": c.numerator, "den": c.denominator}
                for (m, n), c in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PhiCoefficients":
        entries: dict[tuple[int, int], Fraction] = {}
        for item in data["entries"]:
            key = (int(item["m"]), int(item["n"]))
            c = Fraction(int(item["num"]), int(item.get("den", 1)))
            entries[key] = entries.get(key, Fraction(0)) + c
        return cls(entries)


def random_phi(seed: int, max_weight: int = 4, include_constant: bool = False) -> PhiCoefficients:
    """Deterministic fuzz array: for each (m, n) with m + n <= max_weight in
    lexicographic order, draw numerator from -2..2 and denominator from
    {1, 2, 3} with random.Random(seed).  The (0, 0) draw is made either way
    so the remaining coefficients do not depend on include_constant."""
    rng = random.Random(seed)
    entries: dict[tuple[int, int], Fraction] = {}
    for m in range(max_weight + 1):
        for n in range(max_weight - m + 1):
            num = rng.randint(-2, 2)
            den = rng.choice((1, 2, 3))
            if (m, n) == (0, 0) and not include_constant:
                continue
            if num:
                entries[(m, n)] = Fraction(num, den)
    return PhiCoefficients(entries)


# -- the left-hand side -------------------------------------------------------


def lhs_series(phi: PhiCoefficients, ctx: TruncationContext) -> Series:
    """L = log(sum_k t^k/k! exp(k Phi(kz, z))), truncated to ctx.

    The k-th summand has t-degree exactly k, so the sum is cut at
    k = t_max; a runtime assertion confirms the final summand only
    touched the top t-coefficient.
    """
    if not (ctx.alphabet.has_t and ctx.alphabet.has_z):
        raise ValueError("need a context with both t and z")
    if phi.constant_term:
        raise ValueError(
            "constant term must be zero; use without_constant() and carry "
            "the t-scale separately"
        )
    K = ctx.t_max

    def summand(k: int) -> Series:
        acc: dict[int, Fraction] = {}
        for (a, b), c in phi.items():
            zp = a + b
            if zp <= ctx.z_max:
                acc[zp] = acc.get(zp, Fraction(0)) + c * k ** (a + 1)
        arg = Series(ctx, {ctx.monomial(z=zp): v for zp, v in acc.items()})
        front = Series.term(ctx, ctx.monomial(t=k), Fraction(1, factorial(k)))
        return front * arg.exp()

    partial = Series.zero(ctx)
    for k in range(K):
        partial = partial + summand(k)
    full = partial + summand(K)
    L = full.log()
    if K >= 1:
        settled = partial.log().restrict(t_max=K - 1)
        if L.restrict(t_max=K - 1) != settled:
            raise AssertionError("k-sum cut at t_max changed a settled coefficient")
    return L


@dataclass(frozen=True)
class VanishingReport:
    """Support check for L = t * Psi(tz, z): every stored term must have
    t_deg >= 1 and z_deg >= t_deg - 1."""

    ok: bool
    violations: tuple[tuple[int, int, Fraction], ...]  # (t_deg, z_deg, coeff)
    t_max: int
    z_max: int

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "region": {"t_max": self.t_max, "z_max": self.z_max},
            "violations": [
                {"t": a, "z": b, "num": c.numerator, "den": c.denominator}
                for a, b, c in self.violations
            ],
        }


def verify_psi_form(L: Series) -> VanishingReport:
    violations = []
    for m, c in L.terms():
        if m.t_deg == 0 or m.z_deg < m.t_deg - 1:
            violations.append((m.t_deg, m.z_deg, c))
    return VanishingReport(
        not violations, tuple(violations), L.context.t_max, L.context.z_max
    )


def psi_uv_coefficients(L: Series) -> list[tuple[int, int, Fraction]]:
    """Read Psi(u, v) off L through u^n v^m <-> t^{n+1} z^{n+m}."""
    out = []
    for m, c in L.terms():
        if m.t_deg == 0 or m.z_deg < m.t_deg - 1:
            continue
        n = m.t_deg - 1
        out.append((n, m.z_deg - n, c))
    return out


# -- the substitution family --------------------------------------------------


@dataclass
class PSeriesFamily:
    """Coefficients p_{m,i} of the substitution images.

    u_m maps to z^{m-1} P_m(z) with P_m(z) = sum_i p_{m,i} z^i, and t maps
    to t * exp(P_1(z)).  Derived from Phi by the falling-factorial basis
    change k^l = sum_m S(l, m) m! binom(k, m).
    """

    j_max: int
    coeffs: dict[tuple[int, int], Fraction]

    def p(self, m: int, i: int) -> Fraction:
        return self.coeffs.get((m, i), Fraction(0))

    def p_series(self, m: int, ctx: TruncationContext) -> Series:
        terms = {
            ctx.monomial(z=i): c for (mm, i), c in self.coeffs.items() if mm == m
        }
        return Series(ctx, terms)

    def u_image(self, m: int, ctx: TruncationContext) -> Series:
        z_shift = Series.term(ctx, ctx.monomial(z=m - 1), 1)
        return z_shift * self.p_series(m, ctx)

    def t_image(self, ctx: TruncationContext) -> Series:
        p1 = self.p_series(1, ctx)
        if p1.constant_term:
            raise ValueError("t-image needs p_{1,0} = 0; reduce the array first")
        return Series.variable(ctx, "t") * p1.exp()


def phi_to_P(
    phi: PhiCoefficients, j_max: int, table: StirlingTable | None = None
) -> PSeriesFamily:
    """Substitution coefficients p_{m,i} = m! sum_l S(l, m) c_{l-1, j-l+1},
    where j = m + i - 1 runs through the z-weight of the image term."""
    table = table or StirlingTable()
    coeffs: dict[tuple[int, int], Fraction] = {}
    for j in range(j_max + 1):
        for m in range(1, j + 2):
            i = j - m + 1
            total = Fraction(0)
            for l in range(m, j + 2):
                c = phi.coefficient(l - 1, j - l + 1)
                if c:
                    total += table.stirling2(l, m) * factorial(m) * c
            if total:
                coeffs[(m, i)] = total
    return PSeriesFamily(j_max=j_max, coeffs=coeffs)


def substituted_connected_gf(
    phi: PhiCoefficients, ctx: TruncationContext, C: Series | None = None
) -> Series:
    """Apply the substitution family to the connected-hypergraph series.

    Needs magnitude_max >= z_max: a dropped magnitude layer could only
    produce z-degrees beyond z_max, so nothing inside the window is lost.
    The result equals lhs_series(phi, ctx) exactly.
    """
    if phi.constant_term:
        raise ValueError("constant term must be zero; use without_constant()")
    if ctx.magnitude_max < ctx.z_max:
        raise ValueError("need magnitude_max >= z_max for an exact substitution")
    from .gf import compute_C

    if C is None:
        C = compute_C(ctx)
    family = phi_to_P(phi, j_max=ctx.z_max)
    g = C
    for m in range(2, ctx.alphabet.max_edge_size + 1):
        g = g.substitute(f"u{m}", family.u_image(m, ctx))
    return g.substitute("t", family.t_image(ctx))


# -- the reversion route --------------------------------------------------------


@dataclass(frozen=True)
class PhiPsiPair:
    """phi with its reversion data: w(y) and psi(y) = (w - w^2 phi'(w)) / y."""

    phi: Series
    w: Series
    y_psi: Series
    psi: Series
    order: int


def psi_from_phi(phi: Series, order: int) -> PhiPsiPair:
    """Invert y = w exp(-phi(w) - w phi'(w)) and read off psi.

    phi lives in the t-slot of its context (other variables may ride
    along as symbolic coefficients) and needs a zero constant term.  The
    context must hold order + 1 t-degrees so that psi is exact through
    y^order.
    """
    ctx = phi.context
    if order < 0:
        raise ValueError("order must be non-negative")
    if ctx.t_max < order + 1:
        raise ValueError("context must hold t-degrees through order + 1")
    if phi.constant_term:
        raise ValueError("phi needs a zero constant term")
    w = Series.variable(ctx, "t")
    dphi = phi.derivative("t")
    forward = w * (-(phi + w * dphi)).exp()
    w_of_y = revert(forward)
    y_psi = w_of_y - w_of_y * w_of_y * dphi.substitute("t", w_of_y)
    psi = y_psi.divided_by_t().restrict(t_max=order)
    return PhiPsiPair(phi=phi, w=w_of_y, y_psi=y_psi, psi=psi, order=order)


def diagonal_mismatches(
    pair: PhiPsiPair, L: Series
) -> list[tuple[int, Fraction, Fraction]]:
    """Compare [y^n] psi with [t^{n+1} z^n] L for n through pair.order."""
    ctx1 = pair.psi.context
    ctx2 = L.context
    out = []
    top = min(pair.order, ctx2.t_max - 1, ctx2.z_max)
    for n in range(top + 1):
        a = pair.psi.coefficient(ctx1.monomial(t=n))
        b = L.coefficient(ctx2.monomial(t=n + 1, z=n))
        if a != b:
            out.append((n, a, b))
    return out


def edge_symbol_phi(ctx: TruncationContext) -> Series:
    """phi(w) = sum_j u_{j+1} w^j/(j+1)!, the weights under which the
    reversion pair carries the hypertree series."""
    terms = {}
    for j in range(1, ctx.alphabet.max_edge_size):
        terms[ctx.monomial(t=j, u={j + 1: 1})] = Fraction(1, factorial(j + 1))
    return Series(ctx, terms)


def hypertree_dictionary_report(ctx: TruncationContext) -> IdentityReport:
    """The reversion route against the fixed-point route: w(y) must equal
    the rooted series R and w - w^2 phi'(w) the unrooted series T."""
    R = solve_R_fixed_point(ctx)
    T = T_from_R(R)
    pair = psi_from_phi(edge_symbol_phi(ctx), order=max(ctx.t_max - 1, 0))
    checks = (
        identity_check(
            "dictionary-rooted",
            "w(y) = R under phi = sum u_{j+1} w^j/(j+1)!",
            pair.w,
            R,
            ctx.t_max,
            ctx.magnitude_max,
        ),
        identity_check(
            "dictionary-unrooted",
            "w - w^2 phi'(w) = T under the same weights",
            pair.y_psi,
            T,
            ctx.t_max,
            ctx.magnitude_max,
        ),
    )
    return IdentityReport(checks)
