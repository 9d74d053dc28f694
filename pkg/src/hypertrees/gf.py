"""Generating functions for connected labeled hypergraphs and hypertrees.

The pipeline starts from the exponential formula: with

    S(t, u) = sum_k t^k/k! * exp(sum_i binom(k, i) u_i),

the logarithm C = log S counts connected labeled hypergraphs, t marking
vertices and u_i marking i-vertex edges.  Every monomial of the t^n/n!
layer has magnitude at least n - 1, and the magnitude n - 1 layer T is
the hypertree generating function.  R = t dT/dt marks a root vertex and
satisfies the fixed point R = t * exp(sum_j u_{j+1} R^j / j!), from which
T is recovered as R - sum_j (j-1) u_j R^j / j!.

Everything is exact; identities are verified as equalities of truncated
series on the region where both sides are fully determined by the
context (each order of differentiation in a u or t variable costs one
layer of the corresponding grading).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .combinat import StirlingTable, multinomial, part_multiplicities, partitions
from .hypergraphs import EdgeProfile
from .series import (
    Monomial,
    Series,
    TruncationContext,
    first_difference,
    make_context,
)

_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _require_alphabet_covers(ctx: TruncationContext) -> None:
    if ctx.magnitude_max > ctx.alphabet.max_edge_size - 1:
        raise ValueError(
            "alphabet too small: need max_edge_size - 1 >= magnitude_max "
            "so no admissible edge variable is missing"
        )


def edge_sum_argument(ctx: TruncationContext, k: int) -> Series:
    """sum_i binom(k, i) u_i over the edge sizes the context can hold."""
    terms = {}
    for i in range(2, min(k, ctx.alphabet.max_edge_size) + 1):
        c = comb(k, i)
        if c:
            terms[ctx.monomial(u={i: 1})] = Fraction(c)
    return Series(ctx, terms)


def compute_C(ctx: TruncationContext, K: int | None = None) -> Series:
    """Connected-hypergraph series C = log(sum_k t^k/k! exp(edge sum)).

    K is the upper limit of the k-sum; it must be at least t_max, and
    terms with k > t_max are dropped unevaluated since t^k is already
    outside the context.
    """
    _require_alphabet_covers(ctx)
    if K is None:
        K = ctx.t_max
    if K < ctx.t_max:
        raise ValueError("the k-sum must run at least to t_max")
    total = Series.zero(ctx)
    for k in range(0, ctx.t_max + 1):
        term = Series.term(ctx, ctx.monomial(t=k), Fraction(1, factorial(k)))
        total = total + term * edge_sum_argument(ctx, k).exp()
    return total.log()


def compute_T(C: Series) -> Series:
    """Hypertree layer: the terms of C with magnitude == t_deg - 1.

    Complete only when the context kept every such term, hence the
    magnitude_max >= t_max - 1 requirement.
    """
    ctx = C.context
    if ctx.magnitude_max < ctx.t_max - 1:
        raise ValueError("need magnitude_max >= t_max - 1 for a complete hypertree layer")
    return C.grade_filter(lambda t_deg, mag: mag == t_deg - 1)


def compute_R(T: Series) -> Series:
    """Rooted hypertrees: R = t * dT/dt."""
    return Series.variable(T.context, "t") * T.derivative("t")


def solve_R_fixed_point(ctx: TruncationContext) -> Series:
    """Solve R = t * exp(sum_j u_{j+1} R^j / j!) by iteration from R = t.

    Each pass extends exactness by one t-order, so t_max passes starting
    from the t-linear seed determine every admissible coefficient.
    """
    _require_alphabet_covers(ctx)
    t = Series.variable(ctx, "t")
    R = t
    j_top = min(ctx.alphabet.max_edge_size - 1, ctx.t_max, ctx.magnitude_max)
    for _ in range(ctx.t_max):
        arg = Series.zero(ctx)
        power = Series.one(ctx)
        for j in range(1, j_top + 1):
            power = power * R
            if power.is_zero():
                break
            u_j1 = Series.variable(ctx, f"u{j + 1}")
            arg = arg + u_j1 * power / factorial(j)
        R = t * arg.exp()
    return R


def T_from_R(R: Series) -> Series:
    """Unrooted form: T = R - sum_{j>=2} (j-1) u_j R^j / j!."""
    ctx = R.context
    out = R
    power = R
    for j in range(2, min(ctx.alphabet.max_edge_size, ctx.t_max) + 1):
        power = power * R
        if power.is_zero():
            break
        u_j = Series.variable(ctx, f"u{j}")
        out = out - (j - 1) * u_j * power / factorial(j)
    return out


@dataclass(frozen=True)
class PipelineResult:
    """C, T and R computed from one context, tied by construction."""

    context: TruncationContext
    C: Series
    T: Series
    R: Series

    @classmethod
    def compute(cls, ctx: TruncationContext, K: int | None = None) -> "PipelineResult":
        C = compute_C(ctx, K)
        T = compute_T(C)
        return cls(ctx, C, T, compute_R(T))


def egf_coefficient(f: Series, n: int) -> Series:
    """[t^n/n!] f as a series in the remaining variables."""
    return f.t_coefficient(n) * factorial(n)


def egf_profile_coefficient(f: Series, n: int, profile: EdgeProfile) -> Fraction:
    """Coefficient of (t^n/n!) (u^profile/profile!) in f."""
    ctx = f.context
    m = Monomial(n, 0, profile.monomial(ctx).u_degs)
    return f.coefficient(m) * factorial(n) * profile.factorial_norm()


# -- closed-form counts ------------------------------------------------------


def count_by_profile(n: int, profile: EdgeProfile) -> tuple[int, int]:
    """(rooted, unrooted) hypertree counts on 1..n for one edge profile.

    Hypertrees with a_i edges of i + 1 vertices induce a partition of
    n - 1 with a_i parts of size i; the rooted count is the multinomial
    of that partition times prod_i n^{a_i} / a_i!.  Profiles off the
    magnitude n - 1 surface admit no hypertrees at all.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if profile.magnitude != n - 1:
        return (0, 0)
    parts: list[int] = []
    rooted = Fraction(1)
    for size, a in profile.items():
        parts.extend([size - 1] * a)
        rooted *= Fraction(n**a, factorial(a))
    rooted *= multinomial(n - 1, tuple(parts))
    if rooted.denominator != 1:
        raise AssertionError(f"rooted count {rooted} is not an integer")
    rooted_int = rooted.numerator
    if rooted_int % n:
        raise AssertionError(f"rooted count {rooted_int} not divisible by n = {n}")
    return (rooted_int, rooted_int // n)


def rooted_count_by_edges(n: int, k: int, table: StirlingTable | None = None) -> int:
    """Rooted hypertrees on 1..n with exactly k edges: n^k * S(n-1, k).

    Out-of-range k gives 0, except the degenerate n = 1, k = 0 where the
    single empty rooted hypertree counts as 1.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if k < 0 or k > max(n - 1, 0):
        return 0
    table = table or StirlingTable()
    return n**k * table.stirling2(n - 1, k)


def specialize_all_ones(P: PipelineResult) -> tuple[Series, Series]:
    """(T, R) with every u_i set to 1, as plain series in t.

    Needs the full magnitude range per t-order, i.e. magnitude_max >=
    t_max - 1, and an alphabet wide enough that no admissible edge size
    was dropped (both established by the pipeline preconditions).
    """
    ctx = P.context
    if ctx.magnitude_max < ctx.t_max - 1:
        raise ValueError("need magnitude_max >= t_max - 1 to specialize u = 1")
    tctx = make_context(t_max=ctx.t_max, z_max=0, magnitude_max=0, max_edge_size=2)

    def collapse(f: Series) -> Series:
        out: dict[Monomial, Fraction] = {}
        for m, c in f.terms():
            key = Monomial(m.t_deg, 0, (0,))
            out[key] = out.get(key, Fraction(0)) + c
        return Series(tctx, out)

    return collapse(P.T), collapse(P.R)


# -- identity verification ----------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    key: str
    formula: str
    ok: bool
    t_bound: int
    magnitude_bound: int
    first_diff: str | None = None

    def as_dict(self) -> dict:
        return {
            "key": self.key,
            "formula": self.formula,
            "ok": self.ok,
            "region": {"t_max": self.t_bound, "magnitude_max": self.magnitude_bound},
            "first_diff": self.first_diff,
        }


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[IdentityCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "ok  " if c.ok else "FAIL"
            region = f"t<={c.t_bound}, magnitude<={c.magnitude_bound}"
            line = f"{status} {c.key:28s} [{region}] {c.formula}"
            if c.first_diff:
                line += f"  first diff at {c.first_diff}"
            lines.append(line)
        return lines


def identity_check(
    key: str,
    formula: str,
    lhs: Series,
    rhs: Series,
    t_bound: int,
    magnitude_bound: int,
) -> IdentityCheck:
    # negative bounds leave an empty comparison region: vacuously ok
    a = lhs.restrict(t_max=t_bound, magnitude_max=magnitude_bound)
    b = rhs.restrict(t_max=t_bound, magnitude_max=magnitude_bound)
    diff = first_difference(a, b)
    detail = None
    if diff is not None:
        m, ca, cb = diff
        detail = f"{m}: {ca} vs {cb}"
    return IdentityCheck(key, formula, diff is None, t_bound, magnitude_bound, detail)


def verify_identities(P: PipelineResult, j_top: int = 5) -> IdentityReport:
    """Exact structural identities tying C, T and R together.

    Differentiating by u_j can only be trusted where the argument kept
    the extra magnitude j - 1, so the C-side checks shrink their
    comparison region accordingly; T is a complete polynomial per
    t-order, so its checks run on the full context region.
    """
    ctx = P.context
    N, Q = ctx.t_max, ctx.magnitude_max
    j_top = min(j_top, ctx.alphabet.max_edge_size)
    C, T, R = P.C, P.T, P.R
    t = Series.variable(ctx, "t")
    checks: list[IdentityCheck] = []

    dCdt = C.derivative("t")
    t_dCdt = t * dCdt
    dCdu = {j: C.derivative(f"u{j}") for j in range(2, j_top + 1)}

    rhs = (t * t) * (dCdt * dCdt + C.derivative("t").derivative("t")) / 2
    checks.append(
        identity_check(
            "connected-2edge",
            "dC/du2 = t^2/2 ((dC/dt)^2 + d2C/dt2)",
            dCdu[2],
            rhs,
            N,
            Q - 1,
        )
    )

    for j in range(3, j_top + 1):
        prev = dCdu[j - 1]
        rhs = (t_dCdt * prev + t * prev.derivative("t") - (j - 1) * prev) / j
        checks.append(
            identity_check(
                f"connected-edge-recursion-u{j}",
                f"dC/du{j} = (t dC/dt dC/du{j-1} + t d2C/dt du{j-1} - {j-1} dC/du{j-1}) / {j}",
                dCdu[j],
                rhs,
                N,
                Q - (j - 1),
            )
        )

    dTdu = {j: T.derivative(f"u{j}") for j in range(2, max(j_top, ctx.alphabet.max_edge_size) + 1)}
    checks.append(
        identity_check(
            "tree-2edge",
            "dT/du2 = (t dT/dt)^2 / 2",
            dTdu[2],
            R * R / 2,
            N,
            Q,
        )
    )

    for j in range(3, j_top + 1):
        checks.append(
            identity_check(
                f"tree-edge-recursion-u{j}",
                f"dT/du{j} = (t dT/dt) dT/du{j-1} / {j}",
                dTdu[j],
                R * dTdu[j - 1] / j,
                N,
                Q,
            )
        )

    R_power = R
    for j in range(2, j_top + 1):
        R_power = R_power * R
        checks.append(
            identity_check(
                f"tree-rooted-forest-u{j}",
                f"dT/du{j} = (t dT/dt)^{j} / {j}!",
                dTdu[j],
                R_power / factorial(j),
                N,
                Q,
            )
        )

    lhs = Series.zero(ctx)
    for j in range(2, ctx.alphabet.max_edge_size + 1):
        lhs = lhs + (j - 1) * Series.variable(ctx, f"u{j}") * dTdu[j]
    checks.append(
        identity_check(
            "magnitude-balance",
            "sum_j (j-1) u_j dT/du_j = t dT/dt - T",
            lhs,
            R - T,
            N,
            Q,
        )
    )

    fixed = solve_R_fixed_point(ctx)
    checks.append(
        identity_check(
            "rooted-fixed-point",
            "R = t exp(sum_j u_{j+1} R^j / j!)",
            R,
            fixed,
            N,
            Q,
        )
    )
    arg = Series.zero(ctx)
    power = Series.one(ctx)
    j_lim = min(ctx.alphabet.max_edge_size - 1, ctx.t_max, ctx.magnitude_max)
    for j in range(1, j_lim + 1):
        power = power * R
        if power.is_zero():
            break
        arg = arg + Series.variable(ctx, f"u{j + 1}") * power / factorial(j)
    checks.append(
        identity_check(
            "rooted-ratio",
            "R/t = exp(sum_j u_{j+1} R^j / j!)",
            R.divided_by_t(),
            arg.exp(),
            N - 1,
            Q,
        )
    )
    checks.append(
        identity_check(
            "unrooted-from-rooted",
            "T = R - sum_j (j-1) u_j R^j / j!",
            T,
            T_from_R(R),
            N,
            Q,
        )
    )

    T1, R1 = specialize_all_ones(P)
    tvar = Series.variable(T1.context, "t")
    exp_R1 = R1.exp()
    checks.append(
        identity_check(
            "all-ones-product",
            "T(u=1) = (exp(R(u=1)) - 1)(1 - R(u=1))",
            T1,
            (exp_R1 - 1) * (1 - R1),
            N,
            0,
        )
    )
    checks.append(
        identity_check(
            "all-ones-fixed-point",
            "R(u=1) = t exp(exp(R(u=1)) - 1)",
            R1,
            tvar * (exp_R1 - 1).exp(),
            N,
            0,
        )
    )

    return IdentityReport(tuple(checks))


# -- displayed coefficient table ----------------------------------------------


def table_terms(n: int) -> list[tuple[EdgeProfile, int]]:
    """Unrooted hypertree counts for [t^n/n!] T, one term per edge profile.

    Profiles run through the partitions of n - 1 in reverse lexicographic
    order, a part of size i standing for an edge of i + 1 vertices.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    out = []
    for parts in partitions(n - 1):
        profile = EdgeProfile.from_dict(
            {p + 1: a for p, a in part_multiplicities(parts).items()}
        )
        _, unrooted = count_by_profile(n, profile)
        out.append((profile, unrooted))
    return out


def _pretty_monomial(profile: EdgeProfile) -> str:
    factors = sorted(profile.items(), key=lambda item: (item[1], item[0]))
    parts = []
    for size, e in factors:
        text = "u" + str(size).translate(_SUBSCRIPT)
        if e > 1:
            text += str(e).translate(_SUPERSCRIPT)
        parts.append(text)
    return "".join(parts)


def render_table_line(n: int) -> str:
    """One display line, e.g. '[t⁴/4!]T = u₄ + 12u₂u₃ + 16u₂³'."""
    t_power = "t" if n == 1 else "t" + str(n).translate(_SUPERSCRIPT)
    pieces = []
    for profile, coeff in table_terms(n):
        if coeff == 0:
            continue
        body = _pretty_monomial(profile)
        if not body:
            pieces.append(str(coeff))
        elif coeff == 1:
            pieces.append(body)
        else:
            pieces.append(f"{coeff}{body}")
    return f"[{t_power}/{n}!]T = " + " + ".join(pieces)


def render_table(max_n: int) -> list[str]:
    return [render_table_line(n) for n in range(1, max_n + 1)]
