"""Exact truncated multivariate formal power series over the rationals.

Every series in this package lives over a fixed variable alphabet: an
optional vertex-marking variable ``t``, an optional auxiliary variable
``z``, and edge variables ``u2 .. uM`` where ``u_i`` marks an edge with
``i`` vertices.  A monomial carries a *magnitude* grading::

    magnitude(t^a z^b u2^c2 ... uM^cM) = sum((i - 1) * c_i)

which matches the edge magnitude of the hypergraphs these series count.

A :class:`TruncationContext` fixes bounds ``t_max``, ``z_max`` and
``magnitude_max``.  Every operation truncates its result to those bounds,
so the algebra is closed and all stored coefficients are exact
:class:`fractions.Fraction` values.  There is no floating point anywhere.

All three gradings are additive and non-negative, which is what makes
truncation coherent: any product of admissible monomials that lands back
inside the bounds can only have used admissible factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Union

Scalar = Union[int, Fraction]


class ContextMismatchError(ValueError):
    """Raised when series from different truncation contexts are combined."""


class OutOfContextError(ValueError):
    """Raised when a coefficient is requested outside the truncation bounds."""


class Monomial(NamedTuple):
    """Exponent vector ``(t_deg, z_deg, u_degs)``.

    ``u_degs[j]`` is the exponent of ``u_{j+2}``.  Tuple ordering of the
    fields doubles as the canonical term order used for serialization.
    """

    t_deg: int
    z_deg: int
    u_degs: tuple[int, ...]

    @property
    def magnitude(self) -> int:
        return sum(i * e for i, e in enumerate(self.u_degs, start=1))

    @property
    def total_grade(self) -> int:
        return self.t_deg + self.z_deg + self.magnitude

    def is_unit(self) -> bool:
        return self.t_deg == 0 and self.z_deg == 0 and not any(self.u_degs)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(
        a.t_deg + b.t_deg,
        a.z_deg + b.z_deg,
        tuple(x + y for x, y in zip(a.u_degs, b.u_degs)),
    )


@dataclass(frozen=True)
class VarAlphabet:
    """The variable set shared by every series under one context.

    ``max_edge_size`` is the largest edge size M carried symbolically, so
    the edge variables are ``u2 .. uM``.
    """

    max_edge_size: int = 8
    has_t: bool = True
    has_z: bool = False

    def __post_init__(self) -> None:
        if self.max_edge_size < 2:
            raise ValueError("max_edge_size must be at least 2")

    @property
    def u_count(self) -> int:
        return self.max_edge_size - 1

    def variables(self) -> tuple[str, ...]:
        names: list[str] = []
        if self.has_t:
            names.append("t")
        if self.has_z:
            names.append("z")
        names.extend(f"u{i}" for i in range(2, self.max_edge_size + 1))
        return tuple(names)

    def resolve(self, name: str) -> tuple[str, int]:
        """Map a variable name to ``(kind, u_index)``; u_index is 0 unless kind is 'u'."""
        if name == "t":
            if not self.has_t:
                raise ValueError("alphabet has no variable t")
            return ("t", 0)
        if name == "z":
            if not self.has_z:
                raise ValueError("alphabet has no variable z")
            return ("z", 0)
        if name.startswith("u") and name[1:].isdigit():
            i = int(name[1:])
            if 2 <= i <= self.max_edge_size:
                return ("u", i)
        raise ValueError(f"unknown variable {name!r}")


@dataclass(frozen=True)
class TruncationContext:
    """Degree bounds under which all arithmetic is performed."""

    t_max: int = 6
    z_max: int = 0
    magnitude_max: int = 6
    alphabet: VarAlphabet = VarAlphabet()

    def __post_init__(self) -> None:
        if min(self.t_max, self.z_max, self.magnitude_max) < 0:
            raise ValueError("truncation bounds must be non-negative")
        if not self.alphabet.has_t and self.t_max != 0:
            raise ValueError("t_max must be 0 when the alphabet has no t")
        if not self.alphabet.has_z and self.z_max != 0:
            raise ValueError("z_max must be 0 when the alphabet has no z")

    def admits(self, m: Monomial) -> bool:
        return (
            m.t_deg <= self.t_max
            and m.z_deg <= self.z_max
            and m.magnitude <= self.magnitude_max
        )

    def require(self, m: Monomial) -> None:
        if not self.admits(m):
            raise OutOfContextError(f"monomial {m} lies outside {self}")

    @property
    def grade_bound(self) -> int:
        return self.t_max + self.z_max + self.magnitude_max

    def unit_monomial(self) -> Monomial:
        return Monomial(0, 0, (0,) * self.alphabet.u_count)

    def monomial(
        self, t: int = 0, z: int = 0, u: Mapping[int, int] | None = None
    ) -> Monomial:
        """Build a monomial, validating exponents against the alphabet."""
        if t < 0 or z < 0:
            raise ValueError("exponents must be non-negative")
        if t and not self.alphabet.has_t:
            raise ValueError("alphabet has no variable t")
        if z and not self.alphabet.has_z:
            raise ValueError("alphabet has no variable z")
        degs = [0] * self.alphabet.u_count
        if u:
            for i, e in u.items():
                if e < 0:
                    raise ValueError("exponents must be non-negative")
                if not 2 <= i <= self.alphabet.max_edge_size:
                    raise ValueError(f"no edge variable u{i} in the alphabet")
                degs[i - 2] = e
        return Monomial(t, z, tuple(degs))


def make_context(
    t_max: int = 6,
    z_max: int = 0,
    magnitude_max: int = 6,
    max_edge_size: int = 8,
    has_z: bool | None = None,
) -> TruncationContext:
    """Convenience constructor; z is included exactly when z_max > 0 unless forced."""
    if has_z is None:
        has_z = z_max > 0
    alphabet = VarAlphabet(max_edge_size=max_edge_size, has_t=True, has_z=has_z)
    return TruncationContext(t_max, z_max, magnitude_max, alphabet)


class Series:
    """An immutable truncated power series: a finite Monomial -> Fraction map.

    Construction drops zero coefficients and silently truncates monomials
    that violate the context bounds, so every stored term is admissible.
    """

    __slots__ = ("context", "_terms")

    def __init__(
        self,
        context: TruncationContext,
        terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = (),
    ) -> None:
        data: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            if not isinstance(m, Monomial):
                raise TypeError(f"expected Monomial key, got {type(m).__name__}")
            if len(m.u_degs) != context.alphabet.u_count:
                raise ValueError("monomial does not match the context alphabet")
            frac = Fraction(c)
            if frac and context.admits(m):
                acc = data.get(m)
                new = frac if acc is None else acc + frac
                if new:
                    data[m] = new
                elif acc is not None:
                    del data[m]
        self.context = context
        self._terms = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, context: TruncationContext) -> "Series":
        return cls(context)

    @classmethod
    def one(cls, context: TruncationContext) -> "Series":
        return cls.constant(context, 1)

    @classmethod
    def constant(cls, context: TruncationContext, value: Scalar) -> "Series":
        return cls(context, {context.unit_monomial(): Fraction(value)})

    @classmethod
    def variable(cls, context: TruncationContext, name: str) -> "Series":
        kind, idx = context.alphabet.resolve(name)
        if kind == "t":
            m = context.monomial(t=1)
        elif kind == "z":
            m = context.monomial(z=1)
        else:
            m = context.monomial(u={idx: 1})
        return cls(context, {m: Fraction(1)})

    @classmethod
    def term(cls, context: TruncationContext, m: Monomial, coeff: Scalar) -> "Series":
        return cls(context, {m: Fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def n_terms(self) -> int:
        return len(self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(self.context.unit_monomial(), Fraction(0))

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """All terms in canonical order: sorted by (t_deg, z_deg, u_degs)."""
        return sorted(self._terms.items())

    def coefficient(self, m: Monomial) -> Fraction:
        """Exact coefficient of an in-context monomial.

        Raises OutOfContextError for monomials beyond the truncation bounds,
        where the stored value 0 would be indistinguishable from truncation.
        """
        self.context.require(m)
        return self._terms.get(m, Fraction(0))

    def t_coefficient(self, k: int) -> "Series":
        """The coefficient of t^k as a series in the remaining variables."""
        out = {
            Monomial(0, m.z_deg, m.u_degs): c
            for m, c in self._terms.items()
            if m.t_deg == k
        }
        return Series(self.context, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        shown = self.terms()[:4]
        body = " + ".join(_term_text(m, c) for m, c in shown) or "0"
        if self.n_terms > 4:
            body += f" + ... ({self.n_terms} terms)"
        return f"Series({body})"

    # -- ring operations ---------------------------------------------------

    def _check_same_context(self, other: "Series") -> None:
        if self.context != other.context:
            raise ContextMismatchError("series have different truncation contexts")

    def __add__(self, other: "Series" | Scalar) -> "Series":
        if isinstance(other, (int, Fraction)):
            other = Series.constant(self.context, other)
        elif not isinstance(other, Series):
            return NotImplemented
        self._check_same_context(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            acc = out.get(m)
            new = c if acc is None else acc + c
            if new:
                out[m] = new
            elif acc is not None:
                del out[m]
        result = Series.__new__(Series)
        result.context = self.context
        result._terms = out
        return result

    def __radd__(self, other: Scalar) -> "Series":
        return self.__add__(other)

    def __neg__(self) -> "Series":
        result = Series.__new__(Series)
        result.context = self.context
        result._terms = {m: -c for m, c in self._terms.items()}
        return result

    def __sub__(self, other: "Series" | Scalar) -> "Series":
        if isinstance(other, (int, Fraction)):
            other = Series.constant(self.context, other)
        elif not isinstance(other, Series):
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other: Scalar) -> "Series":
        return self.__neg__().__add__(other)

    def __mul__(self, other: "Series" | Scalar) -> "Series":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            result = Series.__new__(Series)
            result.context = self.context
            result._terms = {m: v * c for m, v in self._terms.items()} if c else {}
            return result
        if not isinstance(other, Series):
            return NotImplemented
        self._check_same_context(other)
        ctx = self.context
        t_max, z_max, mag_max = ctx.t_max, ctx.z_max, ctx.magnitude_max
        # magnitudes are additive, so compute each factor's once
        left = [(m, m.magnitude, c) for m, c in self._terms.items()]
        right = [(m, m.magnitude, c) for m, c in other._terms.items()]
        if len(left) > len(right):
            left, right = right, left
        out: dict[Monomial, Fraction] = {}
        for ma, maga, ca in left:
            for mb, magb, cb in right:
                if maga + magb > mag_max:
                    continue
                td = ma.t_deg + mb.t_deg
                if td > t_max:
                    continue
                zd = ma.z_deg + mb.z_deg
                if zd > z_max:
                    continue
                m = Monomial(td, zd, tuple(x + y for x, y in zip(ma.u_degs, mb.u_degs)))
                acc = out.get(m)
                new = ca * cb if acc is None else acc + ca * cb
                if new:
                    out[m] = new
                elif acc is not None:
                    del out[m]
        result = Series.__new__(Series)
        result.context = ctx
        result._terms = out
        return result

    def __rmul__(self, other: Scalar) -> "Series":
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "Series":
        c = Fraction(other)
        if not c:
            raise ZeroDivisionError("division of a series by zero")
        return self.__mul__(Fraction(1, 1) / c)

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise ValueError("series powers take non-negative integer exponents")
        result = Series.one(self.context)
        for _ in range(k):
            result = result * self
            if result.is_zero():
                break
        return result

    # -- calculus ----------------------------------------------------------

    def derivative(self, name: str) -> "Series":
        """Partial derivative; the result is truncated to the same context."""
        kind, idx = self.context.alphabet.resolve(name)
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            if kind == "t":
                e = m.t_deg
                if e:
                    out[Monomial(e - 1, m.z_deg, m.u_degs)] = c * e
            elif kind == "z":
                e = m.z_deg
                if e:
                    out[Monomial(m.t_deg, e - 1, m.u_degs)] = c * e
            else:
                e = m.u_degs[idx - 2]
                if e:
                    degs = list(m.u_degs)
                    degs[idx - 2] = e - 1
                    out[Monomial(m.t_deg, m.z_deg, tuple(degs))] = c * e
        result = Series.__new__(Series)
        result.context = self.context
        result._terms = out
        return result

    def substitute(self, name: str, g: "Series") -> "Series":
        """Replace a variable by a series with zero constant term."""
        self._check_same_context(g)
        kind, idx = self.context.alphabet.resolve(name)
        if g.constant_term:
            raise ValueError("substituted series must have zero constant term")
        groups: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            if kind == "t":
                e, rest = m.t_deg, Monomial(0, m.z_deg, m.u_degs)
            elif kind == "z":
                e, rest = m.z_deg, Monomial(m.t_deg, 0, m.u_degs)
            else:
                e = m.u_degs[idx - 2]
                degs = list(m.u_degs)
                degs[idx - 2] = 0
                rest = Monomial(m.t_deg, m.z_deg, tuple(degs))
            bucket = groups.setdefault(e, {})
            bucket[rest] = bucket.get(rest, Fraction(0)) + c
        result = Series.zero(self.context)
        power = Series.one(self.context)
        cur = 0
        for e in sorted(groups):
            while cur < e:
                power = power * g
                cur += 1
            if e and power.is_zero():
                break
            part = Series(self.context, groups[e])
            result = result + (part * power if e else part)
        return result

    # -- truncation and filtering -------------------------------------------

    def grade_filter(self, pred: Callable[[int, int], bool]) -> "Series":
        """Keep the terms whose (t_deg, magnitude) satisfy the predicate."""
        kept = {m: c for m, c in self._terms.items() if pred(m.t_deg, m.magnitude)}
        result = Series.__new__(Series)
        result.context = self.context
        result._terms = kept
        return result

    def restrict(
        self,
        t_max: int | None = None,
        z_max: int | None = None,
        magnitude_max: int | None = None,
    ) -> "Series":
        """Drop terms beyond tighter bounds, keeping the same context."""
        tb = self.context.t_max if t_max is None else t_max
        zb = self.context.z_max if z_max is None else z_max
        mb = self.context.magnitude_max if magnitude_max is None else magnitude_max
        kept = {
            m: c
            for m, c in self._terms.items()
            if m.t_deg <= tb and m.z_deg <= zb and m.magnitude <= mb
        }
        result = Series.__new__(Series)
        result.context = self.context
        result._terms = kept
        return result

    def truncate_to(self, context: TruncationContext) -> "Series":
        """Re-home the series under another context with the same alphabet."""
        if context.alphabet != self.context.alphabet:
            raise ContextMismatchError("truncate_to requires the same alphabet")
        return Series(context, self._terms)

    # -- transcendental operations ------------------------------------------

    def exp(self) -> "Series":
        """exp(f) for f with zero constant term.

        Convergence under truncation needs every monomial of f to carry
        positive total grade; over this alphabet that is exactly the
        zero-constant-term condition, since every variable has positive
        grade.
        """
        if self.constant_term:
            raise ValueError("exp needs a series with zero constant term")
        ctx = self.context
        result = Series.one(ctx)
        term = Series.one(ctx)
        k = 0
        while True:
            k += 1
            term = term * self / k
            if term.is_zero():
                return result
            result = result + term
            if k > ctx.grade_bound:
                raise RuntimeError("exp failed to terminate; grading violated")

    def log(self) -> "Series":
        """log(f) for f with constant term 1."""
        if self.constant_term != 1:
            raise ValueError("log needs a series with constant term 1")
        ctx = self.context
        g = self - 1
        result = Series.zero(ctx)
        power = Series.one(ctx)
        k = 0
        while True:
            k += 1
            power = power * g
            if power.is_zero():
                return result
            result = result + power * Fraction((-1) ** (k + 1), k)
            if k > ctx.grade_bound:
                raise RuntimeError("log failed to terminate; grading violated")

    def inverse(self) -> "Series":
        """Multiplicative inverse of a unit (nonzero constant term) series."""
        c = self.constant_term
        if not c:
            raise ValueError("inverse needs a nonzero constant term")
        ctx = self.context
        r = self / c - 1
        result = Series.one(ctx)
        power = Series.one(ctx)
        k = 0
        while True:
            k += 1
            power = power * r
            if power.is_zero():
                return result / c
            result = result + power * Fraction((-1) ** k)
            if k > ctx.grade_bound:
                raise RuntimeError("inverse failed to terminate; grading violated")

    def divided_by_t(self) -> "Series":
        """Shift t-degrees down by one; every term must be divisible by t.

        The top degree t_max of the result is not populated by any
        operation that produced the input, so callers own that bookkeeping.
        """
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            if m.t_deg == 0:
                raise ValueError("series is not divisible by t")
            out[Monomial(m.t_deg - 1, m.z_deg, m.u_degs)] = c
        result = Series.__new__(Series)
        result.context = self.context
        result._terms = out
        return result

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form: one `p/q * t^a z^b u2^c ...` line per term."""
        names = self.context.alphabet.variables()
        lines = []
        for m, c in self.terms():
            exps = _exponent_list(self.context.alphabet, m)
            body = " ".join(f"{v}^{e}" for v, e in zip(names, exps))
            lines.append(f"{c.numerator}/{c.denominator} * {body}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, context: TruncationContext, text: str) -> "Series":
        names = context.alphabet.variables()
        terms: dict[Monomial, Fraction] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff_part, _, body = line.partition("*")
            coeff = Fraction(coeff_part.strip())
            exps: dict[str, int] = {}
            for token in body.split():
                var, _, e = token.partition("^")
                if var not in names:
                    raise ValueError(f"unknown variable {var!r} in term {line!r}")
                exps[var] = int(e)
            m = _monomial_from_exponents(context, exps)
            terms[m] = terms.get(m, Fraction(0)) + coeff
        return cls(context, terms)

    def to_json_terms(self) -> list[dict]:
        """JSON form: ordered list of {"exps": [t, z, c2..cM], "num", "den"}."""
        out = []
        for m, c in self.terms():
            out.append(
                {
                    "exps": _exponent_list(self.context.alphabet, m),
                    "num": c.numerator,
                    "den": c.denominator,
                }
            )
        return out

    @classmethod
    def from_json_terms(cls, context: TruncationContext, data: Iterable[Mapping]) -> "Series":
        alphabet = context.alphabet
        width = alphabet.has_t + alphabet.has_z + alphabet.u_count
        terms: dict[Monomial, Fraction] = {}
        for entry in data:
            exps = list(entry["exps"])
            if len(exps) != width:
                raise ValueError("exponent vector does not match the alphabet")
            pos = 0
            t = exps[pos] if alphabet.has_t else 0
            pos += alphabet.has_t
            z = exps[pos] if alphabet.has_z else 0
            pos += alphabet.has_z
            m = Monomial(t, z, tuple(exps[pos:]))
            c = Fraction(entry["num"], entry["den"])
            terms[m] = terms.get(m, Fraction(0)) + c
        return cls(context, terms)


def _exponent_list(alphabet: VarAlphabet, m: Monomial) -> list[int]:
    exps: list[int] = []
    if alphabet.has_t:
        exps.append(m.t_deg)
    if alphabet.has_z:
        exps.append(m.z_deg)
    exps.extend(m.u_degs)
    return exps


def _monomial_from_exponents(context: TruncationContext, exps: Mapping[str, int]) -> Monomial:
    u = {}
    t = z = 0
    for name, e in exps.items():
        kind, idx = context.alphabet.resolve(name)
        if kind == "t":
            t = e
        elif kind == "z":
            z = e
        else:
            u[idx] = e
    return context.monomial(t=t, z=z, u=u)


def _term_text(m: Monomial, c: Fraction) -> str:
    factors = []
    if m.t_deg:
        factors.append("t" + (f"^{m.t_deg}" if m.t_deg > 1 else ""))
    if m.z_deg:
        factors.append("z" + (f"^{m.z_deg}" if m.z_deg > 1 else ""))
    for j, e in enumerate(m.u_degs):
        if e:
            factors.append(f"u{j + 2}" + (f"^{e}" if e > 1 else ""))
    body = "*".join(factors)
    if not body:
        return str(c)
    if c == 1:
        return body
    return f"{c}*{body}"


def exp(f: Series) -> Series:
    return f.exp()


def log(f: Series) -> Series:
    return f.log()


def first_difference(
    a: Series, b: Series
) -> tuple[Monomial, Fraction, Fraction] | None:
    """The canonically first monomial where two series differ, or None."""
    if a.context != b.context:
        raise ContextMismatchError("cannot compare series from different contexts")
    keys = set(a._terms) | set(b._terms)
    for m in sorted(keys):
        ca = a._terms.get(m, Fraction(0))
        cb = b._terms.get(m, Fraction(0))
        if ca != cb:
            return (m, ca, cb)
    return None


def revert(f: Series) -> Series:
    """Compositional inverse in the t-variable slot.

    Requires f = t * (unit): every term divisible by t and a nonzero
    linear coefficient.  Other variables ride along as coefficients.
    The fixed-point iteration gains one order of total grade per step,
    so it is run to the context grade bound and checked for stability.
    """
    ctx = f.context
    y = Series.variable(ctx, "t")
    t_monomial = ctx.monomial(t=1)
    c1 = f.coefficient(t_monomial)
    if not c1:
        raise ValueError("reversion needs a nonzero linear t-coefficient")
    for m, _ in f.terms():
        if m.t_deg == 0:
            raise ValueError("reversion needs every term divisible by t")
    h = f - c1 * y
    g = y / c1
    for _ in range(ctx.grade_bound + 2):
        nxt = (y - h.substitute("t", g)) / c1
        if nxt == g:
            return g
        g = nxt
    raise RuntimeError("reversion iteration did not stabilize")


def lagrange_revert(f: Series) -> Series:
    """Compositional inverse via the Lagrange coefficient formula.

    [y^n] g = (1/n) [t^(n-1)] (t/f)^n.  Slower than revert(); kept as an
    independent route for cross-checking.
    """
    ctx = f.context
    t_monomial = ctx.monomial(t=1)
    if not f.coefficient(t_monomial):
        raise ValueError("reversion needs a nonzero linear t-coefficient")
    ratio_inv = f.divided_by_t().inverse()  # t/f
    g = Series.zero(ctx)
    power = Series.one(ctx)
    for n in range(1, ctx.t_max + 1):
        power = power * ratio_inv
        slice_n = power.t_coefficient(n - 1)
        if slice_n.is_zero():
            continue
        t_n = Series.term(ctx, ctx.monomial(t=n), Fraction(1, n))
        g = g + t_n * slice_n
    return g


def series_to_json(f: Series) -> str:
    return json.dumps(f.to_json_terms())


def series_from_json(context: TruncationContext, text: str) -> Series:
    return Series.from_json_terms(context, json.loads(text))
