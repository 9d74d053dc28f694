"""Brute-force oracle over labeled hypergraphs.

A hypergraph here has vertex set {1..n} and a finite multiset of edges,
each an unordered set of at least two vertices.  Edges of equal size are
distinguishable: the position of an edge inside its size class is its
label.  The edge profile records how many edges there are of each size;
its magnitude sum((i - 1) * count_i) is the grading that the series
modules track with the u-variables.

is_connected and is_hypertree below are deliberately literal: they walk
the bipartite incidence graph (vertices on one side, edges on the other)
and test reachability and acyclicity by depth-first search.  The counting
kernels reproduce the same classification with a union-find pass; tests
hold the two routes against each other, so the fast path never becomes
the definition.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Iterator

from . import _kernel_py
from .combinat import part_multiplicities, partitions
from .series import Monomial, Series, TruncationContext

try:
    from . import _kernel  # type: ignore[attr-defined]
except ImportError:
    _kernel = None

DEFAULT_BUDGET = 10_000_000
DEFAULT_N_MAX = 6


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed the hypergraph budget."""

    def __init__(self, required: int, budget: int) -> None:
        super().__init__(
            f"enumeration needs {required} hypergraphs, over the budget of {budget}"
        )
        self.required = required
        self.budget = budget


def active_kernel():
    """The counting kernel selected at import: compiled when available,
    pure Python otherwise or when HYPERTREES_PURE is set."""
    if os.environ.get("HYPERTREES_PURE", "") not in ("", "0"):
        return _kernel_py
    return _kernel if _kernel is not None else _kernel_py


def kernel_name() -> str:
    return active_kernel().KERNEL_NAME


@dataclass(frozen=True)
class EdgeProfile:
    """Edge counts by size: counts[j] is the number of edges with j + 2 vertices."""

    counts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise ValueError("edge counts must be non-negative")
        trimmed = self.counts
        while trimmed and trimmed[-1] == 0:
            trimmed = trimmed[:-1]
        object.__setattr__(self, "counts", tuple(int(c) for c in trimmed))

    @classmethod
    def from_dict(cls, counts: dict[int, int]) -> "EdgeProfile":
        if any(size < 2 for size in counts):
            raise ValueError("edge sizes start at 2")
        top = max(counts, default=2)
        return cls(tuple(counts.get(size, 0) for size in range(2, top + 1)))

    @classmethod
    def from_sizes(cls, sizes: tuple[int, ...]) -> "EdgeProfile":
        out: dict[int, int] = {}
        for s in sizes:
            out[s] = out.get(s, 0) + 1
        return cls.from_dict(out)

    @classmethod
    def parse(cls, text: str) -> "EdgeProfile":
        """Parse the CLI syntax 'u2=2,u3=1'; an empty string is the empty profile."""
        counts: dict[int, int] = {}
        for chunk in filter(None, (p.strip() for p in text.split(","))):
            name, _, value = chunk.partition("=")
            if not (name.startswith("u") and name[1:].isdigit()) or not value:
                raise ValueError(f"bad profile entry {chunk!r}; expected e.g. u2=2")
            size = int(name[1:])
            if size < 2:
                raise ValueError("edge sizes start at 2")
            counts[size] = counts.get(size, 0) + int(value)
        return cls.from_dict(counts)

    def count(self, size: int) -> int:
        j = size - 2
        return self.counts[j] if 0 <= j < len(self.counts) else 0

    def items(self) -> Iterator[tuple[int, int]]:
        for j, c in enumerate(self.counts):
            if c:
                yield (j + 2, c)

    def sizes(self) -> tuple[int, ...]:
        out: list[int] = []
        for size, c in self.items():
            out.extend([size] * c)
        return tuple(out)

    @property
    def magnitude(self) -> int:
        return sum((size - 1) * c for size, c in self.items())

    @property
    def edge_count(self) -> int:
        return sum(self.counts)

    @property
    def max_size(self) -> int:
        return len(self.counts) + 1 if self.counts else 0

    def factorial_norm(self) -> int:
        """The label-class size: the product of count! over the sizes."""
        out = 1
        for _, c in self.items():
            out *= factorial(c)
        return out

    def monomial(self, ctx: TruncationContext) -> Monomial:
        return ctx.monomial(u=dict(self.items()))

    def as_dict(self) -> dict[str, int]:
        return {f"u{size}": c for size, c in self.items()}

    def __str__(self) -> str:
        parts = [f"u{size}" + (f"^{c}" if c > 1 else "") for size, c in self.items()]
        return " ".join(parts) if parts else "1"


def iter_profiles(max_magnitude: int, max_size: int) -> Iterator[EdgeProfile]:
    """All profiles with magnitude <= max_magnitude and sizes <= max_size,
    ordered by magnitude, then by reverse lexicographic partition."""
    for mag in range(max_magnitude + 1):
        for parts in partitions(mag, max_part=max_size - 1):
            mult = part_multiplicities(parts)
            yield EdgeProfile.from_dict({p + 1: a for p, a in mult.items()})


@dataclass(frozen=True)
class Hypergraph:
    """Labeled hypergraph on vertices 1..n.

    edges holds each edge as a sorted vertex tuple, grouped by size in
    ascending order; positions within one size class are the labels.
    """

    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("need n >= 0")
        last_size = 2
        for edge in self.edges:
            if len(edge) < 2:
                raise ValueError("edges need at least 2 vertices")
            if list(edge) != sorted(set(edge)):
                raise ValueError(f"edge {edge} must be sorted distinct vertices")
            if edge[0] < 1 or edge[-1] > self.n:
                raise ValueError(f"edge {edge} has vertices outside 1..{self.n}")
            if len(edge) < last_size:
                raise ValueError("edges must be grouped by size, ascending")
            last_size = len(edge)

    def profile(self) -> EdgeProfile:
        return EdgeProfile.from_sizes(tuple(len(e) for e in self.edges))

    # weight of the hypergraph as a monomial exponent vector
    weight = profile

    @property
    def edge_magnitude(self) -> int:
        return sum(len(e) - 1 for e in self.edges)


def is_connected(h: Hypergraph) -> bool:
    """True iff every vertex is reachable from vertex 1 through edges.

    The empty vertex set is defined as disconnected for uniformity.
    """
    if h.n == 0:
        return False
    by_vertex: dict[int, list[int]] = {v: [] for v in range(1, h.n + 1)}
    for ei, edge in enumerate(h.edges):
        for v in edge:
            by_vertex[v].append(ei)
    seen = {1}
    seen_edges: set[int] = set()
    stack = [1]
    while stack:
        v = stack.pop()
        for ei in by_vertex[v]:
            if ei in seen_edges:
                continue
            seen_edges.add(ei)
            for w in h.edges[ei]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == h.n


def is_hypertree(h: Hypergraph) -> bool:
    """True iff h is connected and its incidence graph is acyclic.

    The incidence graph is bipartite: vertex nodes and edge nodes, joined
    when the vertex lies in the edge.  A depth-first search that meets a
    visited node other than its parent has found a cycle; a cycle through
    k >= 2 edge nodes is exactly a closed walk through k distinct edges
    and k distinct vertices.
    """
    if h.n == 0:
        return False
    by_vertex: dict[int, list[int]] = {v: [] for v in range(1, h.n + 1)}
    for ei, edge in enumerate(h.edges):
        for v in edge:
            by_vertex[v].append(ei)
    # nodes: ("v", vertex) and ("e", edge index)
    seen_v = {1}
    seen_e: set[int] = set()
    stack: list[tuple[str, int, tuple[str, int] | None]] = [("v", 1, None)]
    while stack:
        kind, key, parent = stack.pop()
        if kind == "v":
            for ei in by_vertex[key]:
                if ("e", ei) == parent:
                    continue
                if ei in seen_e:
                    return False
                seen_e.add(ei)
                stack.append(("e", ei, ("v", key)))
        else:
            for v in h.edges[key]:
                if ("v", v) == parent:
                    continue
                if v in seen_v:
                    return False
                seen_v.add(v)
                stack.append(("v", v, ("e", key)))
    return len(seen_v) == h.n and len(seen_e) == len(h.edges)


def assignment_count(n: int, profile: EdgeProfile) -> int:
    """Number of labeled hypergraphs on 1..n with the given profile."""
    total = 1
    for size, c in profile.items():
        total *= comb(n, size) ** c
    return total


def enumerate_hypergraphs(
    n: int,
    profile: EdgeProfile,
    budget: int = DEFAULT_BUDGET,
    n_max: int = DEFAULT_N_MAX,
) -> Iterator[Hypergraph]:
    """Stream every labeled hypergraph with the given profile, deterministically.

    Order: edge slots by size ascending then label, each slot running
    through the lexicographically sorted vertex subsets.  Never samples;
    raises BudgetExceededError up front when the full count is over budget.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > n_max:
        raise ValueError(f"n = {n} exceeds the configured n_max = {n_max}")
    required = assignment_count(n, profile)
    if required > budget:
        raise BudgetExceededError(required, budget)
    choice_lists = [
        list(combinations(range(1, n + 1), size)) for size in profile.sizes()
    ]
    for assignment in product(*choice_lists):
        yield Hypergraph(n, tuple(assignment))


@dataclass(frozen=True)
class CountRow:
    """Classification counts for one (n, profile) cell."""

    n: int
    profile: EdgeProfile
    total: int
    connected: int
    hypertree: int

    def __post_init__(self) -> None:
        if not 0 <= self.hypertree <= self.connected <= self.total:
            raise ValueError("counts must satisfy hypertree <= connected <= total")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "profile": self.profile.as_dict(),
            "all": self.total,
            "connected": self.connected,
            "hypertree": self.hypertree,
        }


@dataclass(frozen=True)
class CountTable:
    rows: tuple[CountRow, ...]

    def as_dict(self) -> dict:
        return {"rows": [r.as_dict() for r in self.rows]}


def count_profile(
    n: int, profile: EdgeProfile, budget: int = DEFAULT_BUDGET
) -> CountRow:
    """Classify every hypergraph with this profile through the active kernel."""
    required = assignment_count(n, profile)
    if required > budget:
        raise BudgetExceededError(required, budget)
    total, connected, hypertree = active_kernel().count_profile(n, profile.sizes())
    return CountRow(n, profile, total, connected, hypertree)


def count_sweep(
    n: int, max_magnitude: int, budget: int = DEFAULT_BUDGET
) -> CountTable:
    """Count rows for every profile with magnitude <= max_magnitude."""
    rows = [
        count_profile(n, profile, budget=budget)
        for profile in iter_profiles(max_magnitude, max_size=n)
    ]
    return CountTable(tuple(rows))


def magnitude_law_violations(rows: CountTable | tuple[CountRow, ...]) -> list[str]:
    """Check the magnitude law against brute-force counts.

    For every profile: connected hypergraphs need magnitude >= n - 1, and
    magnitude == n - 1 holds exactly for the hypertrees.  Returns human
    readable descriptions of any violations (empty means the law held).
    """
    out = []
    rows = rows.rows if isinstance(rows, CountTable) else rows
    for row in rows:
        mag = row.profile.magnitude
        floor = row.n - 1
        if mag < floor and row.connected:
            out.append(
                f"n={row.n} {row.profile}: {row.connected} connected below magnitude {floor}"
            )
        if mag == floor and row.hypertree != row.connected:
            out.append(
                f"n={row.n} {row.profile}: {row.connected} connected vs "
                f"{row.hypertree} hypertrees at magnitude {floor}"
            )
        if mag > floor and row.hypertree:
            out.append(
                f"n={row.n} {row.profile}: {row.hypertree} hypertrees above magnitude {floor}"
            )
    return out


def oracle_polynomials(
    n: int, ctx: TruncationContext, budget: int = DEFAULT_BUDGET
) -> tuple[Series, Series]:
    """(C_n, T_n): brute-force polynomials in the u-variables.

    C_n collects connected counts over every profile within the context
    magnitude bound, each divided by the label-class size so that the
    coefficient of u^profile counts hypergraphs with indistinguishable
    equal-size edges.  T_n keeps the magnitude n - 1 layer, counting
    hypertrees; the magnitude law is asserted along the way.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    c_terms: dict[Monomial, Fraction] = {}
    t_terms: dict[Monomial, Fraction] = {}
    max_size = min(n, ctx.alphabet.max_edge_size)
    rows = []
    for profile in iter_profiles(ctx.magnitude_max, max_size=max_size):
        row = count_profile(n, profile, budget=budget)
        rows.append(row)
        if not row.connected:
            continue
        m = profile.monomial(ctx)
        norm = Fraction(1, profile.factorial_norm())
        c_terms[m] = row.connected * norm
        if profile.magnitude == n - 1:
            t_terms[m] = row.hypertree * norm
    violations = magnitude_law_violations(tuple(rows))
    if violations:
        raise AssertionError("magnitude law failed: " + "; ".join(violations))
    return Series(ctx, c_terms), Series(ctx, t_terms)


# -- text fixture format ----------------------------------------------------


def format_hypergraph(h: Hypergraph) -> str:
    """First line n, then one edge per line as a space-separated vertex list."""
    lines = [str(h.n)]
    lines.extend(" ".join(str(v) for v in edge) for edge in h.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty hypergraph text")
    n = int(lines[0])
    edges = []
    for line in lines[1:]:
        edges.append(tuple(sorted(int(v) for v in line.split())))
    edges.sort(key=len)  # stable: preserves label order within a size class
    return Hypergraph(n, tuple(edges))
