"""Finite-window certificate engines.

Everything here reduces a Ramsey-type question to a finite ground set: root
enumeration builds a hypergraph whose edges are the value-sets of root
tuples, coloring search decides l-partition regularity on the window, exact
branch-and-bound independent sets decide the density question, and the
semi-decider walks enumeration-prefix windows until one certifies.

A certified window transfers to the whole domain by compactness; an
exhausted budget transfers nothing (no refutation procedure can exist in
general, so Exhausted is always inconclusive).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import rings
from .polys import eval_ring, is_homogeneous, is_translation_invariant
from .rings import DomainTag, enumeration_scheme_id, from_int, nonzero_prefix

TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class Window:
    domain: DomainTag
    elements: tuple  # nonzero DomainElements, no duplicates, fixed order
    provenance: str

    def __post_init__(self):
        seen = set()
        for x in self.elements:
            if x.domain != self.domain:
                raise ValueError("window element domain mismatch")
            if x.is_zero():
                raise ValueError("0 is never a window element")
            if x in seen:
                raise ValueError("duplicate window element")
            seen.add(x)

    def __len__(self):
        return len(self.elements)

    @classmethod
    def enumeration_prefix(cls, domain, k):
        return cls(domain, tuple(nonzero_prefix(domain, k)), f"prefix:{k}")

    @classmethod
    def interval(cls, domain, lo, hi):
        if domain.kind != "Z":
            raise ValueError("interval windows exist only over Z")
        if lo > hi:
            raise ValueError("empty interval")
        elems = tuple(from_int(domain, v) for v in range(lo, hi + 1) if v != 0)
        return cls(domain, elems, f"interval:{lo}..{hi}")

    @classmethod
    def explicit(cls, domain, elements):
        return cls(domain, tuple(elements), "explicit-list")

    def index_of(self):
        return {x: i for i, x in enumerate(self.elements)}


@dataclass
class RootHypergraph:
    """All roots of a polynomial inside a window.

    tuples are index sequences into the window; edges are the deduplicated
    sorted index sets of tuple values (monochromaticity only sees the set).
    """

    window: Window
    tuples: list  # list of index tuples, lexicographically sorted
    edges: list  # sorted list of sorted index tuples
    injective_mode: bool

    def value_tuple(self, indices):
        return tuple(self.window.elements[i] for i in indices)


@dataclass
class WindowCertificate:
    kind: str  # PartitionCertified | PartitionColorable | DensityCertified | DensityAvoider
    window: Window
    colors: int | None = None
    delta: Fraction | None = None
    mode: str | None = None
    injective: bool = False
    coloring: tuple | None = None  # color per window position
    avoider: tuple | None = None  # window positions
    max_avoider_size: int | None = None
    constant_root: int | None = None  # window position of a constant root
    transferable: bool | None = None
    scheme: str = ""
    tool_version: str = TOOL_VERSION


@dataclass
class SemidecideResult:
    status: str  # "certified" | "exhausted"
    certificate: WindowCertificate
    budget: int


# ---------------------------------------------------------------------------
# root enumeration
# ---------------------------------------------------------------------------


def enumerate_roots(p, window, injective=False):
    """Every tuple in window^nvars where p vanishes, as a hypergraph.

    Partial substitution prunes branches whose remaining polynomial is a
    nonzero constant and solves the final variable directly when it appears
    linearly; the result matches the naive full product scan exactly.
    """
    if p.domain != window.domain:
        raise ValueError("polynomial and window domains differ")
    n = p.nvars
    elems = window.elements
    index_of = window.index_of()
    found = []

    def all_completions(prefix, depth):
        pool = range(len(elems))
        for rest in itertools.product(pool, repeat=n - depth):
            full = prefix + list(rest)
            if injective and len(set(full)) != n:
                continue
            found.append(tuple(full))

    def last_variable(q, prefix):
        # q has one variable left
        degree = q.degree()
        if degree == 0:
            if q.is_zero():
                for i in range(len(elems)):
                    if injective and i in prefix:
                        continue
                    found.append(tuple(prefix + [i]))
            return
        if degree == 1:
            a = q.terms.get((1,))
            b = q.terms.get((0,), rings.zero(p.domain))
            root = rings.frac_normalize(p.domain, -b, a)
            if root.is_ring_element():
                i = index_of.get(root.as_ring_element())
                if i is not None and not (injective and i in prefix):
                    found.append(tuple(prefix + [i]))
            return
        for i in range(len(elems)):
            if injective and i in prefix:
                continue
            if eval_ring(q, (elems[i],)).is_zero():
                found.append(tuple(prefix + [i]))

    def descend(q, prefix):
        depth = len(prefix)
        remaining = n - depth
        if remaining == 0:
            if q.terms.get(()) is None:
                found.append(tuple(prefix))
            return
        if q.is_zero() and not injective:
            all_completions(prefix, depth)
            return
        if remaining == 1:
            last_variable(q, prefix)
            return
        if not q.is_zero() and all(sum(e) == 0 for e in q.terms):
            return  # nonzero constant: no completion can vanish
        for i in range(len(elems)):
            if injective and i in prefix:
                continue
            descend(q.substitute_first(elems[i]), prefix + [i])

    if n == 0:
        raise ValueError("cannot enumerate roots of a constant")
    descend(p, [])
    found.sort()
    edges = sorted({tuple(sorted(set(tup))) for tup in found})
    return RootHypergraph(window, found, edges, injective)


def enumerate_roots_naive(p, window, injective=False):
    """Reference product scan; oracle for enumerate_roots."""
    n = p.nvars
    elems = window.elements
    found = []
    for combo in itertools.product(range(len(elems)), repeat=n):
        if injective and len(set(combo)) != n:
            continue
        if eval_ring(p, tuple(elems[i] for i in combo)).is_zero():
            found.append(combo)
    edges = sorted({tuple(sorted(set(tup))) for tup in found})
    return RootHypergraph(window, found, edges, injective)


def _minimal_edges(edges):
    """Drop edges containing another edge; verdicts are unchanged."""
    sets = [frozenset(e) for e in edges]
    keep = []
    for i, e in enumerate(sets):
        if not any(i != j and other < e for j, other in enumerate(sets)) and not any(
            other == e for other in sets[:i]
        ):
            keep.append(edges[i])
    return keep


# ---------------------------------------------------------------------------
# l-partition regularity on a window
# ---------------------------------------------------------------------------


def _least_valid_coloring(size, edges, colors):
    """Lexicographically least coloring with no monochromatic edge, or None.

    Backtracking over positions in window order; a fresh color is only tried
    as the single next unused color, which is sound for lexicographic
    minimality (relabeling any valid coloring canonically never increases
    it).
    """
    if any(len(e) == 1 for e in edges):
        return None
    # edges become checkable once their max position is colored
    by_last = [[] for _ in range(size)]
    for e in edges:
        by_last[e[-1]].append(e)
    assignment = [0] * size

    def backtrack(pos, used):
        if pos == size:
            return True
        limit = min(colors, used + 1)
        for c in range(limit):
            assignment[pos] = c
            ok = True
            for e in by_last[pos]:
                if all(assignment[i] == c for i in e[:-1]):
                    ok = False
                    break
            if ok and backtrack(pos + 1, max(used, c + 1)):
                return True
        return False

    if backtrack(0, 0):
        return tuple(assignment)
    return None


def check_window_l_pr(p, window, colors, injective=False):
    """Decide l-partition regularity restricted to one finite window."""
    if colors < 1:
        raise ValueError("need at least one color")
    hypergraph = enumerate_roots(p, window, injective)
    edges = _minimal_edges(hypergraph.edges)
    constant_root = next((e[0] for e in edges if len(e) == 1), None)
    coloring = _least_valid_coloring(len(window), edges, colors)
    scheme = enumeration_scheme_id(window.domain)
    if coloring is None:
        return WindowCertificate(
            kind="PartitionCertified",
            window=window,
            colors=colors,
            injective=injective,
            constant_root=constant_root,
            scheme=scheme,
        )
    return WindowCertificate(
        kind="PartitionColorable",
        window=window,
        colors=colors,
        injective=injective,
        coloring=coloring,
        scheme=scheme,
    )


def exhaustive_l_pr_oracle(p, window, colors, injective=False):
    """Independent oracle: try every coloring of the window."""
    hypergraph = enumerate_roots_naive(p, window, injective)
    edges = hypergraph.edges
    for coloring in itertools.product(range(colors), repeat=len(window)):
        if all(len({coloring[i] for i in e}) > 1 for e in edges):
            return coloring  # a valid coloring: not certified
    return None  # certified


def semidecide_l_pr(p, colors, injective=False, budget=20):
    """Grow enumeration-prefix windows until one certifies, or give up.

    A certificate is unconditional (compactness); Exhausted is inconclusive
    and never a refutation.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    last = None
    for k in range(1, budget + 1):
        window = Window.enumeration_prefix(p.domain, k)
        cert = check_window_l_pr(p, window, colors, injective)
        if cert.kind == "PartitionCertified":
            return SemidecideResult("certified", cert, budget)
        last = cert
    return SemidecideResult("exhausted", last, budget)


# ---------------------------------------------------------------------------
# density windows
# ---------------------------------------------------------------------------


def max_avoiding_subset(size, edges):
    """Exact maximum subset of range(size) containing no edge.

    Branch and bound: branch on the elements of a not-yet-broken edge,
    deterministic order, so the result is canonical.
    """
    edges = [tuple(e) for e in _minimal_edges(sorted(edges))]
    best = []

    def bound_and_branch(allowed):
        nonlocal best
        if len(allowed) <= len(best):
            return
        target = next((e for e in edges if all(i in allowed for i in e)), None)
        if target is None:
            if len(allowed) > len(best):
                best = sorted(allowed)
            return
        for v in target:
            bound_and_branch(allowed - {v})

    bound_and_branch(frozenset(range(size)))
    return tuple(best)


def density_window_check(p, window, delta, mode="additive", injective=False):
    """Certify or refute the delta-density property on one window.

    DensityCertified means every subset of size >= delta*|window| contains an
    edge; the certificate transfers to the whole domain only when the
    polynomial is translation invariant (additive mode) or homogeneous
    (multiplicative mode).
    """
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    if mode not in ("additive", "multiplicative"):
        raise ValueError("mode must be 'additive' or 'multiplicative'")
    if mode == "additive":
        transferable = is_translation_invariant(p)
    else:
        transferable = is_homogeneous(p) is not None
    if not transferable:
        warnings.warn(
            "polynomial lacks the structural property required for the certificate "
            "to transfer beyond this window; marking non-transferable"
        )
    hypergraph = enumerate_roots(p, window, injective)
    avoider = max_avoiding_subset(len(window), hypergraph.edges)
    scheme = enumeration_scheme_id(window.domain)
    if len(avoider) < delta * len(window):
        return WindowCertificate(
            kind="DensityCertified",
            window=window,
            delta=delta,
            mode=mode,
            injective=injective,
            max_avoider_size=len(avoider),
            transferable=transferable,
            scheme=scheme,
        )
    return WindowCertificate(
        kind="DensityAvoider",
        window=window,
        delta=delta,
        mode=mode,
        injective=injective,
        avoider=avoider,
        max_avoider_size=len(avoider),
        transferable=transferable,
        scheme=scheme,
    )


# ---------------------------------------------------------------------------
# disjoint solutions
# ---------------------------------------------------------------------------


def disjoint_solutions(p, window, count, injective=False):
    """count root tuples with pairwise disjoint coordinate-value sets, or None."""
    if count < 1:
        raise ValueError("count must be positive")
    hypergraph = enumerate_roots(p, window, injective)
    tuples = hypergraph.tuples

    def backtrack(start, chosen, used):
        if len(chosen) == count:
            return list(chosen)
        for idx in range(start, len(tuples)):
            values = set(tuples[idx])
            if values & used:
                continue
            result = backtrack(idx + 1, chosen + [tuples[idx]], used | values)
            if result is not None:
                return result
        return None

    picked = backtrack(0, [], set())
    if picked is None:
        return None
    return [hypergraph.value_tuple(tup) for tup in picked]
