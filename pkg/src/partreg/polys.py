"""Sparse multivariate polynomials over Z or GF(q)[t].

Variables are positional; terms map exponent tuples to nonzero ring
coefficients.  Besides arithmetic and exact evaluation over the fraction
field, this module hosts the two decidable structural predicates
(homogeneity and additive translation invariance) and the rootless-quadratic
combination that folds a polynomial system into a single polynomial with the
same solution set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import rings
from .rings import (
    DomainTag,
    ParseError,
    field_from_ring,
    field_zero,
    from_int,
    one,
    t_element,
    zero,
)


@dataclass
class MultiPoly:
    domain: DomainTag
    nvars: int
    terms: dict = field(default_factory=dict)  # exponent tuple -> DomainElement

    def __post_init__(self):
        clean = {}
        for exps, coeff in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ValueError("exponent tuple arity mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if not coeff.is_zero():
                clean[exps] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, domain, nvars):
        return cls(domain, nvars, {})

    @classmethod
    def constant(cls, domain, nvars, coeff):
        if isinstance(coeff, int):
            coeff = from_int(domain, coeff)
        return cls(domain, nvars, {(0,) * nvars: coeff})

    @classmethod
    def variable(cls, domain, nvars, index, coeff=None):
        if not 0 <= index < nvars:
            raise ValueError("variable index out of range")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(domain, nvars, {exps: coeff if coeff is not None else one(domain)})

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Max total degree; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.domain == other.domain
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.domain != other.domain or self.nvars != other.nvars:
            raise ValueError("mixed-arity or mixed-domain polynomial arithmetic")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps)
            terms[exps] = coeff if acc is None else acc + coeff
        return MultiPoly(self.domain, self.nvars, terms)

    def __neg__(self):
        return MultiPoly(self.domain, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = terms.get(exps)
                terms[exps] = prod if acc is None else acc + prod
        return MultiPoly(self.domain, self.nvars, terms)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.domain, self.nvars, one(self.domain))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, coeff):
        if coeff.is_zero():
            return MultiPoly.zero(self.domain, self.nvars)
        return MultiPoly(self.domain, self.nvars, {e: c * coeff for e, c in self.terms.items()})

    def compose(self, subs):
        """Substitute subs[i] (all sharing one arity) for variable i."""
        if len(subs) != self.nvars:
            raise ValueError("substitution arity mismatch")
        if not subs:
            raise ValueError("compose requires at least one variable")
        nvars = subs[0].nvars
        domain = self.domain
        out = MultiPoly.zero(domain, nvars)
        power_cache = {}
        for exps, coeff in self.terms.items():
            prod = MultiPoly.constant(domain, nvars, coeff)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = subs[i] ** e
                    prod = prod * power_cache[key]
            out = out + prod
        return out

    def substitute_first(self, value):
        """Plug a ring element into variable 0, dropping one variable."""
        terms = {}
        power_cache = {0: one(self.domain)}
        for exps, coeff in self.terms.items():
            e0 = exps[0]
            if e0 not in power_cache:
                power_cache[e0] = value**e0
            c = coeff * power_cache[e0]
            if c.is_zero():
                continue
            rest = exps[1:]
            acc = terms.get(rest)
            terms[rest] = c if acc is None else acc + c
        return MultiPoly(self.domain, self.nvars - 1, terms)

    def lift(self, nvars):
        """Reinterpret in a larger ring; new trailing variables are unused."""
        if nvars < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly(self.domain, nvars, {e + pad: c for e, c in self.terms.items()})

    def __str__(self):
        return poly_to_string(self)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def eval_field(p, point):
    """Exact value of p at a point of K^nvars."""
    if len(point) != p.nvars:
        raise ValueError(f"expected {p.nvars} coordinates, got {len(point)}")
    total = field_zero(p.domain)
    cache = {}
    for exps, coeff in p.terms.items():
        term = field_from_ring(coeff)
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = point[i] ** e
                term = term * cache[key]
        total = total + term
    return total


def eval_ring(p, point):
    """Exact value of p at a point of R^nvars (faster than eval_field)."""
    if len(point) != p.nvars:
        raise ValueError(f"expected {p.nvars} coordinates, got {len(point)}")
    total = zero(p.domain)
    cache = {}
    for exps, coeff in p.terms.items():
        term = coeff
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = point[i] ** e
                term = term * cache[key]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


def is_homogeneous(p):
    """Total degree d if every term has degree d, else None.

    The zero polynomial is reported homogeneous of degree 0.
    """
    degrees = {sum(e) for e in p.terms}
    if not degrees:
        return 0
    if len(degrees) == 1:
        return degrees.pop()
    return None


def is_translation_invariant(p):
    """Decide whether p(x1+r, ..., xn+r) - p(x1, ..., xn) is identically 0.

    Checked by full symbolic expansion in n+1 variables, so the answer is a
    theorem, not a sampling result.
    """
    if p.nvars == 0 or p.is_zero():
        return True
    n = p.nvars
    shifted_vars = [
        MultiPoly(
            p.domain,
            n + 1,
            {
                tuple(1 if j == i else 0 for j in range(n + 1)): one(p.domain),
                tuple(1 if j == n else 0 for j in range(n + 1)): one(p.domain),
            },
        )
        for i in range(n)
    ]
    return p.compose(shifted_vars) == p.lift(n + 1)


# ---------------------------------------------------------------------------
# system combination via a rootless quadratic
# ---------------------------------------------------------------------------


def rootless_quadratic(domain):
    """Coefficients (a0, a1) of a monic quadratic w^2 + a1*w + a0 with no root in K.

    Over Q: w^2 + 1.  Over GF(q)(t), q odd: w^2 - t (t is not a square, by
    degree parity).  Over GF(2^l)(t): w^2 + w + t (an Artin-Schreier
    polynomial with no rational root, again by degree parity).
    """
    if domain.kind == "Z":
        return from_int(domain, 1), from_int(domain, 0)
    p, _ = rings._factor_prime_power(domain.q)
    if p == 2:
        return t_element(domain), one(domain)
    return -t_element(domain), zero(domain)


def combine_system(ps):
    """A single polynomial whose K-roots are the common K-roots of ps.

    Iterates acc -> acc^2*a0 + acc*next*a1 + next^2 where w^2 + a1*w + a0 is
    rootless in K, i.e. acc^2 * f(next/acc).
    """
    if not ps:
        raise ValueError("empty system")
    domain = ps[0].domain
    nvars = ps[0].nvars
    for p in ps:
        if p.domain != domain or p.nvars != nvars:
            raise ValueError("mixed domains or arities in system")
    a0, a1 = rootless_quadratic(domain)
    acc = ps[0]
    for p in ps[1:]:
        acc = (acc * acc).scale(a0) + (acc * p).scale(a1) + p * p
    return acc


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------


class _PolyParser:
    """Expression parser over named variables with ring-element literals."""

    def __init__(self, domain, text, var_order=None):
        self.domain = domain
        self.text = text
        self.tokens = rings.tokenize(text)
        self.i = 0
        self.fixed_order = var_order is not None
        self.var_order = list(var_order) if var_order else []

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def var_index(self, name, pos):
        if name in self.var_order:
            return self.var_order.index(name)
        if self.fixed_order:
            raise ParseError(f"unknown variable {name!r}", self.text, pos)
        self.var_order.append(name)
        return len(self.var_order) - 1

    def parse(self):
        raw = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", self.text, pos)
        nvars = len(self.var_order)
        poly = MultiPoly(
            self.domain, nvars, {e + (0,) * (nvars - len(e)): c for e, c in raw.terms.items()}
        )
        return poly, self.var_order

    # raw polynomials during parsing use the running variable count; terms are
    # re-padded at the end once all variables are known.
    def _pad(self, p):
        n = len(self.var_order)
        return MultiPoly(self.domain, n, {e + (0,) * (n - len(e)): c for e, c in p.terms.items()})

    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                acc, rhs = self._pad(acc), self._pad(rhs)
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                rhs = self.factor()
                acc, rhs = self._pad(acc), self._pad(rhs)
                acc = acc * rhs
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                # juxtaposition, e.g. "2x" or "2(x+y)"
                rhs = self.factor()
                acc, rhs = self._pad(acc), self._pad(rhs)
                acc = acc * rhs
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", self.text, pos)
            return self._pad(base) ** val
        return base

    def atom(self):
        kind, val, pos = self.next()
        n = len(self.var_order)
        if kind == "int":
            return MultiPoly.constant(self.domain, n, from_int(self.domain, val))
        if kind == "name":
            if val == "t" and self.domain.kind == "GFqt":
                return MultiPoly.constant(self.domain, n, t_element(self.domain))
            idx = self.var_index(val, pos)
            return MultiPoly.variable(self.domain, len(self.var_order), idx)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val, pos = self.next()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", self.text, pos)
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError("expected a term", self.text, pos)


def parse_poly(domain, text, var_order=None):
    """Parse an expression like "x+y-z" or "(x1-2*x2+x3)^2".

    Returns (poly, variable names).  Variables are positional in order of
    first appearance unless var_order pins them.
    """
    return _PolyParser(domain, text, var_order).parse()


def poly_to_string(p, names=None):
    if p.is_zero():
        return "0"
    if names is None:
        names = [f"x{i+1}" for i in range(p.nvars)]
    parts = []
    for exps in sorted(p.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        coeff = p.terms[exps]
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        coeff_str = rings.format_element(coeff)
        if not factors:
            parts.append(coeff_str)
        elif coeff.is_one():
            parts.append("*".join(factors))
        elif p.domain.kind == "Z" and coeff.value == -1:
            parts.append("-" + "*".join(factors))
        else:
            wrapped = f"({coeff_str})" if "+" in coeff_str else coeff_str
            parts.append(wrapped + "*" + "*".join(factors))
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else "+" + part
    return out


def poly_to_records(p):
    """Serialized form: a list of {coefficient, exponent-tuple} records."""
    records = []
    for exps in sorted(p.terms):
        records.append({"c": rings.format_element(p.terms[exps]), "e": list(exps)})
    return {"nvars": p.nvars, "terms": records}


def poly_from_records(domain, data):
    terms = {}
    for record in data["terms"]:
        coeff = rings.parse_element(domain, record["c"])
        terms[tuple(record["e"])] = coeff
    return MultiPoly(domain, data["nvars"], terms)
