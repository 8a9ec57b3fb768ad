"""Exact arithmetic for the supported coefficient domains.

Two Euclidean domains are implemented: the ring of integers Z (arbitrary
precision) and the univariate polynomial ring GF(q)[t] for a prime power q.
Fractions over either domain normalize via gcd, so the fraction field
(Q or GF(q)(t)) has syntactic equality.

Elements of GF(q)[t] are stored as little-endian coefficient tuples with no
trailing zeros; the empty tuple is zero.  Coefficients are integer codes in
[0, q): the residue itself for prime q, and the base-p digit vector of a
representative for q = p^e (the extension is built over a fixed lex-least
irreducible modulus).
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import NamedTuple

from sympy import isprime


class ParseError(ValueError):
    """Malformed element/polynomial text; carries the offending position."""

    def __init__(self, message, text=None, pos=None):
        if text is not None and pos is not None:
            message = f"{message} at position {pos}: {text!r}"
        super().__init__(message)
        self.text = text
        self.pos = pos


class DivisibilityError(ArithmeticError):
    """exact_div called with a zero divisor or a non-divisor."""


# ---------------------------------------------------------------------------
# coefficient fields GF(q)
# ---------------------------------------------------------------------------


def _factor_prime_power(q):
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], -1, p)
    while len(rem) >= len(b):
        c = (rem[-1] * inv_lead) % p
        d = len(rem) - len(b)
        quo[d] = c
        for i, cb in enumerate(b):
            rem[d + i] = (rem[d + i] - c * cb) % p
        _trim(rem)
        if not rem:
            break
    return _trim(quo), rem


def _fp_irreducible(f, p):
    # trial division by every monic polynomial of degree <= deg(f)/2
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for code in range(p**deg):
            g = []
            c = code
            for _ in range(deg):
                g.append(c % p)
                c //= p
            g.append(1)
            if not _fp_divmod(f, g, p)[1]:
                return False
    return True


@functools.lru_cache(maxsize=None)
def _least_irreducible(p, e):
    for code in range(p**e):
        f = []
        c = code
        for _ in range(e):
            f.append(c % p)
            c //= p
        f.append(1)
        if _fp_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible modulus found")  # unreachable


class _PrimeField:
    def __init__(self, p):
        self.q = p
        self.p = p

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return pow(a, -1, self.q)

    def from_int(self, n):
        return n % self.q


class _ExtensionField:
    """GF(p^e) via a fixed lex-least irreducible modulus over GF(p)."""

    def __init__(self, p, e):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = list(_least_irreducible(p, e))

    def _dec(self, a):
        digits = []
        while a:
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _enc(self, digits):
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def add(self, a, b):
        return self._enc(_fp_add(self._dec(a), self._dec(b), self.p))

    def neg(self, a):
        return self._enc([(-c) % self.p for c in self._dec(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        prod = _fp_mul(self._dec(a), self._dec(b), self.p)
        return self._enc(_fp_divmod(prod, self.modulus, self.p)[1])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        # extended Euclid over GF(p)[u]
        r0, r1 = self.modulus, self._dec(a)
        s0, s1 = [], [1]
        while r1:
            q, r = _fp_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_add(s0, [(-c) % self.p for c in _fp_mul(q, s1, self.p)], self.p)
        # r0 is a nonzero constant gcd
        c_inv = pow(r0[0], -1, self.p)
        return self._enc([(c * c_inv) % self.p for c in s0])

    def from_int(self, n):
        return n % self.p


@functools.lru_cache(maxsize=None)
def _coeff_field(q):
    p, e = _factor_prime_power(q)
    return _PrimeField(p) if e == 1 else _ExtensionField(p, e)


# ---------------------------------------------------------------------------
# domain tags and elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainTag:
    """Identifies a supported domain: Z, or GF(q)[t] for a prime power q."""

    kind: str  # "Z" or "GFqt"
    q: int | None = None

    def __post_init__(self):
        if self.kind == "Z":
            if self.q is not None:
                raise ValueError("Z carries no field size")
        elif self.kind == "GFqt":
            _factor_prime_power(self.q)  # validates q
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @property
    def coeff_field(self):
        if self.kind != "GFqt":
            raise ValueError("only GF(q)[t] has a coefficient field")
        return _coeff_field(self.q)

    def __str__(self):
        return "Z" if self.kind == "Z" else f"GF({self.q})[t]"


INTEGERS = DomainTag("Z")


def gf_poly_domain(q):
    return DomainTag("GFqt", q)


_DOMAIN_RE = re.compile(r"^GF\((\d+)\)\[t\]$")


def parse_domain(text):
    text = text.strip()
    if text in ("Z", "ℤ"):
        return INTEGERS
    m = _DOMAIN_RE.match(text)
    if m:
        try:
            return gf_poly_domain(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown domain {text!r} (expected 'Z' or 'GF(q)[t]')")


@dataclass(frozen=True)
class DomainElement:
    """An element of Z or GF(q)[t], always in canonical form."""

    domain: DomainTag
    value: int | tuple

    def __post_init__(self):
        if self.domain.kind == "Z":
            if not isinstance(self.value, int):
                raise TypeError("Z elements are ints")
        else:
            v = tuple(self.value)
            if v and v[-1] == 0:
                raise ValueError("trailing zero coefficient")
            if any(not (0 <= c < self.domain.q) for c in v):
                raise ValueError("coefficient out of range")
            object.__setattr__(self, "value", v)

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return self.value == 0 if self.domain.kind == "Z" else not self.value

    def __bool__(self):
        return not self.is_zero()

    def is_one(self):
        if self.domain.kind == "Z":
            return self.value == 1
        return self.value == (1,)

    def is_unit(self):
        if self.domain.kind == "Z":
            return self.value in (1, -1)
        return len(self.value) == 1

    def degree(self):
        """Degree in t; -1 for the zero polynomial (GF domains only)."""
        if self.domain.kind == "Z":
            raise ValueError("degree is only defined over GF(q)[t]")
        return len(self.value) - 1

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, DomainElement) or other.domain != self.domain:
            raise TypeError("mixed-domain arithmetic")

    def __add__(self, other):
        self._check(other)
        if self.domain.kind == "Z":
            return DomainElement(self.domain, self.value + other.value)
        F = self.domain.coeff_field
        n = max(len(self.value), len(other.value))
        out = [0] * n
        for i, c in enumerate(self.value):
            out[i] = c
        for i, c in enumerate(other.value):
            out[i] = F.add(out[i], c)
        return DomainElement(self.domain, tuple(_trim(out)))

    def __neg__(self):
        if self.domain.kind == "Z":
            return DomainElement(self.domain, -self.value)
        F = self.domain.coeff_field
        return DomainElement(self.domain, tuple(F.neg(c) for c in self.value))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.domain.kind == "Z":
            return DomainElement(self.domain, self.value * other.value)
        if self.is_zero() or other.is_zero():
            return zero(self.domain)
        F = self.domain.coeff_field
        out = [0] * (len(self.value) + len(other.value) - 1)
        for i, ca in enumerate(self.value):
            if ca:
                for j, cb in enumerate(other.value):
                    out[i + j] = F.add(out[i + j], F.mul(ca, cb))
        return DomainElement(self.domain, tuple(_trim(out)))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power in a ring")
        result = one(self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisibilityError("division by zero")
        if self.domain.kind == "Z":
            q, r = divmod(self.value, other.value)
            return DomainElement(self.domain, q), DomainElement(self.domain, r)
        F = self.domain.coeff_field
        rem = list(self.value)
        quo = [0] * max(len(rem) - len(other.value) + 1, 0)
        inv_lead = F.inv(other.value[-1])
        while len(rem) >= len(other.value):
            c = F.mul(rem[-1], inv_lead)
            d = len(rem) - len(other.value)
            quo[d] = c
            for i, cb in enumerate(other.value):
                rem[d + i] = F.sub(rem[d + i], F.mul(c, cb))
            _trim(rem)
            if not rem:
                break
        return (
            DomainElement(self.domain, tuple(_trim(quo))),
            DomainElement(self.domain, tuple(rem)),
        )

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisibilityError(f"{self} is not divisible by {other}")
        return q

    def divides(self, other):
        """True iff self divides other (self nonzero)."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def scale(self, code):
        """Multiply every coefficient by a GF(q) code (GF domains only)."""
        F = self.domain.coeff_field
        return DomainElement(self.domain, tuple(_trim([F.mul(c, code) for c in self.value])))

    def monic(self):
        """Normalize the leading unit: |x| over Z, monic over GF(q)[t]."""
        if self.is_zero():
            return self
        if self.domain.kind == "Z":
            return DomainElement(self.domain, abs(self.value))
        F = self.domain.coeff_field
        return self.scale(F.inv(self.value[-1]))

    def __str__(self):
        return format_element(self)


def zero(domain):
    return DomainElement(domain, 0 if domain.kind == "Z" else ())


def one(domain):
    return DomainElement(domain, 1 if domain.kind == "Z" else (1,))


def from_int(domain, n):
    """The image of the integer n under the unique ring map Z -> R."""
    if domain.kind == "Z":
        return DomainElement(domain, n)
    c = domain.coeff_field.from_int(n)
    return DomainElement(domain, (c,) if c else ())


def t_element(domain):
    if domain.kind != "GFqt":
        raise ValueError("t only exists in GF(q)[t]")
    return DomainElement(domain, (0, 1))


def gf_element(domain, coeffs):
    """Build a GF(q)[t] element from little-endian integer coefficients."""
    F = domain.coeff_field
    return DomainElement(domain, tuple(_trim([c % F.q if isinstance(F, _PrimeField) else c for c in coeffs])))


def arith(domain, op, a, b):
    """The spec-level arithmetic entry point."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    raise ValueError(f"unknown op {op!r}")


def gcd(a, b):
    """Euclidean gcd, normalized (nonnegative over Z, monic over GF(q)[t])."""
    if a.domain.kind == "Z":
        return DomainElement(a.domain, math.gcd(a.value, b.value))
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# canonical enumeration
# ---------------------------------------------------------------------------


def enum_element(domain, index):
    """The fixed bijection N -> R: zig-zag over Z, base-q digits over GF(q)[t]."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    if domain.kind == "Z":
        if index == 0:
            return zero(domain)
        if index % 2:
            return DomainElement(domain, (index + 1) // 2)
        return DomainElement(domain, -(index // 2))
    q = domain.q
    coeffs = []
    while index:
        coeffs.append(index % q)
        index //= q
    return DomainElement(domain, tuple(coeffs))


def enum_index(x):
    """Inverse of enum_element; also the canonical ordering key."""
    if x.domain.kind == "Z":
        n = x.value
        return 2 * n - 1 if n > 0 else -2 * n
    idx = 0
    for c in reversed(x.value):
        idx = idx * x.domain.q + c
    return idx


def enumeration_scheme_id(domain):
    return "zigzag" if domain.kind == "Z" else f"base-{domain.q}-digits"


def nonzero_prefix(domain, k):
    """The first k nonzero elements in enumeration order."""
    out = []
    i = 1
    while len(out) < k:
        e = enum_element(domain, i)
        if not e.is_zero():
            out.append(e)
        i += 1
    return out


# ---------------------------------------------------------------------------
# fractions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """A reduced fraction num/den over the domain, with canonical sign/lead."""

    num: DomainElement
    den: DomainElement

    @property
    def domain(self):
        return self.num.domain

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        return frac_normalize(
            self.domain, self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return FieldElement(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return frac_normalize(self.domain, self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("field division by zero")
        return frac_normalize(self.domain, self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("0 has no negative power")
            return frac_normalize(self.domain, self.den ** (-n), self.num ** (-n))
        return FieldElement(self.num**n, self.den**n)

    def is_ring_element(self):
        return self.den.is_one()

    def as_ring_element(self):
        if not self.is_ring_element():
            raise ValueError(f"{self} is not in the base ring")
        return self.num

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"{self.num}/{self.den}"


def frac_normalize(domain, num, den):
    """Canonical reduced fraction: gcd a unit, den > 0 over Z / monic over GF."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return FieldElement(zero(domain), one(domain))
    g = gcd(num, den)
    if not g.is_unit() or not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    if domain.kind == "Z":
        if den.value < 0:
            num, den = -num, -den
    else:
        lead = den.value[-1]
        if lead != 1:
            inv = domain.coeff_field.inv(lead)
            num = num.scale(inv)
            den = den.scale(inv)
    return FieldElement(num, den)


def field_zero(domain):
    return FieldElement(zero(domain), one(domain))


def field_one(domain):
    return FieldElement(one(domain), one(domain))


def field_from_ring(x):
    return FieldElement(x, one(x.domain))


# ---------------------------------------------------------------------------
# irreducibility and valuations
# ---------------------------------------------------------------------------


def is_irreducible(x):
    """True iff x is irreducible in its domain (prime in Z, irreducible poly)."""
    if x.domain.kind == "Z":
        return isprime(abs(x.value))
    d = x.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        q = x.domain.q
        for code in range(q**deg):
            coeffs = []
            c = code
            for _ in range(deg):
                coeffs.append(c % q)
                c //= q
            coeffs.append(1)
            g = DomainElement(x.domain, tuple(coeffs))
            if g.divides(x):
                return False
    return True


class OrdResult(NamedTuple):
    value: int
    degenerate: bool


def ord_at(x, prime):
    """Multiplicity of `prime` in x; ord(0) is 0 with the degenerate flag set."""
    if not is_irreducible(prime):
        raise ValueError(f"{prime} is not irreducible")
    if x.is_zero():
        return OrdResult(0, True)
    n = 0
    while True:
        q, r = x.divmod(prime)
        if not r.is_zero():
            return OrdResult(n, False)
        x = q
        n += 1


def ord_at_field(x, prime):
    """ord extended to the fraction field (a homomorphism K^x -> Z)."""
    if x.is_zero():
        return OrdResult(0, True)
    return OrdResult(ord_at(x.num, prime).value - ord_at(x.den, prime).value, False)


# ---------------------------------------------------------------------------
# element text syntax
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", text, pos)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), pos))
        elif m.group(2):
            tokens.append(("name", m.group(2), pos))
        else:
            tokens.append(("op", m.group(3), pos))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _ElementParser:
    """Recursive-descent parser for ring element expressions in t."""

    def __init__(self, domain, text):
        self.domain = domain
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self):
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", self.text, pos)
            return base**val
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "int":
            # Coefficient literals are base-p digit codes; for prime q this
            # coincides with the image of the integer under Z -> GF(q).
            code = val % self.domain.coeff_field.q
            return DomainElement(self.domain, (code,) if code else ())
        if kind == "name":
            if val == "t" and self.domain.kind == "GFqt":
                return t_element(self.domain)
            raise ParseError(f"unknown symbol {val!r} in element", self.text, pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val, pos = self.next()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", self.text, pos)
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError("expected an element", self.text, pos)


def parse_element(domain, text):
    if domain.kind == "Z":
        try:
            return DomainElement(domain, int(text.strip()))
        except ValueError:
            raise ParseError(f"bad integer {text!r}", text, 0) from None
    parser = _ElementParser(domain, text)
    result = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input", text, pos)
    return result


def parse_fraction(domain, text):
    if "/" in text:
        num_text, den_text = text.split("/", 1)
        return frac_normalize(
            domain, parse_element(domain, num_text), parse_element(domain, den_text)
        )
    return field_from_ring(parse_element(domain, text))


def format_element(x):
    if x.domain.kind == "Z":
        return str(x.value)
    if x.is_zero():
        return "0"
    parts = []
    for d in range(len(x.value) - 1, -1, -1):
        c = x.value[d]
        if not c:
            continue
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{d}" if c == 1 else f"{c}*t^{d}")
    return "+".join(parts)


def format_fraction(x):
    return str(x)
