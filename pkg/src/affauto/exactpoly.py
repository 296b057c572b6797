"""Exact multivariate polynomials over Q.

A :class:`Polynomial` is an immutable sparse map from exponent tuples to
nonzero :class:`fractions.Fraction` coefficients.  Terms are ordered by
graded lexicographic order (total degree first, then lex with
``x1 > x2 > ...``) for printing, serialization and leading terms.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from affauto import kernels
from affauto.errors import (
    DegreeCapExceeded,
    DimensionMismatch,
    NotAPower,
    ParseError,
    ScalarNotDthPower,
)

DEFAULT_MAX_DEGREE = 64


def max_degree():
    """Symbolic degree cap, read from ``AFFAUTO_MAX_DEGREE``."""
    raw = os.environ.get("AFFAUTO_MAX_DEGREE")
    return int(raw) if raw else DEFAULT_MAX_DEGREE


def grlex_key(e):
    return (sum(e), e)


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Polynomial:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars):
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i, nvars):
        """The coordinate function x_{i+1} (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e, coeff=1):
        e = tuple(e)
        return cls(len(e), {e: coeff})

    # -- inspection ---------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        """The constant term (a Fraction)."""
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, e):
        return self._terms.get(tuple(e), Fraction(0))

    def degree(self, nactive=None):
        """Total degree; ``-1`` for the zero polynomial.

        With ``nactive`` only the first ``nactive`` variables are counted.
        """
        if not self._terms:
            return -1
        if nactive is None:
            return max(sum(e) for e in self._terms)
        return max(sum(e[:nactive]) for e in self._terms)

    def min_degree(self):
        return min(sum(e) for e in self._terms) if self._terms else -1

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def variables(self):
        """0-based indices of variables that actually occur."""
        return sorted({i for e in self._terms for i, x in enumerate(e) if x})

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.nvars, kernels.mul_terms(self._terms, other._terms, self.nvars))

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / c)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if k and self.degree() * k > max_degree():
            raise DegreeCapExceeded(f"degree {self.degree() * k} exceeds cap {max_degree()}")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------

    def derivative(self, i):
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point):
        point = [_as_fraction(v) for v in point]
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, images, nactive=None):
        """p(images[0], ..., images[n-1]); all images share one ring.

        The degree cap is applied to the degree in the first ``nactive``
        variables of the target ring (all of them by default).
        """
        if len(images) != self.nvars:
            raise DimensionMismatch(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0].nvars
        if any(g.nvars != target for g in images):
            raise DimensionMismatch("substitution images live in different rings")
        if self._terms:
            degs = [max(g.degree(nactive), 0) for g in images]
            bound = max(sum(k * dg for dg, k in zip(degs, e)) for e in self._terms)
            if bound > max_degree():
                raise DegreeCapExceeded(f"substitution degree {bound} exceeds cap {max_degree()}")
        powers = [[Polynomial.constant(1, target)] for _ in images]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * images[i])
            return cache[k]

        acc = {}
        for e, c in self._terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) if term is None else term * power(i, k)
            if term is None:
                term = Polynomial.constant(1, target)
            for f, v in term._terms.items():
                s = acc.get(f, 0) + c * v
                if s:
                    acc[f] = s
                else:
                    acc.pop(f, None)
        return Polynomial._raw(target, acc)

    def extend(self, nvars):
        """Embed into a ring with extra trailing variables."""
        if nvars < self.nvars:
            raise DimensionMismatch("cannot shrink the variable set with extend")
        pad = (0,) * (nvars - self.nvars)
        return Polynomial._raw(nvars, {e + pad: c for e, c in self._terms.items()})

    def restrict(self, nvars):
        """Drop trailing variables, which must not occur."""
        out = {}
        for e, c in self._terms.items():
            if any(e[nvars:]):
                raise DimensionMismatch("polynomial involves a dropped variable")
            out[e[:nvars]] = c
        return Polynomial._raw(nvars, out)

    def exact_divide(self, other):
        """Quotient ``self / other``; raises :class:`NotAPower` if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = other.leading_term()
        quotient = {}
        rem = self
        while rem:
            e, c = rem.leading_term()
            diff = tuple(a - b for a, b in zip(e, lt_e))
            if any(x < 0 for x in diff):
                raise NotAPower("polynomial division is not exact")
            q = c / lt_c
            quotient[diff] = q
            rem = rem - other * Polynomial._raw(self.nvars, {diff: q})
        return Polynomial._raw(self.nvars, quotient)

    # -- text and JSON ------------------------------------------------

    def to_str(self, names=None):
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.items()):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.to_str()!r})"

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            n = int(obj["nvars"])
            terms = {}
            for t in obj["terms"]:
                e = tuple(t["e"])
                if e in terms:
                    raise ParseError(f"duplicate exponent {list(e)} in polynomial JSON")
                terms[e] = Fraction(t["c"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        return cls(n, terms)


def dumps(obj):
    """Canonical JSON text used for all serialized output."""
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def cancel_inverse_pairs(p, pairs):
    """Reduce modulo ``x_i * x_j - 1`` for each index pair ``(i, j)``.

    Used to model a formal torus parameter t together with t^-1.
    """
    out = {}
    for e, c in p._terms.items():
        f = list(e)
        for i, j in pairs:
            m = min(f[i], f[j])
            f[i] -= m
            f[j] -= m
        f = tuple(f)
        v = out.get(f, 0) + c
        if v:
            out[f] = v
        else:
            out.pop(f, None)
    return Polynomial._raw(p.nvars, out)


# -- parsing -----------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|(x\d+|[xyz])|(\S)")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = pos
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("var", name, start))
        elif op is not None:
            if op not in "+-*^/()":
                raise ParseError(f"unexpected character {op!r}", start)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, nvars):
        self.tokens = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def variable(self, name, pos):
        if name in ("x", "y", "z"):
            if self.nvars > 3:
                raise ParseError(f"alias {name!r} only allowed with at most 3 variables", pos)
            idx = "xyz".index(name)
        else:
            idx = int(name[1:]) - 1
        if not 0 <= idx < self.nvars:
            raise ParseError(f"variable {name!r} out of range for {self.nvars} variables", pos)
        return Polynomial.var(idx, self.nvars)

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** val
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dpos = self.take()
                if dk != "num":
                    raise ParseError("expected denominator", dpos)
                if dv == 0:
                    raise ParseError("zero denominator", dpos)
                return Polynomial.constant(Fraction(val, dv), self.nvars)
            return Polynomial.constant(val, self.nvars)
        if kind == "var":
            return self.variable(val, pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {val!r}", pos)


def poly_parse(text, nvars):
    """Parse the textual polynomial grammar into a canonical Polynomial."""
    if nvars < 1:
        raise ParseError("nvars must be positive")
    parser = _Parser(text, nvars)
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return result


# -- graded structure ---------------------------------------------------


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    part: Polynomial


def graded_component(p, k, nactive=None):
    """Sum of the terms of ``p`` of total degree exactly ``k``."""
    n = p.nvars if nactive is None else nactive
    return Polynomial._raw(p.nvars, {e: c for e, c in p._terms.items() if sum(e[:n]) == k})


def graded_components(p, nactive=None):
    return [GradedPiece(k, graded_component(p, k, nactive)) for k in sorted(degree_support(p, nactive))]


def degree_support(p, nactive=None):
    n = p.nvars if nactive is None else nactive
    return {sum(e[:n]) for e in p._terms}


def monomials_of_degree(n, k):
    """All exponent vectors of total degree ``k`` in ``n`` variables, descending grlex."""
    if n == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in monomials_of_degree(n - 1, k - first):
            out.append((first,) + rest)
    return out


def count_monomials(n, k):
    return comb(n + k - 1, k)


# -- d-th roots ------------------------------------------------------------


def integer_root(m, d):
    """Exact integer d-th root of ``m >= 0`` or None."""
    if m < 2:
        return m
    x = 1 << -(-m.bit_length() // d)
    while True:
        y = ((d - 1) * x + m // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    return x if x ** d == m else None


def rational_root(c, d):
    """Rational r with r^d = c (positive for even d), or None."""
    c = Fraction(c)
    if c < 0:
        if d % 2 == 0:
            return None
        r = rational_root(-c, d)
        return None if r is None else -r
    num = integer_root(c.numerator, d)
    den = integer_root(c.denominator, d)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _homogeneous_root(h, d):
    """Monic d-th root of a monic homogeneous polynomial, by leading terms."""
    n = h.nvars
    lead_e, _ = h.leading_term()
    if any(x % d for x in lead_e):
        raise NotAPower("leading monomial is not a d-th power")
    q_lead = tuple(x // d for x in lead_e)
    q = Polynomial._raw(n, {q_lead: Fraction(1)})
    q_pow = q ** (d - 1)
    lt_pow_e = tuple(x * (d - 1) for x in q_lead)
    last = q_lead
    while True:
        r = h - q_pow * q
        if not r:
            return q
        e, c = r.leading_term()
        diff = tuple(a - b for a, b in zip(e, lt_pow_e))
        if any(x < 0 for x in diff) or grlex_key(diff) >= grlex_key(last):
            raise NotAPower("leading-term recursion failed")
        q = q + Polynomial._raw(n, {diff: c / d})
        q_pow = q ** (d - 1)
        last = diff


def _monic_root(p, d):
    top = p.degree()
    low = p.min_degree()
    if top % d or low % d:
        raise NotAPower("degree is not divisible by d")
    a = top // d
    q_top = _homogeneous_root(graded_component(p, top), d)
    divisor = (q_top ** (d - 1)).scale(d)
    q = q_top
    for j in range(1, a - low // d + 1):
        known = graded_component(q ** d, top - j)
        piece = graded_component(p, top - j) - known
        if piece:
            q = q + piece.exact_divide(divisor)
    if q ** d != p:
        raise NotAPower("graded root recursion did not reproduce the input")
    return q


def poly_dth_root(p, d):
    """Return q with q**d == p over Q.

    For even ``d`` the root with positive leading coefficient is returned.
    Raises :class:`NotAPower` when the monic part has no root and
    :class:`ScalarNotDthPower` when only the leading scalar is the obstruction.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if p.is_zero():
        raise ValueError("zero polynomial has no canonical root")
    if d == 1:
        return p
    lc = p.leading_coefficient()
    q = _monic_root(p.scale(1 / lc), d)
    r = rational_root(lc, d)
    if r is None:
        raise ScalarNotDthPower(f"leading scalar {lc} has no rational root of order {d}", constant=lc)
    return q.scale(r)
