"""Polynomial endomorphisms of A^n, generator words and inversion.

Composition convention: ``compose(f, g)`` is ``f o g``, i.e. apply ``g``
first; component ``i`` of the result is ``f_i(g_1, ..., g_n)``.

A map may carry ``nparams`` trailing parameter variables (formal torus
or group parameters).  Parameters are never substituted: every map acts
as the identity on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from affauto.errors import DimensionMismatch, NotInvertible, ParseError, Unsupported
from affauto.exactpoly import Polynomial, cancel_inverse_pairs, poly_parse


@dataclass(frozen=True)
class PolyMap:
    nvars: int
    components: tuple
    nparams: int = 0

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.nvars:
            raise DimensionMismatch(f"{len(comps)} components for {self.nvars} variables")
        ring = self.nvars + self.nparams
        for c in comps:
            if c.nvars != ring:
                raise DimensionMismatch(f"component lives in {c.nvars} variables, expected {ring}")

    @property
    def ring_nvars(self):
        return self.nvars + self.nparams

    @classmethod
    def identity(cls, n, nparams=0):
        ring = n + nparams
        return cls(n, tuple(Polynomial.var(i, ring) for i in range(n)), nparams)

    @classmethod
    def from_strings(cls, texts, nparams=0):
        n = len(texts)
        return cls(n, tuple(poly_parse(t, n + nparams) for t in texts), nparams)

    @classmethod
    def parse(cls, text, n):
        """Parse ``"f1, f2, ..."`` (comma separated components)."""
        parts = [p for p in text.split(",")]
        if len(parts) != n:
            raise ParseError(f"expected {n} comma-separated components, got {len(parts)}")
        return cls(n, tuple(poly_parse(p, n) for p in parts))

    def param_vars(self):
        ring = self.ring_nvars
        return tuple(Polynomial.var(self.nvars + k, ring) for k in range(self.nparams))

    def degree(self):
        return max((c.degree(self.nvars) for c in self.components), default=-1)

    def is_identity(self):
        return self == PolyMap.identity(self.nvars, self.nparams)

    def with_params(self, nparams):
        """Re-embed into a ring with ``nparams`` parameters (must not shrink used ones)."""
        ring = self.nvars + nparams
        if nparams >= self.nparams:
            comps = tuple(c.extend(ring) for c in self.components)
        else:
            comps = tuple(c.restrict(ring) for c in self.components)
        return PolyMap(self.nvars, comps, nparams)

    def reduce_params(self, pairs):
        """Cancel ``t * t^-1`` for parameter index pairs (indices into the full ring)."""
        return PolyMap(self.nvars, tuple(cancel_inverse_pairs(c, pairs) for c in self.components), self.nparams)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def to_str(self, names=None):
        return "(" + ", ".join(c.to_str(names) for c in self.components) + ")"

    def to_json(self):
        obj = {"nvars": self.nvars, "components": [c.to_json() for c in self.components]}
        if self.nparams:
            obj["nparams"] = self.nparams
        return obj

    @classmethod
    def from_json(cls, obj):
        try:
            n = int(obj["nvars"])
            k = int(obj.get("nparams", 0))
            comps = tuple(Polynomial.from_json(c) for c in obj["components"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed PolyMap JSON: {exc}") from exc
        return cls(n, comps, k)


def _check_same(f, g):
    if f.nvars != g.nvars or f.nparams != g.nparams:
        raise DimensionMismatch(
            f"maps on A^{f.nvars} (+{f.nparams} params) and A^{g.nvars} (+{g.nparams} params)"
        )


def compose(f, g):
    """``f o g``: apply ``g`` first."""
    _check_same(f, g)
    images = g.components + g.param_vars()
    return PolyMap(f.nvars, tuple(c.substitute(images, f.nvars) for c in f.components), f.nparams)


def compose_all(maps):
    """``maps[0] o maps[1] o ...``, evaluated right to left."""
    maps = list(maps)
    if not maps:
        raise ValueError("need at least one map")
    acc = maps[-1]
    for m in reversed(maps[:-1]):
        acc = compose(m, acc)
    return acc


def pullback(f, p):
    """``p(f_1, ..., f_n)``."""
    if p.nvars != f.ring_nvars:
        raise DimensionMismatch(f"polynomial in {p.nvars} variables, map ring has {f.ring_nvars}")
    return p.substitute(f.components + f.param_vars())


# -- Jacobians ------------------------------------------------------------


@dataclass(frozen=True)
class JacobianData:
    matrix: tuple
    det: Polynomial


def determinant(rows):
    """Exact determinant of a square matrix of Polynomials (Laplace expansion)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(rows[0][0].nvars)


def jacobian(f):
    matrix = tuple(tuple(c.derivative(j) for j in range(f.nvars)) for c in f.components)
    return JacobianData(matrix, determinant([list(r) for r in matrix]))


def constant_jacobian(f):
    """The Jacobian determinant as a Fraction if it is a nonzero constant, else None."""
    det = jacobian(f).det
    if det.is_constant() and not det.is_zero():
        return det.constant_value()
    return None


# -- generator words -----------------------------------------------------


def _det_fraction(m):
    n = len(m)
    a = [list(r) for r in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            if factor:
                for k in range(col, n):
                    a[r][k] -= factor * a[col][k]
    return det


def matrix_inverse(m):
    n = len(m)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise NotInvertible("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class Affine:
    """x -> A x + b."""

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        m = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        b = tuple(Fraction(v) for v in self.translation)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", b)
        if any(len(r) != len(m) for r in m) or len(b) != len(m):
            raise DimensionMismatch("affine letter needs a square matrix and matching translation")
        if _det_fraction(m) == 0:
            raise NotInvertible("affine letter has a singular matrix")

    @property
    def nvars(self):
        return len(self.matrix)

    @classmethod
    def linear(cls, matrix):
        return cls(matrix, (0,) * len(matrix))

    def as_map(self, nparams=0):
        n = self.nvars
        ring = n + nparams
        xs = [Polynomial.var(j, ring) for j in range(n)]
        comps = []
        for row, b in zip(self.matrix, self.translation):
            acc = Polynomial.constant(b, ring)
            for a, x in zip(row, xs):
                if a:
                    acc = acc + x.scale(a)
            comps.append(acc)
        return PolyMap(n, tuple(comps), nparams)

    def inverse(self):
        inv = matrix_inverse(self.matrix)
        t = tuple(-sum(a * b for a, b in zip(row, self.translation)) for row in inv)
        return Affine(inv, t)

    def to_json(self):
        return {
            "type": "affine",
            "matrix": [[str(v) for v in r] for r in self.matrix],
            "translation": [str(v) for v in self.translation],
        }


@dataclass(frozen=True)
class Triangular:
    """x_i -> a*x_i + P(other variables); ``index`` is 0-based."""

    index: int
    scalar: Fraction
    poly: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        if not self.scalar:
            raise NotInvertible("triangular letter needs a nonzero scalar")
        if not 0 <= self.index < self.poly.nvars:
            raise DimensionMismatch("triangular index out of range")
        if any(e[self.index] for e in self.poly.terms):
            raise ValueError("triangular coefficient polynomial must omit its own variable")

    @property
    def nvars(self):
        return self.poly.nvars

    def as_map(self, nparams=0):
        n = self.nvars
        ring = n + nparams
        comps = [Polynomial.var(j, ring) for j in range(n)]
        comps[self.index] = comps[self.index].scale(self.scalar) + self.poly.extend(ring)
        return PolyMap(n, tuple(comps), nparams)

    def inverse(self):
        inv = 1 / self.scalar
        return Triangular(self.index, inv, self.poly.scale(-inv))

    def to_json(self):
        return {"type": "triangular", "i": self.index, "a": str(self.scalar), "P": self.poly.to_json()}


def letter_from_json(obj):
    try:
        kind = obj["type"]
        if kind == "affine":
            return Affine(
                tuple(tuple(Fraction(v) for v in r) for r in obj["matrix"]),
                tuple(Fraction(v) for v in obj["translation"]),
            )
        if kind == "triangular":
            return Triangular(int(obj["i"]), Fraction(obj["a"]), Polynomial.from_json(obj["P"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed letter JSON: {exc}") from exc
    raise ParseError(f"unknown letter type {kind!r}")


@dataclass(frozen=True)
class AutoWord:
    nvars: int
    letters: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if letter.nvars != self.nvars:
                raise DimensionMismatch("letter dimension differs from the word's")

    def __add__(self, other):
        if other.nvars != self.nvars:
            raise DimensionMismatch("cannot concatenate words of different dimension")
        return AutoWord(self.nvars, self.letters + other.letters)

    def inverse(self):
        return AutoWord(self.nvars, tuple(letter.inverse() for letter in reversed(self.letters)))

    def to_json(self):
        return {"nvars": self.nvars, "letters": [letter.to_json() for letter in self.letters]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int(obj["nvars"]), tuple(letter_from_json(x) for x in obj["letters"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed word JSON: {exc}") from exc


def word_eval(w, nparams=0):
    """Evaluate ``letters[0] o letters[1] o ...``; the empty word is the identity."""
    if not w.letters:
        return PolyMap.identity(w.nvars, nparams)
    return compose_all(letter.as_map(nparams) for letter in w.letters)


# -- inversion -------------------------------------------------------------


def _verified(f, g):
    ident = PolyMap.identity(f.nvars, f.nparams)
    if compose(f, g) != ident or compose(g, f) != ident:
        raise NotInvertible("candidate inverse does not compose to the identity")
    return g


def invert(f, witness=None):
    """Inverse of an automorphism given as a word, a plane map, or with a witness.

    The result is always checked by composing in both orders.
    """
    if isinstance(f, AutoWord):
        return _verified(word_eval(f), word_eval(f.inverse()))
    if f.nparams:
        raise Unsupported("inversion of parametrized maps is not supported")
    if constant_jacobian(f) is None:
        raise NotInvertible("Jacobian determinant is not a nonzero constant")
    if witness is not None:
        return _verified(f, witness)
    if f.degree() <= 1:
        n = f.nvars
        unit = [tuple(int(j == i) for j in range(n)) for i in range(n)]
        letter = Affine(
            tuple(tuple(c.coefficient(u) for u in unit) for c in f.components),
            tuple(c.constant_value() for c in f.components),
        )
        return _verified(f, letter.inverse().as_map())
    if f.nvars == 2:
        from affauto.errors import NotAutomorphism
        from affauto.planedecomp import amalgam_inverse, jvdk_decompose

        try:
            word = jvdk_decompose(f)
        except NotAutomorphism as exc:
            raise NotInvertible(str(exc)) from exc
        return _verified(f, amalgam_inverse(word))
    raise Unsupported("raw maps in dimension >= 3 need a word form or a witness")
