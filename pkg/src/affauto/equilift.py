"""mu_d-equivariant maps, descent to A^n/mu_d and lifting back.

Roots of unity never appear as coefficients.  A diagonal map
``(xi^e1 x1, ..., xi^en xn)`` for a fixed formal primitive d-th root ``xi``
is a :class:`MuScalar` holding the exponent vector mod d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from affauto.endo import AutoWord, PolyMap, invert, word_eval
from affauto.errors import (
    NotAPower,
    NotEquivariant,
    NotInvertible,
    NotLiftable,
    ParseError,
    Unsupported,
)
from affauto.exactpoly import Polynomial, degree_support, monomials_of_degree, poly_dth_root


@dataclass(frozen=True, order=True)
class MuScalar:
    d: int
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) % self.d for e in self.exponents))

    @classmethod
    def scalar(cls, d, n, e):
        return cls(d, (e,) * n)

    def is_scalar(self):
        return len(set(self.exponents)) <= 1

    def is_rational(self):
        """True if every xi^e_i is +-1, so the diagonal map is defined over Q."""
        return all((2 * e) % self.d == 0 for e in self.exponents)

    def signs(self):
        if not self.is_rational():
            raise ValueError("diagonal map is not defined over Q")
        return tuple(1 if e == 0 else -1 for e in self.exponents)

    def to_json(self):
        return {"d": self.d, "exponents": list(self.exponents)}


def is_mu_d_equivariant(f, d):
    """Every component has degree support in {kd + 1} (parameters not counted)."""
    for comp in f.components:
        if any((k - 1) % d for k in degree_support(comp, f.nvars)):
            return False
    return True


def veronese_exponents(d, n):
    return monomials_of_degree(n, d)


def _monomial_images(components, exponents, d):
    """Images of the monomials ``x^alpha`` under substitution, sharing powers."""
    n = len(components)
    ring = components[0].nvars
    powers = [[Polynomial.constant(1, ring)] for _ in range(n)]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * components[i])
        return cache[k]

    out = {}
    for alpha in exponents:
        acc = None
        for i, k in enumerate(alpha):
            if k:
                acc = power(i, k) if acc is None else acc * power(i, k)
        out[alpha] = acc if acc is not None else Polynomial.constant(1, ring)
    return out


def _factor_monomial(e, d):
    """Split an exponent vector of degree kd into k generator exponents."""
    rest = list(e)
    pieces = []
    while any(rest):
        need = d
        g = [0] * len(rest)
        for i in range(len(rest)):
            take = min(need, rest[i])
            g[i] = take
            rest[i] -= take
            need -= take
            if not need:
                break
        if need:
            raise NotEquivariant("monomial degree is not a multiple of d")
        pieces.append(tuple(g))
    return pieces


@dataclass(frozen=True)
class QuotientAuto:
    d: int
    n: int
    images: dict
    provenance: PolyMap | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = set(veronese_exponents(self.d, self.n))
        keys = set(self.images)
        if keys != gens:
            raise ValueError("images must be given for exactly the degree-d monomials")
        for img in self.images.values():
            if img.nvars != self.n:
                raise ValueError("generator images must be polynomials in n variables")
            if any(k % self.d for k in degree_support(img)):
                raise NotEquivariant("generator image is not in the invariant ring")

    def __eq__(self, other):
        if not isinstance(other, QuotientAuto):
            return NotImplemented
        return (self.d, self.n, self.images) == (other.d, other.n, other.images)

    def __hash__(self):
        return hash((self.d, self.n, frozenset(self.images.items())))

    def pullback(self, p):
        """Action on an invariant polynomial written in the x-coordinates."""
        total = Polynomial.zero(self.n)
        for e, c in p.terms.items():
            term = Polynomial.constant(c, self.n)
            for g in _factor_monomial(e, self.d):
                term = term * self.images[g]
            total = total + term
        return total

    def is_identity(self):
        return all(img == Polynomial.monomial(g) for g, img in self.images.items())

    def to_json(self):
        names = {g: Polynomial.monomial(g).to_str() for g in self.images}
        return {
            "d": self.d,
            "n": self.n,
            "images": {names[g]: self.images[g].to_json() for g in sorted(self.images, reverse=True)},
        }

    @classmethod
    def from_json(cls, obj):
        from affauto.exactpoly import poly_parse

        try:
            d, n = int(obj["d"]), int(obj["n"])
            images = {}
            for key, val in obj["images"].items():
                mono = poly_parse(key, n)
                if len(mono) != 1:
                    raise ParseError(f"image key {key!r} is not a monomial")
                (e, c), = mono.items()
                if c != 1:
                    raise ParseError(f"image key {key!r} must be monic")
                images[e] = Polynomial.from_json(val)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed QuotientAuto JSON: {exc}") from exc
        return cls(d, n, images)


def identity_quotient(d, n):
    return QuotientAuto(d, n, {g: Polynomial.monomial(g) for g in veronese_exponents(d, n)})


def compose_quotient(q1, q2):
    """``q1 o q2`` (apply ``q2`` first), computed on generator images."""
    if (q1.d, q1.n) != (q2.d, q2.n):
        raise ValueError("quotient automorphisms of different varieties")
    return QuotientAuto(q1.d, q1.n, {g: q2.pullback(img) for g, img in q1.images.items()})


def _as_certified_map(f, witness):
    try:
        invert(f, witness)
    except Unsupported as exc:
        raise NotInvertible(f"cannot certify invertibility: {exc}") from exc
    return f


def descend(f, d, witness=None):
    """Quotient automorphism induced by an equivariant automorphism (map or word)."""
    if isinstance(f, AutoWord):
        fmap = word_eval(f)
        if not is_mu_d_equivariant(fmap, d):
            raise NotEquivariant(f"map is not mu_{d}-equivariant")
    else:
        if not is_mu_d_equivariant(f, d):
            raise NotEquivariant(f"map is not mu_{d}-equivariant")
        fmap = _as_certified_map(f, witness)
    gens = veronese_exponents(d, fmap.nvars)
    images = _monomial_images(fmap.components, gens, d)
    return QuotientAuto(d, fmap.nvars, images, provenance=fmap)


def quadratic_relations_hold(q):
    """Images respect every relation g1*g2 = g3*g4 among generators."""
    gens = veronese_exponents(q.d, q.n)
    seen = {}
    for i, a in enumerate(gens):
        for b in gens[i:]:
            key = tuple(x + y for x, y in zip(a, b))
            prod = q.images[a] * q.images[b]
            if key in seen:
                if seen[key] != prod:
                    return False
            else:
                seen[key] = prod
    return True


@dataclass(frozen=True)
class LiftResult:
    """A lift ``diag(xi^e) o rational_map`` together with the global mu_d ambiguity."""

    rational_map: PolyMap
    twist: MuScalar
    ambiguity: tuple

    def exact_map(self):
        """The lift as a rational map when the twist is +-1 valued, else None."""
        if not self.twist.is_rational():
            return None
        comps = tuple(c.scale(s) for c, s in zip(self.rational_map.components, self.twist.signs()))
        return PolyMap(self.rational_map.nvars, comps)

    def normal_form(self):
        return exponent_normal_form(self.rational_map, self.twist)

    def to_json(self):
        return {
            "map": self.rational_map.to_json(),
            "twist": self.twist.to_json(),
            "ambiguity": [m.to_json() for m in self.ambiguity],
        }


def exponent_normal_form(fmap, twist):
    """Canonical representative of ``mu_d . diag(xi^e) o f``.

    Signs of leading coefficients are absorbed into the exponents (even d),
    then the global scalar is fixed by making the first exponent zero.
    """
    d = twist.d
    comps = list(fmap.components)
    exps = list(twist.exponents)
    if d % 2 == 0:
        for i, c in enumerate(comps):
            if c and c.leading_coefficient() < 0:
                comps[i] = -c
                exps[i] += d // 2
    shift = exps[0] if exps else 0
    return MuScalar(d, tuple(e - shift for e in exps)), tuple(comps)


def _unit_exponent(c, d):
    """Exponent a with xi^a == c for a rational constant c, or None."""
    if c == 1:
        return 0
    if c == -1 and d % 2 == 0:
        return d // 2
    return None


def lift(q):
    """Lift a quotient automorphism to A^n via d-th roots of the images of x_i^d."""
    d, n = q.d, q.n
    if q.provenance is None and not quadratic_relations_hold(q):
        raise NotLiftable("generator images violate the quadratic Veronese relations")
    roots = []
    for i in range(n):
        e = tuple(d if j == i else 0 for j in range(n))
        p = q.images[e]
        if p.is_zero():
            raise NotLiftable(f"image of x{i + 1}^{d} is zero")
        try:
            roots.append(poly_dth_root(p, d))
        except NotAPower as exc:
            raise NotLiftable(f"image of x{i + 1}^{d} is not a {d}-th power: {exc}") from exc
    gens = veronese_exponents(d, n)
    candidates = _monomial_images(roots, gens, d)

    def unit(alpha):
        img, cand = q.images[alpha], candidates[alpha]
        ratio = img.leading_coefficient() / cand.leading_coefficient() if img else None
        if ratio is None or img != cand.scale(ratio):
            raise NotLiftable(f"image of generator {alpha} is not a twist of the root product")
        a = _unit_exponent(ratio, d)
        if a is None:
            raise NotLiftable(f"ratio {ratio} on generator {alpha} is not a root of unity over Q")
        return a

    exps = [0] * n
    for j in range(1, n):
        alpha = tuple((d - 1 if k == 0 else 0) + (1 if k == j else 0) for k in range(n))
        exps[j] = unit(alpha) % d
    for alpha in gens:
        if sum(a * e for a, e in zip(alpha, exps)) % d != unit(alpha):
            raise NotLiftable(f"mixed-generator constraints are inconsistent at {alpha}")
    rational = PolyMap(n, tuple(roots))
    ambiguity = tuple(MuScalar.scalar(d, n, c) for c in range(d))
    return LiftResult(rational, MuScalar(d, tuple(exps)), ambiguity)


def phi_d_diagonal_kernel(d, n):
    """Diagonal mu_d maps acting trivially on every degree-d monomial."""
    gens = veronese_exponents(d, n)
    out = []
    for e in product(range(d), repeat=n):
        if all(sum(a * x for a, x in zip(alpha, e)) % d == 0 for alpha in gens):
            out.append(MuScalar(d, e))
    return sorted(out)


def sl_scalar_kernel(n, d):
    """Order of the scalar subgroup of SL_n acting trivially on A_{d,n}.

    Counts n-th roots of unity zeta = exp(2 pi i k / n) with zeta^d = 1.
    """
    return sum(1 for k in range(n) if (k * d) % n == 0)
