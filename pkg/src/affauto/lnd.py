"""Derivations, locally nilpotent certification, exponentials and modifications.

A derivation ``D = sum_i coeffs[i] d/dx_i`` acts on the first ``nvars``
variables of its ring; any further variables are parameters with
``D(param) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from math import factorial

from affauto.endo import PolyMap, compose
from affauto.equilift import _factor_monomial, _monomial_images, veronese_exponents
from affauto.errors import DimensionMismatch, NotEquivariant, NotInvariant, NotLND, ParseError
from affauto.exactpoly import Polynomial, degree_support, grlex_key, monomials_of_degree
from affauto.linalg import Echelon, kernel_combinations, rref

CERTS = ("triangular", "bounded", "unknown")
DEFAULT_BOUND = 64


@dataclass(frozen=True)
class Derivation:
    nvars: int
    coeffs: tuple
    cert: str = "unknown"
    order: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.nvars:
            raise DimensionMismatch(f"{len(coeffs)} coefficients for {self.nvars} variables")
        rings = {c.nvars for c in coeffs}
        if len(rings) > 1 or (rings and min(rings) < self.nvars):
            raise DimensionMismatch("coefficients must share a ring containing the variables")
        if self.cert not in CERTS:
            raise ValueError(f"unknown certification {self.cert!r}")

    @property
    def ring_nvars(self):
        return self.coeffs[0].nvars if self.coeffs else self.nvars

    @classmethod
    def from_strings(cls, texts, nparams=0):
        n = len(texts)
        from affauto.exactpoly import poly_parse

        return certify(cls(n, tuple(poly_parse(t, n + nparams) for t in texts)))

    @classmethod
    def parse(cls, text, n):
        parts = text.split(",")
        if len(parts) != n:
            raise ParseError(f"expected {n} comma-separated coefficients, got {len(parts)}")
        return cls.from_strings([p for p in parts])

    def extend(self, ring):
        return Derivation(self.nvars, tuple(c.extend(ring) for c in self.coeffs), self.cert, self.order)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __str__(self):
        parts = [f"({c})*d/dx{i + 1}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"nvars": self.nvars, "coeffs": [c.to_json() for c in self.coeffs], "cert": self.cert}

    @classmethod
    def from_json(cls, obj):
        try:
            n = int(obj["nvars"])
            coeffs = tuple(Polynomial.from_json(c) for c in obj["coeffs"])
            cert = obj.get("cert", "unknown")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed derivation JSON: {exc}") from exc
        if cert not in CERTS:
            raise ParseError(f"unknown certification {cert!r}")
        return cls(n, coeffs, cert)


def derive(D, p):
    """``D(p) = sum_i coeffs_i * dp/dx_i``."""
    ring = D.ring_nvars
    if p.nvars == D.nvars and ring > D.nvars:
        p = p.extend(ring)
    if p.nvars != ring:
        raise DimensionMismatch(f"polynomial in {p.nvars} variables, derivation ring has {ring}")
    total = Polynomial.zero(ring)
    for i, c in enumerate(D.coeffs):
        if c:
            dp = p.derivative(i)
            if dp:
                total = total + c * dp
    return total


# -- local nilpotency --------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str  # CertifiedYes | YesUpToBound | No | Unknown
    order: tuple | None = None
    witness: tuple | None = None  # (variable index, k) with D^k x_i dependent and nonzero
    bound: int | None = None

    @property
    def is_lnd(self):
        return self.kind in ("CertifiedYes", "YesUpToBound")

    def to_json(self):
        obj = {"verdict": self.kind}
        if self.order is not None:
            obj["order"] = [i + 1 for i in self.order]
        if self.witness is not None:
            obj["witness"] = {"variable": self.witness[0] + 1, "k": self.witness[1]}
        if self.bound is not None:
            obj["bound"] = self.bound
        return obj


def triangular_order(D):
    """Variable order (0-based) in which each coefficient only involves later
    variables, or None.  Parameters are ignored."""
    n = D.nvars
    graph = {}
    for i, c in enumerate(D.coeffs):
        used = {j for e in c.terms for j in range(n) if e[j]}
        if i in used:
            return None
        graph[i] = used  # i must come before everything it uses
    try:
        later_first = list(TopologicalSorter(graph).static_order())
    except CycleError:
        return None
    return tuple(reversed(later_first))


def certify(D):
    """Attach a triangular certificate when one exists."""
    order = triangular_order(D)
    if order is not None:
        return Derivation(D.nvars, D.coeffs, "triangular", order)
    return D


def _vec(p):
    return p.terms


def is_locally_nilpotent(D, bound=DEFAULT_BOUND):
    if bound < 1:
        raise ValueError("bound must be at least 1")
    order = triangular_order(D)
    if order is not None:
        return Verdict("CertifiedYes", order=order)
    ring = D.ring_nvars
    all_vanish = True
    for i in range(D.nvars):
        ech = Echelon(key=grlex_key)
        v = Polynomial.var(i, ring)
        ech.add(_vec(v))
        vanished = False
        for k in range(1, bound + 1):
            v = derive(D, v)
            if v.is_zero():
                vanished = True
                break
            if ech.contains(_vec(v)):
                return Verdict("No", witness=(i, k), bound=bound)
            ech.add(_vec(v))
        all_vanish = all_vanish and vanished
    return Verdict("YesUpToBound" if all_vanish else "Unknown", bound=bound)


def _require_lnd(D):
    if D.cert in ("triangular", "bounded"):
        return
    verdict = is_locally_nilpotent(D)
    if not verdict.is_lnd:
        raise NotLND(f"derivation is not certified locally nilpotent ({verdict.kind})")


def _iterates(D, p, limit=10_000):
    out = [p]
    while True:
        p = derive(D, p)
        if p.is_zero():
            return out
        out.append(p)
        if len(out) > limit:
            raise NotLND("iterates did not vanish")


def exp_action(D, t=None):
    """``x_i -> sum_k t^k D^k(x_i) / k!``.

    ``t`` is a rational number, a Polynomial in a ring containing the
    derivation's ring, or None for a fresh formal parameter appended as the
    last variable.
    """
    _require_lnd(D)
    ring = D.ring_nvars
    if t is None:
        ring += 1
        t = Polynomial.var(ring - 1, ring)
    elif isinstance(t, Polynomial):
        if t.nvars < ring:
            raise DimensionMismatch("time parameter lives in a smaller ring than the derivation")
        ring = t.nvars
    else:
        t = Polynomial.constant(Fraction(t), ring)
    Dx = D.extend(ring) if ring != D.ring_nvars else D
    comps = []
    for i in range(D.nvars):
        acc = Polynomial.zero(ring)
        tk = Polynomial.constant(1, ring)
        for k, it in enumerate(_iterates(Dx, Polynomial.var(i, ring))):
            acc = acc + (tk * it).scale(Fraction(1, factorial(k)))
            tk = tk * t
        comps.append(acc)
    return PolyMap(D.nvars, tuple(comps), ring - D.nvars)


def modify(f, D):
    """The modification ``f * D`` by a D-invariant polynomial ``f``."""
    if f.nvars == D.nvars and D.ring_nvars > D.nvars:
        f = f.extend(D.ring_nvars)
    if derive(D, f):
        raise NotInvariant("modifying function is not in the kernel of D")
    out = certify(Derivation(D.nvars, tuple(f * c for c in D.coeffs)))
    if out.cert == "unknown" and D.cert != "unknown":
        # f in ker D and D locally nilpotent imply f*D locally nilpotent
        out = Derivation(out.nvars, out.coeffs, "bounded")
    return out


def modification_pointwise_holds(f, D, point, s):
    """``exp(s f D)(p) == exp(f(p) s D)(p)`` at a rational point ``p``."""
    point = [Fraction(v) for v in point]
    s = Fraction(s)
    lhs = exp_action(modify(f, D), s)
    rhs = exp_action(D, f.evaluate(point) * s)
    return [c.evaluate(point) for c in lhs.components] == [c.evaluate(point) for c in rhs.components]


def one_parameter_law_holds(D):
    """``exp(sD) o exp(tD) == exp((s+t)D)`` and ``exp(tD) o exp(-tD) == id``."""
    ring = D.ring_nvars + 2
    s = Polynomial.var(ring - 2, ring)
    t = Polynomial.var(ring - 1, ring)
    es, et = exp_action(D, s), exp_action(D, t)
    if compose(es, et) != exp_action(D, s + t):
        return False
    return compose(et, exp_action(D, -t)).is_identity()


# -- kernels ----------------------------------------------------------------


def kernel_basis_up_to_degree(D, B):
    """Canonical basis of ``{p : deg p <= B, D(p) = 0}``.

    Each element is monic at its grlex-largest monomial, which does not
    occur in the other elements; the list is sorted by that monomial.
    """
    if D.ring_nvars != D.nvars:
        raise DimensionMismatch("kernel computation needs a derivation without parameters")
    n = D.nvars
    monos = [e for k in range(B + 1) for e in reversed(monomials_of_degree(n, k))]
    images = [_vec(derive(D, Polynomial.monomial(e))) for e in monos]
    relations = kernel_combinations(images, key=grlex_key)
    vectors = [{monos[j]: c for j, c in rel.items()} for rel in relations]
    return [Polynomial(n, v) for v in rref(vectors, key=grlex_key)]


def same_span(ps, qs):
    a = rref([_vec(p) for p in ps], key=grlex_key)
    b = rref([_vec(q) for q in qs], key=grlex_key)
    return a == b


# -- descent to A^n / mu_d ---------------------------------------------------


@dataclass(frozen=True)
class QuotientDerivation:
    """Values of a derivation on the degree-d Veronese generators."""

    d: int
    n: int
    table: dict

    def apply(self, p):
        """Action on an invariant polynomial, through generators and Leibniz."""
        total = Polynomial.zero(self.n)
        for e, c in p.terms.items():
            gens = _factor_monomial(e, self.d)
            for j, g in enumerate(gens):
                term = self.table[g].scale(c)
                for k, h in enumerate(gens):
                    if k != j:
                        term = term * Polynomial.monomial(h)
                total = total + term
        return total

    def exp_images(self, t=None):
        """Generator images of the exponential, with ``t`` a formal last variable."""
        ring = self.n + 1
        t = Polynomial.var(self.n, ring) if t is None else t
        out = {}
        for g in self.table:
            acc = Polynomial.zero(ring)
            tk = Polynomial.constant(1, ring)
            p = Polynomial.monomial(g)
            k = 0
            while p:
                acc = acc + (tk * p.extend(ring)).scale(Fraction(1, factorial(k)))
                p = self.apply(p)
                tk = tk * t
                k += 1
            out[g] = acc
        return out

    def is_zero(self):
        return all(v.is_zero() for v in self.table.values())

    def to_json(self):
        return {
            "d": self.d,
            "n": self.n,
            "table": {
                Polynomial.monomial(g).to_str(): self.table[g].to_json()
                for g in sorted(self.table, reverse=True)
            },
        }


def is_mu_d_equivariant_derivation(D, d):
    return all(
        all((k - 1) % d == 0 for k in degree_support(c, D.nvars)) for c in D.coeffs
    )


def descend_lnd(D, d):
    if D.ring_nvars != D.nvars:
        raise DimensionMismatch("descent needs a derivation without parameters")
    if not is_mu_d_equivariant_derivation(D, d):
        raise NotEquivariant(f"derivation is not mu_{d}-equivariant")
    if D.cert == "unknown" and not is_locally_nilpotent(D).is_lnd:
        raise NotLND("derivation is not certified locally nilpotent")
    table = {g: derive(D, Polynomial.monomial(g)) for g in veronese_exponents(d, D.nvars)}
    return QuotientDerivation(d, D.nvars, table)


def descent_compatible(D, d):
    """Generator images of ``exp(tD)`` agree with the exponential of the descended derivation."""
    q = descend_lnd(D, d)
    lifted = exp_action(D)
    images = _monomial_images(lifted.components, veronese_exponents(d, D.nvars), d)
    return images == q.exp_images()
