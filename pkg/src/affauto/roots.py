"""Torus characters, root subgroups and weight sets.

Characters of the diagonal torus T_n are vectors in Z^n.  On the special
torus T'_n (product of entries 1) they are taken modulo the all-ones
vector and stored as ``(v_1 - v_n, ..., v_{n-1} - v_n)``.  The torus
T_d = T'_n / mu_g with g = gcd(n, d) has the characters trivial on the
scalars mu_g; its basis is the Hermite normal form

    (1, 0, ..., 0, g-1), ..., (0, ..., 1, g-1), (0, ..., 0, g).

A root subgroup ``U(c) = (x_1, ..., x_i + c*m, ..., x_n)`` with monomial
``m = x^a`` has character ``e_i - a``: conjugating by ``t`` rescales ``c``
by ``t_i * t^-a``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from affauto.endo import PolyMap, compose_all
from affauto.errors import DimensionMismatch, NotDescendable
from affauto.exactpoly import Polynomial, monomials_of_degree
from affauto.linalg import rank

FULL, SPECIAL, QUOTIENT = "full", "special", "quotient"


@dataclass(frozen=True)
class TorusLattice:
    kind: str
    n: int
    d: int | None = None

    def __post_init__(self):
        if self.kind not in (FULL, SPECIAL, QUOTIENT):
            raise ValueError(f"unknown torus kind {self.kind!r}")
        if self.n < 1 or (self.kind == QUOTIENT and (self.d is None or self.d < 1)):
            raise ValueError("invalid torus parameters")

    @classmethod
    def full(cls, n):
        return cls(FULL, n)

    @classmethod
    def special(cls, n):
        return cls(SPECIAL, n)

    @classmethod
    def quotient(cls, n, d):
        return cls(QUOTIENT, n, d)

    @property
    def rank(self):
        return self.n if self.kind == FULL else self.n - 1

    @property
    def index(self):
        """Index of the character lattice inside that of T'_n."""
        return gcd(self.n, self.d) if self.kind == QUOTIENT else 1

    def basis(self):
        r = self.rank
        if self.kind != QUOTIENT:
            return [tuple(int(i == j) for j in range(r)) for i in range(r)]
        g = self.index
        rows = [tuple(int(i == j) for j in range(r - 1)) + (g - 1,) for i in range(r - 1)]
        rows.append((0,) * (r - 1) + (g,))
        return rows

    def to_json(self):
        obj = {"kind": self.kind, "n": self.n}
        if self.d is not None:
            obj["d"] = self.d
        return obj


@dataclass(frozen=True)
class Character:
    lattice: TorusLattice
    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(v) for v in self.vector))
        if len(self.vector) != self.lattice.rank:
            raise DimensionMismatch("character coordinates do not match the lattice rank")

    def weight(self):
        """Rank-one characters as a signed integer."""
        if len(self.vector) != 1:
            raise ValueError("weight() needs a rank-one torus")
        return self.vector[0]

    def __add__(self, other):
        if other.lattice != self.lattice:
            raise DimensionMismatch("characters of different tori")
        return Character(self.lattice, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __neg__(self):
        return Character(self.lattice, tuple(-a for a in self.vector))

    def __sub__(self, other):
        return self + (-other)

    def to_json(self):
        return {"lattice": self.lattice.to_json(), "vector": list(self.vector)}


def full_character(v, L):
    """Reduce a character of T_n, given in Z^n, into the lattice ``L``."""
    v = tuple(int(x) for x in v)
    if len(v) != L.n:
        raise DimensionMismatch("character vector has the wrong length")
    if L.kind == FULL:
        return Character(L, v)
    special = Character(TorusLattice.special(L.n), tuple(x - v[-1] for x in v[:-1]))
    if L.kind == SPECIAL:
        return special
    return descend_character(special, L.d)


@dataclass(frozen=True)
class RootSubgroupDesc:
    i: int  # 0-based target variable
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(a) for a in self.m))
        if not 0 <= self.i < len(self.m) or self.m[self.i] or any(a < 0 for a in self.m):
            raise ValueError("root subgroup monomial must omit the target variable")

    @property
    def n(self):
        return len(self.m)

    @property
    def degree(self):
        return sum(self.m)

    def as_map(self, c, nparams):
        """``U(c)`` for a polynomial ``c`` in the ring with ``nparams`` parameters."""
        ring = self.n + nparams
        comps = [Polynomial.var(j, ring) for j in range(self.n)]
        comps[self.i] = comps[self.i] + c * Polynomial.monomial(self.m + (0,) * nparams)
        return PolyMap(self.n, tuple(comps), nparams)

    def generator(self):
        """The locally nilpotent derivation ``m * d/dx_i``."""
        from affauto.lnd import Derivation, certify

        coeffs = [Polynomial.zero(self.n) for _ in range(self.n)]
        coeffs[self.i] = Polynomial.monomial(self.m)
        return certify(Derivation(self.n, tuple(coeffs)))

    def modified(self, b):
        """``x^b * U`` for an invariant monomial (``b_i = 0``)."""
        if b[self.i]:
            raise ValueError("modifying monomial must not involve the target variable")
        return RootSubgroupDesc(self.i, tuple(x + y for x, y in zip(self.m, b)))

    def to_json(self):
        return {"i": self.i + 1, "m": list(self.m)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["i"]) - 1, tuple(obj["m"]))


def character_of(U, L):
    if L.n != U.n:
        raise DimensionMismatch("torus and root subgroup dimensions differ")
    v = tuple((1 if j == U.i else 0) - a for j, a in enumerate(U.m))
    return full_character(v, L)


def _torus_maps(L, nparams, offset):
    """Formal torus element ``t`` and ``t^-1`` as diagonal maps, plus the
    parameter pairs to cancel and a function turning a character into a
    monomial in the parameters.

    Parameters occupy ring slots ``n + offset ...``: first the t_k, then
    their inverses u_k.
    """
    n = L.n
    ring = n + nparams
    k = L.rank
    t = [Polynomial.var(n + offset + j, ring) for j in range(k)]
    u = [Polynomial.var(n + offset + k + j, ring) for j in range(k)]
    if L.kind == FULL:
        fwd, back = t, u
    elif L.kind == SPECIAL:
        last_t = Polynomial.constant(1, ring)
        last_u = Polynomial.constant(1, ring)
        for j in range(k):
            last_t = last_t * u[j]
            last_u = last_u * t[j]
        fwd, back = t + [last_t], u + [last_u]
    else:
        raise ValueError("conjugation is checked on the full or special torus")
    xs = [Polynomial.var(j, ring) for j in range(n)]
    tmap = PolyMap(n, tuple(a * x for a, x in zip(fwd, xs)), nparams)
    tinv = PolyMap(n, tuple(a * x for a, x in zip(back, xs)), nparams)
    pairs = [(n + offset + j, n + offset + k + j) for j in range(k)]

    def monomial(chi):
        e = [0] * ring
        for j, a in enumerate(chi.vector):
            e[n + offset + (j if a >= 0 else k + j)] = abs(a)
        return Polynomial.monomial(e)

    return tmap, tinv, pairs, monomial


def conjugation_law_holds(U, L=None):
    """Symbolic check of ``t o U(c) o t^-1 == U(chi(t) c)`` with formal t and c."""
    L = L or TorusLattice.special(U.n)
    chi = character_of(U, L)
    nparams = 2 * L.rank + 1
    ring = U.n + nparams
    c = Polynomial.var(ring - 1, ring)
    tmap, tinv, pairs, monomial = _torus_maps(L, nparams, 0)
    lhs = compose_all([tmap, U.as_map(c, nparams), tinv]).reduce_params(pairs)
    rhs = U.as_map(c * monomial(chi), nparams).reduce_params(pairs)
    return lhs == rhs


def enumerate_root_subgroups(n, d=None, degree_bound=1):
    """All ``U = (..., x_i + c*m, ...)`` with ``deg m <= degree_bound``.

    With ``d`` set, only ``deg m = 1 mod d`` (mu_d-equivariant ones).
    Ordered by target variable, then by monomial in ascending grlex order.
    """
    out = []
    for i in range(n):
        for k in range(degree_bound + 1):
            if d is not None and (k - 1) % d:
                continue
            for e in reversed(monomials_of_degree(n - 1, k)):
                out.append(RootSubgroupDesc(i, e[:i] + (0,) + e[i:]))
    return out


def descend_character(chi, d):
    """Express a character of T'_n on T_d = T'_n / mu_gcd(n,d)."""
    L = chi.lattice
    if L.kind != SPECIAL:
        raise ValueError("descent starts from a character of the special torus")
    Q = TorusLattice.quotient(L.n, d)
    g = Q.index
    c = chi.vector
    # scalar zeta in mu_g acts by zeta^(sum of a full representative)
    if sum(c) % g:
        raise NotDescendable(f"character is nontrivial on the scalars mu_{g}")
    if L.n == 1:
        return Character(Q, ())
    head = c[:-1]
    y = (c[-1] - (g - 1) * sum(head)) // g
    return Character(Q, head + (y,))


def weight_multiset_quotient(d, n, bound):
    """Signed descended characters of mu_d-equivariant root subgroups.

    For n = 2 the list holds every subgroup of weight at most ``bound`` in
    absolute value; for n >= 3 those with ``deg m <= bound``.
    """
    if n == 2:
        g = gcd(2, d)
        deg_bound = g * bound - 1
    else:
        deg_bound = bound
    L = TorusLattice.special(n)
    out = []
    for U in enumerate_root_subgroups(n, d, deg_bound):
        chi = descend_character(character_of(U, L), d)
        if n == 2:
            if abs(chi.weight()) <= bound:
                out.append(chi.weight())
        else:
            out.append(chi.vector)
    return out


def weight_set_quotient(d, n, bound):
    """Sorted weights of root subgroups of Aut(A_{d,n}) with respect to T_d.

    Rank-one weights are reported up to sign.
    """
    ws = weight_multiset_quotient(d, n, bound)
    if n == 2:
        return sorted({abs(w) for w in ws if w})
    return sorted(set(ws))


def is_multiplicity_free(weights):
    c = Counter(weights)
    return all(v == 1 for v in c.values())


def monomial_weight(e, L):
    """Torus weight of the monomial ``x^e`` (the character ``t -> t^e``)."""
    chi = full_character(e, L)
    return chi.weight() if L.rank == 1 else chi.vector


def u_invariant_weight_multiplicities(U, n=None, bound=1):
    """``(weight, multiplicity)`` pairs of the U-invariants of degree <= bound.

    The invariant space is torus stable, so each multiplicity is the rank of
    its projection onto the weight space.
    """
    from affauto.lnd import kernel_basis_up_to_degree

    n = n or U.n
    if n != U.n:
        raise DimensionMismatch("dimension does not match the root subgroup")
    L = TorusLattice.special(n)
    basis = kernel_basis_up_to_degree(U.generator(), bound)
    projections = {}
    for p in basis:
        parts = {}
        for e, c in p.terms.items():
            parts.setdefault(monomial_weight(e, L), {})[e] = c
        for w, vec in parts.items():
            projections.setdefault(w, []).append(vec)
    return sorted((w, rank(vs)) for w, vs in projections.items())


def modification_character_holds(U, b, L=None):
    """Character of ``x^b * U`` equals ``chi(U) - wt(x^b)``, with both sides
    checked against the conjugation law."""
    L = L or TorusLattice.special(U.n)
    V = U.modified(b)
    if not (conjugation_law_holds(U, L) and conjugation_law_holds(V, L)):
        return False
    return character_of(V, L) == character_of(U, L) - full_character(b, L)
