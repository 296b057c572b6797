"""The quadric surface X = V(xz + y^2 - 1), a model of SL2/T.

Polynomials live in Q[x, y, z] (plus formal parameters where needed).
Normal forms modulo the quadric replace ``y^2`` by ``1 - xz``; this is a
Groebner reduction for any order in which ``y^2`` leads, so the normal
form is unique.

The quotient map SL2 -> SL2/T lands in V(xz - y^2 + y); the rational
isomorphism ``(x, y, z) -> (2x, 2y - 1, -2z)`` carries it onto X since
``4(xz - y^2 + y) = -((2x)(-2z) + (2y - 1)^2 - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from affauto.endo import PolyMap, compose, compose_all, pullback
from affauto.errors import DimensionMismatch, NotAutomorphism, NotDeterminantOne
from affauto.exactpoly import Polynomial, grlex_key, poly_parse
from affauto.linalg import rref

X, Y, Z = (Polynomial.var(i, 3) for i in range(3))
QUADRIC = X * Z + Y * Y - 1


def quadric(ring=3):
    return QUADRIC.extend(ring)


def reduce_mod_quadric(p):
    """Unique representative with y-degree at most 1."""
    out = {}
    work = dict(p.terms)
    while work:
        e, c = work.popitem()
        if e[1] < 2:
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
            continue
        # x^a y^b z^c = x^a y^(b-2) z^c (1 - xz)
        lower = (e[0], e[1] - 2) + e[2:]
        shifted = (e[0] + 1, e[1] - 2, e[2] + 1) + e[3:]
        for f, v in ((lower, c), (shifted, -c)):
            s = work.get(f, 0) + v
            if s:
                work[f] = s
            else:
                work.pop(f, None)
    return Polynomial(p.nvars, out)


def congruent(p, q):
    return reduce_mod_quadric(p - q).is_zero()


def maps_congruent(f, g):
    return all(congruent(a, b) for a, b in zip(f.components, g.components))


@dataclass(frozen=True)
class SurfacePoint:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.x * self.z + self.y * self.y != 1:
            raise ValueError("point is not on xz + y^2 = 1")

    def to_json(self):
        return [str(self.x), str(self.y), str(self.z)]


def to_symmetric_model(x, y, z):
    """V(xz - y^2 + y) -> V(xz + y^2 - 1)."""
    return SurfacePoint(2 * Fraction(x), 2 * Fraction(y) - 1, -2 * Fraction(z))


def sl2t_quotient(M):
    """``[[a, b], [c, d]] -> (ab, ad, cd)`` on V(xz - y^2 + y), and its image on X."""
    (a, b), (c, d) = [[Fraction(v) for v in row] for row in M]
    if a * d - b * c != 1:
        raise NotDeterminantOne("matrix does not have determinant 1")
    x, y, z = a * b, a * d, c * d
    if x * z - y * y + y != 0:
        raise RuntimeError("internal error: quotient point violates xz - y^2 + y = 0")
    return (x, y, z), to_symmetric_model(x, y, z)


@dataclass(frozen=True)
class SurfaceAuto:
    """A 3-variable polynomial map preserving the quadric ideal."""

    map: PolyMap
    tag: tuple = ("raw",)

    def __post_init__(self):
        if self.map.nvars != 3:
            raise DimensionMismatch("surface maps act on 3 coordinates")

    def preserves_quadric(self):
        return reduce_mod_quadric(pullback(self.map, quadric(self.map.ring_nvars))).is_zero()

    def to_json(self):
        obj = {"map": self.map.to_json(), "tag": self.tag[0]}
        if self.tag[0] == "jt":
            obj["alpha"] = str(self.tag[1])
            obj["P"] = self.tag[2].to_json()
        return obj


def _as_z_poly(P, ring):
    """Embed a polynomial in z (1 variable, or 3 variables using only z) into ``ring``."""
    if P.nvars == 1:
        return Polynomial(ring, {(0, 0, k[0]) + (0,) * (ring - 3): c for k, c in P.terms.items()})
    if any(e[0] or e[1] for e in P.terms):
        raise ValueError("P must be a polynomial in z alone")
    return P.extend(ring) if P.nvars < ring else P


def _jt_map(alpha, P, ring):
    x, y, z = (Polynomial.var(i, ring) for i in range(3))
    comps = (
        (x + (y * P).scale(2) - z * P * P).scale(alpha),
        y - z * P,
        z.scale(1 / alpha),
    )
    return PolyMap(3, comps, ring - 3)


def jt_auto(alpha, P):
    """``(a x + 2 a y P(z) - a z P(z)^2, y - z P(z), z / a)``."""
    alpha = Fraction(alpha)
    if not alpha:
        raise NotAutomorphism("alpha must be nonzero")
    if isinstance(P, str):
        P = poly_parse(P.replace("z", "x3"), 3)
    P3 = _as_z_poly(P, 3)
    return SurfaceAuto(_jt_map(alpha, P3, 3), ("jt", alpha, P3))


TAU = SurfaceAuto(PolyMap(3, (-X, -Y, -Z)), ("tau",))


def torus_auto(t):
    t = Fraction(t)
    return SurfaceAuto(PolyMap(3, (X.scale(t), Y, Z.scale(1 / t))), ("torus", t))


def tau_commutes(phi):
    m = phi.map if isinstance(phi, SurfaceAuto) else phi
    return maps_congruent(compose_all([TAU.map, m, TAU.map]), m)


def identify_jt(phi):
    """``(alpha, P)`` with ``phi == jt_auto(alpha, P)`` modulo the quadric, or None."""
    f1, f2, f3 = (reduce_mod_quadric(c) for c in phi.map.components)
    a = f3.coefficient((0, 0, 1))
    if not a or f3 != Z.scale(a):
        return None
    rest = Y - f2
    if rest and any(e[0] or e[1] or not e[2] for e in rest.terms):
        return None
    P = Polynomial(3, {(0, 0, e[2] - 1): c for e, c in rest.terms.items()})
    alpha = 1 / a
    cand = jt_auto(alpha, P)
    return (alpha, P) if maps_congruent(cand.map, phi.map) else None


def compose_surface(phi, psi):
    return SurfaceAuto(compose(phi.map, psi.map))


def jt_group_law_holds(alpha, P, beta, Q):
    """The composite of two J_T maps preserves X and is again a J_T map."""
    comp = compose_surface(jt_auto(alpha, P), jt_auto(beta, Q))
    if not comp.preserves_quadric():
        return False
    found = identify_jt(comp)
    return found is not None and found[0] == Fraction(alpha) * Fraction(beta)


# -- conjugation by the torus T'' = {(t x, y, t^-1 z)} ---------------------------


def _conjugate_by_torus(m, ring):
    """``(t x, y, u z) o m o (u x, y, t z)`` with t, u the parameters 3, 4,
    reduced modulo ``t u = 1``."""
    x, y, z = (Polynomial.var(i, ring) for i in range(3))
    t, u = Polynomial.var(3, ring), Polynomial.var(4, ring)
    fwd = PolyMap(3, (t * x, y, u * z), ring - 3)
    back = PolyMap(3, (u * x, y, t * z), ring - 3)
    return compose_all([fwd, m, back]).reduce_params([(3, 4)])


def conjugation_identity_check(P):
    """``(t x, y, z/t) o J(1, P) o (x/t, y, t z) == J(1, t P(t z))`` with formal t."""
    ring = 5
    P5 = _as_z_poly(P, 3).extend(ring)
    x, y, z = (Polynomial.var(i, ring) for i in range(3))
    t = Polynomial.var(3, ring)
    lhs = _conjugate_by_torus(_jt_map(Fraction(1), P5, ring), ring)
    scaled = t * P5.substitute([x, y, t * z, t, Polynomial.var(4, ring)])
    return lhs == _jt_map(Fraction(1), scaled, ring)


def surface_weight(i):
    """Weight of ``U_i = {J(1, c z^i)}`` with respect to T'', read off and verified."""
    ring = 6  # x, y, z, t, u, c
    z = Polynomial.var(2, ring)
    t, c = Polynomial.var(3, ring), Polynomial.var(5, ring)
    conj = _conjugate_by_torus(_jt_map(Fraction(1), c * z ** i, ring), ring)
    # the y-coordinate is y - (scaled c) z^(i+1); read the power of t
    lead = [e for e in (Polynomial.var(1, ring) - conj.components[1]).terms if e[2] == i + 1]
    if len(lead) != 1 or lead[0][4]:
        raise RuntimeError("internal error: unexpected conjugated form")
    w = lead[0][3]
    if conj != _jt_map(Fraction(1), c * t ** w * z ** i, ring):
        raise RuntimeError("internal error: conjugation does not rescale the parameter")
    return w


def weight_set_surface(tau_commuting, bound):
    """Weights of the root subgroups U_i (i < bound), restricted to those
    commuting with tau when requested."""
    out = set()
    for i in range(bound):
        if tau_commuting and not tau_commutes(jt_auto(1, Z ** i)):
            continue
        w = surface_weight(i)
        if w <= bound:
            out.add(w)
    return sorted(out)


def tau_invariant_basis(B):
    """Basis of tau-invariant functions of degree <= B modulo the quadric."""
    from affauto.exactpoly import monomials_of_degree

    vecs = []
    for k in range(0, B + 1, 2):
        for e in monomials_of_degree(3, k):
            vecs.append(reduce_mod_quadric(Polynomial.monomial(e)).terms)
    return [Polynomial(3, v) for v in rref(vecs, key=grlex_key)]
