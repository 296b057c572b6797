"""Seeded random instances and the acceptance drivers.

Each ``criterion_k`` returns a :class:`CriterionResult`.  Drivers never
raise on a mathematical failure; they record it in ``detail``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from affauto.endo import Affine, AutoWord, Triangular, word_eval
from affauto.exactpoly import Polynomial

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] criterion {self.number} {self.name}: {self.detail} [{self.seconds:.2f}s{limit}]"

    def to_json(self):
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


# -- random generators ------------------------------------------------------


def _small(rng, lo=-3, hi=3):
    while True:
        c = rng.randint(lo, hi)
        if c:
            return c


def random_linear(rng, n):
    """Permutation times signed diagonal, followed by one elementary operation."""
    while True:
        perm = list(range(n))
        rng.shuffle(perm)
        m = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            m[i][j] = rng.choice((1, -1, 2))
        i, j = rng.sample(range(n), 2)
        for k in range(n):
            m[i][k] += rng.randint(-2, 2) * m[j][k]
        try:
            return Affine(tuple(tuple(r) for r in m), (0,) * n)
        except Exception:
            continue


def _random_poly_in(rng, n, skip, degrees, nterms):
    """Sparse polynomial in the variables other than ``skip`` with terms of the given degrees."""
    others = [j for j in range(n) if j != skip]
    terms = {}
    for _ in range(nterms):
        k = rng.choice(degrees)
        e = [0] * n
        for _ in range(k):
            e[rng.choice(others)] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + _small(rng)
    return Polynomial(n, terms)


def random_equivariant_word(rng, d, n, max_degree=9):
    """Alternating linear / mu_d-equivariant triangular word with degree <= ``max_degree``."""
    allowed = [k for k in range(d + 1, max_degree + 1) if (k - 1) % d == 0]
    letters = [random_linear(rng, n)]
    budget = max_degree
    while allowed:
        fits = [k for k in allowed if k <= budget]
        if not fits or (len(letters) > 1 and rng.random() < 0.4):
            break
        k = rng.choice(fits)
        degrees = [1] + [j for j in range(d + 1, k + 1) if (j - 1) % d == 0]
        i = rng.randrange(n)
        P = _random_poly_in(rng, n, i, [k], 1) + _random_poly_in(rng, n, i, degrees, rng.randint(0, 1))
        letters.append(Triangular(i, rng.choice((1, -1)), P))
        letters.append(random_linear(rng, n))
        budget //= k
    return AutoWord(n, tuple(letters))


def random_plane_word(rng, length=6, max_letter_degree=4):
    """Random tame plane word alternating affine and Jonquieres letters."""
    from affauto.planedecomp import Jonquieres

    y = Polynomial.var(1, 2)
    out = []
    start = rng.randrange(2)
    for pos in range(rng.randint(1, length)):
        if (pos + start) % 2 == 0:
            lin = random_linear(rng, 2)
            out.append(Affine(lin.matrix, (rng.randint(-2, 2), rng.randint(-2, 2))))
        else:
            k = rng.randint(2, max_letter_degree)
            f = (y ** k).scale(_small(rng))
            if rng.random() < 0.5:
                f = f + (y ** rng.randint(0, k - 1)).scale(_small(rng))
            out.append(Jonquieres(rng.choice((1, -1, 2)), rng.choice((1, -1)), rng.randint(-2, 2), f))
    return out


def random_equivariant_plane_word(rng, k, length=6, max_letter_degree=4, max_degree=64):
    """Random plane word of linear letters and mu_k-equivariant Jonquieres letters.

    Letter degrees are the smallest admissible ones (at least k + 1), and
    their product stays below ``max_degree``.
    """
    from affauto.planedecomp import Jonquieres

    y = Polynomial.var(1, 2)
    degrees = [j for j in range(k + 1, max(max_letter_degree, k + 1) + 1) if (j - 1) % k == 0]
    out = []
    budget = max_degree
    for pos in range(rng.randint(1, length)):
        if pos % 2 == 0:
            out.append(random_linear(rng, 2))
            continue
        fits = [j for j in degrees if j <= budget]
        if not fits:
            break
        j = rng.choice(fits)
        budget //= j
        f = (y ** j).scale(_small(rng))
        out.append(Jonquieres(rng.choice((1, -1, 2)), rng.choice((1, -1)), 0, f))
    return out


def random_triangular_derivation(rng, n, max_degree=4):
    from affauto.lnd import Derivation, certify

    order = list(range(n))
    rng.shuffle(order)
    coeffs = [Polynomial.zero(n) for _ in range(n)]
    for pos, i in enumerate(order):
        later = order[pos + 1:]
        terms = {}
        if not later:
            terms[(0,) * n] = _small(rng)
        else:
            for _ in range(rng.randint(1, 3)):
                e = [0] * n
                for _ in range(rng.randint(0, max_degree)):
                    e[rng.choice(later)] += 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + _small(rng)
        coeffs[i] = Polynomial(n, terms)
    return certify(Derivation(n, tuple(coeffs)))


def brute_force_saturation(gens, bound):
    """Reference saturation by naive set iteration (no shortcuts)."""
    base = {k * d for d, k0 in gens for k in range(k0, bound // d + 1)}
    omega = {0}
    frontier = set(base)
    while frontier:
        omega |= frontier
        frontier = {a + b for a in omega for b in omega if a + b <= bound} - omega
    g = 0
    for d, _ in gens:
        g = gcd(g, d)
    closed = set(omega)
    while True:
        grown = set(closed)
        for m in closed:
            if m > 0:
                grown.update(range(m + g, bound + 1, g))
        grown |= {a + b for a in grown for b in grown if a + b <= bound}
        if grown == closed:
            return omega, closed, g
        closed = grown


def random_semigroup_gens(rng):
    return [(rng.randint(1, 12), rng.randint(1, 5)) for _ in range(rng.randint(1, 4))]


# -- acceptance drivers ---------------------------------------------------------


def _timed(number, name, limit, body):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # reported, not raised
        ok, detail = False, f"error: {type(exc).__name__}: {exc}"
    secs = time.perf_counter() - start
    if limit is not None and secs > limit:
        ok, detail = False, f"{detail}; exceeded time limit"
    return CriterionResult(number, name, ok, detail, secs, limit)


def criterion_1(seed=DEFAULT_SEED):
    from affauto.danielewski import weight_set_surface
    from affauto.roots import weight_set_quotient

    def body():
        a = weight_set_quotient(2, 2, 21)
        b = weight_set_surface(False, 21)
        c = weight_set_quotient(4, 2, 21)
        e = weight_set_surface(True, 21)
        ok = a == b == list(range(1, 22)) and c == e == list(range(1, 22, 2)) and a != c
        return ok, f"A_2,2 {a == b}, A_4,2 {c == e}, sets differ {a != c}"

    return _timed(1, "weight-set discrimination", 5, body)


def criterion_2(seed=DEFAULT_SEED, count=100):
    from affauto.equilift import MuScalar, descend, exponent_normal_form, lift

    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(count):
            d, n = rng.choice((2, 3, 4)), rng.choice((2, 3))
            w = random_equivariant_word(rng, d, n)
            f = word_eval(w)
            res = lift(descend(w, d))
            if res.normal_form() != exponent_normal_form(f, MuScalar(d, (0,) * n)):
                bad += 1
        return bad == 0, f"{count - bad}/{count} round trips agree up to mu_d"

    return _timed(2, "lift/descend round trip", 60, body)


def criterion_3(seed=DEFAULT_SEED):
    from affauto.equilift import phi_d_diagonal_kernel, sl_scalar_kernel

    def body():
        ok_phi = all(
            len(k) == d and all(m.is_scalar() for m in k)
            for d in range(1, 7)
            for n in range(2, 5)
            for k in [phi_d_diagonal_kernel(d, n)]
        )
        ok_sl = all(sl_scalar_kernel(n, d) == gcd(n, d) for n in range(2, 13) for d in range(1, 13))
        return ok_phi and ok_sl, f"diagonal kernels {ok_phi}, SL scalar kernels {ok_sl}"

    return _timed(3, "kernel computations", None, body)


def criterion_4(seed=DEFAULT_SEED, count=100):
    from affauto.endo import compose_all
    from affauto.planedecomp import amalgam_eval, equivariant_decompose, jvdk_decompose, letter_is_equivariant

    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(count):
            f = compose_all(letter.as_map() for letter in random_plane_word(rng))
            trace = []
            word = jvdk_decompose(f, trace)
            steps_ok = all(a[0] + a[1] > b[0] + b[1] for a, b in zip(trace, trace[1:]))
            if amalgam_eval(word) != f or not steps_ok:
                bad += 1
        eq_bad = 0
        for _ in range(count):
            k = rng.choice((2, 3, 4))
            f = compose_all(letter.as_map() for letter in random_equivariant_plane_word(rng, k))
            word = equivariant_decompose(f, k)
            if amalgam_eval(word) != f or not all(letter_is_equivariant(x, k) for x in word.letters):
                eq_bad += 1
        return bad == 0 and eq_bad == 0, (
            f"{count - bad}/{count} plane words recompose, "
            f"{count - eq_bad}/{count} equivariant decompositions verified"
        )

    return _timed(4, "Jung-van der Kulk round trip", 60, body)


def criterion_5(seed=DEFAULT_SEED):
    from affauto.roots import TorusLattice, conjugation_law_holds, enumerate_root_subgroups

    def body():
        total = bad = 0
        for n in (2, 3):
            for U in enumerate_root_subgroups(n, None, 6):
                for L in (TorusLattice.full(n), TorusLattice.special(n)):
                    total += 1
                    bad += not conjugation_law_holds(U, L)
        return bad == 0, f"{total - bad}/{total} conjugation identities hold"

    return _timed(5, "root subgroup conjugation law", None, body)


def criterion_6(seed=DEFAULT_SEED):
    from affauto.danielewski import (
        Z,
        conjugation_identity_check,
        jt_auto,
        surface_weight,
        tau_commutes,
    )

    def body():
        rng = random.Random(seed)
        pres = tau = 0
        for _ in range(20):
            alpha = Fraction(_small(rng, -5, 5), rng.randint(1, 4))
            deg = rng.randint(0, 6)
            P = Polynomial(3, {(0, 0, k): _small(rng) for k in range(deg + 1) if rng.random() < 0.6})
            phi = jt_auto(alpha, P)
            pres += phi.preserves_quadric()
            even = all(e[2] % 2 == 0 for e in P.terms)
            tau += tau_commutes(phi) == even
        samples = [Z ** 0, Z, Z ** 2, Z ** 2 + 1, Z ** 5]
        conj = all(conjugation_identity_check(P) for P in samples)
        weights = all(surface_weight(i) == i + 1 for i in range(11))
        ok = pres == 20 and tau == 20 and conj and weights
        return ok, f"quadric {pres}/20, tau parity {tau}/20, conjugation {conj}, weights {weights}"

    return _timed(6, "Danielewski identities", None, body)


def criterion_7(seed=DEFAULT_SEED, count=50):
    from affauto.quotientring import default_bound, semigroup_closure, semigroup_saturate

    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(count):
            gens = random_semigroup_gens(rng)
            raw, sat, g = brute_force_saturation(gens, 500)
            d, s = semigroup_saturate(gens)
            expect = {0} | set(range(s * d, 501, d))
            omega = semigroup_closure(gens, max(500, default_bound(gens)))
            lib_raw = {m for m in omega.members if m <= 500}
            if sat != expect or d != g or lib_raw != raw:
                bad += 1
        worked = semigroup_saturate([(4, 2), (6, 1)])
        ok = bad == 0 and worked == (2, 3)
        return ok, f"{count - bad}/{count} agree with brute force, (4,2),(6,1) -> {worked}"

    return _timed(7, "semigroup saturation", 10, body)


def criterion_8(seed=DEFAULT_SEED, count=20):
    from affauto.lnd import (
        kernel_basis_up_to_degree,
        modification_pointwise_holds,
        modify,
        one_parameter_law_holds,
        same_span,
    )

    def body():
        rng = random.Random(seed)
        law = kern = pts = 0
        for _ in range(count):
            n = rng.randint(1, 3)
            D = random_triangular_derivation(rng, n)
            law += one_parameter_law_holds(D)
            # modifying function: a random invariant with nonzero constant term
            f = Polynomial.constant(_small(rng), n)
            for p in kernel_basis_up_to_degree(D, 3)[1:]:
                f = f + p.scale(rng.randint(-2, 2))
            fD = modify(f, D)
            kern += same_span(kernel_basis_up_to_degree(D, 8), kernel_basis_up_to_degree(fD, 8))
            ok = all(
                modification_pointwise_holds(
                    f, D, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)], Fraction(rng.randint(-3, 3), 2)
                )
                for _ in range(10)
            )
            pts += ok
        passed = law == kern == pts == count
        return passed, f"group law {law}/{count}, kernel equality {kern}/{count}, pointwise {pts}/{count}"

    return _timed(8, "LND suite", None, body)


def criterion_9(seed=DEFAULT_SEED):
    from affauto.roots import enumerate_root_subgroups, u_invariant_weight_multiplicities

    def body():
        subs = enumerate_root_subgroups(2, None, 10)
        bad = sum(
            any(m != 1 for _, m in u_invariant_weight_multiplicities(U, 2, 10)) for U in subs
        )
        return bad == 0, f"{len(subs) - bad}/{len(subs)} invariant rings multiplicity-free"

    return _timed(9, "multiplicity-freeness", None, body)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}

SUITES = {
    "weights": 1,
    "roundtrip": 2,
    "kernels": 3,
    "jvdk": 4,
    "liendo": 5,
    "danielewski": 6,
    "semigroup": 7,
    "lnd": 8,
    "multfree": 9,
}


def run(suite="all", seed=DEFAULT_SEED):
    if suite == "all":
        numbers = sorted(CRITERIA)
    elif suite in SUITES:
        numbers = [SUITES[suite]]
    else:
        numbers = [int(suite)]
    return [CRITERIA[k](seed) for k in numbers]
