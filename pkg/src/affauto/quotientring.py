"""Veronese-type subrings of Q[x1..xn] and their degree semigroups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from affauto import kernels
from affauto.errors import BoundTooSmall, ParseError
from affauto.exactpoly import Polynomial, degree_support, monomials_of_degree


@dataclass(frozen=True)
class VeroneseRing:
    """``C + sum_{k >= s} C[x]_{dk}``; ``s = 1`` is the invariant ring of mu_d."""

    n: int
    d: int
    s: int = 1

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.s < 1:
            raise ValueError("n, d and s must all be positive")

    def contains(self, p):
        return ring_membership(p, self)


def veronese_generators(d, n):
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    return [Polynomial.monomial(e) for e in monomials_of_degree(n, d)]


def ring_membership(p, R):
    if p.nvars != R.n:
        return False
    return all(k == 0 or (k % R.d == 0 and k // R.d >= R.s) for k in degree_support(p))


# -- degree semigroups -------------------------------------------------------


def _progression_generators(gens, bound):
    """Finite generating set of ``sum_i N_{>=k_i} d_i`` below ``bound``.

    Every k >= k_i is a sum of values in [k_i, 2k_i - 1], so those suffice.
    """
    out = set()
    for d, k in gens:
        for j in range(k, 2 * k):
            if j * d <= bound:
                out.add(j * d)
    return sorted(out)


def _gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def _certified_conductor(flags, g, step, bound):
    """Least positive c with every multiple of g from c to bound present.

    The run from c must have at least ``step / g`` members, so that adding
    the member ``step`` propagates it past the bound.
    """
    c = None
    m = (bound // g) * g
    while m > 0 and flags[m]:
        c = m
        m -= g
    if c is None or (bound - c) // g + 1 < step // g:
        raise BoundTooSmall(f"periodicity is not certified below bound {bound}; raise the bound")
    return c


@dataclass(frozen=True)
class DegreeSemigroup:
    gens: tuple
    bound: int
    members: tuple
    gcd: int
    conductor: int

    def __contains__(self, m):
        if m <= self.bound:
            return m in set(self.members)
        return m % self.gcd == 0

    def min_nonzero(self):
        return next(m for m in self.members if m)

    def is_closed(self):
        """Closure under addition, checked pairwise up to the bound."""
        mem = set(self.members)
        ms = self.members
        for i, a in enumerate(ms):
            for b in ms[i:]:
                if a + b > self.bound:
                    break
                if a + b not in mem:
                    return False
        return True

    def to_json(self):
        return {
            "gens": [list(g) for g in self.gens],
            "bound": self.bound,
            "members": list(self.members),
            "gcd": self.gcd,
            "conductor": self.conductor,
        }

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(
                tuple(tuple(int(v) for v in g) for g in obj["gens"]),
                int(obj["bound"]),
                tuple(int(m) for m in obj["members"]),
                int(obj["gcd"]),
                int(obj["conductor"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed semigroup JSON: {exc}") from exc


def default_bound(gens):
    top = max(d * k for d, k in gens)
    return max(100, 2 * top * top)


def _check_gens(gens):
    gens = tuple((int(d), int(k)) for d, k in gens)
    if not gens or any(d < 1 or k < 1 for d, k in gens):
        raise ValueError("generators must be pairs of positive integers")
    return gens


def _from_flags(gens, flags, bound):
    members = tuple(m for m in range(bound + 1) if flags[m])
    g = _gcd_all(members)
    step = next(m for m in members if m)
    conductor = _certified_conductor(flags, g, step, bound)
    return DegreeSemigroup(gens, bound, members, g, conductor)


def semigroup_closure(gens, bound=None):
    """Additive closure of ``{0} + U_i {k d_i : k >= k_i}`` up to ``bound``."""
    gens = _check_gens(gens)
    bound = default_bound(gens) if bound is None else int(bound)
    flags = kernels.additive_closure(_progression_generators(gens, bound), bound)
    if not any(flags[1:]):
        raise BoundTooSmall(f"no nonzero member below bound {bound}")
    omega = _from_flags(gens, flags, bound)
    if omega.gcd != _gcd_all(d for d, _ in gens):
        raise BoundTooSmall(f"gcd of the members is not yet stable below bound {bound}")
    return omega


def saturated_flags(omega):
    """Apply ``g in Omega, g > 0  =>  g + k*gcd in Omega`` until stable."""
    bound, g = omega.bound, omega.gcd
    flags = bytearray(bound + 1)
    for m in omega.members:
        flags[m] = 1
    while True:
        positive = [m for m in range(1, bound + 1) if flags[m]]
        # progressions from larger members lie inside the one from the least
        extra = set(positive)
        extra.update(range(positive[0], bound + 1, g))
        new = kernels.additive_closure(sorted(extra), bound)
        if new == flags:
            return flags
        flags = new


def semigroup_saturate(gens, bound=None):
    """Saturate the closure and return ``(d, s)`` with the result ``{0} + {kd : k >= s}``."""
    omega = semigroup_closure(gens, bound)
    flags = saturated_flags(omega)
    sat = _from_flags(omega.gens, flags, omega.bound)
    result = recognize_Asdn(sat)
    if result is None:
        raise RuntimeError("internal error: saturated semigroup is not of the form {0} + dN_{>=s}")
    return result


def semigroup_from_members(members, bound):
    """A DegreeSemigroup given by explicit members (e.g. for recognition)."""
    flags = bytearray(bound + 1)
    for m in members:
        if 0 <= m <= bound:
            flags[m] = 1
    flags[0] = 1
    if not any(flags[1:]):
        raise BoundTooSmall(f"no nonzero member below bound {bound}")
    return _from_flags((), flags, bound)


def recognize_Asdn(omega):
    """``(d, s)`` if ``omega`` is ``{0} + {kd : k >= s}``, else None."""
    first = omega.min_nonzero()
    if omega.conductor != first or first % omega.gcd:
        return None
    return omega.gcd, first // omega.gcd
