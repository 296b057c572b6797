"""Pure-Python implementations of the hot kernels.

Both kernels have a compiled twin in ``_ckernels.pyx`` with the same
signatures; :mod:`affauto.kernels` picks one at import time.
"""

from fractions import Fraction
from math import lcm

_STRIDE = 32


def _pack(e):
    key = 0
    for i, x in enumerate(e):
        key |= x << (_STRIDE * i)
    return key


def _unpack(key, n):
    mask = (1 << _STRIDE) - 1
    return tuple((key >> (_STRIDE * i)) & mask for i in range(n))


def _scaled(terms):
    den = lcm(*(c.denominator for c in terms.values()))
    return den, [(_pack(e), c.numerator * (den // c.denominator)) for e, c in terms.items()]


def mul_terms(a, b, nvars):
    """Product of two sparse term maps ``{exponent tuple: Fraction}``."""
    if not a or not b:
        return {}
    da, an = _scaled(a)
    db, bn = _scaled(b)
    acc = {}
    get = acc.get
    for ka, ca in an:
        for kb, cb in bn:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    den = da * db
    return {_unpack(k, nvars): Fraction(v, den) for k, v in acc.items() if v}


def additive_closure(gens, bound):
    """Membership bytes of the additive monoid generated by ``gens`` in [0, bound].

    The set is an integer bitmask.  Closing under one generator g takes
    O(log(bound / g)) shift-or steps (g, 2g, 4g, ...), and closing under the
    generators one after another already gives closure under all of them.
    """
    mask = (1 << (bound + 1)) - 1
    bits = 1
    for g in sorted(set(g for g in gens if 0 < g <= bound)):
        step = g
        while step <= bound:
            bits = (bits | (bits << step)) & mask
            step <<= 1
    return bytearray(bin(bits)[:1:-1].ljust(bound + 1, "0").encode()).translate(_DIGITS)


_DIGITS = bytes.maketrans(b"01", b"\x00\x01")
