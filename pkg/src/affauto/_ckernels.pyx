# distutils: language = c++
"""Compiled hot kernels; same contract as ``_pykernels``."""

from fractions import Fraction
from math import lcm

from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from affauto._pykernels import mul_terms as _py_mul_terms


cdef inline uint64_t _pack(tuple e, int bits):
    cdef uint64_t key = 0
    cdef int i
    for i in range(len(e)):
        key |= (<uint64_t>e[i]) << (bits * i)
    return key


def mul_terms(dict a, dict b, int nvars):
    if not a or not b:
        return {}
    if nvars == 0 or nvars > 8:
        return _py_mul_terms(a, b, nvars)
    cdef int bits = 64 // nvars
    cdef uint64_t cap = (<uint64_t>1) << (bits - 1)
    cdef Py_ssize_t la = len(a), lb = len(b)
    da = lcm(*[c.denominator for c in a.values()])
    db = lcm(*[c.denominator for c in b.values()])
    maxa = 0
    maxb = 0
    ea_max = 0
    eb_max = 0
    an = []
    bn = []
    for e, c in a.items():
        v = c.numerator * (da // c.denominator)
        an.append((e, v))
        maxa = max(maxa, abs(v))
        ea_max = max(ea_max, max(e) if e else 0)
    for e, c in b.items():
        v = c.numerator * (db // c.denominator)
        bn.append((e, v))
        maxb = max(maxb, abs(v))
        eb_max = max(eb_max, max(e) if e else 0)
    if ea_max + eb_max >= cap or maxa * maxb * min(la, lb) >= (1 << 62):
        return _py_mul_terms(a, b, nvars)

    cdef vector[uint64_t] ka
    cdef vector[int64_t] ca
    cdef vector[uint64_t] kb
    cdef vector[int64_t] cb
    ka.reserve(la)
    ca.reserve(la)
    kb.reserve(lb)
    cb.reserve(lb)
    for e, v in an:
        ka.push_back(_pack(e, bits))
        ca.push_back(v)
    for e, v in bn:
        kb.push_back(_pack(e, bits))
        cb.push_back(v)

    cdef unordered_map[uint64_t, int64_t] acc
    acc.reserve(la * lb)
    cdef Py_ssize_t i, j
    for i in range(la):
        for j in range(lb):
            acc[ka[i] + kb[j]] += ca[i] * cb[j]

    den = da * db
    cdef uint64_t mask = (((<uint64_t>1) << bits) - 1) if bits < 64 else <uint64_t>(-1)
    cdef uint64_t key
    cdef int k
    out = {}
    for item in acc:
        if item.second != 0:
            key = item.first
            out[tuple([<long>((key >> (bits * k)) & mask) for k in range(nvars)])] = Fraction(item.second, den)
    return out


def additive_closure(gens, Py_ssize_t bound):
    cdef bytearray members = bytearray(bound + 1)
    cdef unsigned char[:] mv = members
    cdef vector[Py_ssize_t] gs
    for g in sorted(set(g for g in gens if 0 < g <= bound)):
        gs.push_back(g)
    mv[0] = 1
    cdef Py_ssize_t m, t, idx, ng = gs.size()
    for m in range(bound + 1):
        if mv[m]:
            for idx in range(ng):
                t = m + gs[idx]
                if t > bound:
                    break
                mv[t] = 1
    return members
