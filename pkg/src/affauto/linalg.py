"""Sparse exact linear algebra over Q.

Vectors are dicts from sortable keys to Fractions.  The pivot of a vector
is its largest key under ``key``.
"""

from __future__ import annotations

from fractions import Fraction


def _axpy(target, coeff, vec):
    """target += coeff * vec, in place."""
    for k, v in vec.items():
        s = target.get(k, 0) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class Echelon:
    """Incremental row echelon form, optionally tracking combinations.

    ``add`` reduces a vector against the stored rows.  If it reduces to
    zero the recorded combination of previously added inputs is returned,
    otherwise the vector becomes a new row and ``None`` is returned.
    """

    def __init__(self, key=None):
        self.key = key or (lambda k: k)
        self.rows = {}  # pivot -> (vector, combination)
        self.count = 0

    def _pivot(self, vec):
        return max(vec, key=self.key)

    def reduce(self, vec, combo=None):
        vec = dict(vec)
        combo = dict(combo or {})
        while vec:
            p = self._pivot(vec)
            row = self.rows.get(p)
            if row is None:
                break
            factor = -vec[p] / row[0][p]
            _axpy(vec, factor, row[0])
            _axpy(combo, factor, row[1])
        return vec, combo

    def add(self, vec, tag=None):
        tag = self.count if tag is None else tag
        self.count += 1
        vec, combo = self.reduce(vec, {tag: Fraction(1)})
        if not vec:
            return combo
        self.rows[self._pivot(vec)] = (vec, combo)
        return None

    def contains(self, vec):
        return not self.reduce(vec)[0]

    @property
    def rank(self):
        return len(self.rows)


def rref(vectors, key=None):
    """Reduced echelon basis of the span, each row monic at its pivot.

    Rows are returned sorted by pivot in ascending order.
    """
    key = key or (lambda k: k)
    ech = Echelon(key)
    for v in vectors:
        if v:
            ech.add(v)
    pivots = sorted(ech.rows, key=key)
    rows = {}
    for p in pivots:  # ascending, so earlier rows are already fully reduced
        vec = dict(ech.rows[p][0])
        lead = vec[p]
        vec = {k: c / lead for k, c in vec.items()}
        for q in list(vec):
            if q != p and q in rows:
                _axpy(vec, -vec[q], rows[q])
        rows[p] = vec
    return [rows[p] for p in pivots]


def rank(vectors, key=None):
    ech = Echelon(key)
    for v in vectors:
        if v:
            ech.add(v)
    return ech.rank


def kernel_combinations(images, key=None):
    """Basis of the relations ``sum c_j images[j] = 0``, as dicts j -> c_j."""
    ech = Echelon(key)
    out = []
    for j, img in enumerate(images):
        combo = ech.add(img, tag=j)
        if combo is not None:
            out.append(combo)
    return out
