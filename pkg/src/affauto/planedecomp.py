"""Jung-van der Kulk decomposition of plane automorphisms.

Words are stored in composition order: ``letters[0] o letters[1] o ...``
evaluates to the decomposed map.  Jonquieres letters have the form
``(a*x + f(y), c*y + b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from affauto.endo import Affine, PolyMap, compose, compose_all, constant_jacobian, jacobian
from affauto.equilift import is_mu_d_equivariant
from affauto.errors import NotAutomorphism, NotEquivariant, ParseError
from affauto.exactpoly import Polynomial, graded_component

X = Polynomial.var(0, 2)
Y = Polynomial.var(1, 2)
SWAP = Affine(((0, 1), (1, 0)), (0, 0))


@dataclass(frozen=True)
class Jonquieres:
    a: Fraction
    c: Fraction
    b: Fraction
    f: Polynomial  # polynomial in y only

    def __post_init__(self):
        for name in ("a", "c", "b"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not self.a or not self.c:
            raise NotAutomorphism("Jonquieres letter needs nonzero a and c")
        if self.f.nvars != 2 or any(e[0] for e in self.f.terms):
            raise ValueError("Jonquieres polynomial must be a polynomial in y alone")

    nvars = 2

    def as_map(self, nparams=0):
        ring = 2 + nparams
        x, y = Polynomial.var(0, ring), Polynomial.var(1, ring)
        return PolyMap(2, (x.scale(self.a) + self.f.extend(ring), y.scale(self.c) + self.b), nparams)

    def inverse(self):
        # x' = (x - f((y - b)/c)) / a, y' = (y - b) / c
        yinv = (Y - self.b).scale(1 / self.c)
        f_shift = self.f.substitute([X, yinv])
        return Jonquieres(1 / self.a, 1 / self.c, -self.b / self.c, f_shift.scale(-1 / self.a))

    def in_intersection(self):
        return self.f.degree() <= 1

    def to_json(self):
        return {"type": "jonquieres", "a": str(self.a), "c": str(self.c), "b": str(self.b), "f": self.f.to_json()}


def jonquieres_from_map(m):
    f1, f2 = m.components
    c = f2.coefficient((0, 1))
    b = f2.constant_value()
    if f2 != Y.scale(c) + b:
        return None
    a = f1.coefficient((1, 0))
    rest = f1 - X.scale(a)
    if any(e[0] for e in rest.terms) or not a or not c:
        return None
    return Jonquieres(a, c, b, rest)


def affine_from_map(m):
    if m.degree() > 1:
        return None
    rows = []
    trans = []
    for comp in m.components:
        rows.append((comp.coefficient((1, 0)), comp.coefficient((0, 1))))
        trans.append(comp.constant_value())
    try:
        return Affine(tuple(rows), tuple(trans))
    except Exception:
        return None


def _in_c(letter):
    if isinstance(letter, Jonquieres):
        return letter.in_intersection()
    return letter.matrix[1][0] == 0


def _is_identity(letter):
    return letter.as_map().is_identity()


@dataclass(frozen=True)
class AmalgamWord:
    letters: tuple
    normalized: bool = False

    def to_json(self):
        return {"letters": [letter.to_json() for letter in self.letters], "normalized": self.normalized}

    @classmethod
    def from_json(cls, obj):
        from affauto.endo import letter_from_json

        try:
            letters = []
            for item in obj["letters"]:
                if item.get("type") == "jonquieres":
                    letters.append(
                        Jonquieres(Fraction(item["a"]), Fraction(item["c"]), Fraction(item["b"]), Polynomial.from_json(item["f"]))
                    )
                else:
                    letters.append(letter_from_json(item))
            return cls(tuple(letters), bool(obj.get("normalized", False)))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed amalgam word JSON: {exc}") from exc


def amalgam_eval(word):
    if not word.letters:
        return PolyMap.identity(2)
    return compose_all(letter.as_map() for letter in word.letters)


def amalgam_inverse(word):
    return amalgam_eval(AmalgamWord(tuple(letter.inverse() for letter in reversed(word.letters))))


def _merge(left, right):
    """Product of two letters of the same factor (or involving C), or None."""
    m = compose(left.as_map(), right.as_map())
    if isinstance(left, Affine) and isinstance(right, Affine):
        return affine_from_map(m)
    if isinstance(left, Jonquieres) and isinstance(right, Jonquieres):
        return jonquieres_from_map(m)
    # one side lies in C: merge into the other side's factor
    target = right if _in_c(left) else left
    if isinstance(target, Affine):
        return affine_from_map(m)
    return jonquieres_from_map(m)


def normalize(letters):
    """Greedy left-to-right normal form: drop identities, merge same-factor and C letters."""
    out = [letter for letter in letters if not _is_identity(letter)]
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            left, right = out[i], out[i + 1]
            same = type(left) is type(right)
            if same or _in_c(left) or _in_c(right):
                merged = _merge(left, right)
                if merged is None:
                    continue
                out[i:i + 2] = [] if _is_identity(merged) else [merged]
                changed = True
                break
    return AmalgamWord(tuple(out), normalized=True)


def _leading_ratio(top, base):
    """Scalar c with top == c * base, or None."""
    c = top.leading_coefficient() / base.leading_coefficient()
    return c if top == base.scale(c) else None


def jvdk_decompose(f, trace=None):
    """Decompose a plane automorphism into affine and Jonquieres letters.

    ``trace``, if given, receives the pair of component degrees before each
    reduction step.
    """
    if f.nvars != 2 or f.nparams:
        raise NotAutomorphism("Jung-van der Kulk decomposition needs a plane map")
    if constant_jacobian(f) is None:
        raise NotAutomorphism("Jacobian determinant is not a nonzero constant")
    letters = []
    f1, f2 = f.components
    while max(f1.degree(), f2.degree()) > 1:
        d1, d2 = f1.degree(), f2.degree()
        if trace is not None:
            trace.append((d1, d2))
        hi, lo = (f1, f2) if d1 >= d2 else (f2, f1)
        dh, dl = max(d1, d2), min(d1, d2)
        if dl < 1 or dh % dl:
            raise NotAutomorphism(f"degree reduction stalled at degrees ({d1}, {d2})")
        k = dh // dl
        top_lo = graded_component(lo, dl) ** k
        c = _leading_ratio(graded_component(hi, dh), top_lo)
        if c is None:
            raise NotAutomorphism(f"leading forms not proportional at degrees ({d1}, {d2})")
        step = Jonquieres(1, 1, 0, Y ** k * c)
        reduced = hi - lo ** k * c
        if d1 >= d2:
            letters.append(step)
            f1 = reduced
        else:
            letters.extend([SWAP, step, SWAP])
            f2 = reduced
    final = affine_from_map(PolyMap(2, (f1, f2)))
    if final is None:
        raise NotAutomorphism("remaining affine part is singular")
    letters.append(final)
    word = normalize(letters)
    if amalgam_eval(word) != f:
        raise RuntimeError("internal error: decomposition does not recompose to the input")
    return word


def letter_is_equivariant(letter, k):
    return is_mu_d_equivariant(letter.as_map(), k)


def equivariant_decompose(f, k):
    """Decomposition of a mu_k-equivariant plane automorphism into mu_k-equivariant letters."""
    if not is_mu_d_equivariant(f, k):
        raise NotEquivariant(f"map is not mu_{k}-equivariant")
    word = jvdk_decompose(f)
    for letter in word.letters:
        if not letter_is_equivariant(letter, k):
            raise RuntimeError(f"internal error: letter {letter} is not mu_{k}-equivariant")
    return word


def special_jacobian(f):
    """j(f) = det Jac(f); a Fraction when constant, otherwise a Polynomial.

    A quotient automorphism is measured through its rational lift, so the
    value is determined up to a root of unity.
    """
    if not isinstance(f, PolyMap):
        from affauto.equilift import lift

        f = lift(f).rational_map
    det = jacobian(f).det
    return det.constant_value() if det.is_constant() else det
