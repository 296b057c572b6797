"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 parse or usage error, 3 bound
exceeded.  ``--json`` output is canonical (sorted keys, no whitespace).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from affauto.errors import AffautoError, ParseError
from affauto.exactpoly import Polynomial, dumps, poly_parse


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc


def _poly_from(obj, n):
    if isinstance(obj, str):
        return poly_parse(obj, n)
    return Polynomial.from_json(obj)


def _map_arg(args, text, n=None):
    """A PolyMap from ``--in`` JSON or a comma-separated string."""
    from affauto.endo import AutoWord, PolyMap

    if text is None:
        if not args.infile:
            raise ParseError("expected a map argument or --in <path>")
        obj = _read_json(args.infile)
        if isinstance(obj, dict) and "letters" in obj:
            return AutoWord.from_json(obj)
        return PolyMap.from_json(obj)
    n = n or args.n or text.count(",") + 1
    return PolyMap.parse(text, n)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _gens(text):
    try:
        out = []
        for part in text.split(","):
            d, k = part.split(":")
            out.append((int(d), int(k)))
        return out
    except ValueError as exc:
        raise ParseError(f"generators must look like 4:2,6:1, got {text!r}") from exc


def _emit(args, obj, text=None):
    if args.json or text is None:
        print(dumps(obj))
    else:
        print(text)


# -- poly ------------------------------------------------------------------------


def cmd_poly(args):
    from affauto.exactpoly import poly_dth_root

    n = args.n or 1
    p = poly_parse(args.expr, n)
    if args.action == "parse":
        _emit(args, p.to_json(), p.to_str())
    elif args.action == "member":
        from affauto.quotientring import VeroneseRing, ring_membership

        if not args.d:
            raise ParseError("poly member needs --d")
        ok = ring_membership(p, VeroneseRing(n, args.d, args.s or 1))
        _emit(args, {"member": ok}, str(ok).lower())
    else:
        if not args.d:
            raise ParseError("poly root needs --d")
        q = poly_dth_root(p, args.d)
        _emit(args, q.to_json(), q.to_str())


# -- auto ------------------------------------------------------------------------


def cmd_auto(args):
    from affauto.endo import AutoWord, compose, invert, jacobian, word_eval

    if args.action == "compose":
        if len(args.maps) != 2:
            raise ParseError("auto compose needs two maps")
        f, g = (_map_arg(args, m) for m in args.maps)
        h = compose(f, g)
        _emit(args, h.to_json(), h.to_str())
        return
    f = _map_arg(args, args.maps[0] if args.maps else None)
    if args.action == "invert":
        g = invert(f)
        _emit(args, g.to_json(), g.to_str())
    elif args.action == "jacobian":
        f = word_eval(f) if isinstance(f, AutoWord) else f
        det = jacobian(f).det
        _emit(args, det.to_json(), det.to_str())
    else:
        from affauto.planedecomp import equivariant_decompose, jvdk_decompose

        f = word_eval(f) if isinstance(f, AutoWord) else f
        word = equivariant_decompose(f, args.d) if args.d else jvdk_decompose(f)
        text = " o ".join(_letter_text(x) for x in word.letters) or "identity"
        _emit(args, word.to_json(), text)


def _letter_text(letter):
    return letter.as_map().to_str(["x", "y"])


# -- equi ------------------------------------------------------------------------


def _quotient_from_json(obj, d, n):
    from affauto.equilift import QuotientAuto

    if "images" in obj:
        d = int(obj.get("d", d or 0))
        n = int(obj.get("n", n or 0))
        obj = obj["images"]
    if not d or not n:
        raise ParseError("quotient automorphism needs d and n")
    images = {}
    for key, val in obj.items():
        mono = poly_parse(key, n)
        if len(mono) != 1 or mono.leading_coefficient() != 1:
            raise ParseError(f"image key {key!r} is not a monic monomial")
        (e, _), = mono.items()
        if sum(e) != d:
            raise ParseError(f"image key {key!r} is not a degree-{d} monomial")
        images[e] = _poly_from(val, n)
    return QuotientAuto(d, n, images)


def cmd_equi(args):
    from affauto.equilift import descend, is_mu_d_equivariant, lift, phi_d_diagonal_kernel

    if args.action == "kernel":
        ks = phi_d_diagonal_kernel(args.d, args.n or 2)
        _emit(args, [list(m.exponents) for m in ks], " ".join(str(m.exponents) for m in ks))
        return
    if not args.d:
        raise ParseError(f"equi {args.action} needs --d")
    if args.action == "lift":
        path = args.images or args.infile
        if not path:
            raise ParseError("equi lift needs --images <path>")
        q = _quotient_from_json(_read_json(path), args.d, args.n)
        res = lift(q)
        text = f"{res.rational_map.to_str()} twisted by xi^{list(res.twist.exponents)}; ambiguity mu_{q.d} scalars"
        _emit(args, res.to_json(), text)
        return
    f = _map_arg(args, args.maps[0] if args.maps else None)
    if args.action == "check":
        from affauto.endo import AutoWord, word_eval

        fm = word_eval(f) if isinstance(f, AutoWord) else f
        ok = is_mu_d_equivariant(fm, args.d)
        _emit(args, {"equivariant": ok}, str(ok).lower())
    else:
        q = descend(f, args.d)
        text = "\n".join(
            f"{Polynomial.monomial(g).to_str()} -> {q.images[g].to_str()}" for g in sorted(q.images, reverse=True)
        )
        _emit(args, q.to_json(), text)


# -- lnd ------------------------------------------------------------------------


def _derivation(args, text):
    from affauto.lnd import Derivation

    if text is None:
        if not args.infile:
            raise ParseError("expected derivation coefficients or --in <path>")
        from affauto.lnd import certify

        return certify(Derivation.from_json(_read_json(args.infile)))
    return Derivation.parse(text, args.n or text.count(",") + 1)


def cmd_lnd(args):
    from affauto import lnd

    if args.action == "modify":
        if len(args.items) != 2:
            raise ParseError("lnd modify needs <f> <coefficients>")
        D = _derivation(args, args.items[1])
        f = poly_parse(args.items[0], D.nvars)
        out = lnd.modify(f, D)
        _emit(args, out.to_json(), str(out))
        return
    D = _derivation(args, args.items[0] if args.items else None)
    if args.action == "check":
        v = lnd.is_locally_nilpotent(D, args.bound or lnd.DEFAULT_BOUND)
        _emit(args, v.to_json(), v.kind)
    elif args.action == "exp":
        t = None if args.t is None else _fraction(args.t)
        m = lnd.exp_action(D, t)
        names = [f"x{i + 1}" for i in range(D.nvars)] + ["t"]
        _emit(args, m.to_json(), m.to_str(names))
    else:
        basis = lnd.kernel_basis_up_to_degree(D, args.bound if args.bound is not None else 2)
        _emit(args, [p.to_json() for p in basis], "\n".join(p.to_str() for p in basis))


# -- weights, semigroup ---------------------------------------------------------


def cmd_weights(args):
    from affauto.roots import weight_set_quotient

    if not args.d or args.bound is None:
        raise ParseError("weights needs --d and --bound")
    ws = weight_set_quotient(args.d, args.n or 2, args.bound)
    out = [list(w) if isinstance(w, tuple) else w for w in ws]
    _emit(args, out)


def cmd_semigroup(args):
    from affauto import quotientring as qr

    if args.action == "recognize" and args.members:
        try:
            members = [int(m) for m in args.members.split(",")]
        except ValueError as exc:
            raise ParseError(f"members must be integers: {args.members!r}") from exc
        omega = qr.semigroup_from_members(members, args.bound or max(members))
    elif args.gens:
        gens = _gens(args.gens)
        if args.action == "saturate":
            d, s = qr.semigroup_saturate(gens, args.bound)
            _emit(args, {"d": d, "s": s})
            return
        omega = qr.semigroup_closure(gens, args.bound)
    else:
        raise ParseError("semigroup needs --gens (or --members for recognize)")
    if args.action == "closure":
        _emit(args, omega.to_json())
    else:
        res = qr.recognize_Asdn(omega)
        _emit(args, {"d": res[0], "s": res[1]} if res else {"result": "NotOfForm"})


# -- surface -------------------------------------------------------------------


def cmd_surface(args):
    from affauto import danielewski as dw

    names = ["x", "y", "z"]
    if args.action == "quotient":
        if not args.matrix:
            raise ParseError("surface quotient needs --matrix a,b,c,d")
        vals = [_fraction(v) for v in args.matrix.split(",")]
        if len(vals) != 4:
            raise ParseError("--matrix needs four entries")
        raw, pt = dw.sl2t_quotient([vals[:2], vals[2:]])
        obj = {"point": [str(v) for v in raw], "symmetric": pt.to_json()}
        _emit(args, obj, f"({', '.join(map(str, raw))}) -> ({', '.join(pt.to_json())})")
        return
    if args.action == "weights":
        if args.bound is None:
            raise ParseError("surface weights needs --bound")
        _emit(args, dw.weight_set_surface(args.tau, args.bound))
        return
    P = poly_parse((args.P or "0").replace("z", "x3"), 3)
    if args.action == "identity":
        ok = dw.conjugation_identity_check(P)
        _emit(args, {"holds": ok}, str(ok).lower())
        return
    phi = dw.jt_auto(_fraction(args.alpha or "1"), P)
    if args.action == "jt":
        _emit(args, phi.to_json(), phi.map.to_str(names))
    else:
        ok = dw.tau_commutes(phi)
        _emit(args, {"commutes": ok}, str(ok).lower())


# -- verify ----------------------------------------------------------------------


def cmd_verify(args):
    from affauto import verify

    results = verify.run(args.suite, args.seed if args.seed is not None else verify.DEFAULT_SEED)
    if args.json:
        print(dumps([r.to_json() for r in results]))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


# -- parser ----------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--d", type=int, help="order of mu_d")
    common.add_argument("--s", type=int, help="threshold of A^s_{d,n}")
    common.add_argument("--bound", type=int, help="enumeration or degree bound")
    common.add_argument("--seed", type=int, help="seed for randomized drivers")
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("--in", dest="infile", help="read the input object from a JSON file")

    parser = argparse.ArgumentParser(prog="affauto", description="Exact tools for automorphisms of A^n and A^n/mu_d.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="parse polynomials, d-th roots, ring membership")
    p.add_argument("action", choices=["parse", "root", "member"])
    p.add_argument("expr")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("auto", parents=[common], help="compose, invert, Jacobian, plane decomposition")
    p.add_argument("action", choices=["compose", "invert", "jacobian", "decompose"])
    p.add_argument("maps", nargs="*", help='maps as "f1, f2, ..."')
    p.set_defaults(func=cmd_auto)

    p = sub.add_parser("equi", parents=[common], help="mu_d-equivariance, descent, lifting")
    p.add_argument("action", choices=["check", "descend", "lift", "kernel"])
    p.add_argument("maps", nargs="*")
    p.add_argument("--images", help="JSON file with generator images")
    p.set_defaults(func=cmd_equi)

    p = sub.add_parser("lnd", parents=[common], help="locally nilpotent derivations")
    p.add_argument("action", choices=["check", "exp", "modify", "kernel"])
    p.add_argument("items", nargs="*", help='coefficients as "c1, c2, ..." (modify: <f> <coefficients>)')
    p.add_argument("--t", help="rational time parameter for exp (default: formal t)")
    p.set_defaults(func=cmd_lnd)

    p = sub.add_parser("weights", parents=[common], help="weight set of root subgroups of A_{d,n}")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("semigroup", parents=[common], help="degree semigroups")
    p.add_argument("action", choices=["closure", "saturate", "recognize"])
    p.add_argument("--gens", help="generator pairs d:k, e.g. 4:2,6:1")
    p.add_argument("--members", help="explicit members for recognize, e.g. 0,6,8,10")
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("surface", parents=[common], help="the quadric surface xz + y^2 = 1")
    p.add_argument("action", choices=["quotient", "jt", "tau", "weights", "identity"])
    p.add_argument("--matrix", help="SL2 matrix a,b,c,d")
    p.add_argument("--alpha", help="J_T scalar alpha")
    p.add_argument("--P", help="J_T polynomial in z")
    p.add_argument("--tau", action="store_true", help="restrict to tau-commuting root subgroups")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify", parents=[common], help="run acceptance drivers")
    p.add_argument("suite", nargs="?", default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # list positionals may also follow the options
        target = next((k for k in ("maps", "items") if isinstance(getattr(args, k, None), list)), None)
        if extra and (target is None or any(a.startswith("--") for a in extra)):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        if extra:
            getattr(args, target).extend(extra)
    except SystemExit as exc:
        return exc.code
    try:
        code = args.func(args)
    except AffautoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
