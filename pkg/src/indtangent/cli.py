"""Command-line front end.

Every verb reads JSON documents (algebras, polynomial maps, diagrams), calls
one library operation and prints a deterministic report.  Exit status is 0
when the computation succeeded and every check passed, 1 when a check failed
(the witness is printed) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .algebra import PresentedAlgebra, VariableMismatch, make_hom
from .cdc import PolyMap, cdc_D, check_cd_axioms, check_tangent_axioms, is_dlinear
from .ideals import UnsupportedIdealError, ideal_member
from .ind import (
    DiagramError,
    IndObject,
    check_ind_tangent_axioms,
    diagram_from_document,
    diff_object_check,
    formal_spf,
    ind_apply_functor,
)
from .report import Report
from .symcore import ParseError, RigError
from .weil import weil_morphism_check, weil_parse
from .zariski import check_zariski_axioms, second_tangent_algebra, structure_maps, tangent_algebra

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (OSError, json.JSONDecodeError, ParseError, RigError, VariableMismatch,
                DiagramError, UnsupportedIdealError, KeyError, TypeError, ValueError)


class InputError(Exception):
    pass


class Output:
    """Collects lines (text mode) or records (records mode) in order."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def _emit(self, text: str) -> None:
        self.stream.write(text + "\n")

    def comment(self, text: str) -> None:
        if self.fmt == "text":
            self._emit(f"# {text}")
        else:
            self._emit(json.dumps({"comment": text}, ensure_ascii=False))

    def value(self, name: str, value) -> None:
        if self.fmt == "text":
            if isinstance(value, (dict, list)):
                value = json.dumps(value, ensure_ascii=False)
            self._emit(f"{name}: {value}")
        else:
            self._emit(json.dumps({"name": name, "value": value}, ensure_ascii=False))

    def check(self, name: str, passed: bool, witness: Optional[str] = None) -> None:
        if self.fmt == "text":
            self._emit(f"PASS {name}" if passed else f"FAIL {name}: {witness or 'no witness'}")
        else:
            self._emit(json.dumps({"name": name, "status": "PASS" if passed else "FAIL",
                                   "witness": None if passed else witness}, ensure_ascii=False))

    def report(self, report: Report) -> int:
        for note in report.notes:
            self.comment(note)
        if self.fmt == "text" and report.results:
            width = max(len(r.name) for r in report.results)
            for r in report.results:
                status = "PASS" if r.passed else "FAIL"
                tail = "" if r.passed else f"  {r.witness or 'no witness'}"
                self._emit(f"{status} {r.name.ljust(width)}{tail}".rstrip())
        else:
            for r in report.results:
                self.check(r.name, r.passed, r.witness)
        return EXIT_OK if report.ok else EXIT_FAIL


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _algebra(path: str) -> PresentedAlgebra:
    return PresentedAlgebra.from_document(_load(path))


def _polymap(path: str) -> PolyMap:
    return PolyMap.from_document(_load(path))


def _diagram(path: str, truncate: bool = False) -> IndObject:
    return diagram_from_document(_load(path), truncate)


# ---------- verbs ----------

def cmd_tangent(args, out: Output) -> int:
    B = _algebra(args.algebra)
    TB = tangent_algebra(B, "d", args.truncate_jets).total
    out.value("tangent", TB.to_document())
    return EXIT_OK


def cmd_tangent2(args, out: Output) -> int:
    B = _algebra(args.algebra)
    out.value("second tangent", second_tangent_algebra(B, args.truncate_jets).to_document())
    return EXIT_OK


def cmd_structure_maps(args, out: Output) -> int:
    S = structure_maps(_algebra(args.algebra), args.truncate_jets)
    out.value("B", S.base.to_document())
    out.value("T(B)", S.tangent.to_document())
    out.value("T2(B)", S.pair.to_document())
    out.value("T(T(B))", S.second.to_document())
    for name, hom in S.as_dict().items():
        out.value(name, {g: hom.target.format(p) for g, p in hom.image_items})
    return EXIT_OK


def cmd_check_zariski(args, out: Output) -> int:
    B = _algebra(args.algebra)
    out.comment(f"algebra {B}{' with truncated jets' if args.truncate_jets else ''}")
    return out.report(check_zariski_axioms(B, truncate=args.truncate_jets))


def cmd_differentiate(args, out: Output) -> int:
    f = _polymap(args.map)
    out.value("D", cdc_D(f).to_document(d_block=True))
    return EXIT_OK


def cmd_dlinear(args, out: Output) -> int:
    f = _polymap(args.map)
    ok = is_dlinear(f)
    out.check("D-linear", ok, f"D(f) = ({', '.join(cdc_D(f).format(d_block=True))})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_cd(args, out: Output) -> int:
    report = check_cd_axioms(samples=args.samples, seed=args.seed, rig=args.rig,
                             max_arity=args.max_arity, max_degree=args.max_degree)
    return out.report(report)


def cmd_check_tangent(args, out: Output) -> int:
    report = check_tangent_axioms(args.arity, samples=args.samples, seed=args.seed, rig=args.rig)
    return out.report(report)


def cmd_weil(args, out: Output) -> int:
    W = weil_parse(args.object)
    out.value(str(W), W.realized.to_document())
    return EXIT_OK


def cmd_weil_hom(args, out: Output) -> int:
    src, dst = weil_parse(args.source).realized, weil_parse(args.target).realized
    images = {}
    for item in args.images:
        name, sep, poly = item.partition("=")
        if not sep:
            raise InputError(f"image {item!r} is not of the form generator=polynomial")
        images[name.strip()] = poly.strip()
    phi = make_hom(src, dst, images)
    ok = weil_morphism_check(phi)
    witness = None
    if not ok:
        bad = [g for g, p in phi.image_items if p.constant_term() != 0]
        witness = (f"image of {bad[0]} has a nonzero constant term" if bad
                   else "a relation is not preserved")
    out.check(f"Weil morphism {args.source} -> {args.target} ({phi.describe()})", ok, witness)
    return EXIT_OK if ok else EXIT_FAIL


def _print_diagram(X: IndObject, out: Output, label: str) -> None:
    base = X.base
    for o in X.index.objects:
        obj = X.objects[o]
        out.value(f"{label} object {o}", obj.to_document() if hasattr(obj, "to_document") else obj)
    for a in X.index.arrows:
        s, t = X.index.ends(a)
        out.value(f"{label} arrow {a} ({s} -> {t})", base.format_morphism(X.arrows[a]))


def cmd_ind_tangent(args, out: Output) -> int:
    X = _diagram(args.diagram, args.truncate_jets)
    _print_diagram(ind_apply_functor("T", X), out, "T")
    return EXIT_OK


def cmd_diff_object(args, out: Output) -> int:
    X = _diagram(args.diagram)
    ok, witness = diff_object_check(X)
    out.check("differential object (every transition is D-linear)", ok,
              None if ok else f"arrow {witness} is not D-linear")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_ind(args, out: Output) -> int:
    X = _diagram(args.diagram, args.truncate_jets)
    return out.report(check_ind_tangent_axioms(X, levelwise=not args.no_levelwise))


def cmd_spf(args, out: Output) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    X, TX = formal_spf(args.n, args.truncate_jets)
    out.comment(f"formal Spf Q[[t]] truncated at level {args.n}; "
                "scheme arrows Spec Q[t]/(t^n) -> Spec Q[t]/(t^(n+1)) are stored as ring quotients")
    for o in X.index.objects:
        out.value(f"level {o}", X.objects[o].to_document())
        out.value(f"level {o} tangent", TX.objects[o].to_document())
    for a in X.index.arrows:
        s, t = X.index.ends(a)
        out.value(f"arrow {a} ({s} -> {t})", X.arrows[a].describe())
        out.value(f"arrow {a} ({s} -> {t}) tangent", TX.arrows[a].describe())
    return EXIT_OK


def cmd_member(args, out: Output) -> int:
    B = _algebra(args.algebra)
    f = B.parse(args.polynomial)
    ok = ideal_member(f, B.ideal)
    out.check(f"{B.format(f)} lies in the ideal of {B}", ok,
              f"normal form {B.format(B.normal_form(f))}" if not ok and B.rig.has_negatives
              else "not a member")
    return EXIT_OK if ok else EXIT_FAIL


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indtangent",
        description="Tangent structures on polynomial maps, presented algebras and Ind-objects.")
    parser.add_argument("--format", choices=("text", "records"), default="text",
                        help="records emits one JSON object per line")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    def truncation(p):
        p.add_argument("--truncate-jets", action="store_true",
                       help="impose the square-zero relations on jet variables")

    p = verb("tangent", cmd_tangent, "Zariski tangent algebra Sym(Ω¹) of an algebra file")
    p.add_argument("algebra")
    truncation(p)
    p = verb("tangent2", cmd_tangent2, "second tangent algebra T(T(B))")
    p.add_argument("algebra")
    truncation(p)
    p = verb("structure-maps", cmd_structure_maps, "print q, zeta, add, v, gamma for an algebra")
    p.add_argument("algebra")
    truncation(p)
    p = verb("check-zariski", cmd_check_zariski, "check the tangent axioms for an algebra")
    p.add_argument("algebra")
    truncation(p)
    p = verb("differentiate", cmd_differentiate, "differential combinator D of a polynomial map")
    p.add_argument("map")
    p = verb("dlinear", cmd_dlinear, "decide D-linearity of a polynomial map")
    p.add_argument("map")
    p = verb("check-cd", cmd_check_cd, "check CD1-CD7 on seeded random polynomial maps")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rig", choices=("Q", "Z", "N"), default="Q")
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=4)
    p = verb("check-tangent", cmd_check_tangent, "check the tangent axioms at one arity")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rig", choices=("Q", "Z", "N"), default="Q")
    p = verb("weil", cmd_weil, "presentation of a Weil object such as W[1,2]")
    p.add_argument("object")
    p = verb("weil-hom", cmd_weil_hom, "validate a Weil morphism given by generator images")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("images", nargs="*", metavar="GEN=POLY")
    p = verb("ind-tangent", cmd_ind_tangent, "apply the tangent functor levelwise to a diagram")
    p.add_argument("diagram")
    truncation(p)
    p = verb("diff-object", cmd_diff_object, "decide whether an APoly diagram is a differential object")
    p.add_argument("diagram")
    p = verb("check-ind", cmd_check_ind, "check the Ind tangent equations on a diagram")
    p.add_argument("diagram")
    p.add_argument("--no-levelwise", action="store_true",
                   help="skip the full base-category suite at each level")
    truncation(p)
    p = verb("spf", cmd_spf, "formal Spf Q[[t]] truncated at level N and its tangent")
    p.add_argument("--n", type=int, required=True)
    truncation(p)
    p = verb("member", cmd_member, "ideal membership of a polynomial in an algebra's relations")
    p.add_argument("algebra")
    p.add_argument("polynomial")
    return parser


def run(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.format, stream)
    try:
        return args.func(args, out)
    except (InputError, *INPUT_ERRORS) as exc:
        err = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"indtangent {args.verb}: input error: {err}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
