"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse error, 3 invalid dga, 4 negative
mathematical verdict, 5 feasibility guard.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import corpus
from .augment import AugmentationError, enumerate_augmentations, parse_augmentation, serialize_augmentation
from .classify import MAX_AUGMENTATIONS, FeasibilityError, audit_report, classify
from .dga import DgaParseError, dga_parse, dga_validate
from .gfield import FieldError, parse_field_decl
from .homcx import (
    ChainLawError, bilinearized_cohomology_dims, cocycle_test, m1_hom0, parse_hom0, poincare_summary,
)
from .homotopy import (
    MODES, HomotopyError, find_dilated_homotopy, is_dilated_homotopy, parse_witness,
    serialize_witness,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INVALID, EXIT_NEGATIVE, EXIT_GUARD = range(6)
JSON_SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _read(path_or_text: str) -> str:
    if os.path.exists(path_or_text):
        with open(path_or_text, encoding="utf-8") as fh:
            return fh.read()
    if "=" in path_or_text:
        return path_or_text
    raise _Fail(EXIT_USAGE, f"no such file: {path_or_text}")


def _load_dga(args, require_valid=True):
    field = None
    if args.field:
        try:
            field = parse_field_decl(args.field)
        except FieldError as exc:
            raise _Fail(EXIT_USAGE, str(exc))
    try:
        dga = dga_parse(_read(args.dga), field=field)
    except DgaParseError as exc:
        raise _Fail(EXIT_PARSE, f"{args.dga}: {exc}")
    if require_valid:
        issues = dga_validate(dga)
        if issues:
            raise _Fail(EXIT_INVALID, "invalid dga:\n" + "\n".join(f"  {i}" for i in issues))
    return dga


def _load_aug(dga, source):
    try:
        return parse_augmentation(dga, _read(source))
    except AugmentationError as exc:
        raise _Fail(EXIT_PARSE, f"{source}: {exc}")


def cmd_validate(args, out):
    dga = _load_dga(args, require_valid=False)
    issues = dga_validate(dga)
    if not issues:
        out.write("valid\n")
        return EXIT_OK
    out.write("invalid\n")
    for issue in issues:
        out.write(f"  {issue}\n")
    return EXIT_INVALID


def cmd_augs(args, out):
    dga = _load_dga(args)
    augs = enumerate_augmentations(dga, limit=args.limit)
    if len(augs) > args.limit:
        raise _Fail(EXIT_GUARD, f"more than {args.limit} augmentations")
    for a in augs:
        out.write(serialize_augmentation(a) + "\n")
    return EXIT_OK


def cmd_iso(args, out):
    dga = _load_dga(args)
    e1, e2 = _load_aug(dga, args.e1), _load_aug(dga, args.e2)
    h = find_dilated_homotopy(dga, e1, e2, mode=args.mode)
    if h is None:
        out.write("NOT-ISO\n")
        return EXIT_NEGATIVE
    out.write("ISO\n")
    out.write(serialize_witness(dga, h))
    return EXIT_OK


def cmd_verify(args, out):
    dga = _load_dga(args)
    e1, e2 = _load_aug(dga, args.e1), _load_aug(dga, args.e2)
    try:
        h = parse_witness(dga, _read(args.witness))
        chk = is_dilated_homotopy(dga, e1, e2, h)
    except HomotopyError as exc:
        raise _Fail(EXIT_PARSE, f"{args.witness}: {exc}")
    if chk:
        out.write("VALID\n")
        return EXIT_OK
    out.write(f"INVALID: {chk.reason}" + (f" at {chk.generator}" if chk.generator else "") + "\n")
    return EXIT_NEGATIVE


def _classification_json(c):
    classes = []
    for k, members in enumerate(c.classes):
        classes.append({
            "id": k + 1,
            "size": len(members),
            "representative": str(c.augmentations[members[0]]),
            "members": [str(c.augmentations[i]) for i in members],
            "dilation_only": c.dilation_only[k],
            "bch": {str(q): d for q, d in sorted(c.invariants_table[k].items())},
        })
    a = c.audits
    return {
        "schema": JSON_SCHEMA,
        "field": str(c.dga.field),
        "augmentations": len(c.augmentations),
        "classes": classes,
        "audit": {
            "full": a.full,
            "symmetry": [list(p) for p in a.symmetry],
            "transitivity": [list(p) for p in a.transitivity],
            "invariance": [[cls, m] for cls, m, _, _ in a.invariance],
        },
    }


def cmd_classes(args, out):
    dga = _load_dga(args)
    try:
        c = classify(dga, mode=args.mode, audit=args.audit, limit=args.limit)
    except FeasibilityError as exc:
        raise _Fail(EXIT_GUARD, str(exc))
    if args.json:
        json.dump(_classification_json(c), out, indent=2)
        out.write("\n")
    else:
        out.write(f"{'class':>5}  {'size':>4}  {'dilation-only':<13}  {'bch':<24}  representative\n")
        for k, members in enumerate(c.classes):
            dims = ", ".join(f"{q}:{d}" for q, d in sorted(c.invariants_table[k].items()))
            out.write(f"{k + 1:>5}  {len(members):>4}  {'yes' if c.dilation_only[k] else 'no':<13}  "
                      f"{'{' + dims + '}':<24}  {c.augmentations[members[0]]}\n")
        if args.audit:
            out.write(audit_report(c) + "\n")
    return EXIT_OK if c.audits.clean else EXIT_NEGATIVE


def cmd_bch(args, out):
    dga = _load_dga(args)
    e1, e2 = _load_aug(dga, args.e1), _load_aug(dga, args.e2)
    try:
        dims = bilinearized_cohomology_dims(dga, e1, e2)
    except ChainLawError as exc:
        raise _Fail(EXIT_INVALID, f"chain law violated: {exc}")
    for q, d in sorted(dims.items()):
        out.write(f"degree {q}: {d}\n")
    out.write(f"total: {sum(dims.values())}  poincare: {poincare_summary(dims)}\n")
    return EXIT_OK


def cmd_cocycle(args, out):
    dga = _load_dga(args)
    e1, e2 = _load_aug(dga, args.e1), _load_aug(dga, args.e2)
    try:
        a = parse_hom0(dga, _read(args.elem))
    except HomotopyError as exc:
        raise _Fail(EXIT_PARSE, f"{args.elem}: {exc}")
    if cocycle_test(dga, e1, e2, a):
        out.write("COCYCLE\n")
        return EXIT_OK
    m1 = m1_hom0(dga, e1, e2, a)
    out.write("NOT-COCYCLE\n")
    for name, c in sorted(m1.loop_part.items()):
        out.write(f"  m1 coefficient of {name}^v = {c}\n")
    for name, c in sorted(m1.chord_part.items()):
        out.write(f"  m1 coefficient of {name}^v = {c}\n")
    return EXIT_NEGATIVE


def cmd_corpus(args, out):
    directory = args.dir or corpus.CORPUS_DIR
    if args.action == "regen":
        try:
            corpus.regen(directory)
        except corpus.CorpusMismatch as exc:
            out.write(f"MISMATCH\n{exc}\n")
            return EXIT_NEGATIVE
        out.write(f"regenerated {len(corpus.entry_ids(directory))} entries\n")
        return EXIT_OK
    problems = corpus.check(directory)
    for p in problems:
        out.write(p + "\n")
    out.write("OK\n" if not problems else "MISMATCH\n")
    return EXIT_OK if not problems else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", metavar="2^m", help="override the field declared in the dga file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")

    p = _Parser(prog="augiso", description="Augmentations of link-graded dgas over GF(2^m) up to isomorphism.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, augs=False):
        sp = sub.add_parser(name, help=help, parents=[common])
        if name != "corpus":
            sp.add_argument("dga", help="dga file")
        if augs:
            sp.add_argument("--e1", required=True, help="augmentation file (or inline name=value text)")
            sp.add_argument("--e2", required=True, help="augmentation file (or inline name=value text)")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check the dga invariants")
    sp = add("augs", cmd_augs, "enumerate augmentations")
    sp.add_argument("--limit", type=int, default=MAX_AUGMENTATIONS)
    sp = add("iso", cmd_iso, "decide isomorphism and print a witness", augs=True)
    sp.add_argument("--mode", choices=MODES, default="full")
    sp = add("verify", cmd_verify, "check a witness file", augs=True)
    sp.add_argument("--witness", required=True)
    sp = add("classes", cmd_classes, "classify augmentations up to isomorphism")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--audit", action="store_true", help="decide every ordered pair")
    sp.add_argument("--mode", choices=MODES, default="full")
    sp.add_argument("--limit", type=int, default=MAX_AUGMENTATIONS)
    add("bch", cmd_bch, "bilinearized cohomology dimensions", augs=True)
    sp = add("cocycle", cmd_cocycle, "test whether a Hom^0 element is a cocycle", augs=True)
    sp.add_argument("--elem", required=True)
    sp = add("corpus", cmd_corpus, "check or regenerate the corpus goldens")
    sp.add_argument("action", choices=("check", "regen"))
    sp.add_argument("--dir", help="corpus directory (default: bundled corpus)")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    try:
        return args.func(args, out)
    except _Fail as exc:
        sys.stderr.write(str(exc) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
