"""Command-line entry point.

Every subcommand prints one JSON document. Exit codes: 0 success or suite
passed, 1 a property violation was found, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import audit, colorer, derive, embed, qo, upseq

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
SUITES = ("properness", "oracle", "identities", "linearization", "well-order")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def load_spec(arg: str) -> qo.QoSpec:
    """A spec file path, or ``zoo:NAME`` for a built-in spec."""
    if arg.startswith("zoo:"):
        z = audit.zoo()
        z["ABPQ"] = audit.crossing_labels()
        name = arg[4:]
        if name not in z:
            raise InputError(f"unknown zoo spec {name!r}; known: {sorted(z)}")
        return z[name]
    try:
        with open(arg, encoding="utf-8") as fh:
            return qo.parse_spec(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON: {exc}") from None


def _need(args, *names):
    for nm in names:
        if getattr(args, nm) is None:
            raise InputError(f"--{nm.replace('_', '-')} is required")


def cmd_check(args):
    _need(args, "spec", "left", "right")
    spec = load_spec(args.spec)
    x = qo.parse_element(spec, _json_arg(args.left, "--left"))
    y = qo.parse_element(spec, _json_arg(args.right, "--right"))
    out = {"leq": spec.leq(x, y)}
    k = spec.kind
    if k in qo.SEQ_LIKE:
        out["witness"] = embed.le_higman(spec.of, x, y)[1]
    elif k == "tree1":
        out["witness"] = embed.le_tree_inj(spec.of, x, y)[1]
    elif k == "treem":
        out["witness"] = embed.le_tree_mono(spec.of, x, y)[1]
    try:
        out["oracle"] = embed.brute_force_leq(spec, x, y)
    except embed.OracleGuardError:
        out["oracle"] = None
    return out, EXIT_OK if out["oracle"] in (None, out["leq"]) else EXIT_VIOLATION


def cmd_bad(args):
    _need(args, "spec", "x")
    spec = load_spec(args.spec)
    X = upseq.parse_up(spec, _json_arg(args.x, "--x"))
    return {"x": upseq.to_literal(spec, X), "bad": upseq.is_bad(spec, X)}, EXIT_OK


def cmd_gen_bad(args):
    _need(args, "spec")
    spec = load_spec(args.spec)
    xs = audit.gen_bad(spec, args.seed, args.count, args.max_pre, args.max_per,
                       args.bound)
    return {"seed": args.seed, "count": len(xs),
            "samples": [upseq.to_literal(spec, X) for X in xs]}, EXIT_OK


def cmd_color(args):
    _need(args, "spec", "x")
    spec = load_spec(args.spec)
    X = upseq.parse_up(spec, _json_arg(args.x, "--x"))
    if not upseq.is_bad(spec, X):
        raise InputError("sequence is not bad")
    res = colorer.color(spec, X)
    return {"x": upseq.to_literal(spec, X), **res.to_json()}, EXIT_OK


def derive_report(spec, X) -> dict:
    """Derivation chain, profile, d_infty and witness of X in B."""
    prof = derive.deriv_profile(spec, X)
    chain = derive.derivation_chain(spec, X)
    W, M = derive.d_infty_detail(spec, X)
    out = {
        "x": upseq.to_literal(spec, X),
        "profile": {"m": upseq.to_literal(None, prof.m),
                    "n": upseq.to_literal(None, prof.n)},
        "chain": [upseq.to_literal(spec, Y) for Y in chain],
        "max_derivability": len(chain) - 1,
        "M": upseq.to_literal(None, M),
        "d_infty": upseq.to_literal(spec, W),
        "d_infty_stable": derive.in_stab(spec, W),
        "witness": None,
    }
    try:
        out["witness"] = upseq.to_literal(spec.of, derive.witness_extract(spec, W))
    except (derive.SideConditionError, derive.NotInBError):
        pass
    a, b = colorer.color(spec, X), colorer.color(spec, X.shift())
    out["color"] = a.to_json()
    out["color_shift"] = b.to_json()
    return out


def cmd_derive(args):
    _need(args, "spec", "x")
    spec = load_spec(args.spec)
    if spec.kind not in qo.SEQ_LIKE:
        raise InputError("derive needs a sequence spec")
    X = upseq.parse_up(spec, _json_arg(args.x, "--x"))
    if not derive.in_B(spec, X):
        raise InputError("sequence must be bad with nondecreasing lengths")
    out = derive_report(spec, X)
    if args.figure:
        from . import plotting
        prof = derive.deriv_profile(spec, X)
        _, M = derive.d_infty_detail(spec, X)
        plotting.render_derivation(derive.derivation_chain(spec, X), prof.m, prof.n,
                                   M, args.figure)
        out["figure"] = args.figure
    return out, EXIT_OK


def run_suite(suite, spec, seed=0, count=100, bound=None, max_pre=2, max_per=4,
              order="tree1"):
    if suite == "properness":
        return audit.audit_properness(spec, seed, count, max_pre, max_per, bound or 4)
    if suite == "oracle":
        return audit.audit_oracle_equiv(spec, bound or 4)
    if suite == "identities":
        if spec.kind not in qo.SEQ_LIKE:
            raise InputError("identities suite needs a sequence spec")
        return audit.audit_identities(spec, seed, count, max_pre, max_per, bound or 4)
    if suite == "linearization":
        if spec.kind != "finite":
            raise InputError("linearization suite takes the label spec")
        return audit.audit_linearization(spec, bound or 4, order=order)
    if suite == "well-order":
        return audit.audit_wellorder(spec, max_pre, max_per, bound or 1)
    raise InputError(f"unknown suite {suite!r}; choose from {SUITES}")


def cmd_audit(args):
    _need(args, "spec", "suite")
    spec = load_spec(args.spec)
    rep = run_suite(args.suite, spec, args.seed, args.count, args.bound,
                    args.max_pre, args.max_per, args.order)
    out = rep.to_dict(timing=args.timing)
    if args.figure:
        from . import plotting
        plotting.render_report(rep, args.figure)
        out["figure"] = args.figure
    return out, EXIT_OK if rep.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shiftcolor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, *flags):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        sp.add_argument("--spec", help="spec JSON file, or zoo:NAME")
        for f in flags:
            if f == "elem":
                sp.add_argument("--left")
                sp.add_argument("--right")
            elif f == "x":
                sp.add_argument("--x", help="UP literal {\"pre\": [...], \"per\": [...]}")
            elif f == "gen":
                sp.add_argument("--seed", type=int, default=0)
                sp.add_argument("--count", type=int, default=100)
                sp.add_argument("--bound", type=int, default=None)
                sp.add_argument("--max-pre", type=int, default=2)
                sp.add_argument("--max-per", type=int, default=4)
            elif f == "figure":
                sp.add_argument("--figure", help="write a PNG figure to this path")
        return sp

    add("check", cmd_check, "elem")
    add("bad", cmd_bad, "x")
    g = add("gen-bad", cmd_gen_bad, "gen")
    g.set_defaults(bound=4)
    add("color", cmd_color, "x")
    add("derive", cmd_derive, "x", "figure")
    a = add("audit", cmd_audit, "gen", "figure")
    a.add_argument("--suite", choices=SUITES)
    a.add_argument("--order", choices=("tree1", "treem"), default="tree1")
    a.add_argument("--timing", action="store_true", help="include elapsed time")
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "fn", None):
            raise InputError("a subcommand is required")
        out, code = args.fn(args)
    except (InputError, qo.SpecError, qo.ShapeError, colorer.NotBadError,
            derive.NotInBError) as exc:
        print(json.dumps({"error": str(exc)}))
        return EXIT_INPUT
    print(json.dumps(out, sort_keys=True, indent=2))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
