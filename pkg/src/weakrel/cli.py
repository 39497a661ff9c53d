"""Command-line front end.

Exit codes: 0 success, 1 a verification found a counterexample, 2 invalid
input, 3 a resource cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from .algebra import (build_algebra, generate_subalgebra, hasse_dot, is_cyclic, product_context,
                      verify_infl_axioms, verify_product_iso)
from .chains import build_chain, direct_reduct_check, verify_sugihara_axioms
from .context import DEFAULT_CAP, RepContext, load_context, zero_mask
from .errors import (ContractError, EmptyRelationError, ResourceError, StructuralError,
                     ValidationError, WitnessSearchError)
from .finite import find_embedding, verify_homomorphism
from .report import VerificationReport, _jsonable
from .relcore import mask_pairs

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


class Result:
    """What a command produced: a payload, optional text/dot renderings and an exit code."""

    def __init__(self, payload: Any, text: str | None = None, dot: str | None = None, code: int = EXIT_OK):
        self.payload = payload
        self.text = text
        self.dot = dot
        self.code = code


def _report_result(report: VerificationReport) -> Result:
    return Result(report.to_dict(), report.to_text(), code=EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE)


# -- chain ---------------------------------------------------------------------

def cmd_chain(args) -> Result:
    chain = build_chain(args.size)
    if args.action == "gen":
        d = chain.to_dict()
        d["trivial"] = chain.trivial
        return Result(d, chain.cayley_text())
    report = verify_sugihara_axioms(chain)
    neg, one = chain.ops["neg"], chain.consts["one"]
    fixed = bool(neg[one] == one)
    report.info["negation_fixes_unit"] = fixed
    rec = report.check("unit-fixed-point", "∼1 = 1 exactly for odd chains")
    rec.tick(fixed == (args.size % 2 == 1), size=args.size, fixed=fixed)
    return _report_result(report)


# -- contexts and algebras ---------------------------------------------------

def cmd_ctx(args) -> Result:
    ctx = load_context(args.file)
    payload = {"valid": True, "context": ctx.to_spec(), "size": ctx.n,
               "alpha_is_identity": ctx.is_alpha_identity}
    text = f"valid context on {ctx.n} elements" + ("" if ctx.is_alpha_identity else " (alpha is not the identity)")
    return Result(payload, text)


def _algebra(args):
    ctx = load_context(args.file)
    return ctx, build_algebra(ctx, cap=args.cap)


def cmd_algebra(args) -> Result:
    if args.action == "product":
        return _product(args)
    ctx, alg = _algebra(args)
    if args.action == "build":
        d = alg.describe(tables=args.tables)
        lines = [f"{alg.size} elements, unit {alg.label(alg.identity)}, zero {alg.label(alg.zero)}"]
        for e in d["elements"]:
            lines.append(f"  {e['id']}: {{{', '.join('(' + x + ',' + y + ')' for x, y in e['pairs'])}}}")
        if args.tables:
            lines.append("")
            lines.append(alg.table_view().cayley_text())
        return Result(d, "\n".join(lines), hasse_dot(alg))
    if args.action == "verify":
        return _report_result(verify_infl_axioms(alg))
    cyclic, witness = is_cyclic(alg)
    payload: dict[str, Any] = {"cyclic": cyclic, "alpha_is_identity": ctx.is_alpha_identity}
    text = "cyclic"
    if not cyclic:
        payload["witness"] = {"element": alg.label(witness), "tilde": alg.label(int(alg.neg[witness])),
                              "minus": alg.label(int(alg.mneg[witness]))}
        w = payload["witness"]
        text = f"non-cyclic: witness {w['element']} has ~ = {w['tilde']} but - = {w['minus']}"
    return Result(payload, text)


def _product(args) -> Result:
    ctxs = [load_context(f) for f in args.files]
    joint = product_context(ctxs)
    jalg = build_algebra(joint, cap=args.cap)
    if not args.check_iso:
        return Result(jalg.describe(), f"product algebra with {jalg.size} elements", hasse_dot(jalg, "product"))
    factors = [build_algebra(c, cap=args.cap) for c in ctxs]
    return _report_result(verify_product_iso(jalg, factors))


_KEYWORDS = ("empty", "leq", "zero", "top")


def parse_generator(token: str, ctx: RepContext) -> int:
    """A keyword, or pairs ``a:b+c:d`` (the least upset containing them)."""
    token = token.strip()
    if token == "empty":
        return 0
    if token == "leq":
        return ctx.leq_mask
    if token == "zero":
        return zero_mask(ctx)
    if token == "top":
        return ctx.e_mask
    bits = 0
    for part in token.split("+"):
        a, sep, b = part.partition(":")
        if not sep:
            raise ValidationError("generators", f"expected one of {_KEYWORDS} or pairs a:b+c:d, got {token!r}")
        x, y = ctx.carrier.index(a.strip()), ctx.carrier.index(b.strip())
        pos = x * ctx.n + y
        if not ctx.e_mask >> pos & 1:
            raise ValidationError("generators", f"pair ({a},{b}) is outside E")
        bits |= ctx.up_masks[pos]
    return bits


def cmd_subalg(args) -> Result:
    ctx = load_context(args.file)
    gens = [parse_generator(t, ctx) for t in args.generators.split(",") if t.strip()]
    rels = generate_subalgebra(ctx, gens, cap=args.cap)
    lab = ctx.labels
    width = max(1, (ctx.n * ctx.n + 3) // 4)
    elements = [{"id": f"{r.bits:0{width}x}", "pairs": [[lab[x], lab[y]] for x, y in mask_pairs(r.bits, ctx.n)]}
                for r in rels]
    payload = {"size": len(rels), "elements": elements}
    text = [f"subalgebra with {len(rels)} elements"]
    text += [f"  {e['id']}: {{{', '.join('(' + x + ',' + y + ')' for x, y in e['pairs'])}}}" for e in elements]
    alg = build_algebra(ctx, cap=args.cap)
    reduct = direct_reduct_check(alg, rels)
    payload["direct_reduct"] = reduct.to_dict()
    if reduct.info.get("sugihara"):
        text.append(f"direct reduct is a Sugihara monoid with {len(rels)} elements")
    return Result(payload, "\n".join(text), code=EXIT_OK if reduct.passed else EXIT_COUNTEREXAMPLE)


def cmd_embed(args) -> Result:
    ctx = load_context(args.ctx)
    alg = build_algebra(ctx, cap=args.cap)
    chain = build_chain(args.chain)
    hom = find_embedding(chain, alg, budget=args.budget)
    if hom is None:
        return Result({"found": False, "chain": chain.name}, f"no embedding of {chain.name}",
                      code=EXIT_COUNTEREXAMPLE)
    check = verify_homomorphism(hom)
    lab = ctx.labels
    images = {}
    for a, t in enumerate(hom.mapping):
        bits = alg.masks[t]
        images[chain.labels[a]] = {"id": alg.label(t),
                                   "pairs": [[lab[x], lab[y]] for x, y in mask_pairs(bits, ctx.n)]}
    payload = {"found": True, "chain": chain.name, "map": images, "check": check.to_dict()}
    text = [f"{chain.name} embeds:"]
    text += [f"  {a} -> {v['id']} {{{', '.join('(' + x + ',' + y + ')' for x, y in v['pairs'])}}}"
             for a, v in images.items()]
    return Result(payload, "\n".join(text), code=EXIT_OK if check.passed else EXIT_COUNTEREXAMPLE)


# -- rational representations -------------------------------------------------

def cmd_rep(args) -> Result:
    from .rational import (find_witness, member, parse_family, parse_mix, parse_pair, verify_composition,
                           verify_embedding, verify_structure)
    from .rational.points import format_pair

    if args.action == "member":
        rel = parse_family(args.family, args.n)
        pair = parse_pair(args.pair)
        ok = member(rel, pair)
        return Result({"family": str(rel), "n": args.n, "pair": format_pair(pair), "member": ok},
                      f"{format_pair(pair)} {'∈' if ok else '∉'} {rel}")
    if args.action == "witness":
        pair = parse_pair(args.pair)
        z = find_witness(args.i, args.j, pair, args.n, kind=args.kind)
        return Result({"i": args.i, "j": args.j, "n": args.n, "pair": format_pair(pair), "witness": repr(z)},
                      f"witness {z!r}")
    strategy = parse_mix(args.mix) if args.mix else None
    kind = args.kind
    report = VerificationReport(f"rep {kind} n={args.n}")
    if kind == "even" and args.n < 1:
        raise ValidationError("n", "even chains need n >= 1")
    if args.n >= 1:
        report.extend(verify_composition(args.n, args.trials, args.seed, kind=kind, strategy=strategy),
                      prefix="composition")
        if kind == "odd":
            report.extend(verify_structure(args.n, args.trials, args.seed, strategy=strategy), prefix="structure")
    report.extend(verify_embedding(kind, args.n, args.trials, args.seed, strategy=strategy), prefix="embedding")
    return _report_result(report)


# -- plumbing -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    p.add_argument("--format", choices=("json", "text", "dot"), default=argparse.SUPPRESS,
                   help="output format (default json)")
    p.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="weakrel", description="Weakening relations and Sugihara monoids.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("json", "text", "dot"), default="json")
    parser.add_argument("--out", default="-")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chain", parents=[common], help="abstract Sugihara chains")
    p.add_argument("action", choices=("gen", "verify"))
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("ctx", parents=[common], help="context files")
    p.add_argument("action", choices=("validate",))
    p.add_argument("file")
    p.set_defaults(func=cmd_ctx)

    p = sub.add_parser("algebra", parents=[common], help="the algebra of weakening relations of a context")
    p.add_argument("action", choices=("build", "verify", "cyclic", "product"))
    p.add_argument("files", nargs="+", metavar="file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--emit", choices=("dot",), help="shorthand for --format dot")
    p.add_argument("--tables", action="store_true", help="include operation tables")
    p.add_argument("--check-iso", action="store_true", help="verify the product decomposition")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("subalg", parents=[common], help="generated subalgebras")
    p.add_argument("file")
    p.add_argument("--generators", required=True,
                   help="comma list of empty|leq|zero|top or pairs a:b+c:d")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_subalg)

    p = sub.add_parser("embed", parents=[common], help="embed a Sugihara chain into a context's algebra")
    p.add_argument("action", choices=("find",))
    p.add_argument("--chain", type=int, required=True)
    p.add_argument("--ctx", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("rep", parents=[common], help="rational representations of Sugihara chains")
    p.add_argument("kind", choices=("odd", "even", "member", "witness"))
    p.add_argument("action", nargs="?", choices=("verify",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--mix", help="sampling mix, e.g. independent=0.4,shared-prefix=0.3,identical=0.2,reuse=0.1")
    p.add_argument("--family", help="FAMILY:INDEX, e.g. OddR:-1")
    p.add_argument("--pair", help='e.g. "(0,1/2)+ , (1,0)-"')
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--rep-kind", dest="rep_kind", choices=("odd", "even"), default="odd",
                   help="family for `rep witness`")
    p.set_defaults(func=cmd_rep)
    return parser


def _normalize(args, parser) -> None:
    if args.command == "algebra":
        if args.action == "product":
            if len(args.files) != 2:
                parser.error("algebra product takes exactly two context files")
        elif len(args.files) != 1:
            parser.error(f"algebra {args.action} takes one context file")
        else:
            args.file = args.files[0]
        if args.emit:
            args.format = "dot"
    if args.command == "rep":
        if args.kind in ("odd", "even"):
            if args.action != "verify":
                parser.error("usage: rep odd|even verify --n K")
        elif args.kind == "member":
            if not args.family or not args.pair:
                parser.error("rep member needs --family and --pair")
            args.action = "member"
        else:
            if args.i is None or args.j is None or not args.pair:
                parser.error("rep witness needs --i, --j and --pair")
            args.action = "witness"
            args.kind = args.rep_kind


def render(result: Result, fmt: str) -> str:
    if fmt == "dot":
        if result.dot is None:
            raise ValidationError("format", "this command has no DOT output")
        return result.dot
    if fmt == "text" and result.text is not None:
        return result.text.rstrip("\n") + "\n"
    return json.dumps(_jsonable(result.payload), indent=2, ensure_ascii=False) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        _normalize(args, parser)
    except SystemExit:
        return EXIT_INVALID
    try:
        result = args.func(args)
        out = render(result, args.format)
    except ResourceError as exc:
        print(f"weakrel: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except WitnessSearchError as exc:
        print(f"weakrel: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (ValidationError, StructuralError, ContractError, EmptyRelationError) as exc:
        print(f"weakrel: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"weakrel: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out == "-":
        sys.stdout.write(out)
    else:
        with open(args.out, "w") as fh:
            fh.write(out)
    if result.code == EXIT_COUNTEREXAMPLE:
        print("weakrel: counterexample found", file=sys.stderr)
    return result.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
