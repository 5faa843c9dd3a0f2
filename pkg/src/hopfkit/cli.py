"""Command line front end.

Every command prints a short human-readable report followed by a flat
key=value block, so both people and scripts can consume the output.
Identical invocations produce byte-identical output.

Exit codes: 0 for success, 1 when the mathematics fails (an axiom
violation, a non-confluent system, an obstruction verdict), 2 for
usage, parse, and input errors.
"""

import argparse
import os
import sys

from . import grading, hopf, pbw, presfile, subspace
from .errors import (
    AxiomFailure,
    BudgetExceeded,
    HopfkitError,
    NoCoproductAttached,
    NotConfluent,
    NotHopfAdmissible,
    ParseError,
    PresentationError,
    QSkewRejected,
    UnknownBuiltin,
    WindowTooSmall,
)

MATH_EXIT = 1
USAGE_EXIT = 2


class _UsageError(Exception):
    pass


class Report:
    """Human lines first, then the key=value block, all deterministic."""

    def __init__(self):
        self.lines = []
        self.values = []

    def say(self, text=""):
        self.lines.append(text)

    def set(self, key, value):
        self.values.append((key, _fmt(value)))

    def emit(self, stream=None):
        stream = stream or sys.stdout
        for line in self.lines:
            print(line, file=stream)
        if self.values:
            print(file=stream)
            for key, value in self.values:
                print(f"{key}={value}", file=stream)


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "unknown"
    if isinstance(value, (tuple, list)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


# ----- presentation loading --------------------------------------------------


def _add_source(sub, multi=False):
    sub.add_argument(
        "--builtin",
        action="append",
        default=[],
        metavar="NAME",
        help="builtin presentation " + "/".join(pbw.BUILTIN_NAMES),
    )
    sub.add_argument(
        "--file",
        action="append",
        default=[],
        metavar="PATH",
        help="presentation file",
    )


def _load_sources(args, multi=False):
    targets = []
    for name in args.builtin:
        targets.append((name, pbw.builtin(name)))
    for path in args.file:
        p = presfile.load_presentation(path)
        targets.append((p.name or os.path.basename(path), p))
    if not targets:
        raise _UsageError("give a presentation with --builtin or --file")
    if not multi and len(targets) > 1:
        raise _UsageError("this command takes exactly one presentation")
    return targets


def _bound(args, p):
    if getattr(args, "weight_bound", None) is not None:
        if args.weight_bound < 0:
            raise _UsageError("--weight-bound must be nonnegative")
        return args.weight_bound
    return 2 * p.max_weight + 2


# ----- commands ---------------------------------------------------------------


def cmd_check(args):
    label, p = _load_sources(args)[0]
    rep = Report()
    if args.corrupt:
        if not p.has_coproduct:
            raise _UsageError("--corrupt needs a presentation with a coproduct")
        if "d" not in p.alphabet.names:
            raise _UsageError("--corrupt drop-dd-correction needs a generator named d")
        p = hopf.drop_correction(p, "d")
        rep.say(f"checking {label} with delta(d) dropped")
    else:
        rep.say(f"checking {label}")
    v = p.validation
    rep.say(
        f"validation: {v.classification}, {v.relation_count} relations "
        f"({v.nontrivial_relations} nontrivial)"
    )
    for message in v.messages:
        rep.say(f"  {message}")
    rep.set("check.classification", v.classification)
    conf = p.confluence()
    rep.set("check.triples", conf.triples_checked)
    rep.set("check.confluent", conf.ok)
    if not conf.ok:
        triple, residual = conf.residuals[0]
        rep.say(
            f"confluence: FAIL on overlap {triple}; residual {residual}"
        )
        rep.set("check.ok", False)
        rep.emit()
        return MATH_EXIT
    rep.say(f"confluence: {conf.triples_checked} overlap triples agree")
    if not p.has_coproduct:
        rep.say("coproduct: none attached, algebra checks only")
        rep.set("check.coproduct", "none")
        rep.set("check.ok", True)
        rep.emit()
        return 0
    bound = _bound(args, p)
    compat = hopf.check_relation_compatibility(p)
    rep.set("compat.relations", len(compat.checks))
    rep.set("compat.ok", compat.ok)
    if not compat.ok:
        rep.say("coproduct compatibility: FAIL")
        for chk in compat.failures:
            rep.say(f"  {chk.label}: residual {chk.residual}")
        rep.set("check.ok", False)
        rep.emit()
        return MATH_EXIT
    rep.say(f"coproduct respects all {len(compat.checks)} relations")
    coassoc = hopf.check_coassociativity(p, seed=args.seed)
    rep.set("coassoc.generators", len(coassoc.generators))
    rep.set("coassoc.sampled", len(coassoc.monomials))
    rep.set("coassoc.ok", coassoc.ok)
    if not coassoc.ok:
        rep.say("coassociativity: FAIL")
        for gen in coassoc.generators:
            if not gen.ok:
                rep.say(f"  generator {gen.name}: {gen.left} != {gen.right}")
        for mono, ok in coassoc.monomials:
            if not ok:
                rep.say(f"  monomial {p.render_mono(mono)}")
        rep.set("check.ok", False)
        rep.emit()
        return MATH_EXIT
    rep.say(
        f"coassociativity holds on generators and {len(coassoc.monomials)} "
        f"sampled monomials (seed {args.seed})"
    )
    counit = hopf.check_counit(p)
    rep.set("counit.ok", counit.ok)
    if not counit.ok:
        rep.say("counit laws: FAIL")
        for lab, residual in counit.relation_checks:
            if residual:
                rep.say(f"  {lab}: epsilon residual {residual}")
        rep.set("check.ok", False)
        rep.emit()
        return MATH_EXIT
    rep.say("counit laws hold")
    try:
        table = hopf.solve_antipode(p, bound)
    except AxiomFailure as failure:
        rep.say(f"antipode axiom ({failure.side}): FAIL on {failure.monomial}")
        rep.say(f"  residual {failure.residual}")
        rep.set("antipode.ok", False)
        rep.set("check.ok", False)
        rep.emit()
        return MATH_EXIT
    rep.say(
        f"antipode solved; two-sided axiom verified on "
        f"{table.monomials_checked} monomials up to weight {bound}"
    )
    rep.set("antipode.ok", True)
    rep.set("antipode.checked", table.monomials_checked)
    involutive = hopf.check_involutive_antipode(p, table)
    rep.set("involutive.ok", involutive.ok)
    if not involutive.ok:
        mono, twice = involutive.failures[0]
        rep.say(f"antipode square: FAIL, S(S({p.render_mono(mono)})) = {twice}")
        rep.set("check.ok", False)
        rep.emit()
        return MATH_EXIT
    rep.say(f"antipode is an involution on {involutive.checked} monomials")
    rep.set("check.ok", True)
    rep.emit()
    return 0


def cmd_nf(args):
    label, p = _load_sources(args)[0]
    p.require_confluent()
    elem = presfile.parse_expression(args.expr, p.alphabet)
    result = p.normal_form(elem)
    rep = Report()
    rep.say(f"normal form in {label}: {result}")
    rep.set("nf.result", result)
    rep.set("nf.terms", len(result.terms))
    rep.set("nf.weight", result.max_weight())
    rep.emit()
    return 0


def cmd_hilbert(args):
    label, p = _load_sources(args)[0]
    series = grading.hilbert_series(p, args.degree)
    rep = Report()
    rep.say(f"series of {label}: {series}")
    rep.set("hilbert.series", series.coeffs)
    try:
        exponents = grading.factor_series(series)
    except NotHopfAdmissible as stop:
        rep.say(
            f"factorization: impossible, negative multiplicity at degree "
            f"{stop.degree}"
        )
        rep.set("hilbert.factorable", False)
        rep.set("hilbert.obstruction_degree", stop.degree)
        rep.emit()
        return MATH_EXIT
    rep.say(f"factorization: {exponents.product_form()}")
    rep.set("hilbert.exponents", exponents.entries)
    gk = grading.gk_dimension(exponents)
    if gk is None:
        rep.say("growth: not settled inside this degree range")
    else:
        rep.say(f"growth: polynomial of dimension {gk}")
    rep.set("hilbert.gk", gk)
    rep.emit()
    return 0


def cmd_truncate(args):
    label, p = _load_sources(args)[0]
    bound = _bound(args, p)
    trunc = subspace.truncation_algebra(p, args.power, bound)
    center = trunc.center()
    rep = Report()
    rep.say(
        f"truncation of {label} at power {args.power}, window {bound}: "
        f"dimension {trunc.dim}"
    )
    rep.say("basis: " + " ".join(p.render_mono(m) for m in trunc.basis))
    rep.say(f"center dimension: {center.dim}")
    rep.say("center basis: " + "; ".join(str(v) for v in center.basis))
    rep.set("truncation.dim", trunc.dim)
    rep.set("truncation.basis", tuple(p.render_mono(m) for m in trunc.basis))
    rep.set("center.dim", center.dim)
    rep.emit()
    return 0


def cmd_antipode(args):
    label, p = _load_sources(args)[0]
    bound = _bound(args, p)
    table = hopf.solve_antipode(p, bound)
    rep = Report()
    rep.say(f"antipode of {label}, verified up to weight {bound}:")
    for gi, name in enumerate(p.alphabet.names):
        rep.say(f"  S({name}) = {table.by_gen[gi]}")
        rep.set(f"antipode.{name}", table.by_gen[gi])
    rep.set("antipode.checked", table.monomials_checked)
    rep.emit()
    return 0


def cmd_primitives(args):
    label, p = _load_sources(args)[0]
    bound = _bound(args, p)
    space = subspace.primitive_space(p, bound)
    rep = Report()
    rep.say(f"primitives of {label} up to weight {bound}: dimension {space.dim}")
    for b in space.basis():
        rep.say(f"  {b}")
    rep.set("primitives.dim", space.dim)
    rep.set("primitives.basis", tuple(str(b) for b in space.basis()))
    rep.emit()
    return 0


def cmd_coradical(args):
    label, p = _load_sources(args)[0]
    bound = _bound(args, p)
    levels = subspace.coradical_levels(p, bound)
    rep = Report()
    rep.say(
        f"coradical filtration of {label} up to weight {bound}: "
        + " < ".join(str(d) for d in levels.dims)
    )
    rep.set("coradical.dims", levels.dims)
    rep.set("coradical.levels", levels.levels)
    rep.emit()
    return 0


def cmd_signature(args):
    label, p = _load_sources(args)[0]
    bound = _bound(args, p)
    sig = subspace.signature(p, bound)
    rep = Report()
    rep.say(f"signature of {label} up to weight {bound}: {sig}")
    if sig.complete:
        rep.say(f"complete: all {sig.gk} expected entries found")
    elif sig.gk is None:
        rep.say("completeness unknown: growth dimension not settled")
    else:
        rep.say(f"incomplete: {len(sig.entries)} of {sig.gk} entries inside window")
    rep.set("signature.entries", sig.entries)
    rep.set("signature.complete", sig.complete)
    rep.set("signature.gk", sig.gk)
    rep.emit()
    return 0


def cmd_gr(args):
    label, p = _load_sources(args)[0]
    graded = grading.associated_graded(p)
    rep = Report()
    if graded is p:
        rep.say(f"{label} is already weight-graded; unchanged")
        rep.set("gr.changed", False)
    else:
        rep.say(f"associated graded of {label}:")
        for line in presfile.dump_presentation(graded).splitlines():
            rep.say(f"  {line}")
        rep.set("gr.changed", True)
    rep.set("gr.classification", graded.validation.classification)
    rep.emit()
    return 0


def cmd_obstruct(args):
    label, p = _load_sources(args)[0]
    verdict = grading.hopf_obstruction(p, args.degree)
    rep = Report()
    rep.say(f"{label}: {verdict.message}")
    rep.set("obstruct.code", verdict.code)
    rep.set("obstruct.obstructed", verdict.obstructed)
    rep.emit()
    return MATH_EXIT if verdict.obstructed else 0


def cmd_compare_centers(args):
    targets = _load_sources(args, multi=True)
    if len(targets) < 2:
        raise _UsageError("compare-centers needs at least two presentations")
    bounds = args.weight_bound or []
    if len(bounds) == 0:
        bounds = [2 * p.max_weight + 2 for _, p in targets]
    elif len(bounds) == 1:
        bounds = bounds * len(targets)
    elif len(bounds) != len(targets):
        raise _UsageError(
            "give one --weight-bound, or exactly one per presentation"
        )
    rep = Report()
    dims = []
    for (label, p), bound in zip(targets, bounds):
        trunc = subspace.truncation_algebra(p, args.power, bound)
        center = trunc.center()
        dims.append(center.dim)
        rep.say(
            f"{label}: center dimension {center.dim} "
            f"(truncation dimension {trunc.dim}, power {args.power}, "
            f"window {bound})"
        )
    separated = len(set(dims)) > 1
    if separated:
        rep.say("the truncated centers separate these presentations")
    else:
        rep.say("the truncated centers do not separate these presentations")
    for (label, _), dim in zip(targets, dims):
        rep.set(f"center.{label}", dim)
    rep.set("compare.separated", separated)
    rep.emit()
    return 0


def cmd_dump_builtin(args):
    if args.file or len(args.builtin) != 1:
        raise _UsageError("dump-builtin takes exactly one --builtin")
    p = pbw.builtin(args.builtin[0])
    sys.stdout.write(presfile.dump_presentation(p))
    return 0


# ----- parser -----------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hopfkit",
        description="exact computations in finitely presented algebras "
        "with straightening relations and optional coproducts",
    )
    sub = parser.add_subparsers(dest="command")

    def add(name, func, help_text, source_multi=False):
        sp = sub.add_parser(name, help=help_text)
        _add_source(sp, multi=source_multi)
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "run the full axiom pipeline")
    sp.add_argument("--weight-bound", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0, help="coassociativity sample seed")
    sp.add_argument(
        "--corrupt",
        choices=["drop-dd-correction"],
        default=None,
        help="damage the coproduct before checking",
    )

    sp = add("nf", cmd_nf, "normal form of an expression")
    sp.add_argument("--expr", required=True, help="free expression, e.g. 'b a a'")

    sp = add("hilbert", cmd_hilbert, "weight series and its factorization")
    sp.add_argument("--degree", type=int, default=10)

    sp = add("truncate", cmd_truncate, "quotient by a power of the augmentation ideal")
    sp.add_argument("--power", type=int, required=True)
    sp.add_argument("--weight-bound", type=int, default=None)

    sp = add("antipode", cmd_antipode, "solve and verify the antipode")
    sp.add_argument("--weight-bound", type=int, default=None)

    sp = add("primitives", cmd_primitives, "basis of the primitive elements")
    sp.add_argument("--weight-bound", type=int, default=None)

    sp = add("coradical", cmd_coradical, "coradical filtration dimensions")
    sp.add_argument("--weight-bound", type=int, default=None)

    sp = add("signature", cmd_signature, "level multiset of non-product growth")
    sp.add_argument("--weight-bound", type=int, default=None)

    add("gr", cmd_gr, "associated weight-graded presentation")

    sp = add("obstruct", cmd_obstruct, "check for structural obstructions")
    sp.add_argument("--degree", type=int, default=None)

    sp = add(
        "compare-centers",
        cmd_compare_centers,
        "compare truncated center dimensions",
        source_multi=True,
    )
    sp.add_argument("--power", type=int, required=True)
    sp.add_argument("--weight-bound", type=int, action="append", default=None)

    add("dump-builtin", cmd_dump_builtin, "print a builtin in the file format")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        return args.func(args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except (ParseError, UnknownBuiltin, WindowTooSmall, PresentationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except NoCoproductAttached as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except (
        NotConfluent,
        AxiomFailure,
        NotHopfAdmissible,
        QSkewRejected,
        BudgetExceeded,
    ) as err:
        print(f"failure: {err}", file=sys.stderr)
        return MATH_EXIT
    except HopfkitError as err:
        print(f"failure: {err}", file=sys.stderr)
        return MATH_EXIT


if __name__ == "__main__":
    sys.exit(main())
