"""Command-line front end: reproducible pipelines over the library modules.

Exit codes: 0 success, 1 mathematically negative answer (no epimorphism, no
candidate target, identity fails), 2 input error, 3 resource limit hit.
Output is deterministic: identical invocations print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import braids, cosets, curves, orbifold
from .abelian import AbelianGroup, abelianization
from .charvar import CharVarError, charvar_finite_torus, charvar_rank_one
from .cosets import CosetOverflow, InvalidSubgroup, SubgroupSpec
from .fpgroups import ParseError, Presentation, parse_presentation, print_presentation, tietze_simplify
from .nilpotent import lcs_quotients

OK, NEGATIVE, INPUT_ERROR, RESOURCE_LIMIT = 0, 1, 2, 3

PRESENTATION_PRESETS = (
    "degtyarev-affine", "degtyarev-affine-xt", "degtyarev-projective",
    "p1-2-5-10", "p1-2-2-5-5", "c-2-3", "free2", "genus2",
)
MONODROMY_PRESETS = ("degtyarev-table1", "degtyarev-newbraid")


def preset_text(name: str, suffix: str) -> str:
    path = resources.files("meridian.presets") / f"{name}{suffix}"
    try:
        return path.read_text()
    except FileNotFoundError:
        raise KeyError(f"unknown preset {name!r}") from None


def load_monodromy(name_or_path: str) -> braids.MonodromyFile:
    if name_or_path in MONODROMY_PRESETS:
        return braids.parse_monodromy(preset_text(name_or_path, ".braid"))
    with open(name_or_path, encoding="utf-8") as handle:
        return braids.parse_monodromy(handle.read())


def load_presentation(args) -> Presentation:
    if getattr(args, "orbifold", None):
        sig = orbifold.parse_signature(args.orbifold)
        return orbifold.orbifold_presentation(sig)
    if getattr(args, "preset", None):
        return parse_presentation(preset_text(args.preset, ".grp"))
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as handle:
            return parse_presentation(handle.read())
    raise SystemExit2("no presentation given: pass FILE, --preset or --orbifold")


class SystemExit2(Exception):
    """Input errors that should exit with code 2."""


def default_max_cosets(args) -> int:
    if getattr(args, "max_cosets", None):
        return args.max_cosets
    env = os.environ.get("MERIDIAN_MAX_COSETS")
    return int(env) if env else 10 ** 6


def parse_subgroup_spec(text: str, pres: Presentation) -> SubgroupSpec:
    """Subgroup specs: 'kernel Z/10 x->5 y->2' or 'gens x*y y^2'."""
    text = text.strip().rstrip(";")
    if text.startswith("kernel"):
        parts = text.split()
        moduli = []
        for token in parts[1:]:
            if "->" in token:
                break
            for factor in token.split("x"):
                factor = factor.strip()
                if factor.startswith("Z/"):
                    moduli.append(int(factor[2:]))
                elif factor:
                    raise SystemExit2(f"bad kernel target component {factor!r}")
        arrow_part = [t for t in parts[1:] if "->" in t]
        images = {name: (0,) * len(moduli) for name in pres.generators}
        for token in arrow_part:
            name, _, value = token.partition("->")
            if name not in pres.generators:
                raise SystemExit2(f"unknown generator {name!r} in kernel spec")
            coords = tuple(int(v) for v in value.split(","))
            if len(coords) != len(moduli):
                raise SystemExit2("kernel image has wrong number of coordinates")
            images[name] = coords
        return SubgroupSpec.kernel_of(
            moduli, [images[name] for name in pres.generators])
    if text.startswith("gens"):
        body = text[len("gens"):].strip()
        words = []
        for chunk in body.split():
            helper = parse_presentation(
                "gens " + " ".join(pres.generators) + "; rel " + chunk + ";")
            words.append(helper.relators[0] if helper.relators else ())
        return SubgroupSpec.from_words(words)
    if text in ("trivial", ""):
        return SubgroupSpec.trivial()
    raise SystemExit2(f"cannot parse subgroup spec {text!r}")


def parse_abelian(text: str) -> AbelianGroup:
    """Parse 'Z^2 x Z/3 x Z/6' style descriptions."""
    text = text.strip()
    if text in ("1", "0", "trivial"):
        return AbelianGroup(0, ())
    rank = 0
    torsion = []
    for part in text.split("x"):
        part = part.strip()
        if part == "Z":
            rank += 1
        elif part.startswith("Z^"):
            rank += int(part[2:])
        elif part.startswith("Z/"):
            torsion.append(int(part[2:]))
        else:
            raise SystemExit2(f"cannot parse abelian group component {part!r}")
    return AbelianGroup(rank, tuple(sorted(torsion)))


def emit(args, text_lines, doc):
    if args.json:
        doc = {"schema": 1, **doc}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# --- subcommands ---------------------------------------------------------------


def cmd_zvk(args) -> int:
    mono = load_monodromy(args.monodromy)
    data = mono.monodromy
    if not args.projective:
        data = braids.MonodromyData(data.strands, data.braids, None)
    pres = braids.zvk_presentation(data, args.reduction)
    if args.simplify:
        pres = tietze_simplify(pres).presentation
    emit(args, [print_presentation(pres).rstrip("\n")], {
        "command": "zvk",
        "generators": list(pres.generators),
        "relators": [pres.spell(r) for r in pres.relators],
    })
    return OK


def cmd_abelianize(args) -> int:
    pres = load_presentation(args)
    ab = abelianization(pres)
    emit(args, [str(ab)], {
        "command": "abelianize",
        "rank": ab.rank,
        "torsion": list(ab.torsion),
        "display": str(ab),
    })
    return OK


def _charvar_lines(pres: Presentation):
    ab = abelianization(pres)
    if ab.rank == 0:
        torus = charvar_finite_torus(pres)
        lines = [f"character torus: {torus.group} (all characters of"
                 f" order dividing {torus.modulus})"]
        strata = {}
        k = 1
        while True:
            stratum = torus.stratum(k)
            if not stratum:
                lines.append(f"V{k} = {{}}")
                strata[k] = []
                break
            lines.append(f"V{k} = " + torus.describe(k))
            strata[k] = [list(chi.exponents) for chi in stratum]
            k += 1
        return lines, {"mode": "finite-torus", "modulus": torus.modulus,
                       "strata": {str(k): v for k, v in strata.items()}}
    if ab.rank == 1 and not ab.torsion:
        variety = charvar_rank_one(pres)
        lines = ["character torus: C*"]
        doc = {}
        for k in range(1, len(variety.strata) + 1):
            s = variety.stratum(k)
            lines.append(f"V{k} = " + s.describe())
            doc[str(k)] = {
                "full": s.full,
                "cyclotomic": {str(n): m for n, m in sorted(s.cyclotomic.items())},
                "residual": str(s.residual),
                "includes_one": s.includes_one,
            }
            if s.is_empty():
                break
        return lines, {"mode": "rank-one", "strata": doc}
    raise CharVarError("mixed free and torsion homology: only per-character"
                       " twisted dimensions are available")


def cmd_charvar(args) -> int:
    pres = load_presentation(args)
    lines, doc = _charvar_lines(pres)
    emit(args, lines, {"command": "charvar", **doc})
    return OK


def cmd_order(args) -> int:
    pres = load_presentation(args)
    spec = parse_subgroup_spec(args.subgroup, pres) if args.subgroup \
        else SubgroupSpec.trivial()
    table = cosets.todd_coxeter(pres, spec, default_max_cosets(args))
    label = "order" if spec.is_trivial_subgroup() else "index"
    emit(args, [f"{label} {table.index}"], {
        "command": "order", "kind": label, "value": table.index,
    })
    return OK


def cmd_center(args) -> int:
    pres = load_presentation(args)
    table = cosets.todd_coxeter(pres, SubgroupSpec.trivial(),
                                default_max_cosets(args))
    _, center, invariants = cosets.regular_rep_and_center(table)
    emit(args, [f"order {table.index}",
                f"center of order {len(center)}: {invariants}"], {
        "command": "center",
        "order": table.index,
        "center_order": len(center),
        "center": str(invariants),
    })
    return OK


def cmd_subgroup(args) -> int:
    pres = load_presentation(args)
    spec = parse_subgroup_spec(args.spec, pres)
    table = cosets.todd_coxeter(pres, spec, default_max_cosets(args))
    sub = cosets.reidemeister_schreier(pres, table,
                                       tietze_budget=args.tietze_budget)
    ab = abelianization(sub)
    emit(args, [f"index {table.index}",
                print_presentation(sub).rstrip("\n"),
                f"abelianization {ab}"], {
        "command": "subgroup",
        "index": table.index,
        "generators": list(sub.generators),
        "relators": [sub.spell(r) for r in sub.relators],
        "abelianization": str(ab),
    })
    return OK


def cmd_lcs(args) -> int:
    pres = load_presentation(args)
    graded = lcs_quotients(pres, args.max_class)
    lines = []
    doc = {}
    for d in range(1, args.max_class + 1):
        g = graded.degree(d)
        lines.append(f"gamma_{d}/gamma_{d + 1} = {g}")
        doc[str(d)] = {"rank": g.rank, "torsion": list(g.torsion)}
    emit(args, lines, {"command": "lcs", "degrees": doc})
    return OK


def cmd_orbifold(args) -> int:
    sig = orbifold.parse_signature(args.orbifold)
    pres = orbifold.orbifold_presentation(sig)
    cls = orbifold.classify(sig)
    emit(args, [f"signature {sig}",
                f"classification: {cls}",
                print_presentation(pres).rstrip("\n")], {
        "command": "orbifold",
        "signature": str(sig),
        "kind": cls.kind,
        "chi": str(cls.chi),
        "order": cls.order,
        "generators": list(pres.generators),
        "relators": [pres.spell(r) for r in pres.relators],
    })
    return OK


def cmd_obstruct(args) -> int:
    if args.finite is not None:
        ab = parse_abelian(args.ab or "1")
        report = orbifold.obstruct_finite(args.finite, ab)
        lines = [f"verdict: {report.verdict}"]
        for c in report.candidates:
            state = "survives" if c.survives else "excluded"
            lines.append(f"  ({','.join(map(str, c.signature.multiplicities))})"
                         f" order {c.order}: {state} -- {c.reason}")
        emit(args, lines, {
            "command": "obstruct", "mode": "finite",
            "verdict": report.verdict,
            "candidates": [
                {"multiplicities": list(c.signature.multiplicities),
                 "order": c.order, "survives": c.survives, "reason": c.reason}
                for c in report.candidates],
        })
        return OK if report.verdict == "candidates" else NEGATIVE
    pres = load_presentation(args)
    report = orbifold.obstruct_infinite_rank_one(pres)
    lines = [f"verdict: {report.verdict}"]
    for comp in report.comparisons:
        state = "excluded" if comp.excluded else "not excluded"
        lines.append(f"  target {comp.target}: {state}")
        lines.extend(f"    {e}" for e in comp.evidence)
    emit(args, lines, {
        "command": "obstruct", "mode": "infinite-rank-one",
        "verdict": report.verdict,
        "targets": [
            {"signature": str(c.target), "excluded": c.excluded,
             "evidence": c.evidence} for c in report.comparisons],
    })
    return NEGATIVE if report.verdict == "no-surjection" else OK


def target_mult_table(name: str) -> cosets.MultTable:
    if name.startswith("cyclic-"):
        return cosets.cyclic_table(int(name.split("-")[1]))
    if name.startswith("dihedral-"):
        return cosets.dihedral_table(int(name.split("-")[1]))
    if name == "degtyarev-320":
        pres = parse_presentation(preset_text("degtyarev-projective", ".grp"))
        return cosets.regular_rep(cosets.todd_coxeter(pres))
    raise SystemExit2(f"unknown target group {name!r}")


def cmd_homs(args) -> int:
    pres = load_presentation(args)
    table = target_mult_table(args.target)
    found = cosets.find_epimorphisms(pres, table, cap=args.cap)
    lines = [f"epimorphisms onto {args.target} (order {table.size}):"
             f" {len(found)}"]
    lines.extend("  " + " ".join(f"{g}->{e}" for g, e in
                                 zip(pres.generators, assign))
                 for assign in found[:args.limit])
    emit(args, lines, {
        "command": "homs", "target": args.target, "order": table.size,
        "count": len(found),
        "assignments": [list(a) for a in found[:args.limit]],
    })
    return OK if found else NEGATIVE


def cmd_verify_curves(args) -> int:
    ok1, residual = curves.verify_pencil_identity()
    ok2 = curves.verify_parametrization()
    report = curves.degtyarev_discriminant()
    dual = curves.plucker_dual_degree(5, [(4, 2)] * 3)
    checks = [
        ("pencil identity quartic*tangent^2 = cubic^2 - 4*conic^3", ok1,
         "residual 0" if ok1 else f"residual {residual}"),
        ("parametrization lies on the quartic", ok2, ""),
        ("quintic discriminant = c * x * (x^2-11x-1)^5", report.proportional,
         f"c = {report.constant}" if report.proportional else
         f"got {report.discriminant}"),
        ("dual degree of the quintic is 5", dual == 5, f"got {dual}"),
    ]
    lines = []
    for label, ok, extra in checks:
        status = "PASS" if ok else "FAIL"
        lines.append(f"{status}  {label}" + (f" ({extra})" if extra else ""))
    emit(args, lines, {
        "command": "verify-curves",
        "checks": [{"label": label, "ok": ok, "detail": extra}
                   for label, ok, extra in checks],
    })
    return OK if all(ok for _, ok, _ in checks) else NEGATIVE


def cmd_pipeline(args) -> int:
    name = {"degtyarev": "degtyarev-newbraid"}.get(args.preset, args.preset)
    mono = load_monodromy(name)
    lines = [f"monodromy: {name} ({len(mono.monodromy.braids)} braids on"
             f" {mono.strands} strands)"]
    doc: dict = {"command": "pipeline", "preset": name}

    affine_data = braids.MonodromyData(mono.strands, mono.monodromy.braids, None)
    raw = braids.zvk_presentation(affine_data, "block")
    lines.append(f"zvk (block reduction): {len(raw.generators)} generators,"
                 f" {len(raw.relators)} relators")
    simplified = tietze_simplify(raw).presentation
    lines.append("simplified: " +
                 print_presentation(simplified).rstrip("\n").replace("\n", "  "))
    ab = abelianization(simplified)
    lines.append(f"abelianization: {ab}")
    doc["abelianization"] = str(ab)

    max_cosets = default_max_cosets(args)
    proj = braids.zvk_presentation(mono.monodromy, "block")
    table = cosets.todd_coxeter(tietze_simplify(proj).presentation,
                                max_cosets=max_cosets)
    lines.append(f"projective quotient (infinity meridian added):"
                 f" order {table.index}")
    doc["projective_order"] = table.index

    merid = raw.with_relators([(1,) * 5])
    table5 = cosets.todd_coxeter(tietze_simplify(merid).presentation,
                                 max_cosets=max_cosets)
    lines.append(f"meridian^5 quotient: order {table5.index}")
    doc["meridian5_order"] = table5.index

    _, center, invariants = cosets.regular_rep_and_center(table)
    lines.append(f"center: order {len(center)}, {invariants}")
    doc["center"] = str(invariants)

    ab5 = abelianization(merid)
    lines.append(f"projective abelianization: {ab5}")
    doc["projective_abelianization"] = str(ab5)

    cv_lines, cv_doc = _charvar_lines(simplified)
    lines.extend(cv_lines)
    doc["charvar"] = cv_doc

    report = orbifold.obstruct_infinite_rank_one(simplified)
    lines.append(f"infinite-orbifold obstruction: {report.verdict}")
    for comp in report.comparisons:
        state = "excluded" if comp.excluded else "not excluded"
        lines.append(f"  target {comp.target}: {state}")
    doc["obstruction"] = report.verdict

    fin = orbifold.obstruct_finite(table.index, ab5)
    lines.append(f"finite-orbifold obstruction for the projective group:"
                 f" {fin.verdict}")
    doc["finite_obstruction"] = fin.verdict

    emit(args, lines, doc)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meridian",
        description="Exact invariants of plane-curve complement groups:"
                    " presentations from braid monodromy, abelianizations,"
                    " characteristic varieties, finite quotients, subgroup"
                    " presentations and nilpotent quotients.")
    parser.add_argument("--json", action="store_true",
                        help="emit a JSON document instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p, orbifold_ok=True):
        p.add_argument("file", nargs="?", help="presentation file")
        p.add_argument("--preset", choices=PRESENTATION_PRESETS)
        if orbifold_ok:
            p.add_argument("--orbifold", metavar="SIG",
                           help="orbifold signature, e.g. 'g=0 k=0 m=2,5,10'")

    p = sub.add_parser("zvk", help="presentation from braid monodromy")
    p.add_argument("monodromy", help="monodromy file or preset name"
                   f" ({', '.join(MONODROMY_PRESETS)})")
    p.add_argument("--reduction", choices=("none", "block"), default="block")
    p.add_argument("--projective", action="store_true",
                   help="append the infinity meridian relator")
    p.add_argument("--simplify", action="store_true")
    p.set_defaults(func=cmd_zvk)

    p = sub.add_parser("abelianize", help="abelian invariants")
    add_source(p)
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("charvar", help="characteristic varieties")
    add_source(p)
    p.set_defaults(func=cmd_charvar)

    p = sub.add_parser("order", help="group order / subgroup index")
    add_source(p)
    p.add_argument("--subgroup", help="'kernel Z/10 x->5 y->2' or 'gens w1 w2'")
    p.add_argument("--max-cosets", type=int)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("center", help="center of a finite quotient")
    add_source(p)
    p.add_argument("--max-cosets", type=int)
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("subgroup", help="Reidemeister-Schreier presentation")
    add_source(p)
    p.add_argument("--spec", required=True,
                   help="'kernel Z/10 x->5 y->2' or 'gens w1 w2'")
    p.add_argument("--max-cosets", type=int)
    p.add_argument("--tietze-budget", type=int, default=20000)
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("lcs", help="lower central series quotients")
    add_source(p)
    p.add_argument("--class", dest="max_class", type=int, default=3,
                   choices=(1, 2, 3))
    p.set_defaults(func=cmd_lcs)

    p = sub.add_parser("orbifold", help="orbifold group and classification")
    p.add_argument("--orbifold", metavar="SIG", required=True)
    p.set_defaults(func=cmd_orbifold)

    p = sub.add_parser("obstruct", help="geometric surjection obstructions")
    add_source(p)
    p.add_argument("--finite", type=int, metavar="ORDER",
                   help="finite mode: group order")
    p.add_argument("--ab", help="finite mode: abelianization, e.g. 'Z/5'")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("homs", help="epimorphisms onto a finite group")
    add_source(p)
    p.add_argument("--target", required=True,
                   help="cyclic-N, dihedral-N (order N), degtyarev-320,")
    p.add_argument("--cap", type=int, default=10 ** 7)
    p.add_argument("--limit", type=int, default=20,
                   help="how many assignments to print")
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("verify-curves", help="check the curve identities")
    p.set_defaults(func=cmd_verify_curves)

    p = sub.add_parser("pipeline", help="full reproduction pipeline")
    p.add_argument("--preset", default="degtyarev")
    p.add_argument("--max-cosets", type=int)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CosetOverflow as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return RESOURCE_LIMIT
    except (SystemExit2, ParseError, InvalidSubgroup, CharVarError,
            KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
