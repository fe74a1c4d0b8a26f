"""Command-line front end: every library operation behind one executable.

All results are emitted as canonical JSON (sorted keys, no spaces) on stdout
or to --out, with a one-line human summary on stderr. Exit codes: 0 when the
requested computation succeeds and every verified property holds, 1 when a
verification or property check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import certify as certify_mod
from . import corpus as corpus_mod
from . import heilbronn as heilbronn_mod
from . import monomial as monomial_mod
from . import perms
from . import supercharacter as sct_mod
from .chartab import (
    character_table,
    group_from_json,
    group_to_json,
    linear_characters,
    load_table,
    verify_table,
)
from .classfun import (
    ClassFunction,
    VirtualCharacter,
    decompose,
    induce,
    inflate,
    level,
    restrict,
    twist,
)
from .cyclo import Cyclotomic
from .errors import (
    CharkitError,
    InputError,
    InternalVerificationFailed,
    SchemaError,
    VerificationFailed,
)
from .groups import PermutationGroup


def _fmt(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _json_value(v):
    """Cyclotomic or rational to its JSON form."""
    if isinstance(v, Cyclotomic):
        return v.to_json()
    return Cyclotomic.from_rational(Fraction(v)).to_json()


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from None


def _load_group(path: str) -> PermutationGroup:
    return group_from_json(_load_json(path))


def _parse_subgroup(G: PermutationGroup, text: str) -> PermutationGroup:
    """Inline generator list: JSON array of 1-based image lists."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raise SchemaError("--subgroup must be a JSON list of image lists") from None
    if not isinstance(raw, list):
        raise SchemaError("--subgroup must be a JSON list of image lists")
    gens = [perms.from_images(list(im), G.degree) for im in raw]
    return G.subgroup(gens)


def _load_char(G: PermutationGroup, path: str) -> ClassFunction:
    return ClassFunction.from_json(G, _load_json(path))


def _term_json(t) -> dict:
    return t.to_json()


# -- grp ---------------------------------------------------------------------------


def _cmd_grp_info(args):
    G = _load_group(args.group)
    payload = {
        "group": group_to_json(G),
        "order": G.order,
        "degree": G.degree,
        "num_classes": len(G.classes),
        "class_sizes": [c.size for c in G.classes],
        "abelian": G.is_abelian,
        "solvable": G.is_solvable,
        "derived_length": G.derived_length,
        "exponent": G.exponent,
        "supersolvable": heilbronn_mod.is_supersolvable(G),
    }
    name = G.name or "group"
    summary = (
        f"{name}: order {G.order}, {len(G.classes)} classes, "
        f"{'solvable' if G.is_solvable else 'not solvable'}"
    )
    return payload, summary, 0


def _cmd_grp_subgroups(args):
    G = _load_group(args.group)
    subs = G.subgroups(args.max_order)
    payload = {
        "count": len(subs),
        "subgroups": [
            {
                "order": H.order,
                "generators": [perms.to_images(g) for g in H.generators],
                "normal": G.is_normal(H),
                "abelian": H.is_abelian,
            }
            for H in subs
        ],
    }
    return payload, f"{len(subs)} subgroups", 0


# -- chartab -----------------------------------------------------------------------


def _cmd_chartab_compute(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    payload = table.to_json()
    return payload, f"{len(table.irreducibles)} irreducible characters", 0


def _cmd_chartab_verify(args):
    obj = _load_json(args.table)
    table = load_table(obj)
    verify_table(table, internal=False)
    payload = {
        "ok": True,
        "num_irreducibles": len(table.irreducibles),
        "degrees": list(table.degrees),
    }
    return payload, "table verified", 0


# -- cf ----------------------------------------------------------------------------


def _require_subgroup_flag(args):
    if not args.subgroup:
        raise InputError("this subcommand requires --subgroup")


def _cmd_cf_induce(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    H = _parse_subgroup(G, args.subgroup)
    f = _load_char(H, args.char)
    out = induce(f, G)
    return out.to_json(), "induced to the full group", 0


def _cmd_cf_restrict(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    H = _parse_subgroup(G, args.subgroup)
    f = _load_char(G, args.char)
    out = restrict(f, H)
    return out.to_json(), f"restricted to a subgroup of order {H.order}", 0


def _cmd_cf_inflate(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    N = _parse_subgroup(G, args.subgroup)
    q = G.quotient(N)
    f = ClassFunction.from_json(q.quotient, _load_json(args.char))
    out = inflate(f, q)
    return out.to_json(), "inflated from the quotient", 0


def _cmd_cf_twist(args):
    G = _load_group(args.group)
    f1 = _load_char(G, args.char)
    f2 = _load_char(G, args.char2)
    out = twist(f1, f2)
    return out.to_json(), "pointwise product computed", 0


def _cmd_cf_decompose(args):
    G = _load_group(args.group)
    f = _load_char(G, args.char)
    table = character_table(G, cache_dir=args.cache_dir)
    vc = decompose(f, table)
    return vc.to_json(), f"{len(vc.coeffs)} nonzero coefficients", 0


def _cmd_cf_level(args):
    G = _load_group(args.group)
    f = _load_char(G, args.char)
    lvl = level(f)
    return {"level": lvl}, f"level {lvl}", 0


# -- mono --------------------------------------------------------------------------


def _cmd_mono_uvdw(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    H = _parse_subgroup(G, args.subgroup)
    dec = monomial_mod.decompose_uvdw(G, H)
    return dec.to_json(), f"{len(dec.terms)} induction terms, residual 1", 0


def _cmd_mono_level(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    if args.level is None:
        raise InputError("this subcommand requires --level")
    H = _parse_subgroup(G, args.subgroup)
    dec = monomial_mod.decompose_uvdw_level(G, H, args.level)
    return dec.to_json(), f"{len(dec.terms)} terms at depth {args.level}", 0


def _cmd_mono_mgroup(args):
    G = _load_group(args.group)
    rep = monomial_mod.is_m_group(G, max_order=args.max_order)
    payload = {
        "is_m_group": rep.is_m_group,
        "witnesses": [
            {
                "index": idx,
                "subgroup_gens": [perms.to_images(g) for g in H.generators],
                "linear_char": phi.to_json(),
            }
            for idx, H, phi in rep.witnesses
        ],
        "failures": list(rep.failures),
    }
    verdict = "every irreducible is induced from a linear character" if rep.is_m_group \
        else f"{len(rep.failures)} irreducibles lack a monomial witness"
    return payload, verdict, 0


def _cmd_mono_cone(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    obj = _load_json(args.char)
    if isinstance(obj, dict) and "coeffs" in obj:
        psi = VirtualCharacter.from_json(table, obj)
    else:
        psi = ClassFunction.from_json(G, obj)
    res = monomial_mod.cone_membership(psi, table=table, max_order=args.max_order)
    payload = {
        "member": res.member,
        "family_size": len(res.family),
        "combination": [
            {"family_index": j, "coeff": _fmt(c)} for j, c in res.combination
        ]
        if res.combination is not None
        else None,
        "refutation_index": res.refutation_index,
        "refutation_product": _fmt(res.refutation_product)
        if res.refutation_product is not None
        else None,
    }
    summary = "inside the monomial cone" if res.member else "outside: witness found"
    return payload, summary, 0


# -- heilbronn ---------------------------------------------------------------------


def _assignment_payload(a) -> dict:
    out = a.to_json()
    out["weak_admissible"] = a.weak_admissible
    out["arithmetic_admissible"] = a.arithmetic_admissible
    out["n_regular"] = a.n_regular
    return out


def _cmd_heilbronn_verify(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    a = heilbronn_mod.assignment_from_json(_load_json(args.assignment), table)
    violations = []
    payload = _assignment_payload(a)
    sr = heilbronn_mod.check_stark_restriction(a, max_order=args.max_order)
    payload["stark_restriction"] = {"checked": sr.checked, "holds": sr.holds}
    if not sr.holds:
        violations.append("stark-restriction")
    fm = heilbronn_mod.foote_murty_gap(a)
    payload["square_sum_gap"] = {
        "lhs": _fmt(fm.lhs), "rhs": _fmt(fm.rhs), "holds": fm.holds,
        "asserted": fm.precondition_ok,
    }
    if fm.precondition_ok and not fm.holds:
        violations.append("square-sum-gap")
    sl = heilbronn_mod.stark_lemma_check(a)
    payload["small_gap"] = {
        "applicable": sl.applicable, "n_regular": sl.n_regular, "holds": sl.holds,
    }
    if not sl.holds:
        violations.append("small-gap")
    if G.is_solvable:
        trunc = []
        for i in table.linear_indices:
            rep = heilbronn_mod.truncated_inequality(a, table.irreducibles[i])
            trunc.append({
                "chi_index": i, "lhs": _fmt(rep.lhs), "rhs": _fmt(rep.rhs),
                "holds": rep.holds, "asserted": rep.precondition_ok,
            })
            if rep.precondition_ok and not rep.holds:
                violations.append(f"truncated:{i}")
        payload["truncated"] = trunc
        levels = []
        for i in range(1, (G.derived_length or 0) + 1):
            rep = heilbronn_mod.level_inequality(a, i)
            gap = heilbronn_mod.gap_not_one_check(a, i)
            levels.append({
                "level": i, "lhs": _fmt(rep.lhs), "rhs": _fmt(rep.rhs),
                "holds": rep.holds, "gap": gap.gap, "gap_not_one": gap.holds,
            })
            if rep.precondition_ok and not rep.holds:
                violations.append(f"level:{i}")
            if gap.precondition_ok and not gap.holds:
                violations.append(f"gap-equals-one:{i}")
        payload["levels"] = levels
        gaps = []
        for H in G.subgroups(args.max_order):
            g = heilbronn_mod.uvdw_gap(a, H)
            gaps.append({"order": H.order, "gap": g})
            if a.arithmetic_admissible and g < 0:
                violations.append("induced-minus-trivial")
        payload["subgroup_gaps"] = gaps
    payload["violations"] = violations
    code = 1 if violations else 0
    summary = "all checks passed" if not violations else \
        f"{len(violations)} violations: {', '.join(violations)}"
    return payload, summary, code


def _cmd_heilbronn_search(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    rep = heilbronn_mod.search_admissible(
        table, args.bound, mode=args.mode, jobs=args.jobs,
        max_order=args.max_order,
    )
    payload = {
        "bound": rep.bound,
        "mode": rep.mode,
        "candidates": rep.candidates,
        "admissible": rep.admissible,
        "violations": rep.violations,
        "violation_witnesses": [
            {"index": i, "check": c, "base": list(b)}
            for i, c, b in rep.violation_witnesses
        ],
        "equality_witnesses": [
            {"index": i, "check": c, "base": list(b)}
            for i, c, b in rep.equality_witnesses
        ],
        "checks": list(rep.checks),
    }
    code = 1 if rep.violations else 0
    summary = (
        f"{rep.candidates} candidates, {rep.admissible} admissible, "
        f"{rep.violations} violations"
    )
    return payload, summary, code


def _cmd_heilbronn_split(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    a = heilbronn_mod.assignment_from_json(_load_json(args.assignment), table)
    rep = heilbronn_mod.theta_split(a, max_order=args.max_order)
    payload = {
        "theta1": rep.theta1.to_json(),
        "theta2": rep.theta2.to_json(),
        "theta3": rep.theta3.to_json(),
        "reconstruction_ok": rep.reconstruction_ok,
        "every_negative_faithful": rep.every_negative_faithful,
        "every_negative_not_induced": rep.every_negative_not_induced,
        "split_orthogonal": rep.split_orthogonal,
        "overlap": list(rep.overlap),
    }
    summary = (
        f"split into faithful/negative/nonfaithful parts; overlap size "
        f"{len(rep.overlap)}"
    )
    return payload, summary, 0


# -- sct ---------------------------------------------------------------------------


def _cmd_sct_verify(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    theory = sct_mod.theory_from_json(_load_json(args.theory), table)
    rep = sct_mod.verify_sct(theory)
    payload = {
        "identity_singleton": rep.identity_singleton,
        "sizes_match": rep.sizes_match,
        "constant_on_parts": rep.constant_on_parts,
        "union_of_classes": rep.union_of_classes,
        "orthogonal": rep.orthogonal,
        "holds": rep.holds,
    }
    code = 0 if rep.holds else 1
    return payload, "theory verified" if rep.holds else "axioms violated", code


def _cmd_sct_enumerate(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    cap = args.max_order if args.max_order is not None else sct_mod.ENUMERATION_CLASS_CAP
    theories = sct_mod.enumerate_scts(table, max_classes=cap)
    payload = {
        "count": len(theories),
        "theories": [t.to_json() for t in theories],
    }
    return payload, f"{len(theories)} theories", 0


def _cmd_sct_product(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    N = _parse_subgroup(G, args.subgroup)
    tab_n = character_table(N, cache_dir=args.cache_dir)
    t1 = sct_mod.theory_from_json(_load_json(args.theory_n), tab_n)
    q = G.quotient(N)
    tab_q = character_table(q.quotient, cache_dir=args.cache_dir)
    t2 = sct_mod.theory_from_json(_load_json(args.theory_q), tab_q)
    prod = sct_mod.hendrickson_product(G, t1, t2)
    return prod.to_json(), f"product theory with {prod.size} parts", 0


def _cmd_sct_superinduce(args):
    G = _load_group(args.group)
    table = character_table(G, cache_dir=args.cache_dir)
    theory_g = sct_mod.theory_from_json(_load_json(args.theory), table)
    _require_subgroup_flag(args)
    H = _parse_subgroup(G, args.subgroup)
    tab_h = character_table(H, cache_dir=args.cache_dir)
    theory_h = sct_mod.theory_from_json(_load_json(args.theory_h), tab_h)
    obj = _load_json(args.values)
    if not isinstance(obj, dict) or "values" not in obj:
        raise SchemaError("superclass function payload must have 'values'")
    vals = [Cyclotomic.from_json(v) for v in obj["values"]]
    if len(vals) != len(theory_h.class_parts):
        raise SchemaError("one value per subgroup superclass required")
    phi = sct_mod.SuperclassFunction(theory_h, tuple(vals))
    out = sct_mod.superinduce(phi, theory_g)
    payload = {"values": [_json_value(v) for v in out.values]}
    return payload, "superinduced with verified reciprocity", 0


# -- certify -----------------------------------------------------------------------


def _cmd_certify_uvdw(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    H = _parse_subgroup(G, args.subgroup)
    cert = certify_mod.certify_quotient_uvdw(G, H)
    return cert.to_json(), f"certificate status {cert.status}", 0


def _cmd_certify_rr2(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_char(H, args.char)
    cert = certify_mod.certify_rr2(G, H, psi)
    return cert.to_json(), f"certificate status {cert.status}", 0


def _cmd_certify_level(args):
    G = _load_group(args.group)
    _require_subgroup_flag(args)
    if args.level is None:
        raise InputError("this subcommand requires --level")
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_char(H, args.char)
    cert = certify_mod.certify_level(G, H, psi, args.level)
    return cert.to_json(), f"certificate status {cert.status}", 0


def _cmd_certify_takagi(args):
    G = _load_group(args.group)
    cert = certify_mod.certify_takagi(G)
    return cert.to_json(), f"certificate status {cert.status}", 0


# -- corpus ------------------------------------------------------------------------


def _cmd_corpus_run(args):
    payload = corpus_mod.corpus_report(cache_dir=args.cache_dir)
    return payload, f"{len(payload['groups'])} corpus groups", 0


# -- wiring ------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--cache-dir", help="character table cache directory")
    p.add_argument("--jobs", type=int, default=1, help="worker count")
    p.add_argument("--bound", type=int, default=2, help="search box radius")
    p.add_argument("--mode", default="weak", choices=("weak", "arithmetic"))
    p.add_argument("--level", type=int, help="derived-series depth")
    p.add_argument("--subgroup", help="JSON list of generator image lists")
    p.add_argument("--max-order", type=int, help="subgroup enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="charkit",
        description="exact character-theory computations on permutation groups",
    )
    sub = root.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("grp").add_subparsers(dest="sub", required=True)
    p = grp.add_parser("info")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_grp_info)
    p = grp.add_parser("subgroups")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_grp_subgroups)

    ct = sub.add_parser("chartab").add_subparsers(dest="sub", required=True)
    p = ct.add_parser("compute")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_chartab_compute)
    p = ct.add_parser("verify")
    p.add_argument("table")
    _add_common(p)
    p.set_defaults(func=_cmd_chartab_verify)

    cf = sub.add_parser("cf").add_subparsers(dest="sub", required=True)
    for name, fn, extra in (
        ("induce", _cmd_cf_induce, ("char",)),
        ("restrict", _cmd_cf_restrict, ("char",)),
        ("inflate", _cmd_cf_inflate, ("char",)),
        ("twist", _cmd_cf_twist, ("char", "char2")),
        ("decompose", _cmd_cf_decompose, ("char",)),
        ("level", _cmd_cf_level, ("char",)),
    ):
        p = cf.add_parser(name)
        p.add_argument("group")
        for pos in extra:
            p.add_argument(pos)
        _add_common(p)
        p.set_defaults(func=fn)

    mono = sub.add_parser("mono").add_subparsers(dest="sub", required=True)
    for name, fn, extra in (
        ("uvdw", _cmd_mono_uvdw, ()),
        ("level", _cmd_mono_level, ()),
        ("mgroup", _cmd_mono_mgroup, ()),
        ("cone", _cmd_mono_cone, ("char",)),
    ):
        p = mono.add_parser(name)
        p.add_argument("group")
        for pos in extra:
            p.add_argument(pos)
        _add_common(p)
        p.set_defaults(func=fn)

    hb = sub.add_parser("heilbronn").add_subparsers(dest="sub", required=True)
    p = hb.add_parser("verify")
    p.add_argument("group")
    p.add_argument("assignment")
    _add_common(p)
    p.set_defaults(func=_cmd_heilbronn_verify)
    p = hb.add_parser("search")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_heilbronn_search)
    p = hb.add_parser("split")
    p.add_argument("group")
    p.add_argument("assignment")
    _add_common(p)
    p.set_defaults(func=_cmd_heilbronn_split)

    sct = sub.add_parser("sct").add_subparsers(dest="sub", required=True)
    p = sct.add_parser("verify")
    p.add_argument("group")
    p.add_argument("theory")
    _add_common(p)
    p.set_defaults(func=_cmd_sct_verify)
    p = sct.add_parser("enumerate")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_sct_enumerate)
    p = sct.add_parser("product")
    p.add_argument("group")
    p.add_argument("theory_n")
    p.add_argument("theory_q")
    _add_common(p)
    p.set_defaults(func=_cmd_sct_product)
    p = sct.add_parser("superinduce")
    p.add_argument("group")
    p.add_argument("theory")
    p.add_argument("theory_h")
    p.add_argument("values")
    _add_common(p)
    p.set_defaults(func=_cmd_sct_superinduce)

    cert = sub.add_parser("certify").add_subparsers(dest="sub", required=True)
    p = cert.add_parser("uvdw")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_certify_uvdw)
    p = cert.add_parser("rr2")
    p.add_argument("group")
    p.add_argument("char")
    _add_common(p)
    p.set_defaults(func=_cmd_certify_rr2)
    p = cert.add_parser("level")
    p.add_argument("group")
    p.add_argument("char")
    _add_common(p)
    p.set_defaults(func=_cmd_certify_level)
    p = cert.add_parser("takagi")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=_cmd_certify_takagi)

    corpus = sub.add_parser("corpus").add_subparsers(dest="sub", required=True)
    p = corpus.add_parser("run")
    _add_common(p)
    p.set_defaults(func=_cmd_corpus_run)

    return root


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, summary, code = args.func(args)
    except (VerificationFailed, InternalVerificationFailed) as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except CharkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
