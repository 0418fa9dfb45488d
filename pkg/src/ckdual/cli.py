"""Command-line front end.

Subcommands: validate, words, ktheory, duality, fock-verify, lemma-verify,
pairing.  Exit codes: 0 = all requested checks hold, 1 = checks ran and
defects were found, 2 = input error.  Finding defects is a success mode of
the tool - the general-matrix corrections to the vacuum-sector identities are
a primary output - so they exit 1, distinct from crashes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import duality as dualitymod
from . import fock, ktheory, sft

EXIT_OK = 0
EXIT_DEFECTS = 1
EXIT_INPUT = 2


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load(args) -> sft.ZeroOneMatrix:
    return sft.load_matrix(args.matrix)


def cmd_validate(args) -> int:
    a = _load(args)
    aperiodic = sft.is_aperiodic(a)
    irreducible = sft.is_irreducible(a)
    cantor = sft.satisfies_cantor_condition(a)
    if args.json:
        _emit_json(
            {
                "matrix": a.to_json(),
                "valid": True,
                "irreducible": irreducible,
                "aperiodic": aperiodic,
                "cantor": cantor,
            }
        )
    else:
        print("valid: true")
        print(f"irreducible: {str(irreducible).lower()}")
        print(f"aperiodic: {str(aperiodic).lower()}")
        print(f"cantor: {str(cantor).lower()}")
        if not cantor:
            print(
                "warning: shift space is not a Cantor set "
                "(reducible or permutation matrix); "
                "the operator constructions assume the Cantor condition",
                file=sys.stderr,
            )
    return EXIT_OK


def cmd_words(args) -> int:
    a = _load(args)
    words = sft.enumerate_words(a, args.length)
    if args.json:
        _emit_json(
            {
                "matrix": a.to_json(),
                "length": args.length,
                "count": len(words),
                "words": [sft.word_str(w) for w in words],
            }
        )
    else:
        for w in words:
            print(sft.word_str(w) if w else "ε")
    return EXIT_OK


def _group_str(g) -> str:
    return str(g)


def cmd_ktheory(args) -> int:
    a = _load(args)
    if args.json:
        _emit_json(ktheory.report_json(a, include_duality=args.duality))
        return EXIT_OK
    rep = ktheory.k_groups(a)
    for name, alg in (("O_A", rep.o_a), ("O_AT", rep.o_at)):
        print(f"K0({name})  = {alg.k0}")
        print(f"K1({name})  = {alg.k1}")
        print(f"K^0({name}) = {alg.khom0}")
        print(f"K^1({name}) = {alg.khom1}")
    if args.duality:
        _print_duality(ktheory.duality_report(a))
    return EXIT_OK


def _print_duality(d) -> None:
    print(f"presentation match K0(O_A) ~ K^1(O_AT): {str(d.presentation_match_K0_Khom1).lower()}")
    print(f"presentation match K1(O_A) ~ K^0(O_AT): {str(d.presentation_match_K1_Khom0).lower()}")
    print(f"abstract isomorphism of cokernels: {str(d.abstract_iso_cokernels).lower()}")
    print(f"invariant factors of coker(1-A):   {list(d.invariant_factors_A)}")
    print(f"invariant factors of coker(1-A^T): {list(d.invariant_factors_AT)}")


def cmd_duality(args) -> int:
    a = _load(args)
    d = ktheory.duality_report(a)
    ok = (
        d.presentation_match_K0_Khom1
        and d.presentation_match_K1_Khom0
        and d.abstract_iso_cokernels
    )
    if args.json:
        out = d.to_json()
        out["matrix"] = a.to_json()
        _emit_json(out)
    else:
        _print_duality(d)
    return EXIT_OK if ok else EXIT_DEFECTS


def cmd_fock_verify(args) -> int:
    a = _load(args)
    basis = fock.FockBasis(a, args.max_length)
    reports = fock.verify_creation_relations(basis, args.relation)
    if args.json:
        _emit_json(
            {
                "matrix": a.to_json(),
                "m_max": args.max_length,
                "reports": [r.to_json() for r in reports],
            }
        )
    else:
        for r in reports:
            if r.holds:
                print(f"{r.relation}: ok")
            else:
                print(f"{r.relation}: DEFECT ({len(r.defects)} column(s))")
                for d in r.defects:
                    delta = ", ".join(f"{w or 'Ω'}: {v:+d}" for w, v in d.delta)
                    print(f"  column {d.column or 'Ω'} -> {delta}")
    return EXIT_OK if all(r.holds for r in reports) else EXIT_DEFECTS


def cmd_lemma_verify(args) -> int:
    a = _load(args)
    basis = fock.FockBasis(a, args.max_length)
    report = dualitymod.verify_lemmas(basis, args.which)
    if args.json:
        _emit_json(report.to_json())
    else:
        print(f"lemma {report.lemma} (m_max={report.m_max})")
        for item in report.items:
            if item.holds:
                suffix = f"  [{item.note}]" if item.note else ""
                print(f"  {item.item_id}: ok{suffix}")
            else:
                print(f"  {item.item_id}: DEFECT ({len(item.defects)} column(s))")
                if item.note:
                    print(f"    note: {item.note}")
                for d in item.defects:
                    entries = ", ".join(f"{w or 'Ω'}: {s}" for w, s in d.entries)
                    print(f"    column {d.column or 'Ω'} (length {d.length}) -> {entries}")
    return EXIT_OK if report.holds else EXIT_DEFECTS


def cmd_pairing(args) -> int:
    a = _load(args)
    basis = fock.FockBasis(a, args.max_length)
    _x, report = fock.rotation_operator(basis)
    if args.json:
        out = report.to_json()
        out["matrix"] = a.to_json()
        out["m_max"] = args.max_length
        _emit_json(out)
    else:
        print(f"vacuum: X Ω = {report.vacuum_eigenvalue} Ω (expected {report.expected_vacuum})")
        for s in report.sectors:
            print(
                f"sector {s.sector}: dim={s.dimension} ker={s.dim_ker} "
                f"coker={s.dim_coker} index={s.index}"
            )
    return EXIT_OK if report.holds else EXIT_DEFECTS


def _max_length(value: str) -> int:
    m = int(value)
    if m < 2:
        raise argparse.ArgumentTypeError("--max-length must be >= 2")
    return m


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckdual",
        description=(
            "Exact K-theory of Cuntz-Krieger algebras and verification of the "
            "restricted Fock space operator identities for a shift of finite type."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, max_length=False):
        p.add_argument("--matrix", required=True, help="matrix file (JSON or plain text)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if max_length:
            p.add_argument(
                "--max-length", type=_max_length, default=5,
                help="Fock truncation length m_max (default 5)",
            )

    p = sub.add_parser("validate", help="validate the matrix; report aperiodicity and the Cantor check")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("words", help="list admissible words of a given length")
    common(p)
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("ktheory", help="K-theory and K-homology of O_A and O_{A^T}")
    common(p)
    p.add_argument("--duality", action="store_true", help="include the duality report")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("duality", help="presentation-level duality report")
    common(p)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("fock-verify", help="verify the creation-operator relations")
    common(p, max_length=True)
    p.add_argument("--relation", choices=["i", "ii", "iii", "iv", "all"], default="all")
    p.set_defaults(func=cmd_fock_verify)

    p = sub.add_parser("lemma-verify", help="verify the W / V_k / Toeplitz identities")
    common(p, max_length=True)
    p.add_argument("--which", choices=["W", "V", "toeplitz"], default="W")
    p.set_defaults(func=cmd_lemma_verify)

    p = sub.add_parser("pairing", help="per-sector index of the rotation operator X = sum L_i* R_i")
    common(p, max_length=True)
    p.set_defaults(func=cmd_pairing)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (sft.MatrixValidationError, sft.MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
