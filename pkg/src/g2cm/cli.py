"""Command line entry point: ``g2cm analyze``, ``g2cm scan`` and ``g2cm pairing-check``."""

from __future__ import annotations

import argparse
import random
import sys

from . import harness
from .arith import multiplicative_order
from .cmfield import QuarticPolynomial, classify_galois, discriminant
from .curve import enumerate_jacobian
from .errors import G2CMError, RamifiedCase
from .torsion import TorsionBasis, full_embedding_degree, measured_full_embedding_degree, torsion_basis
from .zeta import jacobian_order, weil_polynomial


def _config(args) -> harness.ScanConfig:
    return harness.ScanConfig(seed=args.seed, max_kappa=args.max_kappa, ell_max=args.ell_max,
                              m_max=args.m_max, enum_bound=args.enum_bound)


def cmd_analyze(args) -> int:
    spec = harness.CurveSpec.parse(args.curve)
    C = spec.curve()
    P = weil_polynomial(C)
    Q = QuarticPolynomial.from_weil(P)
    print(f"curve      {C}")
    print(f"P(X)       {P}")
    print(f"|J(F_p)|   {P(1)}")
    print(f"|J(F_p^2)| {jacobian_order(P, 2)}")
    if C.p <= args.enum_bound:
        n = sum(1 for _ in enumerate_jacobian(C, C.base, bound=args.enum_bound))
        print(f"enumerated {n} ({'agrees' if n == P(1) else 'DISAGREES'})")
    print(f"CM type    {classify_galois(Q).value}")
    print(f"disc(P)    {discriminant(Q)}")
    for ell in harness.candidate_ells(P):
        rep = harness.check_hypotheses(C, ell, P=P, ell_max=args.ell_max)
        line = f"l = {ell:<6} {rep.overall}"
        if rep.eligible:
            line += f"  k = {multiplicative_order(C.p, ell)}  kappa = {full_embedding_degree(P, ell)}"
        print(line)
    return harness.EXIT_OK


def cmd_scan(args) -> int:
    try:
        corpus = harness.read_corpus(args.corpus)
    except (OSError, ValueError) as exc:
        print(f"g2cm: {exc}", file=sys.stderr)
        return harness.EXIT_IO
    records = harness.scan(corpus, _config(args))
    try:
        harness.write_report(records, args.out)
        if args.summary:
            with open(args.summary, "w", encoding="utf-8", newline="") as fh:
                fh.write(harness.summary_csv(records))
    except OSError as exc:
        print(f"g2cm: {exc}", file=sys.stderr)
        return harness.EXIT_IO
    for r in records:
        if r.status == harness.VIOLATION or r.status.startswith("Error("):
            print(f"{r.label} l={r.ell}: {r.status}", file=sys.stderr)
            for v in r.violations:
                print(f"  {v}", file=sys.stderr)
    return harness.exit_code(records)


def cmd_pairing_check(args) -> int:
    spec = harness.CurveSpec.parse(args.curve)
    C = spec.curve()
    P = weil_polynomial(C)
    ell = args.ell
    if ell % 2 == 0 or P(1) % ell or C.p % ell == 0:
        print(f"g2cm: l = {ell} must be an odd prime dividing |J(F_p)| = {P(1)} and not p", file=sys.stderr)
        return harness.EXIT_IO
    rng = random.Random(f"{args.seed}:{spec.label}:{ell}")
    try:
        kappa = full_embedding_degree(P, ell, cap=args.max_kappa)
        B = None
    except RamifiedCase:
        # P mod l has a repeated root: find kappa by measuring instead
        k = multiplicative_order(C.p, ell)
        kappa, B = measured_full_embedding_degree(C, P, ell, range(k, args.max_kappa + 1, k), rng)
    if (C.p**kappa - 1) // ell % ell == 0:
        print(f"g2cm: l^2 divides p^{kappa} - 1, the Tate-ratio Weil pairing is trivial there", file=sys.stderr)
        return harness.EXIT_IO
    B = B or torsion_basis(C, P, ell, kappa, rng)
    if not isinstance(B, TorsionBasis):
        print(f"J[{ell}] has rank {B.rank} over F_p^{kappa}", file=sys.stderr)
        return harness.EXIT_VIOLATION
    print(f"kappa = {kappa}, Weil Gram matrix:")
    for row in B.gram:
        print("  " + " ".join(f"{x:>{len(str(ell))}}" for x in row))
    tally = harness.pairing_axioms(B, rng, args.cases)
    print(f"{tally.cases} checks, {sum(tally.failures.values())} failures")
    for name, n in sorted(tally.failures.items()):
        print(f"  {name}: {n}")
    return harness.EXIT_OK if tally.ok else harness.EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g2cm", description="Genus-2 CM Jacobians: torsion structure and pairings.")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-kappa", type=int, default=64)
    ap.add_argument("--ell-max", type=int, default=8192)
    ap.add_argument("--m-max", type=int, default=64)
    ap.add_argument("--enum-bound", type=int, default=47,
                    help="enumerate J(F_p) in analyze when p is at most this")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="print P, |J| and the CM classification")
    a.add_argument("curve", help="'p:c0,c1,c2,c3,c4' for y^2 = x^5 + c4 x^4 + ... + c0, or a JSON object")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="verify a JSON Lines corpus")
    s.add_argument("--corpus", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--summary")
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("pairing-check", help="seeded pairing axiom checks on J[l]")
    c.add_argument("curve")
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--cases", type=int, default=20)
    c.set_defaults(func=cmd_pairing_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, G2CMError) as exc:
        print(f"g2cm: {exc}", file=sys.stderr)
        return harness.EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
