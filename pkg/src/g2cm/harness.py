"""Hypothesis checks, verification of the bicyclicity and pairing statements over
a range of extension degrees, corpus scans and report persistence."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .arith import factor, multiplicative_order
from .cmfield import (
    GaloisType,
    QuarticPolynomial,
    Ramification,
    classify_galois,
    discriminant,
    ell_ramification,
    is_irreducible_quartic,
)
from .curve import GenusTwoCurve, cantor_add, change_field, curve_new, random_divisor, scalar_mul
from .errors import CapExceeded, G2CMError
from .ff import build_extension
from .pairing import nondegenerate_on, tate_reduced, weil
from .torsion import (
    FrobeniusMatrix,
    SylowStructure,
    TorsionBasis,
    combine,
    eigenspace,
    frobenius_matrix,
    full_embedding_degree,
    omega_conditions,
    subgroup_rank,
    sylow_structure,
    torsion_basis,
)
from .zeta import WeilPolynomial, charpoly_exact, weil_polynomial

CONFIRMS = "ConfirmsTheoremI"
NOT_APPLICABLE = "NotApplicable(OmegaSqIsOne)"
VIOLATION = "VIOLATION"
END_RING = "Assumed(EndIsMaximal)"

EXIT_OK, EXIT_VIOLATION, EXIT_IO = 0, 2, 3


@dataclass(frozen=True)
class ScanConfig:
    seed: int = 0
    max_kappa: int = 64
    ell_max: int = 8192
    m_max: int = 64
    enum_bound: int = 47


@dataclass(frozen=True)
class CurveSpec:
    label: str
    p: int
    f: tuple[int, ...]  # c0..c5 with c5 = 1
    note: str | None = None

    @classmethod
    def from_dict(cls, obj: dict) -> "CurveSpec":
        try:
            label, p, coeffs = str(obj["label"]), int(obj["p"]), [int(c) for c in obj["f"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad corpus entry {obj!r}: {exc}") from None
        if len(coeffs) == 5:
            coeffs.append(1)
        spec = cls(label, p, tuple(coeffs), obj.get("note"))
        spec.curve()  # validate on load
        return spec

    def curve(self) -> GenusTwoCurve:
        return curve_new(self.p, list(self.f))

    @classmethod
    def parse(cls, text: str) -> "CurveSpec":
        """'p:c0,c1,c2,c3,c4' or a JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_dict(json.loads(text))
        p_str, _, coeff_str = text.partition(":")
        coeffs = [int(c) for c in coeff_str.split(",") if c.strip()]
        return cls.from_dict({"label": f"p{int(p_str)}:{','.join(map(str, coeffs))}",
                              "p": int(p_str), "f": coeffs})


# -- hypotheses -------------------------------------------------------------------------


@dataclass
class HypothesisReport:
    ell_odd: bool
    ell_divides_order: bool
    ell_not_p: bool
    ell_not_p_minus_1: bool
    unramified: str
    p_irreducible: bool
    primitive_cm: bool
    galois_type: str
    end_ring: str
    overall: str

    @property
    def eligible(self) -> bool:
        return self.overall == "Eligible"


def check_hypotheses(C: GenusTwoCurve, ell: int, *, P: WeilPolynomial | None = None,
                     ell_max: int = 8192) -> HypothesisReport:
    P = P or weil_polynomial(C)
    Q = QuarticPolynomial.from_weil(P)
    p = C.p
    irreducible = is_irreducible_quartic(Q)
    kind = classify_galois(Q)
    primitive = kind in (GaloisType.C4, GaloisType.D4_OR_NON_GALOIS)
    odd = ell % 2 == 1
    divides = P(1) % ell == 0
    not_p = p % ell != 0
    not_pm1 = (p - 1) % ell != 0
    ram = ell_ramification(Q, ell) if irreducible and ell > 1 else Ramification.INDETERMINATE

    checks = [
        (irreducible, "NotIrreducible"),
        (kind is not GaloisType.NOT_CM, "NotCM"),
        (primitive, "NotPrimitive"),
        (odd, "EllEven"),
        (not_p, "EllDividesP"),
        (divides, "EllNotDividingOrder"),
        (not_pm1, "EllDividesPMinus1"),
        (ell <= ell_max, "EllTooLarge"),
        (ram is Ramification.UNRAMIFIED, "RamificationIndeterminate"),
    ]
    overall = next((f"Skipped({reason})" for ok, reason in checks if not ok), "Eligible")
    return HypothesisReport(odd, divides, not_p, not_pm1, ram.value, irreducible, primitive,
                            kind.value, END_RING, overall)


# -- verification ---------------------------------------------------------------------


@dataclass
class MRow:
    m: int
    rank: int
    matrix_rank: int
    ell_divides_p_m_minus_1: bool
    omega_is_one: bool
    omega_sq_is_one: bool
    ell_divides_disc_pm: bool
    verdict: str


@dataclass
class Instance:
    """Everything computed once per (curve, l) and shared by the verifiers."""

    C: GenusTwoCurve
    P: WeilPolynomial
    ell: int
    k: int
    kappa: int
    basis: TorsionBasis
    frob: FrobeniusMatrix
    rng: random.Random
    structures: dict[int, SylowStructure] = field(default_factory=dict)

    def structure(self, g: int) -> SylowStructure:
        if g not in self.structures:
            self.structures[g] = sylow_structure(self.C, self.P, self.ell, g, self.rng)
        return self.structures[g]

    def measured_rank(self, m: int) -> int:
        """Rank of J(F_{p^m})[l]; J[l] is rational over F_{p^kappa}, so only
        gcd(m, kappa) matters."""
        g = math.gcd(m, self.kappa)
        if g == self.kappa:
            return 4
        return self.structure(g).rank


def prepare_instance(C: GenusTwoCurve, P: WeilPolynomial, ell: int, rng: random.Random,
                     *, max_kappa: int = 64) -> Instance:
    k = multiplicative_order(C.p, ell)
    kappa = full_embedding_degree(P, ell)
    if kappa > max_kappa:
        raise CapExceeded(f"kappa = {kappa} > {max_kappa}")
    B = torsion_basis(C, P, ell, kappa, rng)
    if not isinstance(B, TorsionBasis):
        raise G2CMError(f"J[{ell}] has rank {B.rank} over the degree-{kappa} field")
    M = frobenius_matrix(C, P, B, rng)
    return Instance(C, P, ell, k, kappa, B, M, rng)


def _disc_pm_divisible(P: WeilPolynomial, m: int, ell: int) -> bool:
    c = charpoly_exact(P, m)
    return discriminant(QuarticPolynomial(c[3], c[2], c[1], c[0])) % ell == 0


def verify_theorem_i(inst: Instance, m_range: Iterable[int]) -> list[MRow]:
    rows = []
    p, ell = inst.C.p, inst.ell
    for m in m_range:
        rank = inst.measured_rank(m)
        mrank = subgroup_rank(inst.frob, m)
        one, sq = omega_conditions(inst.frob, m)
        divides = pow(p, m, ell) == 1
        if rank != mrank or (not one and rank > 2):
            verdict = VIOLATION
        elif sq:
            verdict = NOT_APPLICABLE
        elif (rank == 2) == divides:
            verdict = CONFIRMS
        else:
            verdict = VIOLATION
        rows.append(MRow(m, rank, mrank, divides, one, sq, _disc_pm_divisible(inst.P, m, ell), verdict))
    return rows


def verify_theorem_ii(inst: Instance) -> bool:
    """Weil pairing non-degenerate on J(F_{p^k})[l] x J(F_{p^k})[l]."""
    gens = inst.structure(inst.k).socle if inst.k != inst.kappa else list(inst.basis.points)
    if len(gens) != subgroup_rank(inst.frob, inst.k):
        return False
    F = build_extension(inst.C.p, inst.k)
    return nondegenerate_on(gens, gens, inst.ell, F, inst.rng)


@dataclass
class UVResult:
    applicable: bool
    nondegenerate: bool | None
    dim_u: int | None
    dim_v: int | None


def verify_uv(inst: Instance) -> UVResult:
    """Non-degeneracy on U x V with U = J(F_p)[l] and V = ker(phi - p) on J[l]."""
    if omega_conditions(inst.frob, inst.k)[0]:
        return UVResult(False, None, None, None)
    U = inst.structure(1).socle
    V = [combine(inst.basis, v) for v in eigenspace(inst.frob, inst.C.p % inst.ell)]
    F = inst.basis.field
    ok = nondegenerate_on([change_field(u, F) for u in U], V, inst.ell, F, inst.rng)
    return UVResult(True, ok and len(U) == len(V) == 1, len(U), len(V))


# -- records ----------------------------------------------------------------------------


@dataclass
class TheoremRecord:
    label: str
    p: int
    f: list[int]
    ell: int | None
    status: str
    weil_polynomial: list[int]
    hypotheses: dict | None = None
    k: int | None = None
    kappa: int | None = None
    frobenius_matrix: list[list[int]] | None = None
    weil_gram: list[list[int]] | None = None
    charpoly_matches: bool | None = None
    remark3_holds: bool | None = None
    rows: list[dict] = field(default_factory=list)
    weil_nondeg_over_k: bool | None = None
    uv_nondeg: bool | str | None = None
    dim_u: int | None = None
    dim_v: int | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def n_confirms(self) -> int:
        return sum(r["verdict"] == CONFIRMS for r in self.rows)

    @property
    def n_not_applicable(self) -> int:
        return sum(r["verdict"] == NOT_APPLICABLE for r in self.rows)

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "TheoremRecord":
        return cls(**json.loads(line))


def analyze_instance(spec: CurveSpec, ell: int, config: ScanConfig) -> TheoremRecord:
    C = spec.curve()
    P = weil_polynomial(C)
    rec = TheoremRecord(spec.label, spec.p, list(spec.f), ell, "", [P.a1, P.a2])
    hyp = check_hypotheses(C, ell, P=P, ell_max=config.ell_max)
    rec.hypotheses = asdict(hyp)
    if not hyp.eligible:
        rec.status = hyp.overall
        return rec
    rec.k = multiplicative_order(C.p, ell)
    try:
        rec.kappa = full_embedding_degree(P, ell)
    except CapExceeded:
        rec.status = "Skipped(KappaTooLarge)"
        return rec
    rec.remark3_holds = rec.kappa % rec.k == 0
    if rec.kappa > config.max_kappa:
        rec.status = "Skipped(KappaTooLarge)"
        return rec
    if ((C.p**rec.kappa - 1) // ell) % ell == 0:
        # the Tate-ratio Weil pairing vanishes identically on this field
        rec.status = "Skipped(EllSquaredDividesFieldOrder)"
        return rec
    rng = random.Random(f"{config.seed}:{spec.label}:{ell}")
    try:
        inst = prepare_instance(C, P, ell, rng, max_kappa=config.max_kappa)
        rec.frobenius_matrix = inst.frob.rows()
        rec.weil_gram = inst.basis.gram
        rec.charpoly_matches = True
        m_hi = min(2 * inst.kappa, config.m_max)
        rows = verify_theorem_i(inst, range(1, m_hi + 1))
        rec.rows = [asdict(r) for r in rows]
        rec.weil_nondeg_over_k = verify_theorem_ii(inst)
        uv = verify_uv(inst)
        rec.uv_nondeg = uv.nondegenerate if uv.applicable else "NotApplicable"
        rec.dim_u, rec.dim_v = uv.dim_u, uv.dim_v
    except G2CMError as exc:
        rec.status = f"Error({type(exc).__name__}: {exc})"
        if type(exc).__name__ == "CharpolyMismatch":
            rec.charpoly_matches = False
        return rec
    if not rec.remark3_holds:
        rec.violations.append("kappa is not a multiple of k")
    for r in rows:
        if r.verdict == VIOLATION:
            rec.violations.append(f"m={r.m}: rank {r.rank} (matrix {r.matrix_rank}), "
                                  f"l | p^m-1 is {r.ell_divides_p_m_minus_1}")
    if not rec.weil_nondeg_over_k:
        rec.violations.append("Weil pairing degenerate over F_{p^k}")
    if rec.uv_nondeg is False:
        rec.violations.append(f"U x V pairing degenerate (dim U = {uv.dim_u}, dim V = {uv.dim_v})")
    rec.status = VIOLATION if rec.violations else "Confirmed"
    return rec


def candidate_ells(P: WeilPolynomial) -> list[int]:
    return sorted(q for q in factor(P(1)) if q != 2)


def instances(corpus: Iterable[CurveSpec]) -> list[tuple[CurveSpec, int | None]]:
    out = []
    for spec in corpus:
        ells = candidate_ells(weil_polynomial(spec.curve()))
        out.extend((spec, ell) for ell in ells)
        if not ells:
            out.append((spec, None))
    return out


def _run(args) -> TheoremRecord:
    spec, ell, config = args
    if ell is None:
        P = weil_polynomial(spec.curve())
        return TheoremRecord(spec.label, spec.p, list(spec.f), None, "Skipped(NoOddEll)", [P.a1, P.a2])
    return analyze_instance(spec, ell, config)


def worker_count() -> int:
    env = os.environ.get("G2CM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def scan(corpus: Iterable[CurveSpec], config: ScanConfig, *, workers: int | None = None) -> list[TheoremRecord]:
    """One record per (curve, l), sorted by (label, l) whatever the worker count."""
    jobs = [(spec, ell, config) for spec, ell in instances(corpus)]
    workers = workers or worker_count()
    if workers == 1 or len(jobs) <= 1:
        records = [_run(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run, jobs))
    return sorted(records, key=lambda r: (r.label, r.ell or 0))


def exit_code(records: Iterable[TheoremRecord]) -> int:
    bad = any(r.status == VIOLATION or r.status.startswith("Error(") for r in records)
    return EXIT_VIOLATION if bad else EXIT_OK


# -- persistence -----------------------------------------------------------------------


def read_corpus(path: str) -> list[CurveSpec]:
    specs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                specs.append(CurveSpec.from_dict(json.loads(line)))
            except (json.JSONDecodeError, ValueError, G2CMError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return specs


def write_report(records: Iterable[TheoremRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


def read_report(path: str) -> Iterator[TheoremRecord]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield TheoremRecord.from_json(line)


SUMMARY_COLUMNS = ["label", "ell", "k", "kappa", "n_confirms", "n_not_applicable", "status"]


def summary_csv(records: Iterable[TheoremRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for r in records:
        w.writerow([r.label, r.ell if r.ell is not None else "", r.k if r.k is not None else "",
                    r.kappa if r.kappa is not None else "", r.n_confirms, r.n_not_applicable, r.status])
    return buf.getvalue()


# -- pairing axioms -------------------------------------------------------------------


@dataclass
class AxiomTally:
    cases: int = 0
    failures: dict[str, int] = field(default_factory=dict)

    def record(self, name: str, ok: bool) -> None:
        self.cases += 1
        if not ok:
            self.failures[name] = self.failures.get(name, 0) + 1

    @property
    def ok(self) -> bool:
        return not self.failures


def pairing_axioms(B: TorsionBasis, rng: random.Random, cases: int) -> AxiomTally:
    """Seeded checks of bilinearity, anti-symmetry, l-th power triviality and
    Tate well-definedness modulo lJ, all over the field of the basis B."""
    ell, F = B.ell, B.field
    C = B.points[0].curve
    tally = AxiomTally()

    def torsion_point():
        return combine(B, [rng.randrange(ell) for _ in range(4)])

    for _ in range(cases):
        x, y = torsion_point(), torsion_point()
        a = rng.randrange(1, ell)
        e = weil(x, y, ell, F, rng)
        tally.record("weil_self", weil(x, x, ell, F, rng) == F.one)
        tally.record("weil_antisymmetry", e * weil(y, x, ell, F, rng) == F.one)
        tally.record("weil_bilinear", weil(scalar_mul(x, a), y, ell, F, rng) == e**a)
        tally.record("ell_power", e**ell == F.one)
        w, z = random_divisor(C, F, rng), random_divisor(C, F, rng)
        t = tate_reduced(x, w, ell, F, rng)
        tally.record("tate_well_defined", tate_reduced(x, cantor_add(w, scalar_mul(z, ell)), ell, F, rng) == t)
        tally.record("tate_linear", tate_reduced(x, scalar_mul(w, a), ell, F, rng) == t**a)
    return tally
