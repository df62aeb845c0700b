"""Desk-scale checks of the rank-4 / rank-5 saturation results in PG(2, q^4).

The rank-4 candidates are the two canonical shapes

    {(x, x^q, x^{q^2}) : x in F_{q^4}}
    {(x, x^q, t u') : x in Z, t in F_q}     Z a 3-dim F_q-subspace of F_{q^4}

and the rank-5 reference set is {(x, x^q, a) : x in F_{q^4}, a in F_q}.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional

import numpy as np

from .geometry import (
    FqSubspace,
    ProjectivePoint,
    ProjectiveSubspace,
    random_subspace,
    subspace_from_vectors,
)
from .gf import FieldSpec, make_field_tower
from .linset import (
    SaturationCertificate,
    identities,
    is_saturating,
    linear_set,
    weight,
)

DESK_SCALE_Q = (2, 3)
M = 4
K = 3
ORIGIN_Z = ProjectivePoint((0, 0, 1))


class DeskScaleError(ValueError):
    pass


@dataclass(frozen=True)
class BoundQuery:
    q: int
    m: int
    k: int
    rho: int

    def __post_init__(self):
        if self.q < 2 or self.rho < 1 or self.k < 2 or self.m < 1:
            raise ValueError(f"invalid bound query {self}")


def s_lower_bound(bq: BoundQuery) -> int:
    """Lower bound on the smallest rank of a rho-saturating linear set.

    ``rho`` counts the spanning points, so rho = 2 is the secant-line case.
    """
    q, m, k, rho = bq.q, bq.m, bq.k, bq.rho
    if q > 2:
        return (m * k) // rho - m + rho
    if rho > 1:
        return (m * k - 1) // rho - m + rho
    return m * (k - 1) + 1


def tower(q: int) -> FieldSpec:
    if q not in DESK_SCALE_Q:
        raise DeskScaleError(f"q={q} is outside the desk-scale limit {DESK_SCALE_Q}")
    return make_field_tower(q, 1, M)


def _fq_basis(spec: FieldSpec) -> np.ndarray:
    return spec.q ** np.arange(spec.m, dtype=np.int64)


def example_subspace(spec: FieldSpec) -> FqSubspace:
    """{(x, x^q, a)}: rank 5, scattered."""
    b = _fq_basis(spec)
    gens = np.stack([b, spec.frobenius(b, 1), np.zeros_like(b)], axis=1)
    return subspace_from_vectors(spec, np.vstack([gens, [[0, 0, 1]]]), K)


def firstform_subspace(spec: FieldSpec) -> FqSubspace:
    b = _fq_basis(spec)
    gens = np.stack([b, spec.frobenius(b, 1), spec.frobenius(b, 2)], axis=1)
    return subspace_from_vectors(spec, gens, K)


def hyperplane_subspaces(q: int, n: int) -> list[np.ndarray]:
    """All (n-1)-dim subspaces of F_q^n as RREF (n-1) x n matrices, deterministic order."""
    out = []
    r = n - 1
    for pivots in combinations(range(n), r):
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for vals in product(range(q), repeat=len(free)):
            Mz = np.zeros((r, n), dtype=np.int64)
            for i, p in enumerate(pivots):
                Mz[i, p] = 1
            for (i, c), v in zip(free, vals):
                Mz[i, c] = v
            out.append(Mz)
    return out


def projective_scalars(spec: FieldSpec) -> np.ndarray:
    """Nonzero elements of F_{q^m} whose first nonzero F_q-coordinate is 1.

    u' and c*u' (c in F_q^*) give the same subspace, so these represent all u'.
    """
    els = spec.fqm.elements()[1:]
    co = spec.fqm.coords(els)
    lead = np.take_along_axis(co, (co != 0).argmax(axis=1)[:, None], axis=1)[:, 0]
    return els[lead == 1]


def secondform_subspace(spec: FieldSpec, Zrows: np.ndarray, u: int) -> FqSubspace:
    z = spec.fqm.from_coords(Zrows)
    gens = np.stack([z, spec.frobenius(z, 1), np.zeros_like(z)], axis=1)
    return subspace_from_vectors(spec, np.vstack([gens, [[0, 0, int(u)]]]), K)


def secondform_family(spec: FieldSpec) -> Iterator[tuple[int, int, FqSubspace]]:
    """Yield (z_index, u_index, U) over all Z and all projective u'."""
    Zs = hyperplane_subspaces(spec.q, spec.m)
    us = projective_scalars(spec)
    for zi, Zrows in enumerate(Zs):
        for ui, u in enumerate(us):
            yield zi, ui, secondform_subspace(spec, Zrows, u)


@dataclass(frozen=True)
class CandidateResult:
    """Saturation outcome for one candidate; ``origin`` is the point (0,0,1)."""

    label: str
    rank: int
    size: int
    certificate: SaturationCertificate
    origin_uncovered: bool
    origin_in_set: bool

    def to_json(self) -> dict:
        return {"label": self.label, "rank": self.rank, "size": self.size,
                "origin_uncovered": self.origin_uncovered,
                "origin_in_set": self.origin_in_set,
                **self.certificate.to_json()}


def _check(U: FqSubspace, label: str) -> CandidateResult:
    L = linear_set(U)
    cert = is_saturating(U, 2, L)
    # (0,0,1) is the first point in the order, so it is the witness whenever uncovered
    origin = cert.witness == ORIGIN_Z
    return CandidateResult(label, U.dim, L.size, cert, origin,
                           L.contains(ORIGIN_Z))


def _run(jobs, threads: int) -> list[CandidateResult]:
    if threads <= 1:
        return [_check(U, label) for label, U in jobs]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(lambda j: _check(j[1], j[0]), jobs))


@dataclass
class TheoremMainReport:
    q: int
    firstform_result: CandidateResult
    secondform_results: list[tuple[int, int, CandidateResult]]
    example_result: CandidateResult
    extra_results: list[CandidateResult] = field(default_factory=list)

    @property
    def rank4_results(self) -> list[CandidateResult]:
        return ([self.firstform_result] + [r for _, _, r in self.secondform_results]
                + self.extra_results)

    @property
    def conclusion(self) -> bool:
        """Every rank-4 candidate fails with (0,0,1) uncovered, and the example saturates."""
        rank4_fail = all(not r.certificate.saturated and r.origin_uncovered
                         for r in self.rank4_results)
        return rank4_fail and self.example_result.certificate.saturated

    @property
    def rank4_all_unsaturated(self) -> bool:
        return not any(r.certificate.saturated for r in self.rank4_results)

    @property
    def minimal_rank_is_five(self) -> bool:
        """No rank-4 candidate saturates and the rank-5 example does."""
        return self.rank4_all_unsaturated and self.example_result.certificate.saturated

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "conclusion": self.conclusion,
            "minimal_rank_is_five": self.minimal_rank_is_five,
            "rank4_candidates": len(self.rank4_results),
            "rank4_saturating": sum(r.certificate.saturated for r in self.rank4_results),
            "rank4_origin_uncovered": sum(r.origin_uncovered for r in self.rank4_results),
            "rank4_origin_in_set": sum(r.origin_in_set for r in self.rank4_results),
            "points": self.example_result.certificate.total,
            "example": self.example_result.to_json(),
            "firstform": self.firstform_result.to_json(),
            "secondform": [{"z": zi, "u": ui, **r.to_json()} for zi, ui, r in self.secondform_results],
            "extra": [r.to_json() for r in self.extra_results],
        }


def verify_theorem_main(q: int, threads: int = 1,
                        extra: Optional[list[FqSubspace]] = None) -> TheoremMainReport:
    """Check every canonical rank-4 candidate fails and the rank-5 example saturates.

    ``extra`` subspaces are appended to the rank-4 list; a negative control.
    """
    spec = tower(q)
    first = _check(firstform_subspace(spec), "firstform")
    family = list(secondform_family(spec))
    results = _run([(f"secondform[{zi},{ui}]", U) for zi, ui, U in family], threads)
    second = [(zi, ui, r) for (zi, ui, _), r in zip(family, results)]
    extra_res = [_check(U, f"extra[{i}]") for i, U in enumerate(extra or [])]
    return TheoremMainReport(q, first, second, _check(example_subspace(spec), "example"), extra_res)


@dataclass
class SamplingReport:
    q: int
    trials: int
    seed: int
    rank: int
    violations: list[dict]
    sizes: dict[int, int] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"q": self.q, "rank": self.rank, "trials": self.trials, "seed": self.seed,
                "ok": self.ok, "sizes": {str(k): v for k, v in sorted(self.sizes.items())},
                **self.details, "violations": self.violations}


def random_rank4_never_saturating(q: int, trials: int, seed: int = 0) -> SamplingReport:
    spec = tower(q)
    rng = np.random.default_rng(seed)
    report = SamplingReport(q, trials, seed, 4, [])
    for t in range(trials):
        U = random_subspace(spec, 4, K, rng)
        L = linear_set(U)
        report.sizes[L.size] = report.sizes.get(L.size, 0) + 1
        if is_saturating(U, 2, L).saturated:
            report.violations.append({"trial": t, "subspace": U.to_json()})
    return report


def rank5_sizes(q: int) -> dict[int, str]:
    """The six possible sizes of a rank-5 linear set of PG(2, q^4)."""
    q2, q3, q4 = q ** 2, q ** 3, q ** 4
    return {
        q4 + 1: "line",
        q4 + q2 + 1: "baer subplane",
        q4 + q3 + 1: "q^4+q^3+1",
        q4 + q3 + q2 + 1: "q^4+q^3+q^2+1",
        q4 + q3 + q2 - q + 1: "q^4+q^3+q^2-q+1",
        q4 + q3 + q2 + q + 1: "scattered",
    }


def rank5_line(spec: FieldSpec) -> FqSubspace:
    """{(x, x^q, 0)} + <(1, 0, 0)>: a rank-5 subspace inside the line z = 0."""
    b = _fq_basis(spec)
    gens = np.stack([b, spec.frobenius(b, 1), np.zeros_like(b)], axis=1)
    return subspace_from_vectors(spec, np.vstack([gens, [[1, 0, 0]]]), K)


def rank5_size_census(q: int, trials: int, seed: int = 0) -> SamplingReport:
    """Sample rank-5 sets: sizes must be in the six-value list and
    saturation must hold exactly for the ones that are not a line."""
    spec = tower(q)
    allowed = rank5_sizes(q)
    rng = np.random.default_rng(seed)
    report = SamplingReport(q, trials, seed, 5, [])
    lines = 0
    for t in range(trials):
        U = random_subspace(spec, 5, K, rng)
        L = linear_set(U)
        is_line = U.fqm_rank() <= 2
        lines += is_line
        saturated = is_saturating(U, 2, L).saturated
        report.sizes[L.size] = report.sizes.get(L.size, 0) + 1
        if L.size not in allowed:
            report.violations.append({"trial": t, "reason": "size", "size": L.size})
        if saturated == is_line:
            report.violations.append({"trial": t, "reason": "saturation", "line": bool(is_line),
                                      "saturated": saturated})
    ref = rank5_line(spec)
    ref_L = linear_set(ref)
    ref_sat = is_saturating(ref, 2, ref_L).saturated
    ref_ok = ref_L.size == q ** 4 + 1 and not ref_sat and ref.fqm_rank() == 2
    if not ref_ok:
        report.violations.append({"reason": "constructed line", "size": ref_L.size,
                                  "saturated": ref_sat})
    report.details = {"sampled_lines": int(lines),
                      "constructed_line": {"size": ref_L.size, "saturated": ref_sat}}
    return report


def verify_identities(q: int, k: int, trials: int, seed: int = 0,
                      ranks: tuple[int, ...] = (1, 2, 3, 4, 5, 6)) -> SamplingReport:
    """Counting identities on random subspaces; trials cycle through ``ranks``."""
    spec = tower(q)
    rng = np.random.default_rng(seed)
    report = SamplingReport(q, trials, seed, 0, [])
    checked = {name: 0 for name in
               ("size_le_max", "size_eq_spectrum_sum", "weighted_spectrum",
                "size_mod_q", "pair_weights_le_rank")}
    for t in range(trials):
        n = ranks[t % len(ranks)]
        U = random_subspace(spec, n, k, rng)
        L = linear_set(U)
        for name, ok in identities(L).items():
            checked[name] += ok
            if not ok:
                report.violations.append({"trial": t, "identity": name})
        report.sizes[L.size] = report.sizes.get(L.size, 0) + 1
    report.details = {"k": k, "passed": checked}
    return report


def weight_three_line(spec: FieldSpec) -> ProjectiveSubspace:
    """The line z = 0."""
    return ProjectiveSubspace(spec, K, np.array([[1, 0, 0], [0, 1, 0]]))


def line_z0_weight(U: FqSubspace) -> int:
    return weight(U, weight_three_line(U.spec))
