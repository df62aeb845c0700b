"""F_q-linear sets L_U: points, weights, spectrum, scatteredness and saturation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import (
    FqSubspace,
    ProjectivePoint,
    ProjectiveSubspace,
    fqm_subspace_as_fq,
    hyperplane_intersection_dims,
    intersect_dim,
    projective_space,
    subspace_from_vectors,
)


def _gauss_points(q: int, n: int) -> int:
    return (q ** n - 1) // (q - 1)


@dataclass(frozen=True, eq=False)
class LinearSet:
    """L_U with per-point weights.

    ``point_indices`` index into ``projective_space(spec, k).points`` and are
    sorted; ``weights`` is aligned with them.  ``spectrum[i - 1]`` is N_i.
    """

    U: FqSubspace
    point_indices: np.ndarray
    weights: np.ndarray
    spectrum: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.U.dim

    @property
    def size(self) -> int:
        return len(self.point_indices)

    def __len__(self) -> int:
        return self.size

    @property
    def space(self):
        return projective_space(self.U.spec, self.U.k)

    @property
    def points(self) -> list[ProjectivePoint]:
        sp = self.space
        return [sp.point(i) for i in self.point_indices]

    def weight_of(self, P: ProjectivePoint) -> int:
        i = self.space.index_of(P)
        pos = np.searchsorted(self.point_indices, i)
        if pos < self.size and self.point_indices[pos] == i:
            return int(self.weights[pos])
        return 0

    def weight_map(self) -> dict[ProjectivePoint, int]:
        return dict(zip(self.points, (int(w) for w in self.weights)))

    def contains(self, P: ProjectivePoint) -> bool:
        return self.weight_of(P) > 0


def identities(L: LinearSet) -> dict[str, bool]:
    """The counting relations every linear set of rank n satisfies."""
    q = L.U.spec.q
    n = L.rank
    N = L.spectrum
    size = L.size
    top2 = np.sort(L.weights)[-2:] if size >= 2 else np.array([0])
    return {
        "size_le_max": size <= _gauss_points(q, n),
        "size_eq_spectrum_sum": size == sum(N),
        "weighted_spectrum": sum(Ni * _gauss_points(q, i) for i, Ni in enumerate(N, 1))
        == _gauss_points(q, n),
        "size_mod_q": size == 0 or size % q == 1 % q,
        "pair_weights_le_rank": int(top2.sum()) <= n,
    }


def linear_set(U: FqSubspace) -> LinearSet:
    """Enumerate U \\ {0}, group the vectors by the point they span.

    A point of weight w collects exactly q^w - 1 vectors of U.
    """
    if U.dim == 0:
        raise ValueError("the zero subspace has an empty linear set")
    spec = U.spec
    q = spec.q
    n = U.dim
    space = projective_space(spec, U.k)
    vecs = spec.from_fq_coords(U.vectors()[1:])
    idx = space.normalize_index(vecs)
    pts, counts = np.unique(idx, return_counts=True)
    by_count = {q ** w - 1: w for w in range(1, n + 1)}
    try:
        weights = np.array([by_count[int(c)] for c in counts], dtype=np.int64)
    except KeyError as exc:
        raise RuntimeError(f"multiplicity {exc} is not of the form q^w - 1") from None
    spectrum = tuple(int((weights == i).sum()) for i in range(1, n + 1))
    L = LinearSet(U, pts, weights, spectrum)
    failed = [name for name, ok in identities(L).items() if not ok]
    if failed:
        raise RuntimeError(f"linear set violates {failed}")
    return L


def weight(U: FqSubspace, S: ProjectiveSubspace) -> int:
    """dim_{F_q}(U ∩ W) for the projective subspace S = PG(W, q^m)."""
    if S.spec != U.spec or S.k != U.k:
        raise ValueError("subspace and linear set live in different spaces")
    return intersect_dim(U, fqm_subspace_as_fq(S))


def point_weight(U: FqSubspace, P: ProjectivePoint) -> int:
    return weight(U, ProjectiveSubspace.point(U.spec, P))


def is_scattered(U: FqSubspace) -> bool:
    L = linear_set(U)
    by_size = L.size == _gauss_points(U.spec.q, U.dim)
    by_weight = int(L.weights.max()) == 1
    if by_size != by_weight:
        raise RuntimeError("size and weight criteria for scatteredness disagree")
    return by_size


def is_h_scattered(U: FqSubspace, h: int) -> bool:
    """Spans the space and every (h-1)-dimensional projective subspace has weight <= h."""
    k = U.k
    if not 1 <= h <= k:
        raise ValueError(f"h must lie in 1..{k}")
    if U.dim == 0 or U.fqm_rank() != k:
        return False
    if h == k:
        return U.dim <= h
    if h == 1:
        return int(linear_set(U).weights.max()) <= 1
    if h == k - 1:
        return int(hyperplane_intersection_dims(U).max()) <= h
    raise NotImplementedError("only points, hyperplanes and the whole space are enumerated")


@dataclass(frozen=True)
class SaturationCertificate:
    saturated: bool
    witness: Optional[ProjectivePoint]
    covered_count: int
    total: int

    def to_json(self) -> dict:
        return {
            "saturated": self.saturated,
            "covered": self.covered_count,
            "total": self.total,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def secant_lines(L: LinearSet) -> np.ndarray:
    """Canonical (A, B) point-index pairs of all lines meeting L in >= 2 points."""
    space = L.space
    idx = L.point_indices
    if len(idx) < 2:
        return np.zeros((0, 2), dtype=np.int64)
    i, j = np.triu_indices(len(idx), k=1)
    P = space.points[idx[i]]
    Q = space.points[idx[j]]
    return np.unique(space.canonical_lines(P, Q), axis=0)


def coverage(U: FqSubspace, rho: int = 2, L: Optional[LinearSet] = None) -> np.ndarray:
    """Boolean mask over the points of the space covered by L_U.

    rho = 1 covers the points of L_U, rho = 2 every point on a secant line.
    """
    if rho not in (1, 2):
        raise ValueError(f"rho={rho} unsupported, only 1 (points) and 2 (secant lines)")
    if L is None:
        L = linear_set(U)
    space = L.space
    mask = np.zeros(len(space), dtype=bool)
    if rho == 1:
        mask[L.point_indices] = True
        return mask
    lines = secant_lines(L)
    if len(lines):
        mask[np.concatenate([space.line_points(a, b) for a, b in lines])] = True
    return mask


def is_saturating(U: FqSubspace, rho: int = 2, L: Optional[LinearSet] = None) -> SaturationCertificate:
    mask = coverage(U, rho, L)
    covered = int(mask.sum())
    if covered == len(mask):
        return SaturationCertificate(True, None, covered, len(mask))
    first = int(np.argmin(mask))
    return SaturationCertificate(False, projective_space(U.spec, U.k).point(first), covered, len(mask))


@dataclass(frozen=True)
class ExtensionReport:
    size_before: int
    size_after: int
    new_points: int
    new_points_weight_one: bool
    spans_disjoint: bool
    expected_size: Optional[int]

    @property
    def ok(self) -> bool:
        return self.new_points_weight_one and (
            self.expected_size is None or self.expected_size == self.size_after)


def extend(U: FqSubspace, v) -> tuple[FqSubspace, ExtensionReport]:
    """U1 = U + <v>_{F_q} for a vector v whose point is not in L_U."""
    spec = U.spec
    v = np.asarray(v, dtype=np.int64)
    if not v.any():
        raise ValueError("v must be nonzero")
    space = projective_space(spec, U.k)
    L = linear_set(U) if U.dim else None
    vi = int(space.normalize_index(v[None])[0])
    if L is not None and vi in set(L.point_indices.tolist()):
        raise ValueError("the point spanned by v already lies in L_U")
    U1 = U + subspace_from_vectors(spec, [v], U.k)
    L1 = linear_set(U1)
    before = set() if L is None else set(L.point_indices.tolist())
    new = np.array([i not in before for i in L1.point_indices.tolist()], dtype=bool)
    # <v> meets the F_{q^m}-span of U trivially iff adding v raises its rank
    disjoint = U1.fqm_rank() == U.fqm_rank() + 1
    report = ExtensionReport(
        size_before=0 if L is None else L.size,
        size_after=L1.size,
        new_points=int(new.sum()),
        new_points_weight_one=bool((L1.weights[new] == 1).all()),
        spans_disjoint=bool(disjoint),
        expected_size=(0 if L is None else L.size) + spec.q ** U.dim if disjoint else None,
    )
    return U1, report


@dataclass(frozen=True)
class SizeBoundCheck:
    holds: bool
    vacuous: bool
    size: int
    bound: int

    def __bool__(self):
        return self.holds


def check_size_lower_bound(U: FqSubspace) -> SizeBoundCheck:
    """|L_U| >= q^(n-1) + 1 for rank 1 < n <= m on the projective line with a weight-1 point."""
    if U.k != 2:
        raise ValueError("the size bound concerns linear sets of PG(1, q^m)")
    spec = U.spec
    n = U.dim
    L = linear_set(U)
    bound = spec.q ** (n - 1) + 1
    if not (1 < n <= spec.m) or not (L.weights == 1).any():
        return SizeBoundCheck(True, True, L.size, bound)
    return SizeBoundCheck(L.size >= bound, False, L.size, bound)


def certificate(U: FqSubspace) -> dict:
    """Summary used by the CLI: rank, size, spectrum, scatteredness and saturation."""
    L = linear_set(U)
    cert = is_saturating(U, 2, L)
    return {
        "rank": L.rank,
        "size": L.size,
        "spectrum": list(L.spectrum),
        "scattered": L.size == _gauss_points(U.spec.q, L.rank),
        "saturating_rho2": cert.saturated,
        "witness": None if cert.witness is None else cert.witness.to_json(),
    }
