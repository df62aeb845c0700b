"""Rank-metric codes over F_{q^m}, Moore matrices, Gabidulin codes and systems."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from .geometry import (
    FqSubspace,
    ProjectiveSubspace,
    fqm_subspace_as_fq,
    hyperplane_intersection_dims,
    intersect_dim,
    projective_space,
)
from .gf import FieldSpec
from .linalg import batch_rank, rank

# exhaustive scans enumerate at most this many codewords (q^{mk})
MAX_CODEWORDS = 1 << 26
_CHUNK = 1 << 15


def rank_weights(spec: FieldSpec, V) -> np.ndarray:
    """Rank weight of each row of V (shape (B, n)) over F_q."""
    V = np.asarray(V, dtype=np.int64)
    if V.ndim == 1:
        V = V[None]
    out = np.empty(len(V), dtype=np.int64)
    for start in range(0, len(V), _CHUNK):
        block = V[start:start + _CHUNK]
        out[start:start + _CHUNK] = batch_rank(spec.fq, spec.fqm.coords(block))
    return out


def rank_weight(spec: FieldSpec, v: Sequence[int]) -> int:
    """dim_{F_q} of the span of the entries of v."""
    return int(rank_weights(spec, np.asarray(v, dtype=np.int64)[None])[0])


def _matmul(spec: FieldSpec, X, G) -> np.ndarray:
    """X @ G over F_{q^m}; X has shape (B, k), G (k, n)."""
    fqm = spec.fqm
    X = np.asarray(X, dtype=np.int64)
    out = np.zeros((X.shape[0], G.shape[1]), dtype=np.int64)
    for i in range(G.shape[0]):
        out = fqm.add(out, fqm.mul(X[:, i, None], G[i][None, :]))
    return out


class RankMetricCode:
    """Linear code generated by the rows of a k x n matrix over F_{q^m}."""

    def __init__(self, spec: FieldSpec, G, mrd_guaranteed: bool = False):
        G = np.array(G, dtype=np.int64)
        if G.ndim != 2 or G.shape[0] == 0:
            raise ValueError("generator matrix must be a nonempty 2-d array")
        if rank(spec.fqm, G) != G.shape[0]:
            raise ValueError("generator rows are dependent over F_{q^m}")
        G.setflags(write=False)
        self.spec = spec
        self.G = G
        self.k, self.n = G.shape
        self.mrd_guaranteed = mrd_guaranteed

    def __repr__(self):
        return f"RankMetricCode(n={self.n}, k={self.k})"

    @cached_property
    def nondegenerate(self) -> bool:
        """Columns of G independent over F_q."""
        cols = self.spec.to_fq_coords(self.G.T)
        return rank(self.spec.fq, cols) == self.n

    def encode(self, X) -> np.ndarray:
        return _matmul(self.spec, np.atleast_2d(X), self.G)

    def _projective_codewords(self):
        """Codewords of the messages in PG(k-1, q^m), in chunks."""
        spec = self.spec
        if spec.q ** (spec.m * self.k) > MAX_CODEWORDS:
            raise ValueError("code too large for exhaustive enumeration")
        msgs = projective_space(spec, self.k).points
        for start in range(0, len(msgs), _CHUNK):
            yield self.encode(msgs[start:start + _CHUNK])

    @cached_property
    def projective_weights(self) -> np.ndarray:
        return np.concatenate([rank_weights(self.spec, cw) for cw in self._projective_codewords()])

    @cached_property
    def d(self) -> int:
        return int(self.projective_weights.min())

    def weight_distribution(self) -> dict[int, int]:
        """Rank-weight histogram over all codewords, the zero word included."""
        scale = self.spec.qm - 1
        hist = Counter(int(w) for w in self.projective_weights)
        out = {0: 1}
        for w in sorted(hist):
            out[w] = hist[w] * scale
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "G": self.G.tolist()}


def code_from_json(spec: FieldSpec, data: dict) -> RankMetricCode:
    G = np.asarray(data["G"], dtype=np.int64)
    if G.shape != (int(data["k"]), int(data["n"])):
        raise ValueError("G does not have shape k x n")
    if ((G < 0) | (G >= spec.qm)).any():
        raise ValueError("G has entries outside F_{q^m}")
    return RankMetricCode(spec, G)


def load_code(spec: FieldSpec, path: str) -> RankMetricCode:
    with open(path) as fh:
        return code_from_json(spec, json.load(fh))


def min_distance(C: RankMetricCode) -> int:
    return C.d


def system_of(C: RankMetricCode) -> FqSubspace:
    """F_q-span of the columns of G, a subspace of F_{q^m}^k of dimension n."""
    if not C.nondegenerate:
        raise ValueError("degenerate code has no associated system")
    return FqSubspace(C.spec, C.k, C.spec.to_fq_coords(C.G.T))


def code_of(U: FqSubspace) -> RankMetricCode:
    """Code whose generator columns are the RREF basis of U, in basis order."""
    if U.fqm_rank() != U.k:
        raise ValueError("U does not span F_{q^m}^k")
    return RankMetricCode(U.spec, U.generators().T)


def min_distance_geometric(C: RankMetricCode) -> int:
    """n minus the largest F_q-dimension of U ∩ H over F_{q^m}-hyperplanes H."""
    if C.k < 2:
        raise ValueError("the geometric path needs k >= 2")
    U = system_of(C)
    return C.n - int(hyperplane_intersection_dims(U).max())


def codeword_weight_geometric(C: RankMetricCode, x: Sequence[int]) -> int:
    """Rank weight of xG as n - dim_{F_q}(U ∩ x^perp)."""
    U = system_of(C)
    H = ProjectiveSubspace.hyperplane(C.spec, x)
    return C.n - intersect_dim(U, fqm_subspace_as_fq(H))


def singleton_ok(n: int, k: int, d: int, m: int) -> bool:
    return m * k <= max(m, n) * (min(m, n) - d + 1)


def is_mrd(C: RankMetricCode) -> bool:
    m = C.spec.m
    return m * C.k == max(m, C.n) * (min(m, C.n) - C.d + 1)


def moore_matrix(spec: FieldSpec, v: Sequence[int], k: int, s: int = 1) -> np.ndarray:
    """Rows v, σ(v), ..., σ^{k-1}(v) with σ: x -> x^(q^s)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > spec.m:
        raise ValueError("Moore matrix order k exceeds m")
    v = np.asarray(v, dtype=np.int64)
    return np.stack([spec.frobenius(v, i * s) for i in range(k)])


def gabidulin(spec: FieldSpec, v: Sequence[int], k: int, s: int = 1,
              allow_non_mrd: bool = False) -> RankMetricCode:
    """Generalized Gabidulin code generated by the k x n Moore matrix of v."""
    v = np.asarray(v, dtype=np.int64)
    n = len(v)
    if rank_weight(spec, v) < n:
        raise ValueError("entries of v are not F_q-linearly independent")
    if not 1 <= k <= n <= spec.m:
        raise ValueError("need 1 <= k <= n <= m")
    coprime = gcd(s, spec.m) == 1
    if not coprime and not allow_non_mrd:
        raise ValueError(f"gcd(s, m) = {gcd(s, spec.m)} gives no MRD guarantee")
    return RankMetricCode(spec, moore_matrix(spec, v, k, s), mrd_guaranteed=coprime)


def apply_matrix(C: RankMetricCode, A) -> RankMetricCode:
    """The equivalent code C·A for A in GL(n, q)."""
    spec = C.spec
    A = np.asarray(A, dtype=np.int64)
    if A.shape != (C.n, C.n) or ((A < 0) | (A >= spec.q)).any():
        raise ValueError("A must be an n x n matrix over F_q")
    if rank(spec.fq, A) != C.n:
        raise ValueError("A is singular")
    # F_q sits inside F_{q^m} as the encodings below q
    return RankMetricCode(spec, _matmul(spec, C.G, A), C.mrd_guaranteed)


@dataclass(frozen=True)
class LinearizedPoly:
    """sum_i coeffs[i] * x^(q^i) with q-degree below m."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) > self.spec.m:
            raise ValueError("q-degree must be smaller than m")

    def __call__(self, a):
        spec = self.spec
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        for i, c in enumerate(self.coeffs):
            if c:
                out = spec.fqm.add(out, spec.fqm.mul(c, spec.frobenius(a, i)))
        return out


def is_scattered_poly(f: LinearizedPoly) -> bool:
    """f(a)/a = f(b)/b must force b/a into F_q, for all a, b nonzero.

    Pairs with different ratios satisfy the condition vacuously, so only
    fibers of a -> f(a)/a matter; F_q-proportionality is an equivalence
    relation, so comparing each fiber against its first element suffices.
    """
    spec = f.spec
    fqm = spec.fqm
    a = fqm.elements()[1:]
    ratio = fqm.div(f(a), a)
    order = np.argsort(ratio, kind="stable")
    ratio, a = ratio[order], a[order]
    cuts = np.flatnonzero(np.diff(ratio)) + 1
    for fiber in np.split(a, cuts):
        if len(fiber) < 2:
            continue
        if (fqm.div(fiber[1:], fiber[0]) >= spec.q).any():
            return False
    return True
