"""Points, lines and hyperplanes of PG(k-1, q^m) and F_q-subspaces of F_{q^m}^k.

F_q-subspaces live in flattened form: a vector of F_{q^m}^k becomes the k*m
F_q coordinates of its entries (see ``FieldSpec.to_fq_coords``) and the
subspace is stored by its reduced row echelon basis over F_q, which is the
canonical representative.  F_{q^m}-subspaces keep an F_{q^m} basis and are
converted on demand.

Projective points are normalized so that their first nonzero coordinate is 1;
they are ordered lexicographically on the integer encodings of their
coordinates, so (0, ..., 0, 1) is always the first point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .gf import FieldSpec
from .linalg import batch_rank, rank, rref


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    coords: tuple[int, ...]

    def __post_init__(self):
        nz = [c for c in self.coords if c]
        if not nz or nz[0] != 1:
            raise ValueError(f"not a normalized point: {self.coords}")

    def to_json(self) -> list[int]:
        return list(self.coords)


def _as_vectors(vs) -> np.ndarray:
    return np.asarray(vs, dtype=np.int64)


def normalize_rows(spec: FieldSpec, V) -> np.ndarray:
    """Scale each nonzero row of V so its first nonzero entry is 1."""
    V = _as_vectors(V)
    nz = V != 0
    if not nz.any(axis=-1).all():
        raise ValueError("cannot normalize the zero vector")
    lead = nz.argmax(axis=-1)
    lv = np.take_along_axis(V, lead[..., None], axis=-1)
    return spec.fqm.mul(V, spec.fqm.inv(lv))


def normalize_point(spec: FieldSpec, v: Sequence[int]) -> ProjectivePoint:
    return ProjectivePoint(tuple(int(c) for c in normalize_rows(spec, [v])[0]))


class ProjectiveSpace:
    """PG(k-1, q^m) with its sorted point table and a cache of lines.

    Obtain instances through ``projective_space`` so tables are shared.
    """

    def __init__(self, spec: FieldSpec, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        Q = spec.qm
        if Q ** k >= 1 << 62:
            raise ValueError("projective space too large for the point table")
        self.spec = spec
        self.k = k
        blocks = []
        # lead position k-1 first: those points have the smallest keys
        for lead in range(k - 1, -1, -1):
            tail = k - 1 - lead
            nt = Q ** tail
            blk = np.zeros((nt, k), dtype=np.int64)
            blk[:, lead] = 1
            rest = np.arange(nt, dtype=np.int64)
            for j in range(k - 1, lead, -1):
                blk[:, j] = rest % Q
                rest //= Q
            blocks.append(blk)
        self.points = np.concatenate(blocks)
        self._weights = Q ** np.arange(k - 1, -1, -1, dtype=np.int64)
        self.keys = self.points @ self._weights
        self._line_cache: dict[tuple[int, int], np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.points)

    def point(self, i: int) -> ProjectivePoint:
        return ProjectivePoint(tuple(int(c) for c in self.points[i]))

    def index_of_many(self, P) -> np.ndarray:
        """Indices of already-normalized coordinate rows."""
        keys = _as_vectors(P) @ self._weights
        idx = np.searchsorted(self.keys, keys)
        ok = idx < len(self.keys)
        ok[ok] = self.keys[idx[ok]] == keys[ok]
        if not ok.all():
            raise ValueError("coordinates are not normalized points of this space")
        return idx

    def index_of(self, P) -> int:
        coords = P.coords if isinstance(P, ProjectivePoint) else P
        return int(self.index_of_many([coords])[0])

    def normalize_index(self, V) -> np.ndarray:
        """Point indices of the spans of nonzero vectors."""
        return self.index_of_many(normalize_rows(self.spec, V))

    # -- lines --------------------------------------------------------------

    def canonical_lines(self, P, Q) -> np.ndarray:
        """RREF pair (A, B) of the line through each pair of distinct normalized rows.

        Returns an (E, 2) array of point indices, which identifies the line.
        """
        fqm = self.spec.fqm
        P = _as_vectors(P)
        Q = _as_vectors(Q)
        lp = (P != 0).argmax(axis=1)
        lq = (Q != 0).argmax(axis=1)
        swap = lq < lp
        A = np.where(swap[:, None], Q, P)
        B = np.where(swap[:, None], P, Q)
        same = lp == lq
        if same.any():
            diff = fqm.sub(B[same], A[same])
            if not diff.any(axis=1).all():
                raise ValueError("line through coincident points")
            B[same] = normalize_rows(self.spec, diff)
        lb = (B != 0).argmax(axis=1)
        coef = np.take_along_axis(A, lb[:, None], axis=1)
        A = fqm.sub(A, fqm.mul(coef, B))
        return np.stack([self.index_of_many(A), self.index_of_many(B)], axis=1)

    def line_points(self, a: int, b: int) -> np.ndarray:
        """Sorted point indices on the line with canonical pair (a, b)."""
        key = (int(a), int(b))
        pts = self._line_cache.get(key)
        if pts is None:
            fqm = self.spec.fqm
            A = self.points[a]
            B = self.points[b]
            t = fqm.elements()[:, None]
            rows = fqm.add(A[None, :], fqm.mul(t, B[None, :]))
            pts = np.sort(np.concatenate([self.index_of_many(rows), [b]]))
            self._line_cache[key] = pts
        return pts

    def line_through(self, i: int, j: int) -> np.ndarray:
        ab = self.canonical_lines(self.points[[i]], self.points[[j]])[0]
        return self.line_points(*ab)

    # -- hyperplanes --------------------------------------------------------

    @cached_property
    def hyperplane_bases(self) -> np.ndarray:
        """Flattened F_q bases of x^perp for every point x, shape (N, m(k-1), mk).

        x^perp is taken for the standard dot product; the row for point i
        describes the hyperplane dual to ``points[i]``.
        """
        spec = self.spec
        fqm = spec.fqm
        X = self.points
        N, k = X.shape
        lead = (X != 0).argmax(axis=1)
        W = np.zeros((N, k - 1, k), dtype=np.int64)
        for n_i in range(N):
            others = [j for j in range(k) if j != lead[n_i]]
            for r, j in enumerate(others):
                W[n_i, r, j] = 1
                W[n_i, r, lead[n_i]] = fqm.neg(X[n_i, j])
        ys = (spec.q ** np.arange(spec.m, dtype=np.int64))
        Wy = fqm.mul(W[:, :, None, :], ys[None, None, :, None])
        Wy = Wy.reshape(N, (k - 1) * spec.m, k)
        return spec.to_fq_coords(Wy)


@lru_cache(maxsize=None)
def projective_space(spec: FieldSpec, k: int) -> ProjectiveSpace:
    return ProjectiveSpace(spec, k)


def enumerate_points(spec: FieldSpec, k: int) -> list[ProjectivePoint]:
    space = projective_space(spec, k)
    return [space.point(i) for i in range(len(space))]


def line_through(spec: FieldSpec, P: ProjectivePoint, Q: ProjectivePoint) -> list[ProjectivePoint]:
    if P == Q:
        raise ValueError("line_through needs two distinct points")
    space = projective_space(spec, len(P.coords))
    pts = space.line_through(space.index_of(P), space.index_of(Q))
    return [space.point(i) for i in pts]


class FqSubspace:
    """An F_q-subspace of F_{q^m}^k held as its RREF basis over F_q."""

    __slots__ = ("spec", "k", "basis")

    def __init__(self, spec: FieldSpec, k: int, basis):
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, k * spec.m)
        self.spec = spec
        self.k = k
        self.basis, _ = rref(spec.fq, basis)
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.k * self.spec.m

    def __eq__(self, other):
        return (isinstance(other, FqSubspace) and self.spec == other.spec
                and self.k == other.k and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.spec, self.k, self.basis.tobytes()))

    def __repr__(self):
        return f"FqSubspace(k={self.k}, dim={self.dim})"

    def generators(self) -> np.ndarray:
        """Basis rows as vectors of F_{q^m}^k."""
        return self.spec.from_fq_coords(self.basis)

    def vectors(self) -> np.ndarray:
        """All q^dim flattened vectors, the zero vector first."""
        fq = self.spec.fq
        q = self.spec.q
        n = self.dim
        combos = np.arange(q ** n, dtype=np.int64)
        acc = np.zeros((q ** n, self.ambient_dim), dtype=np.int64)
        for j in range(n):
            c = combos % q
            combos = combos // q
            acc = fq.add(acc, fq.mul(c[:, None], self.basis[j][None, :]))
        return acc

    def contains(self, flat) -> bool:
        flat = np.asarray(flat, dtype=np.int64).reshape(1, -1)
        return rank(self.spec.fq, np.vstack([self.basis, flat])) == self.dim

    def __add__(self, other: "FqSubspace") -> "FqSubspace":
        _check_ambient(self, other)
        return FqSubspace(self.spec, self.k, np.vstack([self.basis, other.basis]))

    def fqm_rank(self) -> int:
        """Dimension over F_{q^m} of the span of the subspace."""
        if self.dim == 0:
            return 0
        return rank(self.spec.fqm, self.generators())

    def to_json(self) -> dict:
        return {"k": self.k, "generators": self.generators().tolist()}


def _check_ambient(A: FqSubspace, B: FqSubspace) -> None:
    if A.spec != B.spec or A.k != B.k:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_from_vectors(spec: FieldSpec, vs: Iterable[Sequence[int]], k: int) -> FqSubspace:
    V = np.asarray(list(vs), dtype=np.int64).reshape(-1, k)
    return FqSubspace(spec, k, spec.to_fq_coords(V))


def subspace_from_json(spec: FieldSpec, data: dict) -> FqSubspace:
    k = int(data["k"])
    gens = data.get("generators", [])
    for g in gens:
        if len(g) != k or any(not 0 <= int(c) < spec.qm for c in g):
            raise ValueError(f"bad generator {g!r}")
    return subspace_from_vectors(spec, gens, k)


def load_subspace(spec: FieldSpec, path: str) -> FqSubspace:
    with open(path) as fh:
        return subspace_from_json(spec, json.load(fh))


def intersect_dim(A: FqSubspace, B: FqSubspace) -> int:
    """dim(A ∩ B) = dim A + dim B - dim(A + B)."""
    _check_ambient(A, B)
    if A.dim == 0 or B.dim == 0:
        return 0
    return A.dim + B.dim - rank(A.spec.fq, np.vstack([A.basis, B.basis]))


@dataclass(frozen=True, eq=False)
class ProjectiveSubspace:
    """PG(W, q^m) given by an F_{q^m}-basis of W."""

    spec: FieldSpec
    k: int
    basis: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=np.int64).reshape(-1, self.k)
        if B.shape[0] and rank(self.spec.fqm, B) != B.shape[0]:
            raise ValueError("basis is not independent over F_{q^m}")
        object.__setattr__(self, "basis", B)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def point(cls, spec: FieldSpec, P) -> "ProjectiveSubspace":
        coords = P.coords if isinstance(P, ProjectivePoint) else P
        return cls(spec, len(coords), np.array([coords]))

    @classmethod
    def whole(cls, spec: FieldSpec, k: int) -> "ProjectiveSubspace":
        return cls(spec, k, np.eye(k, dtype=np.int64))

    @classmethod
    def hyperplane(cls, spec: FieldSpec, x: Sequence[int]) -> "ProjectiveSubspace":
        """x^perp for the standard dot product; x = 0 gives the whole space."""
        x = np.asarray(x, dtype=np.int64)
        k = len(x)
        if not x.any():
            return cls.whole(spec, k)
        space = projective_space(spec, k)
        i = space.index_of(normalize_point(spec, x))
        flat = space.hyperplane_bases[i]
        return cls(spec, k, spec.from_fq_coords(flat[:: spec.m]))


def fqm_subspace_as_fq(S: ProjectiveSubspace) -> FqSubspace:
    spec = S.spec
    if S.dim == 0:
        return FqSubspace(spec, S.k, np.zeros((0, S.k * spec.m)))
    ys = spec.q ** np.arange(spec.m, dtype=np.int64)
    W = spec.fqm.mul(S.basis[:, None, :], ys[None, :, None]).reshape(-1, S.k)
    return FqSubspace(spec, S.k, spec.to_fq_coords(W))


def hyperplane_intersection_dims(U: FqSubspace) -> np.ndarray:
    """dim(U ∩ x^perp) for every point x of PG(k-1, q^m), in point order."""
    space = projective_space(U.spec, U.k)
    H = space.hyperplane_bases
    N, h, _ = H.shape
    stacked = np.concatenate([np.broadcast_to(U.basis, (N,) + U.basis.shape), H], axis=1)
    return U.dim + h - batch_rank(U.spec.fq, stacked)


def random_subspace(spec: FieldSpec, dim: int, k: int, seed=0) -> FqSubspace:
    """Uniform random ``dim``-dimensional F_q-subspace of F_q^{mk}.

    Uses ``numpy.random.default_rng(seed)`` (PCG64): draw uniform vectors of
    F_q^{mk} and keep those that raise the rank.  ``seed`` may also be a
    ``numpy.random.Generator``, which is then advanced in place.
    """
    N = k * spec.m
    if not 0 <= dim <= N:
        raise ValueError(f"dim {dim} out of range 0..{N}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rows = np.zeros((0, N), dtype=np.int64)
    while rows.shape[0] < dim:
        v = rng.integers(0, spec.q, size=(1, N))
        cand = np.vstack([rows, v])
        if rank(spec.fq, cand) == cand.shape[0]:
            rows = cand
    return FqSubspace(spec, k, rows)
