import numpy as np
import pytest

from linsets.geometry import (
    FqSubspace,
    ProjectivePoint,
    ProjectiveSubspace,
    line_through,
    normalize_point,
    random_subspace,
    subspace_from_vectors,
)
from linsets.linalg import rank
from linsets.linset import (
    check_size_lower_bound,
    coverage,
    extend,
    identities,
    is_h_scattered,
    is_saturating,
    is_scattered,
    linear_set,
    point_weight,
    secant_lines,
    weight,
)
from linsets.paperverify import example_subspace, firstform_subspace, weight_three_line


def test_example_set(f2):
    U = example_subspace(f2)
    L = linear_set(U)
    assert U.dim == 5
    assert L.size == 31 == 16 + 8 + 4 + 2 + 1
    assert L.spectrum == (31, 0, 0, 0, 0)
    assert weight(U, weight_three_line(f2)) == 4
    assert point_weight(U, ProjectivePoint((0, 0, 1))) == 1
    assert weight(U, ProjectiveSubspace.whole(f2, 3)) == 5
    assert is_scattered(U)


@pytest.mark.parametrize("fx, size", [("f2", 15), ("f3", 40)])
def test_firstform_is_scattered(request, fx, size):
    spec = request.getfixturevalue(fx)
    U = firstform_subspace(spec)
    L = linear_set(U)
    assert L.size == size and set(L.weights.tolist()) == {1}
    assert is_scattered(U)


def test_single_generator(f3):
    U = subspace_from_vectors(f3, [[4, 0, 7]], 3)
    L = linear_set(U)
    assert L.size == 1 and L.weights.tolist() == [1]
    with pytest.raises(ValueError):
        linear_set(FqSubspace(f3, 3, np.zeros((0, 12))))


def test_weight_two_point(f2):
    U = subspace_from_vectors(f2, [[1, 0, 3], [2, 0, 6]], 3)
    L = linear_set(U)
    assert L.size == 1 and L.spectrum == (0, 1)
    assert not is_scattered(U)
    assert not is_h_scattered(U, 1)


def test_weights_match_intersections(f2, f3):
    # the enumeration weight against the direct intersection with each point
    rng = np.random.default_rng(12)
    for spec in (f2, f3):
        for _ in range(15):
            n = int(rng.integers(1, 7))
            U = random_subspace(spec, n, 3, rng)
            L = linear_set(U)
            assert all(identities(L).values())
            for P, w in L.weight_map().items():
                assert point_weight(U, P) == w
            P = ProjectivePoint((1, 1, 1))
            assert L.weight_of(P) == point_weight(U, P)


def test_h_scattered(f2):
    U = firstform_subspace(f2)
    assert is_h_scattered(U, 1)
    assert is_h_scattered(U, 2)
    assert not is_h_scattered(U, 3)  # rank 4 exceeds 3
    line_only = subspace_from_vectors(f2, [[1, 0, 0], [2, 0, 0], [0, 1, 0]], 3)
    assert not any(is_h_scattered(line_only, h) for h in (1, 2, 3))
    ex = example_subspace(f2)
    assert not is_h_scattered(ex, 2)  # line z = 0 has weight 4
    with pytest.raises(ValueError):
        is_h_scattered(U, 0)
    with pytest.raises(ValueError):
        is_h_scattered(U, 4)


def test_saturation_examples(f2):
    cert = is_saturating(example_subspace(f2))
    assert cert.saturated and cert.witness is None and cert.covered_count == cert.total == 273
    cert = is_saturating(firstform_subspace(f2))
    assert not cert.saturated and cert.witness == ProjectivePoint((0, 0, 1))
    assert cert.covered_count < 273
    single = subspace_from_vectors(f2, [[1, 2, 3]], 3)
    cert = is_saturating(single)
    assert not cert.saturated and cert.covered_count == 0
    assert is_saturating(single, rho=1).covered_count == 1
    with pytest.raises(ValueError):
        is_saturating(single, rho=3)


def test_coverage_by_brute_force(f2):
    # a small set, covered points recomputed pair by pair through the line formula
    U = subspace_from_vectors(f2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    L = linear_set(U)
    want = set()
    pts = L.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            want.update(line_through(f2, pts[i], pts[j]))
    mask = coverage(U, 2, L)
    space = L.space
    assert {space.point(i) for i in np.flatnonzero(mask)} == want
    assert len(secant_lines(L)) == 7  # Fano plane


def _apply_gl(spec, U, A):
    F = spec.fqm
    vecs = np.asarray(U.generators())
    out = np.zeros_like(vecs)
    for j in range(3):
        for i in range(3):
            out[:, j] = F.add(out[:, j], F.mul(vecs[:, i], A[i, j]))
    return subspace_from_vectors(spec, out, 3)


def test_saturation_is_projectively_invariant(f2):
    rng = np.random.default_rng(8)
    for U in (example_subspace(f2), firstform_subspace(f2), random_subspace(f2, 5, 3, rng)):
        while True:
            A = rng.integers(0, 16, size=(3, 3))
            if rank(f2.fqm, A) == 3:
                break
        V = _apply_gl(f2, U, A)
        assert V.dim == U.dim
        a, b = is_saturating(U), is_saturating(V)
        assert a.saturated == b.saturated and a.covered_count == b.covered_count
        assert linear_set(U).spectrum == linear_set(V).spectrum


def test_extend_small_cases(f2):
    U = subspace_from_vectors(f2, [[1, 0, 0]], 3)
    U1, rep = extend(U, [0, 1, 0])
    assert U1.dim == 2 and rep.size_after == 3 and rep.ok and rep.spans_disjoint
    with pytest.raises(ValueError):
        extend(U, [1, 0, 0])
    with pytest.raises(ValueError):
        extend(U, [0, 0, 0])
    # three-dim U inside z = 0, v off that line
    W = subspace_from_vectors(f2, [[1, 0, 0], [2, 0, 0], [0, 1, 0]], 3)
    before = linear_set(W).size
    _, rep = extend(W, [0, 0, 1])
    assert rep.size_after == before + 8 and rep.ok


def test_extend_random(f3):
    rng = np.random.default_rng(21)
    done = 0
    while done < 60:
        U = random_subspace(f3, int(rng.integers(1, 5)), 3, rng)
        v = rng.integers(0, 81, size=3)
        if not v.any() or linear_set(U).contains(normalize_point(f3, v)):
            continue
        _, rep = extend(U, v)
        assert rep.new_points_weight_one
        if rep.spans_disjoint:
            assert rep.size_after == rep.size_before + 3 ** U.dim
        done += 1


def test_size_bound(f2, f3):
    rng = np.random.default_rng(4)
    for spec in (f2, f3):
        for _ in range(40):
            n = int(rng.integers(2, 5))
            chk = check_size_lower_bound(random_subspace(spec, n, 2, rng))
            assert chk.holds and chk.bound == spec.q ** (n - 1) + 1
    with pytest.raises(ValueError):
        check_size_lower_bound(random_subspace(f2, 3, 3, seed=0))
