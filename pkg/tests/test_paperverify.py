import json

import pytest

from linsets.geometry import ProjectivePoint, projective_space
from linsets.linset import linear_set
from linsets import paperverify as pv


def _gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def test_bound_table():
    assert pv.s_lower_bound(pv.BoundQuery(3, 4, 3, 2)) == 4
    assert pv.s_lower_bound(pv.BoundQuery(2, 4, 3, 2)) == 3
    assert pv.s_lower_bound(pv.BoundQuery(2, 4, 3, 1)) == 9
    with pytest.raises(ValueError):
        pv.BoundQuery(2, 4, 3, 0)


def test_desk_scale_guard():
    with pytest.raises(pv.DeskScaleError):
        pv.tower(5)


@pytest.mark.parametrize("q", [2, 3])
def test_secondform_count(q):
    spec = pv.tower(q)
    want = _gaussian_binomial(4, 3, q) * (q ** 4 - 1) // (q - 1)
    assert len(pv.hyperplane_subspaces(q, 4)) == _gaussian_binomial(4, 3, q)
    assert len(pv.projective_scalars(spec)) == (q ** 4 - 1) // (q - 1)
    assert sum(1 for _ in pv.secondform_family(spec)) == want


def test_secondform_candidates_are_distinct_rank4(f2):
    seen = set()
    for _, _, U in pv.secondform_family(f2):
        assert U.dim == 4
        seen.add(U)
    assert len(seen) == 225


def test_line_weights(f2):
    # every secondform set has weight 3 on z = 0; the firstform meets lines in weight <= 2
    for _, _, U in pv.secondform_family(f2):
        assert pv.line_z0_weight(U) == 3
    assert pv.line_z0_weight(pv.firstform_subspace(f2)) <= 2
    assert pv.line_z0_weight(pv.example_subspace(f2)) == 4


def test_main_q2():
    rep = pv.verify_theorem_main(2)
    out = rep.to_json()
    assert out["rank4_candidates"] == 226
    assert out["rank4_saturating"] == 0
    assert out["points"] == 273
    assert rep.minimal_rank_is_five
    assert rep.firstform_result.origin_uncovered
    assert rep.example_result.certificate.covered_count == 273


def test_secondform_contains_origin(f2):
    # t = 1, x = 0 gives (0, 0, u'), so (0, 0, 1) lies in every secondform set
    for _, _, U in pv.secondform_family(f2):
        assert linear_set(U).contains(pv.ORIGIN_Z)


def test_negative_control_flips_conclusion(f2):
    rep = pv.verify_theorem_main(2, extra=[pv.example_subspace(f2)])
    assert not rep.rank4_all_unsaturated
    assert not rep.minimal_rank_is_five
    assert not rep.conclusion


def test_threads_do_not_change_output():
    a = pv.verify_theorem_main(2, threads=1).to_json()
    b = pv.verify_theorem_main(2, threads=4).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_rank5_line(f2):
    U = pv.rank5_line(f2)
    L = linear_set(U)
    assert U.dim == 5 and L.size == 17
    assert all(p.coords[2] == 0 for p in L.points)


def test_rank5_sizes():
    assert sorted(pv.rank5_sizes(2)) == [17, 21, 25, 27, 29, 31]


def test_sampling_reports():
    rep = pv.rank5_size_census(2, 0)
    assert rep.ok and rep.sizes == {}
    assert rep.details["constructed_line"] == {"size": 17, "saturated": False}
    rep = pv.random_rank4_never_saturating(2, 20, seed=1)
    assert rep.ok and sum(rep.sizes.values()) == 20
    rep = pv.verify_identities(3, 2, 30, seed=2)
    assert rep.ok and rep.details["passed"]["size_mod_q"] == 30


def test_sampling_is_seeded():
    a = pv.rank5_size_census(2, 20, seed=5).to_json()
    b = pv.rank5_size_census(2, 20, seed=5).to_json()
    assert a == b


def test_origin_is_first_point(f3):
    assert projective_space(f3, 3).point(0) == ProjectivePoint((0, 0, 1))
