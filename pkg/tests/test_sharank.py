"""Torsion, the dimension identity, Sha clauses, and the naive point search."""

from __future__ import annotations

import pytest

from iqdescent.descent import CurveSpec, DescentError, selmer_dims
from iqdescent.qfield import quad_field
from iqdescent.sharank import (
    RationalPoint,
    build_report,
    dimension_identity,
    point_search,
    sha_two_part_reduction,
    two_torsion,
)


def curve(D, p, eps=1):
    return CurveSpec(eps, p, p + 2, quad_field(D))


def test_two_torsion():
    t = two_torsion(curve(-7, 3))
    assert t.affine_x == (0, -3, -5)
    assert t.order == 4 and t.structure == "Z/2Z x Z/2Z"
    t2 = two_torsion(curve(-7, 3, -1))
    assert t2.affine_x == (0, 3, 5)


def test_dimension_identity_values():
    assert dimension_identity(0, 3) == 1
    assert dimension_identity(2, 3) == 3
    assert dimension_identity(0, 2) == 0
    assert dimension_identity(1, 2) == 1
    with pytest.raises(DescentError):
        dimension_identity(0, 1)
    with pytest.raises(DescentError):
        dimension_identity(1, 0)


def test_sha_clause_shapes():
    assert sha_two_part_reduction(0, 2).kind == "full_determination"
    assert sha_two_part_reduction(0, 3).kind == "dual_two_part"
    assert sha_two_part_reduction(0, 3).value == 1
    assert sha_two_part_reduction(1, 2).kind == "self_two_part"
    assert sha_two_part_reduction(1, 2).value == 1
    assert sha_two_part_reduction(2, 3).kind == "three_term"
    assert sha_two_part_reduction(2, 3).value == 3
    assert sha_two_part_reduction(1, 4).value == 3


def test_point_search_torsion_only_small():
    c = curve(-1, 5)
    res = point_search(c, 400)
    assert len(res.points) == 3
    assert all(not pt.y_num for pt in res.points)
    assert res.rank_lower == 0
    assert sorted(pt.x_num.a for pt in res.points) == [-7, -5, 0]
    for pt in res.points:
        assert pt.verify(c)


def test_point_search_verifies_and_bounds(rng):
    for c in (curve(-7, 3), curve(-3, 5), curve(-11, 17, -1)):
        res = point_search(c, 300)
        for pt in res.points:
            assert pt.verify(c)
        dims = selmer_dims(c)
        assert res.rank_lower <= dimension_identity(*dims)


def test_point_search_finds_nontrivial_points():
    # y^2 = x(x-3)(x-5) has the rational point (x, y) = (1, 2*sqrt-ish): check
    # a curve with eps=-1 where small points exist over the field
    c = curve(-7, 3, -1)
    res = point_search(c, 400)
    nontrivial = [pt for pt in res.points if pt.y_num]
    # x = 4: 4*1*(-1) = -4 is not a square; x = 6: 6*3*1 = 18 not a square in
    # Q(sqrt(-7)); but x = (3 + sqrt(-7))/2 * conj = norm 4 cases can appear.
    # All found points must at least re-verify; count is curve-dependent.
    for pt in nontrivial:
        assert pt.verify(c)


def test_report_assembly():
    c = curve(-1, 5)
    res = point_search(c, 400)
    rep = build_report(c, 0, 2, res)
    assert rep.identity_value == 0
    assert rep.rank_interval == (0, 0)
    assert rep.sha_clause.kind == "full_determination"
    assert rep.mw_confirmed_torsion_only is True
    rep2 = build_report(curve(-7, 3), 0, 3)
    assert rep2.rank_interval == (0, 1)
    assert rep2.sha_clause.kind == "dual_two_part"


def test_rational_point_height():
    K = quad_field(-1)
    pt = RationalPoint(K.elem(-7), K.one, K.zero)
    assert pt.height == 49
