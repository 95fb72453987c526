"""K(S,2) bookkeeping, homogeneous spaces, and Selmer group structure."""

from __future__ import annotations

import pytest

from iqdescent.descent import (
    CurveSpec,
    IsogenyDirection,
    UndecidedError,
    class_verdicts,
    hom_space,
    known_members,
    ks2_for,
    membership_prescreen,
    selmer_dims,
    selmer_group,
)
from iqdescent.localfield import SearchPolicy, quartic_locally_solvable
from iqdescent.qfield import quad_field

PHI, PHIHAT = IsogenyDirection.PHI, IsogenyDirection.PHI_HAT


def curve(D, p, eps=1):
    return CurveSpec(eps, p, p + 2, quad_field(D))


def test_ks2_case_a():
    g = ks2_for(curve(-7, 3))
    assert g.names == ["-1", "pi2", "pi2bar", "p", "q"]
    assert len(g.classes()) == 32
    # -1 * pi2 * pi2bar multiplies out to -2
    mask = g.express(quad_field(-7).elem(-2))
    assert g.class_name(mask) == "-1*pi2*pi2bar"


def test_ks2_case_e():
    g = ks2_for(curve(-3, 5))  # p = 5 inert, q = 7 splits
    assert g.names == ["-1", "2", "p", "mu_q", "mu_q_bar"]
    assert len(g.classes()) == 32


def test_ks2_case_d1():
    g = ks2_for(curve(-1, 5))  # p = 5 splits, q = 7 inert
    assert g.names == ["i", "pi2", "mu_p", "mu_p_bar", "q"]
    K = quad_field(-1)
    # -1 = i^2 is a square: the class of -x equals the class of x
    assert g.express(K.elem(-5)) == g.express(K.elem(5))


def test_ks2_express_roundtrip():
    g = ks2_for(curve(-7, 3))
    for mask in range(32):
        assert g.express(g.rep(mask)) == mask


def test_conjugation_is_involution():
    for c in (curve(-7, 3), curve(-1, 5), curve(-3, 5), curve(-11, 17)):
        g = ks2_for(c)
        for mask in range(1 << g.n):
            assert g.conj_mask(g.conj_mask(mask)) == mask


def test_hom_space_forms():
    # raw phi-space at d = 1: w^2 = 1 - 2 eps (p+q) z^2 + 4 z^4
    c = curve(-7, 3)
    g = ks2_for(c)
    hs = hom_space(g.selmer_class(0), c, PHI)
    K = c.field
    assert (hs.model.d, hs.model.c0, hs.model.c2, hs.model.c4) == (
        K.one, K.one, K.elem(-16), K.elem(4))
    # dual space at d = -p with eps = +1 passes through (1, 0)
    hs2 = hom_space(g.selmer_class(g.express(K.elem(-3))), c, PHIHAT)
    rhs = hs2.model.c0 + hs2.model.c2 + hs2.model.c4
    assert rhs == 0


def test_hom_space_normalizations_consistent():
    # the rescaled dyadic forms must agree with substituting z -> alpha z and
    # clearing denominators: c2' * pi2^2 = c2 and c4' * pi2^4 = c4 over D=-2,
    # and over D=-1 (alpha^2 = i/2 for C_d, alpha^2 = -1 for C'_d)
    c2m = curve(-2, 5)
    g2 = ks2_for(c2m)
    K2 = c2m.field
    pi2 = c2m.places.over(2)[0].gen
    for mask in (0, 1, 2, 5):
        m = hom_space(g2.selmer_class(mask), c2m, PHI).model
        d = m.d
        raw_c2, raw_c4 = -2 * c2m.eps * (c2m.p + c2m.q) * d, K2.elem(4)
        assert m.c2 * pi2 * pi2 == raw_c2
        assert m.c4 * pi2**4 == raw_c4
        assert m.note == "z -> z/pi2"
    c1m = curve(-1, 5)
    g1 = ks2_for(c1m)
    K1 = c1m.field
    i = K1.omega
    for mask in (0, 1, 3):
        m = hom_space(g1.selmer_class(mask), c1m, PHI).model
        d = m.d
        raw_c2, raw_c4 = -2 * c1m.eps * (c1m.p + c1m.q) * d, K1.elem(4)
        # alpha^2 = i/2 cross-multiplied: 2 c2' = raw_c2 * i and 4 c4' = raw_c4 * i^2
        assert 2 * m.c2 == raw_c2 * i
        assert 4 * m.c4 == raw_c4 * i * i
        assert m.c4 == -K1.one
        md = hom_space(g1.selmer_class(mask), c1m, PHIHAT).model
        assert md.c2 == -c1m.eps * (c1m.p + c1m.q) * d
        assert md.note == "z -> i*z"


def test_membership_prescreen_rules():
    c = curve(-7, 3)
    g = ks2_for(c)
    K = c.field
    # p | d rejects in the phi direction
    mask_p = g.express(K.elem(3))
    v = membership_prescreen(g.selmer_class(mask_p), c, PHI)
    assert v is not None and v.ell == 3
    # pi2 | d rejects in the dual direction
    mask_pi2 = g.express(c.places.over(2)[0].gen)
    v2 = membership_prescreen(g.selmer_class(mask_pi2), c, PHIHAT)
    assert v2 is not None and v2.ell == 2
    # the identity class is never rejected
    assert membership_prescreen(g.selmer_class(0), c, PHI) is None
    assert membership_prescreen(g.selmer_class(0), c, PHIHAT) is None
    # ramified 2 rejects odd-valuation classes in the phi direction too
    cd = curve(-1, 5)
    gd = ks2_for(cd)
    mask = gd.express(cd.places.over(2)[0].gen)
    vd = membership_prescreen(gd.selmer_class(mask), cd, PHI)
    assert vd is not None and vd.ell == 2


def test_prescreen_soundness_versus_search():
    # every prescreen rejection must be confirmed insolvable at the named place
    for c in (curve(-7, 3), curve(-7, 3, -1), curve(-1, 5), curve(-3, 5), curve(-2, 5)):
        g = ks2_for(c)
        for direction in (PHI, PHIHAT):
            for mask in range(1 << g.n):
                cls = g.selmer_class(mask)
                v = membership_prescreen(cls, c, direction)
                if v is None:
                    continue
                verdict = quartic_locally_solvable(hom_space(cls, c, direction), v)
                assert verdict.status == "insolvable", (c.label(), cls.name, v.label)


def test_known_members_contained():
    for c in (curve(-7, 3), curve(-7, 101), curve(-1, 5), curve(-3, 17), curve(-11, 17)):
        for direction in (PHI, PHIHAT):
            group = selmer_group(c, direction)
            for cls in known_members(c, direction):
                assert group.contains(cls.mask), (c.label(), direction, cls.name)


def test_group_structure_enforced():
    g = selmer_group(curve(-7, 311), PHI)
    members = set(g.member_masks)
    assert 0 in members
    for a in members:
        for b in members:
            assert a ^ b in members
    assert len(members) == 1 << g.dim
    # conjugation stabilizes the group
    ks = ks2_for(curve(-7, 311))
    assert {ks.conj_mask(m) for m in members} == members


def test_selmer_examples_match_tables():
    assert selmer_dims(curve(-7, 3)) == (0, 3)
    assert selmer_dims(curve(-7, 101)) == (1, 2)
    assert selmer_dims(curve(-1, 5)) == (0, 2)
    assert selmer_dims(curve(-2, 5, -1)) == (1, 3)


def test_identity_class_solvable_everywhere():
    for c in (curve(-7, 3), curve(-2, 5), curve(-1, 5), curve(-3, 5)):
        g = ks2_for(c)
        for direction in (PHI, PHIHAT):
            grid = class_verdicts(g.selmer_class(0), c, direction)
            assert all(v.status == "solvable" for v in grid.values())


def test_undecided_is_an_error():
    with pytest.raises(UndecidedError):
        selmer_group(curve(-2, 5), PHI, SearchPolicy(depth=1))


def test_phi_members_match_proposition_at_31():
    # for p = 31 mod 56 the phi-group is exactly {1, pi2, pi2bar, 2}
    g = selmer_group(curve(-7, 311), PHI)
    names = sorted(c.name for c in g.members())
    assert names == ["1", "pi2", "pi2*pi2bar", "pi2bar"]
