import random

import pytest

from haarcay.groups import (
    GroupConstructionError,
    center_mask,
    connection_set,
    cyclic_group,
    dihedral_group,
    direct_product,
    elements_of,
    evaluate_word,
    group_automorphisms,
    group_from_name,
    group_from_spec,
    group_isomorphism,
    inner_automorphism,
    inverse_mask,
    is_group_automorphism,
    is_inner_abelian,
    is_normal_subgroup,
    mask_of,
    miller_moreno_group,
    mp1_group,
    mp_group,
    presented_group,
    quaternion_group,
    quotient,
    subgroup_generated,
)

from oracles import (
    all_subgroups,
    brute_force_group_automorphisms,
    inner_abelian_by_subgroup_enumeration,
)

A4_SPEC = {
    "family": "Presented",
    "ngens": 3,
    "relators": ["xx", "yy", "zzz", "XYxy", "Zxzy", "ZyzXY"],
}


def small_catalog():
    return [
        cyclic_group(1), cyclic_group(2), cyclic_group(6), cyclic_group(8),
        dihedral_group(3), dihedral_group(4), dihedral_group(5), dihedral_group(7),
        quaternion_group(),
        direct_product([cyclic_group(2), cyclic_group(2)]),
        direct_product([cyclic_group(2), cyclic_group(4)]),
        mp_group(2, 2, 1), mp_group(2, 2, 2), mp_group(2, 3, 1),
        mp1_group(3, 1, 1), mp1_group(2, 2, 1),
        miller_moreno_group(2, 2, 3, 1),
        miller_moreno_group(3, 1, 2, 2),
        miller_moreno_group(5, 1, 2, 2),
        group_from_spec(A4_SPEC),
    ]


def test_family_orders():
    assert dihedral_group(3).order == 6
    assert not dihedral_group(3).is_abelian()
    assert quaternion_group().order == 8
    assert mp_group(2, 2, 1).order == 8
    assert mp_group(2, 3, 2).order == 32
    assert mp1_group(3, 1, 1).order == 27
    assert mp1_group(2, 2, 1).order == 16
    assert mp1_group(2, 2, 2).order == 32
    assert miller_moreno_group(2, 2, 3, 1).order == 12
    assert miller_moreno_group(5, 1, 2, 3).order == 40
    assert miller_moreno_group(2, 3, 7, 1).order == 56
    assert miller_moreno_group(2, 4, 5, 1).order == 80


def test_constraint_violations_are_reported():
    with pytest.raises(GroupConstructionError):
        mp_group(2, 1, 1)  # m >= 2
    with pytest.raises(GroupConstructionError):
        mp1_group(2, 1, 1)  # p=2 needs m+n >= 3
    with pytest.raises(GroupConstructionError, match="does not divide"):
        miller_moreno_group(2, 2, 5, 1)  # 5 does not divide 3
    with pytest.raises(GroupConstructionError, match="must be <"):
        miller_moreno_group(2, 4, 3, 1)  # n >= q
    with pytest.raises(GroupConstructionError, match="ord"):
        miller_moreno_group(2, 6, 7, 1)  # ord_7(2)=3, no degree-6 action


def test_axioms_hold_on_catalog():
    for H in small_catalog():
        H.validate()  # Latin square, identity, inverses, associativity


def test_multiply_identity_and_element_orders():
    Q8 = quaternion_group()
    for x in range(8):
        assert Q8.mul(0, x) == x and Q8.mul(x, 0) == x
    center = center_mask(Q8)
    for x in range(1, 8):
        if not (center >> x) & 1:
            assert Q8.element_order(x) == 4
    H = mp1_group(3, 1, 1)
    assert H.element_order(H.gen("b")) == 3
    assert H.element_order(H.gen("a")) == 3


def test_subgroup_generated():
    Q8 = quaternion_group()
    assert subgroup_generated(Q8, 0) == 1  # <empty> = {identity}
    assert subgroup_generated(Q8, 1 << Q8.gen("i")) .bit_count() == 4
    for H in (mp_group(2, 2, 1), mp1_group(3, 1, 1), mp_group(2, 3, 2)):
        ab = mask_of([H.gen("a"), H.gen("b")])
        assert subgroup_generated(H, ab) == (1 << H.order) - 1


def test_center_and_normality():
    Q8 = quaternion_group()
    z = center_mask(Q8)
    assert z.bit_count() == 2
    assert is_normal_subgroup(Q8, z)
    H = mp1_group(3, 1, 1)
    c = H.commutator(H.gen("a"), H.gen("b"))
    assert c == H.gen("c")
    assert (center_mask(H) >> c) & 1


def test_quotient_by_whole_group_and_trivial():
    H = dihedral_group(4)
    full = (1 << H.order) - 1
    Q, proj = quotient(H, full)
    assert Q.order == 1 and set(proj) == {0}
    Q2, proj2 = quotient(H, 1)
    assert Q2.order == H.order and list(proj2) == list(range(H.order))


def test_quotient_mp232_by_b2_satisfies_mp21_relations():
    H = mp_group(2, 3, 2)
    b = H.gen("b")
    N = subgroup_generated(H, 1 << H.power(b, 2))
    Q, proj = quotient(H, N)
    assert Q.order == 16
    assert group_isomorphism(Q, mp_group(2, 3, 1)) is not None
    a_, b_ = proj[H.gen("a")], proj[b]
    assert Q.element_order(a_) == 8 and Q.element_order(b_) == 2
    c_ = Q.commutator(a_, b_)
    assert c_ == Q.power(a_, 4)  # [a,b] = a^(p^(m-1))


def test_quotient_mm5123_by_b4_is_z5_sd_z4():
    H = miller_moreno_group(5, 1, 2, 3)
    b = H.gen("b")
    N = subgroup_generated(H, 1 << H.power(b, 4))
    Q, proj = quotient(H, N)
    assert Q.order == 20
    assert group_isomorphism(Q, miller_moreno_group(5, 1, 2, 2)) is not None
    a_, b_ = proj[H.gen("a")], proj[b]
    assert Q.element_order(a_) == 5 and Q.element_order(b_) == 4
    assert Q.conjugate(a_, b_) == Q.inverse(a_)  # b inverts a


def test_group_isomorphisms_from_presentations():
    assert group_isomorphism(mp_group(2, 2, 1), dihedral_group(4)) is not None
    a4 = group_from_spec(A4_SPEC)
    assert a4.order == 12
    assert group_isomorphism(miller_moreno_group(2, 2, 3, 1), a4) is not None
    assert group_isomorphism(quaternion_group(), dihedral_group(4)) is None


def test_presented_matches_canonical_action():
    z23z7 = presented_group(4, [
        "xx", "yy", "zz", "uuuuuuu", "XYxy", "XZxz", "YZyz",
        "Uxuy", "Uyuz", "Uzuxy"])
    assert z23z7.order == 56
    assert group_isomorphism(z23z7, miller_moreno_group(2, 3, 7, 1)) is not None
    z24z5 = presented_group(5, [
        "xx", "yy", "zz", "vv", "wwwww",
        "XYxy", "XZxz", "XVxv", "YZyz", "YVyv", "ZVzv",
        "Wxwv", "Wywxy", "Wzwyz", "Wvwzv"], labels=["x", "y", "z", "v", "w"])
    assert z24z5.order == 80
    assert group_isomorphism(z24z5, miller_moreno_group(2, 4, 5, 1)) is not None


def test_presented_inconsistency_raises():
    with pytest.raises(GroupConstructionError, match="order does not divide"):
        # z is declared an involution but the action x -> y -> xy has order 3
        presented_group(3, ["xx", "yy", "zz", "XYxy", "Zxzy", "ZyzXY"])
    with pytest.raises(GroupConstructionError, match="unsupported relator"):
        presented_group(2, ["xx", "yy", "xyxyxy"])
    # consistent involution action builds fine
    assert presented_group(2, ["xx", "yy", "Yxyx"]).order == 4


def test_miller_moreno_action_is_fixed_point_free_order_q():
    for (p, n, q, m) in [(2, 2, 3, 1), (5, 1, 2, 2), (2, 3, 7, 1), (3, 1, 2, 1)]:
        H = miller_moreno_group(p, n, q, m)
        a, b = H.gen("a"), H.gen("b")
        P = subgroup_generated(H, 1 << a)
        # Sylow p-subgroup = closure of all order-p elements
        P = subgroup_generated(
            H, mask_of(e for e in range(H.order) if H.element_order(e) == p))
        assert P.bit_count() == p ** n
        conj = [H.conjugate(x, b) for x in range(H.order)]
        for x in elements_of(P):
            if x != 0:
                assert conj[x] != x  # fixed point free
        # order q on P: conjugating q times is the identity
        acc = list(range(H.order))
        for _ in range(q):
            acc = [conj[x] for x in acc]
        assert all(acc[x] == x for x in elements_of(P))


def test_automorphism_search_cap():
    big = miller_moreno_group(2, 5, 31, 1)  # order 992 exceeds the cap
    with pytest.raises(ValueError, match="capped"):
        group_automorphisms(big)


def test_automorphism_group_sizes():
    assert len(group_automorphisms(cyclic_group(5))) == 4
    v4 = direct_product([cyclic_group(2), cyclic_group(2)])
    assert len(group_automorphisms(v4)) == 6
    q8_auts = group_automorphisms(quaternion_group())
    assert len(q8_auts) == 24


def test_q8_automorphisms_match_brute_force():
    Q8 = quaternion_group()
    assert sorted(group_automorphisms(Q8)) == sorted(brute_force_group_automorphisms(Q8))


def test_automorphisms_closed_under_composition():
    import math
    for H in (dihedral_group(4), quaternion_group(), mp1_group(2, 2, 1)):
        auts = group_automorphisms(H)
        aset = set(auts)
        for f in auts[:6]:
            for g in auts[:6]:
                assert tuple(g[f[x]] for x in range(H.order)) in aset
        assert math.factorial(H.order) % len(auts) == 0
        for f in auts:
            assert is_group_automorphism(H, f)


def test_inner_automorphisms():
    H = dihedral_group(5)
    assert inner_automorphism(H, 0) == tuple(range(H.order))
    A = cyclic_group(12)
    for y in range(12):
        assert inner_automorphism(A, y) == tuple(range(12))
    M = mp1_group(3, 1, 1)
    a, b, c = M.gen("a"), M.gen("b"), M.gen("c")
    # a^b = a*c per the commutation rule a^i b^j = b^j a^i c^(ij)
    assert inner_automorphism(M, b)[a] == M.mul(a, c)


def test_inner_abelian():
    assert is_inner_abelian(quaternion_group())
    assert not is_inner_abelian(cyclic_group(9))
    assert not is_inner_abelian(direct_product([cyclic_group(2), cyclic_group(2)]))
    assert is_inner_abelian(group_from_spec(A4_SPEC))
    assert is_inner_abelian(mp1_group(3, 1, 1))
    assert is_inner_abelian(dihedral_group(4))
    assert not is_inner_abelian(dihedral_group(6))  # contains D6? S3 x Z2, has D6 subgroup


def test_inner_abelian_matches_subgroup_enumeration_up_to_30():
    for H in small_catalog():
        if H.order <= 30:
            assert is_inner_abelian(H) == inner_abelian_by_subgroup_enumeration(H), H.tag


def test_subgroup_lattice_oracle_sane():
    # |subgroups(Q8)| = 6: 1, Z2, three Z4, Q8
    assert len(all_subgroups(quaternion_group())) == 6


def test_family_spec_json_roundtrip():
    H = group_from_spec({"family": "MpMN", "p": 3, "m": 2, "n": 1})
    assert H.order == 27 and H.tag == "MpMN(3,2,1)"
    K = group_from_spec({"family": "DirectProduct", "factors": [
        {"family": "Cyclic", "n": 2}, {"family": "Cyclic", "n": 4}]})
    assert K.order == 8 and K.is_abelian()
    assert group_from_name("MpMN1(3,1,1)").order == 27
    assert group_from_name("Q8").tag == "Q8"


def test_word_evaluation():
    D7 = dihedral_group(7)
    a, b = D7.gen("a"), D7.gen("b")
    assert evaluate_word(D7, "1") == 0
    assert evaluate_word(D7, "a3") == D7.power(a, 3)
    assert evaluate_word(D7, "a-1") == D7.inverse(a)
    assert evaluate_word(D7, "a2b") == D7.mul(D7.power(a, 2), b)
    S = connection_set(D7, "1,a,a3,b,ab,a2b,a4b")
    assert S.bit_count() == 7
    mm = miller_moreno_group(2, 2, 3, 2)
    # a^b as a word: b^-1 a b
    assert evaluate_word(mm, "b-1ab") == mm.conjugate(mm.gen("a"), mm.gen("b"))


def test_masks_inverse_and_translates():
    H = dihedral_group(5)
    S = connection_set(H, "1,a,b")
    assert inverse_mask(H, inverse_mask(H, S)) == S
    symm = connection_set(H, "a,a-1")
    assert inverse_mask(H, symm) == symm


def test_element_index_ordering_is_documented_normal_form():
    # Dihedral(n): a^i b^j at index 2i+j; MpMN(p,m,n): a^i b^j at i*p^n + j
    D = dihedral_group(4)
    assert D.gen("a") == 2 and D.gen("b") == 1
    M = mp_group(2, 2, 1)
    assert M.gen("a") == 2 and M.gen("b") == 1 and M.gen("c") == 4
    Q = quaternion_group()
    assert Q.gen("i") == 4 and Q.gen("j") == 2


def test_random_catalog_axiom_spotchecks():
    rng = random.Random(7)
    for H in small_catalog():
        n = H.order
        for _ in range(50):
            x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            assert H.mul(H.mul(x, y), z) == H.mul(x, H.mul(y, z))
            assert H.mul(x, H.inverse(x)) == 0
