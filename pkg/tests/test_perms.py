import math
import random

import pytest

from haarcay.graphs import haar_graph, right_translation_vertex_perm
from haarcay.groups import cyclic_group, dihedral_group, mask_of, quaternion_group
from haarcay.perms import (
    BudgetExceeded,
    PermGroup,
    bsgs,
    identity_perm,
    is_identity,
    perm_order,
    pinv,
    pmul,
)


def sym_gens(n):
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    return [swap, cycle]


def cyc_perm(n, shift=1):
    return tuple((i + shift) % n for i in range(n))


def test_perm_primitives():
    p = (1, 2, 0, 3)
    q = (0, 1, 3, 2)
    assert pmul(p, q)[0] == 1 and pmul(p, q)[2] == 0
    assert pmul(p, pinv(p)) == identity_perm(4)
    assert perm_order(p) == 3 and perm_order(q) == 2
    assert is_identity(identity_perm(5))


def test_symmetric_group_order():
    for n in (3, 4, 5, 6, 13):
        G = bsgs(sym_gens(n))
        assert G.order == math.factorial(n)
    assert bsgs(sym_gens(13)).order > 2 ** 32  # exact big-int order


def test_alternating_group_order():
    a5 = bsgs([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])  # 5-cycle and 3-cycle
    assert a5.order == 60 and a5.is_transitive()
    assert a5.stabilizer(0).order == 12


def test_trivial_group():
    G = PermGroup(5)
    assert G.order == 1
    assert G.is_semiregular() and not G.is_transitive()
    assert G.contains(identity_perm(5))
    assert not G.contains((1, 0, 2, 3, 4))


def test_right_translations_give_group_of_order_h():
    for H in (cyclic_group(6), dihedral_group(5), quaternion_group()):
        S = mask_of(range(H.order)) & ~1 | 1
        gens = [right_translation_vertex_perm(H, g) for g in range(H.order)]
        G = bsgs(gens)
        assert G.order == H.order
        orbits = G.orbits()
        assert sorted(len(o) for o in orbits) == [H.order, H.order]
        assert G.is_semiregular() and not G.is_transitive()
        assert orbits[0] == list(range(H.order))  # the two parts are the orbits
        assert orbits[1] == list(range(H.order, 2 * H.order))


def test_cayley_action_is_regular():
    from haarcay.groups import GroupTable

    def cayley_perm(H: GroupTable, g: int):
        return tuple(H.mult[h][g] for h in range(H.order))

    for H in (cyclic_group(7), dihedral_group(4), quaternion_group()):
        G = bsgs([cayley_perm(H, g) for g in range(H.order)])
        assert G.is_regular()
        assert G.stabilizer(0).order == 1


def test_order_matches_exhaustive_enumeration():
    rng = random.Random(5)
    for _ in range(8):
        n = rng.randrange(4, 8)
        gens = []
        for _ in range(2):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        G = bsgs(gens, degree=n)
        if G.order <= 10 ** 4:
            assert G.order == len(set(G.elements()))


def test_orbit_stabilizer_relation():
    rng = random.Random(9)
    for n, gens in [(6, sym_gens(6)), (8, [cyc_perm(8)]),
                    (6, [cyc_perm(6), tuple((-i) % 6 for i in range(6))])]:
        G = bsgs(gens, degree=n)
        for _ in range(4):
            v = rng.randrange(n)
            assert G.order == len(G.orbit_of(v)) * G.stabilizer(v).order


def test_membership_products_and_rejection():
    rng = random.Random(13)
    G = bsgs([cyc_perm(10), tuple((-i) % 10 for i in range(10))])  # dihedral, order 20
    assert G.order == 20
    for _ in range(20):
        p = identity_perm(10)
        for _ in range(rng.randrange(1, 6)):
            p = pmul(p, rng.choice(G.generators))
        assert G.contains(p)
    rejected = 0
    for _ in range(20):
        q = list(range(10))
        rng.shuffle(q)
        if not G.contains(tuple(q)):
            rejected += 1
    assert rejected >= 15  # random permutations are almost never dihedral


def test_stabilizer_sizes():
    G = bsgs(sym_gens(6))
    assert G.stabilizer(3).order == math.factorial(5)
    D6 = bsgs([cyc_perm(6), tuple((-i) % 6 for i in range(6))])
    assert D6.order == 12
    assert D6.stabilizer(0).order == 2  # the reflection through the vertex


def test_base_is_deterministic_smallest_nonfixed():
    G = bsgs(sym_gens(5))
    assert G.base[0] == 0
    G2 = bsgs([cyc_perm(6, 2), cyc_perm(6, 4)])  # fixes nothing, moves 0
    assert G2.base == [0]


def test_setwise_stabilizer():
    G = bsgs(sym_gens(5))
    H = G.setwise_stabilizer([0, 1])
    assert H.order == math.factorial(2) * math.factorial(3)
    for g in H.generators:
        assert {g[0], g[1]} == {0, 1}
    D6 = bsgs([cyc_perm(6), tuple((-i) % 6 for i in range(6))])
    B = D6.setwise_stabilizer([0, 3])
    assert B.order == 4  # rotation by 3 and the axis reflection generate V4
    with pytest.raises(BudgetExceeded):
        bsgs(sym_gens(8)).setwise_stabilizer([0, 2, 4], budget=5)


def test_normalizes():
    C6 = bsgs([cyc_perm(6)])
    D6 = bsgs([cyc_perm(6), tuple((-i) % 6 for i in range(6))])
    assert D6.normalizes(C6)
    S6 = bsgs(sym_gens(6))
    assert not S6.normalizes(C6)


def test_semiregular_iff_trivial_point_stabilizers():
    rng = random.Random(21)
    H = quaternion_group()
    g, _ = haar_graph(H, mask_of([0, 4]))
    gens = [right_translation_vertex_perm(H, a) for a in (H.gen("i"), H.gen("j"))]
    G = bsgs(gens)
    assert G.is_semiregular()
    for v in range(G.degree):
        assert G.stabilizer(v).order == 1
