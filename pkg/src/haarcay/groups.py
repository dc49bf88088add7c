"""Finite groups of small order as dense multiplication tables.

Elements are indices 0..order-1 with the identity fixed at index 0.  Element
subsets are plain int bitmasks over those indices; every subset helper takes
the owning table explicitly, so masks of different tables never meet.  Family
constructors build each group from an explicit normal form (power words for
the two-generator p-groups, vector-times-cycle pairs for the semidirect
products) and index the normal forms in lexicographic order, which makes the
element numbering reproducible bit for bit.
"""

from __future__ import annotations

import random
import re
from typing import Callable, Iterable, Optional, Sequence

AUT_TABLE_CAP = 200            # automorphism search refuses larger tables
AUT_SIZE_CAP = 10 ** 6         # ... and refuses to return more maps than this
TABLE_ORDER_CAP = 1024
_ASSOC_EXHAUSTIVE_CAP = 100
_ASSOC_SAMPLES = 20000

AutImages = tuple  # length-order tuple: images of a group automorphism


class GroupConstructionError(ValueError):
    """A family constraint or presentation relator was violated."""


class GroupTable:
    """A finite group given by its full multiplication table.

    ``mult[x][y]`` is the product x*y, identity is element 0, ``inv[x]`` the
    inverse.  ``gens`` is a list of (label, element) pairs naming the
    generators used by connection-set words.
    """

    __slots__ = ("order", "mult", "inv", "gens", "tag", "_element_orders", "_aut_cache")

    def __init__(self, mult: Sequence[Sequence[int]],
                 gens: Sequence[tuple[str, int]] = (),
                 tag: Optional[str] = None,
                 validate: bool = True):
        self.order = len(mult)
        self.mult = tuple(tuple(row) for row in mult)
        self.gens = tuple((str(lbl), int(e)) for lbl, e in gens)
        self.tag = tag
        self._element_orders: Optional[tuple[int, ...]] = None
        self._aut_cache: Optional[list[AutImages]] = None
        inv = [-1] * self.order
        for x in range(self.order):
            row = self.mult[x]
            for y in range(self.order):
                if row[y] == 0:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise GroupConstructionError(f"element {x} has no inverse")
        self.inv = tuple(inv)
        if validate:
            self.validate()

    def validate(self) -> None:
        """Check the group axioms: Latin square, identity, inverses,
        associativity (exhaustive up to order 100, sampled above)."""
        n = self.order
        if n < 1 or n > TABLE_ORDER_CAP:
            raise GroupConstructionError(f"order {n} outside supported range 1..{TABLE_ORDER_CAP}")
        full = (1 << n) - 1
        for x in range(n):
            row_mask = 0
            col_mask = 0
            for y in range(n):
                row_mask |= 1 << self.mult[x][y]
                col_mask |= 1 << self.mult[y][x]
            if row_mask != full or col_mask != full:
                raise GroupConstructionError(f"multiplication table is not a Latin square at {x}")
            if self.mult[0][x] != x or self.mult[x][0] != x:
                raise GroupConstructionError("element 0 is not an identity")
            if self.mult[x][self.inv[x]] != 0:
                raise GroupConstructionError(f"inverse table broken at {x}")
        if n <= _ASSOC_EXHAUSTIVE_CAP:
            triples: Iterable[tuple[int, int, int]] = (
                (x, y, z) for x in range(n) for y in range(n) for z in range(n))
        else:
            rng = random.Random(0xA550C)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(_ASSOC_SAMPLES))
        for x, y, z in triples:
            if self.mult[self.mult[x][y]][z] != self.mult[x][self.mult[y][z]]:
                raise GroupConstructionError(f"associativity fails at ({x},{y},{z})")

    # -- element arithmetic -------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def inverse(self, x: int) -> int:
        return self.inv[x]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        acc = 0
        while k:
            if k & 1:
                acc = self.mult[acc][x]
            x = self.mult[x][x]
            k >>= 1
        return acc

    def conjugate(self, x: int, y: int) -> int:
        """y^-1 * x * y."""
        return self.mult[self.mult[self.inv[y]][x]][y]

    def element_order(self, x: int) -> int:
        if self._element_orders is None:
            orders = []
            for e in range(self.order):
                k, acc = 1, e
                while acc != 0:
                    acc = self.mult[acc][e]
                    k += 1
                orders.append(k)
            self._element_orders = tuple(orders)
        return self._element_orders[x]

    def commutator(self, x: int, y: int) -> int:
        """x^-1 * y^-1 * x * y."""
        return self.mult[self.mult[self.mult[self.inv[x]][self.inv[y]]][x]][y]

    def is_abelian(self) -> bool:
        return all(self.mult[x][y] == self.mult[y][x]
                   for x in range(self.order) for y in range(x + 1, self.order))

    def gen(self, label: str) -> int:
        for lbl, e in self.gens:
            if lbl == label:
                return e
        raise KeyError(f"no generator labelled {label!r} in {self.tag or 'group'}")

    def gen_labels(self) -> list[str]:
        return [lbl for lbl, _ in self.gens]

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order}, tag={self.tag!r})"


# -- element-set (bitmask) helpers ------------------------------------------

def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    v = mask
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def mask_image(mask: int, images: Sequence[int]) -> int:
    """Apply an element map (automorphism, projection, ...) to a subset."""
    out = 0
    v = mask
    while v:
        low = v & -v
        out |= 1 << images[low.bit_length() - 1]
        v ^= low
    return out


def left_translate_mask(H: GroupTable, g: int, mask: int) -> int:
    """{g*s : s in mask}."""
    row = H.mult[g]
    out = 0
    v = mask
    while v:
        low = v & -v
        out |= 1 << row[low.bit_length() - 1]
        v ^= low
    return out


def right_translate_mask(H: GroupTable, mask: int, g: int) -> int:
    """{s*g : s in mask}."""
    out = 0
    v = mask
    while v:
        low = v & -v
        out |= 1 << H.mult[low.bit_length() - 1][g]
        v ^= low
    return out


def inverse_mask(H: GroupTable, mask: int) -> int:
    return mask_image(mask, H.inv)


def subgroup_generated(H: GroupTable, mask: int) -> int:
    """Closure of the subset (plus identity) under products and inverses."""
    closed = 1  # identity
    frontier = [0]
    new = [e for e in elements_of(mask) if not (closed >> e) & 1]
    for e in new:
        closed |= 1 << e
    frontier = elements_of(closed)
    while new:
        nxt = []
        for a in new:
            for b in frontier:
                for c in (H.mult[a][b], H.mult[b][a]):
                    if not (closed >> c) & 1:
                        closed |= 1 << c
                        nxt.append(c)
            i = H.inv[a]
            if not (closed >> i) & 1:
                closed |= 1 << i
                nxt.append(i)
        frontier.extend(nxt)
        new = nxt
    size = closed.bit_count()
    assert H.order % size == 0, "subgroup size must divide the group order"
    return closed


def is_subgroup(H: GroupTable, mask: int) -> bool:
    return mask != 0 and subgroup_generated(H, mask) == mask


def is_normal_subgroup(H: GroupTable, mask: int) -> bool:
    if not is_subgroup(H, mask):
        raise ValueError("mask is not a subgroup")
    for g in range(H.order):
        for x in elements_of(mask):
            if not (mask >> H.conjugate(x, g)) & 1:
                return False
    return True


def center_mask(H: GroupTable) -> int:
    out = 0
    for z in range(H.order):
        if all(H.mult[z][x] == H.mult[x][z] for x in range(H.order)):
            out |= 1 << z
    return out


def quotient(H: GroupTable, normal: int) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient by a normal subgroup; returns the coset table and the
    projection element -> coset index.  Cosets are indexed by their least
    element, so the projection is deterministic and the trivial-subgroup
    quotient is a copy of H with the identity projection."""
    if not is_normal_subgroup(H, normal):
        raise ValueError("quotient requires a normal subgroup")
    coset_of = [-1] * H.order
    reps: list[int] = []
    for g in range(H.order):
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for x in elements_of(left_translate_mask(H, g, normal)):
            coset_of[x] = idx
    m = len(reps)
    mult = [[coset_of[H.mult[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    gens = [(lbl, coset_of[e]) for lbl, e in H.gens]
    tag = f"{H.tag}/N{normal.bit_count()}" if H.tag else None
    Q = GroupTable(mult, gens=gens, tag=tag)
    proj = tuple(coset_of)
    for x in range(H.order):
        for y in range(H.order):
            if proj[H.mult[x][y]] != Q.mult[proj[x]][proj[y]]:
                raise AssertionError("projection is not a homomorphism")
    return Q, proj


# -- group automorphisms -----------------------------------------------------

def is_group_automorphism(H: GroupTable, images: Sequence[int]) -> bool:
    if sorted(images) != list(range(H.order)) or images[0] != 0:
        return False
    return all(images[H.mult[x][y]] == H.mult[images[x]][images[y]]
               for x in range(H.order) for y in range(H.order))


def generating_sequence(H: GroupTable) -> list[int]:
    """Greedy deterministic generating sequence (smallest new element first)."""
    gens: list[int] = []
    closed = 1
    while closed.bit_count() < H.order:
        g = next(e for e in range(1, H.order) if not (closed >> e) & 1)
        gens.append(g)
        closed = subgroup_generated(H, closed | (1 << g))
    return gens


def group_automorphisms(H: GroupTable) -> list[AutImages]:
    """All automorphisms of the group, by backtracking over images of a
    generating sequence.  Results are cached on the table and sorted."""
    if H._aut_cache is not None:
        return list(H._aut_cache)
    if H.order > AUT_TABLE_CAP:
        raise ValueError(f"automorphism search capped at order {AUT_TABLE_CAP}")
    gens = generating_sequence(H)
    by_order: dict[int, list[int]] = {}
    for e in range(H.order):
        by_order.setdefault(H.element_order(e), []).append(e)
    found: list[AutImages] = []

    def close(img: list[int], used: int, seed: int) -> Optional[tuple[list[int], int, list[int]]]:
        """Propagate products from a newly assigned generator image."""
        known = [e for e in range(H.order) if img[e] >= 0]
        queue = [seed]
        while queue:
            a = queue.pop()
            for b in list(known):
                for x, y in ((a, b), (b, a)):
                    z = H.mult[x][y]
                    iz = H.mult[img[x]][img[y]]
                    if img[z] >= 0:
                        if img[z] != iz:
                            return None
                    else:
                        if (used >> iz) & 1:
                            return None
                        img[z] = iz
                        used |= 1 << iz
                        known.append(z)
                        queue.append(z)
        return img, used, known

    def extend(level: int, img: list[int], used: int) -> None:
        if level == len(gens):
            if used.bit_count() == H.order:
                found.append(tuple(img))
                if len(found) > AUT_SIZE_CAP:
                    raise ValueError("automorphism group larger than cap")
            return
        g = gens[level]
        for cand in by_order[H.element_order(g)]:
            if (used >> cand) & 1:
                continue
            img2 = list(img)
            img2[g] = cand
            res = close(img2, used | (1 << cand), g)
            if res is not None:
                extend(level + 1, res[0], res[1])

    start = [-1] * H.order
    start[0] = 0
    extend(0, start, 1)
    found.sort()
    H._aut_cache = found
    return list(found)


def group_isomorphism(G: GroupTable, H: GroupTable) -> Optional[tuple[int, ...]]:
    """An isomorphism G -> H as an image table, or None.  Same backtracking
    as the automorphism search, mapping a generating sequence of G into H."""
    if G.order != H.order:
        return None
    if sorted(G.element_order(e) for e in range(G.order)) != \
            sorted(H.element_order(e) for e in range(H.order)):
        return None
    gens = generating_sequence(G)
    by_order: dict[int, list[int]] = {}
    for e in range(H.order):
        by_order.setdefault(H.element_order(e), []).append(e)

    def close(img: list[int], used: int, seed: int) -> Optional[tuple[list[int], int]]:
        known = [e for e in range(G.order) if img[e] >= 0]
        queue = [seed]
        while queue:
            a = queue.pop()
            for b in list(known):
                for x, y in ((a, b), (b, a)):
                    z = G.mult[x][y]
                    iz = H.mult[img[x]][img[y]]
                    if img[z] >= 0:
                        if img[z] != iz:
                            return None
                    else:
                        if (used >> iz) & 1:
                            return None
                        img[z] = iz
                        used |= 1 << iz
                        known.append(z)
                        queue.append(z)
        return img, used

    def extend(level: int, img: list[int], used: int) -> Optional[tuple[int, ...]]:
        if level == len(gens):
            return tuple(img) if used.bit_count() == G.order else None
        g = gens[level]
        for cand in by_order.get(G.element_order(g), ()):
            if (used >> cand) & 1:
                continue
            img2 = list(img)
            img2[g] = cand
            res = close(img2, used | (1 << cand), g)
            if res is not None:
                hit = extend(level + 1, res[0], res[1])
                if hit is not None:
                    return hit
        return None

    start = [-1] * G.order
    start[0] = 0
    return extend(0, start, 1)


def inner_automorphism(H: GroupTable, y: int) -> AutImages:
    """x -> y^-1 x y."""
    images = tuple(H.conjugate(x, y) for x in range(H.order))
    assert is_group_automorphism(H, images)
    return images


def is_inner_abelian(H: GroupTable) -> bool:
    """Non-abelian, but every proper subgroup abelian: equivalently every
    non-commuting pair generates the whole group."""
    full = (1 << H.order) - 1
    nonabelian = False
    for x in range(1, H.order):
        for y in range(x + 1, H.order):
            if H.mult[x][y] != H.mult[y][x]:
                nonabelian = True
                if subgroup_generated(H, (1 << x) | (1 << y)) != full:
                    return False
    return nonabelian


# -- family constructors ------------------------------------------------------

def _table_from_forms(forms: list[tuple], mul: Callable[[tuple, tuple], tuple],
                      gen_forms: Sequence[tuple[str, tuple]], tag: str) -> GroupTable:
    forms = sorted(forms)
    index = {f: i for i, f in enumerate(forms)}
    assert index[forms[0]] == 0 and not any(forms[0]), "identity form must sort first"
    n = len(forms)
    mult = [[index[mul(forms[i], forms[j])] for j in range(n)] for i in range(n)]
    gens = [(lbl, index[f]) for lbl, f in gen_forms]
    return GroupTable(mult, gens=gens, tag=tag)


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise GroupConstructionError("cyclic group needs n >= 1")
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable(mult, gens=[("a", 1 % n)], tag=f"Cyclic({n})")


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n: a^n = b^2 = 1, b a b = a^-1."""
    if n < 1:
        raise GroupConstructionError("dihedral group needs n >= 1")

    def mul(u, v):
        i1, j1 = u
        i2, j2 = v
        return ((i1 + (i2 if j1 == 0 else -i2)) % n, (j1 + j2) % 2)

    forms = [(i, j) for i in range(n) for j in range(2)]
    return _table_from_forms(forms, mul, [("a", (1 % n, 0)), ("b", (0, 1))],
                             tag=f"Dihedral({n})")


def quaternion_group() -> GroupTable:
    """Q8 with normal forms i^a j^b (-1)^c."""

    def mul(u, v):
        a1, b1, c1 = u
        a2, b2, c2 = v
        # j^b1 i^a2 = i^a2 j^b1 (-1)^(a2 b1); i^2 = j^2 = -1
        c = (c1 + c2 + a2 * b1 + (a1 + a2) // 2 + (b1 + b2) // 2) % 2
        return ((a1 + a2) % 2, (b1 + b2) % 2, c)

    forms = [(a, b, c) for a in range(2) for b in range(2) for c in range(2)]
    return _table_from_forms(forms, mul, [("i", (1, 0, 0)), ("j", (0, 1, 0))], tag="Q8")


def mp_group(p: int, m: int, n: int) -> GroupTable:
    """a^(p^m) = b^(p^n) = c^p = 1, [a,b] = c = a^(p^(m-1)); order p^(m+n).

    Normal form a^i b^j with a^i b^j * a^k b^l = a^(i+k-p^(m-1)kj) b^(j+l).
    """
    if not _is_prime(p):
        raise GroupConstructionError(f"p={p} is not prime")
    if m < 2 or n < 1:
        raise GroupConstructionError("family needs m >= 2 and n >= 1")
    pm, pn, c_exp = p ** m, p ** n, p ** (m - 1)

    def mul(u, v):
        i1, j1 = u
        i2, j2 = v
        return ((i1 + i2 - c_exp * i2 * j1) % pm, (j1 + j2) % pn)

    forms = [(i, j) for i in range(pm) for j in range(pn)]
    return _table_from_forms(
        forms, mul,
        [("a", (1, 0)), ("b", (0, 1)), ("c", (c_exp, 0))],
        tag=f"MpMN({p},{m},{n})")


def mp1_group(p: int, m: int, n: int) -> GroupTable:
    """a^(p^m) = b^(p^n) = c^p = 1, [a,b] = c central; order p^(m+n+1)."""
    if not _is_prime(p):
        raise GroupConstructionError(f"p={p} is not prime")
    if n < 1 or m < n:
        raise GroupConstructionError("family needs m >= n >= 1")
    if p == 2 and m + n < 3:
        raise GroupConstructionError("p=2 needs m + n >= 3")
    pm, pn = p ** m, p ** n

    def mul(u, v):
        i1, j1, k1 = u
        i2, j2, k2 = v
        return ((i1 + i2) % pm, (j1 + j2) % pn, (k1 + k2 - i2 * j1) % p)

    forms = [(i, j, k) for i in range(pm) for j in range(pn) for k in range(p)]
    return _table_from_forms(
        forms, mul,
        [("a", (1, 0, 0)), ("b", (0, 1, 0)), ("c", (0, 0, 1))],
        tag=f"MpMN1({p},{m},{n})")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod_divides(f: list[int], g: list[int], p: int) -> bool:
    """Does monic f divide g over F_p?  Coefficients little-endian."""
    r = list(g)
    df = len(f) - 1
    while len(r) - 1 >= df:
        if len(r) == 0:
            break
        lead = r[-1] % p
        if lead:
            shift = len(r) - 1 - df
            for i, c in enumerate(f):
                r[shift + i] = (r[shift + i] - lead * c) % p
        r.pop()
    return all(c % p == 0 for c in r)


def _order_mod(p: int, q: int) -> int:
    """Multiplicative order of p modulo q."""
    k, acc = 1, p % q
    while acc != 1:
        acc = acc * p % q
        k += 1
    return k


def _canonical_action_matrix(p: int, n: int, q: int) -> list[list[int]]:
    """Companion matrix of the least monic degree-n divisor of
    1 + x + ... + x^(q-1) over F_p.  Requires ord_q(p) = n, which makes the
    divisor irreducible and the action single-orbit."""
    if _order_mod(p, q) != n:
        raise GroupConstructionError(
            f"no degree-{n} irreducible action: ord_{q}({p}) = {_order_mod(p, q)} != {n}")
    cyclo = [1] * q  # 1 + x + ... + x^(q-1)
    for coeffs in _monic_polys(p, n):
        if _poly_mod_divides(coeffs + [1], cyclo, p):
            low = coeffs
            break
    else:  # pragma: no cover - ord check above guarantees a factor
        raise GroupConstructionError("no degree-n divisor found")
    mat = [[0] * n for _ in range(n)]
    for i in range(1, n):
        mat[i][i - 1] = 1          # companion: e_k -> e_(k+1)
    for i in range(n):
        mat[i][n - 1] = (-low[i]) % p
    return mat


def _monic_polys(p: int, n: int):
    """Lower coefficient tuples of monic degree-n polynomials, lex order."""
    def rec(k):
        if k == 0:
            yield []
            return
        for rest in rec(k - 1):
            for c in range(p):
                yield rest + [c]
    # lex on (c_{n-1}, ..., c_0) so the least polynomial comes first
    for tup in sorted(rec(n), key=lambda t: t[::-1]):
        yield tup


def _mat_mul(a, b, p):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)]
            for i in range(n)]


def _mat_is_identity(a):
    return all(v == (1 if i == j else 0) for i, row in enumerate(a) for j, v in enumerate(row))


def miller_moreno_group(p: int, n: int, q: int, m: int,
                        matrix: Optional[Sequence[Sequence[int]]] = None) -> GroupTable:
    """Z_p^n semidirect Z_(q^m), the top generator acting on the vector part
    by a fixed-point-free automorphism of multiplicative order q."""
    if not (_is_prime(p) and _is_prime(q)) or p == q:
        raise GroupConstructionError("p and q must be distinct primes")
    if n < 1 or m < 1:
        raise GroupConstructionError("n and m must be >= 1")
    if pow(p, n, q) != 1:
        raise GroupConstructionError(f"constraint violated: {q} does not divide {p}^{n} - 1")
    if matrix is None:
        if n >= q:
            raise GroupConstructionError(f"constraint violated: n={n} must be < q={q}")
        mat = _canonical_action_matrix(p, n, q)
    else:
        mat = [[int(v) % p for v in row] for row in matrix]
        if len(mat) != n or any(len(row) != n for row in mat):
            raise GroupConstructionError("action matrix must be n x n")
    # validate: order exactly q and no nonzero fixed vector
    power = mat
    for _ in range(q - 1):
        if _mat_is_identity(power):
            raise GroupConstructionError("action matrix order is a proper divisor of q")
        power = _mat_mul(power, mat, p)
    if not _mat_is_identity(power):
        raise GroupConstructionError("action matrix does not have order q")

    pn = p ** n
    radix = [p ** (n - 1 - i) for i in range(n)]

    def decode(code):
        return [(code // radix[i]) % p for i in range(n)]

    def encode(vec):
        return sum(v * radix[i] for i, v in enumerate(vec))

    def apply_mat(mm, code):
        vec = decode(code)
        return encode([sum(mm[i][j] * vec[j] for j in range(n)) % p for i in range(n)])

    act = [list(range(pn))]
    pow_mat = mat
    for _ in range(q - 1):
        act.append([apply_mat(pow_mat, c) for c in range(pn)])
        pow_mat = _mat_mul(pow_mat, mat, p)
    for r in range(1, q):
        for c in range(1, pn):
            if act[r][c] == c:
                raise GroupConstructionError("action has a nonzero fixed vector")

    qm = q ** m
    add = [[encode([(x + y) % p for x, y in zip(decode(c1), decode(c2))])
            for c2 in range(pn)] for c1 in range(pn)]

    # element (v, j) = a^v b^j; b^-1 a^v b = a^(M v), so b^j a^u = a^(M^-j u) b^j
    n_elems = pn * qm
    mult = [[0] * n_elems for _ in range(n_elems)]
    for v1 in range(pn):
        for j1 in range(qm):
            row = mult[v1 * qm + j1]
            back = act[(-j1) % q]
            add_v1 = add[v1]
            for v2 in range(pn):
                v = add_v1[back[v2]]
                base = v * qm
                for j2 in range(qm):
                    row[v2 * qm + j2] = base + (j1 + j2) % qm
    gens = [("a", radix[0] * qm), ("b", 1)]
    return GroupTable(mult, gens=gens, tag=f"MillerMoreno({p},{n},{q},{m})")


# -- presented abelian-by-cyclic groups ---------------------------------------

_DEFAULT_LABELS = ("x", "y", "z", "u", "v", "w")


def _parse_word(word: str, labels: Sequence[str]) -> list[int]:
    """Signed generator indices; uppercase letters mean inverses."""
    out = []
    for ch in word:
        low = ch.lower()
        if low not in labels:
            raise GroupConstructionError(f"unknown generator letter {ch!r} in relator {word!r}")
        idx = labels.index(low)
        out.append(idx + 1 if ch.islower() else -(idx + 1))
    return out


def presented_group(ngens: int, relators: Sequence[str],
                    labels: Optional[Sequence[str]] = None) -> GroupTable:
    """Realize an abelian-by-cyclic presentation directly.

    Supported shape: each generator has one pure power relator; all
    generators but the last commute pairwise (commutator relators); the last
    generator conjugates each of the others to a word in them.  That covers
    every presentation this package ships.  Relators are re-checked on the
    finished table, so an inconsistent presentation raises instead of
    collapsing silently.
    """
    if ngens < 1 or ngens > len(_DEFAULT_LABELS):
        raise GroupConstructionError(f"ngens must be 1..{len(_DEFAULT_LABELS)}")
    labels = tuple(labels) if labels is not None else _DEFAULT_LABELS[:ngens]
    if len(labels) != ngens or len(set(labels)) != ngens:
        raise GroupConstructionError("labels must be distinct, one per generator")
    words = [(_parse_word(w, labels), w) for w in relators]

    orders = [0] * ngens
    commuting: set[tuple[int, int]] = set()
    conj: dict[int, list[int]] = {}
    t = ngens - 1
    for w, raw in words:
        if len(set(abs(s) for s in w)) == 1 and all(s > 0 for s in w):
            g = w[0] - 1
            if orders[g]:
                raise GroupConstructionError(f"two power relators for generator {labels[g]!r}")
            orders[g] = len(w)
        elif (len(w) == 4 and w[0] < 0 and w[1] < 0 and w[2] == -w[0] and w[3] == -w[1]
              and abs(w[0]) - 1 != t and abs(w[1]) - 1 != t):
            commuting.add((min(abs(w[0]), abs(w[1])) - 1, max(abs(w[0]), abs(w[1])) - 1))
        elif (len(w) >= 3 and w[0] == -(t + 1) and w[2] == t + 1
              and 0 < w[1] <= t):
            conj[w[1] - 1] = [-s for s in reversed(w[3:])]  # g^t = tail^-1
        else:
            raise GroupConstructionError(f"unsupported relator shape {raw!r}")
    if ngens == 1:
        if not orders[0]:
            raise GroupConstructionError("generator without power relator")
        return GroupTable(
            [[(i + j) % orders[0] for j in range(orders[0])] for i in range(orders[0])],
            gens=[(labels[0], 1 % orders[0])], tag=f"Presented({','.join(labels)})")
    for g in range(ngens):
        if not orders[g]:
            raise GroupConstructionError(f"generator {labels[g]!r} lacks a power relator")
    for i in range(t):
        for j in range(i + 1, t):
            if (i, j) not in commuting:
                raise GroupConstructionError(
                    f"unsupported presentation: {labels[i]!r},{labels[j]!r} not declared commuting")
    for g in range(t):
        if g not in conj:
            conj[g] = [g + 1]  # t acts trivially on it

    base_orders = orders[:t]
    radix = []
    acc = 1
    for o in reversed(base_orders):
        radix.append(acc)
        acc *= o
    radix.reverse()
    base_size = acc

    def vec_of_word(w: list[int]) -> list[int]:
        v = [0] * t
        for s in w:
            g = abs(s) - 1
            if g >= t:
                raise GroupConstructionError("conjugation tail must avoid the acting generator")
            v[g] = (v[g] + (1 if s > 0 else -1)) % base_orders[g]
        return v

    images = [vec_of_word(conj[g]) for g in range(t)]

    def decode(code):
        return [(code // radix[i]) % base_orders[i] for i in range(t)]

    def encode(vec):
        return sum((v % base_orders[i]) * radix[i] for i, v in enumerate(vec))

    def phi(code):
        vec = decode(code)
        out = [0] * t
        for g, c in enumerate(vec):
            for k in range(t):
                out[k] = (out[k] + c * images[g][k]) % base_orders[k]
        return encode(out)

    # phi must be an automorphism of the base of order dividing orders[t]
    phi_table = [phi(c) for c in range(base_size)]
    if sorted(phi_table) != list(range(base_size)):
        raise GroupConstructionError("relator inconsistency: action is not a bijection")
    powers = [list(range(base_size))]
    for _ in range(orders[t]):
        powers.append([phi_table[c] for c in powers[-1]])
    if powers[orders[t]] != powers[0]:
        raise GroupConstructionError("relator inconsistency: action order does not divide "
                                     f"{labels[t]!r}'s order")
    powers.pop()

    ot = orders[t]
    n_elems = base_size * ot
    mult = [[0] * n_elems for _ in range(n_elems)]
    add = [[encode([x + y for x, y in zip(decode(c1), decode(c2))])
            for c2 in range(base_size)] for c1 in range(base_size)]
    for v1 in range(base_size):
        for j1 in range(ot):
            row = mult[v1 * ot + j1]
            back = powers[(-j1) % ot]
            for v2 in range(base_size):
                v = add[v1][back[v2]]
                for j2 in range(ot):
                    row[v2 * ot + j2] = v * ot + (j1 + j2) % ot
    gen_elems = []
    for g in range(t):
        e = [0] * t
        e[g] = 1
        gen_elems.append((labels[g], encode(e) * ot))
    gen_elems.append((labels[t], 1 % n_elems))
    G = GroupTable(mult, gens=gen_elems, tag=f"Presented({','.join(labels)})")

    concrete = [e for _, e in G.gens]
    for w, raw in words:
        acc_e = 0
        for s in w:
            e = concrete[abs(s) - 1]
            acc_e = G.mult[acc_e][e if s > 0 else G.inv[e]]
        if acc_e != 0:
            raise GroupConstructionError(f"relator inconsistency: {raw!r} does not hold")
    return G


def direct_product(factors: Sequence[GroupTable]) -> GroupTable:
    if not factors:
        return cyclic_group(1)
    sizes = [G.order for G in factors]
    radix = []
    acc = 1
    for s in reversed(sizes):
        radix.append(acc)
        acc *= s
    radix.reverse()
    n = acc

    def decode(code):
        return [(code // radix[i]) % sizes[i] for i in range(len(sizes))]

    mult = [[0] * n for _ in range(n)]
    for c1 in range(n):
        u = decode(c1)
        for c2 in range(n):
            v = decode(c2)
            mult[c1][c2] = sum(factors[i].mult[u[i]][v[i]] * radix[i]
                               for i in range(len(sizes)))
    gens = []
    for i, G in enumerate(factors):
        for lbl, e in G.gens:
            gens.append((f"{lbl}{i + 1}", e * radix[i]))
    tag = "x".join(G.tag or "?" for G in factors)
    return GroupTable(mult, gens=gens, tag=tag)


# -- FamilySpec dispatch -------------------------------------------------------

def group_from_spec(spec: dict) -> GroupTable:
    """Build a group from the structured FamilySpec format, e.g.
    {"family":"MpMN","p":3,"m":1,"n":1} or
    {"family":"Presented","ngens":3,"relators":[...]}."""
    fam = spec.get("family")
    if fam == "Cyclic":
        return cyclic_group(spec["n"])
    if fam == "Dihedral":
        return dihedral_group(spec["n"])
    if fam == "Quaternion":
        return quaternion_group()
    if fam == "MpMN":
        return mp_group(spec["p"], spec["m"], spec["n"])
    if fam == "MpMN1":
        return mp1_group(spec["p"], spec["m"], spec["n"])
    if fam == "MillerMoreno":
        return miller_moreno_group(spec["p"], spec["n"], spec["q"], spec["m"],
                                   matrix=spec.get("matrix"))
    if fam == "Presented":
        return presented_group(spec["ngens"], spec["relators"], labels=spec.get("labels"))
    if fam == "DirectProduct":
        return direct_product([group_from_spec(s) for s in spec["factors"]])
    raise GroupConstructionError(f"unknown family {fam!r}")


_NAME_RE = re.compile(r"^([A-Za-z0-9]+)(?:\(([-0-9,]*)\))?$")


def group_from_name(name: str) -> GroupTable:
    """Compact constructor strings: Cyclic(6), Dihedral(7), Quaternion/Q8,
    MpMN(2,2,1), MpMN1(3,1,1), MillerMoreno(2,2,3,1)."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise GroupConstructionError(f"cannot parse group name {name!r}")
    fam, args = m.group(1), [int(v) for v in m.group(2).split(",")] if m.group(2) else []
    if fam in ("Quaternion", "Q8"):
        return quaternion_group()
    if fam == "Cyclic":
        return cyclic_group(*args)
    if fam == "Dihedral":
        return dihedral_group(*args)
    if fam == "MpMN":
        return mp_group(*args)
    if fam == "MpMN1":
        return mp1_group(*args)
    if fam == "MillerMoreno":
        return miller_moreno_group(*args)
    raise GroupConstructionError(f"unknown family {fam!r}")


# -- connection-set words -------------------------------------------------------

_FACTOR_RE = re.compile(r"([A-Za-z])(-?\d+)?")


def evaluate_word(H: GroupTable, word: str) -> int:
    """Evaluate a word like 'a-1b2' or 'xyz' over the group's named
    generators; '1' denotes the identity."""
    word = word.strip()
    if word == "1":
        return 0
    pos = 0
    acc = 0
    gens = dict(H.gens)
    while pos < len(word):
        m = _FACTOR_RE.match(word, pos)
        if not m or m.group(1) not in gens:
            raise ValueError(f"cannot parse word {word!r} at {pos} over generators {sorted(gens)}")
        e = gens[m.group(1)]
        exp = int(m.group(2)) if m.group(2) else 1
        acc = H.mult[acc][H.power(e, exp)]
        pos = m.end()
    return acc


def connection_set(H: GroupTable, words: str | Sequence[str]) -> int:
    """Mask for a comma-separated (or pre-split) list of words."""
    if isinstance(words, str):
        words = [w for w in words.split(",") if w.strip()]
    return mask_of(evaluate_word(H, w) for w in words)
