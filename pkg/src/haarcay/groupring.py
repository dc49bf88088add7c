"""Integer group-ring calculus and transitivity modules.

A vector is a plain list of integer coefficients indexed by group element; a
simple quantity is a 0/1 vector encoding a subset.  The transitivity module
of a point stabilizer is represented by its partition into basic sets (the
stabilizer orbits), so span membership is just "constant on every basic
set".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graphs import cayley_right_translation
from .groups import GroupTable, elements_of, mask_of, subgroup_generated
from .perms import PermGroup

_COEFF_LIMIT = 2 ** 31  # desk-scale sanity bound on products

Vector = list


def indicator(H: GroupTable, mask: int) -> Vector:
    """The simple quantity of a subset."""
    return [(mask >> e) & 1 for e in range(H.order)]


def support_mask(u: Sequence[int]) -> int:
    return mask_of(i for i, c in enumerate(u) if c)


def convolve(H: GroupTable, u: Sequence[int], v: Sequence[int]) -> Vector:
    """Group-ring product: coefficient at h is sum over g of u_g * v_(g^-1 h)."""
    out = [0] * H.order
    for g, cg in enumerate(u):
        if not cg:
            continue
        row = H.mult[g]
        for k, dk in enumerate(v):
            if dk:
                out[row[k]] += cg * dk
    assert all(abs(c) < _COEFF_LIMIT for c in out), "coefficient overflow"
    return out


def schur_product(u: Sequence[int], v: Sequence[int]) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return [a * b for a, b in zip(u, v)]


def level_set(u: Sequence[int], c: int) -> Vector:
    """Simple quantity of the positions where the coefficient equals c."""
    return [1 if x == c else 0 for x in u]


def inverse_vector(H: GroupTable, u: Sequence[int]) -> Vector:
    out = [0] * H.order
    for h, c in enumerate(u):
        out[H.inv[h]] = c
    return out


def subgroup_indicator(H: GroupTable, u: Sequence[int] | int) -> Vector:
    """Simple quantity of the subgroup generated by a subset (or by the
    support of a vector)."""
    mask = u if isinstance(u, int) else support_mask(u)
    return indicator(H, subgroup_generated(H, mask))


def left_translation(H: GroupTable, h: int) -> tuple:
    """x -> h^-1 x as a permutation of the element set."""
    row = H.mult[H.inv[h]]
    return tuple(row[x] for x in range(H.order))


@dataclass
class TransitivityModule:
    table: GroupTable
    basic_sets: list[int]  # masks, partition of the element set

    def decompose(self, u: Sequence[int]) -> Optional[list[int]]:
        """Coefficients on the basic quantities when u lies in the span
        (i.e. u is constant on every basic set), else None."""
        coeffs = []
        for mask in self.basic_sets:
            elems = elements_of(mask)
            c = u[elems[0]]
            if any(u[e] != c for e in elems[1:]):
                return None
            coeffs.append(c)
        return coeffs

    def contains(self, u: Sequence[int]) -> bool:
        return self.decompose(u) is not None

    def basic_index_of(self, mask: int) -> Optional[int]:
        try:
            return self.basic_sets.index(mask)
        except ValueError:
            return None

    def serialize(self) -> list[list[int]]:
        return sorted(sorted(elements_of(m)) for m in self.basic_sets)


def transitivity_module(H: GroupTable, G: PermGroup) -> TransitivityModule:
    """Basic sets are the orbits of the stabilizer of the identity in G.
    Requires the right translations of H inside G; the subring closure (every
    product of basic quantities decomposes over the basic sets) is asserted.
    """
    if G.degree != H.order:
        raise ValueError("permutation group must act on the element set")
    for g in range(H.order):
        if not G.contains(cayley_right_translation(H, g)):
            raise ValueError("the right translations must lie inside G")
    stab = G.stabilizer(0)
    basics = [mask_of(orbit) for orbit in stab.orbits()]
    basics.sort(key=lambda m: (m & -m).bit_length())
    module = TransitivityModule(H, basics)
    assert basics[0] == 1, "the identity must be a singleton basic set"
    vectors = [indicator(H, m) for m in basics]
    for u in vectors:
        for v in vectors:
            assert module.contains(convolve(H, u, v)), "subring closure fails"
    return module


def is_block_of_imprimitivity(G: PermGroup, points: Sequence[int]) -> bool:
    """Whether the point set is a block: every group element maps it to
    itself or clean off itself.  Checked exactly by closing the set of
    translates under the generators."""
    if not G.is_transitive():
        raise ValueError("block test requires a transitive group")
    start = frozenset(points)
    seen = {start}
    queue = [start]
    while queue:
        block = queue.pop()
        for g in G.generators:
            image = frozenset(g[x] for x in block)
            if image in seen:
                continue
            for other in seen:
                inter = image & other
                if inter and image != other:
                    return False
            seen.add(image)
            queue.append(image)
    return True


@dataclass
class LawReport:
    """Outcome of the transitivity-module law suite: one entry per law,
    with a counterexample description on failure."""
    results: dict = field(default_factory=dict)

    def record(self, law: str, ok: bool, detail: str = "") -> None:
        if law not in self.results or self.results[law][0]:
            self.results[law] = (ok, detail if not ok else "")

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def failures(self) -> dict:
        return {law: detail for law, (ok, detail) in self.results.items() if not ok}


def module_law_suite(H: GroupTable, G: PermGroup) -> LawReport:
    """Check the closure laws of transitivity modules on the module computed
    from G: level sets, Schur products, generated subgroups, inverses,
    translates of basic sets by singleton basics, blocks of imprimitivity,
    and left translations by singleton basics centralizing G."""
    module = transitivity_module(H, G)
    report = LawReport()
    basics = module.basic_sets
    vectors = [indicator(H, m) for m in basics]
    singletons = [elements_of(m)[0] for m in basics if m.bit_count() == 1]

    for i, u in enumerate(vectors):
        for v in vectors[i:]:
            prod = convolve(H, u, v)
            for c in set(prod):
                if not module.contains(level_set(prod, c)):
                    report.record("level_set", False,
                                  f"level {c} of product of basics {i} not in span")
            if not module.contains(schur_product(prod, prod)):
                report.record("schur_product", False, f"schur square escapes span")
    report.record("level_set", True)
    report.record("schur_product", True)

    for mask in basics:
        if not module.contains(subgroup_indicator(H, mask)):
            report.record("generated_subgroup", False, f"<basic {mask:#x}> not in span")
    if len(basics) >= 2:
        union = basics[0] | basics[-1]
        if not module.contains(subgroup_indicator(H, union)):
            report.record("generated_subgroup", False, "<union of basics> not in span")
    report.record("generated_subgroup", True)

    basic_set = set(basics)
    for mask in basics:
        inv = support_mask(inverse_vector(H, indicator(H, mask)))
        if inv not in basic_set:
            report.record("inverse_closure", False, f"inverse of basic {mask:#x} not basic")
    report.record("inverse_closure", True)

    for h in singletons:
        for mask in basics:
            left = mask_of(H.mult[h][e] for e in elements_of(mask))
            right = mask_of(H.mult[e][h] for e in elements_of(mask))
            if left not in basic_set or right not in basic_set:
                report.record("translate_of_basic", False,
                              f"translate of basic {mask:#x} by {h} not basic")
    report.record("translate_of_basic", True)

    for mask in basics:
        block = elements_of(subgroup_generated(H, mask))
        if not is_block_of_imprimitivity(G, block):
            report.record("block_of_imprimitivity", False,
                          f"<basic {mask:#x}> is not a block")
    report.record("block_of_imprimitivity", True)

    for h in singletons:
        lt = left_translation(H, h)
        for g in G.generators:
            if any(lt[g[x]] != g[lt[x]] for x in range(H.order)):
                report.record("left_translation_centralizes", False,
                              f"L({h}) does not commute with a generator")
    report.record("left_translation_centralizes", True)
    return report
