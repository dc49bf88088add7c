"""Simple undirected graphs with bitmask adjacency rows, plus the Cayley,
bi-Cayley, Haar and lexicographic-product constructions.

Bi-Cayley vertex numbering: for a group of order n, the right part is
h_0 -> index(h) and the left part h_1 -> n + index(h), so group arithmetic on
vertices is plain index arithmetic and certificates are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import GroupTable, elements_of, inverse_mask

VERTEX_CAP = 4096


class Graph:
    """Finite simple undirected graph; ``rows[v]`` is the neighbour bitmask."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int] | None = None, validate: bool = True):
        if n < 0 or n > VERTEX_CAP:
            raise ValueError(f"vertex count {n} outside 0..{VERTEX_CAP}")
        self.n = n
        self.rows = list(rows) if rows is not None else [0] * n
        if validate and rows is not None:
            self._validate()

    def _validate(self) -> None:
        if len(self.rows) != self.n:
            raise ValueError("row count does not match vertex count")
        for v, row in enumerate(self.rows):
            if row >> self.n:
                raise ValueError(f"row {v} has bits beyond the vertex range")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            w = row
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")
                w ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("loops are not allowed")
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return elements_of(self.rows[v])

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            w = self.rows[u] >> (u + 1)
            v = u + 1
            while w:
                if w & 1:
                    out.append((u, v))
                w >>= 1
                v += 1
        return out

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image graph: vertex v becomes perm[v]."""
        rows = [0] * self.n
        for v in range(self.n):
            target = 0
            w = self.rows[v]
            while w:
                low = w & -w
                target |= 1 << perm[low.bit_length() - 1]
                w ^= low
            rows[perm[v]] = target
        return Graph(self.n, rows, validate=False)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full ^ r ^ (1 << v) for v, r in enumerate(self.rows)],
                     validate=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, tuple(self.rows)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


@dataclass(frozen=True)
class BipartiteLabeling:
    """The two halves of a bi-Cayley graph: element h sits at vertex
    index(h) in part 0 and at half + index(h) in part 1."""
    half: int

    def part0(self) -> range:
        return range(self.half)

    def part1(self) -> range:
        return range(self.half, 2 * self.half)

    def vertex(self, element: int, part: int) -> int:
        return element + part * self.half

    def element(self, vertex: int) -> int:
        return vertex % self.half

    def part(self, vertex: int) -> int:
        return vertex // self.half


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n, validate=False)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)], validate=False)


def cycle_graph(n: int) -> Graph:
    g = Graph(n)
    for v in range(n):
        g.add_edge(v, (v + 1) % n)
    return g


def complete_bipartite(a: int, b: int) -> Graph:
    g = Graph(a + b)
    for u in range(a):
        for v in range(a, a + b):
            g.add_edge(u, v)
    return g


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    n = sum(g.n for g in graphs)
    rows = []
    off = 0
    for g in graphs:
        rows.extend(r << off for r in g.rows)
        off += g.n
    return Graph(n, rows, validate=False)


def cayley_graph(H: GroupTable, R: int) -> Graph:
    """Vertices are the group elements, edges {h, x*h} for x in R.
    Requires R symmetric and identity-free."""
    if (R & 1):
        raise ValueError("connection set must not contain the identity")
    if inverse_mask(H, R) != R:
        raise ValueError("connection set must be closed under inverses")
    g = Graph(H.order)
    for x in elements_of(R):
        row = H.mult[x]
        for h in range(H.order):
            g.add_edge(h, row[h])
    return g


def bicayley_graph(H: GroupTable, R: int, L: int, S: int) -> tuple[Graph, BipartiteLabeling]:
    """Right edges {h_0,(xh)_0} for x in R, left edges {h_1,(xh)_1} for x in L,
    spokes {h_0,(xh)_1} for x in S."""
    if (R | L) & 1:
        raise ValueError("R and L must not contain the identity")
    if inverse_mask(H, R) != R or inverse_mask(H, L) != L:
        raise ValueError("R and L must be closed under inverses")
    n = H.order
    g = Graph(2 * n)
    for x in elements_of(R):
        row = H.mult[x]
        for h in range(n):
            g.add_edge(h, row[h])
    for x in elements_of(L):
        row = H.mult[x]
        for h in range(n):
            g.add_edge(n + h, n + row[h])
    for x in elements_of(S):
        row = H.mult[x]
        for h in range(n):
            g.add_edge(h, n + row[h])
    return g, BipartiteLabeling(n)


def haar_graph(H: GroupTable, S: int) -> tuple[Graph, BipartiteLabeling]:
    """The bi-Cayley graph with no right or left edges: h_0 ~ (sh)_1."""
    return bicayley_graph(H, 0, 0, S)


def right_translation_vertex_perm(H: GroupTable, g: int) -> tuple[int, ...]:
    """h_i -> (hg)_i on the 2n bi-Cayley vertices; always an automorphism of
    every bi-Cayley graph of H."""
    n = H.order
    images = [0] * (2 * n)
    for h in range(n):
        hg = H.mult[h][g]
        images[h] = hg
        images[n + h] = n + hg
    return tuple(images)


def cayley_right_translation(H: GroupTable, g: int) -> tuple[int, ...]:
    """h -> hg on the group itself (the regular action used for Cayley graphs
    and transitivity modules)."""
    return tuple(H.mult[h][g] for h in range(H.order))


def lex_product(g1: Graph, g2: Graph) -> Graph:
    """Lexicographic product: (u1,u2) ~ (v1,v2) iff u1 ~ v1, or u1 = v1 and
    u2 ~ v2.  Vertex (u1,u2) has index u1*|V2| + u2."""
    n1, n2 = g1.n, g2.n
    n = n1 * n2
    if n > VERTEX_CAP:
        raise ValueError("product exceeds the vertex cap")
    full2 = (1 << n2) - 1
    # mask with block u1 filled for every neighbour u1 of v1
    block_full = {}
    for v1 in range(n1):
        m = 0
        w = g1.rows[v1]
        while w:
            low = w & -w
            m |= full2 << ((low.bit_length() - 1) * n2)
            w ^= low
        block_full[v1] = m
    rows = []
    for v1 in range(n1):
        base = block_full[v1]
        for v2 in range(n2):
            rows.append(base | (g2.rows[v2] << (v1 * n2)))
    return Graph(n, rows, validate=False)


def components(g: Graph) -> list[list[int]]:
    seen = 0
    out = []
    for start in range(g.n):
        if (seen >> start) & 1:
            continue
        comp = 1 << start
        frontier = g.rows[start] & ~comp
        while frontier:
            comp |= frontier
            nxt = 0
            w = frontier
            while w:
                low = w & -w
                nxt |= g.rows[low.bit_length() - 1]
                w ^= low
            frontier = nxt & ~comp
        seen |= comp
        out.append(elements_of(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def write_edge_list(g: Graph) -> str:
    """Plain-text export: 'n m' header then one 'u v' line per edge,
    ascending."""
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n, m = map(int, lines[0].split())
    g = Graph(n)
    for ln in lines[1:]:
        u, v = map(int, ln.split())
        g.add_edge(u, v)
    if g.edge_count() != m:
        raise ValueError(f"edge list header says {m} edges, found {g.edge_count()}")
    return g
