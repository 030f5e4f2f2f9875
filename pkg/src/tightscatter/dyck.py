"""tightscatter.dyck: maximal Dyck paths and cyclic subpaths.

The maximal Dyck path P(m,n) runs from (0,0) to (m,n) by unit east and
north steps, staying weakly below the diagonal and as close to it as
possible: its height after i east steps is floor(i*n/m).

Horizontal edges are labeled u1..um left to right, vertical edges
v1..vn bottom to top. Each edge has an anchor vertex: the left end of a
horizontal edge, the top end of a vertical edge.

Usage:
    path = build_maximal_dyck_path(7, 4)
    walk = cyclic_subpath(path, path.edge("u2"), path.edge("v4"))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
VALID_ORIENTATIONS = {HORIZONTAL, VERTICAL}


@dataclass(frozen=True)
class Edge:
    orientation: str
    index: int
    anchor: tuple[int, int]
    position: int

    @property
    def is_horizontal(self) -> bool:
        return self.orientation == HORIZONTAL

    @property
    def label(self) -> str:
        return f"{'u' if self.is_horizontal else 'v'}{self.index}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class DyckPath:
    m: int
    n: int
    edges: tuple[Edge, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def horizontal(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.is_horizontal)

    @cached_property
    def vertical(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if not e.is_horizontal)

    @cached_property
    def _by_label(self) -> dict[str, Edge]:
        return {e.label: e for e in self.edges}

    def edge(self, label: str) -> Edge:
        """Look up an edge by label, e.g. 'u3' or 'v2'."""
        try:
            return self._by_label[label]
        except KeyError:
            raise ValueError(
                f"No edge '{label}' on P({self.m},{self.n}). "
                f"Valid: {[e.label for e in self.edges]}"
            ) from None

    def vertices(self) -> list[tuple[int, int]]:
        pts = [(0, 0)]
        x = y = 0
        for e in self.edges:
            if e.is_horizontal:
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return pts

    def is_below_diagonal(self) -> bool:
        return all(y * self.m <= x * self.n for x, y in self.vertices())

    def anchor_index(self, e: Edge) -> int:
        """Index into vertices() of the anchor of e (vertical edges: top end)."""
        return e.position if e.is_horizontal else e.position + 1

    def steps(self) -> str:
        return "".join("E" if e.is_horizontal else "N" for e in self.edges)

    def __str__(self) -> str:
        return f"P({self.m},{self.n})"


def build_maximal_dyck_path(m: int, n: int) -> DyckPath:
    """Build P(m,n).

    Raises:
        ValueError: m or n negative.
    """
    if m < 0 or n < 0:
        raise ValueError(f"Dyck path size must be nonnegative, got ({m},{n})")
    edges: list[Edge] = []
    if m == 0:
        for j in range(1, n + 1):
            edges.append(Edge(VERTICAL, j, (0, j), len(edges)))
        return DyckPath(m, n, tuple(edges))

    y = 0
    for i in range(1, m + 1):
        edges.append(Edge(HORIZONTAL, i, (i - 1, y), len(edges)))
        target = (i * n) // m
        while y < target:
            y += 1
            edges.append(Edge(VERTICAL, y, (i, y), len(edges)))
    # m > 0 always ends at height floor(m*n/m) = n
    return DyckPath(m, n, tuple(edges))


def cyclic_subpath(path: DyckPath, e: Edge, f: Edge) -> tuple[Edge, ...]:
    """Edges traversed walking forward from the anchor of e to the anchor of f.

    The walk wraps from (m,n) back to (0,0). It contains e iff e is
    horizontal and f iff f is vertical. e == f gives the empty walk;
    distinct edges sharing an anchor give the full cycle.

    Raises:
        ValueError: e or f is not an edge of path.
    """
    for edge in (e, f):
        if edge.position >= len(path.edges) or path.edges[edge.position] != edge:
            raise ValueError(f"Edge {edge} is not on {path}")
    if e == f:
        return ()
    size = len(path.edges)
    start = path.anchor_index(e) % size
    length = (path.anchor_index(f) - path.anchor_index(e)) % size
    if length == 0:
        length = size
    return tuple(path.edges[(start + k) % size] for k in range(length))


def walk_length(path: DyckPath, e: Edge, f: Edge) -> int:
    """len(cyclic_subpath(path, e, f)) without building the walk."""
    if e == f:
        return 0
    size = len(path.edges)
    length = (path.anchor_index(f) - path.anchor_index(e)) % size
    return length or size


# ── Brute-force reference ─────────────────────────────────────────


def all_dyck_paths(m: int, n: int) -> list[str]:
    """Every E/N word from (0,0) to (m,n) staying weakly below the diagonal."""
    out = []
    for north in combinations(range(m + n), n):
        north_set = set(north)
        x = y = 0
        ok = True
        word = []
        for k in range(m + n):
            if k in north_set:
                y += 1
                word.append("N")
            else:
                x += 1
                word.append("E")
            if y * m > x * n:
                ok = False
                break
        if ok:
            out.append("".join(word))
    return out


def brute_force_maximal_path(m: int, n: int) -> str:
    """The pointwise-highest path among all_dyck_paths, as an E/N word."""
    best = None
    best_heights = None
    for word in all_dyck_paths(m, n):
        heights = []
        y = 0
        for step in word:
            if step == "N":
                y += 1
            else:
                heights.append(y)
        if best_heights is None or all(h >= b for h, b in zip(heights, best_heights)):
            best, best_heights = word, heights
    return best
