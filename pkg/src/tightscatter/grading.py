"""tightscatter.grading: gradings on maximal Dyck paths.

A grading assigns a nonnegative integer to every edge of P(m,n). This
module decides compatibility, computes shadows, tests tightness for a
direction (beta1, beta2) and sign epsilon, and enumerates tight and
compatible gradings with their weights.

Conventions:
    Vertical values are bounded by l1 and weighted by p[1,*]; horizontal
    values are bounded by l2 and weighted by p[2,*]. Totals are given as
    (beta1, beta2) = (vertical total, horizontal total).

Usage:
    params = TightParams(12, 8, -1, 14, 9)
    bounds = GradingBounds(horizontal_support=frozenset({2}),
                           vertical_support=frozenset({3}))
    gradings = enumerate_tight_gradings(params, bounds)   # 14 gradings
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator, Mapping

from .coeffring import CoeffPolynomial, VarId
from .dyck import DyckPath, Edge, build_maximal_dyck_path, cyclic_subpath, walk_length

VALID_EPSILONS = {-1, 1}


# ── Types ──────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Grading:
    path: DyckPath
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.path.edges):
            raise ValueError(
                f"Grading on {self.path} needs {len(self.path.edges)} values, "
                f"got {len(self.values)}"
            )
        if any(v < 0 for v in self.values):
            raise ValueError(f"Grading values must be >= 0, got {self.values}")

    def __getitem__(self, e: Edge) -> int:
        return self.values[e.position]

    @cached_property
    def horizontal_total(self) -> int:
        """omega(E1)."""
        return sum(self.values[e.position] for e in self.path.horizontal)

    @cached_property
    def vertical_total(self) -> int:
        """omega(E2)."""
        return sum(self.values[e.position] for e in self.path.vertical)

    @cached_property
    def horizontal_support(self) -> frozenset[Edge]:
        """S1."""
        return frozenset(e for e in self.path.horizontal if self.values[e.position] > 0)

    @cached_property
    def vertical_support(self) -> frozenset[Edge]:
        """S2."""
        return frozenset(e for e in self.path.vertical if self.values[e.position] > 0)

    def as_dict(self) -> dict[str, int]:
        return {e.label: self.values[e.position] for e in self.path.edges}


@dataclass(frozen=True)
class TightParams:
    beta1: int
    beta2: int
    epsilon: int
    m: int
    n: int

    def __post_init__(self):
        if self.beta1 <= 0 or self.beta2 <= 0:
            raise ValueError(
                f"Tight direction must be positive, got ({self.beta1},{self.beta2})"
            )
        if self.epsilon not in VALID_EPSILONS:
            raise ValueError(
                f"Invalid epsilon {self.epsilon!r}. Valid: {sorted(VALID_EPSILONS)}"
            )
        if self.m < self.beta1 or self.n < self.beta2:
            raise ValueError(
                f"Domain ({self.m},{self.n}) must dominate ({self.beta1},{self.beta2})"
            )
        g = gcd(self.beta1, self.beta2)
        if self.beta1 * self.n - self.beta2 * self.m != self.epsilon * g:
            raise ValueError(
                f"Domain ({self.m},{self.n}) violates "
                f"{self.beta1}*n - {self.beta2}*m = {self.epsilon * g}"
            )

    @classmethod
    def minimal(cls, beta1: int, beta2: int, epsilon: int) -> TightParams:
        m, n = m_epsilon(beta1, beta2, epsilon)
        return cls(beta1, beta2, epsilon, m, n)


@dataclass(frozen=True)
class GradingBounds:
    """Value bounds: l1 for vertical edges, l2 for horizontal edges.

    None means unbounded. The optional supports restrict the nonzero values
    allowed on each side (specialized data like 1 + x^3 allows only 3).
    """

    l1: int | None = None
    l2: int | None = None
    vertical_support: frozenset[int] | None = None
    horizontal_support: frozenset[int] | None = None

    def __post_init__(self):
        for name in ("l1", "l2"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ValueError(f"GradingBounds.{name} must be >= 0, got {val}")

    @property
    def is_finite(self) -> bool:
        return (self.l1 is not None or self.vertical_support is not None) and (
            self.l2 is not None or self.horizontal_support is not None
        )

    def value_choices(self, horizontal: bool, cap: int | None) -> list[int]:
        """Allowed nonzero values for one side, capped at cap.

        Raises:
            ValueError: Both the bound and the cap are missing.
        """
        bound = self.l2 if horizontal else self.l1
        support = self.horizontal_support if horizontal else self.vertical_support
        limits = [x for x in (bound, cap) if x is not None]
        if support is not None:
            vals = sorted(v for v in support if v > 0)
            if limits:
                vals = [v for v in vals if v <= min(limits)]
            return vals
        if not limits:
            raise ValueError("Unbounded grading values with no total: infinite enumeration")
        return list(range(1, min(limits) + 1))


# ── Compatibility ──────────────────────────────────────────────────


def _pair_compatible(path: DyckPath, values: tuple[int, ...], u: Edge, v: Edge) -> bool:
    if values[u.position] == 0 or values[v.position] == 0:
        return True
    walk = cyclic_subpath(path, u, v)
    tot_h = tot_wv = 0
    for e in walk:
        if e.is_horizontal:
            tot_h += 1
        else:
            tot_wv += values[e.position]
    pre_v = pre_wh = pre_h = pre_wv = 0
    for e in walk[:-1]:
        if e.is_horizontal:
            pre_h += 1
            pre_wh += values[e.position]
        else:
            pre_v += 1
            pre_wv += values[e.position]
        if pre_v == pre_wh or tot_h - pre_h == tot_wv - pre_wv:
            return True
    return False


def _values_compatible(path: DyckPath, values: tuple[int, ...]) -> bool:
    hs = [u for u in path.horizontal if values[u.position] > 0]
    vs = [v for v in path.vertical if values[v.position] > 0]
    return all(_pair_compatible(path, values, u, v) for u in hs for v in vs)


def is_compatible(g: Grading) -> bool:
    """True iff every (horizontal, vertical) pair admits a balancing point."""
    return _values_compatible(g.path, g.values)


# ── Shadows ────────────────────────────────────────────────────────


def _local_shadow_values(path: DyckPath, values: tuple[int, ...], e: Edge) -> frozenset[Edge]:
    if e.is_horizontal:
        # Shortest walk e -> v balancing verticals against horizontal weight.
        candidates = sorted(path.vertical, key=lambda v: walk_length(path, e, v))
        for v in candidates:
            walk = cyclic_subpath(path, e, v)
            n_vert = sum(1 for x in walk if not x.is_horizontal)
            w_horiz = sum(values[x.position] for x in walk if x.is_horizontal)
            if n_vert == w_horiz:
                return frozenset(x for x in walk if not x.is_horizontal)
        return frozenset(path.vertical)
    candidates = sorted(path.horizontal, key=lambda u: walk_length(path, u, e))
    for u in candidates:
        walk = cyclic_subpath(path, u, e)
        n_horiz = sum(1 for x in walk if x.is_horizontal)
        w_vert = sum(values[x.position] for x in walk if not x.is_horizontal)
        if n_horiz == w_vert:
            return frozenset(x for x in walk if x.is_horizontal)
    return frozenset(path.horizontal)


def local_shadow(g: Grading, e: Edge) -> frozenset[Edge]:
    """sh(e): opposite-orientation edges of the shortest balanced walk.

    Raises:
        ValueError: g(e) is zero.
    """
    if g[e] <= 0:
        raise ValueError(f"local_shadow needs a positively graded edge, {e} has 0")
    return _local_shadow_values(g.path, g.values, e)


def _shadow_values(path: DyckPath, values: tuple[int, ...], side: int) -> frozenset[Edge]:
    edges = path.horizontal if side == 1 else path.vertical
    out: set[Edge] = set()
    for e in edges:
        if values[e.position] > 0:
            out |= _local_shadow_values(path, values, e)
    return frozenset(out)


def shadow(g: Grading, side: int) -> frozenset[Edge]:
    """sh(S1) (vertical edges) for side 1, sh(S2) (horizontal edges) for side 2."""
    if side not in (1, 2):
        raise ValueError(f"Invalid shadow side {side!r}. Valid: [1, 2]")
    return _shadow_values(g.path, g.values, side)


def outside_shadow_weight(g: Grading, epsilon: int = -1) -> int:
    """Weight not covered by the epsilon-relevant shadow.

    epsilon = -1: vertical weight outside sh(S1).
    epsilon = +1: horizontal weight outside sh(S2).
    Zero exactly when the tight shadow containment holds.
    """
    if epsilon == -1:
        covered = shadow(g, 1)
        return sum(g[v] for v in g.path.vertical if v not in covered)
    if epsilon == 1:
        covered = shadow(g, 2)
        return sum(g[u] for u in g.path.horizontal if u not in covered)
    raise ValueError(f"Invalid epsilon {epsilon!r}. Valid: {sorted(VALID_EPSILONS)}")


# ── Tight domains ──────────────────────────────────────────────────


def m_epsilon(beta1: int, beta2: int, epsilon: int) -> tuple[int, int]:
    """Smallest (m,n) with m >= beta1, n >= beta2, beta1*n - beta2*m = epsilon*gcd.

    Raises:
        ValueError: Non-positive beta or invalid epsilon.
    """
    if beta1 <= 0 or beta2 <= 0:
        raise ValueError(f"m_epsilon needs positive (beta1,beta2), got ({beta1},{beta2})")
    if epsilon not in VALID_EPSILONS:
        raise ValueError(f"Invalid epsilon {epsilon!r}. Valid: {sorted(VALID_EPSILONS)}")
    g = gcd(beta1, beta2)
    a, b = beta1 // g, beta2 // g
    # a*n = epsilon + b*m, so m must satisfy b*m = -epsilon (mod a).
    residue = (-epsilon * pow(b, -1, a)) % a if a > 1 else 0
    m = beta1 + (residue - beta1) % a
    while (epsilon + b * m) // a < beta2:
        m += a
    return m, (epsilon + b * m) // a


def valid_domains(beta1: int, beta2: int, epsilon: int, count: int = 3) -> list[tuple[int, int]]:
    """The first `count` valid domains, m_epsilon shifted along (beta1,beta2)/gcd."""
    m, n = m_epsilon(beta1, beta2, epsilon)
    g = gcd(beta1, beta2)
    a, b = beta1 // g, beta2 // g
    return [(m + j * a, n + j * b) for j in range(count)]


def is_tight(g: Grading, params: TightParams) -> bool:
    """Compatible, right totals, and the epsilon shadow containment.

    Raises:
        ValueError: g does not live on P(params.m, params.n).
    """
    if (g.path.m, g.path.n) != (params.m, params.n):
        raise ValueError(
            f"Grading on {g.path} does not match domain ({params.m},{params.n})"
        )
    if g.horizontal_total != params.beta2 or g.vertical_total != params.beta1:
        return False
    if not is_compatible(g):
        return False
    return outside_shadow_weight(g, params.epsilon) == 0


# ── Weight ─────────────────────────────────────────────────────────


def weight(g: Grading) -> CoeffPolynomial:
    """prod p[2, g(u_i)] * prod p[1, g(v_j)], with p[i,0] = 1."""
    exps: dict[VarId, int] = {}
    for e in g.path.edges:
        val = g.values[e.position]
        if val:
            var = VarId(2 if e.is_horizontal else 1, val)
            exps[var] = exps.get(var, 0) + 1
    return CoeffPolynomial.monomial(exps)


# ── Enumeration ────────────────────────────────────────────────────


def _side_vectors(
    count: int, total: int | None, choices: list[int], allowed: list[bool] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Value vectors for one side, optionally with a fixed sum.

    allowed[i] False forces position i to zero.
    """
    top = max(choices, default=0)
    vec = [0] * count

    def _rec(i: int, remaining: int | None):
        if i == count:
            if remaining is None or remaining == 0:
                yield tuple(vec)
            return
        if remaining is not None:
            can = sum(1 for k in range(i, count) if allowed is None or allowed[k])
            if remaining > can * top:
                return
        vec[i] = 0
        yield from _rec(i + 1, remaining)
        if allowed is not None and not allowed[i]:
            return
        for val in choices:
            if remaining is not None and val > remaining:
                break
            vec[i] = val
            yield from _rec(i + 1, None if remaining is None else remaining - val)
        vec[i] = 0

    yield from _rec(0, total)


def _merge(path: DyckPath, hvals: tuple[int, ...], vvals: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(path.edges)
    for e, val in zip(path.horizontal, hvals):
        out[e.position] = val
    for e, val in zip(path.vertical, vvals):
        out[e.position] = val
    return tuple(out)


def _search_chunk(
    path: DyckPath,
    h_chunk: list[tuple[int, ...]],
    v_total: int | None,
    v_choices: list[int],
    epsilon: int | None,
) -> list[tuple[int, ...]]:
    """Complete each horizontal vector in h_chunk to valid full gradings.

    epsilon None: compatibility only. Otherwise the tight shadow
    containment for that sign is enforced.
    """
    found = []
    nv = len(path.vertical)
    for hvals in h_chunk:
        allowed = None
        if epsilon == -1:
            partial = _merge(path, hvals, (0,) * nv)
            covered = _shadow_values(path, partial, 1)
            allowed = [v in covered for v in path.vertical]
        for vvals in _side_vectors(nv, v_total, v_choices, allowed):
            values = _merge(path, hvals, vvals)
            if epsilon == 1:
                covered = _shadow_values(path, values, 2)
                if any(values[u.position] > 0 and u not in covered for u in path.horizontal):
                    continue
            if _values_compatible(path, values):
                found.append(values)
    return found


def _enumerate(
    path: DyckPath,
    bounds: GradingBounds,
    v_total: int | None,
    h_total: int | None,
    epsilon: int | None,
    workers: int = 1,
) -> list[Grading]:
    h_choices = bounds.value_choices(True, h_total)
    v_choices = bounds.value_choices(False, v_total)
    h_vectors = list(_side_vectors(len(path.horizontal), h_total, h_choices))
    if workers > 1 and len(h_vectors) > 1:
        # Partition by the value of the first horizontal edge.
        groups: dict[int, list[tuple[int, ...]]] = {}
        for hv in h_vectors:
            groups.setdefault(hv[0] if hv else 0, []).append(hv)
        found: list[tuple[int, ...]] = []
        with ProcessPoolExecutor(max_workers=min(workers, len(groups))) as pool:
            futures = [
                pool.submit(_search_chunk, path, chunk, v_total, v_choices, epsilon)
                for chunk in groups.values()
            ]
            for future in as_completed(futures):
                found.extend(future.result())
    else:
        found = _search_chunk(path, h_vectors, v_total, v_choices, epsilon)

    return [Grading(path, vals) for vals in sorted(found)]


def enumerate_tight_gradings(
    params: TightParams, bounds: GradingBounds, workers: int = 1,
) -> list[Grading]:
    """All tight gradings for params within bounds, sorted by value vector."""
    path = build_maximal_dyck_path(params.m, params.n)
    return _enumerate(path, bounds, params.beta1, params.beta2, params.epsilon, workers)


def enumerate_compatible_gradings(
    m: int,
    n: int,
    bounds: GradingBounds,
    totals: tuple[int, int] | None = None,
    t: int | None = None,
    epsilon: int = -1,
    workers: int = 1,
) -> list[Grading]:
    """All compatible gradings on P(m,n) matching the filters.

    Args:
        m, n: Domain size.
        bounds: Value bounds; must be finite unless totals are given.
        totals: (vertical total, horizontal total), i.e. (beta1, beta2).
        t: Keep only gradings whose outside-shadow weight equals t.
        epsilon: Which shadow the t filter measures (see outside_shadow_weight).
        workers: Parallel worker processes.

    Raises:
        ValueError: The request is infinite.
    """
    if totals is None and not bounds.is_finite:
        raise ValueError("enumerate_compatible_gradings: unbounded values and no totals")
    path = build_maximal_dyck_path(m, n)
    v_total, h_total = totals if totals is not None else (None, None)
    gradings = _enumerate(path, bounds, v_total, h_total, None, workers)
    if t is not None:
        gradings = [g for g in gradings if outside_shadow_weight(g, epsilon) == t]
    return gradings


def tight_weight_sum(params: TightParams, bounds: GradingBounds, workers: int = 1) -> CoeffPolynomial:
    total = CoeffPolynomial()
    for g in enumerate_tight_gradings(params, bounds, workers):
        total = total + weight(g)
    return total


# ── Construction helpers ───────────────────────────────────────────


def grading_from_values(path: DyckPath, values: Mapping[str, int]) -> Grading:
    """Build a grading from {'u1': 2, 'v3': 3, ...}; missing edges get 0.

    Raises:
        ValueError: Unknown edge label.
    """
    vals = [0] * len(path.edges)
    for label, val in values.items():
        vals[path.edge(label).position] = int(val)
    return Grading(path, tuple(vals))


def parse_grading(text: str, path: DyckPath) -> Grading:
    """Parse 'u1=2,u2=2,v3=3' into a grading on path."""
    pairs = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise ValueError(f"Bad grading entry '{item}', expected label=value")
        label, val = item.split("=", 1)
        pairs[label.strip()] = int(val)
    return grading_from_values(path, pairs)


def grading_to_dict(g: Grading) -> dict:
    return {
        "domain": [str(g.path.m), str(g.path.n)],
        "values": [str(v) for v in g.values],
        "labels": [e.label for e in g.path.edges],
    }
