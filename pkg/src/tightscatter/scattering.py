"""tightscatter.scattering: rank-2 scattering diagrams.

Walls are lines R*w or rays R_{<=0}*w through the origin, w primitive,
carrying a wall function f = sum_k c_k t^k in the single monomial
t = x^w. Crossing a wall in travel direction v acts by
x^m -> x^m f^(n.m), with n the primitive normal to w and n.v < 0.

Two independent constructions of the consistent completion:
    ks_complete          order-by-order correction of the loop product.
    tight_diagram        closed formula summing tight-grading weights.
compare_tight_vs_oracle checks them against each other coefficient by
coefficient.

Usage:
    data = InitialData.symbolic(3, 1)
    oracle = ks_complete(data, 9)
    report = compare_tight_vs_oracle(data, 9)
"""

from __future__ import annotations

import functools
import random
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .coeffring import (
    ONE,
    ZERO,
    BivariateSeries,
    CoeffPolynomial,
    VarId,
    as_coeff,
    in_ideal,
    p,
    poly_from_json,
    poly_to_json,
    specialize,
    univariate_pow,
)
from .grading import GradingBounds, TightParams, tight_weight_sum

SCHEMA_VERSION = "1"
LINE = "line"
RAY = "ray"
VALID_WALL_KINDS = {LINE, RAY}
X_AXIS = (1, 0)
Y_AXIS = (0, 1)


# ── Walls and diagrams ─────────────────────────────────────────────


def _is_primitive(w: tuple[int, int]) -> bool:
    return w != (0, 0) and gcd(w[0], w[1]) == 1


@dataclass(frozen=True)
class Wall:
    """A wall with function f = sum_k coeffs[k] * (x^a y^b)^k, coeffs[0] = 1."""

    direction: tuple[int, int]
    kind: str
    coeffs: tuple[CoeffPolynomial, ...]

    def __post_init__(self):
        if self.kind not in VALID_WALL_KINDS:
            raise ValueError(
                f"Invalid wall kind '{self.kind}'. Valid: {sorted(VALID_WALL_KINDS)}"
            )
        if not _is_primitive(self.direction):
            raise ValueError(f"Wall direction {self.direction} is not primitive")
        if not self.coeffs or not as_coeff(self.coeffs[0]).is_one():
            raise ValueError(f"Wall function on {self.direction} must have constant term 1")
        object.__setattr__(self, "coeffs", tuple(as_coeff(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        """Total x,y-degree of the wall monomial."""
        return abs(self.direction[0]) + abs(self.direction[1])

    def coefficient(self, k: int) -> CoeffPolynomial:
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def kmax(self, order: int) -> int:
        return order // self.degree

    def coefficient_list(self, order: int) -> list[CoeffPolynomial]:
        """Dense coefficients up to the largest k with k*degree <= order."""
        return [self.coefficient(k) for k in range(self.kmax(order) + 1)]

    def is_trivial(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def function(self, order: int) -> BivariateSeries:
        a, b = self.direction
        return BivariateSeries(
            order, {(k * a, k * b): c for k, c in enumerate(self.coeffs)},
        )

    def trimmed(self) -> Wall:
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        return Wall(self.direction, self.kind, tuple(coeffs))

    def map_coefficients(self, fn: Callable[[CoeffPolynomial], CoeffPolynomial]) -> Wall:
        return Wall(self.direction, self.kind, (ONE,) + tuple(fn(c) for c in self.coeffs[1:]))

    def __str__(self) -> str:
        a, b = self.direction
        terms = ["1"]
        for k, c in enumerate(self.coeffs[1:], start=1):
            if c.is_zero():
                continue
            mono = f"x^{k * a}y^{k * b}"
            terms.append(mono if c.is_one() else f"({c})*{mono}")
        return f"{self.kind} {self.direction}: " + " + ".join(terms)


@dataclass(frozen=True)
class ScatteringDiagram:
    """Initial lines plus at most one nontrivial ray per primitive direction."""

    lines: tuple[Wall, ...]
    rays: Mapping[tuple[int, int], Wall] = field(default_factory=dict)
    order: int = 0

    def __post_init__(self):
        clean = {d: w.trimmed() for d, w in self.rays.items() if not w.is_trivial()}
        for d, w in clean.items():
            if d != w.direction or w.kind != RAY:
                raise ValueError(f"Ray keyed {d} does not match wall {w}")
        object.__setattr__(self, "rays", dict(sorted(clean.items(), key=lambda kv: _slope_key(kv[0]))))

    def walls(self) -> list[Wall]:
        return list(self.lines) + list(self.rays.values())

    def ray(self, a: int, b: int) -> Wall | None:
        return self.rays.get((a, b))

    def ray_directions(self) -> list[tuple[int, int]]:
        return list(self.rays)


def _slope_key(w: tuple[int, int]) -> tuple:
    a, b = w
    return (Fraction(b, a) if a else Fraction(10**18), a, b)


# ── Initial data ───────────────────────────────────────────────────


@dataclass(frozen=True)
class InitialData:
    """Incoming lines: (primitive direction in N^2, coefficient list with c0 = 1)."""

    lines: tuple[tuple[tuple[int, int], tuple[CoeffPolynomial, ...]], ...]

    def __post_init__(self):
        seen = set()
        for w, coeffs in self.lines:
            if w[0] < 0 or w[1] < 0 or not _is_primitive(w):
                raise ValueError(f"Initial line direction {w} must be primitive in N^2")
            if w in seen:
                raise ValueError(f"Duplicate initial line direction {w}")
            seen.add(w)
            if not coeffs or not as_coeff(coeffs[0]).is_one():
                raise ValueError(f"Initial function on {w} must have constant term 1")

    # ── constructors ───────────────────────────────────────────────

    @classmethod
    def from_polys(cls, p1: Sequence, p2: Sequence) -> InitialData:
        """P1(x) on the x-axis, P2(y) on the y-axis, as coefficient lists."""
        return cls((
            (X_AXIS, tuple(as_coeff(c) for c in p1)),
            (Y_AXIS, tuple(as_coeff(c) for c in p2)),
        ))

    @classmethod
    def symbolic(cls, l1: int, l2: int) -> InitialData:
        """P_i = 1 + p[i,1] z + ... + p[i,l_i] z^l_i."""
        return cls.from_polys(
            [ONE] + [p(1, j) for j in range(1, l1 + 1)],
            [ONE] + [p(2, j) for j in range(1, l2 + 1)],
        )

    @classmethod
    def power_series(cls, j_max: int) -> InitialData:
        """Generic power series truncated at z^j_max."""
        return cls.symbolic(j_max, j_max)

    @classmethod
    def random_power_series(cls, seed: int, j_max: int = 4) -> InitialData:
        """Deterministic random truncated series: a random subset of the
        p[i,j], j <= j_max, each scaled by a small positive integer."""
        rng = random.Random(seed)
        sides = []
        for side in (1, 2):
            coeffs = [ONE]
            for j in range(1, j_max + 1):
                if rng.random() < 0.6:
                    coeffs.append(rng.randint(1, 3) * p(side, j))
                else:
                    coeffs.append(ZERO)
            if all(c.is_zero() for c in coeffs[1:]):
                coeffs[1] = p(side, 1)
            sides.append(coeffs)
        return cls.from_polys(sides[0], sides[1])

    @classmethod
    def cluster(cls, l1: int, l2: int) -> InitialData:
        """P1 = 1 + x^l1, P2 = 1 + y^l2."""
        return cls.from_polys(
            [ONE] + [ZERO] * (l1 - 1) + [ONE],
            [ONE] + [ZERO] * (l2 - 1) + [ONE],
        )

    # ── queries ────────────────────────────────────────────────────

    def is_two_line(self) -> bool:
        return [w for w, _ in self.lines] == [X_AXIS, Y_AXIS]

    def side_coeffs(self, side: int) -> tuple[CoeffPolynomial, ...]:
        if not self.is_two_line():
            raise ValueError("side_coeffs needs the two-line initial data")
        return self.lines[side - 1][1]

    def bounds(self) -> GradingBounds:
        """Grading bounds matching the nonzero coefficients of P1, P2."""
        sup1 = frozenset(j for j, c in enumerate(self.side_coeffs(1)) if j and not c.is_zero())
        sup2 = frozenset(j for j, c in enumerate(self.side_coeffs(2)) if j and not c.is_zero())
        return GradingBounds(
            l1=max(sup1, default=0), l2=max(sup2, default=0),
            vertical_support=sup1, horizontal_support=sup2,
        )

    def assignment(self) -> dict[VarId, CoeffPolynomial]:
        """p[i,j] -> coefficient of z^j in P_i."""
        out: dict[VarId, CoeffPolynomial] = {}
        for side in (1, 2):
            for j, c in enumerate(self.side_coeffs(side)):
                if j:
                    out[VarId(side, j)] = c
        return out

    def is_symbolic(self) -> bool:
        return all(
            c == p(side, j) for side in (1, 2)
            for j, c in enumerate(self.side_coeffs(side)) if j
        )

    def walls(self) -> tuple[Wall, ...]:
        return tuple(Wall(w, LINE, coeffs) for w, coeffs in self.lines)

    def specialize(self, assignment: Mapping) -> InitialData:
        return InitialData(tuple(
            (w, tuple(specialize(c, assignment) for c in coeffs)) for w, coeffs in self.lines
        ))


# ── Wall crossing ──────────────────────────────────────────────────


def crossing_normal(direction: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    """Primitive normal n to the wall with n.v < 0.

    Raises:
        ValueError: v is parallel to the wall.
    """
    a, b = direction
    n = (-b, a)
    dot = n[0] * v[0] + n[1] * v[1]
    if dot == 0:
        raise ValueError(f"Travel direction {v} is parallel to wall {direction}")
    return n if dot < 0 else (b, -a)


class _PowerCache:
    """Powers f^e of one wall function at one truncation order."""

    def __init__(self, wall: Wall, order: int):
        self.wall = wall
        self.order = order
        self.kmax = wall.kmax(order)
        self.base = wall.coefficient_list(order)
        self._cache: dict[int, list[CoeffPolynomial]] = {}

    def power(self, e: int) -> list[CoeffPolynomial]:
        if e not in self._cache:
            self._cache[e] = univariate_pow(self.base, e, self.kmax)
        return self._cache[e]

    def unit(self, e: int) -> BivariateSeries:
        a, b = self.wall.direction
        return BivariateSeries(
            self.order, {(k * a, k * b): c for k, c in enumerate(self.power(e))},
        )


def _apply_with_cache(
    cache: _PowerCache, n: tuple[int, int], s: BivariateSeries,
) -> BivariateSeries:
    a, b = cache.wall.direction
    order = s.order
    out: dict[tuple[int, int], CoeffPolynomial] = {}
    for (i, j), c in s.terms():
        e = n[0] * i + n[1] * j
        if e == 0:
            out[(i, j)] = out[(i, j)] + c if (i, j) in out else c
            continue
        for k, fk in enumerate(cache.power(e)):
            key = (i + k * a, j + k * b)
            if in_ideal(key[0], key[1], order):
                break
            if fk.is_zero():
                continue
            term = c * fk
            out[key] = out[key] + term if key in out else term
    return BivariateSeries(order, out)


def apply_crossing(wall: Wall, v: tuple[int, int], s: BivariateSeries) -> BivariateSeries:
    """Image of s under crossing wall in travel direction v, truncated at s.order.

    Raises:
        ValueError: v is parallel to the wall.
    """
    n = crossing_normal(wall.direction, v)
    return _apply_with_cache(_PowerCache(wall, s.order), n, s)


@dataclass(frozen=True)
class WallAutomorphism:
    """theta(x) = x * ux, theta(y) = y * uy, modulo the order-(K+1) ideal."""

    order: int
    ux: BivariateSeries
    uy: BivariateSeries

    @classmethod
    def identity(cls, order: int) -> WallAutomorphism:
        one = BivariateSeries.one(order)
        return cls(order, one, one)

    @classmethod
    def crossing(cls, wall: Wall, v: tuple[int, int], order: int) -> WallAutomorphism:
        return cls.identity(order).then_cross(wall, v)

    def apply(self, s: BivariateSeries) -> BivariateSeries:
        """theta(s): x^i y^j -> x^i y^j ux^i uy^j."""
        out = BivariateSeries(s.order)
        for (i, j), c in s.terms():
            unit = (self.ux ** i) * (self.uy ** j)
            out = out + unit.shift(i, j).scale(c)
        return out

    def then_cross(self, wall: Wall, v: tuple[int, int]) -> WallAutomorphism:
        """crossing o self: self acts first."""
        n = crossing_normal(wall.direction, v)
        cache = _PowerCache(wall, self.order)
        ux = cache.unit(n[0]) * _apply_with_cache(cache, n, self.ux)
        uy = cache.unit(n[1]) * _apply_with_cache(cache, n, self.uy)
        return WallAutomorphism(self.order, ux, uy)

    def compose(self, first: WallAutomorphism) -> WallAutomorphism:
        """self o first."""
        if self.order != first.order:
            raise ValueError(f"Mismatched orders {self.order} vs {first.order}")
        return WallAutomorphism(
            self.order,
            self.ux * self.apply(first.ux),
            self.uy * self.apply(first.uy),
        )

    def is_identity(self) -> bool:
        return self.ux.is_one() and self.uy.is_one()

    def deviation(self) -> tuple[BivariateSeries, BivariateSeries]:
        one = BivariateSeries.one(self.order)
        return self.ux - one, self.uy - one


# ── Loops and path-ordered products ────────────────────────────────


@dataclass(frozen=True)
class Crossing:
    wall: Wall
    half_ray: tuple[int, int]

    @property
    def travel(self) -> tuple[int, int]:
        """Counterclockwise travel direction across the half-ray."""
        rx, ry = self.half_ray
        return (-ry, rx)


def _half(r: tuple[int, int]) -> int:
    return 0 if r[1] > 0 or (r[1] == 0 and r[0] > 0) else 1


def _angle_cmp(c1: Crossing, c2: Crossing) -> int:
    r1, r2 = c1.half_ray, c2.half_ray
    h1, h2 = _half(r1), _half(r2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cross = r1[0] * r2[1] - r1[1] * r2[0]
    if cross:
        return -1 if cross > 0 else 1
    k1 = (c1.wall.kind, c1.wall.direction)
    k2 = (c2.wall.kind, c2.wall.direction)
    return (k1 > k2) - (k1 < k2)


def loop_crossings(d: ScatteringDiagram, start: int = 0) -> list[Crossing]:
    """Crossings met by a counterclockwise loop around the origin.

    The loop begins just below the positive x-axis; `start` rotates the
    base point by that many crossings.
    """
    crossings = []
    for wall in d.walls():
        a, b = wall.direction
        crossings.append(Crossing(wall, (-a, -b)))
        if wall.kind == LINE:
            crossings.append(Crossing(wall, (a, b)))
    crossings.sort(key=functools.cmp_to_key(_angle_cmp))
    if crossings and start:
        start %= len(crossings)
        crossings = crossings[start:] + crossings[:start]
    return crossings


def path_ordered_product(
    d: ScatteringDiagram, loop: Iterable[Crossing] | None = None, order: int | None = None,
) -> WallAutomorphism:
    """Compose the crossings in loop order: the first crossing acts first."""
    order = d.order if order is None else order
    theta = WallAutomorphism.identity(order)
    for crossing in loop_crossings(d) if loop is None else loop:
        if crossing.wall.degree > order:
            continue
        theta = theta.then_cross(crossing.wall, crossing.travel)
    return theta


def is_consistent(d: ScatteringDiagram, order: int | None = None) -> bool:
    return path_ordered_product(d, order=order).is_identity()


# ── Consistent completion ──────────────────────────────────────────


def _coerce_initial(initial) -> InitialData:
    if isinstance(initial, InitialData):
        return initial
    try:
        return InitialData(tuple((tuple(w), tuple(as_coeff(c) for c in coeffs)) for w, coeffs in initial))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"Malformed initial data: {exc}") from exc


def ks_complete(
    initial: InitialData | Iterable,
    order: int,
    loop_start: int = 0,
    progress: Callable[[int, int], None] | None = None,
) -> ScatteringDiagram:
    """Consistent completion by order-by-order correction.

    At each degree d the loop product is the identity below degree d. Its
    degree-d part splits by primitive direction: a term at k*(a,b) becomes
    the coefficient of t^k on the ray R_{<=0}(a,b).

    Args:
        initial: InitialData or a list of (direction, coefficient list).
        order: Truncation order K.
        loop_start: Rotate the base point of the loop (result is independent).
        progress: Called as progress(d, order) after each degree.

    Raises:
        ValueError: Malformed initial data.
        RuntimeError: The loop deviation is not of the expected form.
    """
    data = _coerce_initial(initial)
    lines = data.walls()
    rays: dict[tuple[int, int], list[CoeffPolynomial]] = {}

    def _walls() -> dict[tuple[int, int], Wall]:
        return {w: Wall(w, RAY, tuple(cs)) for w, cs in rays.items()}

    for deg in range(1, order + 1):
        current = ScatteringDiagram(lines, _walls(), deg)
        theta = path_ordered_product(current, loop_crossings(current, loop_start), deg)
        dx, dy = theta.deviation()
        corrections: dict[tuple[int, int], tuple[CoeffPolynomial, CoeffPolynomial]] = {}
        for series, slot in ((dx, 0), (dy, 1)):
            for (i, j), c in series.terms():
                if i < 0 or j < 0 or i + j < deg:
                    raise RuntimeError(
                        f"Loop deviation has unexpected term x^{i}y^{j} at degree {deg}"
                    )
                pair = corrections.get((i, j), (ZERO, ZERO))
                corrections[(i, j)] = (c, pair[1]) if slot == 0 else (pair[0], c)

        for (i, j), (alpha, beta) in sorted(corrections.items()):
            k = gcd(i, j)
            a, b = i // k, j // k
            if not (alpha * a + beta * b).is_zero():
                raise RuntimeError(
                    f"Deviation at x^{i}y^{j} is not a wall-crossing: "
                    f"{a}*({alpha}) + {b}*({beta}) != 0"
                )
            c = alpha.exact_divide_int(b) if b else (-beta).exact_divide_int(a)
            coeffs = rays.setdefault((a, b), [ONE])
            coeffs.extend([ZERO] * (k + 1 - len(coeffs)))
            coeffs[k] = coeffs[k] + c
        if progress is not None:
            progress(deg, order)

    return ScatteringDiagram(lines, _walls(), order)


# ── Closed formula ─────────────────────────────────────────────────


def wall_function_tight(
    a: int,
    b: int,
    data: InitialData,
    order: int,
    epsilon: int = -1,
    workers: int = 1,
) -> Wall:
    """The ray R_{<=0}(a,b) from weighted tight gradings.

    lambda(ka,kb) is the sum of wt(omega) over tight gradings for
    (ka, kb), then specialized to the coefficients of data.

    Raises:
        ValueError: (a,b) not coprime positive, or data not two-line.
    """
    if a <= 0 or b <= 0 or gcd(a, b) != 1:
        raise ValueError(f"wall_function_tight needs coprime positive (a,b), got ({a},{b})")
    bounds = data.bounds()
    assignment = None if data.is_symbolic() else data.assignment()
    coeffs = [ONE]
    for k in range(1, order // (a + b) + 1):
        params = TightParams.minimal(k * a, k * b, epsilon)
        total = tight_weight_sum(params, bounds, workers)
        if assignment is not None and not total.is_zero():
            total = specialize(total, assignment)
        coeffs.append(total)
    return Wall((a, b), RAY, tuple(coeffs)).trimmed()


def coprime_directions(order: int) -> list[tuple[int, int]]:
    """Coprime (a,b), a,b >= 1, a + b <= order, by slope."""
    dirs = [
        (a, b) for a in range(1, order) for b in range(1, order - a + 1) if gcd(a, b) == 1
    ]
    return sorted(dirs, key=_slope_key)


def tight_diagram(
    data: InitialData,
    order: int,
    epsilon: int = -1,
    workers: int = 1,
    progress: Callable[[tuple[int, int]], None] | None = None,
) -> ScatteringDiagram:
    """Every ray of the completion from the closed formula."""
    directions = coprime_directions(order)
    rays: dict[tuple[int, int], Wall] = {}
    if workers > 1 and len(directions) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(directions))) as pool:
            futures = {
                pool.submit(wall_function_tight, a, b, data, order, epsilon): (a, b)
                for a, b in directions
            }
            for future in as_completed(futures):
                rays[futures[future]] = future.result()
                if progress is not None:
                    progress(futures[future])
    else:
        for a, b in directions:
            rays[(a, b)] = wall_function_tight(a, b, data, order, epsilon)
            if progress is not None:
                progress((a, b))
    return ScatteringDiagram(data.walls(), rays, order)


# ── Comparison and checks ──────────────────────────────────────────


@dataclass(frozen=True)
class ComparisonReport:
    order: int
    tight: ScatteringDiagram
    oracle: ScatteringDiagram
    discrepancies: tuple[dict, ...]

    @property
    def equal(self) -> bool:
        return not self.discrepancies


def compare_diagrams(
    tight: ScatteringDiagram, oracle: ScatteringDiagram, order: int,
) -> list[dict]:
    """Every (direction, k) where the two ray functions differ."""
    out = []
    directions = sorted(set(tight.rays) | set(oracle.rays), key=_slope_key)
    for w in directions:
        t_wall, o_wall = tight.ray(*w), oracle.ray(*w)
        degree = abs(w[0]) + abs(w[1])
        for k in range(1, order // degree + 1):
            t_c = t_wall.coefficient(k) if t_wall else ZERO
            o_c = o_wall.coefficient(k) if o_wall else ZERO
            if t_c != o_c:
                out.append({"direction": w, "k": k, "tight": t_c, "oracle": o_c})
    return out


def compare_tight_vs_oracle(
    data: InitialData, order: int, epsilon: int = -1, workers: int = 1,
) -> ComparisonReport:
    """Build both diagrams and list every coefficient where they differ."""
    oracle = ks_complete(data, order)
    tight = tight_diagram(data, order, epsilon, workers)
    return ComparisonReport(order, tight, oracle, tuple(compare_diagrams(tight, oracle, order)))


def check_positivity(d: ScatteringDiagram) -> bool:
    """True iff every wall coefficient has nonnegative integer coefficients."""
    for wall in d.walls():
        for c in wall.coeffs:
            if not (c.is_integral() and c.is_nonnegative()):
                return False
    return True


def specialize_diagram(d: ScatteringDiagram, assignment: Mapping) -> ScatteringDiagram:
    def _spec(c: CoeffPolynomial) -> CoeffPolynomial:
        return specialize(c, assignment)

    return ScatteringDiagram(
        tuple(w.map_coefficients(_spec) for w in d.lines),
        {k: w.map_coefficients(_spec) for k, w in d.rays.items()},
        d.order,
    )


def cluster_ray_directions(l1: int, l2: int, order: int, steps: int = 64) -> list[tuple[int, int]]:
    """Primitive directions of cluster rays of total degree <= order.

    Follows the d-vectors of the cluster variables through the tropical
    exchange relation in both directions; rays point opposite to them.
    """
    def _walk(d_prev, d_cur, k, step):
        found = []
        for _ in range(steps):
            ell = l1 if k % 2 else l2
            pos = (max(d_cur[0], 0), max(d_cur[1], 0))
            d_next = (-d_prev[0] + ell * pos[0], -d_prev[1] + ell * pos[1])
            d_prev, d_cur, k = d_cur, d_next, k + step
            if d_cur[0] > 0 and d_cur[1] > 0:
                g = gcd(*d_cur)
                prim = (d_cur[0] // g, d_cur[1] // g)
                if prim[0] + prim[1] > order:
                    break
                found.append(prim)
        return found

    forward = _walk((-1, 0), (0, -1), 2, 1)
    backward = _walk((0, -1), (-1, 0), 1, -1)
    return sorted(set(forward) | set(backward), key=_slope_key)


# ── Serialization ──────────────────────────────────────────────────


def wall_to_dict(wall: Wall) -> dict:
    return {
        "direction": [str(wall.direction[0]), str(wall.direction[1])],
        "kind": wall.kind,
        "coefficients": {
            str(k): poly_to_json(c) for k, c in enumerate(wall.coeffs) if k and not c.is_zero()
        },
    }


def diagram_to_dict(d: ScatteringDiagram) -> dict:
    """JSON-ready dump: walls ordered by slope, lines before rays on a tie."""
    walls = sorted(d.walls(), key=lambda w: (_slope_key(w.direction), w.kind))
    return {
        "schema_version": SCHEMA_VERSION,
        "order": str(d.order),
        "walls": [wall_to_dict(w) for w in walls],
    }


def report_to_dict(report: ComparisonReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "order": str(report.order),
        "equal": report.equal,
        "rays": [
            [str(a), str(b)] for a, b in sorted(report.oracle.rays, key=_slope_key)
        ],
        "discrepancies": [
            {
                "direction": [str(x) for x in item["direction"]],
                "k": str(item["k"]),
                "tight": poly_to_json(item["tight"]),
                "oracle": poly_to_json(item["oracle"]),
            }
            for item in report.discrepancies
        ],
    }


def wall_from_dict(data: dict) -> Wall:
    a, b = (int(x) for x in data["direction"])
    coeffs = {int(k): poly_from_json(v) for k, v in data["coefficients"].items()}
    top = max(coeffs, default=0)
    return Wall((a, b), data["kind"], (ONE,) + tuple(coeffs.get(k, ZERO) for k in range(1, top + 1)))


def diagram_from_dict(data: dict) -> ScatteringDiagram:
    """Inverse of diagram_to_dict.

    Raises:
        ValueError: Unsupported schema_version or malformed walls.
    """
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"Unsupported schema_version {version!r}. Valid: ['{SCHEMA_VERSION}']")
    walls = [wall_from_dict(w) for w in data["walls"]]
    lines = tuple(w for w in walls if w.kind == LINE)
    rays = {w.direction: w for w in walls if w.kind == RAY}
    return ScatteringDiagram(lines, rays, int(data["order"]))
