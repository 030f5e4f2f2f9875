"""tightscatter.broken_lines: broken lines and theta functions in rank 2.

A broken line for m0 comes in from infinity along m0, moves with velocity
-m on each segment, and at a wall R*w may bend by choosing a term
t^k of f^(|w x m|), which turns the exponent into m + k*w.

Every wall passes through the origin, so the angular momentum
L = gamma x gamma' is the same on every segment. It equals m_final x Q.
The position angle therefore sweeps monotonically in the direction
sign(L), starting at arg(m0). The search walks the walls in that angular
order and recovers the bend points afterwards from L.

Usage:
    d = ks_complete(InitialData.cluster(2, 2), 30)
    lines = enumerate_broken_lines(d, (-12, -11), (Fraction(2), Fraction(3)), 30)
"""

from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coeffring import ONE, CoeffPolynomial, poly_to_json, univariate_mul, univariate_pow
from .laurent import LaurentPolynomial
from .scattering import LINE, ScatteringDiagram, Wall

# Large primes for generic endpoint denominators.
ENDPOINT_PRIMES = (1_000_003, 1_000_033, 1_000_037, 1_000_039)

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Bend:
    half_ray: tuple[int, int]
    wall_direction: tuple[int, int]
    multiplicity: int
    point: Point


@dataclass(frozen=True)
class BrokenLine:
    initial: tuple[int, int]
    segments: tuple[tuple[tuple[int, int], CoeffPolynomial], ...]
    bends: tuple[Bend, ...]
    endpoint: Point

    @property
    def final_exponent(self) -> tuple[int, int]:
        return self.segments[-1][0]

    @property
    def weight(self) -> CoeffPolynomial:
        return self.segments[-1][1]

    @property
    def angular_momentum(self) -> Fraction:
        mx, my = self.final_exponent
        qx, qy = self.endpoint
        return mx * qy - my * qx

    def bending_at(self, wall_direction: tuple[int, int]) -> int:
        """Total multiplicity of bends on walls with this direction."""
        return sum(b.multiplicity for b in self.bends if b.wall_direction == wall_direction)

    def exponents(self) -> list[tuple[int, int]]:
        return [m for m, _ in self.segments]

    def coefficients(self) -> list[CoeffPolynomial]:
        return [c for _, c in self.segments]


# ── Events ─────────────────────────────────────────────────────────


@dataclass(frozen=True)
class _Event:
    direction: tuple
    wall_direction: tuple[int, int] | None  # None marks the endpoint
    coeffs: tuple[CoeffPolynomial, ...] = ()

    @property
    def degree(self) -> int:
        w = self.wall_direction
        return abs(w[0]) + abs(w[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _sweep_cmp(start, sign: int):
    """Comparator ordering directions by sweep angle from start (exclusive)."""

    def _bucket(d) -> int:
        c = sign * _cross(start, d)
        if c > 0:
            return 0
        if c == 0:
            return 1 if _dot(start, d) < 0 else 3
        return 2

    def _cmp(e1: _Event, e2: _Event) -> int:
        b1, b2 = _bucket(e1.direction), _bucket(e2.direction)
        if b1 != b2:
            return -1 if b1 < b2 else 1
        c = sign * _cross(e1.direction, e2.direction)
        if c:
            return -1 if c > 0 else 1
        return 0

    return _cmp, _bucket


def _wall_groups(d: ScatteringDiagram, order: int) -> list[_Event]:
    """One event per half-ray carrying walls, functions multiplied."""
    groups: dict[tuple[int, int], list[Wall]] = {}
    for wall in d.walls():
        a, b = wall.direction
        groups.setdefault((-a, -b), []).append(wall)
        if wall.kind == LINE:
            groups.setdefault((a, b), []).append(wall)
    events = []
    for half_ray, walls in sorted(groups.items()):
        kmax = order // walls[0].degree
        coeffs = [ONE]
        for wall in walls:
            coeffs = univariate_mul(coeffs, wall.coefficient_list(order), kmax)
        events.append(_Event(half_ray, walls[0].direction, tuple(coeffs)))
    return events


def _line_slopes(d: ScatteringDiagram) -> list[tuple[int, int]]:
    # Rays lie in the closed third quadrant; only lines can meet Q.
    return [w.direction for w in d.lines]


def validate_endpoint(d: ScatteringDiagram, q: Point) -> None:
    """Raises ValueError unless q is in the open first quadrant and off every line."""
    if not (q[0] > 0 and q[1] > 0):
        raise ValueError(f"Endpoint {q} is not in the first quadrant")
    for w in _line_slopes(d):
        if _cross(w, q) == 0:
            raise ValueError(f"Endpoint {q} lies on the line R*{w}")


def generic_endpoint(
    d: ScatteringDiagram,
    index: int = 0,
    slope_range: tuple[Fraction, Fraction] | None = None,
) -> Point:
    """Deterministic generic Q = (q, q*r) with prime-denominator rationals.

    Args:
        d: Diagram whose line slopes Q must avoid.
        index: Selects among distinct generic points.
        slope_range: Open interval for r = Q_y / Q_x (default (1/4, 4)).
    """
    lo, hi = slope_range or (Fraction(1, 4), Fraction(4))
    if not lo < hi:
        raise ValueError(f"Empty slope range ({lo}, {hi})")
    prime = ENDPOINT_PRIMES[index % len(ENDPOINT_PRIMES)]
    q = 1 + Fraction(index + 1, prime)
    step = 0
    while True:
        frac = Fraction((2 * index + 1) * 7919 + step * 104_729, prime) % 1
        if frac == 0:
            step += 1
            continue
        r = lo + (hi - lo) * frac
        point = (q, q * r)
        if all(_cross(w, point) != 0 for w in _line_slopes(d)):
            return point
        step += 1


# ── Search ─────────────────────────────────────────────────────────


def enumerate_broken_lines(
    d: ScatteringDiagram,
    m0: Sequence[int],
    q: Point,
    order: int | None = None,
    workers: int = 1,
) -> list[BrokenLine]:
    """All broken lines for m0 ending at q whose exponent grows by at most `order`.

    Growth is measured as the total x,y-degree of m_final - m0, i.e. the sum
    of k * |w| over the bends. With workers > 1 the two sweep directions are
    traced in separate processes.

    Raises:
        ValueError: q off the first quadrant or on a wall.
    """
    order = d.order if order is None else order
    q = (Fraction(q[0]), Fraction(q[1]))
    validate_endpoint(d, q)
    m0 = (int(m0[0]), int(m0[1]))
    if m0 == (0, 0):
        return [BrokenLine(m0, ((m0, ONE),), (), q)]

    walls = _wall_groups(d, order)
    sweeps = []
    for sign in (1, -1):
        cmp, bucket = _sweep_cmp(m0, sign)
        events = [e for e in walls + [_Event(q, None)] if bucket(e.direction) != 3]
        events.sort(key=functools.cmp_to_key(cmp))
        sweeps.append((events, m0, sign, order, q))

    found: list[BrokenLine] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(sweeps))) as pool:
            for part in pool.map(_trace, *zip(*sweeps)):
                found.extend(part)
    else:
        for sweep in sweeps:
            found.extend(_trace(*sweep))
    found.sort(key=lambda bl: (bl.final_exponent, [b.half_ray for b in bl.bends],
                               [b.multiplicity for b in bl.bends]))
    return found


def _trace(events: list[_Event], m0: tuple[int, int], sign: int, order: int, q: Point) -> list[BrokenLine]:
    out: list[BrokenLine] = []
    power_cache: dict[tuple[int, int], list[CoeffPolynomial]] = {}

    def _power(idx: int, p: int) -> list[CoeffPolynomial]:
        key = (idx, p)
        if key not in power_cache:
            ev = events[idx]
            power_cache[key] = univariate_pow(list(ev.coeffs), p, len(ev.coeffs) - 1)
        return power_cache[key]

    def _rec(start: int, m, coeff, used: int, segments, bends):
        for idx in range(start, len(events)):
            ev = events[idx]
            # The position must stay strictly on the L side of R*m.
            if sign * _cross(ev.direction, m) >= 0:
                return
            if ev.wall_direction is None:
                out.append(_finish(m0, segments, bends, q))
                return
            w = ev.wall_direction
            p = abs(_cross(w, m))
            if p == 0:
                continue
            fp = _power(idx, p)
            for k in range(1, len(fp)):
                if used + k * ev.degree > order:
                    break
                ck = fp[k]
                if ck.is_zero():
                    continue
                m_new = (m[0] + k * w[0], m[1] + k * w[1])
                c_new = coeff * ck
                _rec(
                    idx + 1, m_new, c_new, used + k * ev.degree,
                    segments + ((m_new, c_new),),
                    bends + ((ev.direction, w, k, m),),
                )

    _rec(0, m0, ONE, 0, ((m0, ONE),), ())
    return out


def _finish(m0, segments, raw_bends, q: Point) -> BrokenLine:
    mf = segments[-1][0]
    ang = _cross(mf, q)
    bends = []
    for half_ray, w, k, m_before in raw_bends:
        # gamma = lam * h with gamma x (-m) = L on the incoming segment.
        lam = Fraction(ang) / _cross(m_before, half_ray)
        bends.append(Bend(half_ray, w, k, (lam * half_ray[0], lam * half_ray[1])))
    return BrokenLine(m0, tuple(segments), tuple(bends), q)


# ── Theta functions ────────────────────────────────────────────────


def theta_function(
    d: ScatteringDiagram,
    m0: Sequence[int],
    q: Point | None = None,
    order: int | None = None,
    workers: int = 1,
) -> LaurentPolynomial:
    """Sum of c(gamma) x^m(gamma) over broken lines for m0 ending at q.

    x1 = x^(1,0), x2 = x^(0,1). q defaults to generic_endpoint(d).
    """
    q = generic_endpoint(d) if q is None else q
    return sum_broken_lines(enumerate_broken_lines(d, m0, q, order, workers))


def sum_broken_lines(lines: Sequence[BrokenLine]) -> LaurentPolynomial:
    total: dict[tuple[int, int], CoeffPolynomial] = {}
    for bl in lines:
        mf = bl.final_exponent
        total[mf] = total[mf] + bl.weight if mf in total else bl.weight
    return LaurentPolynomial(total)


def broken_line_to_dict(bl: BrokenLine) -> dict:
    def _pt(point: Point) -> list[str]:
        return [str(point[0]), str(point[1])]

    return {
        "initial": [str(x) for x in bl.initial],
        "endpoint": _pt(bl.endpoint),
        "segments": [
            {"exponent": [str(m[0]), str(m[1])], "coeff": poly_to_json(c)}
            for m, c in bl.segments
        ],
        "bends": [
            {
                "wall": [str(x) for x in b.wall_direction],
                "multiplicity": str(b.multiplicity),
                "point": _pt(b.point),
            }
            for b in bl.bends
        ],
        "weight": poly_to_json(bl.weight),
    }
