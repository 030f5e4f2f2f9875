"""tightscatter.greedy: greedy elements and the generalized cluster recursion.

Greedy elements x[a1,a2] are sums over compatible gradings on
P([a1]+, [a2]+). Cluster pre-variables x_k come from the exchange
relations with P1, P2 and their reversed forms, and are normalized to
X_k by powers of the top coefficients p[1,l1], p[2,l2].

Usage:
    cfg = ClusterSeedConfig.symbolic(2, 2)
    x = greedy_element(2, 1, cfg)
    X5 = normalize_cluster_variable(cluster_variable(5, cfg), cfg).value
    constants = expand_in_greedy_basis(x * x, cfg)
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .broken_lines import BrokenLine, enumerate_broken_lines, generic_endpoint
from .coeffring import ZERO, CoeffPolynomial, VarId, as_coeff, specialize
from .grading import (
    Grading,
    GradingBounds,
    TightParams,
    enumerate_compatible_gradings,
    weight,
)
from .laurent import LaurentPolynomial
from .scattering import X_AXIS, InitialData, ScatteringDiagram, ks_complete

MAX_CLUSTER_INDEX = 64
MAX_EXPANSION_STEPS = 10_000


# ── Seed configuration ─────────────────────────────────────────────


@dataclass(frozen=True)
class ClusterSeedConfig:
    """Exchange polynomials P1, P2 with invertible top coefficients."""

    data: InitialData

    def __post_init__(self):
        if not self.data.is_two_line():
            raise ValueError("ClusterSeedConfig needs two-line initial data")
        for side in (1, 2):
            top = self.top_coefficient(side)
            if top.is_zero():
                raise ValueError(f"P{side} has zero top coefficient")
            try:
                top ** -1
            except ValueError as exc:
                raise ValueError(
                    f"Top coefficient {top} of P{side} is not invertible"
                ) from exc

    @classmethod
    def symbolic(cls, l1: int, l2: int) -> ClusterSeedConfig:
        return cls(InitialData.symbolic(l1, l2))

    @classmethod
    def from_polys(cls, p1, p2) -> ClusterSeedConfig:
        """Coefficient lists; trailing zeros are dropped."""
        def _trim(coeffs):
            coeffs = [as_coeff(c) for c in coeffs]
            while len(coeffs) > 1 and coeffs[-1].is_zero():
                coeffs.pop()
            return coeffs

        return cls(InitialData.from_polys(_trim(p1), _trim(p2)))

    @classmethod
    def cluster(cls, l1: int, l2: int) -> ClusterSeedConfig:
        """P1 = 1 + x^l1, P2 = 1 + y^l2."""
        return cls(InitialData.cluster(l1, l2))

    @property
    def l1(self) -> int:
        return len(self.data.side_coeffs(1)) - 1

    @property
    def l2(self) -> int:
        return len(self.data.side_coeffs(2)) - 1

    def exchange_poly(self, side: int) -> tuple[CoeffPolynomial, ...]:
        return self.data.side_coeffs(side)

    def top_coefficient(self, side: int) -> CoeffPolynomial:
        return self.data.side_coeffs(side)[-1]

    def reversed_poly(self, side: int) -> tuple[CoeffPolynomial, ...]:
        """z^l P(1/z) / p[side,l], as a coefficient list."""
        coeffs = self.exchange_poly(side)
        inv = self.top_coefficient(side) ** -1
        return tuple(c * inv for c in reversed(coeffs))

    def bounds(self) -> GradingBounds:
        return self.data.bounds()

    def grading_weight(self, g: Grading) -> CoeffPolynomial:
        w = weight(g)
        if self.data.is_symbolic():
            return w
        return specialize(w, self.data.assignment())

    def frozen_vars(self) -> dict[int, VarId]:
        """Side -> the variable that normalization may invert (symbolic only)."""
        if not self.data.is_symbolic():
            return {}
        return {side: VarId(side, ell) for side, ell in ((1, self.l1), (2, self.l2)) if ell}


# ── Greedy elements ────────────────────────────────────────────────


def greedy_element(a1: int, a2: int, cfg: ClusterSeedConfig, workers: int = 1) -> LaurentPolynomial:
    """x[a1,a2] = x1^-a1 x2^-a2 * sum wt(omega) x1^omega(E2) x2^omega(E1).

    The sum runs over compatible gradings on P([a1]+, [a2]+) with vertical
    values bounded by l1 and horizontal values by l2.
    """
    if workers > 1:
        return _greedy(a1, a2, cfg, workers)
    return _greedy_cached(a1, a2, cfg)


@functools.lru_cache(maxsize=None)
def _greedy_cached(a1: int, a2: int, cfg: ClusterSeedConfig) -> LaurentPolynomial:
    return _greedy(a1, a2, cfg, 1)


def _greedy(a1: int, a2: int, cfg: ClusterSeedConfig, workers: int) -> LaurentPolynomial:
    m, n = max(a1, 0), max(a2, 0)
    terms: dict[tuple[int, int], CoeffPolynomial] = {}
    for g in enumerate_compatible_gradings(m, n, cfg.bounds(), workers=workers):
        key = (g.vertical_total - a1, g.horizontal_total - a2)
        terms[key] = terms.get(key, ZERO) + cfg.grading_weight(g)
    return LaurentPolynomial(terms)


def truncate_growth(z: LaurentPolynomial, base: tuple[int, int], order: int) -> LaurentPolynomial:
    """Terms x^d with (d1 - base1) + (d2 - base2) <= order."""
    return LaurentPolynomial({
        d: c for d, c in z.terms() if (d[0] - base[0]) + (d[1] - base[1]) <= order
    })


# ── Cluster recursion ──────────────────────────────────────────────


def _exchange_coeffs(k: int, cfg: ClusterSeedConfig) -> tuple[CoeffPolynomial, ...]:
    residue = k % 4
    if residue == 1:
        return cfg.exchange_poly(1)
    if residue == 2:
        return cfg.exchange_poly(2)
    if residue == 3:
        return cfg.reversed_poly(1)
    return cfg.reversed_poly(2)


def _evaluate(coeffs: tuple[CoeffPolynomial, ...], z: LaurentPolynomial) -> LaurentPolynomial:
    result = LaurentPolynomial.monomial(0, 0, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        result = result * z + LaurentPolynomial.monomial(0, 0, c)
    return result


@functools.lru_cache(maxsize=None)
def _pre_variable(k: int, cfg: ClusterSeedConfig) -> LaurentPolynomial:
    if k == 1:
        return LaurentPolynomial.monomial(1, 0)
    if k == 2:
        return LaurentPolynomial.monomial(0, 1)
    if k > 2:
        # x_k x_{k-2} = R_{k-1}(x_{k-1})
        numerator = _evaluate(_exchange_coeffs(k - 1, cfg), _pre_variable(k - 1, cfg))
        return numerator.exact_divide(_pre_variable(k - 2, cfg))
    # x_k x_{k+2} = R_{k+1}(x_{k+1})
    numerator = _evaluate(_exchange_coeffs(k + 1, cfg), _pre_variable(k + 1, cfg))
    return numerator.exact_divide(_pre_variable(k + 2, cfg))


def cluster_variable(k: int, cfg: ClusterSeedConfig) -> LaurentPolynomial:
    """The cluster pre-variable x_k as a Laurent polynomial in x1, x2.

    Raises:
        ValueError: |k| exceeds MAX_CLUSTER_INDEX.
        RuntimeError: An exchange quotient is not Laurent.
    """
    if abs(k) > MAX_CLUSTER_INDEX:
        raise ValueError(f"Cluster index {k} out of range (|k| <= {MAX_CLUSTER_INDEX})")
    # Fill the cache outward from the initial seed to keep recursion shallow.
    step = 1 if k >= 1 else -1
    for j in range(1 if step == 1 else 2, k, step):
        _pre_variable(j, cfg)
    return _pre_variable(k, cfg)


@dataclass(frozen=True)
class NormalizedClusterVariable:
    index: int
    a: int
    b: int
    value: LaurentPolynomial


def normalize_cluster_variable(
    x: LaurentPolynomial, cfg: ClusterSeedConfig, index: int = 0,
) -> NormalizedClusterVariable:
    """Rescale by p[1,l1]^a p[2,l2]^b so the lowest-degree term has coefficient 1.

    Raises:
        RuntimeError: The lowest total degree part is not a single term
            whose coefficient is a monomial in the top coefficients.
    """
    if x.is_zero():
        raise RuntimeError("Cannot normalize the zero Laurent polynomial")
    low = x.lowest_total_degree_terms()
    if len(low) != 1:
        raise RuntimeError(f"x_{index} has {len(low)} lowest-degree terms: {sorted(low)}")
    (_, coeff), = low.items()
    if not coeff.is_monomial():
        raise RuntimeError(f"x_{index} lowest-degree coefficient {coeff} is not a monomial")
    (mono, c), = coeff.terms()
    frozen = cfg.frozen_vars()
    allowed = set(frozen.values())
    if c != 1 or any(v not in allowed for v, _ in mono):
        raise RuntimeError(
            f"x_{index} lowest-degree coefficient {coeff} is not a monomial in "
            f"{sorted(str(v) for v in allowed)}"
        )
    exps = dict(mono)
    a = -exps.get(frozen.get(1), 0)
    b = -exps.get(frozen.get(2), 0)
    scale = CoeffPolynomial.monomial({v: -e for v, e in mono})
    return NormalizedClusterVariable(index, a, b, x * scale)


def normalized_cluster_variable(k: int, cfg: ClusterSeedConfig) -> NormalizedClusterVariable:
    return normalize_cluster_variable(cluster_variable(k, cfg), cfg, k)


def d_vector(x: LaurentPolynomial) -> tuple[int, int]:
    """Denominator vector: x = N / (x1^d1 x2^d2) with N coprime to x1, x2."""
    support = x.support()
    if not support:
        raise ValueError("d_vector of zero")
    return (-min(d[0] for d in support), -min(d[1] for d in support))


# ── Basis expansion ────────────────────────────────────────────────


def expand_in_greedy_basis(
    z: LaurentPolynomial, cfg: ClusterSeedConfig, max_steps: int = MAX_EXPANSION_STEPS,
) -> dict[tuple[int, int], CoeffPolynomial]:
    """Coefficients of z in the greedy basis, by triangular elimination.

    Each step takes the support exponent d of least total degree (ties by
    lex) and subtracts c * x[-d1,-d2], which is pointed at d.

    Raises:
        RuntimeError: The elimination does not finish within max_steps.
    """
    out: dict[tuple[int, int], CoeffPolynomial] = {}
    rest = z
    for _ in range(max_steps):
        if rest.is_zero():
            return dict(sorted(out.items()))
        d = min(rest.support(), key=lambda e: (e[0] + e[1], e))
        c = rest.coefficient(*d)
        a = (-d[0], -d[1])
        out[a] = out.get(a, ZERO) + c
        rest = rest - greedy_element(a[0], a[1], cfg) * c
    raise RuntimeError(
        f"Greedy expansion did not terminate after {max_steps} steps; "
        "the input may lie outside the span"
    )


def structure_constants(
    a: tuple[int, int], b: tuple[int, int], cfg: ClusterSeedConfig,
) -> dict[tuple[int, int], CoeffPolynomial]:
    """Expansion of x[a] * x[b] in the greedy basis."""
    return expand_in_greedy_basis(greedy_element(*a, cfg) * greedy_element(*b, cfg), cfg)


# ── Broken lines against compatible gradings ───────────────────────


@dataclass(frozen=True)
class BLCGResult:
    """Both sides of the broken-line / compatible-grading count."""

    m: int
    n: int
    ka: int
    kb: int
    t: int
    broken_lines: tuple[BrokenLine, ...]
    gradings: tuple[Grading, ...]
    broken_line_sum: CoeffPolynomial
    grading_sum: CoeffPolynomial

    @property
    def matches(self) -> bool:
        return self.broken_line_sum == self.grading_sum


def bl_cg_compare(
    m: int,
    n: int,
    ka: int,
    kb: int,
    t: int,
    cfg: ClusterSeedConfig,
    d: ScatteringDiagram | None = None,
    workers: int = 1,
) -> BLCGResult:
    """Weighted broken lines bending t times at the x-axis against CG^t.

    Broken-line side: initial exponent (-m,-n), final exponent
    (-m+ka, -n+kb), total x-axis bend multiplicity t, endpoint with
    positive angular momentum. Grading side: compatible gradings on
    P(m,n) with vertical total ka, horizontal total kb and vertical
    weight t outside the horizontal shadow.

    Raises:
        ValueError: (m,n) is not a valid domain for (ka,kb) with sign -1,
            or does not strictly dominate it, or t < 0.
    """
    if t < 0:
        raise ValueError(f"Bend multiplicity t must be >= 0, got {t}")
    if ka < 0 or kb < 0:
        raise ValueError(f"(ka,kb) must be nonnegative, got ({ka},{kb})")
    if ka and kb:
        TightParams(ka, kb, -1, m, n)
    if not (m > ka and n > kb):
        raise ValueError(f"Domain ({m},{n}) must strictly dominate ({ka},{kb})")

    final = (-m + ka, -n + kb)
    order = ka + kb
    if d is None:
        d = ks_complete(cfg.data, max(order, 1))
    # Positive angular momentum: slope of Q below final_y / final_x.
    ratio = Fraction(final[1], final[0])
    q = generic_endpoint(d, slope_range=(ratio / 2, ratio))
    lines = [
        bl for bl in enumerate_broken_lines(d, (-m, -n), q, order)
        if bl.final_exponent == final and bl.bending_at(X_AXIS) == t
    ]
    bl_sum = ZERO
    for bl in lines:
        bl_sum = bl_sum + bl.weight

    gradings = enumerate_compatible_gradings(
        m, n, cfg.bounds(), totals=(ka, kb), t=t, epsilon=-1, workers=workers,
    )
    cg_sum = ZERO
    for g in gradings:
        cg_sum = cg_sum + cfg.grading_weight(g)
    return BLCGResult(m, n, ka, kb, t, tuple(lines), tuple(gradings), bl_sum, cg_sum)


def bl_cg_count_check(
    m: int, n: int, ka: int, kb: int, t: int, cfg: ClusterSeedConfig,
    d: ScatteringDiagram | None = None,
) -> bool:
    return bl_cg_compare(m, n, ka, kb, t, cfg, d).matches


def theta_greedy_mismatch(
    a1: int, a2: int, theta: LaurentPolynomial, cfg: ClusterSeedConfig, order: int,
) -> LaurentPolynomial:
    """theta minus x[a1,a2], both cut to exponent growth <= order over (-a1,-a2)."""
    base = (-a1, -a2)
    return truncate_growth(theta, base, order) - truncate_growth(greedy_element(a1, a2, cfg), base, order)

