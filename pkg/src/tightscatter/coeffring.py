"""tightscatter.coeffring: exact coefficient arithmetic.

Sparse polynomials in the coefficient variables p[i,j], truncated
bivariate series in x, y over those polynomials, specialization and the
formal logarithm.

Variables:
    VarId(i, j) with j >= 1 is p[i,j]. VarId(1, 0) and VarId(2, 0) are the
    specialization parameters s and t (p[i,0] itself is the constant 1,
    so degree 0 is free for this use). Both count toward the weighted
    degree of their side, which keeps p[1,j] -> C(l,j) s^j homogeneous.

Coefficients are Python ints. Rationals (fractions.Fraction) appear only
after series_log / series_exp or an explicit rational specialization.

Usage:
    from tightscatter.coeffring import CoeffPolynomial, BivariateSeries, p

    f = BivariateSeries.from_terms(4, {(0, 0): 1, (1, 1): p(1, 1) * p(2, 1)})
    g = series_log(f)
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple, Union


class VarId(NamedTuple):
    side: int
    degree: int

    def __str__(self) -> str:
        if self.degree == 0:
            return "s" if self.side == 1 else "t"
        return f"p[{self.side},{self.degree}]"


VALID_SIDES = {1, 2}

Number = Union[int, Fraction]
# A monomial is a tuple of (VarId, exponent) pairs sorted by VarId, no zero
# exponents. The empty tuple is the monomial 1.
Monomial = tuple


def var_id(side: int, degree: int) -> VarId:
    """Validated VarId constructor."""
    if side not in VALID_SIDES:
        raise ValueError(
            f"Invalid variable side {side!r}. Valid: {sorted(VALID_SIDES)}"
        )
    if not isinstance(degree, int) or degree < 0:
        raise ValueError(f"Variable degree must be a nonnegative int, got {degree!r}")
    return VarId(side, degree)


def _normalize_number(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ── Monomials ──────────────────────────────────────────────────────


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


def mono_inverse(a: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in a)


def mono_weighted_degree(a: Monomial, side: int) -> int:
    """Sum of j * exponent over p[side,j] (s and t count 1 each)."""
    return sum(max(v.degree, 1) * e for v, e in a if v.side == side)


def mono_sort_key(a: Monomial) -> tuple:
    """Graded, then lexicographic on (side, degree)."""
    return (sum(e for _, e in a), a)


def mono_to_str(a: Monomial) -> str:
    parts = []
    for v, e in a:
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


# ── CoeffPolynomial ────────────────────────────────────────────────


class CoeffPolynomial:
    """Exact sparse polynomial in the p[i,j] (and s, t).

    Immutable. Terms are kept in canonical order, so equality and hashing
    are structural. Negative exponents are representable; callers that
    need them restrict them to the frozen variables p[1,l1], p[2,l2].
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _normalize_number(c)
                if c != 0:
                    clean[mono] = c
        self._terms = {k: clean[k] for k in sorted(clean, key=mono_sort_key)}
        self._hash = None

    # ── constructors ───────────────────────────────────────────────

    @classmethod
    def constant(cls, c: Number) -> CoeffPolynomial:
        return cls({(): c})

    @classmethod
    def variable(cls, side: int, degree: int) -> CoeffPolynomial:
        """p[side,degree]; p[i,0] is not a variable and gives s or t."""
        return cls({((var_id(side, degree), 1),): 1})

    @classmethod
    def monomial(
        cls, exps: Mapping[VarId, int] | Iterable[tuple[VarId, int]], c: Number = 1,
    ) -> CoeffPolynomial:
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: dict[VarId, int] = {}
        for v, e in items:
            merged[VarId(*v)] = merged.get(VarId(*v), 0) + e
        mono = tuple(sorted((v, e) for v, e in merged.items() if e != 0))
        return cls({mono: c})

    @classmethod
    def _coerce(cls, other) -> CoeffPolynomial | None:
        if isinstance(other, CoeffPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.constant(other)
        return None

    # ── queries ────────────────────────────────────────────────────

    def terms(self) -> Iterator[tuple[Monomial, Number]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial) -> Number:
        return self._terms.get(mono, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(()) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Number:
        return self._terms.get((), 0)

    def variables(self) -> set[VarId]:
        return {v for mono in self._terms for v, _ in mono}

    def weighted_degrees(self) -> set[tuple[int, int]]:
        """The (side-1, side-2) weighted degree of every term."""
        return {
            (mono_weighted_degree(m, 1), mono_weighted_degree(m, 2))
            for m in self._terms
        }

    def is_homogeneous(self, deg1: int, deg2: int) -> bool:
        return all(d == (deg1, deg2) for d in self.weighted_degrees())

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_nonnegative(self) -> bool:
        """All coefficients >= 0."""
        return all(c >= 0 for c in self._terms.values())

    def negative_exponent_vars(self) -> set[VarId]:
        return {v for mono in self._terms for v, e in mono if e < 0}

    # ── arithmetic ─────────────────────────────────────────────────

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0) + c
        return CoeffPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> CoeffPolynomial:
        return CoeffPolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return CoeffPolynomial({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, CoeffPolynomial):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if other.is_one():
            return self
        if self.is_one():
            return other
        out: dict[Monomial, Number] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return CoeffPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CoeffPolynomial:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("Only monomials can be raised to a negative power")
            (mono, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError(f"Monomial coefficient {c} is not a unit")
            # c is a unit, so c ** k == c ** -k and stays exact
            return CoeffPolynomial({mono_pow(mono, k): c ** -k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_divide_int(self, k: int) -> CoeffPolynomial:
        """Divide every coefficient by k, which must divide it exactly.

        Raises:
            RuntimeError: Some coefficient is not divisible by k.
        """
        if k == 0:
            raise ZeroDivisionError("division of a coefficient polynomial by 0")
        out = {}
        for m, c in self._terms.items():
            if isinstance(c, int):
                q, r = divmod(c, k)
                if r:
                    raise RuntimeError(f"Coefficient {c} of {self} not divisible by {k}")
                out[m] = q
            else:
                q = c / k
                out[m] = q
        return CoeffPolynomial(out)

    def divide_by_monomial(self, mono: Monomial) -> CoeffPolynomial:
        inv = mono_inverse(mono)
        return CoeffPolynomial({mono_mul(m, inv): c for m, c in self._terms.items()})

    # ── comparison ─────────────────────────────────────────────────

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"CoeffPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms.items():
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_to_str(mono))
            elif c == -1:
                parts.append("-" + mono_to_str(mono))
            else:
                parts.append(f"{c}*{mono_to_str(mono)}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = CoeffPolynomial()
ONE = CoeffPolynomial.constant(1)


def p(side: int, degree: int) -> CoeffPolynomial:
    """Shorthand for CoeffPolynomial.variable; p(i, 0) is 1."""
    if degree == 0:
        return ONE
    return CoeffPolynomial.variable(side, degree)


def param(side: int) -> CoeffPolynomial:
    """The specialization parameter s (side 1) or t (side 2)."""
    return CoeffPolynomial.variable(side, 0)


def poly_arith(lhs: CoeffPolynomial, rhs: CoeffPolynomial, op: str) -> CoeffPolynomial:
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"Unknown op '{op}'. Valid: ['add', 'mul']")


def as_coeff(value) -> CoeffPolynomial:
    if isinstance(value, CoeffPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return CoeffPolynomial.constant(value)
    raise TypeError(f"Cannot use {value!r} as a coefficient")


# ── Specialization ─────────────────────────────────────────────────


def specialize(
    poly: CoeffPolynomial, assignment: Mapping[VarId, CoeffPolynomial | Number],
) -> CoeffPolynomial:
    """Ring homomorphism p[i,j] -> assignment[p[i,j]].

    Raises:
        ValueError: A variable occurring in poly has no assignment.
    """
    missing = poly.variables() - set(assignment)
    if missing:
        names = sorted(str(v) for v in missing)
        raise ValueError(f"specialize: no assignment for {names}")

    images = {v: as_coeff(val) for v, val in assignment.items()}
    cache: dict[tuple[VarId, int], CoeffPolynomial] = {}

    def _power(v: VarId, e: int) -> CoeffPolynomial:
        key = (v, e)
        if key not in cache:
            cache[key] = images[v] ** e
        return cache[key]

    total = ZERO
    for mono, c in poly.terms():
        term = CoeffPolynomial.constant(c)
        for v, e in mono:
            term = term * _power(v, e)
        total = total + term
    return total


def binomial_assignment(l1: int, l2: int, max_degree: int | None = None) -> dict:
    """p[1,j] -> C(l1,j) s^j and p[2,j] -> C(l2,j) t^j.

    This is the specialization P1 = (1+sx)^l1, P2 = (1+ty)^l2. Degrees past
    l_i map to 0. The parameters s and t map to themselves.
    """
    top = max(l1, l2) if max_degree is None else max_degree
    out: dict[VarId, CoeffPolynomial] = {VarId(1, 0): param(1), VarId(2, 0): param(2)}
    for side, ell in ((1, l1), (2, l2)):
        for j in range(1, top + 1):
            out[VarId(side, j)] = comb(ell, j) * param(side) ** j
    return out


# ── BivariateSeries ───────────────────────────────────────────────


def in_ideal(a: int, b: int, order: int) -> bool:
    """True when x^a y^b lies past the truncation order."""
    return a >= 0 and b >= 0 and a + b > order


class BivariateSeries:
    """Series in x, y with CoeffPolynomial coefficients, truncated at order K.

    A term x^a y^b with a, b >= 0 is kept only when a + b <= K. Terms with
    a negative exponent are never dropped.
    """

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms: Mapping[tuple[int, int], CoeffPolynomial] | None = None):
        if order < 0:
            raise ValueError(f"Series order must be >= 0, got {order}")
        self.order = order
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                c = as_coeff(c)
                if c.is_zero() or in_ideal(a, b, order):
                    continue
                clean[(a, b)] = c
        self._terms = {k: clean[k] for k in sorted(clean)}

    @classmethod
    def from_terms(cls, order: int, terms: Mapping[tuple[int, int], object]) -> BivariateSeries:
        return cls(order, {k: as_coeff(v) for k, v in terms.items()})

    @classmethod
    def one(cls, order: int) -> BivariateSeries:
        return cls(order, {(0, 0): ONE})

    @classmethod
    def monomial(cls, order: int, a: int, b: int, c=1) -> BivariateSeries:
        return cls(order, {(a, b): as_coeff(c)})

    # ── queries ────────────────────────────────────────────────────

    def terms(self) -> Iterator[tuple[tuple[int, int], CoeffPolynomial]]:
        return iter(self._terms.items())

    def coefficient(self, a: int, b: int) -> CoeffPolynomial:
        return self._terms.get((a, b), ZERO)

    def constant_term(self) -> CoeffPolynomial:
        return self._terms.get((0, 0), ZERO)

    def exponents(self) -> list[tuple[int, int]]:
        return list(self._terms)

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self.constant_term().is_one()

    def is_zero(self) -> bool:
        return not self._terms

    def degree_part(self, d: int) -> dict[tuple[int, int], CoeffPolynomial]:
        return {k: c for k, c in self._terms.items() if k[0] + k[1] == d}

    def low_degree(self) -> int | None:
        """Smallest a + b over non-constant terms, or None."""
        degs = [a + b for (a, b) in self._terms if (a, b) != (0, 0)]
        return min(degs) if degs else None

    def truncate(self, order: int) -> BivariateSeries:
        return BivariateSeries(order, self._terms)

    def map_coefficients(self, fn) -> BivariateSeries:
        return BivariateSeries(self.order, {k: fn(c) for k, c in self._terms.items()})

    # ── arithmetic ─────────────────────────────────────────────────

    def _check_order(self, other: BivariateSeries) -> None:
        if self.order != other.order:
            raise ValueError(
                f"Mismatched series order bounds: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        self._check_order(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return BivariateSeries(self.order, out)

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(self.order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> BivariateSeries:
        c = as_coeff(c)
        return BivariateSeries(self.order, {k: v * c for k, v in self._terms.items()})

    def shift(self, a: int, b: int) -> BivariateSeries:
        """Multiply by x^a y^b."""
        return BivariateSeries(
            self.order, {(i + a, j + b): c for (i, j), c in self._terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPolynomial)):
            return self.scale(other)
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return series_mul(self, other)

    def __pow__(self, k: int) -> BivariateSeries:
        if k < 0:
            return self.inverse() ** (-k)
        result = BivariateSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = series_mul(result, base)
            k >>= 1
            if k:
                base = series_mul(base, base)
        return result

    def inverse(self) -> BivariateSeries:
        """Inverse of a series 1 + g with g in the truncation ideal's complement.

        Raises:
            ValueError: Constant term is not 1 or g has Laurent terms.
        """
        g = self - BivariateSeries.one(self.order)
        if not self.constant_term().is_one():
            raise ValueError(f"Cannot invert series with constant term {self.constant_term()}")
        if any(a < 0 or b < 0 for a, b in g.exponents()):
            raise ValueError("Cannot invert a series with Laurent terms")
        result = BivariateSeries.one(self.order)
        power = BivariateSeries.one(self.order)
        neg_g = -g
        for _ in range(self.order):
            power = series_mul(power, neg_g)
            if power.is_zero():
                break
            result = result + power
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.order, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"BivariateSeries(order={self.order}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self._terms.items():
            xy = "".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in (("x", a), ("y", b)) if e != 0
            )
            coeff = str(c)
            if not xy:
                parts.append(coeff)
            elif c.is_one():
                parts.append(xy)
            else:
                parts.append(f"({coeff})*{xy}")
        return " + ".join(parts)


def series_mul(lhs: BivariateSeries, rhs: BivariateSeries) -> BivariateSeries:
    """Product modulo the order-(K+1) ideal.

    Raises:
        ValueError: Order bounds differ.
    """
    lhs._check_order(rhs)
    order = lhs.order
    out: dict[tuple[int, int], CoeffPolynomial] = {}
    for (a1, b1), c1 in lhs._terms.items():
        for (a2, b2), c2 in rhs._terms.items():
            a, b = a1 + a2, b1 + b2
            if in_ideal(a, b, order):
                continue
            prod = c1 * c2
            out[(a, b)] = out[(a, b)] + prod if (a, b) in out else prod
    return BivariateSeries(order, out)


def series_log(s: BivariateSeries) -> BivariateSeries:
    """Formal log via sum_{r>=1} (-1)^(r+1) (s-1)^r / r, truncated at K.

    Raises:
        ValueError: Constant term is not 1.
    """
    if not s.constant_term().is_one():
        raise ValueError(f"series_log needs constant term 1, got {s.constant_term()}")
    g = s - BivariateSeries.one(s.order)
    if any(a < 0 or b < 0 for a, b in g.exponents()):
        raise ValueError("series_log is only defined for power series")
    result = BivariateSeries(s.order)
    power = BivariateSeries.one(s.order)
    for r in range(1, s.order + 1):
        power = series_mul(power, g)
        if power.is_zero():
            break
        sign = 1 if r % 2 else -1
        result = result + power.scale(Fraction(sign, r))
    return result


def series_exp(s: BivariateSeries) -> BivariateSeries:
    """Formal exp of a series with zero constant term."""
    if not s.constant_term().is_zero():
        raise ValueError("series_exp needs zero constant term")
    result = BivariateSeries.one(s.order)
    power = BivariateSeries.one(s.order)
    for r in range(1, s.order + 1):
        power = series_mul(power, s).scale(Fraction(1, r))
        if power.is_zero():
            break
        result = result + power
    return result


def specialize_series(
    s: BivariateSeries, assignment: Mapping[VarId, CoeffPolynomial | Number],
) -> BivariateSeries:
    return s.map_coefficients(lambda c: specialize(c, assignment))


# ── Univariate series in one wall monomial ─────────────────────────
# Wall functions live in a single monomial t = x^a y^b. Their powers are
# computed as dense lists indexed by k, which is much cheaper than general
# bivariate products.


def univariate_mul(f: list, g: list, kmax: int) -> list:
    out = [ZERO] * (kmax + 1)
    for i, fi in enumerate(f[: kmax + 1]):
        if fi.is_zero():
            continue
        for j, gj in enumerate(g[: kmax + 1 - i]):
            if gj.is_zero():
                continue
            out[i + j] = out[i + j] + fi * gj
    return out


def univariate_pow(f: list, e: int, kmax: int) -> list:
    """f^e truncated at t^kmax for f with f[0] = 1; e may be negative."""
    if e < 0:
        f = univariate_inverse(f, kmax)
        e = -e
    result = [ONE] + [ZERO] * kmax
    base = list(f[: kmax + 1]) + [ZERO] * max(0, kmax + 1 - len(f))
    while e:
        if e & 1:
            result = univariate_mul(result, base, kmax)
        e >>= 1
        if e:
            base = univariate_mul(base, base, kmax)
    return result


def univariate_inverse(f: list, kmax: int) -> list:
    if not f or not f[0].is_one():
        raise ValueError("Wall function must have constant term 1")
    inv = [ONE] + [ZERO] * kmax
    for k in range(1, kmax + 1):
        acc = ZERO
        for i in range(1, min(k, len(f) - 1) + 1):
            if not f[i].is_zero():
                acc = acc + f[i] * inv[k - i]
        inv[k] = -acc
    return inv


# ── JSON forms ─────────────────────────────────────────────────────


def number_to_json(c: Number) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def number_from_json(text: str) -> Number:
    if "/" in text:
        return _normalize_number(Fraction(text))
    return int(text)


def poly_to_json(poly: CoeffPolynomial) -> list[dict]:
    """Deterministic JSON form: terms in canonical order, numbers as strings."""
    return [
        {
            "monomial": {str(v): str(e) for v, e in mono},
            "coeff": number_to_json(c),
        }
        for mono, c in poly.terms()
    ]


def _var_from_name(name: str) -> VarId:
    if name == "s":
        return VarId(1, 0)
    if name == "t":
        return VarId(2, 0)
    inner = name.removeprefix("p[").removesuffix("]")
    side, degree = (int(x) for x in inner.split(","))
    return var_id(side, degree)


def poly_from_json(data: list[dict]) -> CoeffPolynomial:
    total = ZERO
    for term in data:
        exps = [(_var_from_name(n), int(e)) for n, e in term["monomial"].items()]
        total = total + CoeffPolynomial.monomial(exps, number_from_json(term["coeff"]))
    return total


def series_to_json(s: BivariateSeries) -> dict:
    return {
        "order": str(s.order),
        "terms": [
            {"exponent": [str(a), str(b)], "coeff": poly_to_json(c)}
            for (a, b), c in s.terms()
        ],
    }


def series_from_json(data: dict) -> BivariateSeries:
    terms = {
        (int(t["exponent"][0]), int(t["exponent"][1])): poly_from_json(t["coeff"])
        for t in data["terms"]
    }
    return BivariateSeries(int(data["order"]), terms)


