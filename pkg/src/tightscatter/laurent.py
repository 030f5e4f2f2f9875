"""tightscatter.laurent: Laurent polynomials in the cluster variables x1, x2.

Coefficients are CoeffPolynomials, so p[1,l1] and p[2,l2] may appear with
negative exponents after normalization. Division is exact: the quotient
is built by peeling leading terms under a lex order on the combined
exponent vector (x1, x2, then the p-variables), which is compatible with
multiplication on the whole exponent group.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterator, Mapping

from .coeffring import (
    ONE,
    ZERO,
    CoeffPolynomial,
    Monomial,
    as_coeff,
    mono_inverse,
    mono_mul,
    poly_to_json,
)

MAX_DIVISION_STEPS = 200_000

Exponent = tuple[int, int]


class LaurentPolynomial:
    """Immutable sparse map (d1, d2) -> CoeffPolynomial for x1^d1 x2^d2."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, CoeffPolynomial] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_coeff(c)
                if not c.is_zero():
                    clean[(int(k[0]), int(k[1]))] = c
        self._terms = {k: clean[k] for k in sorted(clean)}

    @classmethod
    def monomial(cls, d1: int, d2: int, c=1) -> LaurentPolynomial:
        return cls({(d1, d2): as_coeff(c)})

    @classmethod
    def one(cls) -> LaurentPolynomial:
        return cls({(0, 0): ONE})

    @classmethod
    def univariate(cls, coeffs: list[CoeffPolynomial], var: int, power: int = 1) -> LaurentPolynomial:
        """sum_j coeffs[j] * x_var^(power*j) for var in {1, 2}."""
        terms = {}
        for j, c in enumerate(coeffs):
            key = (power * j, 0) if var == 1 else (0, power * j)
            terms[key] = c
        return cls(terms)

    # ── queries ────────────────────────────────────────────────────

    def terms(self) -> Iterator[tuple[Exponent, CoeffPolynomial]]:
        return iter(self._terms.items())

    def coefficient(self, d1: int, d2: int) -> CoeffPolynomial:
        return self._terms.get((d1, d2), ZERO)

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_nonnegative(self) -> bool:
        return all(c.is_nonnegative() for c in self._terms.values())

    def pointed_at(self) -> Exponent | None:
        """The componentwise-minimal exponent of the support, if there is one."""
        if not self._terms:
            return None
        lo = (min(k[0] for k in self._terms), min(k[1] for k in self._terms))
        return lo if lo in self._terms else None

    def lowest_total_degree_terms(self) -> dict[Exponent, CoeffPolynomial]:
        low = min(a + b for a, b in self._terms)
        return {k: c for k, c in self._terms.items() if k[0] + k[1] == low}

    def map_coefficients(self, fn) -> LaurentPolynomial:
        return LaurentPolynomial({k: fn(c) for k, c in self._terms.items()})

    # ── arithmetic ─────────────────────────────────────────────────

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPolynomial(out)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPolynomial)):
            c = as_coeff(other)
            return LaurentPolynomial({k: v * c for k, v in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        out: dict[Exponent, CoeffPolynomial] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                prod = c1 * c2
                out[k] = out[k] + prod if k in out else prod
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPolynomial:
        if e < 0:
            raise ValueError("Negative powers of Laurent polynomials are not supported")
        result = LaurentPolynomial.one()
        for _ in range(e):
            result = result * self
        return result

    def shift(self, d1: int, d2: int) -> LaurentPolynomial:
        return LaurentPolynomial({(a + d1, b + d2): c for (a, b), c in self._terms.items()})

    def exact_divide(self, other: LaurentPolynomial) -> LaurentPolynomial:
        """Exact quotient self / other.

        Raises:
            ZeroDivisionError: other is zero.
            RuntimeError: The quotient is not a Laurent polynomial with
                integer coefficients.
        """
        if other.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        lead_exp, lead_mono, lead_c = _leading(other)
        inv_mono = mono_inverse(lead_mono)
        remainder = _flatten(self)
        divisor = _flatten(other)
        quotient: dict[Exponent, CoeffPolynomial] = {}
        steps = 0
        while remainder:
            steps += 1
            if steps > MAX_DIVISION_STEPS:
                raise RuntimeError("Laurent division did not terminate: quotient is not Laurent")
            key = max(remainder, key=_flat_key)
            (d1, d2, mono), c = key, remainder[key]
            if not isinstance(c, int) or c % lead_c:
                raise RuntimeError(
                    f"Laurent division is not exact: coefficient {c} not divisible by {lead_c}"
                )
            q_exp = (d1 - lead_exp[0], d2 - lead_exp[1])
            q_mono = mono_mul(mono, inv_mono)
            q_c = c // lead_c
            prev = quotient.get(q_exp, ZERO)
            quotient[q_exp] = prev + CoeffPolynomial({q_mono: q_c})
            for (e1, e2, m), dc in divisor.items():
                k = (e1 + q_exp[0], e2 + q_exp[1], mono_mul(m, q_mono))
                val = remainder.get(k, 0) - dc * q_c
                if val:
                    remainder[k] = val
                else:
                    remainder.pop(k, None)
        return LaurentPolynomial(quotient)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self._terms.items():
            xs = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in (("x1", a), ("x2", b)) if e != 0
            )
            if not xs:
                parts.append(str(c))
            elif c.is_one():
                parts.append(xs)
            else:
                parts.append(f"({c})*{xs}")
        return " + ".join(parts)


# ── Flat term representation for division ──────────────────────────


def _flatten(f: LaurentPolynomial) -> dict[tuple, int]:
    out = {}
    for (a, b), c in f.terms():
        for mono, n in c.terms():
            if not isinstance(n, int):
                raise RuntimeError("Laurent division needs integer coefficients")
            out[(a, b, mono)] = n
    return out


def _compare_mono(a: Monomial, b: Monomial) -> int:
    ea, eb = dict(a), dict(b)
    for v in sorted(set(ea) | set(eb)):
        x, y = ea.get(v, 0), eb.get(v, 0)
        if x != y:
            return 1 if x > y else -1
    return 0


@functools.total_ordering
class _FlatKey:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        a, b = self.k, other.k
        if (a[0], a[1]) != (b[0], b[1]):
            return (a[0], a[1]) < (b[0], b[1])
        return _compare_mono(a[2], b[2]) < 0

    def __eq__(self, other):
        return self.k == other.k


def _flat_key(k) -> _FlatKey:
    return _FlatKey(k)


def _leading(f: LaurentPolynomial) -> tuple[Exponent, Monomial, int]:
    flat = _flatten(f)
    key = max(flat, key=_flat_key)
    return (key[0], key[1]), key[2], flat[key]


def laurent_to_dict(z: LaurentPolynomial) -> dict:
    """Sorted monomial list; pointed_at is null when there is no pointed monomial."""
    pointed = z.pointed_at()
    return {
        "terms": [
            {"exponent": [str(a), str(b)], "coeff": poly_to_json(c)}
            for (a, b), c in z.terms()
        ],
        "pointed_at": None if pointed is None else [str(pointed[0]), str(pointed[1])],
    }
