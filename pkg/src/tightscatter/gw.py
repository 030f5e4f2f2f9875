"""tightscatter.gw: relative Gromov-Witten numbers from ray functions.

Specializes the initial functions to P1 = (1+s*x)^l1, P2 = (1+t*y)^l2,
takes the formal log of the ray function f on R_{<=0}(a,b), and reads
N_k = [s^(ka) t^(kb) x^(ka) y^(kb)] log f / k.

Only the partition-aggregated numbers are reported.

Usage:
    table = gw_extract(1, 1, 1, 1, 2)      # N_1 = 1, N_2 = -1/4
    tables = gw_sweep(2, 2, 8)
    write_gw_csv(tables, "gw.csv")
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from .coeffring import (
    CoeffPolynomial,
    Number,
    VarId,
    binomial_assignment,
    number_to_json,
    series_log,
)
from .scattering import (
    RAY,
    SCHEMA_VERSION,
    InitialData,
    Wall,
    coprime_directions,
    ks_complete,
    wall_function_tight,
)

TIGHT = "tight"
ORACLE = "oracle"
VALID_GW_METHODS = {TIGHT, ORACLE}

CSV_COLUMNS = ["l1", "l2", "a", "b", "k", "N"]


@dataclass(frozen=True)
class GWTable:
    l1: int
    l2: int
    direction: tuple[int, int]
    rows: dict[int, Number]

    def __getitem__(self, k: int) -> Number:
        return self.rows[k]


def binomial_data(l1: int, l2: int) -> InitialData:
    """Initial lines (1+s*x)^l1 and (1+t*y)^l2."""
    return InitialData.symbolic(l1, l2).specialize(binomial_assignment(l1, l2))


def _check_direction(a: int, b: int) -> None:
    if a <= 0 or b <= 0 or gcd(a, b) != 1:
        raise ValueError(f"GW extraction needs coprime positive (a,b), got ({a},{b})")


def _st_coefficient(c: CoeffPolynomial, ka: int, kb: int) -> Number:
    """The scalar of c = N * s^ka t^kb; c must be homogeneous of that form."""
    if c.is_zero():
        return 0
    target = tuple(sorted(
        (v, e) for v, e in ((VarId(1, 0), ka), (VarId(2, 0), kb)) if e
    ))
    (mono, value), *rest = c.terms()
    if rest or mono != target:
        raise RuntimeError(f"Log coefficient {c} is not a multiple of s^{ka} t^{kb}")
    return value


def table_from_wall(l1: int, l2: int, wall: Wall, kmax: int) -> GWTable:
    a, b = wall.direction
    order = kmax * (a + b)
    log_f = series_log(wall.function(order))
    rows = {}
    for k in range(1, kmax + 1):
        value = _st_coefficient(log_f.coefficient(k * a, k * b), k * a, k * b)
        n_k = Fraction(value) / k
        rows[k] = n_k.numerator if n_k.denominator == 1 else n_k
    return GWTable(l1, l2, (a, b), rows)


def gw_extract(
    l1: int, l2: int, a: int, b: int, kmax: int, method: str = TIGHT, workers: int = 1,
) -> GWTable:
    """N_1..N_kmax for the ray direction (a,b).

    Args:
        l1, l2: Exponents of the binomial initial functions.
        a, b: Coprime positive ray direction.
        kmax: Number of multiples k to report.
        method: 'tight' sums tight gradings, 'oracle' runs ks_complete.
        workers: Parallel worker processes for the tight enumeration.

    Raises:
        ValueError: Bad direction, kmax or method.
    """
    _check_direction(a, b)
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    if method not in VALID_GW_METHODS:
        raise ValueError(f"Invalid method '{method}'. Valid: {sorted(VALID_GW_METHODS)}")
    data = binomial_data(l1, l2)
    order = kmax * (a + b)
    if method == TIGHT:
        wall = wall_function_tight(a, b, data, order, workers=workers)
    else:
        wall = ks_complete(data, order).ray(a, b) or Wall((a, b), RAY, (1,))
    return table_from_wall(l1, l2, wall, kmax)


def gw_sweep(
    l1: int, l2: int, order: int, method: str = ORACLE, workers: int = 1,
) -> list[GWTable]:
    """Tables for every coprime (a,b) with a + b <= order, by slope."""
    if method not in VALID_GW_METHODS:
        raise ValueError(f"Invalid method '{method}'. Valid: {sorted(VALID_GW_METHODS)}")
    directions = coprime_directions(order)
    if method == TIGHT:
        return [
            gw_extract(l1, l2, a, b, order // (a + b), TIGHT, workers)
            for a, b in directions
        ]
    diagram = ks_complete(binomial_data(l1, l2), order)
    tables = []
    for a, b in directions:
        wall = diagram.ray(a, b) or Wall((a, b), RAY, (1,))
        tables.append(table_from_wall(l1, l2, wall, order // (a + b)))
    return tables


# ── Output ─────────────────────────────────────────────────────────


def table_to_dict(table: GWTable) -> dict:
    return {
        "l": [str(table.l1), str(table.l2)],
        "direction": [str(x) for x in table.direction],
        "N": {str(k): number_to_json(v) for k, v in sorted(table.rows.items())},
    }


def tables_to_dict(tables: list[GWTable]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tables": [table_to_dict(t) for t in tables]}


def tables_to_csv(tables: list[GWTable]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for table in tables:
        a, b = table.direction
        for k, value in sorted(table.rows.items()):
            writer.writerow([table.l1, table.l2, a, b, k, number_to_json(value)])
    return buf.getvalue()


def write_gw_csv(tables: list[GWTable], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(tables_to_csv(tables))
    return path
