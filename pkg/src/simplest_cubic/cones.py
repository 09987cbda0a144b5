"""The six-cone Shintani domain for the totally positive units of K_a.

With eps1 = rho^2 and eps2 = (rho'')^{-2} (so eps1/eps2 = (rho')^{-2}) the
open simplicial cones

    C(1), C(1, rho^2), C(1, (rho'')^{-2}), C(1, (rho')^{-2}),
    C(1, rho^2, (rho'')^{-2}), C(1, rho^2, (rho')^{-2})

form a fundamental domain for multiplication by totally positive units.
Cones live in tau-coordinates (the basis (1, rho, rho^2)); their generator
vectors are

    tau(rho^2)         = (0, 0, 1)
    tau((rho'')^{-2})  = (1, 2, 1)
    tau((rho')^{-2})   = (-a-1, -(a^2+3a+3), a+2).

Cones are open: a point belongs to a cone only when every coordinate is
strictly positive, and all tests are exact rational arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import (
    Element,
    FieldParams,
    PrecisionError,
    RHO,
    conjugate_intervals,
    conjugates_float,
    embeddings,
    mul,
    norm,
    power,
    rho_prime,
)

Vec = tuple[int, int, int]


class ConeId(enum.Enum):
    C1 = "C(1)"
    C1_R2 = "C(1,rho^2)"
    C1_R2PPINV = "C(1,rho''^-2)"
    C1_R1PINV = "C(1,rho'^-2)"
    C1_R2_R2PPINV = "C(1,rho^2,rho''^-2)"
    C1_R2_R1PINV = "C(1,rho^2,rho'^-2)"


@dataclass(frozen=True)
class SimplicialCone:
    cone_id: ConeId
    generators: tuple[Vec, ...]


ConeCoordinates = tuple[Fraction, ...]


def generator_vectors(p: FieldParams) -> dict[str, Vec]:
    a = p.a
    return {
        "one": (1, 0, 0),
        "rho2": (0, 0, 1),
        "rhopp_inv2": (1, 2, 1),
        "rhop_inv2": (-a - 1, -(a * a + 3 * a + 3), a + 2),
    }


@lru_cache(maxsize=None)
def fundamental_domain(p: FieldParams) -> tuple[SimplicialCone, ...]:
    """The six cones, in the order of :class:`ConeId`."""
    g = generator_vectors(p)
    one, r2, rpp, rp = g["one"], g["rho2"], g["rhopp_inv2"], g["rhop_inv2"]
    return (
        SimplicialCone(ConeId.C1, (one,)),
        SimplicialCone(ConeId.C1_R2, (one, r2)),
        SimplicialCone(ConeId.C1_R2PPINV, (one, rpp)),
        SimplicialCone(ConeId.C1_R1PINV, (one, rp)),
        SimplicialCone(ConeId.C1_R2_R2PPINV, (one, r2, rpp)),
        SimplicialCone(ConeId.C1_R2_R1PINV, (one, r2, rp)),
    )


def _solve(gens: tuple[Vec, ...], v: Vec) -> list[Fraction] | None:
    """Exact solution t of sum t_k gens[k] = v, or None if v is off the span."""
    e = len(gens)
    # augmented 3 x (e+1) system, columns are generators
    rows = [[Fraction(gens[k][i]) for k in range(e)] + [Fraction(v[i])] for i in range(3)]
    piv_row = 0
    pivots = []
    for col in range(e):
        r = next((i for i in range(piv_row, 3) if rows[i][col] != 0), None)
        if r is None:
            raise ValueError("cone generators are linearly dependent")
        rows[piv_row], rows[r] = rows[r], rows[piv_row]
        pv = rows[piv_row][col]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for i in range(3):
            if i != piv_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[piv_row])]
        pivots.append(piv_row)
        piv_row += 1
    # leftover rows must be consistent
    for i in range(piv_row, 3):
        if rows[i][e] != 0:
            return None
    return [rows[i][e] for i in pivots]


def membership(c: SimplicialCone, v: Vec) -> ConeCoordinates | None:
    t = _solve(c.generators, tuple(v))
    if t is None or any(x <= 0 for x in t):
        return None
    return tuple(t)


def classify(p: FieldParams, v: Vec) -> ConeId | None:
    """The unique cone of the domain containing v, or None."""
    hits = [c.cone_id for c in fundamental_domain(p) if membership(c, v) is not None]
    if len(hits) > 1:
        raise AssertionError(f"cones overlap at {v}: {hits}")
    return hits[0] if hits else None


# -- totally positive units ----------------------------------------------------


@lru_cache(maxsize=None)
def _unit_squares(p: FieldParams) -> tuple[Element, Element]:
    return mul(RHO, RHO, p), power(rho_prime(p), 2, p)


def tp_unit(p: FieldParams, i: int, j: int) -> Element:
    """rho^(2i) * (rho')^(2j)."""
    r2, rp2 = _unit_squares(p)
    return mul(power(r2, i, p), power(rp2, j, p), p)


@lru_cache(maxsize=None)
def _log_basis(p: FieldParams) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    r2, rp2 = _unit_squares(p)
    return (
        tuple(math.log(abs(c)) for c in conjugates_float(r2, p)),
        tuple(math.log(abs(c)) for c in conjugates_float(rp2, p)),
    )


def _frac_log(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def conjugate_logs(p: FieldParams, x: Element) -> tuple[float, float, float]:
    """log|sigma_i(x)| for x != 0, robust to cancellation.

    Plain float evaluation of m + n r + o r^2 loses every digit once the
    coordinates are large, so the conjugates come from certified
    enclosures, refined until each has relative width below 2^-30.
    """
    bits = 64
    while bits <= 8192:
        out = []
        for iv in conjugate_intervals(x, embeddings(p, bits)):
            lo, hi = (iv.lo, iv.hi) if iv.lo > 0 else (-iv.hi, -iv.lo)
            if lo <= 0 or (hi - lo) * (1 << 30) > lo:
                break
            out.append(_frac_log((lo + hi) / 2))
        else:
            return tuple(out)
        bits *= 2
    raise PrecisionError(f"cannot separate the conjugates of {x} from zero")


def _log_center(p: FieldParams, x: Element) -> tuple[float, float]:
    """Real (s, t) with log|x| + s log|rho^2| + t log|rho'^2| balanced."""
    logs = conjugate_logs(p, x)
    mean = sum(logs) / 3
    target = [mean - l for l in logs]
    u, v = _log_basis(p)
    # least squares on the trace-zero plane (2x2 normal equations)
    uu = sum(a * a for a in u)
    uv = sum(a * b for a, b in zip(u, v))
    vv = sum(b * b for b in v)
    ut = sum(a * b for a, b in zip(u, target))
    vt = sum(a * b for a, b in zip(v, target))
    det = uu * vv - uv * uv
    return (ut * vv - vt * uv) / det, (vt * uu - ut * uv) / det


SEARCH_RADIUS = 3


class ReductionError(RuntimeError):
    pass


def reduce_to_domain(x: Element, p: FieldParams) -> tuple[int, int, Element]:
    """Find the unique (i, j) with rho^(2i) (rho')^(2j) x in the domain.

    Floating-point logarithms only pick the center of the search window;
    every candidate in the window is classified exactly and exactly one
    must land in the domain.
    """
    if norm(x, p) <= 0:
        raise ValueError(f"{x} is not totally positive")
    s, t = _log_center(p, x)
    ci, cj = round(s), round(t)
    found = []
    for i in range(ci - SEARCH_RADIUS, ci + SEARCH_RADIUS + 1):
        for j in range(cj - SEARCH_RADIUS, cj + SEARCH_RADIUS + 1):
            y = mul(tp_unit(p, i, j), x, p)
            if classify(p, y.tau()) is not None:
                found.append((i, j, y))
    if len(found) != 1:
        raise ReductionError(
            f"{len(found)} associates of {x} in the domain within the search window"
        )
    return found[0]


def canonical_generator(x: Element, p: FieldParams) -> Element:
    return reduce_to_domain(x, p)[2]


def generator_lower_bounds(p: FieldParams, v: Vec) -> tuple[float, float, float]:
    """Float lower bounds for the three conjugates of a cone generator.

    Taken from the certified root enclosures and rounded down by a relative
    1e-12, so they stay below the true (positive) values.
    """
    ivs = conjugate_intervals(Element(*v), embeddings(p))
    out = []
    for iv in ivs:
        if iv.lo <= 0:
            raise ValueError(f"generator {v} is not certified totally positive")
        out.append(float(iv.lo) * (1 - 1e-12))
    return tuple(out)
