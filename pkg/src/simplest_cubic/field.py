"""Exact arithmetic in the simplest cubic field K_a = Q(rho).

rho is the largest root of f_a(X) = X^3 - a X^2 - (a+3) X - 1 and every
element of Z[rho] is stored as its coordinate triple (m, n, o) in the
basis (1, rho, rho^2).  All arithmetic is on Python integers, so nothing
overflows; the only non-exact objects here are the certified rational
enclosures of the three real roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

MIN_A = 7


class PrecisionError(ArithmeticError):
    """Raised when an enclosure cannot be certified at the requested precision."""


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldParams:
    a: int
    disc_root: int
    cone_den: int
    monogenic: bool

    @property
    def tr_rho2(self) -> int:
        return self.a * self.a + 2 * self.a + 6


@lru_cache(maxsize=None)
def make_params(a: int) -> FieldParams:
    """Field constants for K_a.

    ``disc_root`` is a^2+3a+9 (the square root of disc f_a) and ``cone_den``
    is a^2+3a+3.  ``monogenic`` records whether disc_root is squarefree,
    which is the condition under which Z[rho] is the full ring of integers.
    """
    a = int(a)
    if a < MIN_A:
        raise ValueError(f"a must be >= {MIN_A}, got {a}")
    disc_root = a * a + 3 * a + 9
    return FieldParams(a, disc_root, disc_root - 6, _is_squarefree(disc_root))


@dataclass(frozen=True, slots=True)
class Element:
    m: int
    n: int
    o: int

    def __add__(self, other: Element) -> Element:
        return Element(self.m + other.m, self.n + other.n, self.o + other.o)

    def __sub__(self, other: Element) -> Element:
        return Element(self.m - other.m, self.n - other.n, self.o - other.o)

    def __neg__(self) -> Element:
        return Element(-self.m, -self.n, -self.o)

    def scale(self, k: int) -> Element:
        return Element(k * self.m, k * self.n, k * self.o)

    def tau(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.o)


ONE = Element(1, 0, 0)
RHO = Element(0, 1, 0)
RHO2 = Element(0, 0, 1)


def mul(x: Element, y: Element, p: FieldParams) -> Element:
    a = p.a
    c0 = x.m * y.m
    c1 = x.m * y.n + x.n * y.m
    c2 = x.m * y.o + x.n * y.n + x.o * y.m
    c3 = x.n * y.o + x.o * y.n
    c4 = x.o * y.o
    # rho^3 = a rho^2 + (a+3) rho + 1
    # rho^4 = (a^2+a+3) rho^2 + (a^2+3a+1) rho + a
    return Element(
        c0 + c3 + a * c4,
        c1 + (a + 3) * c3 + (a * a + 3 * a + 1) * c4,
        c2 + a * c3 + (a * a + a + 3) * c4,
    )


def power(x: Element, k: int, p: FieldParams) -> Element:
    """x**k for k >= 0; negative k requires x to be a unit."""
    if k < 0:
        return power(unit_inverse(x, p), -k, p)
    result = ONE
    base = x
    while k:
        if k & 1:
            result = mul(result, base, p)
        base = mul(base, base, p)
        k >>= 1
    return result


def mult_matrix(x: Element, p: FieldParams) -> list[list[int]]:
    """Rows are tau(x), tau(x*rho), tau(x*rho^2)."""
    r1 = mul(x, RHO, p)
    r2 = mul(r1, RHO, p)
    return [list(x.tau()), list(r1.tau()), list(r2.tau())]


def det3(mat: list[list[int]]) -> int:
    (a, b, c), (d, e, f), (g, h, i) = mat
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def norm_mno(a: int, m: int, n: int, o: int) -> int:
    """Closed-form cubic norm form of m + n rho + o rho^2."""
    return (
        m * m * (m + a * n + (a * a + 2 * a + 6) * o)
        - (a + 3) * m * n * n
        - (a * a + 3 * a + 3) * m * n * o
        + (a * a + 4 * a + 9) * m * o * o
        + n * n * (n + a * o)
        - (a + 3) * n * o * o
        + o * o * o
    )


def norm(x: Element, p: FieldParams) -> int:
    return norm_mno(p.a, x.m, x.n, x.o)


def trace(x: Element, p: FieldParams) -> int:
    return 3 * x.m + p.a * x.n + p.tr_rho2 * x.o


def trace_and_symmetric(x: Element, p: FieldParams) -> tuple[int, int, int]:
    """Elementary symmetric functions (e1, e2, e3) of the conjugates of x."""
    e1 = trace(x, p)
    e2 = (e1 * e1 - trace(mul(x, x, p), p)) // 2
    return e1, e2, norm(x, p)


def is_totally_positive(x: Element, p: FieldParams) -> bool:
    # All conjugates are real, so they are all positive iff the
    # characteristic polynomial has alternating signs.
    e1, e2, e3 = trace_and_symmetric(x, p)
    return e1 > 0 and e2 > 0 and e3 > 0


def content(x: Element) -> int:
    return math.gcd(math.gcd(abs(x.m), abs(x.n)), abs(x.o))


def unit_inverse(x: Element, p: FieldParams) -> Element:
    """Inverse of a unit via the adjugate of its multiplication matrix."""
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = mult_matrix(x, p)
    d = det3([[a11, a12, a13], [a21, a22, a23], [a31, a32, a33]])
    if d not in (1, -1):
        raise ValueError(f"{x} is not a unit (norm {d})")
    # 1 = sum_j c_j * row_j where c is the first row of the inverse matrix
    c1 = (a22 * a33 - a23 * a32) * d
    c2 = -(a12 * a33 - a13 * a32) * d
    c3 = (a12 * a23 - a13 * a22) * d
    # rows are x, x*rho, x*rho^2, so x^{-1} = c1 + c2 rho + c3 rho^2
    return Element(c1, c2, c3)


# -- Galois action -------------------------------------------------------


@lru_cache(maxsize=None)
def _sigma_rho(p: FieldParams) -> tuple[Element, Element]:
    inv = unit_inverse(Element(1, 1, 0), p)
    u = -inv
    return u, mul(u, u, p)


def galois_apply(x: Element, p: FieldParams) -> Element:
    """The automorphism rho -> -1/(1+rho).

    Numerically -1/(1+rho) is the smallest root rho'' (it lies in
    (-1/(a+2), -1/(a+3))), so under the real embedding rho -> rho this map
    sends the embedding values (x, x', x'') to (x'', x, x').
    """
    u, u2 = _sigma_rho(p)
    return ONE.scale(x.m) + u.scale(x.n) + u2.scale(x.o)


def galois_apply2(x: Element, p: FieldParams) -> Element:
    return galois_apply(galois_apply(x, p), p)


def rho_prime(p: FieldParams) -> Element:
    """The conjugate rho' written in the basis (1, rho, rho^2)."""
    return galois_apply2(RHO, p)


def rho_double_prime(p: FieldParams) -> Element:
    return galois_apply(RHO, p)


# -- certified root enclosures --------------------------------------------


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other):
        other = _as_interval(other)
        prods = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def sign(self) -> int:
        """+1 / -1 if the interval certifies a strict sign, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0


def _as_interval(v) -> Interval:
    if isinstance(v, Interval):
        return v
    v = Fraction(v)
    return Interval(v, v)


def f_poly(a: int, t: Fraction) -> Fraction:
    return ((t - a) * t - (a + 3)) * t - 1


def seed_intervals(a: int) -> tuple[Interval, Interval, Interval]:
    """Open enclosures of rho, rho', rho'' from the classical unit estimates."""
    return (
        Interval(Fraction(a + 1), a + 1 + Fraction(2, a)),
        Interval(-1 - Fraction(1, a), -1 - Fraction(1, 2 * a)),
        Interval(Fraction(-1, a + 2), Fraction(-1, a + 3)),
    )


def _bisect(a: int, iv: Interval, bits: int) -> Interval:
    lo, hi = iv
    s_lo, s_hi = f_poly(a, lo), f_poly(a, hi)
    if s_lo == 0 or s_hi == 0 or (s_lo > 0) == (s_hi > 0):
        raise PrecisionError(f"no certified sign change on [{lo}, {hi}] for a={a}")
    neg_lo = s_lo < 0
    eps = Fraction(1, 1 << bits)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        v = f_poly(a, mid)
        if v == 0:
            # f_a is irreducible over Q, so this never happens
            raise PrecisionError(f"rational root {mid} for a={a}")
        if (v < 0) == neg_lo:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


@dataclass(frozen=True)
class Embeddings:
    rho: Interval
    rho_p: Interval
    rho_pp: Interval
    precision_bits: int

    def roots(self) -> tuple[Interval, Interval, Interval]:
        return (self.rho, self.rho_p, self.rho_pp)

    def floats(self) -> tuple[float, float, float]:
        return tuple(float((r.lo + r.hi) / 2) for r in self.roots())


@lru_cache(maxsize=None)
def embeddings(p: FieldParams, precision_bits: int = 64) -> Embeddings:
    """Certified disjoint enclosures of rho > |rho'| > |rho''|.

    The three seed intervals are disjoint and each shows a strict sign
    change of f_a, so each holds exactly one root; bisection keeps that.
    """
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")
    roots = tuple(_bisect(p.a, iv, precision_bits) for iv in seed_intervals(p.a))
    return Embeddings(*roots, precision_bits)


def conjugate_intervals(x: Element, emb: Embeddings) -> tuple[Interval, ...]:
    """Enclosures of (x, x', x'') under rho -> rho, rho', rho''."""
    out = []
    for r in emb.roots():
        out.append(x.m + r * x.n + (r * r) * x.o)
    return tuple(out)


def conjugates_float(x: Element, p: FieldParams) -> tuple[float, float, float]:
    return tuple(x.m + x.n * r + x.o * r * r for r in embeddings(p).floats())
