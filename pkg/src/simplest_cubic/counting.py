"""Exact counts P(a, x) and P_p(a, x) by enumerating the six cones.

Every principal ideal has exactly one totally positive generator alpha with
tau(alpha) in the Shintani domain, so P(a, x) is the number of lattice
points of the six open cones with Nm(alpha) <= x.

Enumeration bounds
------------------
For a cone with generators g_1, ..., g_e (totally positive units) write
alpha = sum t_k g_k with all t_k > 0.  Every conjugate of every generator
is positive, so for each embedding i

    sigma_i(alpha) >= sum_k t_k * lb_i(g_k),

where lb_i(g_k) is a certified lower bound of sigma_i(g_k) taken from the
root enclosures.  Multiplying the three embeddings gives

    Nm(alpha) >= LB(t) := prod_i sum_k t_k lb_i(g_k).

Dropping all but one term shows t_k^3 * Nm(g_k) = t_k^3 <= Nm(alpha), so
each t_k <= x^(1/3) (the per-cone constant is c_k = 1 for every cone).
LB is increasing in every t_k, so each nested loop below walks its
coordinate upward from the smallest value giving t_k > 0 and stops at the
first value with LB > x.  Every point visited inside that region is then
checked exactly: strict positivity of its rational cone coordinates and
the integer norm form.

Cone by cone, in tau-coordinates (m, n, o):

* C(1): alpha = m, counted in closed form as icbrt(x).
* C(1, g) with g = (p, q, r): points are (m, j q', j r') with
  (q', r') = (q, r) / gcd(q, r), t2 = j / gcd(q, r) and t1 = m - p t2.
* C(1, rho^2, g) with g = (p, q, r), q != 0: t3 = |n| / |q|,
  t1 = m - p t3, t2 = o - r t3.  For g = (rho')^{-2} and w = -n this is
  m = m0(w) + m1, o = o0(w) + o1 with m1, o1 >= 1.

The outer coordinate is split into disjoint residue stripes for parallel
runs; the per-stripe results are summed, so the total does not depend on
the number of workers.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .cones import ConeId, fundamental_domain, generator_lower_bounds
from .field import Element, FieldParams, content, norm, norm_mno
from .oracle import IdealHNF, ideal_hnf, oracle_count, oracle_ideals  # noqa: F401

# relative slack on the pruning test LB(t) > x; pruning only, never counting
_PRUNE_SLACK = 1.0 + 1e-9

THREADS_ENV = "SIMPLEST_CUBIC_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def icbrt(x: int) -> int:
    """floor(x^(1/3)) for x >= 0, by integer bisection."""
    if x < 0:
        raise ValueError("icbrt of a negative number")
    lo, hi = 0, 1
    while hi ** 3 <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** 3 <= x:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class CountReport:
    a: int
    x: int
    per_cone: dict[ConeId, int]
    per_cone_primitive: dict[ConeId, int]
    total: int
    primitive_total: int
    elapsed: float = 0.0


def _check(p: FieldParams, x: int) -> None:
    if not p.monogenic:
        raise ValueError(
            f"a={p.a}: a^2+3a+9 = {p.disc_root} is not squarefree, Z[rho] is not maximal"
        )
    if p.a < 8:
        raise ValueError(f"counting needs a >= 8, got {p.a}")
    if int(x) != x or x < 1:
        raise ValueError(f"x must be an integer >= 1, got {x}")


def _lb(coefs, t) -> float:
    """prod_i sum_k t_k * coefs[k][i]."""
    out = 1.0
    for i in range(3):
        out *= sum(tk * c[i] for tk, c in zip(t, coefs))
    return out


def _visit_cone2(p: FieldParams, gen, x: int, stripe: int, nstripes: int, sink) -> None:
    a = p.a
    gp, gq, gr = gen
    g = math.gcd(gq, gr)
    qq, rr = gq // g, gr // g
    coefs = (generator_lower_bounds(p, (1, 0, 0)), generator_lower_bounds(p, gen))
    limit = x * _PRUNE_SLACK
    j = stripe + 1
    while True:
        t2 = j / g
        if _lb(coefs, (0.0, t2)) > limit:
            break
        n, o = j * qq, j * rr
        # t1 = m - gp * j / g > 0
        m = (gp * j) // g + 1
        while True:
            t1 = m - gp * j / g
            if _lb(coefs, (t1, t2)) > limit:
                break
            N = norm_mno(a, m, n, o)
            if N <= x:
                sink(m, n, o, N)
            m += 1
        j += nstripes


def _visit_cone3(p: FieldParams, gen, x: int, stripe: int, nstripes: int, sink) -> None:
    a = p.a
    gp, gq, gr = gen
    if gq == 0:
        raise ValueError("third generator must have nonzero rho-coordinate")
    sq = 1 if gq > 0 else -1
    aq = abs(gq)
    coefs = (
        generator_lower_bounds(p, (1, 0, 0)),
        generator_lower_bounds(p, (0, 0, 1)),
        generator_lower_bounds(p, gen),
    )
    limit = x * _PRUNE_SLACK
    k = stripe + 1
    while True:
        t3 = k / aq
        if _lb(coefs, (0.0, 0.0, t3)) > limit:
            break
        n = sq * k
        # t1 = m - gp*k/aq > 0 and t2 = o - gr*k/aq > 0
        m = (gp * k) // aq + 1
        o_start = (gr * k) // aq + 1
        while True:
            t1 = m - gp * k / aq
            if _lb(coefs, (t1, 0.0, t3)) > limit:
                break
            o = o_start
            while True:
                t2 = o - gr * k / aq
                if _lb(coefs, (t1, t2, t3)) > limit:
                    break
                N = norm_mno(a, m, n, o)
                if N <= x:
                    sink(m, n, o, N)
                o += 1
            m += 1
        k += nstripes


def _visit(p: FieldParams, cone_index: int, x: int, stripe: int, nstripes: int, sink) -> None:
    cone = fundamental_domain(p)[cone_index]
    if len(cone.generators) == 2:
        _visit_cone2(p, cone.generators[1], x, stripe, nstripes, sink)
    elif len(cone.generators) == 3:
        if cone.generators[1] != (0, 0, 1):
            raise ValueError("three-generator cones must contain rho^2")
        _visit_cone3(p, cone.generators[2], x, stripe, nstripes, sink)
    else:
        raise ValueError("C(1) is counted in closed form")


def _count_stripe(args) -> list[tuple[int, int]]:
    """(count, primitive count) for every non-trivial cone on one stripe."""
    a, x, stripe, nstripes = args
    from .field import make_params

    p = make_params(a)
    out = []
    for ci in range(1, 6):
        acc = [0, 0]

        def sink(m, n, o, N, acc=acc):
            acc[0] += 1
            if math.gcd(math.gcd(m, n), o) == 1:
                acc[1] += 1

        _visit(p, ci, x, stripe, nstripes, sink)
        out.append((acc[0], acc[1]))
    return out


def count_principal(p: FieldParams, x: int, threads: int | None = None) -> CountReport:
    """P(a, x) and P_p(a, x) with a per-cone breakdown.

    ``threads`` worker processes each take a residue class of the outer
    coordinate; the result is identical for every value.
    """
    _check(p, x)
    x = int(x)
    threads = default_threads() if threads is None else int(threads)
    if threads < 1:
        raise ValueError("threads must be >= 1")
    start = time.perf_counter()
    jobs = [(p.a, x, s, threads) for s in range(threads)]
    if threads == 1:
        parts = [_count_stripe(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_count_stripe, jobs))
    ids = list(ConeId)
    c1 = icbrt(x)
    per_cone = {ids[0]: c1}
    per_prim = {ids[0]: 1}
    for ci in range(1, 6):
        per_cone[ids[ci]] = sum(part[ci - 1][0] for part in parts)
        per_prim[ids[ci]] = sum(part[ci - 1][1] for part in parts)
    return CountReport(
        a=p.a,
        x=x,
        per_cone=per_cone,
        per_cone_primitive=per_prim,
        total=sum(per_cone.values()),
        primitive_total=sum(per_prim.values()),
        elapsed=time.perf_counter() - start,
    )


def count_primitive(p: FieldParams, x: int, threads: int | None = None) -> CountReport:
    """Same report as :func:`count_principal`; read ``primitive_total``."""
    return count_principal(p, x, threads)


def domain_elements(p: FieldParams, x: int) -> list[tuple[ConeId, Element, int]]:
    """Every alpha in the domain with Nm(alpha) <= x, with its cone and norm."""
    _check(p, x)
    ids = list(ConeId)
    out = [(ConeId.C1, Element(m, 0, 0), m ** 3) for m in range(1, icbrt(x) + 1)]
    for ci in range(1, 6):
        _visit(p, ci, x, 0, 1, lambda m, n, o, N, ci=ci: out.append((ids[ci], Element(m, n, o), N)))
    return out


def min_primitive_norm(p: FieldParams) -> int:
    """Smallest norm of a primitive principal ideal other than O_K.

    Searches the domain up to a bound that starts at 2a+3 and doubles until
    some primitive element of norm > 1 shows up.
    """
    bound = 2 * p.a + 3
    while True:
        norms = [N for _, g, N in domain_elements(p, bound) if N > 1 and content(g) == 1]
        if norms:
            return min(norms)
        bound *= 2


def norm_upper_product(t1, t2, t3, p: FieldParams) -> Fraction:
    """Upper bound for Nm(t1 + t2 rho^2 + t3 (rho')^{-2}), t_i > 0."""
    t1, t2, t3 = Fraction(t1), Fraction(t2), Fraction(t3)
    if min(t1, t2, t3) <= 0:
        raise ValueError("t-coordinates must be positive")
    a2 = p.a * p.a
    return (t1 + 2 * a2 * t2 + t3) * (t1 + 2 * t2 + 2 * a2 * t3) * (t1 + t2 / a2 + t3 / a2)


def norm_lower_product(t1, t2, t3, p: FieldParams) -> Fraction:
    """Lower bound (strict) for the same norm from the unit size estimates."""
    t1, t2, t3 = Fraction(t1), Fraction(t2), Fraction(t3)
    a2 = p.a * p.a
    return (t1 + a2 * t2 + t3 / 2) * (t1 + t2 + a2 * t3) * (t1 + t2 / (2 * a2) + t3 / (2 * a2))


def element_from_t(p: FieldParams, t1: int, t2: int, t3: int) -> Element:
    """t1 + t2 rho^2 + t3 (rho')^{-2} for integer t's."""
    a = p.a
    return Element(t1 - t3 * (a + 1), -t3 * (a * a + 3 * a + 3), t2 + t3 * (a + 2))


def ideals_from_domain(p: FieldParams, x: int) -> dict[IdealHNF, Element]:
    return {ideal_hnf(g, p): g for _, g, _ in domain_elements(p, x)}


def galois_orbit_count(p: FieldParams, x: int) -> int:
    """Number of distinct ideals generated by the Galois images of the
    domain generators of norm <= x."""
    from .field import galois_apply

    return len({ideal_hnf(galois_apply(g, p), p) for _, g, _ in domain_elements(p, x)})


__all__ = [
    "CountReport",
    "IdealHNF",
    "count_principal",
    "count_primitive",
    "default_threads",
    "domain_elements",
    "icbrt",
    "ideal_hnf",
    "min_primitive_norm",
    "norm",
    "norm_upper_product",
    "oracle_count",
]
