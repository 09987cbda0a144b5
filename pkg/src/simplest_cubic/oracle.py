"""Brute-force principal ideal counts, independent of the cone decomposition.

Every principal ideal (alpha) of norm N has a generator whose logarithmic
embedding, after subtracting (log N)/3 from each coordinate, lies in the
centered fundamental parallelogram {s*l(rho) + t*l(rho') : |s|, |t| <= 1/2}
of the unit lattice (the units are generated by -1, rho and rho').  Hence

    |sigma_i(alpha)| <= x^(1/3) * exp((|l_i(rho)| + |l_i(rho')|) / 2)

for every ideal of norm <= x.  The oracle enumerates the integer points of
that box in Minkowski space, keeps those with 0 < |Nm| <= x and dedupes
them by the Hermite normal form of the ideal they generate.  Nothing here
uses totally positive units or the Shintani cones.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .field import (
    Element,
    FieldParams,
    RHO,
    conjugates_float,
    content,
    embeddings,
    mult_matrix,
    norm_mno,
    rho_prime,
)

IdealHNF = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

# widening of the box radii; only adds candidates, never removes any
_RADIUS_SLACK = 1.0 + 1e-6


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf3(rows) -> IdealHNF:
    """Row-style Hermite normal form of a nonsingular 3x3 integer matrix.

    Upper triangular, positive diagonal, and each entry above a pivot
    reduced into [0, pivot).
    """
    A = [list(r) for r in rows]
    for c in range(3):
        for i in range(c + 1, 3):
            if A[i][c] == 0:
                continue
            a, b = A[c][c], A[i][c]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            rc, ri = A[c], A[i]
            A[c] = [s * u + t * v for u, v in zip(rc, ri)]
            A[i] = [bg * u - ag * v for u, v in zip(rc, ri)]
        if A[c][c] == 0:
            raise ValueError("singular matrix")
        if A[c][c] < 0:
            A[c] = [-u for u in A[c]]
    for c in range(1, 3):
        piv = A[c][c]
        for i in range(c):
            q = A[i][c] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[c])]
    return tuple(tuple(r) for r in A)


def ideal_hnf(alpha: Element, p: FieldParams) -> IdealHNF:
    """HNF of the Z-module spanned by tau(alpha), tau(alpha rho), tau(alpha rho^2)."""
    if alpha.m == 0 and alpha.n == 0 and alpha.o == 0:
        raise ValueError("the zero element generates no nonzero ideal")
    return hnf3(mult_matrix(alpha, p))


def hnf_norm(h: IdealHNF) -> int:
    return h[0][0] * h[1][1] * h[2][2]


@lru_cache(maxsize=None)
def _log_widths(p: FieldParams) -> tuple[float, float, float]:
    l1 = [math.log(abs(c)) for c in conjugates_float(RHO, p)]
    l2 = [math.log(abs(c)) for c in conjugates_float(rho_prime(p), p)]
    return tuple((abs(u) + abs(v)) / 2 for u, v in zip(l1, l2))


def box_radii(p: FieldParams, x: int) -> tuple[float, float, float]:
    base = x ** (1.0 / 3.0)
    return tuple(base * math.exp(c) * _RADIUS_SLACK for c in _log_widths(p))


def _inv3(M):
    (a, b, c), (d, e, f), (g, h, i) = M
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return [
        [(e * i - f * h) / det, (c * h - b * i) / det, (b * f - c * e) / det],
        [(f * g - d * i) / det, (a * i - c * g) / det, (c * d - a * f) / det],
        [(d * h - e * g) / det, (b * g - a * h) / det, (a * e - b * d) / det],
    ]


def iter_box_points(p: FieldParams, radii):
    """Integer (m, n, o) with |m + n r_i + o r_i^2| <= R_i (plus a margin)."""
    roots = embeddings(p).floats()
    V = [[1.0, r, r * r] for r in roots]
    Vi = _inv3(V)
    signs = [(s1, s2, s3) for s1 in (-1, 1) for s2 in (-1, 1) for s3 in (-1, 1)]
    verts = {}
    for sg in signs:
        y = [sg[k] * radii[k] for k in range(3)]
        verts[sg] = [sum(Vi[r][k] * y[k] for k in range(3)) for r in range(3)]
    edges = []
    for sg in signs:
        for k in range(3):
            if sg[k] < 0:
                other = tuple(-s if j == k else s for j, s in enumerate(sg))
                edges.append((verts[sg], verts[other]))
    o_lo = math.floor(min(v[2] for v in verts.values())) - 1
    o_hi = math.ceil(max(v[2] for v in verts.values())) + 1
    for o in range(o_lo, o_hi + 1):
        ns = []
        for va, vb in edges:
            da, db = va[2] - o, vb[2] - o
            if (da <= 0 <= db) or (db <= 0 <= da):
                if da == db:
                    ns.extend((va[1], vb[1]))
                else:
                    lam = da / (da - db)
                    ns.append(va[1] + lam * (vb[1] - va[1]))
        if not ns:
            continue
        for n in range(math.floor(min(ns)) - 1, math.ceil(max(ns)) + 2):
            lo = -math.inf
            hi = math.inf
            for r, R in zip(roots, radii):
                c = n * r + o * r * r
                lo = max(lo, -R - c)
                hi = min(hi, R - c)
            if lo > hi + 2:
                continue
            for m in range(math.floor(lo) - 1, math.ceil(hi) + 2):
                yield m, n, o


def oracle_ideals(p: FieldParams, x: int) -> dict[IdealHNF, Element]:
    """One generator per principal ideal of norm <= x, keyed by HNF."""
    if not p.monogenic:
        raise ValueError(f"a={p.a}: Z[rho] is not the maximal order")
    if x < 1:
        raise ValueError("x must be >= 1")
    a = p.a
    seen: dict[IdealHNF, Element] = {}
    for m, n, o in iter_box_points(p, box_radii(p, x)):
        N = norm_mno(a, m, n, o)
        if N == 0 or abs(N) > x:
            continue
        alpha = Element(m, n, o)
        h = ideal_hnf(alpha, p)
        if h not in seen:
            seen[h] = alpha
    return seen


def oracle_count(p: FieldParams, x: int) -> tuple[int, int]:
    """(number of principal ideals, number of primitive ones) of norm <= x."""
    ideals = oracle_ideals(p, x)
    return len(ideals), sum(1 for g in ideals.values() if content(g) == 1)
