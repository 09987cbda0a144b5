"""Regulator, C_K, the three-term envelope and the a-priori error bound.

Logarithms are natural.  Values that are compared against a proven bound
(regulator, C_K, the unit estimates) are certified intervals; everything
else is reported as a double.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv

from .counting import count_principal
from .field import (
    FieldParams,
    Interval,
    PrecisionError,
    embeddings,
    f_poly,
    make_params,
    seed_intervals,
)


@contextmanager
def _workprec(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


LOG_C1 = 900 * math.log(3) + (5 / 3) * math.log(1.5)


def _iv_from_fraction(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


def _iv_from_interval(r: Interval):
    lo = _iv_from_fraction(r.lo)
    hi = _iv_from_fraction(r.hi)
    return iv.mpf([lo.a, hi.b])


@dataclass(frozen=True)
class RegulatorValue:
    a: int
    lo: float
    hi: float
    value: object  # mpmath interval

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2


def _log_abs(r: Interval, prec: int):
    with _workprec(prec):
        x = _iv_from_interval(r)
        if x.b < 0:
            x = -x
        elif x.a <= 0:
            raise PrecisionError("enclosure straddles zero")
        return iv.log(x)


def regulator(p: FieldParams, precision_bits: int = 64) -> RegulatorValue:
    """Certified enclosure of (log|rho'|)^2 - log(rho) log|rho''|."""
    emb = embeddings(p, precision_bits)
    prec = precision_bits + 20
    with _workprec(prec):
        l1 = _log_abs(emb.rho, prec)
        l2 = _log_abs(emb.rho_p, prec)
        l3 = _log_abs(emb.rho_pp, prec)
        reg = l2 * l2 - l1 * l3
        return RegulatorValue(p.a, float(reg.a), float(reg.b), reg)


def regulator_bounds(a: int) -> tuple[float, float]:
    la = math.log(a)
    return la * la, 1.5 * la * la


def regulator_certified(p: FieldParams, precision_bits: int = 64) -> bool:
    """True iff the enclosure lies inside [(log a)^2, 1.5 (log a)^2]."""
    reg = regulator(p, precision_bits)
    with _workprec(precision_bits + 20):
        la = iv.log(iv.mpf(p.a))
        lo = la * la
        hi = iv.mpf(3) / 2 * la * la
        return bool(reg.value.a >= lo.b and reg.value.b <= hi.a)


@dataclass(frozen=True)
class CKValue:
    a: int
    lo: float
    hi: float
    value: object


def c_K(p: FieldParams, precision_bits: int = 64) -> CKValue:
    """C_K = 4 Reg / (a^2+3a+9) as a certified interval."""
    reg = regulator(p, precision_bits)
    with _workprec(precision_bits + 20):
        v = 4 * reg.value / p.disc_root
        return CKValue(p.a, float(v.a), float(v.b), v)


def c_K_certified(p: FieldParams, precision_bits: int = 64) -> bool:
    ck = c_K(p, precision_bits)
    with _workprec(precision_bits + 20):
        la = iv.log(iv.mpf(p.a))
        lo = 2 * la * la / p.a ** 2
        hi = 6 * la * la / p.a ** 2
        return bool(ck.value.a >= lo.b and ck.value.b <= hi.a)


# -- a-priori bound (log scale) ---------------------------------------------------


@dataclass(frozen=True)
class AprioriBound:
    log_bound: float
    log_threshold: float
    in_regime: bool


def apriori_bound_log(p: FieldParams, x: float) -> AprioriBound:
    """log of c1 (log a)^(10/3) x^(2/3), with c1 = 3^900 (3/2)^(5/3).

    ``in_regime`` reports x >= c1^3 a^6 (log a)^4, where the bound pins
    P(a, x) to the order (log a)^2 x / a^2.  Everything is kept in log form
    because c1 alone is far beyond double range.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    lla = math.log(math.log(p.a))
    log_bound = LOG_C1 + (10 / 3) * lla + (2 / 3) * math.log(x)
    log_threshold = 3 * LOG_C1 + 6 * math.log(p.a) + 4 * lla
    return AprioriBound(log_bound, log_threshold, math.log(x) >= log_threshold)


def debaene_rhs_log(d: int, reg_h: float, x: float) -> float:
    """log of d^(10 d^2) (R h)^(1/d) (1 + log R h)^((d-1)^2/d) x^(1-1/d)."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    if reg_h <= 0 or x < 1:
        raise ValueError("need reg_h > 0 and x >= 1")
    inner = 1 + math.log(reg_h)
    if inner <= 0:
        raise ValueError("1 + log(reg_h) must be positive")
    return (
        10 * d * d * math.log(d)
        + math.log(reg_h) / d
        + (d - 1) ** 2 / d * math.log(inner)
        + (1 - 1 / d) * math.log(x)
    )


def apriori_presimplified_log(reg: float, x: float, log_leading: float = 900 * math.log(3)) -> float:
    """log of L * Reg^(1/3) (1 + log Reg)^(4/3) x^(2/3) for leading constant e^log_leading."""
    return log_leading + math.log(reg) / 3 + (4 / 3) * math.log(1 + math.log(reg)) + (2 / 3) * math.log(x)


# -- envelopes and scans -----------------------------------------------------------


def envelope(a: int, x: float) -> float:
    la = math.log(a)
    return la * la * x / a ** 2 + (x / a) ** (2 / 3) + x ** (1 / 3)


def envelope_primitive(a: int, x: float) -> float:
    la = math.log(a)
    return la * la * x / a ** 2 + (x / a) ** (2 / 3) + 1


@dataclass(frozen=True)
class EnvelopeReport:
    a: int
    x: int
    count: int
    primitive_count: int
    envelope: float
    envelope_primitive: float
    ratio: float
    ratio_primitive: float
    elapsed: float = 0.0


def envelope_report(a: int, x: int, count: int, primitive_count: int, elapsed: float = 0.0) -> EnvelopeReport:
    env = envelope(a, x)
    envp = envelope_primitive(a, x)
    return EnvelopeReport(a, x, count, primitive_count, env, envp, count / env, primitive_count / envp, elapsed)


@dataclass
class ScanSummary:
    rows: list[EnvelopeReport]
    min_ratio: float
    max_ratio: float
    min_ratio_primitive: float
    max_ratio_primitive: float


def ratio_scan(a_list, x_list, threads: int | None = None) -> ScanSummary:
    """One report per (a, x), a-major; counts from the cone enumeration."""
    rows = []
    for a in a_list:
        p = make_params(a)
        for x in x_list:
            rep = count_principal(p, x, threads)
            rows.append(envelope_report(a, x, rep.total, rep.primitive_total, rep.elapsed))
    if not rows:
        raise ValueError("empty scan")
    return ScanSummary(
        rows,
        min(r.ratio for r in rows),
        max(r.ratio for r in rows),
        min(r.ratio_primitive for r in rows),
        max(r.ratio_primitive for r in rows),
    )


def envelope_crossover(a: int) -> float:
    """x at which (log a)^2 x / a^2 equals (x/a)^(2/3): a^4 / (log a)^6."""
    return a ** 4 / math.log(a) ** 6


# -- unit estimates -------------------------------------------------------------------


@dataclass
class UnitBoundsReport:
    checked: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)
    skipped_squares: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _certify_root_interval(a: int, iv_: Interval) -> bool:
    lo, hi = f_poly(a, iv_.lo), f_poly(a, iv_.hi)
    return lo != 0 and hi != 0 and (lo > 0) != (hi > 0)


def unit_bound_checks(a: int) -> list[tuple[str, bool]]:
    """Each classical size estimate for rho, rho', rho'' and whether it holds.

    The linear bounds are certified by an exact sign change of f_a at both
    ends of each (pairwise disjoint) interval, which puts exactly one root
    strictly inside each.  The squared bounds then follow from the
    certified enclosures by exact rational comparison.
    """
    seeds = seed_intervals(a)
    names = ("a+1 < rho < a+1+2/a", "-1-1/a < rho' < -1-1/(2a)", "-1/(a+2) < rho'' < -1/(a+3)")
    checks = []
    disjoint = seeds[1].hi < seeds[2].lo and seeds[2].hi < seeds[0].lo
    for name, s in zip(names, seeds):
        checks.append((name, disjoint and _certify_root_interval(a, s)))
    if a >= 8:
        emb = embeddings(make_params(a), 64)
        r, rp, rpp = emb.rho, emb.rho_p, emb.rho_pp
        a2 = a * a
        checks.append(("a^2 < rho^2 < 2a^2", a2 < r.lo ** 2 and r.hi ** 2 < 2 * a2))
        # rho' < 0: |rho'| in (-hi, -lo)
        checks.append(("1 < rho'^2 < 2", 1 < rp.hi ** 2 and rp.lo ** 2 < 2))
        checks.append((
            "1/(2a^2) < rho''^2 < 1/a^2",
            Fraction(1, 2 * a2) < rpp.hi ** 2 and rpp.lo ** 2 < Fraction(1, a2),
        ))
        checks.append(("rho > |rho'| > |rho''|", r.lo > -rp.lo and -rp.hi > -rpp.lo))
    return checks


def verify_unit_bounds(a_range) -> UnitBoundsReport:
    rep = UnitBoundsReport()
    for a in a_range:
        if a < 7:
            raise ValueError("unit estimates need a >= 7")
        if a < 8:
            rep.skipped_squares.append(a)
        for name, ok in unit_bound_checks(a):
            rep.checked += 1
            if not ok:
                rep.failures.append((a, name))
    return rep
