"""Digit decompositions of w and the closed forms for the floors they induce.

In the cone spanned by 1, rho^2 and (rho')^{-2} a lattice point
(m, -w, o) has cone coordinates

    t1 = m + (a+1) w / D,   t2 = o - (a+2) w / D,   t3 = w / D,

with D = a^2 + 3a + 3 = (a+1)(a+2) + 1.  Writing m = m0(w) + m1 and
o = o0(w) + o1 with the exact floors m0, o0 below makes t1, t2 sit in
[m1 - 1, m1] and [o1 - 1, o1].  The functions here give those floors and
fractional parts in closed form from the two mixed-radix digit
decompositions of w:

    phi: w = D w0 + (a+1) w1 + w2,  0 <= w1 <= a+2, 0 <= w2 <= a,
         w2 = 0 when w1 = a+2
    psi: w = D w0 + (a+2) w1 + w2,  0 <= w1 <= a+1, 0 <= w2 <= a+1,
         w2 = 0 when w1 = a+1

All identities hold for every a >= 1, so these functions take either an
integer ``a`` or a :class:`FieldParams`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .field import FieldParams


class PhiDecomp(NamedTuple):
    w0: int
    w1: int
    w2: int


class PsiDecomp(NamedTuple):
    w0: int
    w1: int
    w2: int


def _a(p: FieldParams | int) -> int:
    a = p.a if isinstance(p, FieldParams) else int(p)
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    return a


def _den(a: int) -> int:
    return a * a + 3 * a + 3


def _check_w(w: int) -> None:
    if w < 1:
        raise ValueError(f"w must be >= 1, got {w}")


def phi(p: FieldParams | int, w: int) -> PhiDecomp:
    a = _a(p)
    _check_w(w)
    w0, r = divmod(w, _den(a))
    w1, w2 = divmod(r, a + 1)
    return PhiDecomp(w0, w1, w2)


def phi_inv(p: FieldParams | int, d: PhiDecomp) -> int:
    a = _a(p)
    w0, w1, w2 = d
    if w0 < 0 or not 0 <= w1 <= a + 2 or not 0 <= w2 <= a or (w1 == a + 2 and w2):
        raise ValueError(f"{tuple(d)} is not in W1({a})")
    w = _den(a) * w0 + (a + 1) * w1 + w2
    if w < 1:
        raise ValueError("w = 0 is outside the domain")
    return w


def psi(p: FieldParams | int, w: int) -> PsiDecomp:
    a = _a(p)
    _check_w(w)
    w0, r = divmod(w, _den(a))
    w1, w2 = divmod(r, a + 2)
    return PsiDecomp(w0, w1, w2)


def psi_inv(p: FieldParams | int, d: PsiDecomp) -> int:
    a = _a(p)
    w0, w1, w2 = d
    if w0 < 0 or not 0 <= w1 <= a + 1 or not 0 <= w2 <= a + 1 or (w1 == a + 1 and w2):
        raise ValueError(f"{tuple(d)} is not in W2({a})")
    w = _den(a) * w0 + (a + 2) * w1 + w2
    if w < 1:
        raise ValueError("w = 0 is outside the domain")
    return w


# -- direct floors ---------------------------------------------------------


def m0(p: FieldParams | int, w: int) -> int:
    """floor(-(a+1) w / D), rounding toward -infinity."""
    a = _a(p)
    _check_w(w)
    return (-(a + 1) * w) // _den(a)


def o0(p: FieldParams | int, w: int) -> int:
    """floor((a+2) w / D)."""
    a = _a(p)
    _check_w(w)
    return ((a + 2) * w) // _den(a)


def frac_m(p: FieldParams | int, w: int) -> Fraction:
    """-(a+1) w / D - m0(w), in [0, 1)."""
    a = _a(p)
    return Fraction(-(a + 1) * w, _den(a)) - m0(a, w)


def frac_o(p: FieldParams | int, w: int) -> Fraction:
    """(a+2) w / D - o0(w), in [0, 1)."""
    a = _a(p)
    return Fraction((a + 2) * w, _den(a)) - o0(a, w)


# -- closed forms ----------------------------------------------------------
# Each *_num helper returns the numerator over D of the fractional part so
# the exhaustive checks can stay in integer arithmetic.


def _m_phi_case(a: int, d: PhiDecomp) -> int:
    if d.w1 == a + 2:
        return 1
    return 0 if d.w1 >= d.w2 else -1


def m0_closed_phi(p: FieldParams | int, d: PhiDecomp) -> int:
    a = _a(p)
    return -(a + 1) * d.w0 - d.w1 + _m_phi_case(a, d)


def frac_m_phi_num(a: int, d: PhiDecomp) -> int:
    return (a + 2) * d.w1 - (a + 1) * d.w2 - _m_phi_case(a, d) * _den(a)


def frac_m_closed_phi(p: FieldParams | int, d: PhiDecomp) -> Fraction:
    a = _a(p)
    return Fraction(frac_m_phi_num(a, d), _den(a))


def o0_closed_phi(p: FieldParams | int, d: PhiDecomp) -> int:
    a = _a(p)
    corr = -1 if (d.w1 >= 1 and d.w2 == 0) else 0
    return (a + 2) * d.w0 + d.w1 + corr


def frac_o_phi_num(a: int, d: PhiDecomp) -> int:
    if d.w2 >= 1:
        return (a + 2) * d.w2 - d.w1
    if d.w1 >= 1:
        return _den(a) - d.w1
    return 0


def frac_o_closed_phi(p: FieldParams | int, d: PhiDecomp) -> Fraction:
    a = _a(p)
    return Fraction(frac_o_phi_num(a, d), _den(a))


def m0_closed_psi(p: FieldParams | int, d: PsiDecomp) -> int:
    a = _a(p)
    return -(a + 1) * d.w0 - d.w1 - (1 if d.w2 >= 1 else 0)


def frac_m_psi_num(a: int, d: PsiDecomp) -> int:
    if d.w2 == 0:
        return d.w1
    return _den(a) + d.w1 - (a + 1) * d.w2


def frac_m_closed_psi(p: FieldParams | int, d: PsiDecomp) -> Fraction:
    a = _a(p)
    return Fraction(frac_m_psi_num(a, d), _den(a))


# -- cone coordinates --------------------------------------------------------


def t_coords(p: FieldParams | int, m1: int, o1: int, w: int) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (t1, t2, t3) of the point (m0(w)+m1, -w, o0(w)+o1)."""
    a = _a(p)
    den = _den(a)
    m = m0(a, w) + m1
    o = o0(a, w) + o1
    return (
        m + Fraction((a + 1) * w, den),
        o - Fraction((a + 2) * w, den),
        Fraction(w, den),
    )


def t2_closed_o1_eq_1(p: FieldParams | int, d: PhiDecomp) -> Fraction:
    """t2 of a point with o1 = 1, read off the phi digits of w."""
    a = _a(p)
    den = _den(a)
    if d.w1 == 0 and d.w2 == 0:
        return Fraction(1)
    if d.w2 >= 1:
        return 1 - Fraction((a + 2) * d.w2 - d.w1, den)
    return Fraction(d.w1, den)


def t1_closed_m1_eq_1_psi(p: FieldParams | int, d: PsiDecomp) -> Fraction:
    """t1 of a point with m1 = 1, read off the psi digits of w."""
    a = _a(p)
    den = _den(a)
    if d.w2 == 0:
        return 1 - Fraction(d.w1, den)
    return Fraction((a + 1) * d.w2 - d.w1, den)


def t1_t2_closed_m1_o1_eq_1(p: FieldParams | int, d: PhiDecomp) -> tuple[Fraction, Fraction]:
    a = _a(p)
    den = _den(a)
    if d.w1 == a + 2:
        shift = 2
    elif d.w1 >= d.w2:
        shift = 1
    else:
        shift = 0
    t1 = Fraction((a + 1) * d.w2 - (a + 2) * d.w1, den) + shift
    if d.w1 == 0 and d.w2 == 0:
        t2 = Fraction(1)
    elif d.w2 >= 1:
        t2 = 1 + Fraction(d.w1 - (a + 2) * d.w2, den)
    else:
        t2 = Fraction(d.w1, den)
    return t1, t2


# -- exhaustive checks -------------------------------------------------------


def floor_identity_mismatches(a: int, w_max: int) -> list[tuple[str, int]]:
    """Every (lemma, w) in [1, w_max] where a closed form disagrees with the
    direct floor or fractional part."""
    den = _den(a)
    bad = []
    for w in range(1, w_max + 1):
        d = phi(a, w)
        if phi_inv(a, d) != w:
            bad.append(("phi_inv", w))
        e = psi(a, w)
        if psi_inv(a, e) != w:
            bad.append(("psi_inv", w))
        mm = (-(a + 1) * w) // den
        oo = ((a + 2) * w) // den
        fm = -(a + 1) * w - mm * den
        fo = (a + 2) * w - oo * den
        if m0_closed_phi(a, d) != mm or frac_m_phi_num(a, d) != fm:
            bad.append(("m0_phi", w))
        if o0_closed_phi(a, d) != oo or frac_o_phi_num(a, d) != fo:
            bad.append(("o0_phi", w))
        if m0_closed_psi(a, e) != mm or frac_m_psi_num(a, e) != fm:
            bad.append(("m0_psi", w))
    return bad


def t_identity_mismatches(a: int, w_max: int, m1_values=(1, 2, 3), o1_values=(1, 2, 3)) -> list[tuple]:
    """Check the t-coordinate sandwich and the three closed t formulas."""
    bad = []
    for w in range(1, w_max + 1):
        d = phi(a, w)
        e = psi(a, w)
        for m1 in m1_values:
            for o1 in o1_values:
                t1, t2, t3 = t_coords(a, m1, o1, w)
                if not (m1 - 1 <= t1 <= m1 and o1 - 1 <= t2 <= o1 and t3 > 0):
                    bad.append(("sandwich", w, m1, o1))
                if o1 == 1 and t2_closed_o1_eq_1(a, d) != t2:
                    bad.append(("t2_o1", w, m1, o1))
                if m1 == 1 and t1_closed_m1_eq_1_psi(a, e) != t1:
                    bad.append(("t1_m1_psi", w, m1, o1))
                if m1 == 1 and o1 == 1 and t1_t2_closed_m1_o1_eq_1(a, d) != (t1, t2):
                    bad.append(("t1_t2_m1_o1", w, m1, o1))
    return bad
