"""Series multisection and diagonal extraction of partial-fraction terms.

``phi(n, F)`` keeps every ``n``-th coefficient of a power series ``F``.  For
``F = R(z) / prod (1 - z**k)`` this is computed exactly by the identity

    phi_n(F) = phi_n(R * prod Q_n(z**k)) / prod (1 - z**k),
    Q_n(z) = 1 + z + ... + z**(n-1),

which keeps the denominator intact.  ``psi_simple``/``psi_double`` apply the
diagonal operator ``sum a_{i, i n} z^i`` to ``R(z)/(1 - t z**k)`` and
``R(z)/(1 - t z**k)**2``.
"""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction

from jointseries.ring import (
    _stride_cumsum,
    FactorBag,
    RatFunc,
    ZPoly,
    expand_factors,
    refactor,
)

__all__ = [
    "phi_poly",
    "phi_bag",
    "phi_rat",
    "psi_simple",
    "psi_double",
    "psi_simple_bag",
    "psi_double_bag",
    "bag_derivative",
]

log = logging.getLogger(__name__)


def phi_poly(n: int, p: ZPoly) -> ZPoly:
    """Coefficient of ``z**i`` in the result is the coefficient of ``z**(i*n)`` in ``p``."""
    if n < 1:
        raise ValueError("section index must be >= 1")
    return p.section(n)


def _laurent_coeffs(F: FactorBag, lo: int, hi: int) -> list[int]:
    """Coefficients of z^lo .. z^hi in the Laurent expansion of ``F``."""
    out = []
    top = hi - F.shift
    series = _bag_series(F, top) if top >= 0 else []
    for j in range(lo, hi + 1):
        idx = j - F.shift
        out.append(series[idx] if 0 <= idx < len(series) else 0)
    return out


def _bag_series(F: FactorBag, n: int) -> list[int]:
    """Taylor coefficients 0..n of ``numer / prod (1 - z**k)**m`` (the shift is ignored)."""
    return _poly_series(F.numer, F.factors, n)


def _poly_series(numer: ZPoly, factors, n: int) -> list[int]:
    s = list(numer.coeffs[:n + 1]) + [0] * max(0, n + 1 - len(numer))
    for k, m in factors:
        for _ in range(m):
            s = _stride_cumsum(s, k)
    return s


def _phi_power_series(n: int, numer: ZPoly, factors) -> ZPoly:
    """Numerator of phi_n(numer / prod (1 - z**k)**m) over the same factors."""
    p = numer
    for k, m in factors:
        for _ in range(m):
            p = p.mul_one_minus(k * n)
    for k, m in factors:
        for _ in range(m):
            p = p.div_one_minus(k)
    return p.section(n)


def phi_bag(n: int, F: FactorBag) -> FactorBag:
    """Multisection of a factored rational function, result kept factored.

    ``n = 0`` is read literally: every coefficient ``a_{0*i}`` equals the
    constant term, so the result is ``a_0 / (1 - z)``.
    """
    if n < 0:
        raise ValueError("section index must be nonnegative")
    if not F.numer:
        return F
    if n == 0:
        a0 = _laurent_coeffs(F, 0, 0)[0]
        return FactorBag({1: 1}, a0)
    if n == 1:
        return F if F.shift >= 0 else _drop_negative(F)
    v = F.shift
    if v >= 0:
        return FactorBag(F.factors, _phi_power_series(n, F.numer.shift(v), F.factors))
    # Laurent input: a_{sn} = [z^{(s+c)n}] z^{v+cn} G with v + cn >= 0, drop the first c
    c = (-v + n - 1) // n
    P = _phi_power_series(n, F.numer.shift(v + c * n), F.factors)
    head = _poly_series(P, F.factors, c - 1)
    # P/B - sum_{j<c} h_j z^j, then divide by z^c
    num = P - expand_factors(F.bag, ZPoly(head))
    return FactorBag(F.factors, num.shift(-c))


def _drop_negative(F: FactorBag) -> FactorBag:
    """Discard the principal part of a Laurent-type bag (phi_1 of a Laurent series)."""
    c = -F.shift
    head = _bag_series(F, c - 1)
    num = F.numer - expand_factors(F.bag, ZPoly(head))
    return FactorBag(F.factors, num.shift(-c))


def _as_bag(m) -> FactorBag:
    if isinstance(m, FactorBag):
        return m
    if isinstance(m, (int, ZPoly)):
        return FactorBag({}, m)
    if isinstance(m, RatFunc):
        bag = refactor(m)
        if bag is None:
            raise ValueError("denominator is not a product of (1 - z^k) factors")
        return bag
    raise TypeError(f"unsupported input {type(m).__name__}")


def _norm_denominator(den: ZPoly, n: int) -> ZPoly:
    """Polynomial ``H`` with ``H(z**n) = prod_{w^n = 1} den(w z)`` (up to sign).

    Built from power sums of the roots via Newton's identities.
    """
    d = den.degree
    lc = den.lc
    c = [Fraction(x, lc) for x in den.coeffs]  # monic
    # power sums p_1..p_{d*n} of roots of den
    e = [Fraction(1)] + [c[d - i] * (-1) ** i for i in range(1, d + 1)]
    p = [Fraction(0)] * (d * n + 1)
    for k in range(1, d * n + 1):
        acc = Fraction(0)
        for i in range(1, min(k, d + 1)):
            acc += (-1) ** (i - 1) * e[i] * p[k - i]
        if k <= d:
            acc += (-1) ** (k - 1) * k * e[k]
        p[k] = acc
    # elementary symmetric functions of the n-th powers of the roots
    q = [p[k * n] for k in range(d + 1)]
    E = [Fraction(1)] + [Fraction(0)] * d
    for k in range(1, d + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * E[k - i] * q[i]
        E[k] = acc / k
    H = [E[d - i] * (-1) ** (d - i) for i in range(d + 1)]
    scale = Fraction(lc) ** n
    out = [x * scale for x in H]
    if any(x.denominator != 1 for x in out):
        raise ArithmeticError("norm polynomial is not integral")
    return ZPoly(int(x) for x in out)


def _phi_general(n: int, r: RatFunc) -> RatFunc:
    """phi_n of an arbitrary rational power series via the norm of its denominator."""
    if r.den.coeffs[0] == 0:
        raise ValueError("multisection of a Laurent series with unfactorable denominator")
    H = _norm_denominator(r.den, n)
    cof = H.compose_power(n).exact_div(r.den)
    return RatFunc((r.num * cof).section(n), H)


def phi_rat(n: int, m) -> RatFunc:
    """``phi_n`` of a rational power series, returned in normal form."""
    if n >= 1 and isinstance(m, RatFunc) and refactor(m) is None:
        log.warning("denominator is not a product of (1 - z^k); using the norm construction")
        return _phi_general(n, m)
    return phi_bag(n, _as_bag(m)).to_ratfunc()


def bag_derivative(F: FactorBag) -> FactorBag:
    """d/dz of ``F``, returned over the bag enlarged by one copy of each factor."""
    P, v = F.numer, F.shift
    if not P:
        return F
    ks = [k for k, _ in F.factors]
    full = expand_factors({k: 1 for k in ks})
    # z^v P / B  ->  z^{v-1} [ (v P + z P') prod(1-z^k) + P * sum m k z^k prod_{j != k}(1-z^j) ] / (B prod(1-z^k))
    lead = (P * v + P.derivative().shift(1)) * full
    tail = ZPoly()
    for k, m in F.factors:
        tail = tail + full.div_one_minus(k).shift(k) * (m * k)
    num = lead + P * tail
    bag = Counter(F.bag)
    bag.update({k: 1 for k in ks})
    return FactorBag(bag, num, v - 1)


def psi_simple_bag(n: int, k: int, R: FactorBag) -> FactorBag:
    """Diagonal extraction of ``R(z)/(1 - t z**k)``: sum_s [z^{s(n-k)}]R z^s."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k <= n:
        return phi_bag(n - k, R)
    # only finitely many nonpositive indices survive: s(k - n) <= -valuation
    v = R.shift
    if not R.numer or v > 0:
        return FactorBag({}, 0)
    step = k - n
    smax = (-v) // step
    coeffs = _laurent_coeffs(R, -smax * step, 0)[::-1][::step]
    return FactorBag({}, ZPoly(coeffs))


def psi_double_bag(n: int, k: int, R: FactorBag) -> FactorBag:
    """Diagonal extraction of ``R(z)/(1 - t z**k)**2``: the derivative of z times the simple case."""
    X = psi_simple_bag(n, k, R)
    if not X.numer:
        return X
    return bag_derivative(X.scale(1, 1))


def psi_simple(n: int, k: int, R) -> RatFunc:
    return psi_simple_bag(n, k, _as_bag(R)).to_ratfunc()


def psi_double(n: int, k: int, R) -> RatFunc:
    return psi_double_bag(n, k, _as_bag(R)).to_ratfunc()
