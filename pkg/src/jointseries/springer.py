"""Poincaré series of joint invariants and covariants by partial fractions in ``t``.

With ``d = max(d1, d2)`` the shifted generating function

    f(t z**d, z) = prod_{e in E} 1/(1 - t z**e)**m_e

has only nonnegative exponents.  Each pole ``t = z**-e`` is simple or double,
and its coefficient is itself ``+-z**a * N(z) / prod (1 - z**c)``.  The
Poincaré series is the diagonal ``sum_n [t^n z^{n d}]`` of ``(1 - z**2) f``
(invariants) or ``(1 + z) f`` (covariants); applied termwise this becomes a
sum of multisections of the pole coefficients.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from jointseries.multisection import psi_double_bag, psi_simple_bag
from jointseries.oracle import FormPair
from jointseries.ring import (
    FactorBag,
    RatFunc,
    ZPoly,
    bag_sum,
    expand_factors,
    pochhammer,
    reduce_bag,
    series_prefix,
)

__all__ = [
    "TFactored",
    "PFTerm",
    "PoincareResult",
    "KINDS",
    "shifted_genfun",
    "partial_fractions",
    "closed_form_simple",
    "poincare_series",
    "springer_terms",
]

log = logging.getLogger(__name__)

KINDS = ("invariants", "covariants")

_MULTIPLIER = {
    "invariants": ZPoly([1, 0, -1]),
    "covariants": ZPoly([1, 1]),
}


@dataclass(frozen=True)
class TFactored:
    """``prefactor(z) * prod_e 1/(1 - t z**e)**m_e``."""

    exponents: tuple[tuple[int, int], ...]
    prefactor: ZPoly = field(default_factory=lambda: ZPoly.const(1))

    def __post_init__(self):
        for e, m in self.exponents:
            if e < 0 or m < 1:
                raise ValueError(f"bad factor (1 - t z^{e})^{m}")

    @property
    def mult(self) -> dict[int, int]:
        return dict(self.exponents)

    def t_coefficient(self, s: int) -> ZPoly:
        """Coefficient of ``t**s`` (a polynomial in z), by direct expansion."""
        rows = [ZPoly.const(1)] + [ZPoly()] * s
        for e, m in self.exponents:
            for _ in range(m):
                for n in range(1, s + 1):
                    rows[n] = rows[n] + rows[n - 1].shift(e)
        return rows[s] * self.prefactor


@dataclass(frozen=True)
class PFTerm:
    """``coeff(z) / (1 - t z**e)**order``."""

    e: int
    order: int
    bag: FactorBag

    @property
    def coeff(self) -> RatFunc:
        return self.bag.to_ratfunc()


@dataclass(frozen=True)
class PoincareResult:
    pair: FormPair
    kind: str
    value: RatFunc
    presentation: Optional[object] = None
    series: Optional[tuple[int, ...]] = None


def shifted_genfun(p) -> TFactored:
    """Pole exponents of ``f(t z**d2, z)`` for ``d1 <= d2`` (the pair is normalized first)."""
    p = p if isinstance(p, FormPair) else FormPair(*p)
    p = p.normalized
    d1, d2 = p.d1, p.d2
    E = Counter(d1 + d2 - 2 * i for i in range(d1 + 1))
    E.update(2 * j for j in range(d2 + 1))
    return TFactored(tuple(sorted(E.items())))


def _pole_bag(exps: dict[int, int], e: int) -> FactorBag:
    """``prod_{e' != e} 1/(1 - z**(e'-e))**m'`` as a factored power series."""
    sign, shift = 1, 0
    bag: Counter = Counter()
    for e2, m2 in exps.items():
        if e2 == e:
            continue
        c = e2 - e
        assert c != 0
        if c < 0:
            # 1 - z^c = -z^c (1 - z^-c)
            sign *= (-1) ** m2
            shift += -c * m2
        bag[abs(c)] += m2
    return FactorBag(bag, sign, shift)


def _log_derivative_term(exps: dict[int, int], e: int, g: FactorBag) -> FactorBag:
    """Order-one coefficient at a double pole: ``-z**-e * g'_t(z**-e)``."""
    # -z^-e * z^e' / (1 - z^c) with c = e' - e is  -z^c/(1 - z^c) for c > 0
    # and  +1/(1 - z^|c|) for c < 0
    parts: Counter = Counter()  # |c| -> polynomial numerator of the sum over that |c|
    polys: dict[int, ZPoly] = {}
    for e2, m2 in exps.items():
        if e2 == e:
            continue
        c = e2 - e
        a = abs(c)
        term = ZPoly.monomial(a, -m2) if c > 0 else ZPoly.const(m2)
        polys[a] = polys.get(a, ZPoly()) + term
        parts[a] = 1
    full = expand_factors(parts)
    total = ZPoly()
    for a, num in polys.items():
        total = total + num * full.div_one_minus(a)
    return FactorBag(Counter(g.bag) + parts, g.numer * total, g.shift)


def partial_fractions(f: TFactored) -> list[PFTerm]:
    """Decompose ``f`` into ``coeff / (1 - t z**e)`` and ``coeff / (1 - t z**e)**2`` terms."""
    exps = f.mult
    terms = []
    for e, m in f.exponents:
        g = _pole_bag(exps, e).mul_poly(f.prefactor)
        if m == 1:
            terms.append(PFTerm(e, 1, g))
        elif m == 2:
            terms.append(PFTerm(e, 1, _log_derivative_term(exps, e, g)))
            terms.append(PFTerm(e, 2, g))
        else:
            raise NotImplementedError("poles of order above two")
    return terms


def springer_terms(p, kind: str) -> list[tuple[PFTerm, FactorBag]]:
    """Each partial-fraction term with its diagonal contribution (kept factored)."""
    p = (p if isinstance(p, FormPair) else FormPair(*p)).normalized
    mult = _MULTIPLIER[kind]
    n = p.d2
    out = []
    for term in partial_fractions(shifted_genfun(p)):
        R = term.bag.mul_poly(mult)
        if term.order == 1:
            contrib = psi_simple_bag(n, term.e, R)
        else:
            contrib = psi_double_bag(n, term.e, R)
        out.append((term, contrib))
    return out


@lru_cache(maxsize=512)
def _poincare_value(d1: int, d2: int, kind: str) -> RatFunc:
    contributions = [c for _, c in springer_terms(FormPair(d1, d2), kind) if c.numer]
    total = bag_sum(contributions)
    return reduce_bag(total)


def poincare_series(p, kind: str = "invariants", terms: Optional[int] = None) -> PoincareResult:
    """Poincaré series of the joint invariants or covariants of two binary forms."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    p = p if isinstance(p, FormPair) else FormPair(*p)
    q = p.normalized
    value = _poincare_value(q.d1, q.d2, kind)
    from jointseries.canonical import present

    series = tuple(series_prefix(value, terms)) if terms is not None else None
    return PoincareResult(p, kind, value, present(value), series)


# -- printed closed forms, kept only as a cross-check ---------------------


def _descending(a: int, n: int) -> RatFunc:
    """``prod_{j<n} (1 - z**(a - 2j))`` with negative exponents allowed."""
    return pochhammer(a - 2 * (n - 1), 2, n)


def closed_form_simple(p, family: str, k: int, *, literal: bool = False) -> RatFunc:
    """Closed-form simple-pole coefficient for pairs of different parity.

    Family ``"A"`` is the coefficient at ``t = z**(2k - d1 - d2)``, family
    ``"B"`` the one at ``t = z**(-2k)``.  For family A the last Pochhammer
    block runs downward in steps of ``z**-2``; ``literal=True`` evaluates the
    upward-stepping block as typeset, which does not match the residue.
    Family B uses the second printed case whenever ``2k > d2 - d1``.
    """
    p = p if isinstance(p, FormPair) else FormPair(*p)
    d1, d2 = p.d1, p.d2
    if not d2 > d1 or (d2 - d1) % 2 == 0:
        raise ValueError("closed form needs d2 > d1 with d2 - d1 odd")
    z2 = lambda n: pochhammer(2, 2, n)  # noqa: E731  (z^2, z^2)_n
    if family == "A":
        if not 0 <= k <= d1:
            raise ValueError("k out of range for family A")
        num = RatFunc.monomial((d1 - k) * (d1 - k + 1) + (d2 + 1) * (d1 - 2 * k), (-1) ** k)
        last = pochhammer(d1 + d2 - 2 * k, 2, d2 + 1) if literal else _descending(d1 + d2 - 2 * k, d2 + 1)
        return num / (z2(k) * z2(d1 - k) * last)
    if family == "B":
        if not 0 <= k <= d2:
            raise ValueError("k out of range for family B")
        if 2 * k < d2 - d1:
            num = RatFunc.monomial(k * (k + 1), (-1) ** k)
            return num / (pochhammer(d2 - d1 - 2 * k, 2, d1 + 1) * z2(k) * z2(d2 - k))
        h = (d2 - d1 + 1) // 2
        s = (2 * k - (d2 - d1) - 1) // 2
        num = RatFunc.monomial(k * (k + 2) - h, (-1) ** h)
        z1 = lambda n: pochhammer(1, 2, n)  # noqa: E731  (z, z^2)_n
        return num / (z1(s + 1) * z1(d1 - s) * z1(k) * z2(d2 - k))
    raise ValueError("family must be 'A' or 'B'")
