"""Exact arithmetic for integer polynomials and rational functions in one variable.

Everything here is immutable.  ``ZPoly`` stores a dense tuple of Python ints
(index ``i`` holds the coefficient of ``z**i``); ``RatFunc`` keeps a reduced
quotient in a unique normal form so that ``==`` is structural equality.
``FactorBag`` carries a numerator over a product of ``(1 - z**k)`` factors,
the shape every generating function in this package naturally takes.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from operator import add, sub
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ZPoly",
    "RatFunc",
    "FactorBag",
    "poly_mul",
    "poly_derivative",
    "poly_gcd",
    "rat_normalize",
    "rat_arith",
    "series_prefix",
    "factored_expand",
    "one_minus_power",
    "pochhammer",
    "cyclotomic",
    "ZeroDenominatorError",
]


class ZeroDenominatorError(ZeroDivisionError):
    pass


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


# above this many coefficient products, pack into one big int and multiply
_KRONECKER_CUTOFF = 4096


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list:
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2) // 8 + 1
    half = 1 << (8 * nbytes - 1)

    def signed_pack(c):
        pos = _pack([x if x > 0 else 0 for x in c], nbytes)
        neg = _pack([-x if x < 0 else 0 for x in c], nbytes)
        return pos - neg

    n = len(a) + len(b) - 1
    prod = signed_pack(a) * signed_pack(b)
    # shift every digit into [0, 2**(8*nbytes)) so bytes can be sliced directly
    prod += _pack([half] * n, nbytes)
    raw = prod.to_bytes(n * nbytes, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n)
    ]


def _schoolbook_mul(a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            seg = out[j:j + len(a)]
            if bj == 1:
                out[j:j + len(a)] = map(add, seg, a)
            elif bj == -1:
                out[j:j + len(a)] = map(sub, seg, a)
            else:
                out[j:j + len(a)] = [s + bj * x for s, x in zip(seg, a)]
    return out


class ZPoly:
    """Dense univariate polynomial over the integers."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim([int(x) for x in coeffs])
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ZPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: list) -> "ZPoly":
        # caller guarantees a list of ints; trims in place
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(_trim(coeffs)))
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "ZPoly":
        if n < 0:
            raise ValueError("negative exponent")
        return cls._raw([0] * n + [c])

    @classmethod
    def const(cls, c: int) -> "ZPoly":
        return cls._raw([c])

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "ZPoly":
        if not terms:
            return cls()
        c = [0] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] += v
        return cls._raw(c)

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (raises on zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of the zero polynomial")

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ZPoly.const(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("ZPoly", self.coeffs)))
        return self._hash

    def __repr__(self) -> str:
        return f"ZPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        from jointseries.canonical import poly_text

        return poly_text(self)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations -------------------------------------------------
    def __neg__(self) -> "ZPoly":
        return ZPoly._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "ZPoly":
        if isinstance(other, int):
            other = ZPoly.const(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        out[:len(b)] = map(add, a[:len(b)], b)
        return ZPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "ZPoly":
        if isinstance(other, int):
            other = ZPoly.const(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ZPoly":
        return (-self) + other

    def __mul__(self, other) -> "ZPoly":
        if isinstance(other, int):
            if other == 0:
                return ZPoly()
            return ZPoly._raw([other * c for c in self.coeffs])
        if not isinstance(other, ZPoly):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ZPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, n: int) -> "ZPoly":
        """Multiply by ``z**n`` (``n`` may be negative if the low terms vanish)."""
        if not self.coeffs or n == 0:
            return self
        if n > 0:
            return ZPoly._raw([0] * n + list(self.coeffs))
        if any(self.coeffs[:-n]):
            raise ValueError("shift would create negative powers")
        return ZPoly._raw(list(self.coeffs[-n:]))

    def mul_one_minus(self, k: int) -> "ZPoly":
        """Return ``self * (1 - z**k)`` in linear time."""
        if k <= 0:
            raise ValueError("k must be positive")
        a = list(self.coeffs)
        out = a + [0] * k
        out[k:] = map(sub, out[k:], a)
        return ZPoly._raw(out)

    def div_one_minus(self, k: int) -> "ZPoly":
        """Exact quotient ``self / (1 - z**k)``; ``ValueError`` if not divisible."""
        if k <= 0:
            raise ValueError("k must be positive")
        a = list(self.coeffs)
        if not a:
            return self
        q = _stride_cumsum(a, k)
        d = len(a) - 1 - k
        if d < 0 or any(q[d + 1:]):
            raise ValueError(f"not divisible by 1 - z^{k}")
        return ZPoly._raw(q[:d + 1])

    def divides_one_minus(self, k: int) -> bool:
        """True if ``(1 - z**k)`` divides ``self``."""
        try:
            self.div_one_minus(k)
        except ValueError:
            return False
        return True

    def derivative(self) -> "ZPoly":
        return ZPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose_power(self, n: int) -> "ZPoly":
        """``p(z**n)``."""
        if n < 1:
            raise ValueError("n must be >= 1")
        if n == 1 or not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * n + 1)
        out[::n] = self.coeffs
        return ZPoly._raw(out)

    def section(self, n: int) -> "ZPoly":
        """Keep every ``n``-th coefficient: sum a_{i n} z^i."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return ZPoly._raw(list(self.coeffs[::n]))

    def primitive(self) -> "ZPoly":
        c = self.content()
        if c in (0, 1):
            return self
        return ZPoly._raw([x // c for x in self.coeffs])

    def divmod(self, other: "ZPoly") -> tuple["ZPoly", "ZPoly"]:
        """Division over Q; returns (q, r) when both are integral, else raises."""
        q, r = _divmod_q(self.coeffs, other.coeffs)
        if any(x.denominator != 1 for x in q) or any(x.denominator != 1 for x in r):
            raise ValueError("quotient is not integral")
        return ZPoly(int(x) for x in q), ZPoly(int(x) for x in r)

    def exact_div(self, other: "ZPoly") -> "ZPoly":
        """Exact quotient over Z; ``ValueError`` if ``other`` does not divide ``self``."""
        b = other.coeffs
        if not b:
            raise ZeroDenominatorError("division by zero polynomial")
        a = list(self.coeffs)
        if len(a) < len(b):
            if a:
                raise ValueError("not divisible")
            return ZPoly()
        lc = b[-1]
        nb = len(b)
        q = [0] * (len(a) - nb + 1)
        sparse = [(j, c) for j, c in enumerate(b[:-1]) if c]
        for i in range(len(q) - 1, -1, -1):
            top = a[i + nb - 1]
            if top:
                qi, r = divmod(top, lc)
                if r:
                    raise ValueError("not divisible")
                q[i] = qi
                for j, c in sparse:
                    a[i + j] -= qi * c
        if any(a[:nb - 1]):
            raise ValueError("not divisible")
        return ZPoly._raw(q)

    def divides(self, other: "ZPoly") -> bool:
        """True if ``self`` divides ``other``."""
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True


def _stride_cumsum(a: list, k: int) -> list:
    """Series of a / (1 - z^k) truncated to len(a): running sums along each residue class."""
    out = list(a)
    for r in range(min(k, len(a))):
        out[r::k] = accumulate(a[r::k])
    return out


def _divmod_q(a: Sequence[int], b: Sequence[int]):
    if not b:
        raise ZeroDenominatorError("division by zero polynomial")
    r = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lc = Fraction(b[-1])
    for i in range(len(q) - 1, -1, -1):
        f = r[i + len(b) - 1] / lc
        q[i] = f
        if f:
            for j, c in enumerate(b):
                r[i + j] -= f * c
    r = r[:len(b) - 1]
    while r and not r[-1]:
        r.pop()
    return q, r


def poly_mul(p: ZPoly, q: ZPoly) -> ZPoly:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return ZPoly()
    if len(a) == 1:
        return ZPoly._raw([a[0] * x for x in b])
    if len(b) == 1:
        return ZPoly._raw([b[0] * x for x in a])
    if len(a) * len(b) > _KRONECKER_CUTOFF:
        return ZPoly._raw(_kronecker_mul(a, b))
    return ZPoly._raw(_schoolbook_mul(a, b))


def poly_derivative(p: ZPoly) -> ZPoly:
    return p.derivative()


# -- gcd ---------------------------------------------------------------


def _prs_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive remainder sequence; slow but always correct."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        # pseudo-remainder of a by b
        r = list(a.coeffs)
        bl = b.coeffs
        lc = bl[-1]
        while len(r) >= len(bl):
            top = r[-1]
            shift = len(r) - len(bl)
            r = [lc * x for x in r]
            for j, c in enumerate(bl):
                r[shift + j] -= top * c
            _trim(r)
            if not r:
                break
        a, b = b, ZPoly(r).primitive()
    return a


def _heu_gcd(a: ZPoly, b: ZPoly):
    """Heuristic gcd by big-integer evaluation; returns None when it gives up."""
    bound = min(max(map(abs, a.coeffs)), max(map(abs, b.coeffs)))
    xi = 2 * bound + 29
    for _ in range(8):
        h = math.gcd(a(xi), b(xi))
        digits = []
        while h:
            d = h % xi
            if d > xi // 2:
                d -= xi
            digits.append(d)
            h = (h - d) // xi
        g = ZPoly(digits).primitive()
        if g and g.divides(a) and g.divides(b):
            return g
        xi = xi * 73794 // 27011
    return None


def poly_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Greatest common divisor over Z, positive leading coefficient."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        c = math.gcd(a.content(), b.content())
        pa, pb = a.primitive(), b.primitive()
        if pa.degree == 0 or pb.degree == 0:
            g = ZPoly.const(c)
        else:
            g = _heu_gcd(pa, pb)
            if g is None:
                g = _prs_gcd(pa, pb)
            g = g.primitive() * c
    if g and g.lc < 0:
        g = -g
    return g


# -- rational functions --------------------------------------------------


def _low_coeff(p: ZPoly) -> int:
    return p.coeffs[p.valuation()]


class RatFunc:
    """Reduced quotient ``num / den`` of integer polynomials.

    Normal form: gcd(num, den) = 1, joint integer content 1 and the lowest
    nonzero coefficient of ``den`` is positive.  Negative powers of ``z`` are
    allowed (``den`` may vanish at 0), so Laurent-type values such as
    ``1 - z**-2`` are representable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduced: bool = False):
        if isinstance(num, int):
            num = ZPoly.const(num)
        if isinstance(den, int):
            den = ZPoly.const(den)
        if not den:
            raise ZeroDenominatorError("zero denominator")
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        if not num:
            den = ZPoly.const(1)
        else:
            c = math.gcd(num.content(), den.content())
            if _low_coeff(den) < 0:
                c = -c
            if c != 1:
                num = ZPoly._raw([x // c for x in num.coeffs])
                den = ZPoly._raw([x // c for x in den.coeffs])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "RatFunc":
        if n >= 0:
            return cls(ZPoly.monomial(n, c), 1, reduced=True)
        return cls(ZPoly.const(c), ZPoly.monomial(-n), reduced=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, ZPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def valuation(self) -> int:
        """Order of vanishing at z = 0 (negative for a pole)."""
        return self.num.valuation() - self.den.valuation()

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __add__(self, other) -> "RatFunc":
        return rat_arith(self, other, "add")

    def __radd__(self, other) -> "RatFunc":
        return rat_arith(RatFunc(other), self, "add")

    def __sub__(self, other) -> "RatFunc":
        return rat_arith(self, other, "sub")

    def __rsub__(self, other) -> "RatFunc":
        return rat_arith(RatFunc(other), self, "sub")

    def __mul__(self, other) -> "RatFunc":
        return rat_arith(self, other, "mul")

    def __rmul__(self, other) -> "RatFunc":
        return rat_arith(RatFunc(other), self, "mul")

    def __truediv__(self, other) -> "RatFunc":
        return rat_arith(self, other, "div")

    def __rtruediv__(self, other) -> "RatFunc":
        return rat_arith(RatFunc(other), self, "div")

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def series(self, n: int) -> list:
        return series_prefix(self, n)

    def __call__(self, x):
        return Fraction(self.num(x)) / self.den(x)


def rat_normalize(num: ZPoly, den: ZPoly) -> RatFunc:
    return RatFunc(num, den)


def _coerce(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, ZPoly)):
        return RatFunc(x)
    if isinstance(x, FactorBag):
        return x.to_ratfunc()
    raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")


def rat_arith(a, b, op: str) -> RatFunc:
    a, b = _coerce(a), _coerce(b)
    if op in ("add", "sub"):
        bn = b.num if op == "add" else -b.num
        if a.den == b.den:
            return RatFunc(a.num + bn, a.den)
        g = poly_gcd(a.den, b.den)
        ad, bd = a.den.exact_div(g), b.den.exact_div(g)
        return RatFunc(a.num * bd + bn * ad, a.den * bd)
    if op == "mul":
        g1 = poly_gcd(a.num, b.den)
        g2 = poly_gcd(b.num, a.den)
        num = a.num.exact_div(g1) * b.num.exact_div(g2)
        den = a.den.exact_div(g2) * b.den.exact_div(g1)
        return RatFunc(num, den, reduced=True)
    if op == "div":
        if not b.num:
            raise ZeroDenominatorError("division by zero rational function")
        return rat_arith(a, RatFunc(b.den, b.num), "mul")
    raise ValueError(f"unknown operation {op!r}")


def series_prefix(r, n: int) -> list:
    """First ``n + 1`` Taylor coefficients of ``r`` at z = 0 by long division."""
    r = _coerce(r)
    d = r.den.coeffs
    if not d or d[0] == 0:
        raise ZeroDenominatorError("pole at the origin; no Taylor expansion")
    num = r.num.coeffs
    d0 = d[0]
    tail = [(j, c) for j, c in enumerate(d) if j and c]
    out = []
    for i in range(n + 1):
        acc = num[i] if i < len(num) else 0
        for j, c in tail:
            if j > i:
                break
            acc -= c * out[i - j]
        if d0 == 1:
            out.append(acc)
        elif d0 == -1:
            out.append(-acc)
        else:
            q, rem = divmod(acc, d0)
            out.append(q if not rem else Fraction(acc, d0))
    return out


# -- products of (1 - z^k) ---------------------------------------------


@lru_cache(maxsize=None)
def one_minus_power(k: int) -> ZPoly:
    """``1 - z**k``."""
    if k <= 0:
        raise ValueError("k must be positive")
    return ZPoly._raw([1] + [0] * (k - 1) + [-1])


def expand_factors(factors: Mapping[int, int], start: ZPoly | None = None) -> ZPoly:
    """``start * prod (1 - z**k)**m`` using linear-time factor steps."""
    p = ZPoly.const(1) if start is None else start
    for k in sorted(factors):
        for _ in range(factors[k]):
            p = p.mul_one_minus(k)
    return p


def pochhammer(a: int, q: int, n: int) -> RatFunc:
    """``(z**a, z**q)_n = (1 - z**a)(1 - z**(a+q))...(1 - z**(a+(n-1)q))``.

    Exponents may be negative; a zero exponent makes the product vanish.
    """
    result = RatFunc(1)
    for i in range(n):
        e = a + i * q
        if e > 0:
            result = result * RatFunc(one_minus_power(e))
        elif e < 0:
            result = result * RatFunc(one_minus_power(-e), ZPoly.monomial(-e)) * -1
        else:
            return RatFunc(0)
    return result


def pochhammer_exponents(a: int, q: int, n: int) -> Counter:
    """Exponent multiset of ``(z**a, z**q)_n`` for positive exponents."""
    exps = Counter(a + i * q for i in range(n))
    if any(e <= 0 for e in exps):
        raise ValueError("non-positive exponent in Pochhammer product")
    return exps


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> ZPoly:
    """n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = ZPoly._raw([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


class FactorBag:
    """``z**shift * numer / prod_k (1 - z**k)**m_k``.

    ``shift`` may be negative.  Multiplicities live in ``factors`` as a sorted
    tuple of ``(k, m)`` pairs with ``k >= 1`` and ``m >= 1``.
    """

    __slots__ = ("factors", "numer", "shift")

    def __init__(self, factors: Mapping[int, int] | Iterable[tuple[int, int]] = (),
                 numer: ZPoly | int = 1, shift: int = 0):
        items = dict(factors)
        for k, m in items.items():
            if k < 1 or m < 0:
                raise ValueError(f"bad factor (1 - z^{k})^{m}")
        if isinstance(numer, int):
            numer = ZPoly.const(numer)
        if numer and numer.coeffs[0] == 0:
            v = numer.valuation()
            numer, shift = numer.shift(-v), shift + v
        object.__setattr__(self, "factors", tuple(sorted((k, m) for k, m in items.items() if m)))
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "shift", shift if numer else 0)

    def __setattr__(self, name, value):
        raise AttributeError("FactorBag is immutable")

    def __repr__(self) -> str:
        return f"FactorBag({dict(self.factors)!r}, numer={self.numer!r}, shift={self.shift})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactorBag):
            return NotImplemented
        return (self.factors, self.numer, self.shift) == (other.factors, other.numer, other.shift)

    def __hash__(self) -> int:
        return hash((self.factors, self.numer, self.shift))

    @property
    def bag(self) -> dict:
        return dict(self.factors)

    def denominator(self) -> ZPoly:
        return expand_factors(self.bag)

    def valuation(self) -> int:
        return self.shift

    def to_ratfunc(self) -> RatFunc:
        num, den = self.numer, self.denominator()
        if self.shift >= 0:
            num = num.shift(self.shift)
        else:
            den = den.shift(-self.shift)
        return RatFunc(num, den)

    def scale(self, c: int = 1, shift: int = 0) -> "FactorBag":
        return FactorBag(self.factors, self.numer * c, self.shift + shift)

    def mul_poly(self, p: ZPoly) -> "FactorBag":
        return FactorBag(self.factors, self.numer * p, self.shift)

    def with_factors(self, extra: Mapping[int, int]) -> "FactorBag":
        """Same value, denominator enlarged by ``extra`` (numerator compensates)."""
        bag = Counter(self.bag)
        bag.update(extra)
        return FactorBag(bag, expand_factors(extra, self.numer), self.shift)


def factored_expand(f: FactorBag) -> RatFunc:
    return f.to_ratfunc()


def refactor(r: RatFunc, max_k: int | None = None) -> FactorBag | None:
    """Recover a ``FactorBag`` from ``r`` by trial division of the denominator.

    Tries ``(1 - z**k)`` for ``k`` from high to low.  Returns ``None`` when the
    leftover denominator is not a unit.
    """
    den = r.den
    shift = 0
    if den.coeffs[0] == 0:
        shift = -den.valuation()
        den = den.shift(shift)
    bag: Counter = Counter()
    top = den.degree if max_k is None else min(max_k, den.degree)
    for k in range(top, 0, -1):
        while den.degree >= k:
            try:
                den = den.div_one_minus(k)
            except ValueError:
                break
            bag[k] += 1
    num, den = complete_cyclotomic(r.num, den, bag)
    if den.degree != 0 or abs(den.coeffs[0]) != 1:
        return None
    return FactorBag(bag, num * den.coeffs[0], shift)


def largest_cyclotomic_divisor(p: ZPoly) -> int:
    """Largest ``j`` with ``Phi_j | p``, or 0."""
    # phi(j) >= sqrt(j/2), so Phi_j | p forces j <= 2 deg^2
    for j in range(max(2 * p.degree**2, 2), 0, -1):
        c = cyclotomic(j)
        if c.degree <= p.degree and c.divides(p):
            return j
    return 0


def complete_cyclotomic(num: ZPoly, den: ZPoly, bag: Counter) -> tuple[ZPoly, ZPoly]:
    """Move cyclotomic factors of ``den`` into full ``(1 - z**j)`` entries of ``bag``.

    All of ``gcd(den, 1 - z**j)`` is absorbed at once and the cofactor goes
    into the numerator.  Returns the
    new numerator and whatever is left of ``den``.
    """
    while den.degree > 0:
        j = largest_cyclotomic_divisor(den)
        if not j:
            break
        g = poly_gcd(den, one_minus_power(j))
        den = den.exact_div(g)
        num = num * one_minus_power(j).exact_div(g)
        bag[j] += 1
    return num, den


def bag_sum(terms: Sequence[FactorBag]) -> FactorBag:
    """Exact sum over the smallest common multiset of ``(1 - z**k)`` factors."""
    if not terms:
        return FactorBag({}, 0)
    common: Counter = Counter()
    for t in terms:
        for k, m in t.factors:
            common[k] = max(common[k], m)
    low = min(t.shift for t in terms)
    total = ZPoly()
    for t in terms:
        missing = {k: m - t.bag.get(k, 0) for k, m in common.items() if m > t.bag.get(k, 0)}
        total = total + expand_factors(missing, t.numer).shift(t.shift - low)
    return FactorBag(common, total, low)


def _fold_divisible(num: ZPoly, j: int) -> bool:
    """Does the j-th cyclotomic polynomial divide ``num``?  Tests num mod (z^j - 1) first."""
    c = num.coeffs
    folded = ZPoly(sum(c[i::j]) for i in range(j))
    if not folded:
        return True
    try:
        folded.exact_div(cyclotomic(j)) if j > 1 else folded.div_one_minus(1)
    except ValueError:
        return False
    return True


def reduce_bag(F: FactorBag) -> RatFunc:
    """Normal-form ``RatFunc`` of ``F`` by cancelling cyclotomic factors of its denominator.

    Every ``(1 - z**k)`` splits as ``(1 - z) * prod_{j | k, j > 1} Phi_j``, so the
    only possible common factors with the numerator are these ``Phi_j``.
    """
    num = F.numer
    mu: Counter = Counter()
    for k, m in F.factors:
        for j in range(1, k + 1):
            if k % j == 0:
                mu[j] += m
    if not num:
        return RatFunc(0)
    for j in sorted(mu):
        while mu[j] and _fold_divisible(num, j):
            if j == 1:
                num = num.div_one_minus(1)
            else:
                # num / Phi_j = -num * ((z^j - 1)/Phi_j) / (1 - z^j)
                cof = ZPoly._raw([-1] + [0] * (j - 1) + [1]).exact_div(cyclotomic(j))
                num = -(num * cof).div_one_minus(j)
            mu[j] -= 1
    den = ZPoly.const(1)
    for j in sorted(mu):
        for _ in range(mu[j]):
            den = den.mul_one_minus(1) if j == 1 else den * cyclotomic(j)
    if F.shift >= 0:
        num = num.shift(F.shift)
    else:
        den = den.shift(-F.shift)
    return RatFunc(num, den, reduced=True)
