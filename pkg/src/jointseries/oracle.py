"""Brute-force dimension counts for joint invariants and covariants.

Two independent ways of counting ``omega_n(i)``, the number of degree-``n``
monomials in the coefficients of two binary forms having total weight ``i``:

* :func:`omega_count` runs a dynamic program over the variables;
* :func:`truncated_omega` expands the product of ``1/(1 - t z**e)`` as a
  bivariate series truncated in ``t``.

Dimensions follow from the weight counts: invariants of degree ``n`` number
``omega_n(0) - omega_n(2)``, covariants ``omega_n(0) + omega_n(1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from operator import add

from jointseries.ring import ZPoly

__all__ = [
    "FormPair",
    "WeightCount",
    "omega_count",
    "omega_row",
    "gamma_multiplicity",
    "dim_invariants",
    "dim_covariants",
    "dims",
    "truncated_omega",
    "truncated_omega_rows",
]


@dataclass(frozen=True)
class FormPair:
    """Degrees of the two binary forms."""

    d1: int
    d2: int

    def __post_init__(self):
        for d in (self.d1, self.d2):
            if not isinstance(d, int) or isinstance(d, bool):
                raise TypeError("degrees must be integers")
            if d < 1:
                raise ValueError("degrees must be ≥ 1")

    @property
    def normalized(self) -> "FormPair":
        """The same pair ordered so that ``d1 <= d2``."""
        if self.d1 <= self.d2:
            return self
        return FormPair(self.d2, self.d1)

    @property
    def max(self) -> int:
        return max(self.d1, self.d2)

    def weights(self) -> list[int]:
        """Weights of the basis vectors of both forms."""
        return [self.d1 - 2 * j for j in range(self.d1 + 1)] + [
            self.d2 - 2 * j for j in range(self.d2 + 1)
        ]


@dataclass(frozen=True)
class WeightCount:
    n: int
    i: int
    value: int


def _as_pair(p) -> FormPair:
    return p if isinstance(p, FormPair) else FormPair(*p)


def _table_size(n: int) -> int:
    # round up so that successive queries share one table
    return max(8, 1 << n.bit_length())


@lru_cache(maxsize=256)
def _omega_table(d1: int, d2: int, N: int) -> tuple[tuple[int, ...], ...]:
    """rows[n][w + N*D] = omega_n(w) for n <= N, D = max(d1, d2)."""
    D = max(d1, d2)
    off = N * D
    width = 2 * off + 1
    rows = [[0] * width for _ in range(N + 1)]
    rows[0][off] = 1
    for w in FormPair(d1, d2).weights():
        # one more variable of weight w, any power: rows[n] += rows[n-1] shifted by w
        for n in range(1, N + 1):
            prev, cur = rows[n - 1], rows[n]
            if w >= 0:
                cur[w:] = map(add, cur[w:], prev[:width - w])
            else:
                cur[:width + w] = map(add, cur[:width + w], prev[-w:])
    return tuple(tuple(r) for r in rows)


def omega_row(p, n: int) -> dict[int, int]:
    """All nonzero ``omega_n(i)`` as a mapping ``i -> count``."""
    p = _as_pair(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    N = _table_size(n)
    D = p.max
    row = _omega_table(p.d1, p.d2, N)[n]
    return {w - N * D: c for w, c in enumerate(row) if c}


def omega_count(p, n: int, i: int) -> int:
    """Number of degree-``n`` monomials of weight ``i``."""
    p = _as_pair(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    D = p.max
    if abs(i) > n * D:
        return 0
    N = _table_size(n)
    return _omega_table(p.d1, p.d2, N)[n][i + N * D]


def gamma_multiplicity(p, n: int, k: int) -> int:
    """Multiplicity of the irreducible ``V_k`` in the degree-``n`` symmetric power."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return omega_count(p, n, k) - omega_count(p, n, k + 2)


def dim_invariants(p, n: int) -> int:
    return omega_count(p, n, 0) - omega_count(p, n, 2)


def dim_covariants(p, n: int) -> int:
    return omega_count(p, n, 0) + omega_count(p, n, 1)


def dims(p, N: int, kind: str) -> list[int]:
    """Dimensions for degrees ``0..N`` of the given kind."""
    if kind == "invariants":
        return [dim_invariants(p, n) for n in range(N + 1)]
    if kind == "covariants":
        return [dim_covariants(p, n) for n in range(N + 1)]
    raise ValueError(f"unknown kind {kind!r}")


def truncated_omega_rows(p, N: int) -> list[ZPoly]:
    """``t``-coefficients ``0..N`` of ``prod 1/(1 - t z**(w + D))`` over all weights ``w``.

    Substituting ``t -> t z**D`` with ``D = max(d1, d2)`` moves weight ``i`` in
    degree ``n`` to exponent ``n*D + i`` so every power of ``z`` is nonnegative.
    """
    p = _as_pair(p)
    D = p.max
    rows = [ZPoly.const(1)] + [ZPoly() for _ in range(N)]
    for w in p.weights():
        e = w + D
        for n in range(1, N + 1):
            rows[n] = rows[n] + rows[n - 1].shift(e)
    return rows


def truncated_omega(p, N: int) -> list[WeightCount]:
    """Every nonzero ``omega_n(i)`` with ``n <= N``, read off the bivariate expansion."""
    p = _as_pair(p)
    D = p.max
    out = []
    for n, row in enumerate(truncated_omega_rows(p, N)):
        for e, c in enumerate(row.coeffs):
            if c:
                out.append(WeightCount(n, e - n * D, c))
    return out
