"""Presentation of Poincaré series as numerator over ``(1 - z**k)`` factors, and rendering."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from jointseries.oracle import FormPair
from jointseries.ring import RatFunc, ZPoly, complete_cyclotomic, expand_factors

__all__ = [
    "Presentation",
    "present",
    "rat_equal",
    "render",
    "parse_json",
    "poly_text",
    "poly_latex",
    "FORMATS",
]

FORMATS = ("text", "latex", "json")

# integers beyond this are written to JSON as decimal strings
JSON_INT_LIMIT = 2**53 - 1


@dataclass(frozen=True)
class Presentation:
    numerator: ZPoly
    factors: tuple[tuple[int, int], ...]
    unfactored: Optional[ZPoly] = None

    @property
    def bag(self) -> dict[int, int]:
        return dict(self.factors)

    def denominator(self) -> ZPoly:
        den = expand_factors(self.bag)
        if self.unfactored is not None:
            den = den * self.unfactored
        return den

    def to_ratfunc(self) -> RatFunc:
        return RatFunc(self.numerator, self.denominator())


def present(r: RatFunc) -> Presentation:
    """Write ``r`` as ``N / prod (1 - z**k)**m``.

    Factors are pulled out of the reduced denominator greedily, largest ``k``
    first.  A cyclotomic leftover is completed to a full ``(1 - z**k)`` by
    moving the cofactor into the numerator; anything else is kept as an
    explicit unfactored part.
    """
    den, num = r.den, r.num
    bag: Counter = Counter()
    if den.coeffs[0] == 0:
        return Presentation(num, (), den)
    for k in range(den.degree, 0, -1):
        while den.degree >= k:
            try:
                den = den.div_one_minus(k)
            except ValueError:
                break
            bag[k] += 1
    num, den = complete_cyclotomic(num, den, bag)
    if den.degree > 0:
        return Presentation(num, tuple(sorted(bag.items())), den)
    num = num * den.coeffs[0]
    return Presentation(num, tuple(sorted(bag.items())))


def rat_equal(a: RatFunc, b: RatFunc) -> bool:
    return a.num * b.den == b.num * a.den


# -- rendering -----------------------------------------------------------


def _terms(p: ZPoly):
    return [(e, c) for e, c in reversed(list(enumerate(p.coeffs))) if c]


def poly_text(p: ZPoly) -> str:
    if not p:
        return "0"
    out = []
    for e, c in _terms(p):
        a = abs(c)
        if e == 0:
            mono = str(a)
        else:
            z = "z" if e == 1 else f"z^{e}"
            mono = z if a == 1 else f"{a}*{z}"
        if not out:
            out.append(mono if c > 0 else f"-{mono}")
        else:
            out.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(out)


def _latex_pow(e: int) -> str:
    if e == 1:
        return "z"
    return f"z^{e}" if e < 10 else f"z^{{{e}}}"


def poly_latex(p: ZPoly) -> str:
    if not p:
        return "0"
    out = ""
    for e, c in _terms(p):
        a = abs(c)
        mono = str(a) if e == 0 else (_latex_pow(e) if a == 1 else f"{a}{_latex_pow(e)}")
        if not out:
            out = mono if c > 0 else "-" + mono
        else:
            out += ("+" if c > 0 else "-") + mono
    return out


def _factor_text(k: int, m: int) -> str:
    z = "z" if k == 1 else f"z^{k}"
    return f"(1 - {z})" + (f"^{m}" if m > 1 else "")


def _factor_latex(k: int, m: int) -> str:
    return f"(1-{_latex_pow(k)})" + (f"^{m}" if m > 1 else "")


def _presentation_text(pr: Presentation) -> str:
    num = poly_text(pr.numerator)
    parts = [_factor_text(k, m) for k, m in pr.factors]
    if pr.unfactored is not None:
        parts.append(f"({poly_text(pr.unfactored)})")
    if not parts:
        return num
    if len(_terms(pr.numerator)) > 1:
        num = f"({num})"
    den = parts[0] if len(parts) == 1 else "(" + " ".join(parts) + ")"
    return f"{num}/{den}"


def _presentation_latex(pr: Presentation) -> str:
    num = poly_latex(pr.numerator)
    parts = [_factor_latex(k, m) for k, m in pr.factors]
    if pr.unfactored is not None:
        parts.append(f"({poly_latex(pr.unfactored)})")
    if not parts:
        return num
    return f"\\frac{{{num}}}{{{''.join(parts)}}}"


def _json_int(x: int):
    return x if abs(x) <= JSON_INT_LIMIT else str(x)


def to_json_obj(result) -> dict:
    pr = result.presentation or present(result.value)
    return {
        "d1": result.pair.d1,
        "d2": result.pair.d2,
        "kind": result.kind,
        "numerator": [_json_int(c) for c in pr.numerator.coeffs],
        "denominator_factors": [{"k": k, "mult": m} for k, m in pr.factors],
        "unfactored_denominator": (
            None if pr.unfactored is None else [_json_int(c) for c in pr.unfactored.coeffs]
        ),
        "series": None if result.series is None else [_json_int(c) for c in result.series],
    }


def render(result, format: str = "text") -> str:
    """Render a ``PoincareResult`` as ``text``, ``latex`` or ``json``."""
    pr = result.presentation or present(result.value)
    if format == "text":
        return _presentation_text(pr)
    if format == "latex":
        return _presentation_latex(pr)
    if format == "json":
        return json.dumps(to_json_obj(result))
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def parse_json(text_or_obj):
    """Inverse of ``render(..., "json")``."""
    from jointseries.springer import PoincareResult

    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    num = ZPoly(int(c) for c in obj["numerator"])
    factors = tuple((int(f["k"]), int(f["mult"])) for f in obj["denominator_factors"])
    unf = obj.get("unfactored_denominator")
    pr = Presentation(num, factors, None if unf is None else ZPoly(int(c) for c in unf))
    series = obj.get("series")
    return PoincareResult(
        FormPair(int(obj["d1"]), int(obj["d2"])),
        obj["kind"],
        pr.to_ratfunc(),
        pr,
        None if series is None else tuple(int(c) for c in series),
    )
