"""Exact rational arithmetic, weighted monomials, and truncated power series.

Every quantity in the engine is an integer or a `fractions.Fraction`; no
floating point is used anywhere.  Polynomials in the five ambient
coordinates x, y, z, t, w are sparse dictionaries mapping exponent tuples
to rational coefficients:

    Poly = dict[Exp5, Fraction]      Exp5 = (ex, ey, ez, et, ew)

The zero polynomial is the empty dict.  Weighted degree of a monomial is
computed against a 5-vector of positive integer weights whose first entry
is always 1.

The series machinery solves a quasi-homogeneous equation f = 0 locally at
a coordinate vertex for one coordinate (the "eliminated" one) as a
truncated power series in the three remaining local parameters, graded by
their weight residues.  Orders of vanishing are exact rationals m/r; the
integer grading is scaled by r internally and divided out only at the API
boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

Rat = Fraction

Exp5 = tuple[int, int, int, int, int]
Exp3 = tuple[int, int, int]
Poly = dict[Exp5, Fraction]

COORDS = ("x", "y", "z", "t", "w")
COORD_INDEX = {name: i for i, name in enumerate(COORDS)}


class NoEliminatingMonomial(ValueError):
    """The support has no monomial of the form x_vertex^s * x_eliminated."""


class ZeroPolynomial(ValueError):
    """An identically zero polynomial has no vanishing order."""


class _OverCutoff:
    """Singleton result: every term cancelled below the series cutoff."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OVERCUTOFF"


OVERCUTOFF = _OverCutoff()


class WMonomial(NamedTuple):
    """An exponent 5-vector together with its weighted degree."""

    exponents: Exp5
    degree: int

    @classmethod
    def make(cls, exponents: Iterable[int], weights: Iterable[int]) -> "WMonomial":
        exps = tuple(exponents)
        return cls(exps, sum(e * w for e, w in zip(exps, weights)))

    def check(self, weights: Iterable[int]) -> bool:
        return self.degree == sum(e * w for e, w in zip(self.exponents, weights))


def weighted_degree(exps: Exp5, weights: Iterable[int]) -> int:
    return sum(e * w for e, w in zip(exps, weights))


def weighted_monomials(weights, d: int, variables=None) -> set[WMonomial]:
    """All exponent vectors of weighted degree exactly d.

    `weights` is the 5-vector (1, a1, a2, a3, a4); `variables`, when given,
    restricts the support to that set of coordinate indices.  The empty set
    is a valid result; degree 0 yields the single constant monomial.
    """
    weights = tuple(weights)
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    allowed = set(range(5)) if variables is None else set(variables)
    out: set[WMonomial] = set()
    exps = [0] * 5

    def rec(idx: int, remaining: int) -> None:
        if idx == 5:
            if remaining == 0:
                out.add(WMonomial(tuple(exps), d))
            return
        if idx not in allowed:
            rec(idx + 1, remaining)
            return
        w = weights[idx]
        for e in range(remaining // w + 1):
            exps[idx] = e
            rec(idx + 1, remaining - e * w)
        exps[idx] = 0

    rec(0, d)
    return out


# ----------------------------------------------------------------- parsing

_TERM_TOKEN = re.compile(r"([+-])|(\d+)|([xyztw])(?:\^(\d+))?|(\*)|(\s+)")


def parse_poly(text: str) -> Poly:
    """Parse the CLI polynomial mini-grammar.

    Terms like ``3*x^2*y`` joined by ``+``/``-``; the ``*`` and ``^1`` are
    optional, integer coefficients optional, whitespace ignored.
    """
    poly: Poly = {}
    pos = 0
    sign = 1
    coeff: int | None = None
    exps = [0] * 5
    started = False
    has_factor = False

    def flush():
        nonlocal coeff, exps, started, sign, has_factor
        if not started:
            return
        if not has_factor:
            raise ValueError(f"dangling sign in polynomial: {text!r}")
        c = Fraction(sign * (1 if coeff is None else coeff))
        key = tuple(exps)
        poly[key] = poly.get(key, Fraction(0)) + c
        sign, coeff, exps = 1, None, [0] * 5
        started = has_factor = False

    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial at: {text[pos:]!r}")
        pos = m.end()
        s, num, var, exp, _star, space = m.groups()
        if space or _star:
            continue
        if s:
            flush()
            sign = 1 if s == "+" else -1
            started = True
        elif num:
            if coeff is not None or any(exps):
                raise ValueError(f"misplaced integer in term: {text!r}")
            coeff = int(num)
            started = has_factor = True
        else:
            exps[COORD_INDEX[var]] += int(exp) if exp else 1
            started = has_factor = True
    flush()
    return {k: v for k, v in poly.items() if v != 0}


def poly_to_text(poly: Poly) -> str:
    """Render a polynomial in the same mini-grammar, deterministically."""
    if not poly:
        return "0"
    parts = []
    for exps in sorted(poly, reverse=True):
        c = poly[exps]
        mono = "*".join(
            f"{COORDS[i]}^{e}" if e > 1 else COORDS[i]
            for i, e in enumerate(exps) if e > 0
        )
        if not mono:
            parts.append((c, str(abs(c))))
            continue
        if abs(c) == 1:
            parts.append((c, mono))
        else:
            parts.append((c, f"{abs(c)}*{mono}"))
    out = ""
    for c, body in parts:
        out += (" - " if c < 0 else (" + " if out else "")) + body
    return out.lstrip(" +")


# ------------------------------------------------------------------ series


@dataclass(frozen=True)
class TruncSeries:
    """A truncated series in three local parameters with integer grading.

    `weights` are the scaled local weights (weight residues in (0, r));
    every stored term has weighted degree strictly below `cutoff` and a
    nonzero coefficient.  Instances are immutable; `terms` must not be
    mutated after construction.
    """

    weights: Exp3
    cutoff: int
    terms: Mapping[Exp3, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "terms", MappingProxyType(dict(self.terms)))
        for exps, c in self.terms.items():
            if c == 0:
                raise ValueError("zero coefficient stored in series")
            if self.degree_of(exps) >= self.cutoff:
                raise ValueError("series term at or above cutoff")

    def degree_of(self, exps: Exp3) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def order(self) -> int | None:
        """Minimal weighted degree of a term, or None for the zero series."""
        if not self.terms:
            return None
        return min(self.degree_of(e) for e in self.terms)


def _mul_trunc(p: dict[Exp3, Fraction], q: dict[Exp3, Fraction],
               weights: Exp3, cutoff: int) -> dict[Exp3, Fraction]:
    out: dict[Exp3, Fraction] = {}
    for e1, c1 in p.items():
        d1 = sum(e * w for e, w in zip(e1, weights))
        for e2, c2 in q.items():
            d2 = sum(e * w for e, w in zip(e2, weights))
            if d1 + d2 >= cutoff:
                continue
            key = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            c = out.get(key, Fraction(0)) + c1 * c2
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return out


def _reduce_to_chart(support: Mapping[Exp5, Fraction], chart_vertex: int,
                     eliminated: int) -> list[tuple[Fraction, Exp3, int]]:
    """Set the chart coordinate to 1: (coefficient, local exponents, y-degree)."""
    locals_ = [i for i in range(5) if i not in (chart_vertex, eliminated)]
    reduced: dict[tuple[Exp3, int], Fraction] = {}
    for exps, c in support.items():
        if c == 0:
            continue
        loc = (exps[locals_[0]], exps[locals_[1]], exps[locals_[2]])
        key = (loc, exps[eliminated])
        acc = reduced.get(key, Fraction(0)) + c
        if acc:
            reduced[key] = acc
        else:
            reduced.pop(key, None)
    return [(c, loc, ey) for (loc, ey), c in reduced.items()]


def _substitute(reduced, series_terms, weights: Exp3, cutoff: int
                ) -> dict[Exp3, Fraction]:
    """Evaluate the chart-reduced polynomial at Y := series, truncated."""
    max_ey = max((ey for _c, _loc, ey in reduced), default=0)
    powers: list[dict[Exp3, Fraction]] = [{(0, 0, 0): Fraction(1)}]
    for _ in range(max_ey):
        powers.append(_mul_trunc(powers[-1], series_terms, weights, cutoff))
    out: dict[Exp3, Fraction] = {}
    for c, loc, ey in reduced:
        base = sum(e * w for e, w in zip(loc, weights))
        if base >= cutoff:
            continue
        for pe, pc in powers[ey].items():
            key = (loc[0] + pe[0], loc[1] + pe[1], loc[2] + pe[2])
            if sum(e * w for e, w in zip(key, weights)) >= cutoff:
                continue
            acc = out.get(key, Fraction(0)) + c * pc
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


def implicit_eliminate(support: Mapping[Exp5, Fraction], chart_vertex: int,
                       eliminated: int, local_weights: Exp3,
                       cutoff: int) -> TruncSeries:
    """Solve f = 0 in the chart x_vertex = 1 for the eliminated coordinate.

    The support must contain a monomial x_vertex^s * x_eliminated, which
    becomes the unique term linear in the eliminated coordinate with unit
    local part; the series is then produced degree by degree: at each
    weighted degree the homogeneous defect of f(series) is cancelled by
    adjusting the series, which terminates by construction.

    Returns the unique series s with f(..., 1, ..., s, ...) = 0 modulo
    weighted degree `cutoff`.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    weights = tuple(local_weights)
    if len(weights) != 3 or any(w <= 0 for w in weights):
        raise ValueError("local_weights must be three positive integers")
    reduced = _reduce_to_chart(support, chart_vertex, eliminated)
    linear = [c for c, loc, ey in reduced if loc == (0, 0, 0) and ey == 1]
    if not linear:
        raise NoEliminatingMonomial(
            f"no monomial linear in {COORDS[eliminated]} over pure "
            f"{COORDS[chart_vertex]} powers")
    if any(loc == (0, 0, 0) and ey == 0 for _c, loc, ey in reduced):
        raise ValueError("chart vertex lies off the hypersurface "
                         "(constant term in the chart)")
    unit = linear[0]
    rest = [(c, loc, ey) for c, loc, ey in reduced
            if not (loc == (0, 0, 0) and ey == 1)]

    series: dict[Exp3, Fraction] = {}
    deg = 1
    while deg < cutoff:
        defect = _substitute(rest, series, weights, deg + 1)
        adjust = False
        for exps, c in defect.items():
            if sum(e * w for e, w in zip(exps, weights)) != deg:
                continue
            # cancel against unit * Y at this degree
            series[exps] = series.get(exps, Fraction(0)) - c / unit
            if series[exps] == 0:
                del series[exps]
            adjust = True
        deg += 1
        if not adjust:
            continue
    return TruncSeries(weights, cutoff, series)


def series_order(g: Mapping[Exp5, Fraction], chart_vertex: int,
                 eliminated: int, elimination: TruncSeries, r: int):
    """Vanishing order of g at the vertex: (min surviving degree)/r.

    Substitutes x_vertex = 1 and the eliminated coordinate by its series,
    then reads off the minimal weighted degree.  Returns OVERCUTOFF when
    every term cancels below the elimination cutoff.
    """
    if not g or all(c == 0 for c in g.values()):
        raise ZeroPolynomial("vanishing order of the zero polynomial")
    reduced = _reduce_to_chart(g, chart_vertex, eliminated)
    value = _substitute(reduced, dict(elimination.terms),
                        elimination.weights, elimination.cutoff)
    if not value:
        return OVERCUTOFF
    w = elimination.weights
    return Fraction(min(sum(e * ww for e, ww in zip(exps, w))
                        for exps in value), r)


def verify_elimination(support: Mapping[Exp5, Fraction], chart_vertex: int,
                       eliminated: int, elimination: TruncSeries) -> bool:
    """Re-substituting the series into f leaves nothing below the cutoff."""
    reduced = _reduce_to_chart(support, chart_vertex, eliminated)
    value = _substitute(reduced, dict(elimination.terms),
                        elimination.weights, elimination.cutoff)
    return not value
