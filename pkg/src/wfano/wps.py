"""Weighted projective spaces P(1,a1,a2,a3,a4) and their Fano hypersurfaces.

A family is a weight quadruple a1 <= a2 <= a3 <= a4 together with the
anticanonical degree d = a1+a2+a3+a4.  The module decides well-formedness
and quasi-smoothness of the general member combinatorially, enumerates all
families with terminal singularities, and builds concrete general members
with deterministic pseudo-random coefficients for order computations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional

from .exactmath import Exp5, Poly, Fraction as Rat, weighted_monomials

COORDS = ("x", "y", "z", "t", "w")


@dataclass(frozen=True, order=True)
class Weights:
    """The 5-vector (1, a1, a2, a3, a4) with a1 <= a2 <= a3 <= a4."""

    a: tuple[int, int, int, int, int]

    def __post_init__(self):
        if len(self.a) != 5 or self.a[0] != 1:
            raise ValueError("weights must be (1, a1, a2, a3, a4)")
        if any(w < 1 for w in self.a):
            raise ValueError("weights must be positive")
        if list(self.a[1:]) != sorted(self.a[1:]):
            raise ValueError("weights must be nondecreasing from index 1")

    def __getitem__(self, i: int) -> int:
        return self.a[i]

    def __iter__(self):
        return iter(self.a)


@dataclass(frozen=True, order=True)
class Family:
    """An anticanonically embedded hypersurface family X_d in P(1,a1..a4)."""

    weights: Weights
    d: int
    entry_no: Optional[int] = None

    def __post_init__(self):
        if self.d != sum(self.weights.a[1:]):
            raise ValueError("degree must equal a1+a2+a3+a4")

    @classmethod
    def of(cls, a1: int, a2: int, a3: int, a4: int,
           entry_no: Optional[int] = None) -> "Family":
        return cls(Weights((1, a1, a2, a3, a4)), a1 + a2 + a3 + a4, entry_no)

    @property
    def w(self) -> tuple[int, int, int, int, int]:
        return self.weights.a

    def __str__(self):
        tag = f"No. {self.entry_no}: " if self.entry_no else ""
        return f"{tag}X_{self.d} in P{self.w}"


def anticanonical_degree(f: Family) -> Rat:
    """A^3 = -K^3 = d / (a1*a2*a3*a4)."""
    a = f.w
    return Fraction(f.d, a[1] * a[2] * a[3] * a[4])


def hat_lcms(f: Family) -> tuple[int, int, int]:
    """(hat a2, hat a3, hat a4): lcm of the three weights other than a_i."""
    a = f.w
    return (lcm(a[1], a[3], a[4]), lcm(a[1], a[2], a[4]), lcm(a[1], a[2], a[3]))


def is_wellformed(w: Weights | Iterable[int]) -> bool:
    """Every 4-subset of the weights has gcd 1 (a0 = 1 reduces this to one gcd)."""
    a = tuple(w)
    return gcd(gcd(a[1], a[2]), gcd(a[3], a[4])) == 1


# ----------------------------------------------------- quasi-smoothness

@lru_cache(maxsize=None)
def _semigroup_mask(weights: tuple[int, ...], bound: int) -> int:
    """Bit t is set iff t is a nonnegative integer combination of weights."""
    m = 1
    full = (1 << (bound + 1)) - 1
    for a in weights:
        prev = -1
        while m != prev:
            prev = m
            m = (m | (m << a)) & full
    return m


@dataclass(frozen=True)
class QuasiSmoothDiagnostics:
    ok: bool
    failing_subset: Optional[tuple[int, ...]] = None
    detail: str = ""


def general_quasismooth(f: Family, exclude_pure: Optional[tuple[int, ...]] = None,
                        ) -> QuasiSmoothDiagnostics:
    """Quasi-smoothness of the general member by the coordinate-subset test.

    For every nonempty subset I of the five coordinates, the general member
    must admit either (a) a degree-d monomial supported in I, or (b) |I|
    degree-d monomials of the shape (monomial in I) * x_e with pairwise
    distinct external indices e.

    `exclude_pure`, when given, removes from the support every monomial
    supported inside that coordinate set (used to probe members containing
    the corresponding coordinate stratum, e.g. the t-w line).
    """
    w5, d = f.w, f.d
    banned = set(exclude_pure) if exclude_pure else None
    for bits in range(1, 32):
        subset = tuple(i for i in range(5) if bits >> i & 1)
        mask = _semigroup_mask(tuple(sorted(w5[i] for i in subset)), d)
        if banned is not None and set(subset) <= banned:
            ok_a = False
        elif banned is not None:
            non_banned = [i for i in subset if i not in banned]
            ok_a = any((mask >> (d - w5[i])) & 1
                       for i in non_banned if w5[i] <= d)
        else:
            ok_a = bool((mask >> d) & 1)
        if ok_a:
            continue
        externals = 0
        for e in range(5):
            if e in subset or w5[e] > d:
                continue
            if not (mask >> (d - w5[e])) & 1:
                continue
            if banned is not None and set(subset) | {e} <= banned:
                continue
            externals += 1
        if externals < len(subset):
            names = "".join(COORDS[i] for i in subset)
            return QuasiSmoothDiagnostics(
                False, subset,
                f"subset {{{names}}}: no pure degree-{d} monomial and only "
                f"{externals} external eliminations (need {len(subset)})")
    return QuasiSmoothDiagnostics(True)


def admits_member_with_stratum(f: Family, coords: tuple[int, ...]) -> bool:
    """Whether some quasi-smooth member contains the given coordinate stratum."""
    return general_quasismooth(f, exclude_pure=coords).ok


# ----------------------------------------------------------- enumeration

def enumerate_families(max_weight: int = 33) -> list[Family]:
    """All terminal quasi-smooth anticanonical families with a4 <= max_weight.

    Sorted lexicographically by (d, a1, a2, a3, a4) and numbered from 1.
    """
    from .census import is_terminal_family  # cycle-free: census imports nothing back

    found = []
    for a1 in range(1, max_weight + 1):
        for a2 in range(a1, max_weight + 1):
            for a3 in range(a2, max_weight + 1):
                for a4 in range(a3, max_weight + 1):
                    if gcd(gcd(a1, a2), gcd(a3, a4)) != 1:
                        continue
                    fam = Family.of(a1, a2, a3, a4)
                    if not general_quasismooth(fam).ok:
                        continue
                    if not is_terminal_family(fam):
                        continue
                    found.append((fam.d, a1, a2, a3, a4))
    found.sort()
    return [Family.of(a1, a2, a3, a4, entry_no=i + 1)
            for i, (_d, a1, a2, a3, a4) in enumerate(found)]


# ------------------------------------------------------- concrete members

def normal_form_support(f: Family) -> set[Exp5]:
    """Support of the general member after the standard linear normalizations.

    Starts from all degree-d monomials.  At each singular vertex O_i the
    coordinate x_e eliminated there (largest weight, then largest index)
    absorbs, via the change x_e -> x_e + h with h of degree a_e free of
    x_e, every other monomial x_i^k * m with deg(m) = a_e; those are
    removed, so the series order of x_e at O_i is the one the certificate
    tables read off.
    """
    from .census import vertex_elimination_candidates

    support = {m.exponents for m in weighted_monomials(f.w, f.d)}
    w5, d = f.w, f.d
    removed: set[Exp5] = set()
    kept: set[Exp5] = set()
    for i in range(1, 5):
        if w5[i] == 1 or d % w5[i] == 0:
            continue
        cands = vertex_elimination_candidates(f, i)
        if not cands:
            continue
        e = max(cands, key=lambda j: (w5[j], j))
        k = (d - w5[e]) // w5[i]
        for m in weighted_monomials(w5, w5[e], variables=set(range(5)) - {e}):
            exps = list(m.exponents)
            exps[i] += k
            removed.add(tuple(exps))
        keep = [0] * 5
        keep[i], keep[e] = k, 1
        kept.add(tuple(keep))
    return (support - removed) | kept


def generic_member(f: Family, seed: int = 0) -> Poly:
    """A deterministic pseudo-random member on the normal-form support."""
    rng = random.Random((f.d, f.w, seed).__repr__())
    poly: Poly = {}
    for exps in sorted(normal_form_support(f)):
        poly[exps] = Fraction(rng.randint(1, 10**6))
    return poly


def special_member(f: Family, name: str) -> Poly:
    """Named non-generic members used by untwisting certificates.

    ``23:special`` is the degree-14 hypersurface in P(1,2,3,4,5) whose
    z-vertex carries the invisible elliptic involution: the z^3-coefficient
    of w and the z^2 t^2 term both vanish, forcing the monomials z^4 y and
    x t z^3.
    """
    key = f"{f.entry_no}:{name}"
    if key == "23:special":
        from .exactmath import parse_poly
        return parse_poly(
            "t*w^2 + y^2*w^2"          # (t + b y^2) w^2 with b = 1
            "+ y*t^3 - 3*y^3*t^2 + 2*y^5*t"  # y t (t - y^2)(t - 2 y^2)
            "+ z^4*y + x*t*z^3")
    raise KeyError(f"unknown special member {key!r}")
