"""Orbit-count sequences a, b, c: recurrences, enumeration, interpolation.

a(p, m) counts m-matchings of the corona C_p, c(p, m) those of the double
corona, and b(m, n) the minus-invariant 2m-matchings of the signed corona
on 2m+2n+1 labels (index 0 included).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .matchgraph import GraphSpec, count_minus_invariant, enumerate_matchings


class IdentityMismatch(RuntimeError):
    """Two independent computations of the same value disagree."""


class InterpolationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# recurrences


@lru_cache(maxsize=None)
def a_count(p: int, m: int) -> int:
    if m < 0 or m > p or p < 0:
        return 0
    if p <= 1:
        return 1
    return a_count(p - 1, m - 1) + a_count(p - 1, m) + (p - 1) * a_count(p - 2, m - 1)


@lru_cache(maxsize=None)
def c_count(p: int, m: int) -> int:
    if m < 0 or m > p or p < 0:
        return 0
    if p <= 1:
        return 1
    return c_count(p - 1, m - 1) + c_count(p - 1, m) + 2 * (p - 1) * c_count(p - 2, m - 1)


def a_row(p: int) -> list[int]:
    return [a_count(p, m) for m in range(p + 1)]


def c_row(p: int) -> list[int]:
    return [c_count(p, m) for m in range(p + 1)]


def a_enumerated(p: int, m: int) -> int:
    """Length of the explicit matching stream; exponential, keep p small."""
    return sum(1 for _ in enumerate_matchings(GraphSpec("plain", p), m))


def c_enumerated(p: int, m: int) -> int:
    return sum(1 for _ in enumerate_matchings(GraphSpec("double", p), m))


# ---------------------------------------------------------------------------
# b


@lru_cache(maxsize=None)
def b_enumerated(m: int, n: int) -> int:
    """Minus-invariant 2m-matchings of signed0 C_{2m+2n+1}, by direct search."""
    return count_minus_invariant(GraphSpec("signed0", 2 * m + 2 * n + 1), 2 * m)


def b_identity(m: int, n: int) -> int:
    """Count through the dual (2n+1)-matchings.

    Vertex 0 cannot meet an internal edge of an invariant matching, so it
    is covered by the center pendant or not at all.  The parity of 2n+1
    then forces 2l horizontal edges with the center pendant, or 2l+1
    without it.  The other edges pair up under the minus involution and
    quotient to an (n-l)-matching of the double corona on the unused
    index pairs.
    """
    r = m + n
    total = 0
    for l in range(0, n + 1):
        total += comb(r, 2 * l) * c_count(r - 2 * l, n - l)
        total += comb(r, 2 * l + 1) * c_count(r - 2 * l - 1, n - l)
    return total


def b_count(m: int, n: int, check: bool = True) -> int:
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    value = b_identity(m, n)
    if check:
        other = b_enumerated(m, n)
        if other != value:
            raise IdentityMismatch(f"b({m},{n}): identity {value} vs enumeration {other}")
    return value


# ---------------------------------------------------------------------------
# exact polynomials


@dataclass(frozen=True)
class RationalPoly:
    """Coefficients in increasing degree, trailing zeros stripped."""

    coeffs: tuple

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial: -1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (k - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (k - len(other.coeffs))
        return RationalPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return RationalPoly(tuple(c * Fraction(other) for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return RationalPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def coefficient_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def __repr__(self) -> str:
        return f"RationalPoly({', '.join(self.coefficient_strings())})"


def lagrange(xs, ys) -> RationalPoly:
    xs = [Fraction(x) for x in xs]
    if len(set(xs)) != len(xs):
        raise InterpolationError("nodes must be distinct")
    total = RationalPoly(())
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = RationalPoly((1,))
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RationalPoly((-xj / (xi - xj), 1 / (xi - xj)))
        total = total + basis * yi
    return total


@dataclass
class Interpolation:
    n: int
    poly: RationalPoly
    predictions: list = field(default_factory=list)  # (m, predicted, actual)

    @property
    def ok(self) -> bool:
        return self.poly.degree == 2 * self.n + 1 and all(p == a for _, p, a in self.predictions)

    def to_json(self) -> str:
        body = {
            "n": self.n,
            "coefficients": self.poly.coefficient_strings(),
            "degree": self.poly.degree,
            "leading": self.poly.coefficient_strings()[-1],
            "integral": self.poly.integral,
            "predictions_checked": [
                {"m": m, "predicted": str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}",
                 "actual": str(a), "match": p == a}
                for m, p, a in self.predictions
            ],
        }
        return json.dumps(body, sort_keys=True, indent=2)


def interpolate_b(n: int, extra: int = 2, check: bool = True) -> Interpolation:
    """Interpolate m -> b(m, n) through m = 0..2n+1 and test further points.

    Raises :class:`InterpolationError` on a degree defect or a failed
    prediction.
    """
    if n < 0 or extra < 0:
        raise ValueError("n and extra must be non-negative")
    xs = list(range(2 * n + 2))
    poly = lagrange(xs, [b_count(m, n, check) for m in xs])
    if poly.degree != 2 * n + 1:
        raise InterpolationError(f"degree {poly.degree}, expected {2 * n + 1}")
    result = Interpolation(n, poly)
    for m in range(2 * n + 2, 2 * n + 2 + extra):
        actual = b_count(m, n, check)
        result.predictions.append((m, poly(m), actual))
    if not result.ok:
        bad = [m for m, p, a in result.predictions if p != a]
        raise InterpolationError(f"predictions fail at m = {bad}")
    return result


# ---------------------------------------------------------------------------
# inequalities


@dataclass
class InequalityReport:
    family: str
    p: int
    row: list
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def ulc_holds(row: list[int], m: int) -> bool:
    p = len(row) - 1
    lhs = Fraction(row[m] ** 2)
    rhs = (1 + Fraction(1, m)) * (1 + Fraction(1, p - m)) * row[m - 1] * row[m + 1]
    return lhs >= rhs


def check_row(family: str, row: list[int]) -> InequalityReport:
    p = len(row) - 1
    rep = InequalityReport(family, p, list(row))
    if row != row[::-1]:
        rep.violations.append(("symmetry", None))
    peak = max(range(p + 1), key=lambda k: row[k])
    if any(row[k] > row[k + 1] for k in range(peak)) or any(row[k] < row[k + 1] for k in range(peak, p)):
        rep.violations.append(("unimodality", None))
    for m in range(1, p):
        if not ulc_holds(row, m):
            rep.violations.append(("ulc", m))
    return rep


def estimation_holds(p: int, k: int) -> bool:
    return c_count(p, k) <= comb(p * p, k)


def check_inequalities(family: str, p_max: int, p_min: int = 0) -> list[InequalityReport]:
    if family not in ("a", "c"):
        raise ValueError("family must be 'a' or 'c'")
    rowf = a_row if family == "a" else c_row
    reports = []
    for p in range(p_min, p_max + 1):
        rep = check_row(family, rowf(p))
        if family == "c":
            rep.violations += [("estimation", k) for k in range(p + 1) if not estimation_holds(p, k)]
        reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# tables


@dataclass
class SeqTable:
    family: str
    values: dict = field(default_factory=dict)  # (i, j) -> {provenance: value}

    def add(self, i: int, j: int, provenance: str, value: int):
        self.values.setdefault((i, j), {})[provenance] = value

    def disagreements(self) -> list:
        return [k for k, v in sorted(self.values.items()) if len(set(v.values())) > 1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "i", "j", "value", "provenance"])
        for (i, j), v in sorted(self.values.items()):
            for prov in sorted(v):
                w.writerow([self.family, i, j, str(v[prov]), prov])
        return buf.getvalue()


def build_table(family: str, limit: int, enumerate_too: bool = True) -> SeqTable:
    """a/c: rows p = 0..limit; b: all (m, n) with m + n <= limit."""
    t = SeqTable(family)
    if family in ("a", "c"):
        rec = a_count if family == "a" else c_count
        enum = a_enumerated if family == "a" else c_enumerated
        for p in range(limit + 1):
            for m in range(p + 1):
                t.add(p, m, "recurrence", rec(p, m))
                if enumerate_too:
                    t.add(p, m, "enumerated", enum(p, m))
    elif family == "b":
        for s in range(limit + 1):
            for m in range(s + 1):
                t.add(m, s - m, "identity", b_identity(m, s - m))
                if enumerate_too:
                    t.add(m, s - m, "enumerated", b_enumerated(m, s - m))
    else:
        raise ValueError(f"unknown family {family!r}")
    return t
