"""The avalanche-size distribution over all plane trees with n edges.

Three independent routes compute the same polynomial: exhaustive
enumeration, a convolution recurrence, and a closed per-coefficient
formula over strictly increasing exponent sequences. On top of those:
exact rational mean and variance, floating asymptotic ratios, a
truncated-series identity check, and the renormalized curve.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .polyalg import Poly, Series, catalan, catalan_series
from .tree import avalanche_poly, enumerate_trees

__all__ = [
    "DistributionRecord",
    "MomentReport",
    "CurvePoint",
    "EnumerationCapExceeded",
    "DEFAULT_ENUM_CAP",
    "distribution_by_enumeration",
    "distribution_by_recurrence",
    "distribution_by_closed_form",
    "recurrence_polys",
    "closed_coefficient",
    "first_moment_total",
    "mean_exact",
    "variance_exact",
    "moment_report",
    "avalanche_series",
    "functional_equation_mismatch",
    "verify_functional_equation",
    "normalized_curve",
    "curve_csv_lines",
]

DEFAULT_ENUM_CAP = 13

# Fixed high-precision constants for ratio rendering.
SQRT_PI = Decimal("1.77245385090551602729816748334114518279754945612238712821381")
PI = Decimal("3.14159265358979323846264338327950288419716939937510582097494")

_RATIO_PRECISION = 50


class EnumerationCapExceeded(ValueError):
    """Raised when a request would enumerate more trees than the cap allows."""


@dataclass(frozen=True)
class DistributionRecord:
    n: int
    poly: Poly
    method: str  # "enumeration" | "recurrence" | "closed"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "method": self.method, "poly": self.poly.to_pairs()}


@dataclass(frozen=True)
class MomentReport:
    n: int
    mean: Fraction
    variance: Fraction
    mean_ratio: float       # mean / ((sqrt(pi)/4) n^{3/2})
    variance_ratio: float   # variance / n^3

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mean": str(self.mean),
            "variance": str(self.variance),
            "mean_ratio": self.mean_ratio,
            "variance_ratio": self.variance_ratio,
        }


@dataclass(frozen=True)
class CurvePoint:
    x: float  # i / n
    y: float  # p_i / C_n


# ---------------------------------------------------------------------------
#  The distribution, three ways
# ---------------------------------------------------------------------------


def distribution_by_enumeration(n: int, cap: int = DEFAULT_ENUM_CAP) -> DistributionRecord:
    """Fold the avalanche polynomial over every tree with n edges."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise EnumerationCapExceeded(
            f"n={n} exceeds the enumeration cap {cap} "
            f"(catalan({n}) = {catalan(n)} trees)"
        )
    acc: dict[int, int] = {}
    for t in enumerate_trees(n):
        for e, c in avalanche_poly(t).items():
            acc[e] = acc.get(e, 0) + c
    return DistributionRecord(n, Poly(acc), "enumeration")


_rec_lock = threading.Lock()
_rec_table: list[Poly] = [Poly()]


def recurrence_polys(n: int) -> list[Poly]:
    """Distribution polynomials for sizes 0..n via the convolution
    recurrence; the table is cached and grown on demand."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(_rec_table):
        with _rec_lock:
            while len(_rec_table) <= n:
                p = len(_rec_table) - 1
                acc: dict[int, int] = {}
                for k in range(p + 1):
                    ck = catalan(k)
                    cpk = catalan(p - k)
                    acc[k + 1] = acc.get(k + 1, 0) + ck * cpk
                    for e, c in _rec_table[k].items():
                        e2 = e + k + 1
                        acc[e2] = acc.get(e2, 0) + cpk * c
                    for e, c in _rec_table[p - k].items():
                        acc[e] = acc.get(e, 0) + ck * c
                _rec_table.append(Poly(acc))
    return _rec_table[: n + 1]


def distribution_by_recurrence(n: int) -> DistributionRecord:
    return DistributionRecord(n, recurrence_polys(n)[n], "recurrence")


def closed_coefficient(n: int, v: int) -> int:
    """Coefficient of q^v in the size-n distribution, summed over strictly
    increasing positive sequences p_1 < ... < p_k <= n with sum v; each
    contributes C_{p_1-1} * prod C_{p_i - p_{i-1}} * C_{n - p_k + 1}.

    Out-of-range v yields 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if v < 1 or v > n * (n + 1) // 2:
        return 0
    total = 0

    def rec(last: int, remaining: int, partial: int):
        nonlocal total
        for p in range(last + 1, min(n, remaining) + 1):
            factor = catalan(p - 1) if last == 0 else catalan(p - last)
            rest = remaining - p
            if rest == 0:
                total += partial * factor * catalan(n - p + 1)
            elif rest > p:  # the next part must strictly exceed p
                rec(p, rest, partial * factor)

    rec(0, v, 1)
    return total


def distribution_by_closed_form(n: int) -> DistributionRecord:
    """Assemble the whole polynomial by one pass over all strictly
    increasing sequences with parts <= n (one per nonempty subset of 1..n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc: dict[int, int] = {}

    def rec(last: int, total_sum: int, partial: int):
        for p in range(last + 1, n + 1):
            factor = catalan(p - 1) if last == 0 else catalan(p - last)
            term = partial * factor
            s = total_sum + p
            acc[s] = acc.get(s, 0) + term * catalan(n - p + 1)
            rec(p, s, term)

    rec(0, 0, 1)
    return DistributionRecord(n, Poly(acc), "closed")


# ---------------------------------------------------------------------------
#  Exact moments and asymptotics
# ---------------------------------------------------------------------------


def first_moment_total(n: int) -> int:
    """Total avalanche mass sum_m m*a_m at size n:
    4^{n-1}(n+2) - (2n^2+n-1) C_{n-1}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 4 ** (n - 1) * (n + 2) - (2 * n * n + n - 1) * catalan(n - 1)


def mean_exact(n: int) -> Fraction:
    """Mean avalanche size over all trees with n edges, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(first_moment_total(n), n * catalan(n))


def variance_exact(n: int) -> Fraction:
    """Exact variance from the closed form.

    The printed source form carries a duplicated -1/(2n) term; with both
    copies the n=2 value disagrees with the brute-force second moment
    (7/16 vs 11/16), so a single -1/(2n) is used here. The test suite
    pins this choice against the enumeration oracle.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cn = catalan(n)
    base = (
        Fraction(4, 15) * n**3
        + Fraction(73, 60) * n**2
        + Fraction(26, 15) * n
        + Fraction(8, 15)
        - Fraction(1, 2 * n)
        - Fraction(1, 4 * n * n)
    )
    big = Fraction(
        16 ** (n - 1) * (n**4 + 6 * n**3 + 13 * n**2 + 12 * n + 4),
        n**2 * (n + 1) ** 2 * cn**2,
    )
    small = Fraction(
        4 ** (n - 1) * (n**3 + 4 * n**2 + 5 * n + 2),
        n**2 * (n + 1) * cn,
    )
    return base - big + small


def moment_report(n: int) -> MomentReport:
    """Exact moments plus asymptotic ratios rendered through 50-digit
    decimal division (the ratios are floats, correctly rounded)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mean = mean_exact(n)
    variance = variance_exact(n)
    with localcontext() as ctx:
        ctx.prec = _RATIO_PRECISION
        mean_dec = Decimal(mean.numerator) / Decimal(mean.denominator)
        scale = SQRT_PI / 4 * Decimal(n**3).sqrt()
        mean_ratio = float(mean_dec / scale)
        var_dec = Decimal(variance.numerator) / Decimal(variance.denominator)
        variance_ratio = float(var_dec / Decimal(n**3))
    return MomentReport(n, mean, variance, mean_ratio, variance_ratio)


# ---------------------------------------------------------------------------
#  Series identity
# ---------------------------------------------------------------------------


def avalanche_series(order: int) -> Series:
    """Series whose t^p coefficient is the size-p distribution polynomial."""
    return Series(order, recurrence_polys(order))


def functional_equation_mismatch(order: int, polys=None) -> int | None:
    """First t-order where the radical-free series identity

        A(t,q) (1 - t C(t)) = q t C(t) (C(qt) + A(qt, q))

    fails, or None if it holds through `order`. `polys` overrides the
    distribution polynomials (for sensitivity checks)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if polys is None:
        polys = recurrence_polys(order)
    a = Series(order, polys[: order + 1])
    c = catalan_series(order)
    tc = c.shift_t()
    # rearranged with the A-term moved right: A = q tC (C(qt)+A(qt,q)) + tC A
    rhs = (tc * (c.substitute_qt() + a.substitute_qt())).times_q() + tc * a
    for p in range(order + 1):
        if a.coeffs[p] != rhs.coeffs[p]:
            return p
    return None


def verify_functional_equation(order: int) -> bool:
    return functional_equation_mismatch(order) is None


# ---------------------------------------------------------------------------
#  Renormalized curve
# ---------------------------------------------------------------------------


def normalized_curve(n: int) -> list[CurvePoint]:
    """Points (i/n, p_i/C_n), one per nonzero coefficient, x ascending;
    y = 1 at i = 1 since p_1 = C_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    poly = recurrence_polys(n)[n]
    cn = catalan(n)
    return [CurvePoint(i / n, float(Fraction(c, cn))) for i, c in poly.terms()]


def format_float(v: float, precision: int) -> str:
    """Decimal text with `precision` significant digits, always keeping
    a decimal point (gnuplot- and spreadsheet-friendly)."""
    s = f"{v:.{precision}g}"
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def curve_csv_lines(points: list[CurvePoint], precision: int = 12) -> list[str]:
    lines = ["x,y"]
    for pt in points:
        lines.append(
            f"{format_float(pt.x, precision)},{format_float(pt.y, precision)}"
        )
    return lines
