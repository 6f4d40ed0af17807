"""Exact arithmetic kernel: Catalan numbers, sparse polynomials in q,
and truncated series in t with polynomial coefficients.

Coefficients are Python ints (arbitrary precision); exact rationals are
``fractions.Fraction``. All values are immutable after construction and
safe to share across threads.
"""

from __future__ import annotations

import re
import threading

__all__ = ["Poly", "Series", "catalan", "catalan_series"]


# ---------------------------------------------------------------------------
#  Catalan numbers
# ---------------------------------------------------------------------------

_catalan_lock = threading.Lock()
_catalan_table = [1]


def catalan(k: int) -> int:
    """k-th Catalan number binom(2k, k)/(k+1); memoized, O(n) multiplications."""
    if k < 0:
        raise ValueError("catalan: k must be >= 0")
    if k >= len(_catalan_table):
        with _catalan_lock:
            t = _catalan_table
            while len(t) <= k:
                m = len(t) - 1
                # C_{m+1} = C_m * 2(2m+1)/(m+2); the division is always exact
                t.append(t[m] * (4 * m + 2) // (m + 2))
    return _catalan_table[k]


# ---------------------------------------------------------------------------
#  Sparse polynomials in q
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"(?:(\d+)\*?)?q(?:\^(\d+))?")


class Poly:
    """Sparse polynomial in q, mapping exponent -> nonzero int coefficient.

    Zero coefficients are never stored, so structurally equal polynomials
    compare and hash equal. Instances are immutable by convention; every
    operation returns a new polynomial.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, v in items:
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                nv = c.get(e, 0) + v
                if nv:
                    c[e] = nv
                elif e in c:
                    del c[e]
        self._c = c

    # -- inspection --------------------------------------------------------

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        """Unordered (exponent, coefficient) view; use terms() for sorted."""
        return self._c.items()

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def degree(self) -> int:
        """Largest exponent, or -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    def moment(self, r: int = 0) -> int:
        """Sum of c_e * e^r over all stored terms (r=0 gives the total mass)."""
        if r == 0:
            return sum(self._c.values())
        return sum(c * e**r for e, c in self._c.items())

    # -- arithmetic --------------------------------------------------------

    def shift(self, k: int) -> "Poly":
        """Multiply by q^k: every exponent increases by k."""
        if k < 0:
            raise ValueError("shift: k must be >= 0")
        if k == 0 or not self._c:
            return self
        out = Poly()
        out._c = {e + k: c for e, c in self._c.items()}
        return out

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            nv = c.get(e, 0) + v
            if nv:
                c[e] = nv
            else:
                del c[e]
        out = Poly()
        out._c = c
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Poly()
            out = Poly()
            out._c = {e: c * other for e, c in self._c.items()}
            return out
        if isinstance(other, Poly):
            acc: dict[int, int] = {}
            for e1, c1 in self._c.items():
                for e2, c2 in other._c.items():
                    e = e1 + e2
                    nv = acc.get(e, 0) + c1 * c2
                    if nv:
                        acc[e] = nv
                    elif e in acc:
                        del acc[e]
            out = Poly()
            out._c = acc
            return out
        return NotImplemented

    __rmul__ = __mul__

    # -- identity ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"

    # -- external forms ----------------------------------------------------

    def to_text(self) -> str:
        """Human form: "c*q^e" terms joined by " + ", ascending; unit
        coefficients omitted; the zero polynomial is "0"."""
        if not self._c:
            return "0"
        parts = []
        for e, c in self.terms():
            parts.append(f"q^{e}" if c == 1 else f"{c}*q^{e}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "Poly":
        s = text.strip()
        if s == "0":
            return cls()
        pairs = []
        for raw in s.split("+"):
            term = raw.replace(" ", "")
            if not term:
                raise ValueError(f"empty term in polynomial {text!r}")
            m = _TERM_RE.fullmatch(term)
            if m:
                coeff = int(m.group(1)) if m.group(1) else 1
                exp = int(m.group(2)) if m.group(2) else 1
            elif term.isdigit():
                coeff, exp = int(term), 0
            else:
                raise ValueError(f"cannot parse polynomial term {raw.strip()!r}")
            pairs.append((exp, coeff))
        return cls(pairs)

    def to_pairs(self) -> list[list]:
        """JSON form: [[exponent, coefficient-as-decimal-string], ...] ascending."""
        return [[e, str(c)] for e, c in self.terms()]

    @classmethod
    def from_pairs(cls, pairs) -> "Poly":
        return cls((int(e), int(c)) for e, c in pairs)


# ---------------------------------------------------------------------------
#  Truncated series in t with Poly coefficients
# ---------------------------------------------------------------------------


class Series:
    """Series in t truncated at a fixed order; coefficient of t^p is a Poly.

    Every binary operation requires equal truncation orders.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(coeffs)
        if order < 0:
            raise ValueError("series order must be >= 0")
        if len(coeffs) != order + 1:
            raise ValueError(
                f"series of order {order} needs {order + 1} coefficients, "
                f"got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs

    def _check_order(self, other: "Series"):
        if self.order != other.order:
            raise ValueError(
                f"series order mismatch: {self.order} vs {other.order}"
            )

    def __add__(self, other: "Series") -> "Series":
        self._check_order(other)
        return Series(
            self.order, (a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "Series") -> "Series":
        """Cauchy product truncated at the common order."""
        if not isinstance(other, Series):
            return NotImplemented
        self._check_order(other)
        out = []
        for p in range(self.order + 1):
            acc = Poly()
            for i in range(p + 1):
                a, b = self.coeffs[i], other.coeffs[p - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return Series(self.order, out)

    def substitute_qt(self) -> "Series":
        """Formal substitution t -> qt: coefficient of t^p gains a factor q^p."""
        return Series(
            self.order, (c.shift(p) for p, c in enumerate(self.coeffs))
        )

    def shift_t(self) -> "Series":
        """Multiply by t, truncating at the order."""
        return Series(self.order, (Poly(),) + self.coeffs[:-1])

    def times_q(self) -> "Series":
        """Multiply every coefficient by q."""
        return Series(self.order, (c.shift(1) for c in self.coeffs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        inner = ", ".join(f"[t^{p}] {c.to_text()}" for p, c in enumerate(self.coeffs))
        return f"Series(order={self.order}: {inner})"


def catalan_series(order: int) -> Series:
    """The Catalan generating function sum C_k t^k, truncated at `order`."""
    return Series(order, (Poly({0: catalan(k)}) for k in range(order + 1)))
