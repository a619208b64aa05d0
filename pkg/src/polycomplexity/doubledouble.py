"""Double-double arithmetic: ~31 significant digits from paired doubles.

Built from the classic error-free transformations (Knuth two-sum, Dekker
split/product).  Used by the terminating hypergeometric and Bell-polynomial
sums, whose alternating terms cancel far more leading digits than plain
doubles can spare.  Magnitudes above ~1e291 overflow the Dekker splitter;
the series evaluated here stay well below that.
"""

from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    """s, e with s = fl(a+b) and a + b = s + e exactly."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def fast_two_sum(a: float, b: float) -> tuple[float, float]:
    """two_sum under the precondition |a| >= |b| (3 flops)."""
    s = a + b
    return s, b - (s - a)


def split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    """p, e with p = fl(a*b) and a * b = p + e exactly."""
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


class DD:
    """A double-double value hi + lo with |lo| <= ulp(hi)/2."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0):
        self.hi = hi
        self.lo = lo

    @staticmethod
    def from_product(a: float, b: float) -> "DD":
        """Exact product of two doubles as a DD."""
        return DD(*two_prod(a, b))

    @staticmethod
    def from_int(v: int) -> "DD":
        hi = float(v)
        return DD(hi, float(v - int(hi)))

    def __float__(self) -> float:
        return self.hi + self.lo

    def __abs__(self) -> "DD":
        return DD(-self.hi, -self.lo) if self.hi < 0.0 else DD(self.hi, self.lo)

    def __neg__(self) -> "DD":
        return DD(-self.hi, -self.lo)

    def __add__(self, other):
        if isinstance(other, DD):
            s, e = two_sum(self.hi, other.hi)
            e += self.lo + other.lo
        else:
            s, e = two_sum(self.hi, other)
            e += self.lo
        return DD(*fast_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, DD):
            return self + DD(-other.hi, -other.lo)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DD):
            p, e = two_prod(self.hi, other.hi)
            e += self.hi * other.lo + self.lo * other.hi
        else:
            other = float(other)
            p, e = two_prod(self.hi, other)
            e += self.lo * other
        return DD(*fast_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, DD):
            other = DD(float(other))
        q1 = self.hi / other.hi
        # r = self - q1 * other, evaluated in DD
        p, e = two_prod(q1, other.hi)
        e += q1 * other.lo
        r = self + DD(-p, -e)
        q2 = (r.hi + r.lo) / other.hi
        return DD(*fast_two_sum(q1, q2))

    def __rtruediv__(self, other):
        return DD(float(other)) / self

    def __repr__(self):
        return f"DD({self.hi!r}, {self.lo!r})"


DD_ZERO = DD(0.0)
DD_ONE = DD(1.0)
