"""Exact dense polynomials in one indeterminate ``k`` and interpolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "BigPolynomial",
    "EvaluationPoint",
    "IntegralityError",
    "InterpolationError",
    "assert_integral",
    "coefficient",
    "evaluate",
    "interpolate",
    "interpolate_consecutive",
]


class InterpolationError(ValueError):
    pass


class IntegralityError(ValueError):
    def __init__(self, power: int, value: Fraction):
        super().__init__(f"coefficient of k^{power} is not an integer: {value}")
        self.power = power
        self.value = value


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be exact, got {type(c).__name__}")


@dataclass(frozen=True)
class BigPolynomial:
    """Polynomial with exact rational coefficients, lowest power first.

    Trailing zeros are stripped on construction, so the zero polynomial has
    ``coefficients == ()`` and ``degree is None``.
    """

    coefficients: tuple[Fraction, ...] = ()

    def __init__(self, coefficients: Iterable = ()):
        cs = [_frac(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def monomial(cls, power: int, coeff=1) -> BigPolynomial:
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int | None:
        return len(self.coefficients) - 1 if self.coefficients else None

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __getitem__(self, power: int) -> Fraction:
        return coefficient(self, power)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return BigPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return BigPolynomial([-c for c in self.coefficients])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return BigPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return BigPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = BigPolynomial([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for p in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[p]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if p == 0:
                body = str(mag)
            else:
                var = "k" if p == 1 else f"k^{p}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _coerce(x):
    if isinstance(x, BigPolynomial):
        return x
    if isinstance(x, (int, Rational)):
        return BigPolynomial([x])
    return NotImplemented


@dataclass(frozen=True)
class EvaluationPoint:
    x: int
    y: int


def evaluate(p: BigPolynomial, x) -> Fraction:
    """Horner evaluation with exact arithmetic."""
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def coefficient(p: BigPolynomial, power: int) -> Fraction:
    if power < 0:
        raise ValueError(f"negative power {power}")
    cs = p.coefficients
    return cs[power] if power < len(cs) else Fraction(0)


def _as_pairs(points) -> list[tuple[Fraction, Fraction]]:
    pairs = []
    for pt in points:
        if isinstance(pt, EvaluationPoint):
            x, y = pt.x, pt.y
        else:
            x, y = pt
        pairs.append((_frac(x), _frac(y)))
    return pairs


def interpolate(points: Sequence[EvaluationPoint] | Sequence[tuple]) -> BigPolynomial:
    """Unique polynomial of degree < len(points) through ``points``.

    Uses Newton divided differences over :class:`~fractions.Fraction`, then
    expands the Newton form into monomial coefficients.  Points may be
    :class:`EvaluationPoint` instances or ``(x, y)`` pairs.
    """
    pts = _as_pairs(points)
    if not pts:
        raise InterpolationError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        dup = next(x for x in xs if xs.count(x) > 1)
        raise InterpolationError(f"duplicate abscissa {dup}")
    n = len(pts)

    # in-place divided differences: dd[i] becomes f[x_0..x_i]
    dd = [y for _, y in pts]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])

    # Horner on the Newton form: c <- c*(k - x_i) + dd[i]
    coeffs = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        xi = xs[i]
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            nxt[p + 1] += c
            nxt[p] -= c * xi
        nxt[0] += dd[i]
        coeffs = nxt
    return BigPolynomial(coeffs)


def interpolate_consecutive(values: Sequence[int]) -> BigPolynomial:
    """Interpolate integer samples taken at ``k = 0, 1, ..., len(values)-1``.

    Same result as :func:`interpolate` on those nodes, but runs in integer
    arithmetic: forward differences give the binomial-basis coefficients,
    and only the final division by ``d!`` is rational.
    """
    if not values:
        raise InterpolationError("need at least one point")
    d = len(values) - 1
    diffs = [int(v) for v in values]
    newton = []
    for _ in range(d + 1):
        newton.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    # P(k) = sum_j newton[j] * k(k-1)...(k-j+1) / j!; scale by d! to stay integral
    ratio = [1] * (d + 1)  # ratio[j] = d!/j!
    for j in range(d, 0, -1):
        ratio[j - 1] = ratio[j] * j
    scaled = [0] * (d + 1)
    falling = [1]  # ascending coefficients of k(k-1)...(k-j+1)
    for j in range(d + 1):
        if j:
            nxt = [0] * (len(falling) + 1)
            for p, c in enumerate(falling):
                nxt[p + 1] += c
                nxt[p] -= c * (j - 1)
            falling = nxt
        w = newton[j] * ratio[j]
        if w:
            for p, c in enumerate(falling):
                scaled[p] += w * c
    return BigPolynomial(Fraction(c, ratio[0]) for c in scaled)


def assert_integral(p: BigPolynomial) -> list[int]:
    """Integer coefficient list of ``p`` (``[0]`` for the zero polynomial)."""
    if p.is_zero():
        return [0]
    out = []
    for power, c in enumerate(p.coefficients):
        if c.denominator != 1:
            raise IntegralityError(power, c)
        out.append(c.numerator)
    return out
