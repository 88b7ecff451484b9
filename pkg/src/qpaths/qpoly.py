"""Exact polynomial arithmetic in the weight variable q.

Dense integer-coefficient polynomials with arbitrary-precision coefficients,
Gaussian (q-deformed) binomials, and a fraction-free Bareiss determinant for
polynomial matrices. Everything here is pure and exact; floats only appear
when a caller evaluates a polynomial at a float point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InvalidArgument

Scalar = Union[int, float, Fraction]

# Below this many coefficient products schoolbook multiplication wins over
# packing into big integers.
_KRONECKER_CUTOFF = 4096


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Multiply via evaluation at 2**bits: Python's big-int product does the
    # convolution in C. Negative coefficients are handled by splitting each
    # factor into positive and negative parts.
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    bound = 2 * max_a * max_b * min(len(a), len(b)) + 1
    bits = ((bound.bit_length() + 7) // 8) * 8
    nbytes = bits // 8

    def pack(part: list[int]) -> int:
        buf = bytearray()
        for c in part:
            buf += c.to_bytes(nbytes, "little")
        return int.from_bytes(bytes(buf), "little")

    def unpack(v: int, length: int) -> list[int]:
        raw = v.to_bytes(length * nbytes + nbytes, "little")
        return [
            int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little")
            for i in range(length)
        ]

    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    n_out = len(a) + len(b) - 1
    pos = pack(ap) * pack(bp) + pack(an) * pack(bn)
    neg = pack(ap) * pack(bn) + pack(an) * pack(bp)
    pl = unpack(pos, n_out)
    nl = unpack(neg, n_out)
    return [p - q for p, q in zip(pl, nl)]


class QPolynomial:
    """Polynomial in q with integer coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise InvalidArgument(f"coefficients must be int, got {type(c).__name__}")
        self.coeffs = _trim(cs)

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "QPolynomial":
        if exponent < 0:
            raise InvalidArgument("monomial exponent must be >= 0")
        return cls([0] * exponent + [coefficient])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return QPolynomial(out)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial.zero()
        if len(a) * len(b) <= _KRONECKER_CUTOFF:
            out = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca:
                    for j, cb in enumerate(b):
                        out[i + j] += ca * cb
            return QPolynomial(out)
        return QPolynomial(_kronecker_mul(a, b))

    def scale(self, k: int) -> "QPolynomial":
        return QPolynomial([k * c for c in self.coeffs])

    def shift(self, exponent: int) -> "QPolynomial":
        """Multiply by q**exponent."""
        if exponent < 0:
            raise InvalidArgument("shift exponent must be >= 0")
        if self.is_zero():
            return self
        return QPolynomial([0] * exponent + list(self.coeffs))

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        """Exact polynomial division; raises if the division leaves a remainder."""
        if other.is_zero():
            raise InvalidArgument("division by the zero polynomial")
        if self.is_zero():
            return QPolynomial.zero()
        rem = list(self.coeffs)
        div = other.coeffs
        dlead = div[-1]
        dn = len(div)
        qn = len(rem) - dn + 1
        if qn <= 0:
            raise InvalidArgument("inexact polynomial division (degree too low)")
        quot = [0] * qn
        for k in range(qn - 1, -1, -1):
            head = rem[k + dn - 1]
            if head % dlead != 0:
                raise InvalidArgument("inexact polynomial division")
            c = head // dlead
            quot[k] = c
            if c:
                for j in range(dn):
                    rem[k + j] -= c * div[j]
        if any(rem):
            raise InvalidArgument("inexact polynomial division (nonzero remainder)")
        return QPolynomial(quot)

    def __call__(self, q: Scalar) -> Scalar:
        return self.eval(q)

    def eval(self, q: Scalar) -> Scalar:
        """Horner evaluation; exact for int/Fraction arguments."""
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __repr__(self) -> str:
        if self.is_zero():
            return "QPolynomial(0)"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return "QPolynomial(" + " + ".join(parts) + ")"


def q_binomial(a: int, b: int) -> QPolynomial:
    """Gaussian binomial of a over b as an exact polynomial in q.

    Zero when b < 0 or b > a; the coefficients are the standard nonnegative
    integers (partitions inside a (a-b) x b box). Negative a is rejected.
    """
    if a < 0:
        raise InvalidArgument(f"q_binomial requires a >= 0, got a={a}")
    if b < 0 or b > a:
        return QPolynomial.zero()
    b = min(b, a - b)
    # Multiply in the numerator factor and divide out the denominator factor
    # one s at a time; every intermediate is itself a Gaussian binomial, so
    # each division is exact.
    result = QPolynomial.one()
    for s in range(1, b + 1):
        num = QPolynomial.monomial(s + a - b) - QPolynomial.one()
        den = QPolynomial.monomial(s) - QPolynomial.one()
        result = (result * num).exact_div(den)
    return result


def q_binomial_at(a: int, b: int, q: Scalar) -> Scalar:
    """Gaussian binomial evaluated at a scalar q via the factor product.

    Exact for Fraction/int q; float q uses plain IEEE arithmetic (all factors
    carry the same sign for q > 0, so the product is well conditioned).
    """
    if a < 0:
        raise InvalidArgument(f"q_binomial_at requires a >= 0, got a={a}")
    if b < 0 or b > a:
        return 0 * q
    b = min(b, a - b)
    if isinstance(q, float):
        out = 1.0
        for s in range(1, b + 1):
            out *= (q ** (s + a - b) - 1.0) / (q**s - 1.0)
        return out
    num = 1
    den = 1
    for s in range(1, b + 1):
        num *= q ** (s + a - b) - 1
        den *= q**s - 1
    res = Fraction(num, den) if not isinstance(num, Fraction) else num / den
    if isinstance(q, int) and res.denominator == 1:
        return int(res)
    return res


def poly_det(matrix: Sequence[Sequence[QPolynomial]]) -> QPolynomial:
    """Determinant of a square QPolynomial matrix, Bareiss fraction-free.

    Every division in the elimination is exact in the polynomial ring, so no
    rational functions appear at any point.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise InvalidArgument("poly_det requires a square matrix")
    if n == 0:
        return QPolynomial.one()
    m = [[entry for entry in row] for row in matrix]
    sign = 1
    prev = QPolynomial.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return QPolynomial.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = QPolynomial.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_eval(p: QPolynomial, q: Scalar) -> Scalar:
    """Evaluate p at q (Horner); exact when q is int or Fraction."""
    return p.eval(q)
