"""Exact finite-size quantities for the weighted path ensemble.

A model instance is a strictly increasing start sequence a_0=0 < a_1 < ... <
a_n; paths run from (a_i, 0) to (0, i) with west/north unit steps, a north
step at abscissa x carrying weight q**x, and distinct paths sharing no
vertex. This module computes partition functions and exit ("one-point")
quantities exactly, via two independent routes each: symbolic determinants
and closed products/residue sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InvalidArgument
from .qpoly import QPolynomial, poly_det, q_binomial, q_binomial_at

Rational = Union[int, Fraction]
Weight = Union[int, Fraction, float]


@dataclass(frozen=True)
class StartSequence:
    """Strictly increasing integer starting abscissas with a_0 = 0."""

    values: tuple[int, ...]

    def __init__(self, values: Sequence[int]):
        vals = tuple(int(v) for v in values)
        if len(vals) == 0:
            raise InvalidArgument("start sequence must be nonempty")
        if vals[0] != 0:
            raise InvalidArgument(f"start sequence must begin at 0, got {vals[0]}")
        for lo, hi in zip(vals, vals[1:]):
            if hi <= lo:
                raise InvalidArgument(f"start sequence must be strictly increasing, got {lo} then {hi}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        """Top path index; the sequence has n+1 entries."""
        return len(self.values) - 1

    @property
    def top(self) -> int:
        return self.values[-1]

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def dual_sequence(seq: StartSequence) -> StartSequence:
    """Complementary start sequence of the reflected second path family."""
    top = seq.top
    return StartSequence(tuple(top - seq.values[seq.n - i] for i in range(seq.n + 1)))


def _check_weight_q(q: Weight, *, allow_negative: bool = False) -> None:
    if isinstance(q, float):
        if not math.isfinite(q):
            raise InvalidArgument("q must be finite")
    if q == 1:
        raise InvalidArgument("q = 1 is excluded (uniform weights degenerate the formulas)")
    if q == 0:
        raise InvalidArgument("q = 0 is excluded")
    if not allow_negative and q < 0:
        raise InvalidArgument("q must be positive")


def lgv_matrix(seq: StartSequence) -> list[list[QPolynomial]]:
    """Path-counting matrix: entry (i, j) generates weighted paths (a_i,0) -> (0,j)."""
    return [[q_binomial(a + j, j) for j in range(seq.n + 1)] for a in seq.values]


def partition_det(seq: StartSequence) -> QPolynomial:
    """Partition function as an exact polynomial in q (determinant route)."""
    return poly_det(lgv_matrix(seq))


def partition_product(seq: StartSequence, q: Rational) -> Fraction:
    """Partition function at rational q via the factorized ratio form.

    Independent of the determinant route; q in {0, 1} is rejected because the
    ratio degenerates there (the determinant route covers q = 1 separately).
    """
    if isinstance(q, float):
        raise InvalidArgument("partition_product requires exact rational q")
    _check_weight_q(q, allow_negative=True)
    q = Fraction(q)
    n = seq.n
    num = Fraction(1)
    den = Fraction(1)
    powers = [q**a for a in seq.values]
    ref = [q**i for i in range(n + 1)]
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            num *= powers[j] - powers[i]
            den *= ref[j] - ref[i]
    exponent = n * (n + 1) * (2 * n + 1) // 6
    return q**exponent * num / den


def fraction_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix (Gaussian elimination)."""
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise InvalidArgument("fraction_det requires a square matrix")
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        pivot = m[k][k]
        det *= pivot
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            if factor:
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
    return det


def _exit_column_entry(a: int, n: int, ell: int, q: Rational) -> Fraction:
    # Weighted paths (a, 0) -> (ell, n); empty when the start is left of the exit.
    if a + n - ell < 0:
        return Fraction(0)
    return Fraction(q) ** (n * ell) * Fraction(q_binomial_at(a + n - ell, n, Fraction(q)))


def one_point_exit_det(seq: StartSequence, ell: int, q: Rational) -> Fraction:
    """Probability that the top path exits the strip at abscissa ell.

    Determinant route: replace the top-path column by the truncated-path
    counting column and divide by the unmodified determinant. Exact rational
    arithmetic throughout.
    """
    if isinstance(q, float):
        raise InvalidArgument("one_point_exit_det requires exact rational q")
    _check_weight_q(q)
    n = seq.n
    if not 0 <= ell <= seq.top:
        raise InvalidArgument(f"exit abscissa must lie in [0, {seq.top}], got {ell}")
    qf = Fraction(q)
    base = [[Fraction(q_binomial_at(a + j, j, qf)) for j in range(n + 1)] for a in seq.values]
    mod = [row[:n] + [_exit_column_entry(seq.values[i], n, ell, qf)] for i, row in enumerate(base)]
    denom = fraction_det(base)
    if denom == 0:
        raise InvalidArgument("degenerate instance: zero partition function")
    return fraction_det(mod) / denom


def _residue_terms_exact(seq: StartSequence, ell: int, q: Fraction, poles: Sequence[int], offsets: range) -> Fraction:
    powers = [q**a for a in seq.values]
    total = Fraction(0)
    for k in poles:
        num = Fraction(1)
        for s in offsets:
            num *= q ** (seq.values[k] + s - ell) - 1
        den = Fraction(1)
        for s in range(seq.n + 1):
            if s != k:
                den *= powers[k] - powers[s]
        total += num / den
    return total


def _residue_terms_float(seq: StartSequence, ell: int, q: float, poles: list[int], offsets: range) -> float:
    # Terms alternate in sign; accumulate with exact summation after ordering
    # by pole magnitude to keep the cancellation as mild as possible.
    powers = [q**a for a in seq.values]
    poles = sorted(poles, key=lambda k: abs(powers[k]))
    terms = []
    for k in poles:
        num = 1.0
        for s in offsets:
            num *= q ** (seq.values[k] + s - ell) - 1.0
        den = 1.0
        for s in range(seq.n + 1):
            if s != k:
                den *= powers[k] - powers[s]
        terms.append(num / den)
    return math.fsum(terms)


def one_point_exit(seq: StartSequence, ell: int, q: Weight, *, extended_poles: bool = False) -> Weight:
    """Probability that the top path exits at abscissa ell (residue route).

    The defining contour encircles the weight-poles q**a_k with a_k >= ell;
    extended_poles widens the contour down to a_k >= ell - n, which adds only
    identically-vanishing residues (kept as a cross-check switch).
    Exact for rational q; float q sums residues in increasing pole magnitude.
    """
    _check_weight_q(q)
    n = seq.n
    if not 0 <= ell <= seq.top:
        raise InvalidArgument(f"exit abscissa must lie in [0, {seq.top}], got {ell}")
    floor = ell - n if extended_poles else ell
    poles = [k for k in range(n + 1) if seq.values[k] >= floor]
    offsets = range(1, n + 1)
    exponent = n * ell - n * (n + 1) // 2
    if isinstance(q, float):
        return q**exponent * _residue_terms_float(seq, ell, q, poles, offsets)
    qf = Fraction(q)
    return qf**exponent * _residue_terms_exact(seq, ell, qf, poles, offsets)


def one_point_exit_dual(seq: StartSequence, ell: int, q: Weight, *, extended_poles: bool = False) -> Weight:
    """Exit probability seen from the complementary path family.

    Defined for n <= ell <= a_n + n; the contour encircles poles with
    a_k <= ell - n (extended_poles widens up to a_k <= ell, adding zeros).
    Complementary to the direct route: one_point_exit(seq, ell, q) plus
    one_point_exit_dual(seq, ell - 1, q) equals 1.
    """
    _check_weight_q(q)
    n = seq.n
    if not n <= ell <= seq.top + n:
        raise InvalidArgument(f"dual exit abscissa must lie in [{n}, {seq.top + n}], got {ell}")
    ceil = ell if extended_poles else ell - n
    poles = [k for k in range(n + 1) if seq.values[k] <= ceil]
    offsets = range(0, n)
    exponent = n * ell - n * (n - 1) // 2
    if isinstance(q, float):
        return q**exponent * _residue_terms_float(seq, ell, q, poles, offsets)
    qf = Fraction(q)
    return qf**exponent * _residue_terms_exact(seq, ell, qf, poles, offsets)


def free_path_weight(ell: int, r: int, q: Weight) -> Weight:
    """Weight of the unconstrained continuation above the strip.

    Counts the continuation of a path that exits at abscissa ell and ends r
    rows higher on the axis: one forced north step (weight q**ell) times the
    generating polynomial of the remaining staircase.
    """
    if ell < 0:
        raise InvalidArgument("exit abscissa must be >= 0")
    if r < 1:
        raise InvalidArgument("endpoint shift r must be >= 1")
    _check_weight_q(q)
    if isinstance(q, float):
        return q**ell * q_binomial_at(ell + r - 1, ell, q)
    qf = Fraction(q)
    return qf**ell * Fraction(q_binomial_at(ell + r - 1, ell, qf))


def free_path_weight_dual(seq: StartSequence, ell: int, r: int, q: Weight) -> Weight:
    """Continuation weight expressed through the complementary family."""
    if r < 1:
        raise InvalidArgument("endpoint shift r must be >= 1")
    n = seq.n
    if not n <= ell <= seq.top + n:
        raise InvalidArgument(f"dual exit abscissa must lie in [{n}, {seq.top + n}], got {ell}")
    _check_weight_q(q)
    ell_dual = seq.top + n - ell
    exponent = r * (ell + 1) + r * (r - 1) // 2
    if isinstance(q, float):
        return q**exponent * q_binomial_at(ell_dual + r - 1, ell_dual, q)
    qf = Fraction(q)
    return qf**exponent * Fraction(q_binomial_at(ell_dual + r - 1, ell_dual, qf))


def perturbed_partition(seq: StartSequence, r: int, q: Weight) -> Weight:
    """Partition-function ratio for the ensemble with the top endpoint moved up r rows."""
    if r < 1:
        raise InvalidArgument("endpoint shift r must be >= 1")
    _check_weight_q(q)
    terms = [
        one_point_exit(seq, ell, q) * free_path_weight(ell, r, q)
        for ell in range(seq.top + 1)
    ]
    if isinstance(q, float):
        return math.fsum(terms)
    return sum(terms, Fraction(0))


def most_likely_exit(seq: StartSequence, r: int, q: Weight) -> int:
    """Exit abscissa maximizing the exit-times-continuation weight.

    Ties resolve to the smallest abscissa. Rational q is evaluated exactly;
    float q (for example a fractional power of a rational base) runs in double
    precision.
    """
    if r < 1:
        raise InvalidArgument("endpoint shift r must be >= 1")
    _check_weight_q(q)
    best_ell = 0
    best = None
    for ell in range(seq.top + 1):
        w = one_point_exit(seq, ell, q) * free_path_weight(ell, r, q)
        if best is None or w > best:
            best = w
            best_ell = ell
    return best_ell
