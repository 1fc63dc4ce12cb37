"""Truncated power series and Poincaré series of symmetric products."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class TruncatedSeries:
    """Power series in ``z`` modulo ``z^(cutoff+1)`` with exact coefficients."""

    __slots__ = ("cutoff", "coeffs")

    def __init__(self, coeffs: Iterable, cutoff: int):
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        cs = [Fraction(c) for c in coeffs][: cutoff + 1]
        cs += [Fraction(0)] * (cutoff + 1 - len(cs))
        self.cutoff = cutoff
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, cutoff: int) -> TruncatedSeries:
        return cls([1], cutoff)

    @classmethod
    def monomial(cls, degree: int, cutoff: int, coeff=1) -> TruncatedSeries:
        cs = [0] * (cutoff + 1)
        if degree <= cutoff:
            cs[degree] = coeff
        return cls(cs, cutoff)

    def _check(self, other: TruncatedSeries):
        if self.cutoff != other.cutoff:
            raise ValueError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.cutoff, self.coeffs))

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.cutoff)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-a for a in self.coeffs], self.cutoff)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self.coeffs], self.cutoff)
        self._check(other)
        n = self.cutoff
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> TruncatedSeries:
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.cutoff
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / c0
        for d in range(1, n + 1):
            acc = sum((self.coeffs[k] * inv[d - k] for k in range(1, d + 1)), Fraction(0))
            inv[d] = -acc / c0
        return TruncatedSeries(inv, n)

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncatedSeries.one(self.cutoff)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, cutoff: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, cutoff)

    def valuation(self) -> int | None:
        """Lowest degree with a nonzero coefficient."""
        for d, c in enumerate(self.coeffs):
            if c:
                return d
        return None

    def as_ints(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(int(c))
        return out

    def __repr__(self):
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if d == 0 else f"{c}*z^{d}")
        return f"TruncatedSeries({' + '.join(terms) or '0'}, cutoff={self.cutoff})"


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    return f.inverse()


def series_pow(f: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    return f ** k


def free_algebra_series(betas: Sequence[int], cutoff: int) -> TruncatedSeries:
    """Poincaré series of the free graded-commutative algebra on a graded space.

    ``betas[d]`` is the dimension of the space in degree ``d``; odd classes
    contribute exterior factors ``1 + z^d`` and even ones polynomial factors
    ``1 / (1 - z^d)``.
    """
    if betas and betas[0]:
        raise ValueError("the generating space must be concentrated in positive degrees")
    out = TruncatedSeries.one(cutoff)
    for d, b in enumerate(betas):
        if d == 0 or not b or d > cutoff:
            continue
        if d % 2:
            out = out * (TruncatedSeries.one(cutoff) + TruncatedSeries.monomial(d, cutoff)) ** b
        else:
            out = out * (TruncatedSeries.one(cutoff) - TruncatedSeries.monomial(d, cutoff)).inverse() ** b
    return out


def _bivariate(betas: Sequence[int], n: int, cutoff: int, degree_zero: bool) -> list[TruncatedSeries]:
    """t-coefficients 0..n of prod (1 + z^d t)^b_odd / (1 - z^d t)^b_even.

    Degree-0 factors are included only when ``degree_zero`` is set.
    """
    zero = [Fraction(0)] * (cutoff + 1)
    table = [list(zero) for _ in range(n + 1)]
    table[0][0] = Fraction(1)
    for d, b in enumerate(betas):
        if d > cutoff or not b or (d == 0 and not degree_zero):
            continue
        for _ in range(b):
            if d % 2:
                # multiply by (1 + z^d t): descending t so each old row is used once
                for i in range(n, 0, -1):
                    row, prev = table[i], table[i - 1]
                    for k in range(cutoff - d, -1, -1):
                        if prev[k]:
                            row[k + d] += prev[k]
            else:
                # divide by (1 - z^d t): new_i = old_i + z^d new_(i-1)
                for i in range(1, n + 1):
                    row, prev = table[i], table[i - 1]
                    for k in range(cutoff - d + 1):
                        if prev[k]:
                            row[k + d] += prev[k]
    return [TruncatedSeries(row, cutoff) for row in table]


def _check_connected(betas: Sequence[int]):
    if not betas or betas[0] != 1:
        raise ValueError(f"connected algebras have beta_0 = 1, got {list(betas)[:1]}")


def g_components(betas: Sequence[int], n: int, cutoff: int) -> list[TruncatedSeries]:
    """The series G_0..G_n with ``sum_i G_i t^i = (1 - t) H(z, t)``.

    G_i is the Poincaré series of the kernel of the projection from the i-th
    symmetric product to the (i-1)-st.
    """
    _check_connected(betas)
    return _bivariate(betas, n, cutoff, degree_zero=False)


def macdonald_h_coefficient(betas: Sequence[int], n: int, cutoff: int) -> TruncatedSeries:
    """Coefficient of ``t^n`` in the full product H(z, t), degree-0 factor included."""
    _check_connected(betas)
    return _bivariate(betas, n, cutoff, degree_zero=True)[n]


def macdonald_sp_series(betas: Sequence[int], n: int, cutoff: int) -> TruncatedSeries:
    """Poincaré series of SP^n(A) through ``cutoff`` from the Betti numbers of A."""
    if n < 0:
        raise ValueError("n must be non-negative")
    comps = g_components(betas, n, cutoff)
    out = comps[0]
    for g in comps[1:]:
        out = out + g
    for c in out.coeffs:
        if c < 0 or c.denominator != 1:
            raise ValueError(f"invalid Betti numbers {list(betas)}: coefficient {c}")
    return out


def two_gen_product_series(r: int, s: int, n: int, cutoff: int, *, shifted: bool = False) -> TruncatedSeries:
    """Closed-form Poincaré series of SP^n(Λ(x, y)), deg x = 2r, deg y = 2s - 1.

    Factor i is ``(1 + z^(2(i-1)r + 2s - 1)) / (1 - z^(2ir))``.  With
    ``shifted=True`` the numerator exponent is ``2ir + 2s - 3`` instead; the two
    agree only for r = 1 and only the first is correct in general.
    """
    if r < 1 or s < 1 or n < 0:
        raise ValueError("need r >= 1, s >= 1, n >= 0")
    one = TruncatedSeries.one(cutoff)
    out = one
    for i in range(1, n + 1):
        odd = 2 * i * r + 2 * s - 3 if shifted else 2 * (i - 1) * r + 2 * s - 1
        num = one + TruncatedSeries.monomial(odd, cutoff)
        den = one - TruncatedSeries.monomial(2 * i * r, cutoff)
        out = out * num * den.inverse()
    return out


def series_to_json(f: TruncatedSeries) -> list[str]:
    """Coefficients as strings, integer-valued ones without a denominator."""
    return [str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}" for c in f.coeffs]
