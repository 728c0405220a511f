"""Truncated power series with exact rational coefficients, and the
generating functions of Euler characteristics and Moebius numbers built
from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from . import graphs as gr

DEFAULT_ORDER = 12


class SeriesError(ValueError):
    """Invalid series operation or a non-integral coefficient extraction."""


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class RationalSeries:
    """``a_0 + a_1 x + ... + a_N x^N + O(x^{N+1})``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise SeriesError("a series needs at least one coefficient")
        self.coeffs = tuple(cs)

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, c, order: int) -> RationalSeries:
        return cls([c], order)

    @classmethod
    def x(cls, order: int) -> RationalSeries:
        return cls([0, 1], order)

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int) -> RationalSeries:
        return cls([f(n) for n in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise SeriesError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n] if n >= 0 else Fraction(0)

    def truncate(self, order: int) -> RationalSeries:
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return RationalSeries(self.coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalSeries):
            N = min(self.order, other.order)
            return self.coeffs[: N + 1] == other.coeffs[: N + 1]
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms or ["0"]) + f" + O(x^{self.order + 1})"

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> RationalSeries:
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries([other], self.order)

    def __add__(self, other) -> RationalSeries:
        o = self._coerce(other)
        N = min(self.order, o.order)
        return RationalSeries([self.coeffs[i] + o.coeffs[i] for i in range(N + 1)])

    __radd__ = __add__

    def __neg__(self) -> RationalSeries:
        return RationalSeries([-c for c in self.coeffs])

    def __sub__(self, other) -> RationalSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RationalSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            c = _frac(other)
            return RationalSeries([a * c for a in self.coeffs])
        N = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(N + 1):
            s = Fraction(0)
            for i in range(n + 1):
                if a[i] and b[n - i]:
                    s += a[i] * b[n - i]
            out.append(s)
        return RationalSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> RationalSeries:
        a = self.coeffs
        if a[0] == 0:
            raise SeriesError("division by a series with zero constant term")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            s = sum((a[i] * out[n - i] for i in range(1, n + 1) if a[i]), Fraction(0))
            out.append(-s * inv0)
        return RationalSeries(out)

    def __truediv__(self, other) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            return self * (1 / _frac(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> RationalSeries:
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> RationalSeries:
        if e < 0:
            return self.inverse() ** -e
        out = RationalSeries([1], self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- calculus -----------------------------------------------------------

    def derivative(self) -> RationalSeries:
        if self.order == 0:
            return RationalSeries([0])
        return RationalSeries([i * self.coeffs[i] for i in range(1, self.order + 1)])

    def integrate(self, constant=0) -> RationalSeries:
        return RationalSeries([constant] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def exp(self) -> RationalSeries:
        a = self.coeffs
        if a[0] != 0:
            raise SeriesError("exp needs a zero constant term")
        b = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = sum((k * a[k] * b[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            b.append(s / n)
        return RationalSeries(b)

    def log(self) -> RationalSeries:
        a = self.coeffs
        if a[0] != 1:
            raise SeriesError("log needs constant term 1")
        c = [Fraction(0)]
        for n in range(1, self.order + 1):
            s = n * a[n] - sum((k * c[k] * a[n - k] for k in range(1, n) if c[k]), Fraction(0))
            c.append(s / n)
        return RationalSeries(c)

    def power(self, r) -> RationalSeries:
        """``self ** r`` for rational ``r``, as ``exp(r log self)``; constant term must be 1."""
        return (self.log() * _frac(r)).exp()

    def sqrt(self) -> RationalSeries:
        return self.power(Fraction(1, 2))

    def compose(self, inner: RationalSeries) -> RationalSeries:
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise SeriesError("composition needs an inner series with zero constant term")
        N = min(self.order, inner.order)
        acc = RationalSeries([self.coeffs[N]], N)
        g = inner.truncate(N)
        for c in reversed(self.coeffs[:N]):
            acc = acc * g + c
        return acc

    def reversion(self) -> RationalSeries:
        """Compositional inverse by Newton iteration with precision doubling."""
        a = self.coeffs
        if a[0] != 0:
            raise SeriesError("reversion needs zero constant term")
        if self.order < 1 or a[1] == 0:
            raise SeriesError("reversion needs an invertible linear coefficient")
        N = self.order
        h = RationalSeries([0, 1 / a[1]], N)
        prec = 1
        dself = self.derivative()
        while prec < N:
            prec = min(2 * prec, N)
            f = self.truncate(prec)
            hh = h.truncate(prec)
            err = f.compose(hh) - RationalSeries.x(prec)
            dval = RationalSeries(list(dself.coeffs[:prec]) + [0], prec).compose(hh)
            h = RationalSeries(list((hh - err / dval).coeffs), N)
        return h


def lagrange_reversion(f: RationalSeries) -> RationalSeries:
    """Oracle: ``[x^n] f^{-1} = (1/n) [x^{n-1}] (x / f)^n``."""
    if f.coeffs[0] != 0 or f.order < 1 or f.coeffs[1] == 0:
        raise SeriesError("reversion needs f(0) = 0 and f'(0) != 0")
    N = f.order
    q = RationalSeries(f.coeffs[1:] + (Fraction(0),)).inverse()  # x / f
    out = [Fraction(0)]
    p = RationalSeries([1], N)
    for n in range(1, N + 1):
        p = p * q
        out.append(p[n - 1] / n)
    return RationalSeries(out)


# ---------------------------------------------------------------------------
# EGF coefficient sequences

@dataclass(frozen=True)
class EgfSequence:
    """``b_n = n! [x^n]`` for ``n = 0..N``; every value is an integer."""

    values: tuple[int, ...]

    @classmethod
    def of(cls, s: RationalSeries) -> EgfSequence:
        out = []
        for n, c in enumerate(s.coeffs):
            v = c * factorial(n)
            if v.denominator != 1:
                raise SeriesError(f"n!·[x^{n}] = {v} is not an integer")
            out.append(int(v))
        return cls(tuple(out))

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def from_one(self) -> list[int]:
        return list(self.values[1:])

    def to_series(self) -> RationalSeries:
        return RationalSeries([Fraction(v, factorial(n)) for n, v in enumerate(self.values)])


# ---------------------------------------------------------------------------
# families

def p_poly(k: int, order: int) -> RationalSeries:
    """``1 + x + x^2/2! + ... + x^{k-1}/(k-1)!``."""
    return RationalSeries([Fraction(1, factorial(i)) for i in range(k)], order)


def _check_k(k: int) -> None:
    if k < 2:
        raise SeriesError(f"need k >= 2, got {k}")


def tau_series(k: int, order: int = DEFAULT_ORDER) -> EgfSequence:
    """Moebius numbers of the k-equal lattices, from ``ln p_k``."""
    _check_k(k)
    return EgfSequence.of(p_poly(k, order).log())


def alpha_series(k: int, order: int = DEFAULT_ORDER) -> EgfSequence:
    _check_k(k)
    ratio = p_poly(k - 1, order) / p_poly(k, order)
    return EgfSequence.of(ratio.log().truncate(order - 1).integrate())


def mobius_generating_series(k: int, order: int = DEFAULT_ORDER) -> RationalSeries:
    """``M_k`` with ``M_k'(x p_{k-1}/p_k) = ln(p_{k-1}/p_k)``."""
    _check_k(k)
    N = order
    ratio = p_poly(k - 1, N) / p_poly(k, N)
    y = RationalSeries.x(N) * ratio
    inner = y.reversion()
    deriv = ratio.log().compose(inner)
    return deriv.truncate(N - 1).integrate()


def mobius_series(k: int, order: int = DEFAULT_ORDER) -> EgfSequence:
    """Reduced Euler characteristics of the complexes of graphs that are not 2-connected k-graphs."""
    return EgfSequence.of(mobius_generating_series(k, order))


def _nminus3_core(order: int, with_quartic: bool) -> RationalSeries:
    # exponential formula over components: paths, and cycles (other than 4-cycles)
    N = order
    x = RationalSeries.x(N)
    one_plus = RationalSeries([1, 1], N)
    arg = x / (one_plus * 2) + x - x * x * Fraction(1, 4)
    if with_quartic:
        arg = arg - (x ** 4) * Fraction(1, 8)
    return -(arg.exp() / one_plus.sqrt())


def literal_closed_form(order: int, with_quartic: bool) -> RationalSeries:
    """``x - (exp(x/(2(1+x))) + x - x^2/4 [- x^4/8]) / sqrt(1+x)``, read with exp over the first term only."""
    N = order
    x = RationalSeries.x(N)
    one_plus = RationalSeries([1, 1], N)
    num = (x / (one_plus * 2)).exp() + x - x * x * Fraction(1, 4)
    if with_quartic:
        num = num - (x ** 4) * Fraction(1, 8)
    return x - num / one_plus.sqrt()


def integrality_failures(s: RationalSeries) -> list[int]:
    return [n for n, c in enumerate(s.coeffs) if (c * factorial(n)).denominator != 1]


def dual_euler_series_nminus3(order: int = DEFAULT_ORDER) -> tuple[RationalSeries, EgfSequence]:
    """Series for graphs whose components are paths or cycles other than 4-cycles."""
    if order < 1:
        raise SeriesError("order must be at least 1")
    s = _nminus3_core(order, True)
    return s, EgfSequence.of(s)


def cycles_paths_series(order: int = DEFAULT_ORDER) -> tuple[RationalSeries, EgfSequence]:
    """Series for graphs of maximum degree at most 2."""
    if order < 1:
        raise SeriesError("order must be at least 1")
    s = _nminus3_core(order, False)
    return s, EgfSequence.of(s)


# coefficients printed next to the closed forms, n -> coefficient
PRINTED_NMINUS3 = {0: Fraction(-1), 1: Fraction(-1), 4: Fraction(1, 4), 5: Fraction(1, 20),
                   6: Fraction(1, 20), 7: Fraction(-1, 27), 8: Fraction(-1, 224), 9: Fraction(-1, 480)}
PRINTED_CYCLES_PATHS = {0: Fraction(-1), 1: Fraction(-1), 4: Fraction(1, 8), 5: Fraction(-3, 40),
                        6: Fraction(1, 20), 7: Fraction(-1, 28), 8: Fraction(-17, 896),
                        9: Fraction(-7, 1920), 10: Fraction(-23, 2400)}


def printed_expansion_mismatches(s: RationalSeries, printed: dict[int, Fraction]) -> dict[int, tuple[Fraction, Fraction]]:
    """Printed coefficients (and implicit zeros below the top printed degree) that disagree with ``s``."""
    top = max(printed)
    out = {}
    for n in range(min(top, s.order) + 1):
        want = printed.get(n, Fraction(0))
        if s[n] != want:
            out[n] = (want, s[n])
    return out


# ---------------------------------------------------------------------------
# exponential formula

def partition_sum(a: Sequence[int], n: int) -> int:
    """Sum over set partitions of ``[n]`` of the product of ``a[|block|]``."""
    total = 0
    for p in gr.set_partitions(list(range(n))):
        prod = 1
        for b in p:
            prod *= a[len(b)]
        total += prod
    return total


def exponential_formula_check(a: Sequence[int] | EgfSequence, order: int) -> bool:
    """Partition sums of ``a`` agree with ``n! [x^n] exp(A)`` for ``n <= order``."""
    vals = list(a.values if isinstance(a, EgfSequence) else a)
    vals = (vals + [0] * (order + 1))[: order + 1]
    vals[0] = 0
    A = EgfSequence(tuple(vals)).to_series()
    B = EgfSequence.of(A.exp())
    return all(partition_sum(vals, n) == B[n] for n in range(order + 1))


# ---------------------------------------------------------------------------
# generating functions of Euler characteristics by connectivity

@dataclass(frozen=True)
class Table6Entry:
    """A printed table entry and the series whose EGF coefficients are the reduced Euler characteristics."""

    label: str
    printed: RationalSeries
    canonical: RationalSeries
    valid_from: int
    note: str

    def euler(self, n: int) -> int:
        if n < self.valid_from:
            raise SeriesError(f"{self.label} is defined from n = {self.valid_from}")
        return EgfSequence.of(self.canonical)[n]

    def printed_value(self, n: int) -> int:
        return EgfSequence.of(self.printed)[n]


def table6(order: int = DEFAULT_ORDER) -> dict[str, Table6Entry]:
    N = order
    x = RationalSeries.x(N)
    one_minus = RationalSeries([1, -1], N)
    F1 = RationalSeries([1, 1], N).log()
    F2 = one_minus * one_minus.log() + 1 + x
    G2 = -(x - x * x * Fraction(1, 2)).exp()
    G3 = _nminus3_core(N, True)
    return {
        "F_1": Table6Entry("F_1", F1, F1, 2, "as printed"),
        "F_2": Table6Entry("F_2", F2, mobius_generating_series(2, N), 3,
                           "printed coefficients are -chi~ for n >= 3"),
        "G_1": Table6Entry("G_1", RationalSeries.constant(-1, N), -x.exp(), 2,
                           "printed value -1 is chi~ for every n; its EGF is -exp(x)"),
        "G_2": Table6Entry("G_2", G2, G2, 1, "as printed"),
        "G_3": Table6Entry("G_3", literal_closed_form(N, True), G3, 1,
                           "closed form regrouped so the exponential formula holds"),
    }
