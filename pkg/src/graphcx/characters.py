"""Class functions of the symmetric group indexed by cycle type.

Cycle types are partitions in decreasing order.  Values are exact
(``Fraction`` internally, integers where asserted).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Callable, Iterable, Sequence

from . import graphs as gr
from .complexes import SimplicialComplex, _bits

CycleType = tuple[int, ...]


class CharacterError(ValueError):
    """Invalid class-function input."""


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[CycleType, ...]:
    """Partitions of ``n`` in reverse lexicographic order."""
    out = []

    def rec(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, cap), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def centralizer_order(lam: CycleType) -> int:
    c = Counter(lam)
    return prod(i ** m * factorial(m) for i, m in c.items())


def class_size(lam: CycleType) -> int:
    return factorial(sum(lam)) // centralizer_order(lam)


def cycle_type(perm: Sequence[int]) -> CycleType:
    """Cycle type of a permutation of ``0..m-1`` given as its image list."""
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        v = s
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def representative(lam: CycleType) -> tuple[int, ...]:
    """Permutation of ``0..n-1`` with consecutive cycles of the given lengths."""
    perm = []
    start = 0
    for part in lam:
        perm.extend(start + (i + 1) % part for i in range(part))
        start += part
    return tuple(perm)


def mobius_mu(d: int) -> int:
    if d < 1:
        raise CharacterError("Moebius function needs a positive argument")
    out, m, p = 1, d, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def euler_phi(d: int) -> int:
    return sum(1 for j in range(1, d + 1) if gcd(j, d) == 1)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class ClassFunction:
    n: int
    values: dict[CycleType, Fraction]

    def __post_init__(self):
        if set(self.values) != set(partitions(self.n)):
            raise CharacterError(f"values must cover every cycle type of S_{self.n}")

    @classmethod
    def from_rule(cls, n: int, rule: Callable[[CycleType], object]) -> ClassFunction:
        return cls(n, {lam: Fraction(rule(lam)) for lam in partitions(n)})

    def __call__(self, lam: Iterable[int]) -> Fraction:
        return self.values[tuple(sorted(lam, reverse=True))]

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._same(other)
        return ClassFunction(self.n, {l: self.values[l] - other.values[l] for l in self.values})

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._same(other)
        return ClassFunction(self.n, {l: self.values[l] + other.values[l] for l in self.values})

    def _same(self, other: ClassFunction) -> None:
        if other.n != self.n:
            raise CharacterError(f"size mismatch: S_{self.n} vs S_{other.n}")

    def degree(self) -> Fraction:
        return self.values[(1,) * self.n] if self.n else self.values[()]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values.values())

    def integer_values(self) -> dict[CycleType, int]:
        if not self.is_integral():
            raise CharacterError("class function has non-integer values")
        return {l: int(v) for l, v in self.values.items()}

    def inner(self, other: ClassFunction) -> Fraction:
        self._same(other)
        total = sum(class_size(l) * self.values[l] * other.values[l] for l in self.values)
        return Fraction(total, factorial(self.n))

    def cyclic_trivial_multiplicity(self) -> Fraction:
        """Average over the cyclic group generated by an explicit n-cycle."""
        n = self.n
        c = [(i + 1) % n for i in range(n)]
        power = list(range(n))
        total = Fraction(0)
        for _ in range(n):
            total += self.values[cycle_type(power)]
            power = [c[v] for v in power]
        return total / n

    def to_json(self) -> dict[str, int | str]:
        return {" ".join(map(str, l)): (int(v) if v.denominator == 1 else str(v))
                for l, v in self.values.items()}


def trivial_character(n: int) -> ClassFunction:
    return ClassFunction.from_rule(n, lambda lam: 1)


def sign_character(n: int) -> ClassFunction:
    return ClassFunction.from_rule(n, lambda lam: (-1) ** (n - len(lam)))


# ---------------------------------------------------------------------------
# lie_n

def _lie_value(n: int, lam: CycleType) -> int:
    d = lam[0]
    if any(p != d for p in lam):
        return 0
    m = n // d
    return mobius_mu(d) * factorial(m - 1) * d ** (m - 1)


def lie_character(n: int) -> ClassFunction:
    """Closed form: ``mu(d) (n/d - 1)! d^(n/d - 1)`` on the class ``d^(n/d)``, zero elsewhere."""
    if n < 1:
        raise CharacterError("n >= 1 required")
    return ClassFunction.from_rule(n, lambda lam: _lie_value(n, lam))


# exact cyclotomic arithmetic: integer polynomials modulo Phi_n

def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    rem = num[: len(den) - 1] or [0]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
        if any(rem):
            raise CharacterError("cyclotomic division left a remainder")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _root_sum(n: int, exponents: Iterable[int]) -> int:
    """``sum zeta^j`` for a primitive n-th root ``zeta``; must reduce to an integer."""
    acc = [0] * n
    for j in exponents:
        acc[j % n] += 1
    phi = list(cyclotomic(n))
    _, rem = _poly_divmod(acc, phi)
    if any(rem[1:]):
        raise CharacterError("root-of-unity sum is not rational")
    return rem[0]


def lie_character_induced(n: int) -> ClassFunction:
    """Oracle: induce the faithful linear character of the cyclic group from explicit powers of an n-cycle."""
    if n < 1:
        raise CharacterError("n >= 1 required")
    c = [(i + 1) % n for i in range(n)]
    power = list(range(n))
    by_class: dict[CycleType, list[int]] = {}
    for j in range(n):
        by_class.setdefault(cycle_type(power), []).append(j)
        power = [c[v] for v in power]
    vals = {}
    for lam in partitions(n):
        js = by_class.get(lam)
        vals[lam] = Fraction(centralizer_order(lam) * _root_sum(n, js), n) if js else Fraction(0)
    return ClassFunction(n, vals)


# ---------------------------------------------------------------------------
# induction and omega

def induce_from_point_stabilizer(chi: ClassFunction) -> ClassFunction:
    """Induction from ``S_{n-1}`` (stabiliser of a point) to ``S_n``."""
    n = chi.n + 1

    def rule(lam: CycleType):
        ones = lam.count(1)
        if not ones:
            return 0
        rest = list(lam)
        rest.remove(1)
        return ones * chi.values[tuple(rest)]

    return ClassFunction.from_rule(n, rule)


def omega_n2(n: int) -> ClassFunction:
    """Character on the top homology of the complex of graphs that are not 2-connected."""
    if n < 3:
        raise CharacterError("n >= 3 required")
    out = induce_from_point_stabilizer(lie_character(n - 1)) - lie_character(n)
    out.integer_values()
    return out


def trivial_multiplicity(n: int) -> int:
    if n < 3:
        raise CharacterError("n >= 3 required")
    s = sum(mobius_mu(d) * euler_phi(d) * factorial(n // d - 1) * d ** (n // d - 1) for d in divisors(n))
    val = Fraction(factorial(n - 2)) - Fraction(s, n)
    if val.denominator != 1:
        raise CharacterError(f"w_{n} is not an integer")
    return int(val)


# ---------------------------------------------------------------------------
# fixed-point Moebius sums

def edge_permutation(n: int, perm: Sequence[int]) -> tuple[int, ...]:
    """Action on colex edge indices of a vertex permutation of ``0..n-1``."""
    ends = gr.edge_endpoints(n)
    idx = gr._subset_index(n, 2)
    out = []
    for a, b in ends:
        x, y = sorted((perm[a] + 1, perm[b] + 1))
        out.append(idx[(x, y)])
    return tuple(out)


def _orbits(perm: Sequence[int]) -> list[int]:
    seen = 0
    out = []
    for s in range(len(perm)):
        if seen >> s & 1:
            continue
        m = 0
        v = s
        while not m >> v & 1:
            m |= 1 << v
            v = perm[v]
        seen |= m
        out.append(m)
    return out


def _apply(perm: Sequence[int], face: int) -> int:
    return sum(1 << perm[v] for v in _bits(face))


def fixed_faces(perm: Sequence[int], cx: SimplicialComplex) -> list[int]:
    """Faces of ``cx`` mapped to themselves by ``perm``: unions of orbits that are faces."""
    orbits = _orbits(perm)
    out = []

    def rec(i: int, acc: int):
        out.append(acc)
        for j in range(i, len(orbits)):
            f = acc | orbits[j]
            if f in cx:
                rec(j + 1, f)

    rec(0, 0)
    return sorted(out)


def _check_stable(perm: Sequence[int], cx: SimplicialComplex) -> None:
    if sorted(perm) != list(range(cx.size)):
        raise CharacterError("not a permutation of the vertex universe")
    cx.enumerate()
    for f in cx.all_faces():
        if _apply(perm, f) not in cx:
            raise CharacterError("permutation does not stabilise the complex")


def fixed_point_moebius_trace(g: Sequence[int], cx: SimplicialComplex, method: str = "orbits") -> int:
    """Sum of ``mu(0, F)`` over the poset of ``g``-fixed faces.

    ``g`` permutes the vertex universe of ``cx`` (use :func:`edge_permutation`
    for graph complexes).  ``method='orbits'`` uses that every lower interval
    is Boolean on the orbits inside ``F``; ``'poset'`` runs the generic
    Moebius recursion.
    """
    _check_stable(g, cx)
    faces = fixed_faces(g, cx)
    if method == "orbits":
        orbits = _orbits(g)
        total = 0
        for f in faces:
            k = sum(1 for o in orbits if o & f)
            total += -1 if k % 2 else 1
        return total
    if method == "poset":
        from .posets import FinitePoset, moebius_vector

        P = FinitePoset.from_masks(faces, faces) if cx.size <= 64 else FinitePoset.from_leq(
            faces, lambda a, b: a & ~b == 0)
        return int(moebius_vector(P).sum())
    raise CharacterError(f"unknown method {method!r}")


def omega_via_fixed_points(n: int, method: str = "orbits") -> ClassFunction:
    """Class function ``lambda -> fixed_point_moebius_trace`` on Delta_n^2."""
    from .complexes import not_i_connected_complex

    cx = not_i_connected_complex(n, 2, 2).enumerate()
    return ClassFunction.from_rule(
        n, lambda lam: fixed_point_moebius_trace(edge_permutation(n, representative(lam)), cx, method)
    )
