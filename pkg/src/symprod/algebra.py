"""Free graded-commutative algebras over Q with exact sparse elements.

A monomial is a tuple of exponents aligned with the generator order of its
:class:`FreeAlgebra`.  Generators are ordered by ``(degree, name)``; every
Koszul sign is absorbed into coefficients when a product is formed, so two
elements are equal exactly when their term dictionaries are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class DegreeOverflow(ArithmeticError):
    """A computation needed data above the degree cutoff it was given."""


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"generator {self.name!r} must have positive degree, got {self.degree}")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


def koszul_sign(degrees: Sequence[int], perm: Sequence[int]) -> int:
    """Sign picked up by rearranging homogeneous factors.

    ``perm[k]`` is the original position of the factor that ends up in slot
    ``k`` (0-based), so the rearranged word is ``[w[perm[0]], w[perm[1]], ...]``.
    Every pair of odd factors whose relative order is reversed contributes -1.
    """
    if len(degrees) != len(perm):
        raise ValueError("word and permutation have different lengths")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{len(perm) - 1}")
    odd_positions = [p for p in perm if degrees[p] % 2]
    inversions = sum(
        1
        for i in range(len(odd_positions))
        for j in range(i + 1, len(odd_positions))
        if odd_positions[i] > odd_positions[j]
    )
    return -1 if inversions % 2 else 1


class FreeAlgebra:
    """Polynomial algebra on the even generators tensor exterior algebra on the odd ones."""

    def __init__(self, gens: Iterable[Generator]):
        gens = sorted(gens, key=lambda g: (g.degree, g.name))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.gens: tuple[Generator, ...] = tuple(gens)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        self._degrees = tuple(g.degree for g in self.gens)
        self._odd = tuple(g.odd for g in self.gens)
        self._basis_cache: dict[int, list[Monomial]] = {}

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.gens)
        return f"FreeAlgebra({inner})"

    def __len__(self):
        return len(self.gens)

    # -- monomials ---------------------------------------------------------

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.gens)

    def generator_monomial(self, name: str) -> Monomial:
        m = [0] * len(self.gens)
        m[self.index[name]] = 1
        return tuple(m)

    def degree_of(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self._degrees))

    def word_length(self, m: Monomial) -> int:
        return sum(m)

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Signed canonical product, or ``None`` when an odd generator repeats."""
        sign = 1
        odd_a = 0  # odd generators of ``a`` seen so far with index greater than j
        # b's odd generator j must move left past every odd generator of a with index > j
        for j in range(len(self.gens) - 1, -1, -1):
            if not self._odd[j]:
                continue
            if b[j] and a[j]:
                return None
            if b[j] and odd_a % 2:
                sign = -sign
            if a[j]:
                odd_a += 1
        return sign, tuple(x + y for x, y in zip(a, b))

    def basis(self, d: int) -> list[Monomial]:
        """All monomials of degree ``d`` in ascending lexicographic order."""
        if d < 0:
            return []
        cached = self._basis_cache.get(d)
        if cached is not None:
            return cached
        out: list[list[int]] = []
        n = len(self.gens)

        def rec(i: int, remaining: int, acc: list[int]):
            if i == n:
                if remaining == 0:
                    out.append(list(acc))
                return
            deg = self._degrees[i]
            top = 1 if self._odd[i] else remaining // deg
            for e in range(min(top, remaining // deg) + 1):
                acc.append(e)
                rec(i + 1, remaining - e * deg, acc)
                acc.pop()

        rec(0, d, [])
        result = sorted(tuple(m) for m in out)
        self._basis_cache[d] = result
        return result

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for g, e in zip(self.gens, m):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- elements ----------------------------------------------------------

    def element(self, terms: Mapping[Monomial, object] | None = None) -> Element:
        return Element(self, terms or {})

    def one(self) -> Element:
        return Element(self, {self.unit_monomial: 1})

    def zero(self) -> Element:
        return Element(self, {})

    def gen(self, name: str) -> Element:
        return Element(self, {self.generator_monomial(name): 1})

    def monomial(self, m: Monomial) -> Element:
        return Element(self, {m: 1})

    def substitute(self, e: Element, images: Mapping[str, Element], target: FreeAlgebra | None = None) -> Element:
        """Image of ``e`` under the algebra map sending each generator to ``images[name]``.

        Generators missing from ``images`` go to the same-named generator of
        ``target`` (or of ``self`` when no target is given).
        """
        target = target or self
        imgs = []
        for g in self.gens:
            img = images.get(g.name)
            if img is None:
                img = target.gen(g.name)
            if img.algebra != target:
                raise ValueError(f"image of {g.name} lives in the wrong algebra")
            imgs.append(img)
        out = target.zero()
        for m, c in e.terms.items():
            term = target.one()
            for img, exp in zip(imgs, m):
                for _ in range(exp):
                    term = term * img
                    if not term:
                        break
                if not term:
                    break
            out = out + term * c
        return out


def free_basis_in_degree(gens: Iterable[Generator], d: int) -> list[Monomial]:
    return FreeAlgebra(gens).basis(d)


def _scalar(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Element:
    """Sparse rational linear combination of monomials in a :class:`FreeAlgebra`."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Monomial, object]):
        self.algebra = algebra
        clean = {}
        for m, c in terms.items():
            c = _scalar(c)
            if c:
                clean[tuple(m)] = c
        self.terms: dict[Monomial, Fraction] = clean

    def _check(self, other: Element):
        if self.algebra != other.algebra:
            raise ValueError("elements belong to different algebras")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.algebra.one() * other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Element) -> Element:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self.algebra, out)

    def __neg__(self) -> Element:
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __mul__(self, other) -> Element:
        if isinstance(other, (int, Fraction)):
            return Element(self.algebra, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        alg = self.algebra
        out: dict[Monomial, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                prod = alg.mono_mul(a, b)
                if prod is None:
                    continue
                sign, m = prod
                out[m] = out.get(m, 0) + sign * ca * cb
        return Element(alg, out)

    def __rmul__(self, other) -> Element:
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> Element:
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {self.algebra.degree_of(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element; ``None`` for zero."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop()

    def homogeneous_part(self, d: int) -> Element:
        alg = self.algebra
        return Element(alg, {m: c for m, c in self.terms.items() if alg.degree_of(m) == d})

    def linear_part(self) -> Element:
        return Element(self.algebra, {m: c for m, c in self.terms.items() if sum(m) == 1})

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Numeric value at a point; only defined when every generator involved is even."""
        alg = self.algebra
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for g, e in zip(alg.gens, m):
                if e:
                    if g.odd:
                        raise ValueError(f"cannot evaluate odd generator {g.name}")
                    term *= _scalar(values[g.name]) ** e
            total += term
        return total

    def __repr__(self):
        return format_element(self)


def format_scalar(c: Fraction) -> str:
    c = _scalar(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(e: Element) -> str:
    """Render in the presentation DSL syntax, terms in ascending monomial order."""
    if not e.terms:
        return "0"
    alg = e.algebra
    pieces = []
    for i, m in enumerate(sorted(e.terms)):
        c = e.terms[m]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = alg.mono_str(m)
        if body == "1":
            text = format_scalar(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_scalar(mag)} {body}"
        if i == 0:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f"{sign} {text}")
    return " ".join(pieces)


def apply_derivation(e: Element, images: Mapping[str, Element]) -> Element:
    """Extend a degree +1 map on generators to ``e`` by the graded Leibniz rule.

    A generator absent from ``images`` raises ``KeyError``; callers decide what
    a missing image means.
    """
    alg = e.algebra
    out = alg.zero()
    for m, c in e.terms.items():
        prefix = alg.one()
        prefix_degree = 0
        for i, (g, exp) in enumerate(zip(alg.gens, m)):
            if not exp:
                continue
            rest = list(m)
            rest[i] = 0
            for j in range(i):
                rest[j] = 0
            suffix = alg.monomial(tuple(rest))
            dg = images[g.name]
            # D(g^exp) = exp * g^(exp-1) * Dg, valid for even g and for odd g with exp = 1
            lowered = [0] * len(alg.gens)
            lowered[i] = exp - 1
            piece = alg.monomial(tuple(lowered)) * dg * exp
            sign = -1 if prefix_degree % 2 else 1
            out = out + prefix * piece * suffix * (sign * c)
            prefix = prefix * alg.monomial(tuple(exp if k == i else 0 for k in range(len(alg.gens))))
            prefix_degree += exp * g.degree
    return out
