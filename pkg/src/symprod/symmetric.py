"""Finite symmetric products SP^n(A) as signed invariants of tensor powers.

A tensor word is a tuple of basis labels of an :class:`AlgebraData`.  The
invariant subspace has a basis of signed orbit sums, one per sorted word with
no repeated odd label; the sorted word is the orbit's canonical
representative and carries coefficient +1.

Writing ``N`` for the full symmetrizer ``sum over all permutations``, an
orbit sum is ``N(w) / |Stab(w)|``.  Products and differentials of invariants
are computed as ``N(...)`` of a single non-symmetric tensor, which avoids
expanding both factors.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import factorial
from typing import Iterable, Mapping, Sequence

from .algebra import DegreeOverflow, Element, FreeAlgebra, Generator
from .linalg import Vector, add_scaled, rank
from .presentation import AlgebraData

Word = tuple[int, ...]

DEFAULT_MAX_CELLS = 2_000_000


class GuardrailError(RuntimeError):
    """An enumeration would exceed the configured size bound."""


def max_cells() -> int:
    raw = os.environ.get("SYMPROD_MAX_CELLS")
    return int(raw) if raw else DEFAULT_MAX_CELLS


def word_degree(a: AlgebraData, w: Sequence[int]) -> int:
    return sum(a.degrees[i] for i in w)


def stabilizer_size(w: Sequence[int]) -> int:
    out = 1
    for mult in Counter(w).values():
        out *= factorial(mult)
    return out


def sort_sign(a: AlgebraData, w: Sequence[int]) -> tuple[int, Word] | None:
    """Koszul sign of sorting ``w``, or ``None`` if an odd label repeats."""
    odd = [i for i in w if a.is_odd(i)]
    if len(set(odd)) != len(odd):
        return None
    inversions = sum(1 for x in range(len(odd)) for y in range(x + 1, len(odd)) if odd[x] > odd[y])
    return (-1 if inversions % 2 else 1), tuple(sorted(w))


def _distinct_permutations(rep: Word) -> Iterable[Word]:
    counts = Counter(rep)
    keys = sorted(counts)
    n = len(rep)
    acc: list[int] = []

    def rec():
        if len(acc) == n:
            yield tuple(acc)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                acc.append(k)
                yield from rec()
                acc.pop()
                counts[k] += 1

    return rec()


def orbit(a: AlgebraData, rep: Word) -> dict[Word, int]:
    """Signed orbit sum of a canonical word as ``{word: ±1}``."""
    cache = a.cache.setdefault("orbit", {})
    hit = cache.get(rep)
    if hit is None:
        hit = {}
        for w in _distinct_permutations(rep):
            s = sort_sign(a, w)
            if s is None:
                raise ValueError(f"orbit of {rep} vanishes")
            hit[w] = s[0]
        cache[rep] = hit
    return hit


@dataclass(frozen=True, order=True)
class SymClass:
    """Basis element of SP^n(A): the signed orbit sum of ``rep``."""

    rep: Word

    def orbit_sum(self, a: AlgebraData) -> dict[Word, int]:
        return orbit(a, self.rep)

    def degree(self, a: AlgebraData) -> int:
        return word_degree(a, self.rep)

    def factor_names(self, a: AlgebraData) -> list[str]:
        return [a.names[i] for i in self.rep]


def symmetrize(a: AlgebraData, w: Sequence[int]) -> SymClass | None:
    """Orbit class of ``w``, or ``None`` when the signed orbit cancels."""
    s = sort_sign(a, w)
    if s is None:
        return None
    return SymClass(s[1])


def _collect(a: AlgebraData, tensor: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    """Coefficients of ``N(tensor)`` at canonical words."""
    out: dict[Word, Fraction] = {}
    for w, c in tensor.items():
        s = sort_sign(a, w)
        if s is None:
            continue
        sign, rep = s
        out[rep] = out.get(rep, 0) + sign * c
    return {rep: c * stabilizer_size(rep) for rep, c in out.items() if c}


def _word_product(a: AlgebraData, u: Word, v: Word) -> dict[Word, Fraction]:
    """Componentwise product ``(u_1 ⊗ ... ⊗ u_n)(v_1 ⊗ ... ⊗ v_n)`` with Koszul sign."""
    exponent = 0
    seen_odd_u = 0
    # v_j passes u_(j+1), ..., u_n
    for j in range(len(u) - 1, -1, -1):
        if a.is_odd(v[j]) and seen_odd_u % 2:
            exponent += 1
        if a.is_odd(u[j]):
            seen_odd_u += 1
    sign = -1 if exponent % 2 else 1
    factors = [a.mul(x, y) for x, y in zip(u, v)]
    out: dict[Word, Fraction] = {}
    for combo in cartesian(*(f.items() for f in factors)):
        c = Fraction(sign)
        for _, coeff in combo:
            c *= coeff
        w = tuple(k for k, _ in combo)
        out[w] = out.get(w, 0) + c
    return out


def _word_differential(a: AlgebraData, w: Word) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    prefix_degree = 0
    for i, label in enumerate(w):
        sign = -1 if prefix_degree % 2 else 1
        for k, c in a.d(label).items():
            new = w[:i] + (k,) + w[i + 1 :]
            out[new] = out.get(new, 0) + sign * c
        prefix_degree += a.degrees[label]
    return out


def _terms_degree(a: AlgebraData, terms: Mapping[Word, Fraction]) -> set[int]:
    return {word_degree(a, w) for w in terms}


def sp_mul_terms(a: AlgebraData, u: Mapping[Word, Fraction], v: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    """Product of two invariants given in the orbit basis."""
    if not u or not v:
        return {}
    top = max(_terms_degree(a, u)) + max(_terms_degree(a, v))
    if top > a.cutoff:
        raise DegreeOverflow(f"product of degree {top} is above cutoff {a.cutoff}")
    expanded: dict[Word, Fraction] = {}
    for rep, c in u.items():
        for w, s in orbit(a, rep).items():
            expanded[w] = expanded.get(w, 0) + s * c
    out: dict[Word, Fraction] = {}
    for rep_b, cb in v.items():
        tensor: dict[Word, Fraction] = {}
        for w, c in expanded.items():
            for ww, cc in _word_product(a, w, rep_b).items():
                tensor[ww] = tensor.get(ww, 0) + c * cc
        scale = cb / stabilizer_size(rep_b)
        add_scaled(out, _collect(a, tensor), scale)
    return out


def sp_d_terms(a: AlgebraData, u: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    """Induced differential of an invariant given in the orbit basis."""
    out: dict[Word, Fraction] = {}
    for rep, c in u.items():
        add_scaled(out, _collect(a, _word_differential(a, rep)), c / stabilizer_size(rep))
    return out


def _enumerate_reps(a: AlgebraData, n: int, d: int) -> list[Word]:
    if d > a.cutoff:
        raise DegreeOverflow(f"degree {d} is above cutoff {a.cutoff}")
    positive = [i for i in range(1, len(a)) if a.degrees[i] <= d]
    limit = max_cells()
    out: list[Word] = []
    acc: list[int] = []

    def rec(start: int, remaining: int, slots: int):
        if remaining == 0:
            out.append((0,) * (n - len(acc)) + tuple(acc))
            if len(out) > limit:
                raise GuardrailError(f"more than {limit} basis words (SYMPROD_MAX_CELLS)")
            return
        if slots == 0:
            return
        for idx in range(start, len(positive)):
            lab = positive[idx]
            deg = a.degrees[lab]
            if deg > remaining:
                continue
            odd = deg % 2 == 1
            if odd and acc and acc[-1] == lab:
                continue
            acc.append(lab)
            rec(idx, remaining - deg, slots - 1)
            acc.pop()

    rec(0, d, n)
    return sorted(out)


def sp_basis(a: AlgebraData, n: int, d: int) -> list[SymClass]:
    """Orbit-sum basis of SP^n(A) in degree ``d``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cache = a.cache.setdefault("sp_basis", {})
    key = (n, d)
    hit = cache.get(key)
    if hit is None:
        hit = [SymClass(w) for w in _enumerate_reps(a, n, d)]
        cache[key] = hit
    return hit


class SpnElement:
    """Element of SP^n(A) as a sparse combination of orbit classes."""

    __slots__ = ("base", "n", "terms")

    def __init__(self, base: AlgebraData, n: int, terms: Mapping[Word, object] | None = None):
        self.base = base
        self.n = n
        clean: dict[Word, Fraction] = {}
        for rep, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if len(rep) != n or tuple(sorted(rep)) != tuple(rep):
                raise ValueError(f"{rep} is not a canonical word of length {n}")
            clean[tuple(rep)] = c
        self.terms = clean

    @classmethod
    def one(cls, base: AlgebraData, n: int) -> SpnElement:
        return cls(base, n, {(0,) * n: 1})

    @classmethod
    def bracket(cls, base: AlgebraData, n: int, label: int) -> SpnElement:
        """``[a] = a⊗1⊗...⊗1 + ... + 1⊗...⊗1⊗a`` for a basis label ``a``."""
        if n == 0:
            return cls(base, 0, {} if label else {(): 1})
        if label == 0:
            return cls(base, n, {(0,) * n: n})
        return cls(base, n, {(0,) * (n - 1) + (label,): 1})

    def _check(self, other: SpnElement):
        if self.base is not other.base or self.n != other.n:
            raise ValueError("elements of different symmetric products")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SpnElement):
            return NotImplemented
        return self.base is other.base and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: SpnElement) -> SpnElement:
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, 1)
        return SpnElement(self.base, self.n, out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> SpnElement:
        if isinstance(other, (int, Fraction)):
            return SpnElement(self.base, self.n, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, SpnElement):
            return NotImplemented
        return sp_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> SpnElement:
        out = SpnElement.one(self.base, self.n)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return _terms_degree(self.base, self.terms)

    def tensor(self) -> dict[Word, Fraction]:
        """Full expansion in ``A^{⊗n}``."""
        out: dict[Word, Fraction] = {}
        for rep, c in self.terms.items():
            for w, s in orbit(self.base, rep).items():
                out[w] = out.get(w, 0) + s * c
        return out

    def d(self) -> SpnElement:
        return SpnElement(self.base, self.n, sp_d_terms(self.base, self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for rep in sorted(self.terms):
            names = ",".join(self.base.names[i] for i in rep)
            parts.append(f"{self.terms[rep]}*<{names}>")
        return " + ".join(parts)


def sp_mul(u: SpnElement, v: SpnElement) -> SpnElement:
    u._check(v)
    return SpnElement(u.base, u.n, sp_mul_terms(u.base, u.terms, v.terms))


def project(u: SpnElement) -> SpnElement:
    """Apply the augmentation to the last tensor factor: SP^n(A) -> SP^(n-1)(A).

    On an orbit sum this keeps exactly the words ending in the unit; since the
    unit label sorts first, those are the classes whose representative starts
    with 0.
    """
    if u.n < 1:
        raise ValueError("cannot project SP^0")
    return SpnElement(u.base, u.n - 1, {rep[1:]: c for rep, c in u.terms.items() if rep[0] == 0})


class SymmetricPower(AlgebraData):
    """SP^n(A) realized as an :class:`AlgebraData` on the orbit basis.

    Products and the induced differential are computed lazily.  The cutoff
    is inherited from ``base``.
    """

    def __init__(self, base: AlgebraData, n: int):
        self.base = base
        self.n = n
        classes = [c for d in range(base.cutoff + 1) for c in sp_basis(base, n, d)]
        self.classes = classes
        self.label_of = {c.rep: i for i, c in enumerate(classes)}
        names = ["<" + ",".join(base.names[i] for i in c.rep) + ">" for c in classes]
        degrees = [c.degree(base) for c in classes]

        def product(i: int, j: int) -> Vector:
            terms = sp_mul_terms(base, {classes[i].rep: Fraction(1)}, {classes[j].rep: Fraction(1)})
            return self._to_vector(terms)

        differential = None
        if base.has_differential:

            def differential(i: int) -> Vector:
                return self._to_vector(sp_d_terms(base, {classes[i].rep: Fraction(1)}))

        super().__init__(names, degrees, base.cutoff, product, differential)

    def _to_vector(self, terms: Mapping[Word, Fraction]) -> Vector:
        return {self.label_of[rep]: c for rep, c in terms.items()}

    def vector(self, u: SpnElement) -> Vector:
        if u.base is not self.base or u.n != self.n:
            raise ValueError("element of a different symmetric product")
        return self._to_vector(u.terms)

    def element(self, vec: Mapping[int, Fraction]) -> SpnElement:
        return SpnElement(self.base, self.n, {self.classes[i].rep: c for i, c in vec.items()})


def sp_model(a: AlgebraData, n: int) -> SymmetricPower:
    """SP^n(A) with the differential induced from ``A^{⊗n}``."""
    return SymmetricPower(a, n)


# -- comparison map from the free algebra on A_+ ----------------------------------


def positive_free_algebra(a: AlgebraData) -> tuple[FreeAlgebra, dict[str, int]]:
    """Λ(A_+) on the positive basis of ``a`` (through its cutoff).

    Generators are named ``[label]``; the returned map sends generator names
    back to labels of ``a``.
    """
    cache = a.cache.get("positive_free")
    if cache is None:
        gens, to_label = [], {}
        for i in range(1, len(a)):
            name = f"[{a.names[i]}]"
            gens.append(Generator(name, a.degrees[i]))
            to_label[name] = i
        cache = (FreeAlgebra(gens), to_label)
        a.cache["positive_free"] = cache
    return cache


def phi_n(a: AlgebraData, e: Element, n: int) -> SpnElement:
    """Image of ``e ∈ Λ(A_+)`` under the algebra map sending a to [a]."""
    alg, to_label = positive_free_algebra(a)
    if e.algebra != alg:
        raise ValueError("element is not in Λ(A_+) of this algebra")
    memo = a.cache.setdefault("phi", {})
    out = SpnElement(a, n)
    for m, c in e.terms.items():
        key = (n, m)
        img = memo.get(key)
        if img is None:
            img = SpnElement.one(a, n)
            for g, exp in zip(alg.gens, m):
                for _ in range(exp):
                    img = img * SpnElement.bracket(a, n, to_label[g.name])
            memo[key] = img
        out = out + img * c
    return out


@dataclass
class PhiReport:
    n: int
    free_dims: list[int]
    sp_dims: list[int]
    ranks: list[int]
    passed: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "free_dims": self.free_dims,
            "sp_dims": self.sp_dims,
            "ranks": self.ranks,
            "passed": self.passed,
        }


def phi_ranks(a: AlgebraData, n: int, top: int) -> PhiReport:
    """Rank of φ_n from Λ(A_+)_d onto SP^n(A)_d for every d ≤ top.

    ``passed`` means surjective in every degree; injectivity is checked by
    :func:`verify_phi_iso`.
    """
    alg, _ = positive_free_algebra(a)
    free_dims, sp_dims, ranks = [], [], []
    for d in range(top + 1):
        basis = sp_basis(a, n, d)
        col = {c.rep: k for k, c in enumerate(basis)}
        rows = []
        for m in alg.basis(d):
            img = phi_n(a, alg.monomial(m), n)
            rows.append({col[rep]: c for rep, c in img.terms.items()})
        free_dims.append(len(rows))
        sp_dims.append(len(basis))
        ranks.append(rank(rows))
    passed = all(r == s for r, s in zip(ranks, sp_dims))
    return PhiReport(n, free_dims, sp_dims, ranks, passed)


def verify_phi_iso(a: AlgebraData, n: int) -> PhiReport:
    """Check that φ_n is bijective in every degree ≤ n."""
    if a.cutoff < n:
        raise DegreeOverflow(f"cutoff {a.cutoff} is below n = {n}")
    report = phi_ranks(a, n, n)
    report.passed = all(f == s == r for f, s, r in zip(report.free_dims, report.sp_dims, report.ranks))
    return report


def stable_sp_degree(a: AlgebraData, d: int) -> tuple[int, list]:
    """Dimension and monomial basis of SP(A)_d, i.e. of Λ(A_+)_d."""
    if d > a.cutoff:
        raise DegreeOverflow(f"degree {d} is above cutoff {a.cutoff}")
    alg, _ = positive_free_algebra(a)
    basis = alg.basis(d)
    return len(basis), basis
