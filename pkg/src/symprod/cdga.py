"""Free CDGA models, cohomology, linearized homotopy and minimal models.

A :class:`CdgaModel` is a free graded-commutative algebra with a differential
given on generators.  Models built from an algebra truncated at some degree
carry that ``cutoff``; generators whose differential would land above it have
no recorded image, and every answer reports the degree through which it is
honest.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import DegreeOverflow, Element, FreeAlgebra, Generator, apply_derivation, format_element
from .linalg import Vector, rank, solve
from .newton import power_sum_algebra, reduce_power_sum
from .presentation import AlgebraData, Presentation, realize
from .symmetric import SpnElement, SymmetricPower, positive_free_algebra


class NotFreeError(ValueError):
    """The input is not a free algebra, or proposed generators are not free."""


class ReductionError(RuntimeError):
    pass


class CdgaModel:
    def __init__(
        self,
        algebra: FreeAlgebra,
        differential: Mapping[str, Element],
        cutoff: int | None = None,
        check: bool = True,
    ):
        self.algebra = algebra
        self.cutoff = cutoff
        self.differential: dict[str, Element] = {}
        for name, image in differential.items():
            if name not in algebra.index:
                raise ValueError(f"differential of unknown generator {name!r}")
            if image.algebra != algebra:
                raise ValueError(f"d {name} lives in a different algebra")
            want = algebra.gens[algebra.index[name]].degree + 1
            if image and (not image.is_homogeneous() or image.degree != want):
                raise ValueError(f"d {name} = {image} must be homogeneous of degree {want}")
            self.differential[name] = image
        if check:
            self.check_square_zero()

    def __repr__(self):
        return f"CdgaModel({self.algebra}, cutoff={self.cutoff})"

    @property
    def gens(self) -> tuple[Generator, ...]:
        return self.algebra.gens

    def generators_in_degree(self, k: int) -> list[Generator]:
        return [g for g in self.algebra.gens if g.degree == k]

    def d(self, e: Element) -> Element:
        return extend_derivation(self, e)

    def check_square_zero(self) -> None:
        for g in self.algebra.gens:
            image = self.differential.get(g.name)
            if image is None:
                continue
            try:
                dd = self.d(image)
            except DegreeOverflow:
                continue
            if dd:
                raise ValueError(f"d(d {g.name}) = {dd} is not zero")

    def linear_part(self, name: str) -> dict[str, Fraction]:
        image = self.differential[name]
        out = {}
        for m, c in image.linear_part().terms.items():
            out[self.algebra.gens[m.index(1)].name] = c
        return out

    def is_minimal(self) -> bool:
        return all(not self.linear_part(g) for g in self.differential)

    @classmethod
    def from_presentation(cls, p: Presentation) -> CdgaModel:
        if not p.is_free:
            raise NotFreeError("presentation has relations; a free model is required")
        return cls(p.algebra, p.d_images())

    def to_presentation(self) -> Presentation:
        return Presentation(self.algebra.gens, (), {k: v for k, v in self.differential.items() if v})

    def to_text(self) -> str:
        return self.to_presentation().to_text()

    def describe(self) -> dict:
        return {
            "generators": {g.name: g.degree for g in self.algebra.gens},
            "differential": {
                g.name: format_element(self.differential[g.name])
                for g in self.algebra.gens
                if g.name in self.differential and self.differential[g.name]
            },
            "cutoff": self.cutoff,
        }


def extend_derivation(m: CdgaModel, e: Element) -> Element:
    """Apply the differential to ``e`` through the graded Leibniz rule."""
    try:
        return apply_derivation(e, m.differential)
    except KeyError as exc:
        raise DegreeOverflow(f"differential of {exc.args[0]} is not known below cutoff {m.cutoff}") from None


@dataclass
class GradedDims:
    dims: tuple[int, ...]
    valid_through: int

    def as_dict(self) -> dict:
        return {"dims": list(self.dims), "valid_through": self.valid_through}


@dataclass
class HomotopyTable:
    dims: dict[int, int]
    valid_through: int

    def as_dict(self) -> dict:
        return {"dims": {str(k): v for k, v in sorted(self.dims.items())}, "valid_through": self.valid_through}


def _check_range(top: int, cutoff: int | None, what: str):
    if cutoff is not None and top > cutoff - 1:
        raise DegreeOverflow(f"{what} through degree {top} needs cutoff >= {top + 1}, have {cutoff}")


def _free_differential_rank(m: CdgaModel, k: int, cache: dict) -> int:
    if k < 0:
        return 0
    if k in cache:
        return cache[k]
    alg = m.algebra
    target = {mono: i for i, mono in enumerate(alg.basis(k + 1))}
    rows = []
    for mono in alg.basis(k):
        image = m.d(alg.monomial(mono))
        rows.append({target[t]: c for t, c in image.terms.items()})
    cache[k] = rank(rows)
    return cache[k]


def _algebra_differential_rank(a: AlgebraData, k: int, cache: dict) -> int:
    if k < 0:
        return 0
    if k not in cache:
        cache[k] = rank(a.d(i) for i in a.labels(k))
    return cache[k]


def cohomology_dims(obj: CdgaModel | AlgebraData, top: int) -> GradedDims:
    """dim H^k = dim ker(d_k) - dim im(d_(k-1)) for k = 0..top."""
    if isinstance(obj, CdgaModel):
        _check_range(top, obj.cutoff, "cohomology")
        cache: dict = {}
        dims = []
        for k in range(top + 1):
            size = len(obj.algebra.basis(k))
            dims.append(size - _free_differential_rank(obj, k, cache) - _free_differential_rank(obj, k - 1, cache))
        return GradedDims(tuple(dims), top)
    if isinstance(obj, AlgebraData):
        _check_range(top, obj.cutoff, "cohomology")
        cache = {}
        dims = []
        for k in range(top + 1):
            size = len(obj.labels(k))
            dims.append(
                size - _algebra_differential_rank(obj, k, cache) - _algebra_differential_rank(obj, k - 1, cache)
            )
        return GradedDims(tuple(dims), top)
    raise TypeError(f"cannot compute cohomology of {type(obj).__name__}")


def linearized_homotopy(m: CdgaModel, top: int) -> HomotopyTable:
    """Homology of the generator space under the linear part of the differential."""
    if not isinstance(m, CdgaModel):
        raise NotFreeError("linearized homotopy needs a free model")
    _check_range(top, m.cutoff, "linearized homotopy")
    by_degree: dict[int, list[str]] = {}
    for g in m.algebra.gens:
        by_degree.setdefault(g.degree, []).append(g.name)

    def lin_rank(k: int) -> int:
        if k < 1:
            return 0
        targets = {name: i for i, name in enumerate(by_degree.get(k + 1, []))}
        rows = []
        for name in by_degree.get(k, []):
            if name not in m.differential:
                raise DegreeOverflow(f"differential of {name} unknown")
            rows.append({targets[t]: c for t, c in m.linear_part(name).items()})
        return rank(rows)

    dims = {}
    for k in range(1, top + 1):
        dim = len(by_degree.get(k, [])) - lin_rank(k) - lin_rank(k - 1)
        if dim:
            dims[k] = dim
    return HomotopyTable(dims, top)


# -- models of symmetric products ---------------------------------------------------


def infinite_sp_model(a: AlgebraData) -> CdgaModel:
    """(Λ(A_+), D) with D extending the differential of A_+ as a derivation."""
    alg, to_label = positive_free_algebra(a)
    name_of = {label: name for name, label in to_label.items()}
    differential = {}
    for g in alg.gens:
        label = to_label[g.name]
        if a.degrees[label] + 1 > a.cutoff:
            continue
        vec = a.d(label) if a.has_differential else {}
        differential[g.name] = alg.element({alg.generator_monomial(name_of[j]): c for j, c in vec.items()})
    return CdgaModel(alg, differential, cutoff=a.cutoff)


def _power_sum_images(r_alg: FreeAlgebra, n: int) -> dict[str, Element]:
    return {
        **{f"p{k}": r_alg.gen(f"x{k}") for k in range(1, n + 1)},
        **{f"q{k}": r_alg.gen(f"y{k}") if f"y{k}" in r_alg.index else r_alg.zero() for k in range(1, n + 1)},
    }


def power_class(alg: FreeAlgebra, j: int, n: int) -> Element:
    """[x^j] in the generators x1..xn, Newton-reduced when j > n."""
    if j <= n:
        return alg.gen(f"x{j}")
    return power_sum_algebra(n).substitute(reduce_power_sum(j, n), _power_sum_images(alg, n), alg)


def two_gen_sp_model(r: int, q: int, n: int) -> CdgaModel:
    """Free model of SP^n(Λ(x, y), dy = x^q) with deg x = 2r, deg y = 2rq - 1.

    Generators ``xk = [x^k]`` (degree 2rk) and ``yk = [x^(k-1) y]`` for
    k = 1..n, with d(yk) = [x^(q-1+k)].
    """
    if r < 1 or q < 2 or n < 1:
        raise ValueError("need r >= 1, q >= 2, n >= 1")
    gens = [Generator(f"x{k}", 2 * r * k) for k in range(1, n + 1)]
    gens += [Generator(f"y{k}", 2 * r * (k - 1) + 2 * r * q - 1) for k in range(1, n + 1)]
    alg = FreeAlgebra(gens)
    differential = {f"x{k}": alg.zero() for k in range(1, n + 1)}
    for k in range(1, n + 1):
        differential[f"y{k}"] = power_class(alg, q - 1 + k, n)
    return CdgaModel(alg, differential)


def cpm_sp_model(m: int, n: int) -> CdgaModel:
    return two_gen_sp_model(1, m + 1, n)


def sp_free_model(p: Presentation, n: int) -> CdgaModel:
    """Free model of SP^n for the one- and two-generator free models that admit one.

    Recognized: Λ(x) and Λ(y) with zero differential, Λ(x, y) with zero
    differential, and Λ(x, y) with dy = c x^q, q >= 2 (x even, y odd).
    Anything else raises :class:`NotFreeError`.
    """
    if not p.is_free:
        raise NotFreeError("presentation has relations; a free model is required")
    if n < 1:
        raise ValueError("n must be at least 1")
    gens = p.generators
    even = [g for g in gens if not g.odd]
    odd = [g for g in gens if g.odd]
    d = {k: v for k, v in p.d_images().items() if v}
    if len(gens) == 1 and not d:
        g = gens[0]
        if g.odd:
            alg = FreeAlgebra([Generator("y1", g.degree)])
        else:
            alg = FreeAlgebra(Generator(f"x{k}", g.degree * k) for k in range(1, n + 1))
        return CdgaModel(alg, {})
    if len(even) != 1 or len(odd) != 1:
        raise NotFreeError("SP^n models are only built for Λ(x), Λ(y) and Λ(x, y)")
    x, y = even[0], odd[0]
    if not d:
        alg = FreeAlgebra(
            [Generator(f"x{k}", x.degree * k) for k in range(1, n + 1)]
            + [Generator(f"y{k}", x.degree * (k - 1) + y.degree) for k in range(1, n + 1)]
        )
        return CdgaModel(alg, {})
    image = d.get(y.name)
    if x.name in d or image is None or len(image.terms) != 1:
        raise NotFreeError("need dy = c x^q with x even and y odd")
    (mono, c), = image.terms.items()
    q = mono[p.algebra.index[x.name]]
    if q < 2:
        raise NotFreeError("dy has a linear part; reduce the model first")
    base = two_gen_sp_model(x.degree // 2, q, n)
    alg = base.algebra
    return CdgaModel(alg, {k: v * c for k, v in base.differential.items()})


@dataclass
class Reduction:
    model: CdgaModel
    pairs: list[tuple[str, str, Fraction]] = field(default_factory=list)


def contractible_pair_reduction(m: CdgaModel) -> Reduction:
    """Quotient out contractible pairs until the differential is decomposable.

    For a pair with d(u) = c*v + w, the quotient by the ideal (u, du) sets
    u = 0 and v = -w/c; pairs are taken lowest target degree first, ties by
    target name then source name.
    """
    pairs = []
    current = m
    while True:
        candidates = []
        for u, image in current.differential.items():
            for v, c in current.linear_part(u).items():
                g = current.algebra.gens[current.algebra.index[v]]
                candidates.append((g.degree, v, u, c))
        if not candidates:
            return Reduction(current, pairs)
        _, v, u, c = min(candidates, key=lambda t: t[:3])
        alg = current.algebra
        w = current.differential[u] - alg.gen(v) * c
        w0 = alg.substitute(w, {u: alg.zero()})
        if any(mono[alg.index[v]] for mono in w0.terms):
            raise ReductionError(f"eliminating ({u}, {v}) would substitute {v} into itself")
        keep = [g for g in alg.gens if g.name not in (u, v)]
        new_alg = FreeAlgebra(keep)
        images = {g.name: new_alg.gen(g.name) for g in keep}
        images[u] = new_alg.zero()
        images[v] = new_alg.zero()
        images[v] = alg.substitute(w0, images, new_alg) * (-1 / Fraction(c))
        differential = {}
        for g in keep:
            if g.name in current.differential:
                differential[g.name] = alg.substitute(current.differential[g.name], images, new_alg)
        pairs.append((u, v, Fraction(c)))
        current = CdgaModel(new_alg, differential, cutoff=current.cutoff)


# -- free generators inside a realized algebra ------------------------------------------


@dataclass
class FreenessReport:
    free_dims: list[int]
    target_dims: list[int]
    ranks: list[int]

    @property
    def passed(self) -> bool:
        return all(f == t == r for f, t, r in zip(self.free_dims, self.target_dims, self.ranks))

    def first_failure(self) -> int | None:
        for k, (f, t, r) in enumerate(zip(self.free_dims, self.target_dims, self.ranks)):
            if not f == t == r:
                return k
        return None


def _monomial_images(space: AlgebraData, alg: FreeAlgebra, vectors: Sequence[Vector], top: int):
    """Image in ``space`` of every monomial of degree <= top, built factor by factor."""
    images = {alg.unit_monomial: {0: Fraction(1)}}
    for k in range(1, top + 1):
        for mono in alg.basis(k):
            last = max(i for i, e in enumerate(mono) if e)
            prev = list(mono)
            prev[last] -= 1
            images[mono] = space.mul_vec(images[tuple(prev)], vectors[last])
    return images


def free_generator_check(space: AlgebraData, gens: Sequence[tuple[Generator, Vector]]) -> FreenessReport:
    """Compare Λ(gens) with ``space`` through its cutoff via the evaluation map."""
    alg = FreeAlgebra(g for g, _ in gens)
    vec_of = {g.name: v for g, v in gens}
    vectors = [vec_of[g.name] for g in alg.gens]
    images = _monomial_images(space, alg, vectors, space.cutoff)
    free_dims, target_dims, ranks = [], [], []
    for k in range(space.cutoff + 1):
        basis = alg.basis(k)
        free_dims.append(len(basis))
        target_dims.append(len(space.labels(k)))
        ranks.append(rank(images[mono] for mono in basis))
    return FreenessReport(free_dims, target_dims, ranks)


def model_from_generators(space: AlgebraData, gens: Sequence[tuple[Generator, Vector]]) -> CdgaModel:
    """Free model on ``gens`` whose differential is solved for inside ``space``.

    Raises :class:`NotFreeError` unless the generators freely generate
    ``space`` through its cutoff.
    """
    report = free_generator_check(space, gens)
    if not report.passed:
        k = report.first_failure()
        raise NotFreeError(
            f"degree {k}: free dim {report.free_dims[k]}, target dim {report.target_dims[k]}, rank {report.ranks[k]}"
        )
    alg = FreeAlgebra(g for g, _ in gens)
    vec_of = {g.name: v for g, v in gens}
    vectors = [vec_of[g.name] for g in alg.gens]
    images = _monomial_images(space, alg, vectors, space.cutoff)
    differential = {}
    for g in alg.gens:
        if g.degree + 1 > space.cutoff:
            continue
        target = space.d_vec(vec_of[g.name])
        basis = alg.basis(g.degree + 1)
        coeffs = solve([images[mono] for mono in basis], target)
        if coeffs is None:
            raise NotFreeError(f"d {g.name} is not in the span of the generators")
        differential[g.name] = alg.element({mono: c for mono, c in zip(basis, coeffs)})
    return CdgaModel(alg, differential, cutoff=space.cutoff)


def two_gen_presentation(r: int, ydeg: int, q: int | None) -> Presentation:
    """Λ(x, y) with deg x = 2r, deg y = ydeg and dy = x^q (no differential if q is None)."""
    alg = FreeAlgebra([Generator("x", 2 * r), Generator("y", ydeg)])
    differential = {} if q is None else {"y": alg.gen("x") ** q}
    return Presentation(alg.gens, (), differential)


def two_gen_generators(space: SymmetricPower, n: int) -> list[tuple[Generator, Vector]]:
    """[x^k] and [x^(k-1) y] for k = 1..n, as vectors in SP^n of a realized Λ(x, y)."""
    base = space.base
    alg = base.presentation.algebra
    ix, iy = alg.index["x"], alg.index["y"]
    dx, dy = alg.gens[ix].degree, alg.gens[iy].degree
    out = []
    for k in range(1, n + 1):
        for name, exps, deg in (
            (f"x{k}", {ix: k}, dx * k),
            (f"y{k}", {ix: k - 1, iy: 1}, dx * (k - 1) + dy),
        ):
            if deg > base.cutoff:
                continue
            mono = tuple(exps.get(i, 0) for i in range(len(alg.gens)))
            label = base.label_of_monomial(mono)
            out.append((Generator(name, deg), space.vector(SpnElement.bracket(base, n, label))))
    return out


def two_gen_brute_model(r: int, q: int, n: int, cutoff: int) -> CdgaModel:
    """The model of :func:`two_gen_sp_model`, recomputed inside SP^n by linear algebra."""
    base = realize(two_gen_presentation(r, 2 * r * q - 1, q), cutoff)
    space = SymmetricPower(base, n)
    return model_from_generators(space, two_gen_generators(space, n))


def prop_free_report(r: int, s: int, n: int, cutoff: int) -> FreenessReport:
    """Do [x^k], [x^(k-1) y] (k <= n) freely generate SP^n(Λ(x, y)) through ``cutoff``?"""
    base = realize(two_gen_presentation(r, 2 * s - 1, None), cutoff)
    space = SymmetricPower(base, n)
    return free_generator_check(space, two_gen_generators(space, n))


# -- sphere families -------------------------------------------------------------------


@dataclass
class EvenSphereResult:
    model: CdgaModel
    pairs: list
    constant: Fraction  # d[x^(n-1) y] = constant * [x]^(n+1)

    @property
    def sign(self) -> int:
        return 1 if self.constant > 0 else -1


def even_sphere_minimal_model(m: int, n: int) -> EvenSphereResult:
    """Minimal model of SP^n(S^(2m)) from Λ(x, y), dy = x^2, deg x = 2m."""
    red = contractible_pair_reduction(two_gen_sp_model(m, 2, n))
    model = red.model
    names = sorted(g.name for g in model.gens)
    top = f"y{n}"
    if names != sorted(["x1", top]):
        raise ReductionError(f"unexpected generators {names}")
    alg = model.algebra
    image = model.differential[top]
    target = alg.gen("x1") ** (n + 1)
    (mono,) = target.terms
    if set(image.terms) != {mono}:
        raise ReductionError(f"d {top} = {image} is not a multiple of x1^{n + 1}")
    return EvenSphereResult(model, red.pairs, image.terms[mono])


def odd_sphere_minimal_model(m: int, n: int, cutoff: int | None = None) -> CdgaModel:
    """Minimal model of SP^n(S^(2m-1)) computed inside SP^n(Λ(y)).

    [y] is shown to generate SP^n freely through ``cutoff`` and its
    differential is solved for, then contractible pairs are removed.
    """
    ydeg = 2 * m - 1
    cutoff = cutoff if cutoff is not None else 2 * ydeg + 1
    alg = FreeAlgebra([Generator("y", ydeg)])
    base = realize(Presentation(alg.gens), cutoff)
    space = SymmetricPower(base, n)
    label = base.label_of_monomial(alg.generator_monomial("y"))
    gens = [(Generator("y1", ydeg), space.vector(SpnElement.bracket(base, n, label)))]
    return contractible_pair_reduction(model_from_generators(space, gens)).model


def cpm_homotopy_table(m: int, n: int) -> dict[int, int]:
    """Rational homotopy of SP^n(CP^m): even degrees 2..2min(m,n), odd 2max(m,n)+1..2n+2m-1."""
    out = {k: 1 for k in range(2, 2 * min(m, n) + 1, 2)}
    out.update({k: 1 for k in range(2 * max(m, n) + 1, 2 * n + 2 * m, 2)})
    return out


def minimal_cpm_generators(m: int, n: int) -> list[str]:
    """Generator names of the minimal model of SP^n(CP^m)."""
    if n <= m:
        return [f"x{k}" for k in range(1, n + 1)] + [f"y{k}" for k in range(1, n + 1)]
    return [f"x{k}" for k in range(1, m + 1)] + [f"y{k}" for k in range(n - m + 1, n + 1)]


def quotient_ring_oracle(n: int, m: int, top: int) -> tuple[int, ...]:
    """Degreewise dimensions of Λ([x],...,[x^n]) / ([x^(m+1)], ..., [x^(m+n)])."""
    alg = FreeAlgebra(Generator(f"x{k}", 2 * k) for k in range(1, n + 1))
    relations = tuple(power_class(alg, m + j, n) for j in range(1, n + 1))
    return realize(Presentation(alg.gens, relations), top).betti()


def complete_intersection_series(n: int, m: int, top: int) -> tuple[int, ...]:
    """Hilbert series prod_j (1 - z^(2(m+j))) / (1 - z^(2j)) of a regular-sequence quotient."""
    from .series import TruncatedSeries

    one = TruncatedSeries.one(top)
    out = one
    for j in range(1, n + 1):
        out = out * (one - TruncatedSeries.monomial(2 * (m + j), top))
        out = out * (one - TruncatedSeries.monomial(2 * j, top)).inverse()
    return tuple(out.as_ints())


# -- rational Dold-Thom ----------------------------------------------------------------


@dataclass
class DoldThomReport:
    homotopy: dict[int, int]
    reduced_cohomology: dict[int, int]
    valid_through: int

    @property
    def passed(self) -> bool:
        return self.homotopy == self.reduced_cohomology

    def as_dict(self) -> dict:
        return {
            "homotopy": {str(k): v for k, v in sorted(self.homotopy.items())},
            "reduced_cohomology": {str(k): v for k, v in sorted(self.reduced_cohomology.items())},
            "valid_through": self.valid_through,
            "passed": self.passed,
        }


def dold_thom_check(a: AlgebraData, top: int) -> DoldThomReport:
    """Compare π_*(SP(X)) ⊗ Q, read off (Λ(A_+), D), with the reduced cohomology of (A, d)."""
    homotopy = linearized_homotopy(infinite_sp_model(a), top).dims
    coh = cohomology_dims(a, top).dims
    reduced = {k: c for k, c in enumerate(coh) if k > 0 and c}
    if coh[0] != 1:
        reduced[0] = coh[0] - 1
    return DoldThomReport(homotopy, reduced, top)


def random_cdga(rng: random.Random, ngens: int = 3, degrees: tuple[int, int] = (2, 6), attempts: int = 1000) -> Presentation:
    """A free CDGA with random generator degrees and a random valid differential.

    Differential images are random integer combinations of all monomials of
    the right degree (linear terms included), rejection-sampled until d∘d = 0.
    """
    lo, hi = degrees
    gens = [Generator(f"g{i + 1}", rng.randint(lo, hi)) for i in range(ngens)]
    alg = FreeAlgebra(gens)
    for _ in range(attempts):
        images = {}
        for g in alg.gens:
            basis = alg.basis(g.degree + 1)
            image = alg.zero()
            if basis and rng.random() < 0.75:
                for mono in basis:
                    if rng.random() < 0.6:
                        image = image + alg.monomial(mono) * rng.choice([-2, -1, 1, 2, 3])
            images[g.name] = image
        if all(not apply_derivation(images[g.name], images) for g in alg.gens):
            return Presentation(alg.gens, (), {k: v for k, v in images.items() if v})
    raise RuntimeError("no valid differential found")

