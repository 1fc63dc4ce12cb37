from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symprod.fixtures import fixture_algebra, fixture_names
from symprod.linalg import rank
from symprod.presentation import parse_presentation, realize
from symprod.series import g_components, macdonald_sp_series
from symprod.symmetric import (
    GuardrailError,
    SpnElement,
    SymmetricPower,
    orbit,
    phi_n,
    phi_ranks,
    positive_free_algebra,
    project,
    sp_basis,
    stable_sp_degree,
    symmetrize,
)

BASE = realize(parse_presentation("gen a:1 b:2 c:3;\nrel b^2;"), 8)


def _swap(a, tensor, i):
    """Act on a tensor by the transposition of slots i and i+1, with Koszul sign."""
    out = {}
    for w, c in tensor.items():
        sign = -1 if a.degrees[w[i]] % 2 and a.degrees[w[i + 1]] % 2 else 1
        v = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
        out[v] = out.get(v, 0) + sign * c
    return {w: c for w, c in out.items() if c}


def _tensor_mul(a, s, t):
    """Componentwise product in A^{⊗n} with the Koszul sign of interleaving."""
    out = {}
    for u, cu in s.items():
        for v, cv in t.items():
            sign = 1
            for i in range(len(u)):
                for j in range(i):
                    if a.degrees[u[i]] % 2 and a.degrees[v[j]] % 2:
                        sign = -sign
            terms = {(): Fraction(cu * cv * sign)}
            for x, y in zip(u, v):
                prod = a.mul(x, y)
                terms = {w + (k,): c * e for w, c in terms.items() for k, e in prod.items()}
            for w, c in terms.items():
                out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def _elements(a, n, max_degree):
    classes = [c for d in range(max_degree + 1) for c in sp_basis(a, n, d)]
    return st.dictionaries(st.sampled_from(classes), st.integers(-2, 2), max_size=3).map(
        lambda t: SpnElement(a, n, {c.rep: v for c, v in t.items()})
    )


@pytest.mark.parametrize("n", [2, 3])
def test_orbit_sums_are_invariant(n):
    for d in range(6):
        for cls in sp_basis(BASE, n, d):
            t = orbit(BASE, cls.rep)
            for i in range(n - 1):
                assert _swap(BASE, t, i) == t


def test_symmetrize_repeated_odd_label_vanishes():
    (a,) = BASE.labels(1)
    assert symmetrize(BASE, (a, a, 0)) is None
    cls = symmetrize(BASE, (a, 0, 0))
    assert cls.rep == (0, 0, a)


@settings(max_examples=40, deadline=None)
@given(_elements(BASE, 2, 4), _elements(BASE, 2, 4))
def test_sp_mul_matches_tensor_product(u, v):
    assert (u * v).tensor() == _tensor_mul(BASE, u.tensor(), v.tensor())


@settings(max_examples=30, deadline=None)
@given(_elements(BASE, 3, 3), _elements(BASE, 3, 3), _elements(BASE, 3, 2))
def test_sp_mul_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


def test_sp_mul_graded_commutative():
    for d1 in range(1, 4):
        for d2 in range(1, 4):
            for c1 in sp_basis(BASE, 3, d1):
                for c2 in sp_basis(BASE, 3, d2):
                    u, v = SpnElement(BASE, 3, {c1.rep: 1}), SpnElement(BASE, 3, {c2.rep: 1})
                    sign = -1 if d1 % 2 and d2 % 2 else 1
                    assert u * v == v * u * sign


def test_induced_differential_squares_to_zero_and_is_a_derivation():
    a = fixture_algebra("cp1", 10)
    for n in (2, 3):
        space = SymmetricPower(a, n)
        for i in range(len(space.names)):
            if space.degrees[i] + 2 > 10:
                continue
            u = space.element({i: 1})
            assert not u.d().d()
        for i in range(len(space.names)):
            for j in range(len(space.names)):
                di, dj = space.degrees[i], space.degrees[j]
                if di + dj + 1 > 10:
                    continue
                u, v = space.element({i: 1}), space.element({j: 1})
                sign = -1 if di % 2 else 1
                assert (u * v).d() == u.d() * v + u * v.d() * sign


@pytest.mark.parametrize("name", ["qx2", "torus2", "s2_s3", "sphere3", "trivial_23"])
def test_projection_is_onto_with_kernel_g_n(name):
    a = fixture_algebra(name, 8)
    for n in range(1, 5):
        g_n = g_components(a.betti(), n, 8)[n].as_ints()
        for d in range(9):
            basis = sp_basis(a, n, d)
            target = {c.rep: k for k, c in enumerate(sp_basis(a, n - 1, d))}
            rows = [{target[w]: c for w, c in project(SpnElement(a, n, {cls.rep: 1})).terms.items()} for cls in basis]
            assert rank(rows) == len(target)
            assert len(basis) - len(target) == g_n[d]


def test_projection_is_multiplicative():
    for d1 in range(4):
        for d2 in range(4):
            for c1 in sp_basis(BASE, 3, d1):
                for c2 in sp_basis(BASE, 3, d2):
                    u, v = SpnElement(BASE, 3, {c1.rep: 1}), SpnElement(BASE, 3, {c2.rep: 1})
                    assert project(u * v) == project(u) * project(v)


def test_phi_is_multiplicative_and_natural():
    alg, _ = positive_free_algebra(BASE)
    gens = [(alg.gen(g.name), g.degree) for g in alg.gens]
    for x, dx in gens:
        for y, dy in gens:
            if dx + dy > BASE.cutoff:
                continue
            for n in (2, 3):
                assert phi_n(BASE, x * y, n) == phi_n(BASE, x, n) * phi_n(BASE, y, n)
                assert project(phi_n(BASE, x * y, n)) == phi_n(BASE, x * y, n - 1)


def test_phi_onto_and_stable_degrees():
    for name in fixture_names():
        a = fixture_algebra(name, 7)
        for n in (1, 2, 3):
            assert phi_ranks(a, n, 7).passed, (name, n)
        for d in range(8):
            assert stable_sp_degree(a, d)[0] == len(sp_basis(a, max(d, 1), d))


degree_lists = st.lists(st.integers(1, 4), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(degree_lists, st.integers(0, 4))
def test_brute_force_equals_macdonald_on_free_algebras(degrees, n):
    decl = " ".join(f"g{i}:{d}" for i, d in enumerate(degrees))
    a = realize(parse_presentation(f"gen {decl};"), 8)
    assert [len(sp_basis(a, n, d)) for d in range(9)] == macdonald_sp_series(a.betti(), n, 8).as_ints()


def test_vector_round_trip():
    space = SymmetricPower(BASE, 2)
    (b,) = BASE.labels(2)
    u = SpnElement.bracket(BASE, 2, b) * SpnElement.bracket(BASE, 2, b) + SpnElement.one(BASE, 2)
    assert space.element(space.vector(u)) == u


def test_guardrail(monkeypatch):
    monkeypatch.setenv("SYMPROD_MAX_CELLS", "5")
    a = realize(parse_presentation("gen x:1 y:1 z:1 w:2;"), 6)
    with pytest.raises(GuardrailError):
        sp_basis(a, 4, 6)
