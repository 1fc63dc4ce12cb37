"""Presentations of graded-commutative algebras and their degreewise realization.

Input syntax::

    # complex projective plane
    gen x:2 y:5;
    d y = x^3;

``gen`` declares generators with degrees, ``rel`` lists relations (killed in
the quotient), ``d`` sets the differential of one generator.  Generators left
without a ``d`` statement are cocycles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra import (
    DegreeOverflow,
    Element,
    FreeAlgebra,
    Generator,
    Monomial,
    apply_derivation,
    format_element,
)
from .linalg import EchelonBasis, Vector, add_scaled

KEYWORDS = {"gen", "rel", "d"}


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class NotConnectedError(PresentationError):
    """Raised for degree-0 generators: the algebra would not be connected."""


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<sym>[;:^*/+\-=,])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PresentationError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("ident", "int", "sym"):
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# A parsed polynomial before generator names are resolved:
# list of (coefficient, [(name, exponent, token)])
_RawPoly = list[tuple[Fraction, list[tuple[str, int, _Tok]]]]


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return PresentationError(message, tok.line, tok.col)

    def take(self, kind: str, text: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            raise self.error(f"expected {want!r}, got {got!r}")
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def statements(self):
        out = []
        while not self.at("eof"):
            head = self.take("ident")
            if head.text == "gen":
                pairs = []
                while self.at("ident"):
                    name = self.take("ident")
                    if name.text in KEYWORDS:
                        raise self.error(f"{name.text!r} is reserved", name)
                    self.take("sym", ":")
                    deg = self.take("int")
                    pairs.append((name, int(deg.text)))
                if not pairs:
                    raise self.error("expected a generator declaration")
                out.append(("gen", head, pairs))
            elif head.text == "rel":
                polys = [self.poly()]
                while self.at("sym", ","):
                    self.take("sym", ",")
                    polys.append(self.poly())
                out.append(("rel", head, polys))
            elif head.text == "d":
                name = self.take("ident")
                self.take("sym", "=")
                out.append(("d", name, self.poly()))
            else:
                raise self.error(f"unknown statement {head.text!r}", head)
            self.take("sym", ";")
        return out

    def poly(self) -> tuple[_Tok, _RawPoly]:
        start = self.tok
        sign = 1
        if self.at("sym", "-"):
            self.take("sym")
            sign = -1
        terms = [self.term(sign)]
        while self.at("sym", "+") or self.at("sym", "-"):
            sign = 1 if self.take("sym").text == "+" else -1
            terms.append(self.term(sign))
        return start, terms

    def term(self, sign: int):
        coef = Fraction(sign)
        has_coef = False
        if self.at("int"):
            num = int(self.take("int").text)
            den = 1
            if self.at("sym", "/"):
                self.take("sym", "/")
                den_tok = self.take("int")
                den = int(den_tok.text)
                if den == 0:
                    raise self.error("zero denominator", den_tok)
            coef *= Fraction(num, den)
            has_coef = True
        factors = []
        if self.at("ident"):
            factors.append(self.factor())
            while self.at("ident") or self.at("sym", "*"):
                if self.at("sym", "*"):
                    self.take("sym", "*")
                factors.append(self.factor())
        elif not has_coef:
            raise self.error("expected a term")
        return coef, factors

    def factor(self):
        name = self.take("ident")
        exp = 1
        if self.at("sym", "^"):
            self.take("sym", "^")
            exp = int(self.take("int").text)
        return name.text, exp, name


# -- presentations --------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relations: tuple[Element, ...] = ()
    differential: Mapping[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        for g in self.generators:
            if g.degree < 1:
                raise NotConnectedError(f"generator {g.name} has degree {g.degree}")
        alg = self.algebra
        for r in self.relations:
            if r.algebra != alg:
                raise PresentationError("relation lives in a different algebra")
            if not r:
                raise PresentationError("zero relation")
            if not r.is_homogeneous():
                raise PresentationError(f"relation {r} is not homogeneous")
            if r.degree < 1:
                raise PresentationError(f"relation {r} has degree 0")
        for name, image in self.differential.items():
            if name not in alg.index:
                raise PresentationError(f"differential of unknown generator {name!r}")
            if image.algebra != alg:
                raise PresentationError("differential image lives in a different algebra")
            want = alg.gens[alg.index[name]].degree + 1
            if image and (not image.is_homogeneous() or image.degree != want):
                raise PresentationError(f"d {name} = {image} must be homogeneous of degree {want}")

    @property
    def algebra(self) -> FreeAlgebra:
        alg = getattr(self, "_algebra", None)
        if alg is None:
            alg = FreeAlgebra(self.generators)
            object.__setattr__(self, "_algebra", alg)
        return alg

    @property
    def is_free(self) -> bool:
        return not self.relations

    def d_images(self) -> dict[str, Element]:
        """Differential on every generator, zero where unspecified."""
        alg = self.algebra
        return {g.name: self.differential.get(g.name, alg.zero()) for g in alg.gens}

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and set(self.relations) == set(other.relations)
            and {k: v for k, v in self.differential.items() if v}
            == {k: v for k, v in other.differential.items() if v}
        )

    def __hash__(self):
        return hash(self.algebra)

    def to_text(self) -> str:
        alg = self.algebra
        lines = ["gen " + " ".join(f"{g.name}:{g.degree}" for g in alg.gens) + ";"]
        if self.relations:
            lines.append("rel " + ", ".join(format_element(r) for r in self.relations) + ";")
        for g in alg.gens:
            image = self.differential.get(g.name)
            if image:
                lines.append(f"d {g.name} = {format_element(image)};")
        return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation DSL.

    Relations must be decomposable (every term a product of at least two
    generators); a linear relation would just delete a generator.
    """
    parser = _Parser(text)
    stmts = parser.statements()
    gens: list[Generator] = []
    seen: dict[str, _Tok] = {}
    for kind, head, body in stmts:
        if kind != "gen":
            continue
        for name_tok, degree in body:
            if name_tok.text in seen:
                raise PresentationError(f"generator {name_tok.text!r} declared twice", name_tok.line, name_tok.col)
            if degree == 0:
                raise NotConnectedError(
                    f"generator {name_tok.text!r} has degree 0", name_tok.line, name_tok.col
                )
            seen[name_tok.text] = name_tok
            gens.append(Generator(name_tok.text, degree))
    if not gens:
        raise PresentationError("no generators declared", 1, 1)
    alg = FreeAlgebra(gens)

    def build(raw) -> Element:
        start, terms = raw
        out = alg.zero()
        for coef, factors in terms:
            mono = alg.one()
            for name, exp, tok in factors:
                if name not in alg.index:
                    raise PresentationError(f"unknown generator {name!r}", tok.line, tok.col)
                mono = mono * alg.gen(name) ** exp
            out = out + mono * coef
        return out

    relations = []
    differential: dict[str, Element] = {}
    for kind, head, body in stmts:
        if kind == "rel":
            for raw in body:
                start = raw[0]
                r = build(raw)
                if not r:
                    raise PresentationError("relation is zero", start.line, start.col)
                if not r.is_homogeneous():
                    raise PresentationError(f"relation {r} is not homogeneous", start.line, start.col)
                if any(sum(m) < 2 for m in r.terms):
                    raise PresentationError(
                        f"relation {r} has a term of polynomial degree < 2", start.line, start.col
                    )
                relations.append(r)
        elif kind == "d":
            name_tok = head
            if name_tok.text not in alg.index:
                raise PresentationError(f"unknown generator {name_tok.text!r}", name_tok.line, name_tok.col)
            if name_tok.text in differential:
                raise PresentationError(f"d {name_tok.text} given twice", name_tok.line, name_tok.col)
            image = build(body)
            want = alg.gens[alg.index[name_tok.text]].degree + 1
            if image and (not image.is_homogeneous() or image.degree != want):
                start = body[0]
                raise PresentationError(
                    f"d {name_tok.text} must have degree {want}, got {image}", start.line, start.col
                )
            differential[name_tok.text] = image
    return Presentation(tuple(alg.gens), tuple(relations), differential)


# -- degreewise realization -------------------------------------------------------


class AlgebraData:
    """A connected algebra known degreewise through ``cutoff``.

    Basis elements are integer labels; label 0 is the unit.  ``product(i, j)``
    and ``differential(i)`` return sparse vectors over labels.  Both are
    memoized.  Asking for anything above the cutoff raises ``DegreeOverflow``.
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[int],
        cutoff: int,
        product: Callable[[int, int], Vector],
        differential: Callable[[int], Vector] | None = None,
        free_reps: Sequence[Element] | None = None,
    ):
        if not degrees or degrees[0] != 0 or any(d <= 0 for d in degrees[1:]):
            raise ValueError("label 0 must be the unit and the only degree-0 label")
        if any(d > cutoff for d in degrees):
            raise ValueError("basis element above cutoff")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.cutoff = cutoff
        self._product = product
        self._differential = differential
        self.free_reps = tuple(free_reps) if free_reps is not None else None
        self.by_degree: list[list[int]] = [[] for _ in range(cutoff + 1)]
        for i, d in enumerate(self.degrees):
            self.by_degree[d].append(i)
        self._mul_cache: dict[tuple[int, int], Vector] = {}
        self._d_cache: dict[int, Vector] = {}
        self._label_of_rep = None
        self.cache: dict = {}  # per-instance memo tables for derived constructions

    def __len__(self):
        return len(self.degrees)

    def __repr__(self):
        return f"AlgebraData(cutoff={self.cutoff}, betti={self.betti()})"

    @property
    def has_differential(self) -> bool:
        return self._differential is not None

    def betti(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.by_degree)

    def labels(self, d: int) -> list[int]:
        if d < 0:
            return []
        if d > self.cutoff:
            raise DegreeOverflow(f"degree {d} is above cutoff {self.cutoff}")
        return self.by_degree[d]

    def is_odd(self, i: int) -> bool:
        return self.degrees[i] % 2 == 1

    def mul(self, i: int, j: int) -> Vector:
        if i == 0:
            return {j: Fraction(1)}
        if j == 0:
            return {i: Fraction(1)}
        key = (i, j)
        hit = self._mul_cache.get(key)
        if hit is None:
            if self.degrees[i] + self.degrees[j] > self.cutoff:
                raise DegreeOverflow(
                    f"product {self.names[i]} * {self.names[j]} has degree above cutoff {self.cutoff}"
                )
            hit = self._product(i, j)
            self._mul_cache[key] = hit
        return hit

    def d(self, i: int) -> Vector:
        if self._differential is None:
            return {}
        hit = self._d_cache.get(i)
        if hit is None:
            if self.degrees[i] + 1 > self.cutoff:
                raise DegreeOverflow(f"d {self.names[i]} has degree above cutoff {self.cutoff}")
            hit = self._differential(i)
            self._d_cache[i] = hit
        return hit

    def mul_vec(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                add_scaled(out, self.mul(i, j), a * b)
        return out

    def d_vec(self, u: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            add_scaled(out, self.d(i), a)
        return out

    def label_of_monomial(self, m: Monomial) -> int:
        """Label whose representing free monomial is ``m`` (presented algebras only)."""
        if self._label_of_rep is None:
            if self.free_reps is None:
                raise ValueError("algebra has no free representatives")
            table = {}
            for i, rep in enumerate(self.free_reps):
                if len(rep.terms) == 1:
                    (mono, c), = rep.terms.items()
                    if c == 1:
                        table[mono] = i
            self._label_of_rep = table
        return self._label_of_rep[tuple(m)]

    @classmethod
    def trivial(cls, degrees: Mapping[str, int], cutoff: int) -> AlgebraData:
        """``Q + V`` with every product of positive-degree elements zero."""
        items = sorted(((d, n) for n, d in degrees.items() if d <= cutoff))
        names = ["1"] + [n for _, n in items]
        degs = [0] + [d for d, _ in items]

        def product(i, j):
            return {}

        def differential(i):
            return {}

        return cls(names, degs, cutoff, product, differential)


def realize(p: Presentation, cutoff: int) -> AlgebraData:
    """Quotient of the free algebra by the relation ideal, degree by degree.

    In each degree the ideal is spanned by relations times monomials of the
    complementary degree.  The quotient basis is the set of lexicographically
    least monomials not hit by a pivot.  A differential, if present, is checked
    for ``d∘d = 0`` and for preserving the ideal, through the cutoff.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    alg = p.algebra
    monos: list[list[Monomial]] = []
    col_of: list[dict[Monomial, int]] = []
    reducers: list[EchelonBasis] = []
    standard: list[list[int]] = []
    for d in range(cutoff + 1):
        basis = alg.basis(d)
        cols = {m: k for k, m in enumerate(basis)}
        ech = EchelonBasis()
        for r in p.relations:
            rd = r.degree
            if rd > d:
                continue
            for m in alg.basis(d - rd):
                prod = r * alg.monomial(m)
                ech.add({cols[mm]: c for mm, c in prod.terms.items()})
        ech.fully_reduce()
        monos.append(basis)
        col_of.append(cols)
        reducers.append(ech)
        standard.append([k for k in range(len(basis)) if k not in ech.rows])

    names, degrees, reps = [], [], []
    label_of: list[dict[int, int]] = []
    for d in range(cutoff + 1):
        table = {}
        for k in standard[d]:
            table[k] = len(names)
            names.append(alg.mono_str(monos[d][k]))
            degrees.append(d)
            reps.append(alg.monomial(monos[d][k]))
        label_of.append(table)

    def normal_form(e: Element) -> Vector:
        out: Vector = {}
        for d in e.degrees():
            if d > cutoff:
                raise DegreeOverflow(f"degree {d} is above cutoff {cutoff}")
            part = e.homogeneous_part(d)
            vec = reducers[d].reduce({col_of[d][m]: c for m, c in part.terms.items()})
            for k, c in vec.items():
                out[label_of[d][k]] = c
        return out

    def product(i: int, j: int) -> Vector:
        return normal_form(reps[i] * reps[j])

    images = p.d_images()
    if p.differential:
        for g in alg.gens:
            if g.degree + 2 <= cutoff:
                dd = apply_derivation(images[g.name], images)
                if normal_form(dd):
                    raise PresentationError(f"d(d {g.name}) = {dd} is not zero")
        for r in p.relations:
            if r.degree + 1 <= cutoff and normal_form(apply_derivation(r, images)):
                raise PresentationError(f"differential does not preserve the relation {r}")

    def differential(i: int) -> Vector:
        return normal_form(apply_derivation(reps[i], images))

    data = AlgebraData(names, degrees, cutoff, product, differential, reps)
    data.normal_form = normal_form
    data.presentation = p
    return data


def betti(a: AlgebraData) -> tuple[int, ...]:
    return a.betti()
