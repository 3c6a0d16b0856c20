"""Text format describing a grading group, graded algebras, homomorphisms and polynomials.

Statements are separated by newlines or ``;``; ``#`` starts a comment::

    group Z x Z/2 x Z/2
    algebra A ut blocks=(1,1) tuple=([0,0,0],[1,0,0])
    algebra B pauli pairs=(2) embed=([0,1,0],[0,0,1])
    algebra R tensor A B
    hom q quotient ([0,1,0],[0,0,1])
    algebra Rq coarsen R by q
    poly f = x1^[1,0,0] x2 - x2 x1^[1,0,0]
    poly c = capelli(2)

One group per file.  A ``pauli`` algebra without ``embed`` keeps its own
group Z/n x Z/n x ..., so combining it with file-group algebras is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .algebra import GradedAlgebra, coarsen, direct_sum, tensor
from .cyclotomic import CycScalar, as_scalar, root_of_unity
from .division import DivisionFactor, DivisionSpec, pauli_group
from .groups import FgAbelianGroup, GroupError, GroupHom, quotient, subgroup_generated
from .isomorphism import TensorModel
from .polynomials import GradedPolynomial, UnsupportedError, capelli, central_poly
from .ut import ElementarySpec, build_ut_elementary

__all__ = ["SpecError", "SpecFile", "parse_spec", "format_polynomial", "parse_group"]


class SpecError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column


# -- tokens -------------------------------------------------------------------------------

_TOKEN = re.compile(r"(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()\[\],=^/+\-*]))")


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def _statements(text: str) -> Iterator[list[Tok]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        base = 0
        for seg in line.split(";"):
            toks: list[Tok] = []
            pos = 0
            while True:
                while pos < len(seg) and seg[pos].isspace():
                    pos += 1
                if pos == len(seg):
                    break
                m = _TOKEN.match(seg, pos)
                if not m:
                    raise SpecError(f"unexpected character {seg[pos]!r}", lineno, base + pos + 1)
                kind = m.lastgroup
                toks.append(Tok(kind, m.group(kind), lineno, base + m.start(kind) + 1))
                pos = m.end()
            if toks:
                yield toks
            base += len(seg) + 1


class _Cursor:
    def __init__(self, toks: list[Tok]):
        self.toks = toks
        self.i = 0

    def peek(self, k: int = 0) -> Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def done(self) -> bool:
        return self.i >= len(self.toks)

    def here(self) -> tuple[int, int]:
        t = self.peek() or self.toks[-1]
        return (t.line, t.col if self.peek() else t.col + len(t.text))

    def error(self, msg: str) -> SpecError:
        return SpecError(msg, *self.here())

    def next(self, what: str = "token") -> Tok:
        t = self.peek()
        if t is None:
            raise self.error(f"expected {what}, found end of statement")
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        t = self.peek()
        if t is None or t.text != text:
            found = "end of statement" if t is None else repr(t.text)
            raise self.error(f"expected {text!r}, found {found}")
        self.i += 1
        return t

    def name(self, what: str = "name") -> Tok:
        t = self.peek()
        if t is None or t.kind != "name":
            raise self.error(f"expected {what}")
        self.i += 1
        return t

    def int(self, what: str = "integer") -> int:
        sign = -1 if self.at("-") else 1
        if sign < 0:
            self.i += 1
        t = self.peek()
        if t is None or t.kind != "num":
            raise self.error(f"expected {what}")
        self.i += 1
        return sign * int(t.text)

    def end(self):
        if not self.done():
            raise self.error(f"unexpected {self.peek().text!r}")


def _int_list(cur: _Cursor) -> tuple[int, ...]:
    cur.expect("(")
    out = [cur.int()]
    while cur.at(","):
        cur.next()
        out.append(cur.int())
    cur.expect(")")
    return tuple(out)


def _coords(cur: _Cursor) -> tuple[int, ...]:
    cur.expect("[")
    out = []
    if not cur.at("]"):
        out.append(cur.int())
        while cur.at(","):
            cur.next()
            out.append(cur.int())
    cur.expect("]")
    return tuple(out)


def _coords_list(cur: _Cursor) -> tuple[tuple[int, ...], ...]:
    cur.expect("(")
    out = [_coords(cur)]
    while cur.at(","):
        cur.next()
        out.append(_coords(cur))
    cur.expect(")")
    return tuple(out)


def _keyword_arg(cur: _Cursor, key: str):
    t = cur.name(f"{key}=")
    if t.text != key:
        raise SpecError(f"expected {key}=, found {t.text!r}", t.line, t.col)
    cur.expect("=")


def _group(cur: _Cursor) -> FgAbelianGroup:
    if cur.peek() is not None and cur.peek().text == "1":
        cur.next()
        return FgAbelianGroup(0, ())
    free, moduli = 0, []
    while True:
        t = cur.name("Z")
        if t.text != "Z":
            raise SpecError(f"expected Z, found {t.text!r}", t.line, t.col)
        if cur.at("^"):
            cur.next()
            free += cur.int("rank")
        elif cur.at("/"):
            cur.next()
            moduli.append(cur.int("modulus"))
        else:
            free += 1
        if cur.peek() is not None and cur.peek().text == "x":
            cur.next()
            continue
        break
    try:
        return FgAbelianGroup(free, tuple(moduli))
    except (GroupError, ValueError) as exc:
        raise cur.error(str(exc)) from None


def parse_group(text: str) -> FgAbelianGroup:
    toks = next(_statements(text))
    cur = _Cursor(toks)
    g = _group(cur)
    cur.end()
    return g


# -- scalars and polynomials -------------------------------------------------------------


def _scalar_atom(cur: _Cursor) -> CycScalar:
    t = cur.peek()
    if t is not None and t.text == "zeta":
        cur.next()
        cur.expect("(")
        n = cur.int("order")
        cur.expect(")")
        k = 1
        if cur.at("^"):
            cur.next()
            k = cur.int("exponent")
        if n < 1:
            raise cur.error("root-of-unity order must be positive")
        return root_of_unity(n, k)
    if t is not None and t.kind == "num":
        cur.next()
        num = int(t.text)
        if cur.at("/") and cur.peek(1) is not None and cur.peek(1).kind == "num":
            cur.next()
            den = int(cur.next().text)
            if den == 0:
                raise SpecError("zero denominator", t.line, t.col)
            return as_scalar(Fraction(num, den))
        return as_scalar(num)
    if t is not None and t.text == "(":
        cur.next()
        s = _scalar_sum(cur)
        cur.expect(")")
        return s
    raise cur.error("expected a coefficient")


def _scalar_product(cur: _Cursor) -> CycScalar:
    s = _scalar_atom(cur)
    while cur.at("*"):
        cur.next()
        s = s * _scalar_atom(cur)
    return s


def _scalar_sum(cur: _Cursor) -> CycScalar:
    sign = 1
    if cur.at("-"):
        cur.next()
        sign = -1
    s = _scalar_product(cur) * sign
    while cur.at("+") or cur.at("-"):
        sign = 1 if cur.next().text == "+" else -1
        s = s + _scalar_product(cur) * sign
    return s


def _is_scalar_start(cur: _Cursor) -> bool:
    t = cur.peek()
    return t is not None and (t.kind == "num" or t.text in ("zeta", "("))


_MACROS = {"capelli", "central"}


def _factor(cur: _Cursor, group: FgAbelianGroup) -> GradedPolynomial:
    t = cur.name("variable or macro")
    if t.text in _MACROS:
        cur.expect("(")
        k = cur.int()
        cur.expect(")")
        try:
            return capelli(k) if t.text == "capelli" else central_poly(k)
        except (ValueError, UnsupportedError) as exc:
            raise SpecError(str(exc), t.line, t.col) from None
    degree = None
    if cur.at("^"):
        cur.next()
        coords = _coords(cur)
        try:
            degree = group.element(coords)
        except (GroupError, ValueError) as exc:
            raise SpecError(str(exc), t.line, t.col) from None
    return GradedPolynomial.variable(t.text, degree)


def _term(cur: _Cursor, group: FgAbelianGroup, sign: int) -> tuple[CycScalar, GradedPolynomial | None, Tok]:
    start = cur.peek() or cur.toks[-1]
    coeff = as_scalar(sign)
    while _is_scalar_start(cur):
        coeff = coeff * _scalar_atom(cur)
        if cur.at("*"):
            cur.next()
    poly = None
    while cur.peek() is not None and cur.peek().kind == "name":
        f = _factor(cur, group)
        try:
            poly = f if poly is None else poly * f
        except ValueError as exc:
            raise SpecError(str(exc), start.line, start.col) from None
        if cur.at("*"):
            cur.next()
    return coeff, poly, start


def parse_polynomial(cur: _Cursor, group: FgAbelianGroup) -> GradedPolynomial:
    terms = []
    sign = 1
    if cur.at("-"):
        cur.next()
        sign = -1
    elif cur.at("+"):
        cur.next()
    while True:
        coeff, poly, start = _term(cur, group, sign)
        if poly is None:
            raise SpecError("term without variables", start.line, start.col)
        terms.append((coeff, poly, start))
        if cur.at("+") or cur.at("-"):
            sign = 1 if cur.next().text == "+" else -1
            continue
        break
    total = None
    for coeff, poly, start in terms:
        p = poly * coeff
        try:
            total = p if total is None else total + p
        except ValueError:
            raise SpecError("every term must use the same graded variables", start.line, start.col) from None
    return total


def format_polynomial(poly: GradedPolynomial) -> str:
    """Canonical text: one term per word, in insertion order, degrees spelled out."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has no textual form")
    var = {v.name: v for v in poly.variables}

    def vtext(x):
        d = var[x].degree
        return x if d is None else f"{x}^[{','.join(map(str, d.coords))}]"

    out = []
    for w, c in poly.terms.items():
        mono = " ".join(vtext(x) for x in w)
        if c.is_rational():
            q = c.to_fraction()
            sign = "-" if q < 0 else "+"
            q = abs(q)
            coef = "" if q == 1 else f"{q} "
        else:
            sign, coef = "+", f"({c}) "
        out.append(f"{sign} {coef}{mono}")
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# -- statements ----------------------------------------------------------------------------


@dataclass(frozen=True)
class UtDecl:
    name: str
    blocks: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]

    def dump(self):
        tup = ",".join("[" + ",".join(map(str, c)) + "]" for c in self.elements)
        return f"algebra {self.name} ut blocks=({','.join(map(str, self.blocks))}) tuple=({tup})"


@dataclass(frozen=True)
class PauliDecl:
    name: str
    pairs: tuple[int, ...]
    embed: tuple[tuple[int, ...], ...] | None = None

    def dump(self):
        s = f"algebra {self.name} pauli pairs=({','.join(map(str, self.pairs))})"
        if self.embed is not None:
            s += " embed=(" + ",".join("[" + ",".join(map(str, c)) + "]" for c in self.embed) + ")"
        return s


@dataclass(frozen=True)
class BinaryDecl:
    name: str
    op: str  # tensor | sum
    left: str
    right: str

    def dump(self):
        return f"algebra {self.name} {self.op} {self.left} {self.right}"


@dataclass(frozen=True)
class CoarsenDecl:
    name: str
    source: str
    hom: str

    def dump(self):
        return f"algebra {self.name} coarsen {self.source} by {self.hom}"


@dataclass(frozen=True)
class HomDecl:
    name: str
    kind: str  # quotient | images
    elements: tuple[tuple[int, ...], ...]
    target: FgAbelianGroup | None = None

    def dump(self):
        coords = "(" + ",".join("[" + ",".join(map(str, c)) + "]" for c in self.elements) + ")"
        if self.kind == "quotient":
            return f"hom {self.name} quotient {coords}"
        return f"hom {self.name} images={coords} target {self.target}"


@dataclass(frozen=True)
class PolyDecl:
    name: str
    poly: GradedPolynomial

    def dump(self):
        return f"poly {self.name} = {format_polynomial(self.poly)}"


@dataclass
class SpecFile:
    group: FgAbelianGroup
    statements: list = field(default_factory=list)

    def __post_init__(self):
        self._cache: dict[str, object] = {}

    def __eq__(self, other):
        return isinstance(other, SpecFile) and self.group == other.group and self.statements == other.statements

    # lookups
    def _decl(self, name: str, kinds) -> object:
        for s in self.statements:
            if s.name == name and isinstance(s, kinds):
                return s
        raise KeyError(name)

    @property
    def algebra_names(self) -> list[str]:
        return [s.name for s in self.statements if not isinstance(s, (HomDecl, PolyDecl))]

    @property
    def poly_names(self) -> list[str]:
        return [s.name for s in self.statements if isinstance(s, PolyDecl)]

    def declaration(self, name: str):
        return self._decl(name, (UtDecl, PauliDecl, BinaryDecl, CoarsenDecl, HomDecl, PolyDecl))

    def polynomial(self, name: str) -> GradedPolynomial:
        return self._decl(name, PolyDecl).poly

    def hom(self, name: str) -> GroupHom:
        key = "hom:" + name
        if key not in self._cache:
            d = self._decl(name, HomDecl)
            self._cache[key] = _build_hom(self.group, d)
        return self._cache[key]

    def group_of(self, name: str) -> FgAbelianGroup:
        d = self._decl(name, (UtDecl, PauliDecl, BinaryDecl, CoarsenDecl))
        if isinstance(d, UtDecl):
            return self.group
        if isinstance(d, PauliDecl):
            return self.group if d.embed is not None else pauli_group(DivisionSpec(d.pairs))
        if isinstance(d, BinaryDecl):
            return self.group_of(d.left)
        return self.hom(d.hom).target

    def division(self, name: str) -> DivisionFactor:
        d = self._decl(name, PauliDecl)
        if d.embed is None:
            spec = DivisionSpec(d.pairs)
            return DivisionFactor(spec, GroupHom.identity(pauli_group(spec)))
        return DivisionFactor.pauli(d.pairs, self.group, images=[list(c) for c in d.embed])

    def elementary(self, name: str) -> ElementarySpec:
        d = self._decl(name, UtDecl)
        return ElementarySpec(d.blocks, tuple(self.group.element(c) for c in d.elements))

    def algebra(self, name: str) -> GradedAlgebra:
        key = "alg:" + name
        if key in self._cache:
            return self._cache[key]
        d = self._decl(name, (UtDecl, PauliDecl, BinaryDecl, CoarsenDecl))
        if isinstance(d, UtDecl):
            alg = build_ut_elementary(self.elementary(name), name=name)
        elif isinstance(d, PauliDecl):
            alg = self.division(name).algebra()
        elif isinstance(d, BinaryDecl):
            op = tensor if d.op == "tensor" else direct_sum
            alg = op(self.algebra(d.left), self.algebra(d.right))
        else:
            alg = coarsen(self.algebra(d.source), self.hom(d.hom))
        self._cache[key] = alg
        return alg

    def model(self, name: str) -> TensorModel:
        """Read ``name`` as UT ⊗ B: a ut stanza, or a tensor of a ut and an embedded pauli stanza."""
        d = self._decl(name, (UtDecl, PauliDecl, BinaryDecl, CoarsenDecl))
        if isinstance(d, UtDecl):
            return TensorModel(self.elementary(name), DivisionFactor.trivial(self.group))
        if isinstance(d, BinaryDecl) and d.op == "tensor":
            left = self._decl(d.left, (UtDecl, PauliDecl, BinaryDecl, CoarsenDecl))
            right = self._decl(d.right, (UtDecl, PauliDecl, BinaryDecl, CoarsenDecl))
            if isinstance(left, UtDecl) and isinstance(right, PauliDecl) and right.embed is not None:
                return TensorModel(self.elementary(left.name), self.division(right.name))
        raise SpecError(f"algebra {name} is not of the form ut ⊗ (embedded) pauli")

    def dump(self) -> str:
        lines = [f"group {self.group}"]
        lines += [s.dump() for s in self.statements]
        return "\n".join(lines) + "\n"


def _build_hom(group: FgAbelianGroup, d: HomDecl) -> GroupHom:
    if d.kind == "quotient":
        sub = subgroup_generated(group, [group.element(c) for c in d.elements])
        return quotient(group, sub)[1]
    return GroupHom.from_images(group, d.target, [list(c) for c in d.elements])


# -- parser -----------------------------------------------------------------------------------


def parse_spec(text: str) -> SpecFile:
    """Parse a spec file, reporting the first problem with its line and column."""
    group: FgAbelianGroup | None = None
    spec: SpecFile | None = None
    groups: dict[str, FgAbelianGroup] = {}  # algebra name -> grading group
    homs: dict[str, GroupHom] = {}
    names: set[str] = set()

    def declare(tok: Tok):
        if tok.text in names:
            raise SpecError(f"{tok.text} is already defined", tok.line, tok.col)
        names.add(tok.text)

    def algebra_ref(cur: _Cursor) -> tuple[str, FgAbelianGroup]:
        t = cur.name("algebra name")
        if t.text not in groups:
            raise SpecError(f"undefined algebra {t.text}", t.line, t.col)
        return t.text, groups[t.text]

    def check_elem(tok: Tok, coords):
        try:
            group.element(coords)
        except (GroupError, ValueError) as exc:
            raise SpecError(str(exc), tok.line, tok.col) from None

    for toks in _statements(text):
        cur = _Cursor(toks)
        head = cur.name("statement keyword")
        if head.text == "group":
            if group is not None:
                raise SpecError("only one group declaration is allowed", head.line, head.col)
            group = _group(cur)
            cur.end()
            spec = SpecFile(group)
            continue
        if group is None:
            raise SpecError("the group must be declared first", head.line, head.col)
        if head.text == "algebra":
            nt = cur.name("algebra name")
            kind = cur.name("algebra kind")
            if kind.text == "ut":
                _keyword_arg(cur, "blocks")
                blocks = _int_list(cur)
                tt = cur.peek() or kind
                _keyword_arg(cur, "tuple")
                elems = _coords_list(cur)
                cur.end()
                for c in elems:
                    check_elem(tt, c)
                try:
                    ElementarySpec(blocks, tuple(group.element(c) for c in elems))
                except (ValueError, GroupError) as exc:
                    raise SpecError(str(exc), kind.line, kind.col) from None
                decl, g = UtDecl(nt.text, blocks, elems), group
            elif kind.text == "pauli":
                _keyword_arg(cur, "pairs")
                pairs = _int_list(cur)
                embed = None
                if not cur.done():
                    et = cur.peek()
                    _keyword_arg(cur, "embed")
                    embed = _coords_list(cur)
                cur.end()
                decl = PauliDecl(nt.text, pairs, embed)
                try:
                    DivisionSpec(pairs)
                    g = group if embed is not None else pauli_group(DivisionSpec(pairs))
                    if embed is not None:
                        DivisionFactor.pauli(pairs, group, images=[list(c) for c in embed])
                except (ValueError, GroupError) as exc:
                    raise SpecError(str(exc), *(et.line, et.col) if embed is not None else (kind.line, kind.col)) from None
            elif kind.text in ("tensor", "sum"):
                a, ga = algebra_ref(cur)
                bt = cur.peek()
                b, gb = algebra_ref(cur)
                cur.end()
                trivial = FgAbelianGroup(0, ())
                if ga != gb and trivial not in (ga, gb):
                    raise SpecError(f"group mismatch: {a} is graded by {ga}, {b} by {gb}", bt.line, bt.col)
                decl, g = BinaryDecl(nt.text, kind.text, a, b), (ga if ga != trivial else gb)
            elif kind.text == "coarsen":
                a, ga = algebra_ref(cur)
                by = cur.name("by")
                if by.text != "by":
                    raise SpecError("expected 'by'", by.line, by.col)
                ht = cur.name("homomorphism name")
                cur.end()
                if ht.text not in homs:
                    raise SpecError(f"undefined homomorphism {ht.text}", ht.line, ht.col)
                if homs[ht.text].source != ga:
                    raise SpecError(f"group mismatch: {ht.text} starts at {homs[ht.text].source}, {a} is graded by {ga}", ht.line, ht.col)
                decl, g = CoarsenDecl(nt.text, a, ht.text), homs[ht.text].target
            else:
                raise SpecError(f"unknown algebra kind {kind.text!r}", kind.line, kind.col)
            declare(nt)
            groups[nt.text] = g
            spec.statements.append(decl)
        elif head.text == "hom":
            nt = cur.name("homomorphism name")
            kind = cur.name("quotient or images=")
            if kind.text == "quotient":
                elems = _coords_list(cur)
                cur.end()
                decl = HomDecl(nt.text, "quotient", elems)
            elif kind.text == "images":
                cur.expect("=")
                elems = _coords_list(cur)
                tt = cur.name("target")
                if tt.text != "target":
                    raise SpecError("expected 'target'", tt.line, tt.col)
                target = _group(cur)
                cur.end()
                decl = HomDecl(nt.text, "images", elems, target)
            else:
                raise SpecError(f"unknown homomorphism kind {kind.text!r}", kind.line, kind.col)
            try:
                homs[nt.text] = _build_hom(group, decl)
            except (ValueError, GroupError) as exc:
                raise SpecError(str(exc), kind.line, kind.col) from None
            declare(nt)
            spec.statements.append(decl)
        elif head.text == "poly":
            nt = cur.name("polynomial name")
            cur.expect("=")
            poly = parse_polynomial(cur, group)
            cur.end()
            declare(nt)
            spec.statements.append(PolyDecl(nt.text, poly))
        else:
            raise SpecError(f"unknown statement {head.text!r}", head.line, head.col)
    if spec is None:
        raise SpecError("missing group declaration", 1, 1)
    return spec
