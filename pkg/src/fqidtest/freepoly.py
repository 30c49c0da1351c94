"""Polynomials over a finite field in three noncommutative flavors.

A term is a formal product of variables x1, x2, ...:

* free terms keep the full bracketing as a binary tree, encoded as an int
  leaf (the variable index) or a nested pair (left, right);
* assoc terms forget bracketing and are flat tuples of variable indices;
* lie terms reuse the tree encoding, each pair read as a bracket [l, r].
  No antisymmetry or Jacobi rewriting is applied; two formally distinct
  bracket trees stay distinct terms even when every Lie algebra would
  identify them.

A polynomial is a finite coefficient map from terms to nonzero field
elements.  Constant terms are forbidden in all flavors: these polynomials
exist to be evaluated on algebras that need not have a unit.

The text format is whitespace-insensitive.  Products need an explicit *
except directly after a leading scalar, field elements with a + in them
must be parenthesized when used as coefficients, and [a,b,c] abbreviates
the left-normed [[a,b],c].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    ConstantTermForbidden,
    FieldMismatch,
    FlavorMismatch,
    ParseError,
    UnknownVariable,
    ZeroPolynomial,
)
from .gf import Field


class Flavor(str, Enum):
    FREE = "free"
    ASSOC = "assoc"
    LIE = "lie"


# ---------------------------------------------------------------------------
# terms

def term_degree(term) -> int:
    if isinstance(term, int):
        return 1
    return sum(term_degree(c) for c in term)


def term_leaves(term):
    """Variable indices in left-to-right order, with multiplicity."""
    if isinstance(term, int):
        yield term
    else:
        for child in term:
            yield from term_leaves(child)


def term_product(a, b, flavor: Flavor):
    if flavor is Flavor.ASSOC:
        return a + b
    return (a, b)


def _term_enc(term):
    # injective encoding whose tuple order is deterministic within a flavor
    if isinstance(term, int):
        return (0, term)
    out = [1, len(term)]
    out.extend(_term_enc(c) for c in term)
    return tuple(out)


def term_sort_key(term):
    return (term_degree(term), _term_enc(term))


def _validate_term(term, flavor: Flavor, n: int):
    if flavor is Flavor.ASSOC:
        if not (isinstance(term, tuple) and term and all(isinstance(i, int) for i in term)):
            raise ValueError(f"assoc terms are nonempty tuples of indices, got {term!r}")
        for i in term:
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} out of range 1..{n}")
        return
    if isinstance(term, int):
        if not 1 <= term <= n:
            raise ValueError(f"variable index {term} out of range 1..{n}")
        return
    if not (isinstance(term, tuple) and len(term) == 2):
        raise ValueError(f"tree terms are index leaves or pairs, got {term!r}")
    _validate_term(term[0], flavor, n)
    _validate_term(term[1], flavor, n)


# ---------------------------------------------------------------------------
# polynomials

class FreePoly:
    """Formal polynomial without constant term in one of the three flavors."""

    __slots__ = ("field", "flavor", "n", "terms")

    def __init__(self, field: Field, flavor, n: int, terms):
        flavor = Flavor(flavor)
        if n < 0:
            raise ValueError("variable count must be >= 0")
        clean = {}
        for term, coeff in terms.items():
            if not isinstance(coeff, int) or not 0 <= coeff < field.q:
                raise ValueError(f"coefficient {coeff!r} is not a canonical element of {field!r}")
            if coeff == 0:
                continue
            _validate_term(term, flavor, n)
            clean[term] = coeff
        self.field = field
        self.flavor = flavor
        self.n = n
        self.terms = clean

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial()
        return max(term_degree(t) for t in self.terms)

    def _check_compatible(self, other: "FreePoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.flavor is not other.flavor:
            raise FlavorMismatch(f"{self.flavor.value} vs {other.flavor.value}")

    def __add__(self, other):
        self._check_compatible(other)
        f = self.field
        terms = dict(self.terms)
        for t, c in other.terms.items():
            s = f.add(terms.get(t, 0), c)
            if s:
                terms[t] = s
            else:
                terms.pop(t, None)
        return FreePoly(f, self.flavor, max(self.n, other.n), terms)

    def __neg__(self):
        f = self.field
        return FreePoly(f, self.flavor, self.n, {t: f.neg(c) for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        f = self.field
        terms = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = term_product(t1, t2, self.flavor)
                s = f.add(terms.get(t, 0), f.mul(c1, c2))
                if s:
                    terms[t] = s
                else:
                    terms.pop(t, None)
        return FreePoly(f, self.flavor, max(self.n, other.n), terms)

    def scale(self, c: int) -> "FreePoly":
        f = self.field
        return FreePoly(
            f, self.flavor, self.n, {t: f.mul(c, k) for t, k in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, FreePoly)
            and self.field == other.field
            and self.flavor is other.flavor
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.field, self.flavor, self.n, tuple(sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))))
        )

    # text form

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for term in sorted(self.terms, key=term_sort_key):
            coeff = self.terms[term]
            body = _term_text(term, self.flavor)
            if coeff == 1:
                parts.append(body)
            else:
                lit = self.field.format_literal(coeff)
                if "+" in lit:
                    lit = f"({lit})"
                parts.append(f"{lit}*{body}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FreePoly({self.flavor.value}, {self.to_text()!r} over {self.field!r}, n={self.n})"

    def analyze(self) -> "Analysis":
        if not self.terms:
            raise ZeroPolynomial("analysis")
        degrees = []
        counts = []
        for term in self.terms:
            degrees.append(term_degree(term))
            c = [0] * self.n
            for leaf in term_leaves(term):
                c[leaf - 1] += 1
            counts.append(c)
        multidegree = tuple(max(c[i] for c in counts) for i in range(self.n))
        homogeneous = len(set(degrees)) == 1
        multilinear = all(all(x == 1 for x in c) for c in counts) and self.n > 0
        return Analysis(
            degree=max(degrees),
            multidegree=multidegree,
            homogeneous=homogeneous,
            multilinear=multilinear,
        )


@dataclass(frozen=True)
class Analysis:
    degree: int
    multidegree: tuple[int, ...]
    homogeneous: bool
    multilinear: bool


def _term_text(term, flavor: Flavor) -> str:
    if flavor is Flavor.ASSOC:
        return "*".join(f"x{i}" for i in term)
    if flavor is Flavor.LIE:
        if isinstance(term, int):
            return f"x{term}"
        left, right = term
        return f"[{_term_text(left, flavor)},{_term_text(right, flavor)}]"
    if isinstance(term, int):
        return f"x{term}"
    left, right = term
    lhs = _term_text(left, flavor)
    rhs = _term_text(right, flavor)
    if not isinstance(right, int):
        rhs = f"({rhs})"
    return f"{lhs}*{rhs}"


def zero(field: Field, flavor, n: int = 0) -> FreePoly:
    return FreePoly(field, flavor, n, {})


def variable(field: Field, flavor, i: int, n: int | None = None) -> FreePoly:
    flavor = Flavor(flavor)
    term = (i,) if flavor is Flavor.ASSOC else i
    return FreePoly(field, flavor, max(i, n or 0), {term: 1})


def engel(m: int, field: Field) -> FreePoly:
    """Left-normed bracket [x, y, y, ..., y] with y repeated m times."""
    if m < 1:
        raise ValueError("repetition count must be >= 1")
    term = 1
    for _ in range(m):
        term = (term, 2)
    return FreePoly(field, Flavor.LIE, 2, {term: 1})


def power_word(d: int, field: Field) -> FreePoly:
    """The associative word x1 * x1 * ... * x1 of length d."""
    if d < 1:
        raise ValueError("power must be >= 1")
    return FreePoly(field, Flavor.ASSOC, 1, {(1,) * d: 1})


# ---------------------------------------------------------------------------
# text to polynomial

def tokenize(text: str):
    """Token stream shared by the free and commutative parsers."""
    out = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < length and text[j].isdigit():
                j += 1
            out.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < length and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable name needs a numeric index", i)
            index = int(text[i + 1 : j])
            if index < 1:
                raise UnknownVariable(text[i:j], i)
            out.append(("var", index, i))
            i = j
            continue
        if ch == "g":
            out.append(("g", None, i))
            i += 1
            continue
        if ch in "+-*^()[],":
            out.append(("op", ch, i))
            i += 1
            continue
        if ch.isalpha():
            j = i
            while j < length and (text[j].isalnum() or text[j] == "_"):
                j += 1
            raise UnknownVariable(text[i:j], i)
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append(("end", None, length))
    return out


class _FreeParser:
    """Recursive descent over the token list.

    Subexpressions are tracked as a pair (scalar, term map), so scalar
    subexpressions like (g+1) multiply as coefficients.  A nonzero scalar
    surviving to the top level is a forbidden constant term.
    """

    def __init__(self, tokens, flavor: Flavor, field: Field):
        self.tokens = tokens
        self.pos = 0
        self.flavor = flavor
        self.field = field
        self.maxvar = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return value

    def expr(self):
        value = None
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        value = self.term()
        if sign < 0:
            value = self._neg(value)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                if val == "-":
                    rhs = self._neg(rhs)
                value = self._add(value, rhs)
            else:
                return value

    def term(self):
        value, scalar_atom = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                rhs, scalar_atom = self.atom()
                value = self._mul(value, rhs)
            elif scalar_atom and (kind in ("var", "g", "int") or (kind == "op" and val in "([")):
                # juxtaposition is only allowed right after a scalar atom
                rhs, scalar_atom = self.atom()
                value = self._mul(value, rhs)
            else:
                return value

    def atom(self):
        """Returns (value, parsed_a_bare_scalar_literal)."""
        kind, val, pos = self.take()
        if kind == "int":
            return (val % self.field.p, {}), True
        if kind == "g":
            if self.field.k == 1:
                raise ParseError(f"no generator symbol in {self.field!r}", pos)
            e = 1
            nk, nv, npos = self.peek()
            if nk == "op" and nv == "^":
                self.take()
                ek, ev, epos = self.take()
                if ek != "int":
                    raise ParseError("exponent must be a nonnegative integer", epos)
                e = ev
            return (self.field.pow(self.field.p, e), {}), True
        if kind == "var":
            self.maxvar = max(self.maxvar, val)
            term = (val,) if self.flavor is Flavor.ASSOC else val
            return (0, {term: 1}), False
        if kind == "op" and val == "(":
            value = self.expr()
            ck, cv, cpos = self.take()
            if not (ck == "op" and cv == ")"):
                raise ParseError("expected ')'", cpos)
            return value, False
        if kind == "op" and val == "[":
            if self.flavor is not Flavor.LIE:
                raise ParseError("brackets are only meaningful in the lie flavor", pos)
            items = [self.expr()]
            while True:
                ck, cv, cpos = self.take()
                if ck == "op" and cv == ",":
                    items.append(self.expr())
                elif ck == "op" and cv == "]":
                    break
                else:
                    raise ParseError("expected ',' or ']'", cpos)
            if len(items) < 2:
                raise ParseError("a bracket needs at least two entries", pos)
            value = items[0]
            for rhs in items[1:]:
                value = self._mul(value, rhs)
            return value, False
        raise ParseError("expected a variable, coefficient, or group", pos)

    # pair arithmetic: value = scalar + sum of term*coeff

    def _add(self, a, b):
        f = self.field
        scalar = f.add(a[0], b[0])
        terms = dict(a[1])
        for t, c in b[1].items():
            s = f.add(terms.get(t, 0), c)
            if s:
                terms[t] = s
            else:
                terms.pop(t, None)
        return (scalar, terms)

    def _neg(self, a):
        f = self.field
        return (f.neg(a[0]), {t: f.neg(c) for t, c in a[1].items()})

    def _mul(self, a, b):
        f = self.field
        sa, ta = a
        sb, tb = b
        scalar = f.mul(sa, sb)
        terms = {}

        def bump(t, c):
            if c == 0:
                return
            s = f.add(terms.get(t, 0), c)
            if s:
                terms[t] = s
            else:
                terms.pop(t, None)

        if sa:
            for t, c in tb.items():
                bump(t, f.mul(sa, c))
        if sb:
            for t, c in ta.items():
                bump(t, f.mul(c, sb))
        for t1, c1 in ta.items():
            for t2, c2 in tb.items():
                bump(term_product(t1, t2, self.flavor), f.mul(c1, c2))
        return (scalar, terms)


def parse(text: str, flavor, field: Field, n: int | None = None) -> FreePoly:
    """Parse polynomial text in the given flavor.

    n widens the ambient variable count; variables beyond an explicit n are
    rejected.  Without it the count is the largest index that occurs.
    """
    flavor = Flavor(flavor)
    parser = _FreeParser(tokenize(text), flavor, field)
    scalar, terms = parser.parse()
    if scalar != 0:
        raise ConstantTermForbidden()
    if n is not None and parser.maxvar > n:
        raise UnknownVariable(f"x{parser.maxvar}")
    return FreePoly(field, flavor, max(parser.maxvar, n or 0), terms)
