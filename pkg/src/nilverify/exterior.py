"""Exterior algebra on a finite ordered set of degree-1 generators.

A monomial is stored as a bitmask over generator positions; the wedge of two
monomials carries the Koszul sign of the permutation that sorts their
concatenation. The default generators are (mu, nu, theta, ~mu, ~nu, ~theta),
where ``~x`` is the complex conjugate partner of ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import ConfigError, DomainError
from .scalar import CycloScalar, CyclotomicField, DEFAULT_ORDER

RESERVED_NAMES = frozenset({"z", "z6", "i"})


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generators with a conjugation pairing and (p, q) type tags."""

    names: tuple[str, ...]
    partner: tuple[int, ...]
    bidegree: tuple[tuple[int, int], ...]
    field: CyclotomicField

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise DomainError("generator names must be distinct")
        if len(self.partner) != n or len(self.bidegree) != n:
            raise DomainError("pairing and bidegree tags must cover every generator")
        for j, p in enumerate(self.partner):
            if p == j or self.partner[p] != j:
                raise DomainError(f"conjugation pairing is not a fixed-point-free involution at {self.names[j]}")
            if {self.bidegree[j], self.bidegree[p]} != {(1, 0), (0, 1)}:
                raise DomainError(f"{self.names[j]} must pair a (1,0) generator with a (0,1) generator")

    @classmethod
    def holomorphic(cls, names: Iterable[str], field: CyclotomicField | None = None) -> "GeneratorSet":
        """(1,0) generators ``names`` followed by their conjugates ``~name``."""
        hol = tuple(names)
        for nm in hol:
            if nm in RESERVED_NAMES or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise DomainError(f"invalid generator name {nm!r}")
        n = len(hol)
        return cls(
            names=hol + tuple("~" + nm for nm in hol),
            partner=tuple(range(n, 2 * n)) + tuple(range(n)),
            bidegree=((1, 0),) * n + ((0, 1),) * n,
            field=field or CyclotomicField(DEFAULT_ORDER),
        )

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"unknown generator {name!r}") from None

    def generator(self, name: str) -> "Form":
        return Form(self, {1 << self.index(name): self.field.one()})

    def monomial(self, *names: str) -> "Form":
        """Wedge product of the named generators, in the order given."""
        out = Form.scalar(self, 1)
        for nm in names:
            out = out.wedge(self.generator(nm))
        return out

    def monomials(self, k: int) -> list[int]:
        """Degree-k monomial masks in lexicographic order of their index tuples."""
        return [sum(1 << j for j in c) for c in combinations(range(len(self.names)), k)]

    def mask_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[j] for j in range(len(self.names)) if mask >> j & 1)

    @property
    def dimension(self) -> int:
        return len(self.names)


def koszul_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of monomials a, b (assumed disjoint)."""
    inversions = 0
    while b:
        low = b & -b
        inversions += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if inversions & 1 else 1


def degree_of(mask: int) -> int:
    return bin(mask).count("1")


class Form:
    """Immutable element of the exterior algebra with cyclotomic coefficients."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms: Mapping[int, CycloScalar]):
        self.gens = gens
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls, gens: GeneratorSet) -> "Form":
        return cls(gens, {})

    @classmethod
    def scalar(cls, gens: GeneratorSet, value) -> "Form":
        return cls(gens, {0: gens.field(value)})

    @classmethod
    def from_vector(cls, gens: GeneratorSet, masks: list[int], vector: Iterable[CycloScalar]) -> "Form":
        return cls(gens, dict(zip(masks, vector)))

    # -- inspection ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {degree_of(m) for m in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise DomainError(f"form of mixed degree {sorted(degs)}")
        return degs.pop() if degs else 0

    def homogeneous(self, k: int) -> "Form":
        return Form(self.gens, {m: c for m, c in self.terms.items() if degree_of(m) == k})

    def coefficient(self, mask: int) -> CycloScalar:
        return self.terms.get(mask, self.gens.field.zero())

    def vector(self, masks: list[int]) -> list[CycloScalar]:
        zero = self.gens.field.zero()
        return [self.terms.get(m, zero) for m in masks]

    def scalar_part(self) -> CycloScalar:
        if any(m for m in self.terms):
            raise DomainError(f"expected a scalar, got the form {self}")
        return self.coefficient(0)

    def __iter__(self) -> Iterator[tuple[int, CycloScalar]]:
        return iter(sorted(self.terms.items(), key=lambda t: _sort_key(t[0])))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "Form") -> None:
        if other.gens != self.gens:
            raise DomainError("forms over different generator sets")

    def __add__(self, other) -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Form(self.gens, out)

    def __neg__(self) -> "Form":
        return Form(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            return self.wedge(other)
        if isinstance(other, (int, Fraction, CycloScalar)):
            s = self.gens.field(other)
            return Form(self.gens, {m: c * s for m, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> "Form":
        if isinstance(other, (int, Fraction, CycloScalar)):
            return self * other
        return NotImplemented

    # -- algebra ------------------------------------------------------------

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        out: dict[int, CycloScalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                m = ma | mb
                c = ca * cb
                if koszul_sign(ma, mb) < 0:
                    c = -c
                out[m] = out[m] + c if m in out else c
        return Form(self.gens, out)

    def conj_form(self) -> "Form":
        partner = self.gens.partner
        out: dict[int, CycloScalar] = {}
        for m, c in self.terms.items():
            images = [partner[j] for j in range(len(partner)) if m >> j & 1]
            mask, sign = _sort_indices(images)
            cc = c.conj()
            out[mask] = -cc if sign < 0 else cc
        return Form(self.gens, out)

    def bidegree_split(self) -> dict[tuple[int, int], "Form"]:
        tags = self.gens.bidegree
        pieces: dict[tuple[int, int], dict[int, CycloScalar]] = {}
        for m, c in self.terms.items():
            p = sum(1 for j in range(len(tags)) if m >> j & 1 and tags[j] == (1, 0))
            q = degree_of(m) - p
            pieces.setdefault((p, q), {})[m] = c
        return {pq: Form(self.gens, t) for pq, t in sorted(pieces.items())}

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form({self})"


def _sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return degree_of(mask), tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


def _sort_indices(indices: list[int]) -> tuple[int, int]:
    # parity of the sorting permutation by counting inversions
    inv = sum(1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b])
    mask = 0
    for j in indices:
        mask |= 1 << j
    return mask, -1 if inv & 1 else 1


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def conj_form(a: Form) -> Form:
    return a.conj_form()


def bidegree_split(a: Form) -> dict[tuple[int, int], Form]:
    return a.bidegree_split()


def wedge_all(forms: Iterable[Form]) -> Form:
    it = iter(forms)
    out = next(it)
    for f in it:
        out = out.wedge(f)
    return out


# -- text syntax ------------------------------------------------------------

def format_form(a: Form) -> str:
    """Render in config syntax, e.g. ``-z^3*mu^~mu + nu^theta``."""
    if a.is_zero():
        return "0"
    out: list[str] = []
    for mask, c in a:
        mono = "^".join(a.gens.mask_names(mask))
        neg = False
        if c == 1:
            coef = ""
        elif c == -1:
            coef, neg = "", True
        else:
            nz = [x for x in c.coefficients if x]
            if len(nz) == 1 and nz[0] < 0:
                coef, neg = str(-c), True
            else:
                coef = str(c)
            if len(nz) > 1:
                coef = f"({coef})"
        if mono:
            body = f"{coef}*{mono}" if coef else mono
        else:
            body = coef or "1"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(~?[A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ConfigError(f"unexpected character {ch!r}", column=m.start(3) + 1)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _FormParser:
    def __init__(self, text: str, gens: GeneratorSet):
        self.toks = _tokenize(text)
        self.pos = 0
        self.gens = gens
        self.field = gens.field

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ConfigError(msg, column=tok[2] + 1)

    def parse(self) -> Form:
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self) -> Form:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Form:
        out = self.wedge()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            rhs = self.wedge()
            if op[1] == "*":
                out = out.wedge(rhs)
            else:
                try:
                    divisor = rhs.scalar_part()
                except DomainError:
                    self.fail("can only divide by a scalar", op)
                if divisor.is_zero():
                    self.fail("division by zero", op)
                out = out * divisor.inv()
        return out

    def wedge(self) -> Form:
        out = self.unary()
        while self.peek() == ("op", "^", self.peek()[2]):
            self.take()
            if self.peek()[0] == "int":
                self.fail("exponents are only allowed on z, z6 and i")
            out = out.wedge(self.unary())
        return out

    def unary(self) -> Form:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.atom()

    def _exponent(self) -> int | None:
        if self.peek()[0] == "op" and self.peek()[1] == "^" and self.toks[self.pos + 1][0] in ("int", "op"):
            nxt = self.toks[self.pos + 1]
            if nxt[0] == "int":
                self.pos += 2
                return int(nxt[1])
            if nxt[1] == "-" and self.toks[self.pos + 2][0] == "int":
                self.pos += 3
                return -int(self.toks[self.pos - 1][1])
        return None

    def atom(self) -> Form:
        kind, val, col = self.take()
        if kind == "int":
            return Form.scalar(self.gens, int(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take()[1] != ")":
                self.fail("expected ')'", self.toks[self.pos - 1])
            return inner
        if kind == "name":
            if val in RESERVED_NAMES:
                base = self._reserved(val, (kind, val, col))
                k = self._exponent()
                return Form.scalar(self.gens, base if k is None else base**k)
            if val not in self.gens.names:
                raise ConfigError(f"unknown generator {val!r}", column=col + 1, kind="unknown-generator")
            return self.gens.generator(val)
        self.fail(f"unexpected token {val!r}" if val else "unexpected end of expression", (kind, val, col))

    def _reserved(self, name: str, tok) -> CycloScalar:
        try:
            if name == "z":
                return self.field.zeta(1)
            if name == "z6":
                return self.field.root_of_unity(6)
            return self.field.root_of_unity(4)
        except DomainError as exc:
            self.fail(str(exc), tok)


def parse_form(text: str, gens: GeneratorSet | None = None, field: CyclotomicField | None = None) -> Form:
    """Parse a form expression like ``-z^9*mu^~mu + nu^theta``.

    Without ``gens`` only scalar expressions are accepted.
    """
    if gens is None:
        gens = GeneratorSet((), (), (), field or CyclotomicField(DEFAULT_ORDER))
    return _FormParser(text, gens).parse()
