"""Group descriptors: formal products of classical/exceptional/torus factors.

The descriptor grammar is shared by the CLI and the classification dataset:

    SL(7)  SO(9)  Sp(8)  GL(4)  SGL(4,3)  Spin(7)  Gm  DeltaSL2(q=4)
    A5  B3  C4  D5  E6  E7  E8  F4  G2  At1  At2

with `x` (or `*`) as product separator, e.g. ``G2xSp(2)`` and ``Gm*Sp(6)``.
Dataset rows additionally allow linear expressions in integer parameters as
sizes (``SO(m+n-1)``, ``Sp(2n)``); a descriptor is the special case with no
free parameters.

Dimension and rank are insensitive to isogeny, so ``Gm*X`` counts as a plain
product and tensor-embedded subgroups are represented by the abstract product
of their factors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .rootsys import NonSimpleError, SimpleType, canonicalize, dim_group, validate
from .weights import Characteristic


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        self.text = text
        self.pos = pos
        super().__init__(f"parse error at position {pos}: {message} (in {text!r})")


# ---------------------------------------------------------------------------
# linear size expressions


@dataclass(frozen=True)
class LinExpr:
    """Integer-linear expression c0 + sum coeff_v * v over parameters."""

    const: int = 0
    terms: tuple[tuple[str, int], ...] = ()

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.terms)

    def value(self, env: dict[str, int] | None = None) -> int:
        env = env or {}
        total = self.const
        for v, c in self.terms:
            if v not in env:
                raise KeyError(f"unbound parameter {v!r}")
            total += c * env[v]
        return total

    def __str__(self):
        parts = []
        for v, c in self.terms:
            if c == 1:
                term = v
            elif c == -1:
                term = f"-{v}"
            else:
                term = f"{c}{v}"
            parts.append(term if not parts else (f"+{term}" if c > 0 else term))
        if self.const or not parts:
            sign = "+" if (parts and self.const > 0) else ""
            parts.append(f"{sign}{self.const}")
        return "".join(parts)


_TERM_RE = re.compile(r"\s*([+-]?)\s*(\d+)?\s*([a-z]?)")


def parse_linexpr(text: str, base: int = 0) -> LinExpr:
    const = 0
    terms: dict[str, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or (not m.group(2) and not m.group(3)):
            raise ParseError(text, base + pos, "expected integer or parameter")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(1) == "" and not first:
            raise ParseError(text, base + pos, "expected '+' or '-'")
        coeff = int(m.group(2)) if m.group(2) else 1
        var = m.group(3)
        if var:
            terms[var] = terms.get(var, 0) + sign * coeff
        else:
            const += sign * coeff
        pos = m.end()
        first = False
    if first:
        raise ParseError(text, base, "empty size expression")
    return LinExpr(const, tuple(sorted((v, c) for v, c in terms.items() if c)))


# ---------------------------------------------------------------------------
# concrete factors


class InvalidFactorError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    kind: str  # SL SO Sp GL SGL Spin T Dq TY
    a: int = 0
    b: int = 0
    family: str = ""
    short: bool = False

    def __post_init__(self):
        k = self.kind
        if k == "SL" and self.a < 1:
            raise InvalidFactorError(f"SL({self.a})")
        if k in ("SO", "Spin", "GL") and self.a < 0:
            raise InvalidFactorError(f"{k}({self.a})")
        if k == "Sp" and (self.a < 0 or self.a % 2):
            raise InvalidFactorError(f"Sp({self.a}) needs an even non-negative size")
        if k == "SGL" and (self.a < 1 or self.b < 1):
            raise InvalidFactorError(f"SGL({self.a},{self.b})")
        if k == "T" and self.a < 0:
            raise InvalidFactorError(f"torus of dimension {self.a}")
        if k == "Dq" and self.a < 2:
            raise InvalidFactorError(f"twisted SL2 needs q > 1, got {self.a}")
        if k == "TY":
            validate(SimpleType(self.family, self.a))
            if self.short and (self.family, self.a) not in (("A", 1), ("A", 2)):
                raise InvalidFactorError("short-root types exist only as At1, At2")

    @property
    def dim(self) -> int:
        k, n = self.kind, self.a
        if k == "SL":
            return n * n - 1
        if k in ("SO", "Spin"):
            return n * (n - 1) // 2
        if k == "Sp":
            return n * (n + 1) // 2
        if k == "GL":
            return n * n
        if k == "SGL":
            return self.a**2 + self.b**2 - 1
        if k == "T":
            return n
        if k == "Dq":
            return 3
        return dim_group(SimpleType(self.family, self.a))

    @property
    def rank(self) -> int:
        k, n = self.kind, self.a
        if k == "SL":
            return n - 1
        if k in ("SO", "Spin"):
            return n // 2
        if k == "Sp":
            return n // 2
        if k == "GL":
            return n
        if k == "SGL":
            return self.a + self.b - 1
        if k == "T":
            return n
        if k == "Dq":
            return 1
        return self.a

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0 and self.rank == 0

    def label(self) -> str:
        k = self.kind
        if k == "T":
            return "Gm" if self.a == 1 else f"Gm^{self.a}"
        if k == "Dq":
            return f"DeltaSL2(q={self.a})"
        if k == "SGL":
            return f"SGL({self.a},{self.b})"
        if k == "TY":
            return f"At{self.a}" if self.short else f"{self.family}{self.a}"
        return f"{k}({self.a})"

    def atoms(self) -> list[tuple[str, str, int]]:
        """Isogeny-invariant signature atoms (simple types + torus parts)."""
        k, n = self.kind, self.a
        if k == "SL":
            return [("S", "A", n - 1)] if n >= 2 else []
        if k in ("SO", "Spin"):
            if n <= 1:
                return []
            if n == 2:
                return [("T", "", 1)]
            if n == 3:
                return [("S", "A", 1)]
            if n == 4:
                return [("S", "A", 1), ("S", "A", 1)]
            if n == 5:
                return [("S", "B", 2)]
            if n == 6:
                return [("S", "A", 3)]
            half = n // 2
            return [("S", "B" if n % 2 else "D", half)]
        if k == "Sp":
            if n == 0:
                return []
            if n == 2:
                return [("S", "A", 1)]
            if n == 4:
                return [("S", "B", 2)]
            return [("S", "C", n // 2)]
        if k == "GL":
            return ([("T", "", 1)] + Factor("SL", n).atoms()) if n >= 1 else []
        if k == "SGL":
            return [("T", "", 1)] + Factor("SL", self.a).atoms() + Factor("SL", self.b).atoms()
        if k == "T":
            return [("T", "", n)] if n else []
        if k == "Dq":
            return [("Dq", "", n)]
        if self.short:
            return [("St", self.family, self.a)]
        c = canonicalize(SimpleType(self.family, self.a))
        return [("S", c.family, c.rank)]


def sl(n):
    return Factor("SL", n)


def so(n):
    return Factor("SO", n)


def sp(n):
    return Factor("Sp", n)


def gl(n):
    return Factor("GL", n)


def sgl(m, n):
    return Factor("SGL", m, n)


def spin(n):
    return Factor("Spin", n)


def torus(d=1):
    return Factor("T", d)


def delta_sl2(q):
    return Factor("Dq", q)


def type_atom(family, rank, short=False):
    return Factor("TY", rank, family=family, short=short)


@dataclass(frozen=True)
class NonSimple:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class GroupDescriptor:
    factors: tuple[Factor, ...]

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def dim_flag(self) -> int:
        """dim G/B = (dim - rank)/2; an odd difference means a bad descriptor."""
        diff = self.dim - self.rank
        if diff % 2:
            raise InvalidFactorError(f"dim - rank odd for {self}: not reductive data")
        return diff // 2

    @property
    def is_trivial(self) -> bool:
        return all(f.is_trivial for f in self.factors)

    def nontrivial_factors(self) -> tuple[Factor, ...]:
        return tuple(f for f in self.factors if not f.is_trivial)

    def signature(self) -> tuple[tuple[str, str, int], ...]:
        """Sorted multiset of simple-type atoms with torus dims aggregated."""
        atoms: list[tuple[str, str, int]] = []
        tdim = 0
        for f in self.factors:
            for a in f.atoms():
                if a[0] == "T":
                    tdim += a[2]
                else:
                    atoms.append(a)
        atoms.sort()
        if tdim:
            atoms.append(("T", "", tdim))
        return tuple(atoms)

    def __str__(self):
        return "x".join(f.label() for f in self.factors) if self.factors else "1"


def descriptor(*factors: Factor) -> GroupDescriptor:
    return GroupDescriptor(tuple(factors))


def simple_type_of(g: GroupDescriptor) -> SimpleType | NonSimple:
    """Canonical simple type of a one-factor descriptor, else NonSimple."""
    facs = g.nontrivial_factors()
    if len(facs) != 1:
        return NonSimple("trivial" if not facs else "product of several factors")
    f = facs[0]
    k, n = f.kind, f.a
    if k == "SL":
        return SimpleType("A", n - 1)
    if k == "Sp":
        return SimpleType("A", 1) if n == 2 else canonicalize(SimpleType("C", n // 2))
    if k in ("SO", "Spin"):
        if n in (1, 2):
            return NonSimple(f"{k}({n}) is a torus" if n == 2 else f"{k}(1) is trivial")
        if n == 4:
            return NonSimple(f"{k}(4) is a product of two A1 factors")
        if n == 3:
            return SimpleType("A", 1)
        if n == 5:
            return SimpleType("B", 2)
        return canonicalize(SimpleType("B" if n % 2 else "D", n // 2))
    if k in ("GL", "SGL", "T"):
        return NonSimple(f"{f.label()} has a central torus")
    if k == "Dq":
        return SimpleType("A", 1)
    return canonicalize(SimpleType(f.family, f.a))


def normalize_strictly_classical(
    g: GroupDescriptor, p: Characteristic
) -> tuple[GroupDescriptor, tuple[str, ...]]:
    """At p = 2 replace every SO(2n+1) factor (n >= 1) by Sp(2n).

    Returns the normalized descriptor together with the substitutions made,
    for citation output.  A no-op away from characteristic 2.
    """
    if p.value != 2:
        return g, ()
    out = []
    subs = []
    for f in g.factors:
        if f.kind == "SO" and f.a % 2 == 1 and f.a >= 3:
            out.append(sp(f.a - 1))
            subs.append(f"SO({f.a}) -> Sp({f.a - 1})")
        else:
            out.append(f)
    return GroupDescriptor(tuple(out)), tuple(subs)


# ---------------------------------------------------------------------------
# characteristic conditions on table rows


_CHAR_TOKENS = ("any", "p=2", "p=3", "p!=2", "p!=3", "p!=2,3", "q>1")


@dataclass(frozen=True)
class CharCondition:
    token: str

    def __post_init__(self):
        if self.token not in _CHAR_TOKENS:
            raise ValueError(f"unknown characteristic condition {self.token!r}")

    def matches(self, p: Characteristic) -> bool:
        v = p.value
        if self.token == "any":
            return True
        if self.token == "p=2":
            return v == 2
        if self.token == "p=3":
            return v == 3
        if self.token == "p!=2":
            return v != 2
        if self.token == "p!=3":
            return v != 3
        if self.token == "p!=2,3":
            return v not in (2, 3)
        return v > 0  # q>1 needs a positive characteristic

    def __str__(self):
        return self.token


ANY_CHAR = CharCondition("any")


# ---------------------------------------------------------------------------
# patterns and the parser


@dataclass(frozen=True)
class FactorPattern:
    kind: str
    a: LinExpr | None = None
    b: LinExpr | None = None
    family: str = ""
    short: bool = False

    @property
    def variables(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        if self.a is not None:
            out |= self.a.variables
        if self.b is not None:
            out |= self.b.variables
        return out

    def instantiate(self, env: dict[str, int]) -> Factor:
        a = self.a.value(env) if self.a is not None else 0
        b = self.b.value(env) if self.b is not None else 0
        return Factor(self.kind, a, b, self.family, self.short)


@dataclass(frozen=True)
class GroupPattern:
    factors: tuple[FactorPattern, ...]
    text: str = field(default="", compare=False)

    @property
    def variables(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for f in self.factors:
            out |= f.variables
        return out

    @property
    def is_concrete(self) -> bool:
        return not self.variables

    def instantiate(self, env: dict[str, int] | None = None) -> GroupDescriptor:
        """Concrete descriptor for the binding, InvalidFactorError if degenerate."""
        env = env or {}
        return GroupDescriptor(tuple(f.instantiate(env) for f in self.factors))

    def try_instantiate(self, env: dict[str, int] | None = None) -> GroupDescriptor | None:
        try:
            return self.instantiate(env)
        except InvalidFactorError:
            return None

    def __str__(self):
        return self.text


_KEYWORDS = ("DeltaSL2", "Spin", "SGL", "SL", "SO", "Sp", "GL", "Gm", "At1", "At2")
_TYPE_RE = re.compile(r"([ABCDEFG])([0-9]+)")


def _parse_args(text: str, pos: int) -> tuple[list[LinExpr], int]:
    if pos >= len(text) or text[pos] != "(":
        raise ParseError(text, pos, "expected '('")
    depth_end = text.find(")", pos)
    if depth_end < 0:
        raise ParseError(text, pos, "unbalanced '('")
    inner = text[pos + 1 : depth_end]
    args = []
    offset = pos + 1
    for piece in inner.split(","):
        args.append(parse_linexpr(piece.strip(), offset))
        offset += len(piece) + 1
    return args, depth_end + 1


def parse_pattern(text: str) -> GroupPattern:
    """Parse the descriptor grammar, allowing parameterized sizes."""
    factors: list[FactorPattern] = []
    pos = 0
    expect_factor = True
    stripped = text
    while pos < len(stripped):
        ch = stripped[pos]
        if ch.isspace():
            pos += 1
            continue
        if not expect_factor:
            if ch in ("x", "*"):
                pos += 1
                expect_factor = True
                continue
            raise ParseError(text, pos, "expected product separator 'x' or '*'")
        keyword = next((k for k in _KEYWORDS if stripped.startswith(k, pos)), None)
        if keyword == "Gm":
            factors.append(FactorPattern("T", LinExpr(1)))
            pos += 2
        elif keyword in ("At1", "At2"):
            factors.append(FactorPattern("TY", LinExpr(int(keyword[2])), family="A", short=True))
            pos += 3
        elif keyword == "DeltaSL2":
            argpos = pos + len(keyword)
            if argpos >= len(stripped) or stripped[argpos] != "(":
                raise ParseError(text, argpos, "expected '(q=...)'")
            inner_end = stripped.find(")", argpos)
            if inner_end < 0:
                raise ParseError(text, argpos, "unbalanced '('")
            inner = stripped[argpos + 1 : inner_end].strip()
            if inner.startswith("q="):
                inner = inner[2:]
            expr = parse_linexpr(inner, argpos + 1)
            factors.append(FactorPattern("Dq", expr))
            pos = inner_end + 1
        elif keyword == "SGL":
            args, pos = _parse_args(stripped, pos + 3)
            if len(args) != 2:
                raise ParseError(text, pos, "SGL takes two arguments")
            factors.append(FactorPattern("SGL", args[0], args[1]))
        elif keyword is not None:
            args, pos = _parse_args(stripped, pos + len(keyword))
            if len(args) != 1:
                raise ParseError(text, pos, f"{keyword} takes one argument")
            factors.append(FactorPattern(keyword, args[0]))
        else:
            m = _TYPE_RE.match(stripped, pos)
            if not m:
                raise ParseError(text, pos, "expected a group factor")
            fam, rank = m.group(1), int(m.group(2))
            try:
                validate(SimpleType(fam, rank))
            except NonSimpleError as exc:
                raise ParseError(text, pos, str(exc)) from None
            except ValueError as exc:
                raise ParseError(text, pos, str(exc)) from None
            factors.append(FactorPattern("TY", LinExpr(rank), family=fam))
            pos = m.end()
        expect_factor = False
    if expect_factor:
        raise ParseError(text, pos, "empty descriptor" if not factors else "trailing separator")
    return GroupPattern(tuple(factors), text)


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse a concrete descriptor; free parameters are a parse error."""
    pat = parse_pattern(text)
    if not pat.is_concrete:
        free = ",".join(sorted(pat.variables))
        raise ParseError(text, 0, f"descriptor has unbound parameters: {free}")
    try:
        return pat.instantiate({})
    except InvalidFactorError as exc:
        raise ParseError(text, 0, str(exc)) from None
