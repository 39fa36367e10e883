"""Sparse multivariate polynomials over the integers.

Polynomials are immutable and canonical: terms are stored in descending
graded-lex order with no zero coefficients, so equality of two polynomials is
equality of their term tuples.  Coefficients are Python ints (unbounded).

The module also hosts the structural decompositions used everywhere else:
homogeneous parts, Taylor shifts, gradients, vanishing orders and the
reducedness tests (over Q and modulo a prime).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

import sympy as sp

MAX_NVARS = 16
ALIASES = ("x", "y", "z", "w")

Exponent = tuple[int, ...]


def _grlex_key(exp: Exponent):
    return (-sum(exp), tuple(-e for e in exp))


@dataclass(frozen=True)
class Polynomial:
    nvars: int
    terms: tuple[tuple[Exponent, int], ...]

    def __post_init__(self):
        if not 1 <= self.nvars <= MAX_NVARS:
            raise ValueError(f"nvars must be in 1..{MAX_NVARS}, got {self.nvars}")

    # -- construction ------------------------------------------------------
    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[Sequence[int], int]) -> "Polynomial":
        clean: dict[Exponent, int] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
        items = sorted(((e, c) for e, c in clean.items() if c), key=lambda t: _grlex_key(t[0]))
        return cls(nvars, tuple(items))

    @classmethod
    def constant(cls, nvars: int, c: int) -> "Polynomial":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls.from_dict(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: int = 1) -> "Polynomial":
        return cls.from_dict(len(exp), {tuple(exp): c})

    @classmethod
    def parse(cls, text: str, nvars: int) -> "Polynomial":
        return parse_polynomial(text, nvars)

    # -- basic queries -----------------------------------------------------
    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.as_dict().get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def support(self) -> list[Exponent]:
        return [e for e, _ in self.terms]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def lowest_degree(self) -> int | float:
        return min((sum(e) for e, _ in self.terms), default=math.inf)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e, _ in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for _, c in self.terms), 0)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Polynomial.from_dict(self.nvars, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return Polynomial.from_dict(self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        return Polynomial.from_dict(self.nvars, {e: c * a for e, a in self.terms})

    def exact_div(self, c: int) -> "Polynomial":
        """Divide every coefficient by ``c``; raises if any is not divisible."""
        out = {}
        for e, a in self.terms:
            q, rem = divmod(a, c)
            if rem:
                raise ArithmeticError(f"coefficient {a} not divisible by {c}")
            out[e] = q
        return Polynomial.from_dict(self.nvars, out)

    def scale_variables(self, c: int) -> "Polynomial":
        """Return P(c*x)."""
        return Polynomial.from_dict(self.nvars, {e: a * c ** sum(e) for e, a in self.terms})

    def without_constant(self) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, c) for e, c in self.terms if sum(e)))

    def derivative(self, i: int) -> "Polynomial":
        d = {}
        for e, c in self.terms:
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                d[tuple(ne)] = c * e[i]
        return Polynomial.from_dict(self.nvars, d)

    def evaluate(self, point: Sequence, modulus: int | None = None):
        """Evaluate at ``point`` (ints or Fractions); reduce mod ``modulus`` if given."""
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0
        if modulus is None:
            for e, c in self.terms:
                v = c
                for xi, k in zip(point, e):
                    if k:
                        v *= xi ** k
                total += v
            return total
        for e, c in self.terms:
            v = c % modulus
            for xi, k in zip(point, e):
                if k:
                    v = v * pow(int(xi), k, modulus) % modulus
            total += v
        return total % modulus

    __call__ = evaluate

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, c) for e, c in self.terms if sum(e) == d))

    # -- printing ----------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# parsing and printing


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch in "xyzw":
            j = i + 1
            if ch == "x" and j < len(text) and text[j].isdigit():
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("var", int(text[i + 1:j]), i))
            else:
                tokens.append(("var", ALIASES.index(ch) + 1, i))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # expr := ['+'|'-'] term (('+'|'-') term)*
    # term := factor ('*' factor)*; factor := base ('^' uint)?
    # base := int | var | '(' expr ')'
    def __init__(self, text: str, nvars: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[0]!r}", tok[2])
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        result = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            return base ** self.take("int")[1]
        return base

    def base(self) -> Polynomial:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Polynomial.constant(self.nvars, value)
        if kind == "var":
            self.take()
            if not 1 <= value <= self.nvars:
                raise ParseError(f"variable index {value} out of range 1..{self.nvars}", pos)
            return Polynomial.variable(self.nvars, value - 1)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {kind!r}", pos)


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse an integer polynomial expression in x1..xn (aliases x, y, z, w)."""
    return _Parser(text, nvars).parse()


def _var_name(i: int, nvars: int) -> str:
    return ALIASES[i] if nvars <= 3 else f"x{i + 1}"


def format_polynomial(f: Polynomial) -> str:
    """Canonical printer: graded-lex descending, explicit '*' and '^'."""
    if f.is_zero():
        return "0"
    pieces = []
    for k, (exp, c) in enumerate(f.terms):
        factors = []
        for i, e in enumerate(exp):
            if e == 1:
                factors.append(_var_name(i, f.nvars))
            elif e > 1:
                factors.append(f"{_var_name(i, f.nvars)}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if k == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class HomogeneousDecomposition:
    parts: tuple[tuple[int, Polynomial], ...]

    @property
    def lowest(self) -> int:
        return self.parts[0][0]

    def part(self, d: int) -> Polynomial:
        """The degree-d part, or the zero polynomial."""
        for deg, p in self.parts:
            if deg == d:
                return p
        return Polynomial(self.parts[0][1].nvars, ())

    def reconstruct(self) -> Polynomial:
        return reduce(lambda a, b: a + b, (p for _, p in self.parts))


def homogeneous_parts(f: Polynomial) -> HomogeneousDecomposition:
    if f.is_zero():
        raise ValueError("zero polynomial has no homogeneous decomposition")
    degrees = sorted({sum(e) for e, _ in f.terms})
    return HomogeneousDecomposition(tuple((d, f.homogeneous_component(d)) for d in degrees))


def _shift_dict(terms: Mapping[Exponent, object], nvars: int, point: Sequence) -> dict:
    current = dict(terms)
    for i, yi in enumerate(point):
        if yi == 0:
            continue
        nxt: dict = {}
        for e, c in current.items():
            k = e[i]
            for j in range(k + 1):
                ne = e[:i] + (j,) + e[i + 1:]
                nxt[ne] = nxt.get(ne, 0) + c * math.comb(k, j) * yi ** (k - j)
        current = nxt
    return {e: c for e, c in current.items() if c}


def taylor_shift(F: Polynomial, y: Sequence[int]) -> Polynomial:
    """Return F(x + y) - F(y), an integer polynomial vanishing at 0."""
    if len(y) != F.nvars:
        raise ValueError(f"point has length {len(y)}, expected {F.nvars}")
    if any(not isinstance(v, int) for v in y):
        raise TypeError("taylor_shift needs integer points; use shifted_germ for rationals")
    d = _shift_dict(F.as_dict(), F.nvars, y)
    d.pop((0,) * F.nvars, None)
    return Polynomial.from_dict(F.nvars, d)


def shifted_germ(F: Polynomial, y: Sequence) -> Polynomial:
    """F(x + y) - F(y) for a rational point y, scaled to a primitive integer polynomial.

    Orders of vanishing, reducedness and log-canonical thresholds are invariant
    under the scaling, so this is the germ used by the lct toolkit.
    """
    if len(y) != F.nvars:
        raise ValueError(f"point has length {len(y)}, expected {F.nvars}")
    if all(isinstance(v, int) for v in y):
        g = taylor_shift(F, [int(v) for v in y])
    else:
        fy = [Fraction(v) for v in y]
        d = _shift_dict(F.as_dict(), F.nvars, fy)
        d.pop((0,) * F.nvars, None)
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(c).denominator for c in d.values()), 1)
        g = Polynomial.from_dict(F.nvars, {e: int(Fraction(c) * den) for e, c in d.items()})
    cont = g.content()
    return g.exact_div(cont) if cont > 1 else g


def gradient(F: Polynomial) -> tuple[Polynomial, ...]:
    return tuple(F.derivative(i) for i in range(F.nvars))


def order_of_vanishing(f: Polynomial, at: Sequence) -> int | float:
    """Order of vanishing of f at ``at``: 0 if f(at) != 0, inf for f == 0."""
    if len(at) != f.nvars:
        raise ValueError(f"point has length {len(at)}, expected {f.nvars}")
    if f.is_zero():
        return math.inf
    if f.evaluate(list(at)) != 0:
        return 0
    return shifted_germ(f, at).lowest_degree()


# ---------------------------------------------------------------------------
# reductions


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p**s; raise ValueError otherwise."""
    fac = sp.factorint(q) if q >= 2 else {}
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, s), = fac.items()
    return int(p), int(s)


def reduce_mod(f: Polynomial, q: int) -> Polynomial:
    """Coefficientwise reduction into the prime field of F_q (representatives 0..p-1)."""
    p, _ = prime_power(q)
    return Polynomial.from_dict(f.nvars, {e: c % p for e, c in f.terms})


def _symbols(nvars: int):
    return sp.symbols(f"x1:{nvars + 1}")


def to_sympy(f: Polynomial, modulus: int | None = None) -> sp.Poly:
    gens = _symbols(f.nvars)
    rep = {e: c for e, c in f.terms} or {(0,) * f.nvars: 0}
    if modulus is None:
        return sp.Poly.from_dict(rep, *gens, domain="ZZ")
    return sp.Poly.from_dict(rep, *gens, modulus=modulus)


def from_sympy(P, nvars: int) -> Polynomial:
    P = sp.Poly(P, *_symbols(nvars))
    d = {}
    for e, c in P.terms():
        c = int(c)
        d[tuple(e)] = c
    return Polynomial.from_dict(nvars, d)


def _gcd_with_partials(f: Polynomial, modulus: int | None):
    polys = [to_sympy(f, modulus)] + [to_sympy(g, modulus) for g in gradient(f) if not g.is_zero()]
    g = polys[0]
    for h in polys[1:]:
        g = g.gcd(h)
    return g


def is_reduced(f: Polynomial) -> bool:
    """Squarefree over the algebraic closure of Q (gcd of f with all partials)."""
    if f.is_zero():
        return False
    return _gcd_with_partials(f, None).total_degree() == 0


def is_reduced_mod(f: Polynomial, p: int) -> bool | None:
    """Squarefreeness of f mod p over the algebraic closure of F_p.

    Only answered for p > deg(f); returns None ("indeterminate") otherwise.
    """
    if not sp.isprime(p):
        raise ValueError(f"{p} is not prime")
    if p <= f.degree():
        return None
    return _reduced_mod_unchecked(f, p)


def _reduced_mod_unchecked(f: Polynomial, p: int) -> bool:
    fbar = reduce_mod(f, p)
    if fbar.is_zero():
        return False
    if fbar.is_constant():
        return True
    return _gcd_with_partials(fbar, p).total_degree() == 0


def repeated_part(f: Polynomial) -> Polynomial:
    """Product of the distinct factors of f (over Q) that occur with multiplicity >= 2."""
    _, factors = to_sympy(f).sqf_list()
    out = Polynomial.constant(f.nvars, 1)
    for g, mult in factors:
        if mult >= 2:
            out = out * from_sympy(g, f.nvars)
    return out


def polynomial_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    if g.is_zero():
        return f
    if f.is_zero():
        return g
    return from_sympy(to_sympy(f).gcd(to_sympy(g)), f.nvars)


def divides(g: Polynomial, f: Polynomial) -> bool:
    if f.is_zero():
        return True
    return to_sympy(f).rem(to_sympy(g)).is_zero


def parse_point(values: Iterable) -> tuple:
    """Parse a point given as ints or 'a/b' strings into ints / Fractions."""
    out = []
    for v in values:
        fr = Fraction(v) if not isinstance(v, Fraction) else v
        out.append(int(fr) if fr.denominator == 1 else fr)
    return tuple(out)
