"""Exact coefficient fields, monomial orders and sparse multivariate polynomials.

Polynomials are immutable. Terms are stored in a dict keyed by exponent
tuples, inserted in descending order of the ring's default monomial order so
that two equal polynomials have identical term sequences.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

Monomial = Tuple[int, ...]


class FieldError(ValueError):
    """A coefficient cannot be represented in the requested field."""


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    """Syntax error in a polynomial string; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


# ----------------------------------------------------------------------------
# Fields
# ----------------------------------------------------------------------------


class RationalField:
    """The rationals, with ``fractions.Fraction`` scalars."""

    characteristic = 0
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise FieldError(f"cannot convert {value!r} to a rational")

    @staticmethod
    def inv(a: Fraction) -> Fraction:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @staticmethod
    def div(a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def to_str(self, a: Fraction) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class PrimeField:
    """The field with ``p`` elements; scalars are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        p = self.p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} is not representable over GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            return self(Fraction(value))
        raise FieldError(f"cannot convert {value!r} to GF({p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def to_str(self, a: int) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ----------------------------------------------------------------------------
# Monomial orders
# ----------------------------------------------------------------------------


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


class MonomialOrder:
    """A multiplicative total order on exponent tuples.

    ``key(m)`` maps a monomial to a tuple that compares like the monomial.
    """

    name = "abstract"

    def __init__(self):
        self._cache: Dict[Monomial, tuple] = {}

    def key(self, m: Monomial):
        k = self._cache.get(m)
        if k is None:
            k = self._cache[m] = self._key(m)
        return k

    def _key(self, m: Monomial):
        raise NotImplementedError

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        return ()

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def _key(self, m):
        return m


class GrevLex(MonomialOrder):
    name = "grevlex"

    def _key(self, m):
        return _grevlex_key(m)


class Elimination(MonomialOrder):
    """Block order: grevlex on the first ``split`` variables, ties broken by
    grevlex on the rest. Eliminates the first block."""

    def __init__(self, split: int):
        super().__init__()
        if split < 0:
            raise ValueError("split index must be non-negative")
        self.split = split
        self.name = f"elim({split})"

    def _key(self, m):
        k = self.split
        return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))

    def _ident(self):
        return (self.split,)


def order_from_name(name: str) -> MonomialOrder:
    name = name.strip().lower()
    if name == "lex":
        return Lex()
    if name == "grevlex":
        return GrevLex()
    m = re.fullmatch(r"elim(?:ination)?\((\d+)\)", name)
    if m:
        return Elimination(int(m.group(1)))
    raise ValueError(f"unknown monomial order {name!r}")


# ----------------------------------------------------------------------------
# Rings and polynomials
# ----------------------------------------------------------------------------


class PolyRing:
    """``field[vars]`` with a default monomial order (grevlex unless given)."""

    def __init__(self, field, variables: Sequence[str], order: MonomialOrder | None = None):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        self.order = order if order is not None else GrevLex()
        self._index = {v: i for i, v in enumerate(variables)}

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}] ({self.order.name})"

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index) -> "Polynomial":
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError(f"{value.ring!r} vs {self!r}")
            return value
        if isinstance(value, str):
            return parse_polynomial(value, self)
        return self.constant(value)

    def from_terms(self, terms: Dict[Monomial, object]) -> "Polynomial":
        """Polynomial from an exponent→coefficient dict; zero coefficients dropped."""
        F = self.field
        clean = {}
        for m, c in terms.items():
            if len(m) != self.nvars:
                raise ValueError(f"monomial {m} has wrong length for {self!r}")
            c = F(c)
            if c:
                clean[tuple(m)] = c
        return Polynomial(self, clean)


def _sorted_terms(ring: PolyRing, terms: dict) -> dict:
    key = ring.order.key
    return {m: terms[m] for m in sorted(terms, key=key, reverse=True)}


class Polynomial:
    """Immutable polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, _sorted: bool = False):
        self.ring = ring
        self.terms = terms if _sorted else _sorted_terms(ring, terms)
        self._hash = None

    # -- basic structure -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.terms.items())))
        return self._hash

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def leading_term(self, order: MonomialOrder | None = None):
        return leading_term(self, order)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        return poly_arith(self, self._coerce(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return poly_arith(self, self._coerce(other), "sub")

    def __rsub__(self, other):
        return poly_arith(self._coerce(other), self, "sub")

    def __mul__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return poly_arith(self, self._coerce(other), "mul")

    __rmul__ = __mul__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()}, _sorted=True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self.terms.items()}, _sorted=True)

    # -- printing ------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Exact ``f op g`` for ``op`` in {'add', 'sub', 'mul'}."""
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring!r} vs {g.ring!r}")
    ring = f.ring
    F = ring.field
    if op == "add" or op == "sub":
        out = dict(f.terms)
        combine = F.add if op == "add" else F.sub
        for m, c in g.terms.items():
            if m in out:
                v = combine(out[m], c)
                if v:
                    out[m] = v
                else:
                    del out[m]
            else:
                out[m] = c if op == "add" else F.neg(c)
        return Polynomial(ring, out)
    if op == "mul":
        out: dict = {}
        add, mul = F.add, F.mul
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = mul(c1, c2)
                if m in out:
                    v = add(out[m], v)
                    if v:
                        out[m] = v
                    else:
                        del out[m]
                elif v:
                    out[m] = v
        return Polynomial(ring, out)
    raise ValueError(f"unknown operation {op!r}")


def leading_term(f: Polynomial, order: MonomialOrder | None = None):
    """Return ``(monomial, coefficient)`` of the order-maximal term of ``f``."""
    if not f.terms:
        raise ValueError("zero polynomial has no leading term")
    if order is None or order == f.ring.order:
        m = next(iter(f.terms))
    else:
        m = max(f.terms, key=order.key)
    return m, f.terms[m]


# ----------------------------------------------------------------------------
# Printing and parsing
# ----------------------------------------------------------------------------


def _format_monomial(ring: PolyRing, m: Monomial) -> str:
    parts = []
    for v, e in zip(ring.variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Render ``f`` in the input grammar (``parse_polynomial`` inverts this)."""
    if not f.terms:
        return "0"
    F = f.ring.field
    pieces = []
    for m, c in f.terms.items():
        if isinstance(F, PrimeField):
            neg, mag = False, c
        else:
            neg, mag = c < 0, abs(c)
        mon = _format_monomial(f.ring, m)
        if not mon:
            body = F.to_str(mag)
        elif mag == 1:
            body = mon
        else:
            body = f"{F.to_str(mag)}*{mon}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` in the grammar

    ``expr := term (("+"|"-") term)*``, ``term := factor ("*" factor)*``,
    ``factor := coeff | var ("^" uint)?``, ``coeff := int ("/" uint)?``,
    with an optional unary minus on the first term.
    """
    tokens = _tokenize(text)
    i = 0
    F = ring.field
    nv = ring.nvars

    def peek():
        return tokens[i]

    def expect(kind, value=None):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] if tok[0] != "end" else "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2], text)
        i += 1
        return tok

    def parse_factor():
        nonlocal i
        tok = peek()
        if tok[0] == "int":
            i += 1
            value = Fraction(int(tok[1]))
            if peek()[0] == "op" and peek()[1] == "/":
                i += 1
                den = expect("int")
                if int(den[1]) == 0:
                    raise ParseError("division by zero", den[2], text)
                value = value / int(den[1])
            try:
                c = F(value)
            except FieldError as exc:
                raise FieldError(f"{exc} (at position {tok[2]})") from None
            return (0,) * nv, c
        if tok[0] == "name":
            i += 1
            if tok[1] not in ring._index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], text)
            e = [0] * nv
            power = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                power = int(expect("int")[1])
            e[ring._index[tok[1]]] = power
            return tuple(e), F.one
        got = tok[1] if tok[0] != "end" else "end of input"
        raise ParseError(f"expected coefficient or variable, got {got!r}", tok[2], text)

    def parse_term():
        nonlocal i
        mono, coeff = parse_factor()
        while peek()[0] == "op" and peek()[1] == "*":
            i += 1
            m2, c2 = parse_factor()
            mono = tuple(a + b for a, b in zip(mono, m2))
            coeff = F.mul(coeff, c2)
        return mono, coeff

    acc: dict = {}

    def accumulate(mono, coeff, negate):
        if negate:
            coeff = F.neg(coeff)
        v = F.add(acc.get(mono, F.zero), coeff)
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)

    negate = False
    if peek()[0] == "op" and peek()[1] == "-":
        i += 1
        negate = True
    accumulate(*parse_term(), negate)
    while peek()[0] == "op" and peek()[1] in "+-":
        negate = peek()[1] == "-"
        i += 1
        accumulate(*parse_term(), negate)
    expect("end")
    return Polynomial(ring, acc)


def polynomials(ring: PolyRing, items: Iterable) -> list:
    """Coerce strings/ints/polynomials into a list of ring elements."""
    return [ring(x) for x in items]
