"""Sparse multivariate Laurent polynomials with integer coefficients.

Two families of indeterminates are used throughout the package: piece
variables ``x1, x2, ...`` (one per piece of a dissection) and edge variables
``q1, q2, ...`` (one per boundary edge).  A variable is identified by the
pair ``(kind, index)`` with ``kind`` in ``{"x", "q"}`` and ``index >= 1``.

Monomials are stored as a single Python integer: the exponent of the variable
in slot ``s`` is the balanced base-``2**32`` digit ``s`` of the key.  Adding
two keys therefore multiplies the monomials, which keeps polynomial
multiplication a tight double loop over dictionary items.  Exponents must
stay within ``+-2**31``.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

Var = Tuple[str, int]

_BITS = 32
_BASE = 1 << _BITS
_HALF = 1 << (_BITS - 1)
_MASK = _BASE - 1
_KINDS = ("x", "q")


def _slot(var: Var) -> int:
    kind, index = var
    if kind not in _KINDS:
        raise ValueError(f"unknown variable kind {kind!r}")
    if index < 1:
        raise ValueError(f"variable index must be >= 1, got {index}")
    return 2 * (index - 1) + _KINDS.index(kind)


def _var_of_slot(slot: int) -> Var:
    return (_KINDS[slot % 2], slot // 2 + 1)


def _encode(exps: Mapping[Var, int]) -> int:
    key = 0
    for var, e in exps.items():
        if e:
            if not -_HALF < e < _HALF:
                raise OverflowError(f"exponent {e} out of range")
            key += e << (_BITS * _slot(var))
    return key


def _decode(key: int) -> Dict[Var, int]:
    out = {}
    slot = 0
    while key:
        digit = key & _MASK
        if digit >= _HALF:
            digit -= _BASE
        if digit:
            out[_var_of_slot(slot)] = digit
        key = (key - digit) >> _BITS
        slot += 1
    return out


def _var_order(var: Var) -> Tuple[int, int]:
    # x-variables before q-variables, then by index
    return (_KINDS.index(var[0]), var[1])


class LaurentPoly:
    """Immutable element of Z[x1^+-1, x2^+-1, ..., q1^+-1, q2^+-1, ...].

    Supports ``+``, ``-``, ``*`` and ``**`` (negative powers only for units).
    Integers are coerced automatically, so ``1 + x(1)`` works.  Equality is
    structural, which coincides with mathematical equality because zero
    coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        if terms:
            self._terms = {k: c for k, c in terms.items() if c}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff: int = 1) -> "LaurentPoly":
        if not coeff:
            return cls._raw({})
        return cls._raw({_encode(exps): int(coeff)})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Mapping[Var, int], int]]) -> "LaurentPoly":
        out: Dict[int, int] = {}
        for exps, c in terms:
            k = _encode(exps)
            out[k] = out.get(k, 0) + c
        return cls._raw({k: c for k, c in out.items() if c})

    @staticmethod
    def coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to LaurentPoly")

    # inspection -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> Iterator[Tuple[Dict[Var, int], int]]:
        """Yield ``(exponent dict, coefficient)`` pairs in printing order."""
        for key in self._sorted_keys():
            yield _decode(key), self._terms[key]

    def variables(self) -> set:
        found = set()
        for key in self._terms:
            found.update(_decode(key))
        return found

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> int:
        """Integer value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(0, 0)

    def __int__(self) -> int:
        return self.constant_value()

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> Optional["LaurentPoly"]:
        """Return the inverse if this is ``+-`` a single monomial, else ``None``."""
        if len(self._terms) != 1:
            return None
        (key, c), = self._terms.items()
        if c not in (1, -1):
            return None
        return LaurentPoly._raw({-key: c})

    def inverse(self) -> "LaurentPoly":
        inv = self.is_unit()
        if inv is None:
            raise ValueError(f"{self} is not a unit")
        return inv

    def degree_in(self, var: Var) -> int:
        """Largest exponent of ``var`` over all terms (0 if absent)."""
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(_decode(k).get(var, 0) for k in self._terms)

    def min_degree_in(self, var: Var) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return min(_decode(k).get(var, 0) for k in self._terms)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self) -> "LaurentPoly":
        return self

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) - c
            if s:
                out[k] = s
            else:
                del out[k]
        return LaurentPoly._raw(out)

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return LaurentPoly._raw({k + kb: c * cb for k, c in a.items()})
        out: Dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # transformations ------------------------------------------------------

    def map_monomials(self, fn) -> "LaurentPoly":
        """Apply ``fn: exps -> exps`` to every monomial, keeping coefficients."""
        out: Dict[int, int] = {}
        for k, c in self._terms.items():
            nk = _encode(fn(_decode(k)))
            out[nk] = out.get(nk, 0) + c
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    def subs(self, assignment: Mapping[Var, "LaurentPoly | int"]) -> "LaurentPoly":
        """Substitute polynomials for variables (negative powers need units)."""
        if not assignment:
            return self
        values = {v: LaurentPoly.coerce(p) for v, p in assignment.items()}
        cache: Dict[Tuple[Var, int], LaurentPoly] = {}
        out = ZERO
        for key, c in self._terms.items():
            exps = _decode(key)
            kept = {}
            term = LaurentPoly.const(c)
            for var, e in exps.items():
                if var in values:
                    pw = cache.get((var, e))
                    if pw is None:
                        pw = cache[(var, e)] = values[var] ** e
                    term = term * pw
                else:
                    kept[var] = e
            if kept:
                term = term * LaurentPoly.monomial(kept)
            out = out + term
        return out

    def leading_term(self) -> "LaurentPoly":
        """First term in printing order."""
        if not self._terms:
            return ZERO
        k = self._sorted_keys()[0]
        return LaurentPoly._raw({k: self._terms[k]})

    # printing -------------------------------------------------------------

    def _sorted_keys(self):
        def order(key):
            exps = _decode(key)
            items = sorted(exps.items(), key=lambda ve: _var_order(ve[0]))
            total = sum(exps.values())
            # graded: higher total degree first; then lex on (kind, index)
            return (-total, tuple((_var_order(v), -e) for v, e in items))

        return sorted(self._terms, key=order)

    def to_str(self, names: Optional[Mapping[Var, str]] = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key in self._sorted_keys():
            c = self._terms[key]
            exps = _decode(key)
            factors = []
            for var in sorted(exps, key=_var_order):
                name = names.get(var) if names else None
                if name is None:
                    name = f"{var[0]}{var[1]}"
                e = exps[var]
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()!r})"


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})


def x(i: int) -> LaurentPoly:
    """Piece variable ``x_i``."""
    return LaurentPoly.monomial({("x", i): 1})


def q(j: int) -> LaurentPoly:
    """Edge variable ``q_j``."""
    return LaurentPoly.monomial({("q", j): 1})


def degree_in(p: LaurentPoly, var: Var) -> int:
    return p.degree_in(var)


def is_unit(p: LaurentPoly) -> Optional[LaurentPoly]:
    return p.is_unit()


class VarSet:
    """The variables ``x1..xm, q1..qn`` attached to one dissected n-gon.

    Arithmetic itself never needs a VarSet; it is used to validate that a
    polynomial belongs to the ring of a particular dissection and to carry
    display names.
    """

    def __init__(self, m: int, n: int, piece_names: Optional[Iterable[str]] = None):
        if m < 1 or n < 3:
            raise ValueError(f"need m >= 1 and n >= 3, got m={m}, n={n}")
        self.m = m
        self.n = n
        self.names: Dict[Var, str] = {("x", i): f"x{i}" for i in range(1, m + 1)}
        self.names.update({("q", j): f"q{j}" for j in range(1, n + 1)})
        if piece_names is not None:
            piece_names = list(piece_names)
            if len(piece_names) != m:
                raise ValueError(f"expected {m} piece names, got {len(piece_names)}")
            if len(set(piece_names)) != m:
                raise ValueError("piece names must be distinct")
            for i, name in enumerate(piece_names, 1):
                self.names[("x", i)] = name

    def __contains__(self, var: Var) -> bool:
        kind, i = var
        return (kind == "x" and 1 <= i <= self.m) or (kind == "q" and 1 <= i <= self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSet) and (self.m, self.n) == (other.m, other.n)

    def piece_vars(self):
        return [("x", i) for i in range(1, self.m + 1)]

    def edge_vars(self):
        return [("q", j) for j in range(1, self.n + 1)]

    def check(self, *polys: LaurentPoly) -> None:
        """Raise ``ValueError`` if any polynomial uses a foreign variable."""
        for p in polys:
            bad = [v for v in p.variables() if v not in self]
            if bad:
                raise ValueError(f"{p} uses variables outside the set: {sorted(bad)}")

    def format(self, p: LaurentPoly) -> str:
        return p.to_str(self.names)

    def parse(self, text: str) -> LaurentPoly:
        p = parse(text, {name: var for var, name in self.names.items()})
        self.check(p)
        return p


# parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_DEFAULT_NAME = re.compile(r"([xq])(\d+)$")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot tokenize {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if sym not in "+-*^()":
                raise ValueError(f"unexpected character {sym!r} in {text!r}")
            out.append((sym, sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, names):
        self.tokens = tokens
        self.i = 0
        self.names = names

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind=None):
        if self.i >= len(self.tokens):
            raise ValueError("unexpected end of polynomial text")
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
                acc = acc * self.factor()
            elif nxt in ("num", "name", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> LaurentPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
            e = sign * self.take("num")[1]
            base = base ** e
        return base

    def atom(self) -> LaurentPoly:
        kind = self.peek()
        if kind == "num":
            return LaurentPoly.const(self.take()[1])
        if kind == "name":
            name = self.take()[1]
            if self.names and name in self.names:
                return LaurentPoly.monomial({self.names[name]: 1})
            m = _DEFAULT_NAME.match(name)
            if m:
                return LaurentPoly.monomial({(m.group(1), int(m.group(2))): 1})
            raise ValueError(f"unknown variable {name!r}")
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.factor()
        raise ValueError("unexpected end of polynomial text")


def parse(text: str, names: Optional[Mapping[str, Var]] = None) -> LaurentPoly:
    """Parse the text format produced by :meth:`LaurentPoly.to_str`.

    Also accepts parentheses and implicit multiplication, e.g.
    ``"(a+b)(b+c)"`` with ``names={"a": ("x", 1), ...}``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    parser = _Parser(tokens, names)
    p = parser.expr()
    if parser.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return p
