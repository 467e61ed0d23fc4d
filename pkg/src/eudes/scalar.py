"""Exact arithmetic in Q and Q(sqrt d), with a high-precision fallback.

Exact values are ``Quad`` instances holding ``a + b*sqrt(d)`` with rational
``a``, ``b`` and squarefree ``d``.  ``d == 0`` encodes a plain rational.
Two exact values combine exactly when they share a radicand, when one of
them is rational, or when both are pure radicals (``a == 0``) in a product
or quotient.  Any other combination degrades to ``Approx`` unless the
caller is inside :func:`exact_only`, in which case ``InexactError`` is
raised.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

import mpmath

__all__ = [
    "Scalar", "Quad", "Approx", "InexactError", "ScalarParseError",
    "as_scalar", "scalar_arith", "sqrt_exact", "sqrt_scalar", "rational_sqrt", "scalar_cmp", "sign",
    "parse_scalar", "format_scalar", "exact_only", "set_approx",
    "approx_tolerance", "squarefree_decompose", "ZERO", "ONE",
]


class InexactError(ValueError):
    """An exact result was demanded but the operands do not allow one."""


class ScalarParseError(ValueError):
    pass


_CTX = mpmath.MPContext()
_CTX.prec = 256
_TOL_EXP = [-128]

_STRICT: contextvars.ContextVar[bool] = contextvars.ContextVar("eudes_strict", default=False)


def set_approx(prec: int | None = None, tol_exponent: int | None = None) -> None:
    """Configure the approximate mode: working precision in bits and the
    comparison tolerance ``2**tol_exponent``."""
    if prec is not None:
        _CTX.prec = int(prec)
    if tol_exponent is not None:
        _TOL_EXP[0] = int(tol_exponent)


def approx_tolerance():
    return _CTX.ldexp(1, _TOL_EXP[0])


@contextlib.contextmanager
def exact_only() -> Iterator[None]:
    """Within this block, any operation that would leave exact arithmetic raises."""
    token = _STRICT.set(True)
    try:
        yield
    finally:
        _STRICT.reset(token)


@lru_cache(maxsize=4096)
def squarefree_decompose(m: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``m = s*s*d`` and ``d`` squarefree, for ``m >= 1``."""
    if m < 1:
        raise ValueError("squarefree_decompose needs a positive integer")
    s, d = 1, 1
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return s, d


def _degrade(why: str) -> None:
    if _STRICT.get():
        raise InexactError(why)


class Scalar:
    """Common base of ``Quad`` and ``Approx``."""

    __slots__ = ()

    is_exact = False

    def to_mpf(self):
        raise NotImplementedError

    def __float__(self) -> float:
        return float(self.to_mpf())

    def __add__(self, other):
        return scalar_arith("add", self, other)

    def __radd__(self, other):
        return scalar_arith("add", other, self)

    def __sub__(self, other):
        return scalar_arith("sub", self, other)

    def __rsub__(self, other):
        return scalar_arith("sub", other, self)

    def __mul__(self, other):
        return scalar_arith("mul", self, other)

    def __rmul__(self, other):
        return scalar_arith("mul", other, self)

    def __truediv__(self, other):
        return scalar_arith("div", self, other)

    def __rtruediv__(self, other):
        return scalar_arith("div", other, self)

    def __neg__(self):
        return scalar_arith("neg", self, None)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return ONE / (self ** -e)
        result: Scalar = ONE
        base: Scalar = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __lt__(self, other):
        return scalar_cmp(self, other) < 0

    def __le__(self, other):
        return scalar_cmp(self, other) <= 0

    def __gt__(self, other):
        return scalar_cmp(self, other) > 0

    def __ge__(self, other):
        return scalar_cmp(self, other) >= 0


class Quad(Scalar):
    """Exact element ``a + b*sqrt(d)``."""

    __slots__ = ("a", "b", "d")

    is_exact = True

    def __init__(self, a=0, b=0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("negative radicand")
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        else:
            s, core = squarefree_decompose(d)
            b *= s
            if core == 1:
                a += b
                b, d = Fraction(0), 0
            else:
                d = core
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "Quad":
        q = object.__new__(cls)
        q.a, q.b, q.d = a, b, d
        return q

    @classmethod
    def _canon(cls, a: Fraction, b: Fraction, d: int) -> "Quad":
        if b == 0:
            return cls._raw(a, Fraction(0), 0)
        return cls._raw(a, b, d)

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    @property
    def is_pure(self) -> bool:
        """True for ``b*sqrt(d)`` with no rational part (includes zero)."""
        return self.a == 0

    def rational(self) -> Fraction:
        if self.d:
            raise ValueError(f"{format_scalar(self)} is not rational")
        return self.a

    def conjugate(self) -> "Quad":
        return Quad._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def square(self) -> "Quad":
        return self * self

    def to_mpf(self):
        if self.d == 0:
            return _CTX.mpf(self.a.numerator) / self.a.denominator
        return (_CTX.mpf(self.a.numerator) / self.a.denominator
                + _CTX.mpf(self.b.numerator) / self.b.denominator * _CTX.sqrt(self.d))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.d == 0 and self.a == other
        if isinstance(other, Quad):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, Approx):
            return scalar_cmp(self, other) == 0
        return NotImplemented

    def __hash__(self):
        if self.d == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"Quad({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


class Approx(Scalar):
    """Approximate real value at the configured working precision."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = _CTX.mpf(v)

    def to_mpf(self):
        return self.v

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return scalar_cmp(self, other) == 0
        return NotImplemented

    __hash__ = None  # tolerance equality is not transitive

    def __bool__(self):
        return sign(self) != 0

    def __repr__(self):
        return f"Approx({_CTX.nstr(self.v, 20)})"

    def __str__(self):
        return format_scalar(self)


ZERO = Quad(0)
ONE = Quad(1)

Number = Union[int, Fraction, Scalar]


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Quad(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        _degrade("float input")
        return Approx(x)
    if isinstance(x, _CTX.mpf) or isinstance(x, mpmath.mpf):
        _degrade("approximate input")
        return Approx(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def _approx_op(op: str, x: Scalar, y: Scalar | None) -> Approx:
    u = x.to_mpf()
    if op == "neg":
        return Approx(-u)
    v = y.to_mpf()
    if op == "add":
        return Approx(u + v)
    if op == "sub":
        return Approx(u - v)
    if op == "mul":
        return Approx(u * v)
    if op == "div":
        if abs(v) <= approx_tolerance():
            raise ZeroDivisionError("division by an approximately zero scalar")
        return Approx(u / v)
    raise ValueError(op)


def _pure_product(x: Quad, y: Quad) -> Quad:
    # b1*sqrt(d1) * b2*sqrt(d2) = b1*b2*sqrt(d1*d2)
    return Quad(0, x.b * y.b, x.d * y.d)


def scalar_arith(op: str, x, y=None) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, neg} to scalars."""
    x = as_scalar(x)
    if op == "neg":
        if isinstance(x, Quad):
            return Quad._raw(-x.a, -x.b, x.d)
        return Approx(-x.v)
    y = as_scalar(y)
    if not (isinstance(x, Quad) and isinstance(y, Quad)):
        _degrade("approximate operand in exact context")
        return _approx_op(op, x, y)

    d = x.d or y.d
    same = x.d == 0 or y.d == 0 or x.d == y.d
    if op == "add" or op == "sub":
        if same:
            if op == "add":
                return Quad._canon(x.a + y.a, x.b + y.b, d)
            return Quad._canon(x.a - y.a, x.b - y.b, d)
        _degrade(f"sum of incompatible radicands {x.d} and {y.d}")
        return _approx_op(op, x, y)
    if op == "mul":
        if same:
            return Quad._canon(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d)
        if x.is_pure and y.is_pure:
            return _pure_product(x, y)
        _degrade(f"product of incompatible radicands {x.d} and {y.d}")
        return _approx_op(op, x, y)
    if op == "div":
        if not y:
            raise ZeroDivisionError("scalar division by zero")
        if y.d == 0:
            return Quad._raw(x.a / y.a, x.b / y.a, x.d)
        if x.d == 0 or x.d == y.d:
            nrm = y.norm()
            # x * conj(y) / norm(y)
            a = (x.a * y.a - x.b * y.b * d) / nrm
            b = (x.b * y.a - x.a * y.b) / nrm
            return Quad._canon(a, b, d)
        if x.is_pure and y.is_pure:
            # b1*sqrt(d1) / (b2*sqrt(d2)) = b1/(b2*d2) * sqrt(d1*d2)
            return Quad(0, x.b / (y.b * y.d), x.d * y.d)
        _degrade(f"quotient of incompatible radicands {x.d} and {y.d}")
        return _approx_op(op, x, y)
    raise ValueError(f"unknown scalar operation {op!r}")


def sqrt_exact(x) -> Quad:
    """Square root of a nonnegative rational as ``q*sqrt(d)``."""
    if isinstance(x, Quad):
        x = x.rational()
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return ZERO
    num = x.numerator * x.denominator
    s, d = squarefree_decompose(num)
    return Quad(0, Fraction(s, x.denominator), d)


def sqrt_scalar(x) -> Scalar:
    """Square root of a nonnegative scalar: exact for rationals, else approximate."""
    x = as_scalar(x)
    if isinstance(x, Quad) and x.is_rational:
        return sqrt_exact(x.a)
    _degrade("square root of an irrational value")
    v = x.to_mpf()
    if v < 0:
        if abs(v) <= approx_tolerance():
            return Approx(0)
        raise ValueError("square root of a negative value")
    return Approx(_CTX.sqrt(v))


def rational_sqrt(x) -> Fraction | None:
    """Square root of a rational if it is a rational square, else ``None``."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _sign_rat_plus_root(a: Fraction, b: Fraction, d: int) -> int:
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs = a * a
    rhs = b * b * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def _sign_quad(q: Quad) -> int:
    return _sign_rat_plus_root(q.a, q.b, q.d)


def sign(x) -> int:
    """Sign of a scalar; exact for ``Quad``, tolerance-based for ``Approx``."""
    x = as_scalar(x)
    if isinstance(x, Quad):
        return _sign_quad(x)
    v = x.v
    if abs(v) <= approx_tolerance():
        return 0
    return 1 if v > 0 else -1


def scalar_cmp(x, y) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    x = as_scalar(x)
    y = as_scalar(y)
    if isinstance(x, Quad) and isinstance(y, Quad):
        if x.d == y.d or x.d == 0 or y.d == 0:
            d = x.d or y.d
            return _sign_rat_plus_root(x.a - y.a, x.b - y.b, d)
        # (a + b sqrt d1) + c sqrt d2 with c = -y.b: compare magnitudes exactly
        p = Quad._raw(x.a - y.a, x.b, x.d)
        c = -y.b
        sp = _sign_quad(p)
        sq = (c > 0) - (c < 0)
        if sp == 0 or sp == sq:
            return sq if sp == 0 else sp
        if sq == 0:
            return sp
        p2 = p * p
        diff = Quad._canon(p2.a - c * c * y.d, p2.b, p2.d)
        s = _sign_quad(diff)
        # distinct squarefree radicands are linearly independent over Q,
        # so |p| == |c sqrt d2| cannot happen with c != 0 here
        return sp if s > 0 else sq
    u, v = x.to_mpf(), y.to_mpf()
    scale = max(_CTX.mpf(1), abs(u), abs(v))
    if abs(u - v) <= approx_tolerance() * scale:
        return 0
    return -1 if u < v else 1


# ---------------------------------------------------------------- literals

_RAT = r"-?\d+(?:/\d+)?"
_RE_RAT = re.compile(rf"^({_RAT})$")
_RE_PURE = re.compile(rf"^({_RAT})\*rt\((\d+)\)$")
_RE_MIXED = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)\*rt\((\d+)\)$")
_RE_DEC = re.compile(r"^-?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?$")


def _parse_rat(text: str) -> Fraction:
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def parse_scalar(text: str) -> Scalar:
    s = text.strip().replace(" ", "")
    m = _RE_RAT.match(s)
    if m:
        return Quad(_parse_rat(s))
    m = _RE_PURE.match(s)
    if m:
        return Quad(0, _parse_rat(m.group(1)), int(m.group(2)))
    m = _RE_MIXED.match(s)
    if m:
        b = _parse_rat(m.group(3))
        if m.group(2) == "-":
            b = -b
        return Quad(_parse_rat(m.group(1)), b, int(m.group(4)))
    if _RE_DEC.match(s):
        _degrade(f"decimal literal {text!r}")
        return Approx(_CTX.mpf(s))
    raise ScalarParseError(f"malformed scalar literal {text!r}")


def _fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    x = as_scalar(x)
    if isinstance(x, Approx):
        return _CTX.nstr(x.v, max(20, int(_CTX.prec * 0.30103) - 2),
                         min_fixed=-3, max_fixed=6) if x.v else "0.0"
    if x.d == 0:
        return _fmt_rat(x.a)
    root = f"*rt({x.d})"
    if x.a == 0:
        return _fmt_rat(x.b) + root
    op = "+" if x.b > 0 else "-"
    return _fmt_rat(x.a) + op + _fmt_rat(abs(x.b)) + root
