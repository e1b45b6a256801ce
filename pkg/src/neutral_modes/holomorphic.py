"""Holomorphic expression trees with exact derivatives.

Expressions are immutable trees of small node classes.  They are called like
functions (``f(w)``) on Python complex scalars and differentiate symbolically
(``f.derivative()``).  A prefix text grammar round-trips through ``str`` and
:func:`parse`::

    id                      w
    const(c)                constant c
    pow(n, e)               e**n, integer n (negative allowed)
    recip(e)                1/e
    exp(e), log(e)          principal branch for log
    scale(c, e)             c*e
    add(e1, e2), mul(e1, e2), div(e1, e2)
    comp(outer, inner)      outer(inner(w))
    mobius(a, b, c, d)      (a w + b)/(c w + d)

Numbers are real or complex literals such as ``2``, ``-0.5``, ``1e-3``,
``1+2i``, ``-i`` (``j`` is accepted as well as ``i``).
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .domain import EXCLUSION_RADIUS, DomainSpec, default_path, path_start
from .errors import ConfigError, DegenerateMoebius, DomainViolation, SingularPoint, ZeroCrossing

FD_TOL = 1e-6
FD_STEP = 1e-5


def _fmt(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}i"
    sign = "+" if c.imag >= 0 else "-"
    return f"{c.real!r}{sign}{abs(c.imag)!r}i"


class HolomorphicFn:
    """Base class of expression nodes."""

    __slots__ = ()

    def __call__(self, w: complex) -> complex:
        try:
            value = self._eval(complex(w))
        except (ZeroDivisionError, OverflowError) as exc:
            raise SingularPoint(f"{self} singular at {w!r}") from exc
        except ValueError as exc:  # cmath.log(0)
            raise SingularPoint(f"{self} singular at {w!r}") from exc
        if not cmath.isfinite(value):
            raise SingularPoint(f"{self} not finite at {w!r}")
        return value

    def _eval(self, w: complex) -> complex:
        raise NotImplementedError

    def derivative(self) -> "HolomorphicFn":
        raise NotImplementedError

    def poles(self) -> tuple[complex, ...]:
        """Known isolated singularities (best effort; composition through
        non-Möbius inner maps only reports the inner map's own poles)."""
        return ()

    def zeros(self) -> tuple[complex, ...]:
        """Known zeros, used to declare poles of reciprocals (best effort)."""
        return ()

    def compose(self, inner: "HolomorphicFn") -> "HolomorphicFn":
        return compose(self, inner)

    def __add__(self, other):
        return add(self, as_fn(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(-1.0, as_fn(other)))

    def __rsub__(self, other):
        return add(as_fn(other), scale(-1.0, self))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return scale(other, self)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return scale(1.0 / complex(other), self)
        return div(self, other)

    def __rtruediv__(self, other):
        return div(as_fn(other), self)

    def __neg__(self):
        return scale(-1.0, self)

    def __pow__(self, n: int):
        return power(n, self)


@dataclass(frozen=True, eq=True)
class Const(HolomorphicFn):
    value: complex

    def _eval(self, w):
        return complex(self.value)

    def derivative(self):
        return Const(0j)

    def __str__(self):
        return f"const({_fmt(self.value)})"


@dataclass(frozen=True, eq=True)
class Identity(HolomorphicFn):
    def _eval(self, w):
        return w

    def derivative(self):
        return Const(1 + 0j)

    def zeros(self):
        return (0j,)

    def __str__(self):
        return "id"


@dataclass(frozen=True, eq=True)
class Power(HolomorphicFn):
    n: int
    arg: HolomorphicFn

    def _eval(self, w):
        base = self.arg._eval(w)
        if self.n < 0:
            return 1.0 / base ** (-self.n)
        return base ** self.n

    def derivative(self):
        return mul(scale(self.n, power(self.n - 1, self.arg)), self.arg.derivative())

    def poles(self):
        extra = self.arg.zeros() if self.n < 0 else ()
        return self.arg.poles() + extra

    def zeros(self):
        return self.arg.zeros() if self.n > 0 else self.arg.poles()

    def __str__(self):
        return f"pow({self.n},{self.arg})"


@dataclass(frozen=True, eq=True)
class Recip(HolomorphicFn):
    arg: HolomorphicFn

    def _eval(self, w):
        return 1.0 / self.arg._eval(w)

    def derivative(self):
        return scale(-1.0, div(self.arg.derivative(), power(2, self.arg)))

    def poles(self):
        return self.arg.poles() + self.arg.zeros()

    def zeros(self):
        return self.arg.poles()

    def __str__(self):
        return f"recip({self.arg})"


@dataclass(frozen=True, eq=True)
class Exp(HolomorphicFn):
    arg: HolomorphicFn

    def _eval(self, w):
        return cmath.exp(self.arg._eval(w))

    def derivative(self):
        return mul(self, self.arg.derivative())

    def poles(self):
        return self.arg.poles()

    def __str__(self):
        return f"exp({self.arg})"


@dataclass(frozen=True, eq=True)
class Log(HolomorphicFn):
    """Principal logarithm; continuous branches are tracked by :func:`log_decompose`."""

    arg: HolomorphicFn

    def _eval(self, w):
        return cmath.log(self.arg._eval(w))

    def derivative(self):
        return div(self.arg.derivative(), self.arg)

    def poles(self):
        return self.arg.poles() + self.arg.zeros()

    def __str__(self):
        return f"log({self.arg})"


@dataclass(frozen=True, eq=True)
class Scale(HolomorphicFn):
    factor: complex
    arg: HolomorphicFn

    def _eval(self, w):
        return self.factor * self.arg._eval(w)

    def derivative(self):
        return scale(self.factor, self.arg.derivative())

    def poles(self):
        return self.arg.poles()

    def zeros(self):
        return self.arg.zeros()

    def __str__(self):
        return f"scale({_fmt(self.factor)},{self.arg})"


@dataclass(frozen=True, eq=True)
class Sum(HolomorphicFn):
    left: HolomorphicFn
    right: HolomorphicFn

    def _eval(self, w):
        return self.left._eval(w) + self.right._eval(w)

    def derivative(self):
        return add(self.left.derivative(), self.right.derivative())

    def poles(self):
        return self.left.poles() + self.right.poles()

    def __str__(self):
        return f"add({self.left},{self.right})"


@dataclass(frozen=True, eq=True)
class Product(HolomorphicFn):
    left: HolomorphicFn
    right: HolomorphicFn

    def _eval(self, w):
        return self.left._eval(w) * self.right._eval(w)

    def derivative(self):
        return add(mul(self.left.derivative(), self.right), mul(self.left, self.right.derivative()))

    def poles(self):
        return self.left.poles() + self.right.poles()

    def zeros(self):
        return self.left.zeros() + self.right.zeros()

    def __str__(self):
        return f"mul({self.left},{self.right})"


@dataclass(frozen=True, eq=True)
class Quotient(HolomorphicFn):
    num: HolomorphicFn
    den: HolomorphicFn

    def _eval(self, w):
        return self.num._eval(w) / self.den._eval(w)

    def derivative(self):
        top = add(mul(self.num.derivative(), self.den), scale(-1.0, mul(self.num, self.den.derivative())))
        return div(top, power(2, self.den))

    def poles(self):
        return self.num.poles() + self.den.poles() + self.den.zeros()

    def zeros(self):
        return self.num.zeros()

    def __str__(self):
        return f"div({self.num},{self.den})"


@dataclass(frozen=True, eq=True)
class Compose(HolomorphicFn):
    outer: HolomorphicFn
    inner: HolomorphicFn

    def _eval(self, w):
        return self.outer._eval(self.inner._eval(w))

    def derivative(self):
        return mul(compose(self.outer.derivative(), self.inner), self.inner.derivative())

    def _preimages(self, points):
        if isinstance(self.inner, Moebius):
            inv = self.inner.inverse()
            out = []
            for p in points:
                try:
                    out.append(inv(p))
                except SingularPoint:
                    pass
            return tuple(out)
        if isinstance(self.inner, Identity):
            return tuple(points)
        return ()

    def poles(self):
        return self.inner.poles() + self._preimages(self.outer.poles())

    def zeros(self):
        return self._preimages(self.outer.zeros())

    def __str__(self):
        return f"comp({self.outer},{self.inner})"


class Moebius(HolomorphicFn):
    """``(a w + b)/(c w + d)`` stored in canonical form: unit Frobenius norm,
    first nonzero coefficient real and positive."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = (complex(x) for x in (a, b, c, d))
        det = a * d - b * c
        norm = math.sqrt(sum(abs(x) ** 2 for x in (a, b, c, d)))
        if norm == 0 or abs(det) <= 1e-14 * norm ** 2:
            raise DegenerateMoebius(f"ad - bc = 0 for ({a}, {b}, {c}, {d})")
        lead = next(x for x in (a, b, c, d) if x != 0)
        k = abs(lead) / (lead * norm)
        object.__setattr__(self, "a", a * k)
        object.__setattr__(self, "b", b * k)
        object.__setattr__(self, "c", c * k)
        object.__setattr__(self, "d", d * k)

    def __setattr__(self, key, value):
        raise AttributeError("Moebius is immutable")

    @property
    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def _eval(self, w):
        return (self.a * w + self.b) / (self.c * w + self.d)

    def derivative(self):
        det = self.determinant
        if self.c == 0:
            return Const(det / self.d ** 2)
        return scale(det, power(-2, add(scale(self.c, Identity()), Const(self.d))))

    def poles(self):
        return (-self.d / self.c,) if self.c != 0 else ()

    def zeros(self):
        return (-self.b / self.a,) if self.a != 0 else ()

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def then(self, outer: "Moebius") -> "Moebius":
        """Closed composition ``outer(self(w))``."""
        a1, b1, c1, d1 = outer.coefficients
        a2, b2, c2, d2 = self.coefficients
        return Moebius(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)

    def is_close(self, other: "Moebius", tol: float = 1e-12) -> bool:
        return all(abs(x - y) <= tol for x, y in zip(self.coefficients, other.coefficients))

    def __eq__(self, other):
        return isinstance(other, Moebius) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"Moebius{self.coefficients}"

    def __str__(self):
        return "mobius(" + ",".join(_fmt(x) for x in self.coefficients) + ")"


# ---------------------------------------------------------------------------
# smart constructors (light constant folding keeps derivative trees small)


def as_fn(x) -> HolomorphicFn:
    if isinstance(x, HolomorphicFn):
        return x
    return Const(complex(x))


def _is_const(f, value=None):
    return isinstance(f, Const) and (value is None or f.value == value)


def add(f: HolomorphicFn, g: HolomorphicFn) -> HolomorphicFn:
    if _is_const(f, 0):
        return g
    if _is_const(g, 0):
        return f
    if _is_const(f) and _is_const(g):
        return Const(f.value + g.value)
    return Sum(f, g)


def mul(f: HolomorphicFn, g: HolomorphicFn) -> HolomorphicFn:
    if _is_const(f, 0) or _is_const(g, 0):
        return Const(0j)
    if _is_const(f):
        return scale(f.value, g)
    if _is_const(g):
        return scale(g.value, f)
    return Product(f, g)


def div(f: HolomorphicFn, g: HolomorphicFn) -> HolomorphicFn:
    if _is_const(g):
        return scale(1.0 / g.value, f)
    if _is_const(f, 0):
        return Const(0j)
    if _is_const(f, 1):
        return Recip(g)
    return Quotient(f, g)


def scale(c, f: HolomorphicFn) -> HolomorphicFn:
    c = complex(c)
    if c == 0 or _is_const(f, 0):
        return Const(0j)
    if c == 1:
        return f
    if isinstance(f, Const):
        return Const(c * f.value)
    if isinstance(f, Scale):
        return scale(c * f.factor, f.arg)
    return Scale(c, f)


def power(n: int, f: HolomorphicFn) -> HolomorphicFn:
    n = int(n)
    if n == 0:
        return Const(1 + 0j)
    if n == 1:
        return f
    if isinstance(f, Const):
        return Const(f.value ** n)
    return Power(n, f)


def compose(outer: HolomorphicFn, inner: HolomorphicFn) -> HolomorphicFn:
    if isinstance(inner, Identity):
        return outer
    if isinstance(outer, Identity):
        return inner
    if isinstance(outer, Const):
        return outer
    if isinstance(outer, Moebius) and isinstance(inner, Moebius):
        return inner.then(outer)
    return Compose(outer, inner)


def identity() -> HolomorphicFn:
    return Identity()


def const(c) -> HolomorphicFn:
    return Const(complex(c))


def moebius(a, b, c, d) -> Moebius:
    return Moebius(a, b, c, d)


def special_moebius(a, c) -> Moebius:
    """Rotation of the Riemann sphere, ``(a w - conj(c)) / (c w + conj(a))``."""
    a, c = complex(a), complex(c)
    return Moebius(a, -c.conjugate(), c, a.conjugate())


# ---------------------------------------------------------------------------
# evaluation helpers


def eval_fn(f: HolomorphicFn, w: complex, domain: DomainSpec | None = None,
            exclusion: float = EXCLUSION_RADIUS) -> complex:
    """Evaluate ``f`` at ``w`` after domain and singularity checks."""
    w = complex(w)
    if domain is not None:
        domain.check(w)
    for p in f.poles():
        if abs(w - p) < exclusion:
            raise SingularPoint(f"{w!r} within {exclusion} of a singularity of {f}")
    return f(w)


def cauchy_riemann_residual(f: HolomorphicFn, w: complex, step: float = FD_STEP,
                            domain: DomainSpec | None = None) -> float:
    """``max(|h_u,u - h_v,v|, |h_u,v + h_v,u|)`` by central differences, where
    ``h_u = Re f`` and ``h_v = Im f``."""
    if not step > 0:
        raise ValueError("step must be positive")
    w = complex(w)
    if domain is not None:
        for z in (w + step, w - step, w + 1j * step, w - 1j * step):
            if not domain.contains(z) or domain.is_excluded(z):
                raise DomainViolation(f"stencil at {w!r} leaves the domain")
    fu = (f(w + step) - f(w - step)) / (2 * step)
    fv = (f(w + 1j * step) - f(w - 1j * step)) / (2 * step)
    return max(abs(fu.real - fv.imag), abs(fv.real + fu.imag))


def fd_derivative(f: Callable[[complex], complex], w: complex, step: float | None = None) -> complex:
    """Central difference along the real axis."""
    w = complex(w)
    if step is None:
        step = FD_STEP * max(1.0, abs(w))
    return (f(w + step) - f(w - step)) / (2 * step)


# ---------------------------------------------------------------------------
# logarithm and argument continuation


@dataclass(frozen=True)
class LogDecomposition:
    phi: float
    chi: float

    def value(self) -> complex:
        return math.exp(self.phi) * complex(math.cos(self.chi), math.sin(self.chi))


MAX_ARG_STEP = math.pi / 2


def continue_arg(func: Callable[[complex], complex], path: Sequence, start_arg: float | None = None,
                 min_dt: float = 1e-13) -> float:
    """Continue ``arg func`` along ``path`` from ``start_arg`` (principal value
    at the path start by default).  Steps shrink until consecutive values
    differ in argument by less than pi/2."""
    z = func(path_start(path))
    if z == 0:
        raise ZeroCrossing("function vanishes at the path start")
    arg = cmath.phase(z) if start_arg is None else float(start_arg)
    for seg in path:
        t, dt = 0.0, 0.125
        while t < 1.0:
            dt = min(dt, 1.0 - t)
            try:
                z_next = func(seg.point(t + dt))
            except SingularPoint as exc:
                raise ZeroCrossing(f"singularity on continuation path near {seg.point(t + dt)!r}") from exc
            if z_next == 0:
                raise ZeroCrossing(f"function vanishes at {seg.point(t + dt)!r}")
            delta = cmath.phase(z_next / z)
            if abs(delta) >= MAX_ARG_STEP:
                dt *= 0.5
                if dt < min_dt:
                    raise ZeroCrossing(f"argument jumps near {seg.point(t)!r}")
                continue
            arg += delta
            z = z_next
            t += dt
            dt = min(2 * dt, 0.125)
    return arg


def log_decompose(f: HolomorphicFn, w: complex, branch_anchor: complex, path: Sequence | None = None,
                  domain: DomainSpec | None = None) -> LogDecomposition:
    """``(ln|f(w)|, arg f(w))`` with the argument continued from its principal
    value at ``branch_anchor``.  Without an explicit ``path`` a staircase path
    is used (inside ``domain`` when one is given)."""
    w = complex(w)
    value = f(w)
    if value == 0:
        raise ZeroCrossing(f"{f} vanishes at {w!r}")
    if path is None:
        dom = domain if domain is not None else DomainSpec.plane()
        avoid = tuple((z, EXCLUSION_RADIUS) for z in f.poles() + f.zeros())
        path = default_path(dom, branch_anchor, w, avoid)
    chi = continue_arg(f, path)
    return LogDecomposition(math.log(abs(value)), chi)


# ---------------------------------------------------------------------------
# text grammar

_NAME = re.compile(r"\s*([a-z]+)\s*")
_UNARY = {"recip": Recip, "exp": Exp, "log": Log}
_BINARY = {"add": add, "mul": mul, "div": div, "comp": compose}


def parse_number(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = re.sub(r"(^|[+\-(])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError as exc:
        raise ConfigError(f"bad number {text!r}") from exc


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ConfigError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def number(self) -> complex:
        self.skip()
        depth, start = 0, self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                break
            self.pos += 1
        return parse_number(self.text[start:self.pos])

    def expr(self) -> HolomorphicFn:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if m is None or m.group(1) in ("i", "j", "e"):
            return Const(self.number())
        name = m.group(1)
        self.pos = m.end()
        if name == "id":
            return Identity()
        self.expect("(")
        if name == "const":
            out = Const(self.number())
        elif name == "pow":
            n = self.number()
            if n.imag != 0 or n.real != int(n.real):
                self.error("pow needs an integer exponent")
            self.expect(",")
            out = power(int(n.real), self.expr())
        elif name == "scale":
            c = self.number()
            self.expect(",")
            out = scale(c, self.expr())
        elif name == "mobius":
            coeffs = [self.number()]
            for _ in range(3):
                self.expect(",")
                coeffs.append(self.number())
            out = Moebius(*coeffs)
        elif name in _UNARY:
            out = _UNARY[name](self.expr())
        elif name in _BINARY:
            left = self.expr()
            self.expect(",")
            out = _BINARY[name](left, self.expr())
        else:
            self.error(f"unknown function {name!r}")
        self.expect(")")
        return out


def parse(text: str) -> HolomorphicFn:
    """Parse the prefix grammar described in the module docstring."""
    p = _Parser(text)
    out = p.expr()
    p.skip()
    if p.pos != len(text):
        p.error("trailing input")
    return out
