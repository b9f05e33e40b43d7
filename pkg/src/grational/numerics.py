"""Exact integer, rational and quadratic-field arithmetic.

Integers are plain Python ``int`` (unbounded) and rationals are
:class:`fractions.Fraction`.  This module adds a Newton integer square root
and :class:`QuadraticNumber`, an element ``p + q*sqrt(n)`` of the extension
of the rationals by ``sqrt(n)``.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from numbers import Rational
from typing import Tuple, Union

__all__ = [
    "QuadraticNumber",
    "RadicandMismatch",
    "integer_sqrt",
    "quad_arith",
    "sqrt",
]

RationalLike = Union[int, Fraction]


def integer_sqrt(x: int) -> Tuple[int, bool]:
    """Return ``(floor(sqrt(x)), exact)`` using integer Newton iteration.

    No floating point is involved, so the result is correct for inputs of
    any size.

    >>> integer_sqrt(16)
    (4, True)
    >>> integer_sqrt(17)
    (4, False)
    """
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"integer_sqrt expects an int, got {type(x).__name__}")
    if x < 0:
        raise ValueError(f"integer_sqrt of negative number {x}")
    if x < 2:
        return x, True
    # 2**ceil(bits/2) is an upper bound for the root; Newton then
    # decreases monotonically to the floor.
    r = 1 << ((x.bit_length() + 1) // 2)
    while True:
        nxt = (r + x // r) // 2
        if nxt >= r:
            break
        r = nxt
    return r, r * r == x


class RadicandMismatch(ValueError):
    """Two quadratic numbers over different radicands were combined."""


def _as_fraction(v: RationalLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, Rational):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


class QuadraticNumber:
    """Exact value ``p + q*sqrt(n)`` with rational ``p`` and ``q``.

    The radicand is not reduced to squarefree form.  Values are only
    comparable and combinable with values over the same radicand; plain
    ints and Fractions are coerced.  When ``n`` is a perfect square the
    irrational part is folded into ``p`` so equality stays sound.
    """

    __slots__ = ("_n", "_p", "_q")

    def __init__(self, n: int, p: RationalLike = 0, q: RationalLike = 0):
        if isinstance(n, bool) or not isinstance(n, int):
            raise TypeError("radicand must be an int")
        p, q = _as_fraction(p), _as_fraction(q)
        if n >= 0:
            root, exact = integer_sqrt(n)
            if exact:
                p, q = p + q * root, Fraction(0)
        self._n, self._p, self._q = n, p, q

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadraticNumber":
        return cls(n, 0, 1)

    @property
    def n(self) -> int:
        return self._n

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other._n != self._n:
                raise RadicandMismatch(
                    f"cannot combine sqrt({self._n}) and sqrt({other._n}) values"
                )
            return other
        if isinstance(other, Rational):
            return QuadraticNumber(self._n, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self._n, self._p + o._p, self._q + o._q)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(self._n, -self._p, -self._q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self._n, self._p - o._p, self._q - o._q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self._n
        return QuadraticNumber(
            n,
            self._p * o._p + n * self._q * o._q,
            self._p * o._q + self._q * o._p,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self._n, self._p, -self._q)

    def norm(self) -> Fraction:
        """Field norm ``p**2 - n*q**2``; zero only for the zero element."""
        return self._p * self._p - self._n * self._q * self._q

    def inverse(self) -> "QuadraticNumber":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadraticNumber(self._n, self._p / nrm, -self._q / nrm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadraticNumber(self._n, 1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber) and other._n != self._n:
            return False
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._p == o._p and self._q == o._q

    def __hash__(self):
        if self._q == 0:
            return hash(self._p)
        return hash((self._n, self._p, self._q))

    def sign(self) -> int:
        """Exact sign of the real value (requires ``n >= 0``)."""
        if self._n < 0:
            raise ValueError("sign is undefined for a non-real radicand")
        sp = (self._p > 0) - (self._p < 0)
        sq = (self._q > 0) - (self._q < 0)
        if sq == 0 or sp == sq:
            return sp or sq
        if sp == 0:
            return sq
        # Opposite signs: compare p**2 with n*q**2.
        diff = self._p * self._p - self._n * self._q * self._q
        return sp if diff > 0 else (sq if diff < 0 else 0)

    def _cmp(self, other, op):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return op((self - o).sign(), 0)

    def __lt__(self, other):
        return self._cmp(other, operator.lt)

    def __le__(self, other):
        return self._cmp(other, operator.le)

    def __gt__(self, other):
        return self._cmp(other, operator.gt)

    def __ge__(self, other):
        return self._cmp(other, operator.ge)

    def __bool__(self):
        return bool(self._p) or bool(self._q)

    def __float__(self):
        if self._n < 0:
            raise ValueError("non-real value")
        return float(self._p) + float(self._q) * self._n ** 0.5

    def __repr__(self):
        return f"QuadraticNumber({self._n}, {self._p!s}, {self._q!s})"

    def __str__(self):
        if self._q == 0:
            return str(self._p)
        rad = f"sqrt({self._n})"
        if self._p == 0:
            return f"({self._q})*{rad}"
        return f"{self._p} + ({self._q})*{rad}"


def sqrt(n: int) -> QuadraticNumber:
    """``sqrt(n)`` as an exact quadratic number."""
    return QuadraticNumber.sqrt_of(n)


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def quad_arith(op: str, x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    """Apply ``op`` (one of add, sub, mul, div) to two quadratic numbers."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected one of {sorted(_OPS)}")
    if not isinstance(x, QuadraticNumber) or not isinstance(y, QuadraticNumber):
        raise TypeError("quad_arith operands must be QuadraticNumber")
    x._coerce(y)
    return fn(x, y)
