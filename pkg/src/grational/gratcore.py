"""Grationality decision, witnesses, descent maps and polynomial identities.

An integer ``n >= 3`` is grational when some nice n-gon (regular, integer
side) has the area of ``n`` congruent nice n-gons.  Because areas of similar
polygons scale with the square of the side, that happens exactly when
``a**2 == n * b**2`` has a solution in positive integers, i.e. when ``n`` is a
perfect square.

For non-square ``n`` the geometric descent proofs cannot run on actual
integers, so the descent maps here operate on :class:`CandidatePair` values
with a nonzero *defect* ``a**2 - n*b**2`` and track how the defect changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .numerics import QuadraticNumber, integer_sqrt

__all__ = [
    "CandidatePair",
    "DescentInapplicable",
    "DescentResult",
    "DescentStrategy",
    "DomainError",
    "GrationalityResult",
    "NiceGon",
    "PolyExpr",
    "StrategyMismatch",
    "Witness",
    "brute_force_witness",
    "descent_chain",
    "descent_map",
    "descent_step",
    "is_grational",
    "pentagon_diagonal_identity",
    "reduce_poly",
    "verify_identity",
    "verify_witness",
]


class DomainError(ValueError):
    """Raised for inputs outside an operation's domain (e.g. ``n < 3``)."""


class StrategyMismatch(DomainError):
    """A descent strategy was paired with a side count it does not apply to."""


class DescentInapplicable(ValueError):
    """A descent step's positivity/ordering precondition failed.

    ``inequality`` names the failed condition, e.g. ``"a < 2*b"``.
    """

    def __init__(self, inequality: str, pair: "CandidatePair"):
        self.inequality = inequality
        self.pair = pair
        super().__init__(
            f"descent inapplicable to (n={pair.n}, a={pair.a}, b={pair.b}): "
            f"requires {inequality}"
        )


def _require_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    return value


def _check_n(n: int) -> int:
    _require_int("n", n)
    if n < 3:
        raise DomainError(f"n must be at least 3 (no {n}-gon exists), got {n}")
    return n


@dataclass(frozen=True)
class NiceGon:
    """A regular ``n``-gon with positive integer side ``s``."""

    n: int
    s: int

    def __post_init__(self):
        _check_n(self.n)
        _require_int("s", self.s)
        if self.s < 1:
            raise DomainError(f"side length must be a positive integer, got {self.s}")


@dataclass(frozen=True)
class CandidatePair:
    """Room side ``a`` and carpet side ``b`` for ``n``-gons, not necessarily a witness."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        _check_n(self.n)
        for name in ("a", "b"):
            v = _require_int(name, getattr(self, name))
            if v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v}")

    @property
    def defect(self) -> int:
        return self.a * self.a - self.n * self.b * self.b

    def as_dict(self) -> Dict[str, int]:
        return {"a": self.a, "b": self.b, "defect": self.defect}


@dataclass(frozen=True)
class Witness(CandidatePair):
    """A candidate pair with ``a**2 == n * b**2``."""

    def __post_init__(self):
        super().__post_init__()
        if self.defect != 0:
            raise DomainError(
                f"({self.a}, {self.b}) is not a witness for n={self.n}: "
                f"a^2 - n*b^2 = {self.defect}"
            )


def verify_witness(n: int, a: int, b: int) -> bool:
    """True iff ``a**2 == n * b**2``."""
    _check_n(n)
    if _require_int("a", a) < 1 or _require_int("b", b) < 1:
        raise DomainError("a and b must be positive integers")
    return a * a == n * b * b


@dataclass(frozen=True)
class GrationalityResult:
    n: int
    grational: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.grational


def is_grational(n: int) -> GrationalityResult:
    """Decide grationality of ``n``.

    ``n`` is grational exactly when it is a perfect square ``k**2``; the
    canonical witness is then ``(k, 1)``, a nice n-gon of side ``k`` against
    carpets of side 1.
    """
    _check_n(n)
    k, exact = integer_sqrt(n)
    if exact:
        return GrationalityResult(n, True, Witness(n, k, 1))
    return GrationalityResult(n, False)


def brute_force_witness(n: int, b_max: int) -> Optional[Witness]:
    """Smallest-``b`` witness with ``b <= b_max`` found by exhaustive scan."""
    _require_int("n", n)
    _require_int("b_max", b_max)
    if n < 3:
        return None
    for b in range(1, b_max + 1):
        a, exact = integer_sqrt(n * b * b)
        if exact:
            return Witness(n, a, b)
    return None


@dataclass(frozen=True)
class DescentStrategy:
    """Which integer descent map to apply.

    ``paper3``: ``(a, b) -> (2a - 3b, 2b - a)``, from the triangle overlay
    (only ``n == 3``).  ``paper5``: ``(a, b) -> (5b - 2a, a - 2b)``, from the
    pentagon overlay (only ``n == 5``).  ``generic`` with ``k = isqrt(n)``:
    ``(a, b) -> (n*b - k*a, a - k*b)``, valid for any non-square ``n``.
    """

    kind: str
    k: Optional[int] = None

    KINDS = ("paper3", "paper5", "generic")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise StrategyMismatch(f"unknown strategy {self.kind!r}")
        if self.kind == "generic":
            _require_int("k", self.k)
            if self.k < 1:
                raise StrategyMismatch("generic strategy needs k >= 1")

    @classmethod
    def paper3(cls) -> "DescentStrategy":
        return cls("paper3")

    @classmethod
    def paper5(cls) -> "DescentStrategy":
        return cls("paper5")

    @classmethod
    def generic(cls, k: int) -> "DescentStrategy":
        return cls("generic", k)

    @classmethod
    def for_n(cls, name: str, n: int) -> "DescentStrategy":
        """Build a strategy by name; ``generic`` takes ``k = isqrt(n)``."""
        name = name.lower().replace("-", "_")
        if name == "paper3":
            s = cls.paper3()
        elif name == "paper5":
            s = cls.paper5()
        elif name in ("generic", "generic_floor_sqrt"):
            s = cls.generic(integer_sqrt(_check_n(n))[0])
        else:
            raise StrategyMismatch(f"unknown strategy {name!r}")
        s.validate(n)
        return s

    def validate(self, n: int) -> None:
        if self.kind == "paper3" and n != 3:
            raise StrategyMismatch(f"paper3 descent applies only to n=3, not n={n}")
        if self.kind == "paper5" and n != 5:
            raise StrategyMismatch(f"paper5 descent applies only to n=5, not n={n}")
        if self.kind == "generic":
            k, exact = integer_sqrt(n)
            if exact:
                raise StrategyMismatch(f"n={n} is a perfect square; no descent exists")
            if self.k != k:
                raise StrategyMismatch(
                    f"generic descent for n={n} needs k={k}, got k={self.k}"
                )

    def __str__(self):
        return f"generic(k={self.k})" if self.kind == "generic" else self.kind


def descent_map(n: int, a: int, b: int, strategy: DescentStrategy) -> Tuple[int, int]:
    """The raw integer map of ``strategy``, without any precondition checks."""
    if strategy.kind == "paper3":
        return 2 * a - 3 * b, 2 * b - a
    if strategy.kind == "paper5":
        return 5 * b - 2 * a, a - 2 * b
    k = strategy.k
    return n * b - k * a, a - k * b


def _conditions(pair: CandidatePair, strategy: DescentStrategy) -> List[Tuple[str, bool]]:
    a, b = pair.a, pair.b
    if strategy.kind == "paper3":
        conds = [("b < a", b < a), ("a < 2*b", a < 2 * b), ("3*b < 2*a", 3 * b < 2 * a)]
    else:
        k = 2 if strategy.kind == "paper5" else strategy.k
        conds = [(f"{k}*b < a", k * b < a), (f"a < {k + 1}*b", a < (k + 1) * b)]
    a2, b2 = descent_map(pair.n, a, b, strategy)
    conds += [
        ("a' >= 1", a2 >= 1),
        ("b' >= 1", b2 >= 1),
        ("a' < a", a2 < a),
        ("b' < b", b2 < b),
    ]
    return conds


def descent_step(pair: CandidatePair, strategy: DescentStrategy) -> CandidatePair:
    """Apply one descent step, checking the positivity conditions first.

    Raises :class:`DescentInapplicable` naming the first failed inequality.
    """
    strategy.validate(pair.n)
    for text, ok in _conditions(pair, strategy):
        if not ok:
            raise DescentInapplicable(text, pair)
    a2, b2 = descent_map(pair.n, pair.a, pair.b, strategy)
    return CandidatePair(pair.n, a2, b2)


@dataclass(frozen=True)
class DescentResult:
    chain: Tuple[CandidatePair, ...]
    reason: str  # "precondition-failed" or "max-steps"
    failed: Optional[str] = None


def descent_chain(
    pair: CandidatePair, strategy: DescentStrategy, max_steps: int = 1000
) -> DescentResult:
    """Iterate :func:`descent_step` until it stops applying or ``max_steps`` is hit.

    ``b`` strictly decreases along the chain, so it always terminates.  A true
    witness would descend forever; running out of preconditions with a
    nonzero defect is the finite trace of that contradiction.
    """
    strategy.validate(pair.n)
    chain = [pair]
    while len(chain) - 1 < max_steps:
        try:
            chain.append(descent_step(chain[-1], strategy))
        except DescentInapplicable as exc:
            return DescentResult(tuple(chain), "precondition-failed", exc.inequality)
    return DescentResult(tuple(chain), "max-steps")


Monomial = Tuple[int, int]


class PolyExpr:
    """Polynomial in the symbols ``a`` and ``b`` with integer coefficients.

    Stored as a mapping ``(i, j) -> c`` for the monomial ``c * a**i * b**j``.
    Supports ``+``, ``-``, ``*`` and non-negative integer powers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Monomial, int], Iterable] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: Dict[Monomial, int] = {}
        for (i, j), c in items:
            if c:
                out[(i, j)] = out.get((i, j), 0) + c
        self.terms = {m: c for m, c in out.items() if c}

    @classmethod
    def const(cls, c: int) -> "PolyExpr":
        return cls({(0, 0): c})

    @classmethod
    def symbols(cls) -> Tuple["PolyExpr", "PolyExpr"]:
        """Return the generators ``(a, b)``."""
        return cls({(1, 0): 1}), cls({(0, 1): 1})

    @staticmethod
    def _lift(other) -> "PolyExpr":
        if isinstance(other, PolyExpr):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return PolyExpr.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return PolyExpr(list(self.terms.items()) + list(o.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = []
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                out.append(((i1 + i2, j1 + j2), c1 * c2))
        return PolyExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = PolyExpr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, a, b):
        return sum(c * a**i * b**j for (i, j), c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "PolyExpr(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                s if e == 1 else f"{s}^{e}" for s, e in (("a", i), ("b", j)) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "PolyExpr(" + " + ".join(parts) + ")"


def reduce_poly(e: PolyExpr, n: int) -> PolyExpr:
    """Rewrite every ``a**2`` as ``n*b**2`` so the degree in ``a`` is at most 1."""
    out = []
    for (i, j), c in e.terms.items():
        half, rem = divmod(i, 2)
        out.append(((rem, j + 2 * half), c * n**half))
    return PolyExpr(out)


def verify_identity(lhs: PolyExpr, rhs: PolyExpr, n: int) -> bool:
    """True iff ``lhs == rhs`` modulo the relation ``a**2 == n*b**2``.

    Identities must be fraction-free; clear denominators before calling.
    """
    return reduce_poly(lhs - rhs, n).is_zero()


def pentagon_diagonal_identity(b: int) -> bool:
    """Check the pentagon-diagonal relations exactly in the field Q(sqrt 5).

    With ``a = sqrt(5)*b`` the diagonal ``d = b*(1 + sqrt 5)/2`` is the positive
    root of ``d**2 - b*d - b**2``, equals ``(a + b)/2`` and satisfies
    ``d/b == b/(d - b)``.
    """
    if _require_int("b", b) < 1:
        raise DomainError("b must be a positive integer")
    a = QuadraticNumber(5, 0, b)
    d = QuadraticNumber(5, Fraction(b, 2), Fraction(b, 2))
    return (
        d * d - b * d - b * b == 0
        and d > 0
        and d == (a + b) / 2
        and d / b == b / (d - b)
    )
