"""Arithmetic of the bihyperbolic ring H2.

Elements are stored in idempotent coordinates ``lam = (l1, l2, l3, l4)``
with respect to the basis e1..e4.  In those coordinates multiplication,
inversion, the modulus and the partial order are all componentwise; the
canonical basis {1, j1, j2, j3} is only a view.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from numbers import Real
from typing import Iterable

from .errors import BadIndex, EmptySet, InvalidInput, NotInvertible

#: absolute tolerance for the null-cone test
NULL_TOL = 1e-12


def _finite4(vals) -> tuple:
    try:
        out = tuple(float(v) for v in vals)
    except (TypeError, ValueError) as err:
        raise InvalidInput(f"not a real quadruple: {vals!r}") from err
    if len(out) != 4:
        raise InvalidInput(f"expected 4 coordinates, got {len(out)}")
    if not all(math.isfinite(v) for v in out):
        raise InvalidInput(f"non-finite coordinate in {out}")
    return out


@dataclass(frozen=True)
class CanonicalCoords:
    """Coefficients of 1, j1, j2, j3."""

    x: float
    y: float
    z: float
    w: float

    def __post_init__(self):
        _finite4((self.x, self.y, self.z, self.w))

    def as_tuple(self):
        return (self.x, self.y, self.z, self.w)


class Bihyperbolic:
    """An element of H2 held in idempotent coordinates.

    Instances are immutable.  Arithmetic accepts plain reals on either side.
    """

    __slots__ = ("lam",)

    def __init__(self, l1, l2=None, l3=None, l4=None):
        if l2 is None and l3 is None and l4 is None:
            if isinstance(l1, Real):
                lam = (l1, l1, l1, l1)
            else:
                lam = l1
        else:
            lam = (l1, l2, l3, l4)
        object.__setattr__(self, "lam", _finite4(lam))

    @classmethod
    def _raw(cls, lam):
        # trusted constructor for results of arithmetic on finite inputs
        obj = object.__new__(cls)
        if not all(math.isfinite(v) for v in lam):
            raise InvalidInput(f"non-finite result {lam}")
        object.__setattr__(obj, "lam", lam)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("Bihyperbolic is immutable")

    @classmethod
    def real(cls, a: float) -> "Bihyperbolic":
        a = float(a)
        return cls(a, a, a, a)

    @classmethod
    def from_canonical(cls, x, y=None, z=None, w=None) -> "Bihyperbolic":
        if isinstance(x, CanonicalCoords):
            x, y, z, w = x.as_tuple()
        elif y is None:
            x, y, z, w = _finite4(x)
        return from_canonical(CanonicalCoords(x, y, z, w))

    def to_canonical(self) -> CanonicalCoords:
        return to_canonical(self)

    # -- arithmetic ----------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Bihyperbolic):
            return other.lam
        if isinstance(other, Real):
            v = float(other)
            return (v, v, v, v)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.lam
        return Bihyperbolic._raw((a[0] + o[0], a[1] + o[1], a[2] + o[2], a[3] + o[3]))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.lam
        return Bihyperbolic._raw((a[0] - o[0], a[1] - o[1], a[2] - o[2], a[3] - o[3]))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.lam
        return Bihyperbolic._raw((o[0] - a[0], o[1] - a[1], o[2] - a[2], o[3] - a[3]))

    def __neg__(self):
        a = self.lam
        return Bihyperbolic._raw((-a[0], -a[1], -a[2], -a[3]))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.lam
        return Bihyperbolic._raw((a[0] * o[0], a[1] * o[1], a[2] * o[2], a[3] * o[3]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * inverse(Bihyperbolic._raw(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Bihyperbolic._raw(o) * inverse(self)

    def __abs__(self):
        return modulus(self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.lam == o

    def __hash__(self):
        return hash(self.lam)

    def __iter__(self):
        return iter(self.lam)

    def __getitem__(self, k):
        return self.lam[k]

    def __repr__(self):
        return "Bihyperbolic(%r, %r, %r, %r)" % self.lam

    def __str__(self):
        return format_canonical(self)

    def isclose(self, other, tol=1e-12) -> bool:
        o = self._coerce(other)
        return all(abs(a - b) <= tol * max(1.0, abs(a), abs(b)) for a, b in zip(self.lam, o))

    def is_zero(self, tol=0.0) -> bool:
        return all(abs(v) <= tol for v in self.lam)


ZERO = Bihyperbolic(0.0, 0.0, 0.0, 0.0)
ONE = Bihyperbolic(1.0, 1.0, 1.0, 1.0)
J1 = Bihyperbolic(1.0, -1.0, 1.0, -1.0)
J2 = Bihyperbolic(1.0, 1.0, -1.0, -1.0)
J3 = Bihyperbolic(1.0, -1.0, -1.0, 1.0)
E = (
    Bihyperbolic(1.0, 0.0, 0.0, 0.0),
    Bihyperbolic(0.0, 1.0, 0.0, 0.0),
    Bihyperbolic(0.0, 0.0, 1.0, 0.0),
    Bihyperbolic(0.0, 0.0, 0.0, 1.0),
)
E1, E2, E3, E4 = E


def idempotent(i: int) -> Bihyperbolic:
    """e_i for i in 1..4."""
    if i not in (1, 2, 3, 4):
        raise BadIndex(f"idempotent index must be 1..4, got {i}")
    return E[i - 1]


def from_canonical(c: CanonicalCoords) -> Bihyperbolic:
    x, y, z, w = c.as_tuple()
    return Bihyperbolic(x + y + z + w, x - y + z - w, x + y - z - w, x - y - z + w)


def to_canonical(b: Bihyperbolic) -> CanonicalCoords:
    l1, l2, l3, l4 = b.lam
    return CanonicalCoords(
        (l1 + l2 + l3 + l4) / 4,
        (l1 - l2 + l3 - l4) / 4,
        (l1 + l2 - l3 - l4) / 4,
        (l1 - l2 - l3 + l4) / 4,
    )


def add(a, b):
    return a + b


def sub(a, b):
    return a - b


def neg(a):
    return -a


def mul(a, b):
    return a * b


def is_in_null_cone(b: Bihyperbolic, tol: float = NULL_TOL) -> bool:
    return any(abs(v) <= tol for v in b.lam)


def is_zero_divisor(b: Bihyperbolic, tol: float = NULL_TOL) -> bool:
    return is_in_null_cone(b, tol) and not b.is_zero()


def inverse(b: Bihyperbolic, tol: float = NULL_TOL) -> Bihyperbolic:
    if is_in_null_cone(b, tol):
        raise NotInvertible(f"{b!r} lies in the null cone")
    return Bihyperbolic._raw(tuple(1.0 / v for v in b.lam))


def modulus(b: Bihyperbolic) -> Bihyperbolic:
    return Bihyperbolic._raw(tuple(abs(v) for v in b.lam))


class Relation(str, Enum):
    EQUAL = "Equal"
    LESS = "Less"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class Ordering:
    relation: Relation
    strict: bool = False

    def __eq__(self, other):
        if isinstance(other, (Relation, str)):
            return self.relation == other
        if isinstance(other, Ordering):
            return (self.relation, self.strict) == (other.relation, other.strict)
        return NotImplemented

    def __hash__(self):
        return hash((self.relation, self.strict))

    def to_dict(self):
        return {"relation": self.relation.value, "strict": self.strict}


def compare(a: Bihyperbolic, b: Bihyperbolic, tol: float = 0.0) -> Ordering:
    """Componentwise comparison of ``a`` against ``b``.

    ``Less`` means a ⪯ b with a ≠ b; ``strict`` is set when every component
    differs by more than ``tol``.
    """
    if isinstance(a, Real):
        a = Bihyperbolic.real(a)
    if isinstance(b, Real):
        b = Bihyperbolic.real(b)
    d = [bk - ak for ak, bk in zip(a.lam, b.lam)]
    if all(abs(v) <= tol for v in d):
        return Ordering(Relation.EQUAL, False)
    if all(v >= -tol for v in d):
        return Ordering(Relation.LESS, all(v > tol for v in d))
    if all(v <= tol for v in d):
        return Ordering(Relation.GREATER, all(v < -tol for v in d))
    return Ordering(Relation.INCOMPARABLE, False)


def preceq(a, b, tol: float = 0.0) -> bool:
    """a ⪯ b, with a slack scaled by the magnitude of the operands."""
    a = a.lam if isinstance(a, Bihyperbolic) else (float(a),) * 4
    b = b.lam if isinstance(b, Bihyperbolic) else (float(b),) * 4
    return all(x <= y + tol * max(1.0, abs(x), abs(y)) for x, y in zip(a, b))


def prec(a, b) -> bool:
    """Strict order: every component strictly smaller."""
    a = a.lam if isinstance(a, Bihyperbolic) else (float(a),) * 4
    b = b.lam if isinstance(b, Bihyperbolic) else (float(b),) * 4
    return all(x < y for x, y in zip(a, b))


def is_nonnegative(b: Bihyperbolic, tol: float = 0.0) -> bool:
    return all(v >= -tol for v in b.lam)


def sup_h2(items: Iterable[Bihyperbolic]) -> Bihyperbolic:
    items = list(items)
    if not items:
        raise EmptySet("sup of an empty set")
    return Bihyperbolic(*(max(col) for col in zip(*(b.lam for b in items))))


def inf_h2(items: Iterable[Bihyperbolic]) -> Bihyperbolic:
    items = list(items)
    if not items:
        raise EmptySet("inf of an empty set")
    return Bihyperbolic(*(min(col) for col in zip(*(b.lam for b in items))))


# -- text / JSON forms -------------------------------------------------------------

_NAMED = {
    "0": ZERO,
    "1": ONE,
    "j1": J1,
    "j2": J2,
    "j3": J3,
    "e1": E1,
    "e2": E2,
    "e3": E3,
    "e4": E4,
}

_TERM = re.compile(
    r"\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(j[123])?\s*"
)


def format_canonical(b: Bihyperbolic) -> str:
    x, y, z, w = to_canonical(b).as_tuple()
    out = repr(x)
    for v, name in ((y, "j1"), (z, "j2"), (w, "j3")):
        sign = "-" if math.copysign(1.0, v) < 0 else "+"
        out += f" {sign} {abs(v)!r} {name}"
    return out


def parse_canonical(text: str) -> Bihyperbolic:
    """Parse ``"x + y j1 + z j2 + w j3"`` (terms in any order, any subset)."""
    s = text.strip()
    if s.lower() in _NAMED:
        return _NAMED[s.lower()]
    coeffs = {"": 0.0, "j1": 0.0, "j2": 0.0, "j3": 0.0}
    pos = 0
    matched = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise InvalidInput(f"cannot parse bihyperbolic number {text!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        if matched and m.group(1) == "":
            raise InvalidInput(f"missing operator in {text!r}")
        val = float(m.group(2)) if m.group(2) else 1.0
        coeffs[m.group(3) or ""] += sign * val
        matched = True
        pos = m.end()
    if not matched:
        raise InvalidInput(f"cannot parse bihyperbolic number {text!r}")
    return Bihyperbolic.from_canonical(coeffs[""], coeffs["j1"], coeffs["j2"], coeffs["j3"])


def to_json(b: Bihyperbolic) -> dict:
    return {"idempotent": list(b.lam)}


def from_json(obj) -> Bihyperbolic:
    """Accept ``{"canonical": [...]}``, ``{"idempotent": [...]}``, a text
    form, a named constant or a bare real."""
    if isinstance(obj, Bihyperbolic):
        return obj
    if isinstance(obj, bool):
        raise InvalidInput(f"not a bihyperbolic number: {obj!r}")
    if isinstance(obj, Real):
        return Bihyperbolic.real(obj)
    if isinstance(obj, str):
        return parse_canonical(obj)
    if isinstance(obj, dict):
        if "idempotent" in obj:
            return Bihyperbolic(obj["idempotent"])
        if "canonical" in obj:
            return Bihyperbolic.from_canonical(obj["canonical"])
    raise InvalidInput(f"not a bihyperbolic number: {obj!r}")


def dual_json(b: Bihyperbolic) -> dict:
    return {"canonical": list(to_canonical(b).as_tuple()), "idempotent": list(b.lam)}


def as_bihyperbolic(v) -> Bihyperbolic:
    return v if isinstance(v, Bihyperbolic) else from_json(v)

