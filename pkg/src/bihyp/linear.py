"""The free module H2^n and its canonical H2-valued norms.

A vector is stored as a ``(4, n)`` float array: row ``i`` is the real
component vector living in ``e_{i+1} X``.  The scalar action of an element
of H2 is then a row scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .core import Bihyperbolic, as_bihyperbolic
from .errors import BadIndex, DimensionMismatch, InvalidInput


class HVector:
    """Element of H2^n in idempotent components."""

    __slots__ = ("comps",)

    def __init__(self, comps):
        arr = np.array(comps, dtype=float)
        if arr.ndim == 1:
            if arr.size % 4:
                raise InvalidInput("flat component array length must be a multiple of 4")
            arr = arr.reshape(4, -1)
        if arr.ndim != 2 or arr.shape[0] != 4 or arr.shape[1] < 1:
            raise InvalidInput(f"components must have shape (4, n), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInput("non-finite vector component")
        arr.setflags(write=False)
        object.__setattr__(self, "comps", arr)

    def __setattr__(self, key, value):
        raise AttributeError("HVector is immutable")

    @classmethod
    def _wrap(cls, arr):
        obj = object.__new__(cls)
        arr.setflags(write=False)
        object.__setattr__(obj, "comps", arr)
        return obj

    @classmethod
    def zeros(cls, dim: int) -> "HVector":
        return cls._wrap(np.zeros((4, dim)))

    @classmethod
    def from_entries(cls, entries: Sequence) -> "HVector":
        entries = [as_bihyperbolic(e) for e in entries]
        if not entries:
            raise InvalidInput("an HVector needs at least one entry")
        return cls(np.array([e.lam for e in entries]).T)

    @classmethod
    def scalar(cls, b) -> "HVector":
        """``b`` viewed as an element of H2^1."""
        return cls.from_entries([b])

    @property
    def dim(self) -> int:
        return self.comps.shape[1]

    def entries(self) -> list:
        return [Bihyperbolic(*col) for col in self.comps.T]

    def entry(self, k: int) -> Bihyperbolic:
        return Bihyperbolic(*self.comps[:, k])

    def component(self, i: int) -> np.ndarray:
        """Real vector of the e_i component, i in 1..4."""
        if i not in (1, 2, 3, 4):
            raise BadIndex(f"component index must be 1..4, got {i}")
        return self.comps[i - 1]

    def _check(self, other):
        if not isinstance(other, HVector):
            return False
        if other.dim != self.dim:
            raise DimensionMismatch(f"dims {self.dim} and {other.dim}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return HVector._wrap(self.comps + other.comps)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return HVector._wrap(self.comps - other.comps)

    def __neg__(self):
        return HVector._wrap(-self.comps)

    def __rmul__(self, lam):
        if isinstance(lam, HVector):
            return NotImplemented
        lam = as_bihyperbolic(lam)
        return HVector._wrap(np.asarray(lam.lam)[:, None] * self.comps)

    def __eq__(self, other):
        if not isinstance(other, HVector):
            return NotImplemented
        return self.comps.shape == other.comps.shape and bool(np.all(self.comps == other.comps))

    def __hash__(self):
        return hash(self.comps.tobytes())

    def __repr__(self):
        return f"HVector({self.comps.tolist()!r})"

    def allclose(self, other, tol=1e-12) -> bool:
        return bool(np.allclose(self.comps, other.comps, rtol=tol, atol=tol))

    def is_zero(self, tol=0.0) -> bool:
        return bool(np.all(np.abs(self.comps) <= tol))

    def to_json(self) -> dict:
        return {"dim": self.dim, "comps": self.comps.tolist()}

    @classmethod
    def from_json(cls, obj) -> "HVector":
        if isinstance(obj, HVector):
            return obj
        if isinstance(obj, dict) and "comps" in obj:
            v = cls(obj["comps"])
            if "dim" in obj and int(obj["dim"]) != v.dim:
                raise DimensionMismatch(f"declared dim {obj['dim']} but comps have {v.dim}")
            return v
        if isinstance(obj, list):
            return cls.from_entries(obj)
        return cls.scalar(obj)


def vec_add(x: HVector, y: HVector) -> HVector:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dims {x.dim} and {y.dim}")
    return x + y


def vec_scale(lam, x: HVector) -> HVector:
    return as_bihyperbolic(lam) * x


def project(x: HVector, i: int) -> HVector:
    """e_i x."""
    if i not in (1, 2, 3, 4):
        raise BadIndex(f"component index must be 1..4, got {i}")
    out = np.zeros_like(x.comps)
    out[i - 1] = x.comps[i - 1]
    return HVector._wrap(out)


class ComponentNorm(str, Enum):
    P1 = "p1"
    P2 = "p2"
    PINF = "pinf"

    @property
    def ord(self):
        return {"p1": 1, "p2": 2, "pinf": np.inf}[self.value]

    def __call__(self, v) -> float:
        v = np.asarray(v, dtype=float)
        if self is ComponentNorm.P1:
            return float(np.sum(np.abs(v)))
        if self is ComponentNorm.PINF:
            return float(np.max(np.abs(v))) if v.size else 0.0
        return float(np.sqrt(np.dot(v, v)))

    @classmethod
    def parse(cls, obj) -> "ComponentNorm":
        if isinstance(obj, ComponentNorm):
            return obj
        key = str(obj).lower().replace("∞", "inf")
        aliases = {"1": "p1", "2": "p2", "inf": "pinf", "infinity": "pinf", "p_inf": "pinf"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InvalidInput(f"unknown component norm {obj!r}") from None


@dataclass(frozen=True)
class CanonicalNorm:
    """||x|| = sum_i ||x_i||_i e_i."""

    norms: tuple = (ComponentNorm.P2,) * 4

    def __post_init__(self):
        norms = tuple(ComponentNorm.parse(n) for n in self.norms)
        if len(norms) != 4:
            raise InvalidInput("a canonical norm needs four component norms")
        object.__setattr__(self, "norms", norms)

    def __call__(self, x: HVector) -> Bihyperbolic:
        return canonical_norm_eval(self, x)

    def to_json(self):
        return {"canonical_norm": {"norms": [n.value for n in self.norms]}}


def canonical_norm_eval(N: CanonicalNorm, x: HVector) -> Bihyperbolic:
    c = x.comps
    return Bihyperbolic(N.norms[0](c[0]), N.norms[1](c[1]), N.norms[2](c[2]), N.norms[3](c[3]))
