"""Partial operations of a local n-pseudofield.

Elements are plain tuples of scalars (floats, or ``gmpy2.mpq`` in rational
mode).  Every operation returns either such a tuple or an :class:`Undefined`
marker; undefinedness is a value, never an exception.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Tuple, Union

import gmpy2

Scalar = Any
Element = Tuple[Scalar, ...]

REL_TOL = 1e-9
ABS_FLOOR = 1e-12
SINGULAR_GUARD = 1e-8


class Mode(str, enum.Enum):
    FLOAT = "float"
    RATIONAL = "rational"


class Reason(str, enum.Enum):
    OUT_OF_DOMAIN = "OutOfDomain"
    DIVISION_BY_ZERO = "DivisionByZero"
    SINGULAR_DENOMINATOR = "SingularDenominator"
    NOT_INVERTIBLE = "NotInvertible"


@dataclass(frozen=True)
class Undefined:
    reason: Reason

    def __repr__(self):
        return f"Undefined({self.reason.value})"


Partial = Union[Element, Undefined, tuple]


def undefined(value) -> bool:
    return isinstance(value, Undefined)


def first_undefined(*values) -> Optional[Undefined]:
    for v in values:
        if isinstance(v, Undefined):
            return v
    return None


def scalar(value, mode: Mode) -> Scalar:
    """Coerce a number or numeric string into the scalar type of ``mode``."""
    if mode is Mode.RATIONAL:
        if isinstance(value, float):
            return gmpy2.mpq(value)
        return gmpy2.mpq(str(value)) if isinstance(value, str) else gmpy2.mpq(value)
    return float(value) if not isinstance(value, str) else float(gmpy2.mpq(value))


def divide(num: Scalar, den: Scalar, mode: Mode) -> Union[Scalar, Undefined]:
    if den == 0:
        return Undefined(Reason.DIVISION_BY_ZERO)
    if mode is Mode.FLOAT and abs(den) < SINGULAR_GUARD:
        return Undefined(Reason.SINGULAR_DENOMINATOR)
    return num / den


def is_small(value: Scalar, mode: Mode) -> bool:
    """True where a denominator is zero (rational) or below the guard (float)."""
    if mode is Mode.RATIONAL:
        return value == 0
    return abs(value) < SINGULAR_GUARD


def scalar_residual(a: Scalar, b: Scalar) -> float:
    """Relative error with an absolute floor; ``<= REL_TOL`` iff the values are close."""
    if a == b:
        return 0.0
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        return math.inf
    return abs(a - b) / max(abs(a), abs(b), ABS_FLOOR / REL_TOL)


def residual(a: Sequence[Scalar], b: Sequence[Scalar]) -> float:
    """Norm-wise relative error: max |a_k - b_k| over the larger max-norm, floored.

    Coincides with :func:`scalar_residual` for one coordinate.
    """
    if len(a) != len(b):
        return math.inf
    if tuple(a) == tuple(b):
        return 0.0
    fa, fb = [float(x) for x in a], [float(y) for y in b]
    if not all(math.isfinite(v) for v in fa + fb):
        return math.inf
    diff = max(abs(x - y) for x, y in zip(fa, fb))
    scale = max(max(map(abs, fa)), max(map(abs, fb)), ABS_FLOOR / REL_TOL)
    return diff / scale


def close(a, b, mode: Mode, tol: float = REL_TOL) -> bool:
    if mode is Mode.RATIONAL:
        return tuple(a) == tuple(b)
    return residual(a, b) <= tol


@dataclass(frozen=True, eq=False)
class PseudofieldInstance:
    """A local n-pseudofield: partial product, inverse and involutions phi_2..phi_n.

    ``mul_fn``, ``inv_fn`` and ``phi_fn`` receive defined elements only;
    propagation of :class:`Undefined` happens in the wrapping methods.
    ``solver`` optionally solves the sharp-transitivity problem
    ``X . Z = Y`` on n-tuples; ``reference_action`` is a closed form of the
    action of G^n on G used as an oracle.
    """

    name: str
    n: int
    dim: int
    mode: Mode
    mul_fn: Callable[[Element, Element], Partial]
    inv_fn: Callable[[Element], Partial]
    phi_fn: Callable[[int, Element], Partial]
    e: Element
    reference_action: Optional[Callable[[Element, Sequence[Element]], Partial]] = None
    solver: Optional[Callable[[Sequence[Element], Sequence[Element]], Partial]] = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"degree must be >= 2, got {self.n}")
        if len(self.e) != self.dim:
            raise ValueError("unit has wrong dimension")

    # -- construction helpers -------------------------------------------------

    def element(self, coords) -> Element:
        if not isinstance(coords, (list, tuple)):
            coords = (coords,)
        if len(coords) != self.dim:
            raise ValueError(f"{self.name}: expected {self.dim} coordinates, got {len(coords)}")
        return tuple(scalar(c, self.mode) for c in coords)

    def close(self, a, b, tol: float = REL_TOL) -> bool:
        return close(a, b, self.mode, tol)

    def _check_index(self, i: int):
        if not 2 <= i <= self.n:
            raise ValueError(f"phi index {i} outside 2..{self.n}")

    # -- primitive operations -------------------------------------------------

    def mul(self, a: Partial, b: Partial) -> Partial:
        if isinstance(a, Undefined):
            return a
        if isinstance(b, Undefined):
            return b
        return self.mul_fn(a, b)

    def inv(self, a: Partial) -> Partial:
        if isinstance(a, Undefined):
            return a
        return self.inv_fn(a)

    def phi(self, i: int, a: Partial) -> Partial:
        if not 2 <= i <= self.n:
            self._check_index(i)
        if isinstance(a, Undefined):
            return a
        return self.phi_fn(i, a)

    @property
    def tolerance(self) -> float:
        """Default float tolerance for checks on this instance."""
        return self.params.get("tolerance", REL_TOL)

    def unit(self, i: int = 1) -> Element:
        return self.units[i - 1]

    @functools.cached_property
    def units(self) -> Tuple[Element, ...]:
        """(e_1, ..., e_n) with e_1 = e and e_i = phi_i(e)."""
        out = [self.e]
        for i in range(2, self.n + 1):
            value = self.phi(i, self.e)
            if undefined(value):
                raise ValueError(f"{self.name}: phi_{i}(e) is undefined")
            out.append(value)
        return tuple(out)

    # -- derived operations ---------------------------------------------------

    def mul_i(self, i: int, a: Partial, b: Partial) -> Partial:
        """a ._i b = phi_i(phi_i(a) phi_i(b)), falling back to phi_i(a phi_i(b^-1)) b."""
        primary = self.mul_i_conjugate(i, a, b)
        if not undefined(primary):
            return primary
        alternate = self.mul_i_translated(i, a, b)
        if not undefined(alternate):
            return alternate
        return primary

    def mul_i_conjugate(self, i: int, a: Partial, b: Partial) -> Partial:
        return self.phi(i, self.mul(self.phi(i, a), self.phi(i, b)))

    def mul_i_translated(self, i: int, a: Partial, b: Partial) -> Partial:
        return self.mul(self.phi(i, self.mul(a, self.phi(i, self.inv(b)))), b)

    def inv_i(self, i: int, a: Partial) -> Partial:
        """Inverse in the conjugated group G_i: phi_i E phi_i."""
        return self.phi(i, self.inv(self.phi(i, a)))

    def sigma(self, i: int, j: int, a: Partial) -> Partial:
        if i == j:
            raise ValueError("sigma needs distinct indices")
        return self.phi(j, self.phi(i, self.phi(j, a)))
