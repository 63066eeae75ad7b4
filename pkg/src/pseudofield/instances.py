"""Shipped pseudofields: affine line, Moebius-type, GL_n semidirect, Mikhailichenko."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    Element,
    Mode,
    PseudofieldInstance,
    Reason,
    Undefined,
    divide,
    is_small,
    scalar,
    undefined,
)

KINDS = ("affine2", "moebius3", "semidirect", "mikhailichenko")

# Nested tuple words on vector carriers lose a few digits; float checks on
# them default to this tolerance instead of the scalar one.
VECTOR_TOL = 1e-8


@dataclass(frozen=True)
class InstanceDescriptor:
    kind: str
    n: Optional[int] = None
    mode: Mode = Mode.FLOAT

    def resolved_n(self) -> int:
        if self.kind == "affine2":
            return 2
        if self.kind == "moebius3":
            return 3
        if self.kind in ("semidirect", "mikhailichenko"):
            if self.n is None or self.n < 2:
                raise ValueError(f"{self.kind} needs n >= 2")
            return self.n
        raise ValueError(f"unknown instance {self.kind!r}; expected one of {', '.join(KINDS)}")


def make_instance(desc: InstanceDescriptor) -> PseudofieldInstance:
    n = desc.resolved_n()
    if desc.kind == "affine2":
        return affine2(desc.mode)
    if desc.kind == "moebius3":
        return moebius3(desc.mode)
    if desc.kind == "semidirect":
        return semidirect(n, desc.mode)
    return mikhailichenko(n, desc.mode)


# -- affine2: R* with phi_2(x) = 1 - x -----------------------------------------


def affine2(mode: Mode = Mode.FLOAT) -> PseudofieldInstance:
    one = scalar(1, mode)

    def mul(a, b):
        return (a[0] * b[0],)

    def inv(a):
        if a[0] == 0:
            return Undefined(Reason.NOT_INVERTIBLE)
        q = divide(one, a[0], mode)
        return q if undefined(q) else (q,)

    def phi(i, a):
        return (one - a[0],)

    def reference(x, ys):
        (y1,), (y2,) = ys
        return (x[0] * (y1 - y2) + y2,)

    def solve(xs, ys):
        # x_k (a - b) + b = y_k for k = 1, 2
        (x1,), (x2,) = xs
        (y1,), (y2,) = ys
        slope = divide(y1 - y2, x1 - x2, mode)
        if undefined(slope):
            return slope
        b = y1 - x1 * slope
        return ((b + slope,), (b,))

    return PseudofieldInstance(
        name="affine2", n=2, dim=1, mode=mode,
        mul_fn=mul, inv_fn=inv, phi_fn=phi, e=(one,),
        reference_action=reference, solver=solve, params={"kind": "affine2"},
    )


# -- moebius3: psi-conjugate of the affine structure, psi(x) = 2x/(x+1) --------


def moebius3(mode: Mode = Mode.FLOAT) -> PseudofieldInstance:
    one = scalar(1, mode)
    two = scalar(2, mode)
    three = scalar(3, mode)

    def mul(a, b):
        x, y = a[0], b[0]
        q = divide(two * x * y, one + x + y - x * y, mode)
        return q if undefined(q) else (q,)

    def inv(a):
        x = a[0]
        # 0 and -1 are the images of the zero and of infinity under psi^-1
        if x == 0 or x == -one:
            return Undefined(Reason.NOT_INVERTIBLE)
        q = divide(x + one, three * x - one, mode)
        return q if undefined(q) else (q,)

    def phi(i, a):
        x = a[0]
        if i == 3:
            return (-x,)
        q = divide(one - x, one + three * x, mode)
        return q if undefined(q) else (q,)

    def reference(x, ys):
        (y1,), (y2,), (y3,) = ys
        t = x[0]
        num = t * (two * y1 * y3 - y2 * (y1 + y3)) + y2 * (y3 - y1)
        den = t * (y1 - two * y2 + y3) + y3 - y1
        q = divide(num, den, mode)
        return q if undefined(q) else (q,)

    def solve(xs, ys):
        # the action is x -> (a x + b)/(c x + d); fit it through three point pairs
        ps = [p[0] for p in xs]
        qs = [q[0] for q in ys]
        a = _det3([(p * q, q, one) for p, q in zip(ps, qs)])
        b = _det3([(p * q, p, q) for p, q in zip(ps, qs)])
        c = _det3([(p, q, one) for p, q in zip(ps, qs)])
        d = _det3([(p * q, p, one) for p, q in zip(ps, qs)])
        if is_small(a * d - b * c, mode):
            return Undefined(Reason.SINGULAR_DENOMINATOR)
        out = []
        for base in (one, scalar(0, mode), -one):
            q = divide(a * base + b, c * base + d, mode)
            if undefined(q):
                return q
            out.append((q,))
        return tuple(out)

    return PseudofieldInstance(
        name="moebius3", n=3, dim=1, mode=mode,
        mul_fn=mul, inv_fn=inv, phi_fn=phi, e=(one,),
        reference_action=reference, solver=solve, params={"kind": "moebius3"},
    )


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


# -- semidirect(n): rows (x_1, ..., x_n) with x_1 != 0, the GL_n pseudofield ---


def _row_mul(a, b):
    x1 = a[0]
    return (x1 * b[0],) + tuple(x1 * y + x for x, y in zip(a[1:], b[1:]))


def _row_inv(mode):
    one = scalar(1, mode)

    def inv(a):
        if is_small(a[0], mode):
            reason = Reason.NOT_INVERTIBLE if a[0] == 0 else Reason.SINGULAR_DENOMINATOR
            return Undefined(reason)
        r = one / a[0]
        return (r,) + tuple(-x * r for x in a[1:])

    return inv


def _swap(a, i):
    out = list(a)
    out[0], out[i - 1] = out[i - 1], out[0]
    return tuple(out)


def semidirect(n: int, mode: Mode = Mode.FLOAT) -> PseudofieldInstance:
    if n < 2:
        raise ValueError("semidirect needs n >= 2")
    zero, one = scalar(0, mode), scalar(1, mode)

    def phi(i, a):
        return _swap(a, i)

    def reference(x, ys):
        # row vector times the matrix whose rows are ys
        return tuple(sum((x[k] * ys[k][j] for k in range(n)), zero) for j in range(n))

    def solve(xs, ys):
        return matrix_solve(xs, ys, mode)

    return PseudofieldInstance(
        name=f"semidirect{n}", n=n, dim=n, mode=mode,
        mul_fn=_row_mul, inv_fn=_row_inv(mode), phi_fn=phi,
        e=(one,) + (zero,) * (n - 1),
        reference_action=reference, solver=solve,
        params={"kind": "semidirect", "tolerance": VECTOR_TOL},
    )


def mikhailichenko(n: int, mode: Mode = Mode.FLOAT) -> PseudofieldInstance:
    if n < 2:
        raise ValueError("mikhailichenko needs n >= 2")
    zero, one = scalar(0, mode), scalar(1, mode)

    def phi(i, a):
        if i < n:
            return _swap(a, i)
        return (one - sum(a[: n - 1], zero),) + tuple(a[1:])

    return PseudofieldInstance(
        name=f"mikhailichenko{n}", n=n, dim=n, mode=mode,
        mul_fn=_row_mul, inv_fn=_row_inv(mode), phi_fn=phi,
        e=(one,) + (zero,) * (n - 1),
        params={"kind": "mikhailichenko", "tolerance": VECTOR_TOL},
    )


# -- matrix helpers for the GL_n correspondence --------------------------------


def matrix_solve(xs: Sequence[Element], ys: Sequence[Element], mode: Mode):
    """Rows of A with M(xs) A = M(ys); Undefined when M(xs) is singular."""
    if mode is Mode.FLOAT:
        mx = np.array(xs, dtype=float)
        if abs(np.linalg.det(mx)) < 1e-12:
            return Undefined(Reason.SINGULAR_DENOMINATOR)
        a = np.linalg.solve(mx, np.array(ys, dtype=float))
        return tuple(tuple(float(v) for v in row) for row in a)
    return _exact_solve([list(r) for r in xs], [list(r) for r in ys])


def _exact_solve(a, b):
    n = len(a)
    rows = [a[i] + b[i] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Undefined(Reason.SINGULAR_DENOMINATOR)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def adversarial(mode: Mode = Mode.FLOAT) -> PseudofieldInstance:
    """Real multiplication with phi_2(x) = 2 - x: violates the main equation."""
    base = affine2(mode)
    two = scalar(2, mode)
    return PseudofieldInstance(
        name="adversarial2", n=2, dim=1, mode=mode,
        mul_fn=base.mul_fn, inv_fn=base.inv_fn,
        phi_fn=lambda i, a: (two - a[0],), e=base.e, params={"kind": "adversarial"},
    )
