"""Recovering a pseudofield from a sharply n-transitive action, and the round trip."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .core import (
    Element,
    Mode,
    Partial,
    PseudofieldInstance,
    Reason,
    Undefined,
    undefined,
)
from .group import gidentity, ginv, gmul
from .report import CheckReport, SampleConfig, Tally, new_report, sample_elements
from .words import act

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-12


@dataclass(frozen=True)
class ActionOracle:
    """A sharply n-transitive action a -> a . g with a solver for X . g = Y.

    Group elements are opaque to the extraction; only ``apply`` and ``solve``
    touch them.
    """

    n: int
    dim: int
    mode: Mode
    apply: Callable[[Element, object], Partial]
    solve: Callable[[Sequence[Element], Sequence[Element]], Partial]
    base: Tuple[Element, ...]
    name: str = "oracle"


def _distinct(inst_mode, xs) -> bool:
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if tuple(xs[i]) == tuple(xs[j]):
                return False
    return True


def solve_transitive(oracle: ActionOracle, X, Y) -> Partial:
    """The unique g with X . g = Y, or Undefined for degenerate X."""
    if any(undefined(x) for x in X) or any(undefined(y) for y in Y):
        return Undefined(Reason.OUT_OF_DOMAIN)
    if not _distinct(oracle.mode, X):
        return Undefined(Reason.NOT_INVERTIBLE)
    return oracle.solve(tuple(X), tuple(Y))


# -- solvers on the constructed group G^n ----------------------------------------


def algebraic_solve(inst: PseudofieldInstance, X, Y) -> Partial:
    """Z = X^-1 Y computed inside G^n."""
    return gmul(inst, ginv(inst, X), Y)


def newton_solve(inst: PseudofieldInstance, X, Y, start=None,
                 max_iter: int = NEWTON_MAX_ITER, tol: float = NEWTON_TOL) -> Partial:
    """Solve x_i . Z = y_i for Z by Newton's method with a finite-difference Jacobian.

    Float mode only.  ``start`` defaults to Y, the solution when X is the
    identity tuple.
    """
    n, d = len(X), inst.dim
    y = np.array(Y, dtype=float).ravel()
    scale = max(1.0, float(np.abs(y).max()))

    def resid(z):
        Z = tuple(tuple(float(v) for v in row) for row in z.reshape(n, d))
        out = []
        for x in X:
            v = act(inst, x, Z)
            if undefined(v):
                return None
            out.extend(v)
        return np.array(out) - y

    z = np.array(Y if start is None else start, dtype=float).ravel()
    r = resid(z)
    if r is None:
        return Undefined(Reason.OUT_OF_DOMAIN)
    for _ in range(max_iter):
        if np.abs(r).max() <= tol * scale:
            break
        jac = np.empty((r.size, z.size))
        for k in range(z.size):
            h = 1e-7 * max(1.0, abs(z[k]))
            zp, zm = z.copy(), z.copy()
            zp[k] += h
            zm[k] -= h
            rp, rm = resid(zp), resid(zm)
            if rp is None or rm is None:
                return Undefined(Reason.OUT_OF_DOMAIN)
            jac[:, k] = (rp - rm) / (2 * h)
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        z_new = z + step
        r_new = resid(z_new)
        if r_new is None:
            return Undefined(Reason.OUT_OF_DOMAIN)
        z, r = z_new, r_new
        if np.abs(step).max() <= tol * max(1.0, float(np.abs(z).max())):
            break
    # finite differences cap the attainable accuracy; accept within 1e-9
    if np.abs(r).max() > 1e-9 * scale:
        return Undefined(Reason.OUT_OF_DOMAIN)
    return tuple(tuple(float(v) for v in row) for row in z.reshape(n, d))


def default_solver(inst: PseudofieldInstance):
    if inst.solver is not None:
        return inst.solver
    if inst.mode is Mode.RATIONAL:
        return lambda X, Y: algebraic_solve(inst, X, Y)
    return lambda X, Y: newton_solve(inst, X, Y)


def group_oracle(inst: PseudofieldInstance, solver=None) -> ActionOracle:
    """Wrap the constructed action of G^n on G as an oracle."""
    return ActionOracle(
        n=inst.n,
        dim=inst.dim,
        mode=inst.mode,
        apply=lambda a, g: act(inst, a, g),
        solve=solver or default_solver(inst),
        base=gidentity(inst),
        name=inst.name,
    )


# -- extraction ------------------------------------------------------------------


def swap_entries(xs, i, j=1):
    out = list(xs)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def extract_pseudofield(oracle: ActionOracle) -> PseudofieldInstance:
    """Read the pseudofield off the stabilizers of the base points e_1..e_n.

    The product is the action of the stabilizer of e_2..e_n, and phi_i is
    the action of the group element swapping e_1 and e_i.
    """
    base = tuple(oracle.base)
    rest = base[1:]
    swaps = {i: swap_element(oracle, i) for i in range(2, oracle.n + 1)}

    def mul(a, b):
        g = solve_transitive(oracle, base, (b,) + rest)
        return g if undefined(g) else oracle.apply(a, g)

    def inv(a):
        g = solve_transitive(oracle, (a,) + rest, base)
        return g if undefined(g) else oracle.apply(base[0], g)

    def phi(i, a):
        g = swaps[i]
        return g if undefined(g) else oracle.apply(a, g)

    return PseudofieldInstance(
        name=f"extracted({oracle.name})",
        n=oracle.n,
        dim=oracle.dim,
        mode=oracle.mode,
        mul_fn=mul,
        inv_fn=inv,
        phi_fn=phi,
        e=base[0],
        params={"swaps": swaps},
    )


@functools.lru_cache(maxsize=128)
def swap_element(oracle: ActionOracle, i: int, j: int = 1) -> Partial:
    """E_ij, the group element exchanging base points i and j and fixing the rest."""
    base = tuple(oracle.base)
    return solve_transitive(oracle, base, swap_entries(base, i, j))


def swap_action(oracle: ActionOracle, i: int, j: int, a: Element) -> Partial:
    """eps_ij(a) = a . E_ij."""
    g = swap_element(oracle, i, j)
    return g if undefined(g) else oracle.apply(a, g)


def roundtrip_check(inst: PseudofieldInstance, cfg: SampleConfig,
                    oracle: Optional[ActionOracle] = None) -> CheckReport:
    """Compare the pseudofield extracted from G^n with ``inst`` pointwise."""
    oracle = oracle or group_oracle(inst)
    ext = extract_pseudofield(oracle)
    report = new_report(inst, cfg)
    tol, mode = cfg.tolerance, inst.mode

    def tally(check_id, ref):
        t = Tally(check_id, ref, mode, tol)
        report.checks.append(t.entry)
        return t

    rng = cfg.rng("roundtrip.mul")
    t = tally("roundtrip.mul", "extracted a.b = a . [b, e_2, ..., e_n] equals the source product")
    xs = sample_elements(inst, rng, cfg.samples, inst.e, cfg.far_radius)
    ys = sample_elements(inst, rng, cfg.samples, inst.e, cfg.far_radius)
    for a, b in zip(xs, ys):
        t.compare(ext.mul(a, b), inst.mul(a, b))

    rng = cfg.rng("roundtrip.inv")
    t = tally("roundtrip.inv", "extracted a^-1 = e_1 . [a, e_2, ..., e_n]^-1 equals the source inverse")
    for a in sample_elements(inst, rng, cfg.samples, inst.e, cfg.far_radius):
        t.compare(ext.inv(a), inst.inv(a))

    for i in range(2, inst.n + 1):
        cid = f"roundtrip.phi{i}"
        rng = cfg.rng(cid)
        t = tally(cid, f"extracted phi_{i}(a) = a . E_1{i} equals the source phi_{i}")
        for a in sample_elements(inst, rng, cfg.samples, inst.e, cfg.far_radius):
            t.compare(ext.phi(i, a), inst.phi(i, a))

    t = tally("roundtrip.units", "extracted units e_i = phi_i(e) equal the source units")
    for i in range(1, inst.n + 1):
        t.compare(ext.phi(i, ext.e) if i > 1 else ext.e, inst.unit(i))
    return report
