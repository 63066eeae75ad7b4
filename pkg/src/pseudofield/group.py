"""The local group G^n built from a pseudofield, acting on G sharply n-transitively."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .core import Element, Mode, Partial, PseudofieldInstance, Undefined
from .words import SHIFTS, RightMul, act, auxiliary_tuple, eval_word, tuple_word

GroupTuple = Tuple[Element, ...]


def _check_len(inst, X):
    if not 1 <= len(X) <= inst.n:
        raise ValueError(f"tuple length {len(X)} outside 1..{inst.n}")


def gidentity(inst: PseudofieldInstance, k: Optional[int] = None) -> GroupTuple:
    k = inst.n if k is None else k
    return tuple(inst.unit(i) for i in range(1, k + 1))


def gmul(inst: PseudofieldInstance, X: Sequence[Partial], Y: Sequence[Partial]) -> Partial:
    """Componentwise action: (X Y)_i = x_i . [y_1, ..., y_n]."""
    if isinstance(X, Undefined):
        return X
    if isinstance(Y, Undefined):
        return Y
    _check_len(inst, X)
    if len(X) != len(Y):
        raise ValueError("tuples of different length")
    word = tuple_word(inst, Y) if len(Y) > 1 else (RightMul(Y[0]),)
    out = []
    for x in X:
        v = word if isinstance(word, Undefined) else eval_word(inst, x, word)
        if isinstance(v, Undefined):
            v = act(inst, x, Y)
            if isinstance(v, Undefined):
                return v
        out.append(v)
    return tuple(out)


def ginv(inst: PseudofieldInstance, X: Sequence[Partial], refine: bool = True) -> Partial:
    """Left inverse in G^k, k = len(X), recursing through G^(k-1) down to G.

    In float mode one refinement step Z <- (Z X)^-1 Z follows.  R = Z X is
    close to the identity, where the recursion is badly conditioned, so R^-1
    is taken as W (R W)^-1 for a fixed generic W.
    """
    z = _ginv(inst, X)
    if not refine or inst.mode is not Mode.FLOAT or isinstance(z, Undefined) or len(X) == 1:
        return z
    w = auxiliary_tuple(inst, len(X), SHIFTS[0])
    r = gmul(inst, z, X)
    rw = r if isinstance(r, Undefined) else gmul(inst, r, w)
    rw_inv = rw if isinstance(rw, Undefined) else _ginv(inst, rw)
    r_inv = rw_inv if isinstance(rw_inv, Undefined) else gmul(inst, w, rw_inv)
    refined = r_inv if isinstance(r_inv, Undefined) else gmul(inst, r_inv, z)
    return z if isinstance(refined, Undefined) else refined


def _ginv(inst, X):
    _check_len(inst, X)
    for x in X:
        if isinstance(x, Undefined):
            return x
    k = len(X)
    if k == 1:
        v = inst.inv(X[0])
        return v if isinstance(v, Undefined) else (v,)
    result = _ginv_components(inst, X)
    if isinstance(result, Undefined) and inst.close(X[-1], inst.unit(k)):
        # X fixes e_k: invert inside the stabilizer G^(k-1)
        sub = _ginv(inst, X[:-1])
        return sub if isinstance(sub, Undefined) else sub + (inst.unit(k),)
    return result


def _ginv_components(inst, X):
    # Component i conjugates by phi_i: with s = phi_i(X) and entries 1, i swapped,
    #   c_i = phi_i( phi_k(s_k^-1) . [phi_k(s_j s_k^-1)]_{j<k}^-1 ),
    # and phi_1 is the identity.
    k = len(X)
    out = []
    for i in range(1, k + 1):
        if i == 1:
            s = list(X)
        else:
            s = [inst.phi(i, x) for x in X]
            s[0], s[i - 1] = s[i - 1], s[0]
        last_inv = inst.inv(s[-1])
        if isinstance(last_inv, Undefined):
            return last_inv
        reduced = []
        for sj in s[:-1]:
            v = inst.phi(k, inst.mul(sj, last_inv))
            if isinstance(v, Undefined):
                return v
            reduced.append(v)
        reduced_inv = _ginv(inst, reduced)
        if isinstance(reduced_inv, Undefined):
            return reduced_inv
        c = act(inst, inst.phi(k, last_inv), reduced_inv)
        if i > 1:
            c = inst.phi(i, c)
        if isinstance(c, Undefined):
            return c
        out.append(c)
    return tuple(out)


def embed_stabilizer(inst: PseudofieldInstance, x: Element, k: Optional[int] = None) -> GroupTuple:
    """x -> (x, e_2, ..., e_k), the stabilizer of e_2..e_k identified with G."""
    k = inst.n if k is None else k
    return (x,) + gidentity(inst, k)[1:]


def gact(inst: PseudofieldInstance, x: Partial, Y: Sequence[Partial]) -> Partial:
    return act(inst, x, Y)
