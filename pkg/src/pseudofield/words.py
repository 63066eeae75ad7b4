"""Postfix words of unary maps and the tuple function [y_1, ..., y_n].

A word is applied left to right: ``x . [y][z]`` is ``(x*y)*z``.  The tuple
function is expanded recursively,

    [y_1, ..., y_n] = [phi_n(y_1 y_n^-1), ..., phi_n(y_{n-1} y_n^-1)] phi_n [y_n],

down to the single right multiplication [y_1].
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Sequence, Tuple, Union

from .core import Element, Partial, PseudofieldInstance, Undefined, scalar


class RightMul(NamedTuple):
    y: Element


class Phi(NamedTuple):
    i: int


class Inv(NamedTuple):
    pass


class Sigma(NamedTuple):
    i: int
    j: int


Atom = Union[RightMul, Phi, Inv, Sigma]
Word = Tuple[Atom, ...]


_DISPATCH = {
    RightMul: lambda inst, x, a: inst.mul(x, a.y),
    Phi: lambda inst, x, a: inst.phi(a.i, x),
    Inv: lambda inst, x, a: inst.inv(x),
    Sigma: lambda inst, x, a: inst.sigma(a.i, a.j, x),
}


def apply_atom(inst: PseudofieldInstance, x: Partial, atom: Atom) -> Partial:
    try:
        fn = _DISPATCH[type(atom)]
    except KeyError:
        raise TypeError(f"not an atom: {atom!r}") from None
    return fn(inst, x, atom)


def eval_word(inst: PseudofieldInstance, x: Partial, word: Sequence[Atom]) -> Partial:
    # hot loop: call the raw operations directly, checking definedness inline
    mul, phi, n = inst.mul_fn, inst.phi_fn, inst.n
    for atom in word:
        if isinstance(x, Undefined):
            return x
        kind = type(atom)
        if kind is RightMul:
            y = atom.y
            x = y if isinstance(y, Undefined) else mul(x, y)
        elif kind is Phi and 2 <= atom.i <= n:
            x = phi(atom.i, x)
        else:
            x = apply_atom(inst, x, atom)
    return x


def stage_elements(inst: PseudofieldInstance, ys: Sequence[Partial]) -> Union[List[List[Element]], Undefined]:
    """Successive reductions [ys, ys^(1), ..., ys^(n-1)] of the tuple function.

    ``ys^(k)`` has n - k entries; entry j is phi_{n+1-k}(y_j^(k-1) E(y_last^(k-1))).
    """
    for y in ys:
        if isinstance(y, Undefined):
            return y
    # raw operations: every operand below is already known to be defined
    mul, inv, phi = inst.mul_fn, inst.inv_fn, inst.phi_fn
    levels = [list(ys)]
    current = levels[0]
    while len(current) > 1:
        k = len(current)
        last_inv = inv(current[-1])
        if isinstance(last_inv, Undefined):
            return last_inv
        nxt = []
        for y in current[:-1]:
            v = mul(y, last_inv)
            if not isinstance(v, Undefined):
                v = phi(k, v)
            if isinstance(v, Undefined):
                return v
            nxt.append(v)
        levels.append(nxt)
        current = nxt
    return levels


def tuple_word(inst: PseudofieldInstance, ys: Sequence[Partial]) -> Union[Word, Undefined]:
    """Normal form [y_1^(n-1)] phi_2 [y_2^(n-2)] ... phi_n [y_n] of the tuple function."""
    try:
        return _tuple_word_cached(inst, ys if type(ys) is tuple else tuple(ys))
    except TypeError:  # unhashable coordinates
        return _tuple_word(inst, ys)


@functools.lru_cache(maxsize=1 << 16)
def _tuple_word_cached(inst, ys):
    return _tuple_word(inst, ys)


def _tuple_word(inst, ys):
    if not ys:
        raise ValueError("tuple_word needs at least one element")
    if len(ys) > inst.n:
        raise ValueError(f"tuple of length {len(ys)} exceeds degree {inst.n}")
    levels = stage_elements(inst, ys)
    if isinstance(levels, Undefined):
        return levels
    word: List[Atom] = [RightMul(levels[-1][0])]
    # level k (k entries) contributes phi_k [last entry of level k]
    for level in reversed(levels[:-1]):
        word += [Phi(len(level)), RightMul(level[-1])]
    return tuple(word)


def _swap_first(items, i):
    out = list(items)
    out[0], out[i - 1] = out[i - 1], out[0]
    return out


# parameters of the auxiliary tuples used by the shifted branch
SHIFTS = (Fraction(1, 5), Fraction(-2, 7), Fraction(3, 11))


def auxiliary_tuple(inst: PseudofieldInstance, k: int, s) -> Tuple[Element, ...]:
    """w_i = e_i + s (e_{i+1} - e_i), cyclically; a generic element of G^k.

    Vector carriers add 1 / (2 (i + j + 2)) to coordinate j so that no
    coordinate of any w_i, or of its images under the phi_i, vanishes.
    """
    units = [inst.unit(i) for i in range(1, k + 1)]
    mode = inst.mode
    out = []
    for i in range(k):
        a, b = units[i], units[(i + 1) % k]
        w = [x + scalar(s, mode) * (y - x) for x, y in zip(a, b)]
        if inst.dim > 1:
            w = [v + scalar(Fraction(1, 2 * (i + j + 2)), mode) for j, v in enumerate(w)]
        out.append(tuple(w))
    return tuple(out)


@functools.lru_cache(maxsize=256)
def _auxiliary_pair(inst, k, s):
    from .group import ginv

    w = auxiliary_tuple(inst, k, s)
    return w, ginv(inst, w)


def act_branches(inst: PseudofieldInstance, x: Partial, ys: Sequence[Partial],
                 conjugate: bool = True, shift: bool = True) -> Iterator[Tuple[str, Partial]]:
    """Lazily yield (label, value) for each way of evaluating x . [ys].

    Order: the full tuple word, the reduction when y_n is the unit e_n, the
    conjugated forms x . phi_i [phi_i(y_i), ..., phi_i(y_1), ...] phi_i, and
    last the shifted forms (x . [Y W^-1]) . [W] for fixed auxiliary W.
    """
    k = len(ys)
    if k == 1:
        yield "word", inst.mul(x, ys[0])
        return
    word = tuple_word(inst, ys)
    yield "word", word if isinstance(word, Undefined) else eval_word(inst, x, word)
    if not isinstance(ys[-1], Undefined) and inst.close(ys[-1], inst.unit(k)):
        yield "reduced", act(inst, x, ys[:-1], conjugate, shift)
    if conjugate:
        for i in range(2, k + 1):
            zs = _swap_first([inst.phi(i, y) for y in ys], i)
            inner = act(inst, inst.phi(i, x), zs, conjugate=False, shift=False)
            yield f"conj{i}", inst.phi(i, inner)
    if shift:
        for s in SHIFTS:
            w, w_inv = _auxiliary_pair(inst, k, s)
            if isinstance(w_inv, Undefined):
                continue
            v = []
            for y in ys:
                v.append(act(inst, y, w_inv, shift=False))
            yield f"shift{s}", act(inst, act(inst, x, v, shift=False), w, shift=False)


def act(inst: PseudofieldInstance, x: Partial, ys: Sequence[Partial],
        conjugate: bool = True, shift: bool = True) -> Partial:
    """x . [y_1, ..., y_k]: the first defined branch of the action of G^k on G."""
    if isinstance(x, Undefined):
        return x
    if len(ys) == 1:
        return inst.mul(x, ys[0])
    else:
        # fast path: the full word is usually defined
        word = tuple_word(inst, ys)
        if not isinstance(word, Undefined):
            value = eval_word(inst, x, word)
            if not isinstance(value, Undefined):
                return value
        elif ys[-1] == inst.unit(len(ys)):
            # the reduced branch, same order as act_branches
            value = act(inst, x, ys[:-1], conjugate, shift)
            if not isinstance(value, Undefined):
                return value
    first = None
    for _, value in act_branches(inst, x, ys, conjugate, shift):
        if not isinstance(value, Undefined):
            return value
        if first is None:
            first = value
    return first
