"""Finite n-ary quasigroups as numpy tables.

A table of arity ``n`` over symbols ``0..q-1`` is an integer array of shape
``(q,) * n``; entry ``t[x_1, ..., x_n]`` is ``x_0``.  Predicate positions
are numbered ``0..n`` with position 0 the value, so argument axis ``i``
is predicate position ``i + 1``.

For order 4 built from an extended Boolean function, symbol ``e = 2*x + y``
encodes the bit pair ``[x, y]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .boolean import ExtendedBooleanFunction

MAX_CELLS = 1 << 16


class ScaleError(RuntimeError):
    """The requested table exceeds the desk-scale cell budget."""


def _guard(order: int, arity: int) -> None:
    if order ** arity > MAX_CELLS:
        raise ScaleError(f"{order}^{arity} cells exceed the limit of {MAX_CELLS}")


@dataclass(frozen=True, eq=False)
class QuasigroupTable:
    order: int
    arity: int
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.int64)
        if values.shape != (self.order,) * self.arity:
            raise ValueError(
                f"table shape {values.shape} does not match order {self.order}, arity {self.arity}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if not is_latin(values, self.order):
            raise ValueError("table is not Latin in every position")

    def __call__(self, *args: int) -> int:
        return int(self.values[args])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuasigroupTable)
            and (self.order, self.arity) == (other.order, other.arity)
            and np.array_equal(self.values, other.values)
        )

    def permute_arguments(self, perm: list[int]) -> QuasigroupTable:
        """Table whose argument ``i`` is this table's argument ``perm[i]``."""
        # axis perm[i] of the old table becomes axis i
        return QuasigroupTable(self.order, self.arity, np.transpose(self.values, perm))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "arity": self.arity,
            "values": self.values.ravel().tolist(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> QuasigroupTable:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            order, arity, flat = int(data["order"]), int(data["arity"]), data["values"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"table JSON needs order, arity, values: {exc}") from None
        if len(flat) != order ** arity:
            raise ValueError(f"expected {order ** arity} values, got {len(flat)}")
        _guard(order, arity)
        return cls(order, arity, np.array(flat, dtype=np.int64).reshape((order,) * arity))


def is_latin(values, order: int | None = None) -> bool:
    """Whether every axis of ``values`` carries a permutation of the symbols."""
    t = np.asarray(values)
    if t.ndim == 0:
        raise ValueError("table must have at least one argument")
    q = t.shape[0]
    if any(s != q for s in t.shape):
        raise ValueError(f"table shape {t.shape} is not a hypercube")
    if order is not None and order != q:
        raise ValueError(f"table side {q} does not match order {order}")
    if t.min(initial=0) < 0 or t.max(initial=0) >= q:
        return False
    expected = np.arange(q)
    for axis in range(t.ndim):
        if not np.array_equal(np.sort(t, axis=axis), np.broadcast_to(
            expected.reshape([-1 if a == axis else 1 for a in range(t.ndim)]), t.shape
        )):
            return False
    return True


def group_sum(order: int, arity: int) -> QuasigroupTable:
    """``x_1 + ... + x_n mod order``."""
    _guard(order, arity)
    grids = np.indices((order,) * arity)
    return QuasigroupTable(order, arity, grids.sum(axis=0) % order)


def q_lambda(f: ExtendedBooleanFunction) -> QuasigroupTable:
    """Order-4 quasigroup of arity ``f.arity - 1`` from the wreath-type predicate.

    ``Q([x1,y1], ..., [xn,yn]) = [x0, y0]`` with ``x0 = x1 + ... + xn`` and
    ``y0 = f(x0, x1, ..., xn) + y1 + ... + yn`` (mod 2).
    """
    n = f.arity - 1
    if n < 2:
        raise ValueError(f"q_lambda needs an extended Boolean function of arity >= 3, got {f.arity}")
    _guard(4, n)
    sym = np.indices((4,) * n)
    x = sym >> 1
    y = sym & 1
    x0 = x.sum(axis=0) & 1
    # index into f's table: bits (x0, x1, ..., x_{n-1}); x_n is the parity completion
    idx = x0.copy()
    for i in range(n - 1):
        idx |= x[i] << (i + 1)
    lam = np.asarray(f.table, dtype=np.int64)[idx]
    y0 = (lam + y.sum(axis=0)) & 1
    return QuasigroupTable(4, n, 2 * x0 + y0)


def retract(qg: QuasigroupTable, fixed: dict[int, int]) -> QuasigroupTable:
    """Fix predicate positions (0 = value, i = argument i) and read off the rest.

    The least unfixed position becomes the value of the retract; the other
    unfixed positions are its arguments in increasing order.
    """
    n, q = qg.arity, qg.order
    for pos, val in fixed.items():
        if not 0 <= pos <= n:
            raise ValueError(f"predicate position {pos} outside 0..{n}")
        if not 0 <= val < q:
            raise ValueError(f"symbol {val} outside 0..{q - 1}")
    free = [p for p in range(n + 1) if p not in fixed]
    if len(free) - 1 < 2:
        raise ValueError(f"retract would have arity {len(free) - 1}; need >= 2")
    args = np.indices((q,) * n).reshape(n, -1)
    tuples = np.vstack([qg.values.reshape(-1), args])  # rows are predicate positions
    mask = np.ones(tuples.shape[1], dtype=bool)
    for pos, val in fixed.items():
        mask &= tuples[pos] == val
    sel = tuples[:, mask]
    out_pos, arg_pos = free[0], free[1:]
    out = np.full((q,) * len(arg_pos), -1, dtype=np.int64)
    out[tuple(sel[p] for p in arg_pos)] = sel[out_pos]
    return QuasigroupTable(q, len(arg_pos), out)


@dataclass(frozen=True)
class Decomposition:
    """``Q(x) = outer(inner(x_B), x_rest)`` with ``inner`` on the arguments ``block``."""

    block: tuple[int, ...]
    rest: tuple[int, ...]
    inner: QuasigroupTable
    outer: QuasigroupTable

    def compose(self, arity: int) -> np.ndarray:
        q = self.inner.order
        full = np.indices((q,) * arity)
        s = self.inner.values[tuple(full[i] for i in self.block)]
        return self.outer.values[(s,) + tuple(full[i] for i in self.rest)]


def is_reducible(qg: QuasigroupTable) -> Decomposition | None:
    """Find a split of the arguments into a block ``B`` and the rest.

    For each block (lexicographic by sorted tuple, ``2 <= |B| <= n-1``) the
    block assignments are grouped by the residual function they leave on the
    remaining arguments; the block works iff there are exactly ``q`` groups.
    """
    n, q = qg.arity, qg.order
    if n < 3:
        raise ValueError(f"reducibility needs arity >= 3, got {n}")
    blocks = sorted(c for size in range(2, n) for c in combinations(range(n), size))
    for block in blocks:
        rest = tuple(i for i in range(n) if i not in block)
        moved = np.moveaxis(qg.values, block, range(len(block)))
        flat = moved.reshape(q ** len(block), q ** len(rest))
        uniq, first, labels = np.unique(flat, axis=0, return_index=True, return_inverse=True)
        if len(uniq) != q:
            continue
        # relabel groups by order of first occurrence
        rank = np.empty(q, dtype=np.int64)
        rank[np.argsort(first)] = np.arange(q)
        inner_vals = rank[labels.reshape(-1)].reshape((q,) * len(block))
        outer_vals = np.empty((q,) + (q,) * len(rest), dtype=np.int64)
        for g in range(q):
            outer_vals[rank[g]] = uniq[g].reshape((q,) * len(rest))
        inner = QuasigroupTable(q, len(block), inner_vals)
        outer = QuasigroupTable(q, len(rest) + 1, outer_vals)
        dec = Decomposition(block, rest, inner, outer)
        assert np.array_equal(dec.compose(n), qg.values)
        return dec
    return None


def kappa(qg: QuasigroupTable) -> int:
    """Largest arity of an irreducible proper retract (binary ones count)."""
    n, q = qg.arity, qg.order
    if n < 3:
        raise ValueError(f"kappa needs arity >= 3, got {n}")
    # retracts slice the (n+1)-place predicate, so budget its q^(n+1) cells
    _guard(q, n + 1)
    for k in range(n - 1, 2, -1):
        for positions in combinations(range(n + 1), n - k):
            for vals in product(range(q), repeat=n - k):
                if is_reducible(retract(qg, dict(zip(positions, vals)))) is None:
                    return k
    return 2


def direct_product(qg: QuasigroupTable, k: int) -> QuasigroupTable:
    """Componentwise product with ``x_1 + ... + x_n mod k``.

    Symbol ``a*k + b`` stands for the pair ``(a, b)``.
    """
    if k < 2:
        raise ValueError("group order must be >= 2")
    n, q = qg.arity, qg.order
    _guard(q * k, n)
    sym = np.indices((q * k,) * n)
    a, b = sym // k, sym % k
    left = qg.values[tuple(a)]
    right = b.sum(axis=0) % k
    return QuasigroupTable(q * k, n, left * k + right)
