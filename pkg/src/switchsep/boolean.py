"""GF(2) polynomials, extended Boolean functions, and their link to graphs.

A polynomial is a set of monomials, each a bitmask of variable indices
(mask 0 is the constant 1).  An extended Boolean function of arity ``n`` is
defined only on even-weight tuples; it is stored as the table of its values
indexed by the first ``n-1`` coordinates, the last one being their parity.

Writing ``s = x_0 + ... + x_{n-1}``, every polynomial ``r`` in ``n``
variables splits uniquely as ``q + s*l`` with ``q`` and ``l`` free of the
last variable.  Since ``s`` vanishes on the domain, ``q`` alone determines
the function, and adding ``s*l`` for a linear ``l`` switches the graph of
the quadratic part by the variables of ``l``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, members, popcount


@dataclass(frozen=True)
class Gf2Polynomial:
    arity: int
    monomials: frozenset[int]

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        for m in self.monomials:
            if m < 0 or m >> self.arity:
                raise ValueError(f"monomial {m:b} uses a variable beyond x{self.arity - 1}")

    @classmethod
    def zero(cls, arity: int) -> Gf2Polynomial:
        return cls(arity, frozenset())

    @classmethod
    def from_terms(cls, arity: int, terms) -> Gf2Polynomial:
        """Build from iterables of variable indices; repeated terms cancel."""
        acc: set[int] = set()
        for t in terms:
            acc ^= {sum(1 << i for i in set(t))}
        return cls(arity, frozenset(acc))

    @classmethod
    def variable(cls, arity: int, i: int) -> Gf2Polynomial:
        return cls(arity, frozenset({1 << i}))

    @classmethod
    def parse(cls, text: str, arity: int) -> Gf2Polynomial:
        """Read ``"x0*x1 + x2 + 1"``; ``"0"`` is the zero polynomial."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(arity)
        terms = []
        for raw in text.split("+"):
            term = raw.strip()
            if term == "1":
                terms.append(())
                continue
            factors = [f.strip() for f in term.split("*")]
            idx = []
            for f in factors:
                m = re.fullmatch(r"x(\d+)", f)
                if not m:
                    raise ValueError(f"bad factor {f!r} in polynomial {text!r}")
                idx.append(int(m.group(1)))
            terms.append(idx)
        return cls.from_terms(arity, terms)

    @property
    def degree(self) -> int:
        return max((popcount(m) for m in self.monomials), default=-1)

    def __add__(self, other: Gf2Polynomial) -> Gf2Polynomial:
        return Gf2Polynomial(max(self.arity, other.arity), self.monomials ^ other.monomials)

    def __mul__(self, other: Gf2Polynomial) -> Gf2Polynomial:
        acc: set[int] = set()
        for a in self.monomials:
            for b in other.monomials:
                acc ^= {a | b}
        return Gf2Polynomial(max(self.arity, other.arity), frozenset(acc))

    def with_arity(self, arity: int) -> Gf2Polynomial:
        return Gf2Polynomial(arity, self.monomials)

    def restrict(self, i: int, value: int) -> Gf2Polynomial:
        """Substitute ``x_i := value`` (the variable stays in the arity)."""
        bit = 1 << i
        acc: set[int] = set()
        for m in self.monomials:
            if m & bit:
                if value:
                    acc ^= {m & ~bit}
            else:
                acc ^= {m}
        return Gf2Polynomial(self.arity, frozenset(acc))

    def part(self, degree: int) -> Gf2Polynomial:
        return Gf2Polynomial(
            self.arity, frozenset(m for m in self.monomials if popcount(m) == degree)
        )

    def evaluate(self, point: int) -> int:
        """Value at the point whose bit ``i`` is ``x_i``."""
        return sum((point & m) == m for m in self.monomials) & 1

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        ordered = sorted(self.monomials, key=lambda m: (-popcount(m), members(m)))
        return " + ".join("*".join(f"x{i}" for i in members(m)) or "1" for m in ordered)


def parity_sum(arity: int) -> Gf2Polynomial:
    """x_0 + ... + x_{arity-1}."""
    return Gf2Polynomial(arity, frozenset(1 << i for i in range(arity)))


def polynomial_to_graph(p: Gf2Polynomial) -> Graph:
    if p.degree > 2:
        raise ValueError(f"polynomial of degree {p.degree} has no graph")
    return Graph.from_edges(p.arity, (tuple(members(m)) for m in p.part(2).monomials))


def graph_to_polynomial(g: Graph, linear: Gf2Polynomial | None = None) -> Gf2Polynomial:
    """Quadratic polynomial with one ``x_i*x_j`` per edge plus ``linear``."""
    quad = Gf2Polynomial(g.order, frozenset(1 << u | 1 << v for u, v in g.edges()))
    if linear is None:
        return quad
    if linear.arity != g.order:
        raise ValueError(f"linear part has arity {linear.arity}, graph has order {g.order}")
    if linear.degree > 1:
        raise ValueError("linear part must have degree at most 1")
    return quad + linear


def canonical_decomposition(r: Gf2Polynomial, n: int | None = None):
    """Split ``r`` as ``q + (x_0 + ... + x_{n-1}) * l``.

    Returns ``(q, l)``, both polynomials in the first ``n-1`` variables,
    found by substituting ``x_{n-1} = s + x_0 + ... + x_{n-2}``.
    """
    n = r.arity if n is None else n
    if n < 1 or any(m >> n for m in r.monomials):
        raise ValueError(f"polynomial does not fit arity {n}")
    last = 1 << (n - 1)
    q: set[int] = set()
    l: set[int] = set()
    for m in r.monomials:
        if not m & last:
            q ^= {m}
            continue
        rest = m & ~last
        l ^= {rest}
        for i in range(n - 1):
            q ^= {rest | 1 << i}
    return Gf2Polynomial(n - 1, frozenset(q)), Gf2Polynomial(n - 1, frozenset(l))


def anf(table: tuple[int, ...]) -> Gf2Polynomial:
    """Algebraic normal form of a total Boolean function (Moebius transform).

    ``table[b]`` is the value at the point whose bit ``i`` is ``x_i``.
    """
    size = len(table)
    k = size.bit_length() - 1
    if size != 1 << k:
        raise ValueError(f"table length {size} is not a power of two")
    coeffs = list(table)
    step = 1
    while step < size:
        for b in range(size):
            if b & step:
                coeffs[b] ^= coeffs[b ^ step]
        step <<= 1
    return Gf2Polynomial(k, frozenset(b for b, c in enumerate(coeffs) if c))


@dataclass(frozen=True)
class ExtendedBooleanFunction:
    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.arity < 2:
            raise ValueError("extended Boolean functions need arity >= 2")
        if len(self.table) != 1 << (self.arity - 1):
            raise ValueError(
                f"table for arity {self.arity} needs {1 << (self.arity - 1)} entries, "
                f"got {len(self.table)}"
            )
        if any(v not in (0, 1) for v in self.table):
            raise ValueError("table entries must be 0 or 1")

    def __call__(self, point: int) -> int:
        """Value at an even-weight point given as a bitmask over all arguments."""
        if popcount(point) & 1:
            raise ValueError(f"point {point:b} has odd weight")
        return self.table[point & ((1 << (self.arity - 1)) - 1)]

    def to_hex(self) -> str:
        value = sum(v << i for i, v in enumerate(self.table))
        return format(value, f"0{max(1, (len(self.table) + 3) // 4)}x")

    @classmethod
    def from_hex(cls, text: str, arity: int) -> ExtendedBooleanFunction:
        if arity < 2:
            raise ValueError("extended Boolean functions need arity >= 2")
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        try:
            value = int(text, 16)
        except ValueError:
            raise ValueError(f"not a hex string: {text!r}") from None
        size = 1 << (arity - 1)
        if value >> size:
            raise ValueError(f"hex table has bits beyond the {size} entries of arity {arity}")
        return cls(arity, tuple(value >> i & 1 for i in range(size)))

    def points(self):
        """Even-weight points as full bitmasks over all ``arity`` arguments."""
        k = self.arity - 1
        for b in range(1 << k):
            yield b | (popcount(b) & 1) << k


def ebf_from_polynomial(p: Gf2Polynomial) -> ExtendedBooleanFunction:
    n = p.arity
    k = n - 1
    return ExtendedBooleanFunction(
        n, tuple(p.evaluate(b | (popcount(b) & 1) << k) for b in range(1 << k))
    )


def ebf_of_graph(g: Graph, linear: Gf2Polynomial | None = None) -> ExtendedBooleanFunction:
    return ebf_from_polynomial(graph_to_polynomial(g, linear))


def quadratic_form(f: ExtendedBooleanFunction) -> tuple[bool, Gf2Polynomial]:
    """Whether ``f`` has degree at most 2, and the unique ``q`` representing it."""
    q = anf(f.table)
    return q.degree <= 2, q


def is_quadratic_ebf(f: ExtendedBooleanFunction) -> bool:
    return quadratic_form(f)[0]


def _additive_on(f: ExtendedBooleanFunction, ys: list[int], zs: list[int]) -> bool:
    # f(y, z) = f(y, z0) + f(y0, z) + f(y0, z0) on the block
    y0, z0 = ys[0], zs[0]
    base = f(y0 | z0)
    col = {z: f(y0 | z) for z in zs}
    for y in ys:
        row0 = f(y | z0) ^ base
        for z in zs:
            if f(y | z) != row0 ^ col[z]:
                return False
    return True


def _subsets_by_parity(mask: int) -> tuple[list[int], list[int]]:
    idx = members(mask)
    even, odd = [], []
    for bits in range(1 << len(idx)):
        s = sum(1 << idx[i] for i in range(len(idx)) if bits >> i & 1)
        (odd if popcount(s) & 1 else even).append(s)
    return even, odd


def ebf_is_separable(f: ExtendedBooleanFunction) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """A bipartition ``(Y, Z)`` with ``f = a(Y) + b(Z)`` on the domain, or ``None``.

    Sides have between 2 and ``n-2`` arguments; the first hit in
    lexicographic order of ``Y`` (as a sorted tuple) is returned.
    """
    n = f.arity
    if n < 4:
        raise ValueError(f"separability needs arity >= 4, got {n}")
    full = (1 << n) - 1
    candidates = sorted(
        c for size in range(2, n - 1) for c in combinations(range(n), size)
    )
    for ys_idx in candidates:
        y = sum(1 << i for i in ys_idx)
        y_even, y_odd = _subsets_by_parity(y)
        z_even, z_odd = _subsets_by_parity(full & ~y)
        if _additive_on(f, y_even, z_even) and _additive_on(f, y_odd, z_odd):
            return ys_idx, tuple(members(full & ~y))
    return None
