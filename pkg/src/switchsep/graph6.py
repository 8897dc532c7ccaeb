"""graph6 encoding (McKay's format) and a plain edge-list reader.

Bit ``x(i, j)`` for ``i < j`` is emitted column by column::

    x(0,1) x(0,2) x(1,2) x(0,3) x(1,3) x(2,3) ...

padded with zeros to a multiple of six and packed big-endian into bytes
``63..126``.  Orders up to 62 use one header byte, up to 258047 use ``~``
plus three bytes, and larger orders ``~~`` plus six bytes.
"""
from __future__ import annotations

from .graph import Graph

HEADER = ">>graph6<<"
_MAX_ORDER = (1 << 36) - 1


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _encode_order(n: int) -> str:
    if n < 0 or n > _MAX_ORDER:
        raise ValueError(f"order {n} not representable in graph6")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def encode(g: Graph) -> str:
    bits = []
    for j in range(1, g.order):
        row = g.rows[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        body.append(chr(63 + value))
    return _encode_order(g.order) + "".join(body)


def _sixes(text: str, start: int, count: int) -> int:
    value = 0
    for k in range(start, start + count):
        if k >= len(text):
            raise Graph6Error("truncated order header", k)
        value = value << 6 | (ord(text[k]) - 63)
    return value


def decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside 63..126", k)

    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) > 1 and s[1] == "~":
        n, pos = _sixes(s, 2, 6), 8
    else:
        n, pos = _sixes(s, 1, 3), 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - pos != need:
        raise Graph6Error(
            f"order {n} needs {need} data bytes, found {len(s) - pos}",
            min(len(s), pos + need),
        )
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for byte_index in range(pos, pos + need):
        value = ord(s[byte_index]) - 63
        for shift in range(5, -1, -1):
            bit = value >> shift & 1
            if k < nbits:
                if bit:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bit", byte_index)
            k += 1
    return Graph(n, tuple(rows))


def parse_edge_list(text: str, order: int | None = None) -> Graph:
    """Read ``"u v"`` lines (0-based).  Blank lines and ``#`` comments are skipped.

    Without ``order`` the graph spans ``0..max label``.
    """
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two vertex labels, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer label in {line!r}") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative label in {line!r}")
        edges.append((u, v))
    if order is None:
        order = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(order, edges)
