"""Immutable bitset-backed graphs on vertex set {0, ..., n-1}.

Adjacency is stored as one Python int per vertex: bit u of row v is set iff
uv is an edge. All operations return new Graph instances. The empty graph
(n = 0) is legal everywhere and acts as the identity for both disjoint_union
and join.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

__all__ = ["Graph", "iter_bits"]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph with int-bitset adjacency rows."""

    __slots__ = ("n", "_rows")

    def __init__(self, n: int, rows: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if rows is None:
            rows = (0,) * n
        if len(rows) != n:
            raise ValueError("expected one adjacency row per vertex")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full or row >> v & 1:
                raise ValueError(f"row {v} has bits outside 0..{n - 1} or a self-loop")
        for v, row in enumerate(rows):
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        self.n = n
        self._rows = tuple(rows)

    @classmethod
    def _unsafe(cls, n: int, rows: tuple[int, ...]) -> Graph:
        # internal constructor for rows already known to be valid
        g = object.__new__(cls)
        g.n = n
        g._rows = rows
        return g

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._unsafe(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls._unsafe(n, tuple(full ^ (1 << v) for v in range(n)))

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(row.bit_count() for row in self._rows) // 2

    def row(self, v: int) -> int:
        """Adjacency bitmask of vertex v."""
        return self._rows[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._rows[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in iter_bits(self._rows[v] >> (v + 1) << (v + 1)):
                yield (v, u)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- composition ---------------------------------------------------

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        rows = tuple(~row & full & ~(1 << v) for v, row in enumerate(self._rows))
        return Graph._unsafe(self.n, rows)

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        rows = self._rows + tuple(row << shift for row in other._rows)
        return Graph._unsafe(self.n + other.n, rows)

    def join(self, other: Graph) -> Graph:
        shift = self.n
        left_mask = (1 << shift) - 1
        right_mask = ((1 << other.n) - 1) << shift
        rows = tuple(row | right_mask for row in self._rows)
        rows += tuple(row << shift | left_mask for row in other._rows)
        return Graph._unsafe(self.n + other.n, rows)

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on the given vertices, renumbered by ascending id."""
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for u in iter_bits(self._rows[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph._unsafe(len(keep), tuple(rows))

    # -- structure -----------------------------------------------------

    def component_masks(self, within: int | None = None, *, complement: bool = False) -> list[int]:
        """Connected components as bitmasks, ordered by smallest member.

        Args:
            within: restrict to this vertex bitmask (default: all vertices).
            complement: walk complement adjacency instead (restricted to the mask).
        """
        remaining = (1 << self.n) - 1 if within is None else within
        scope = remaining
        out = []
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    if complement:
                        reach |= ~self._rows[v] & scope & ~(1 << v)
                    else:
                        reach |= self._rows[v] & scope
                frontier = reach & ~comp
                comp |= frontier
            out.append(comp)
            remaining &= ~comp
        return out

    def components(self) -> list[tuple[int, ...]]:
        return [tuple(iter_bits(mask)) for mask in self.component_masks()]

    def is_independent(self) -> bool:
        return all(row == 0 for row in self._rows)

    def is_forest(self) -> bool:
        """True iff the graph is acyclic, by iterative DFS."""
        visited = 0
        for s in range(self.n):
            if visited >> s & 1:
                continue
            visited |= 1 << s
            stack = [(s, -1)]
            while stack:
                v, parent = stack.pop()
                skipped_parent = False
                for u in iter_bits(self._rows[v]):
                    if u == parent and not skipped_parent:
                        skipped_parent = True
                        continue
                    if visited >> u & 1:
                        return False
                    visited |= 1 << u
                    stack.append((u, v))
        return True

    # -- graph6 --------------------------------------------------------

    def to_graph6(self) -> str:
        chunks = [_encode_order(self.n)]
        bits = 0
        nbits = 0
        for j in range(1, self.n):
            col = self._rows[j]
            for i in range(j):
                bits = bits << 1 | (col >> i & 1)
                nbits += 1
                if nbits == 6:
                    chunks.append(chr(bits + 63))
                    bits = nbits = 0
        if nbits:
            chunks.append(chr((bits << (6 - nbits)) + 63))
        return "".join(chunks)

    @classmethod
    def from_graph6(cls, text: str) -> Graph:
        data = _strip_header(text, ">>graph6<<")
        if data.startswith(":"):
            raise ValueError("sparse6 input: use from_sparse6")
        vals = _six_bit_values(data)
        n, vals = _decode_order(vals)
        need = (n * (n - 1) // 2 + 5) // 6
        if len(vals) != need:
            raise ValueError(f"graph6 body has {len(vals)} groups, expected {need}")
        rows = [0] * n
        pos = 0
        for j in range(1, n):
            for i in range(j):
                if vals[pos // 6] >> (5 - pos % 6) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                pos += 1
        return cls._unsafe(n, tuple(rows))

    # -- sparse6 -------------------------------------------------------

    def to_sparse6(self) -> str:
        n = self.n
        k = max(1, (n - 1).bit_length())
        bits: list[int] = []

        def put(value: int, width: int) -> None:
            for shift in range(width - 1, -1, -1):
                bits.append(value >> shift & 1)

        cur = 0
        for v, u in sorted((max(e), min(e)) for e in self.edges()):
            if v == cur:
                put(0, 1)
                put(u, k)
            elif v == cur + 1:
                cur = v
                put(1, 1)
                put(u, k)
            else:
                cur = v
                put(1, 1)
                put(v, k)
                put(0, 1)
                put(u, k)
        # pad with 1s; guard against the padding spelling a phantom edge at n-1
        pad = -len(bits) % 6
        if k < 6 and n == (1 << k) and pad >= k and cur < n - 1:
            bits.append(0)
            pad = -len(bits) % 6
        bits.extend([1] * pad)
        chunks = [":", _encode_order(n)]
        for i in range(0, len(bits), 6):
            val = 0
            for b in bits[i : i + 6]:
                val = val << 1 | b
            chunks.append(chr(val + 63))
        return "".join(chunks)

    @classmethod
    def from_sparse6(cls, text: str) -> Graph:
        data = _strip_header(text, ">>sparse6<<")
        if not data.startswith(":"):
            raise ValueError("sparse6 string must start with ':'")
        vals = _six_bit_values(data[1:])
        n, vals = _decode_order(vals)
        k = max(1, (n - 1).bit_length())
        bits = []
        for val in vals:
            for shift in range(5, -1, -1):
                bits.append(val >> shift & 1)
        rows = [0] * n
        cur = 0
        pos = 0
        while pos + k < len(bits):
            b = bits[pos]
            x = 0
            for bit in bits[pos + 1 : pos + 1 + k]:
                x = x << 1 | bit
            pos += 1 + k
            if b:
                cur += 1
            if x > cur:
                cur = x
            elif cur < n:
                if x != cur:
                    rows[x] |= 1 << cur
                    rows[cur] |= 1 << x
        return cls._unsafe(n, tuple(rows))

    # -- plain text ----------------------------------------------------

    def to_edge_list_text(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list_text(cls, text: str) -> Graph:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty edge list text")
        try:
            n = int(lines[0])
        except ValueError:
            raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from None
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"malformed edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls.from_edge_list(n, edges)


def _strip_header(text: str, header: str) -> str:
    text = text.strip()
    if text.startswith(header):
        text = text[len(header) :]
    return text


def _six_bit_values(data: str) -> list[int]:
    vals = []
    for ch in data:
        code = ord(ch)
        if not 63 <= code <= 126:
            raise ValueError(f"invalid graph6 character {ch!r}")
        vals.append(code - 63)
    return vals


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("vertex count too large for graph6")


def _decode_order(vals: list[int]) -> tuple[int, list[int]]:
    if not vals:
        raise ValueError("empty graph6 data")
    if vals[0] != 63:
        return vals[0], vals[1:]
    if len(vals) >= 4 and vals[1] != 63:
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        return n, vals[4:]
    if len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        return n, vals[8:]
    raise ValueError("truncated graph6 vertex count")
