"""Cotrees: the canonical tree decomposition of cographs.

A cotree node is a Leaf (one vertex), a Union (disjoint union of children),
or a Join (union plus all edges across children). Trees are kept normalized:
no Union child of a Union, no Join child of a Join, and every internal node
has at least two children. Leaf ids of a realizable tree are a bijection
with 0..n-1.

The expression DSL builds cotrees from text:

    expr := K(int) | I(int) | U(expr, ...) | J(expr, ...) | int*expr | C(expr)

K(n) is a complete graph, I(n) an edgeless one, int*expr a repeated disjoint
union, and C(expr) the complement (swaps Union and Join throughout).
"""
from __future__ import annotations

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .graph import Graph, iter_bits

__all__ = [
    "Leaf", "Union", "Join", "CotreeNode", "NotACographError",
    "union_of", "join_of", "complement_tree", "relabel", "leaf_count", "leaves",
    "height", "max_join_children", "canonical_code",
    "parse_expr", "to_expr", "realize", "recognize", "find_p4",
    "enumerate_cographs", "count_cographs", "random_cotree", "random_balanced_cotree",
]


@dataclass(frozen=True, eq=False)
class Leaf:
    vertex: int


@dataclass(frozen=True, eq=False)
class Union:
    children: tuple[CotreeNode, ...]


@dataclass(frozen=True, eq=False)
class Join:
    children: tuple[CotreeNode, ...]


CotreeNode = Leaf | Union | Join


class NotACographError(ValueError):
    """Raised when a graph contains an induced P4; carries one as witness."""

    def __init__(self, witness: tuple[int, int, int, int]):
        super().__init__(f"not a cograph: induced P4 on vertices {witness}")
        self.witness = witness


def union_of(children: Sequence[CotreeNode]) -> CotreeNode:
    """Union node over children, flattening nested Unions; singletons collapse."""
    flat: list[CotreeNode] = []
    for ch in children:
        if isinstance(ch, Union):
            flat.extend(ch.children)
        else:
            flat.append(ch)
    if not flat:
        raise ValueError("union of zero cotrees")
    if len(flat) == 1:
        return flat[0]
    return Union(tuple(flat))


def join_of(children: Sequence[CotreeNode]) -> CotreeNode:
    """Join node over children, flattening nested Joins; singletons collapse."""
    flat: list[CotreeNode] = []
    for ch in children:
        if isinstance(ch, Join):
            flat.extend(ch.children)
        else:
            flat.append(ch)
    if not flat:
        raise ValueError("join of zero cotrees")
    if len(flat) == 1:
        return flat[0]
    return Join(tuple(flat))


def complement_tree(tree: CotreeNode) -> CotreeNode:
    """Complement a cotree by swapping Union and Join nodes; leaves keep ids."""
    if isinstance(tree, Leaf):
        return tree
    children = tuple(complement_tree(c) for c in tree.children)
    return Union(children) if isinstance(tree, Join) else Join(children)


def relabel(tree: CotreeNode) -> CotreeNode:
    """Copy of tree with leaf ids reassigned 0..n-1 in left-to-right order."""
    counter = [0]

    def walk(node: CotreeNode) -> CotreeNode:
        if isinstance(node, Leaf):
            v = counter[0]
            counter[0] += 1
            return Leaf(v)
        kids = tuple(walk(c) for c in node.children)
        return type(node)(kids)

    return walk(tree)


def leaf_count(tree: CotreeNode) -> int:
    if isinstance(tree, Leaf):
        return 1
    return sum(leaf_count(c) for c in tree.children)


def leaves(tree: CotreeNode) -> Iterator[int]:
    """Leaf vertex ids in left-to-right order."""
    if isinstance(tree, Leaf):
        yield tree.vertex
        return
    for c in tree.children:
        yield from leaves(c)


def height(tree: CotreeNode) -> int:
    """Height in edges: a single Leaf has height 0."""
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(height(c) for c in tree.children)


def max_join_children(tree: CotreeNode) -> int:
    """Largest arity among Join nodes, 0 when no Join exists."""
    if isinstance(tree, Leaf):
        return 0
    best = len(tree.children) if isinstance(tree, Join) else 0
    return max(best, max(max_join_children(c) for c in tree.children))


def canonical_code(tree: CotreeNode) -> bytes:
    """Canonical label-independent code; equal iff realized graphs are isomorphic."""
    if isinstance(tree, Leaf):
        return b"L"
    tag = b"U" if isinstance(tree, Union) else b"J"
    return tag + b"(" + b"".join(sorted(canonical_code(c) for c in tree.children)) + b")"


# -- expression DSL ----------------------------------------------------


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise ValueError(f"expression error at position {self.pos}: {message}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected an integer")
        return int(self.text[start : self.pos])

    def expr(self) -> CotreeNode:
        ch = self.peek()
        if ch.isdigit():
            count = self.integer()
            self.expect("*")
            if count < 1:
                self.fail("repetition count must be at least 1")
            base = self.expr()
            return union_of([_clone(base) for _ in range(count)])
        if ch in "KI":
            self.pos += 1
            self.expect("(")
            size = self.integer()
            self.expect(")")
            if size < 1:
                self.fail(f"{ch}(k) requires k >= 1")
            kids = [Leaf(0) for _ in range(size)]
            if size == 1:
                return kids[0]
            return Join(tuple(kids)) if ch == "K" else Union(tuple(kids))
        if ch in "UJ":
            self.pos += 1
            self.expect("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.pos += 1
                args.append(self.expr())
            self.expect(")")
            return union_of(args) if ch == "U" else join_of(args)
        if ch == "C":
            self.pos += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return complement_tree(inner)
        self.fail("expected K, I, U, J, C, or a repetition count")


def _clone(tree: CotreeNode) -> CotreeNode:
    if isinstance(tree, Leaf):
        return Leaf(tree.vertex)
    return type(tree)(tuple(_clone(c) for c in tree.children))


def parse_expr(text: str) -> CotreeNode:
    """Parse a cotree expression; leaf ids are assigned left to right."""
    parser = _ExprParser(text)
    tree = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.fail("trailing input")
    return relabel(tree)


def to_expr(tree: CotreeNode) -> str:
    """Serialize to the expression DSL; parse_expr round-trips the canonical code."""
    if isinstance(tree, Leaf):
        return "K(1)"
    if all(isinstance(c, Leaf) for c in tree.children):
        letter = "K" if isinstance(tree, Join) else "I"
        return f"{letter}({len(tree.children)})"
    if isinstance(tree, Union):
        groups: list[tuple[bytes, int, CotreeNode]] = []
        for c in tree.children:
            code = canonical_code(c)
            if groups and groups[-1][0] == code:
                groups[-1] = (code, groups[-1][1] + 1, groups[-1][2])
            else:
                groups.append((code, 1, c))
        parts = [p if k == 1 else f"{k}*{p}" for code, k, c in groups for p in [to_expr(c)]]
        if len(groups) == 1 and groups[0][1] > 1:
            return parts[0]
        return "U(" + ",".join(parts) + ")"
    return "J(" + ",".join(to_expr(c) for c in tree.children) + ")"


# -- realize / recognize ----------------------------------------------


def realize(tree: CotreeNode) -> Graph:
    """Build the graph a cotree describes; leaf ids must be a 0..n-1 bijection."""
    ids = list(leaves(tree))
    n = len(ids)
    if sorted(ids) != list(range(n)):
        raise ValueError("leaf ids are not a bijection with 0..n-1")
    rows = [0] * n

    def walk(node: CotreeNode) -> int:
        if isinstance(node, Leaf):
            return 1 << node.vertex
        masks = [walk(c) for c in node.children]
        if isinstance(node, Join):
            total = 0
            for m in masks:
                total |= m
            for m in masks:
                other = total & ~m
                for v in iter_bits(m):
                    rows[v] |= other
        result = 0
        for m in masks:
            result |= m
        return result

    walk(tree)
    return Graph._unsafe(n, tuple(rows))


def find_p4(graph: Graph, within: int | None = None) -> tuple[int, int, int, int] | None:
    """Find an induced path a-b-c-d, or None. Deterministic scan order."""
    scope = (1 << graph.n) - 1 if within is None else within
    for b in iter_bits(scope):
        nb = graph.row(b) & scope
        for c in iter_bits(nb):
            nc = graph.row(c) & scope
            a_cands = nb & ~nc & ~(1 << c)
            d_cands = nc & ~nb & ~(1 << b)
            if not a_cands or not d_cands:
                continue
            for a in iter_bits(a_cands):
                free = d_cands & ~graph.row(a) & ~(1 << a)
                if free:
                    d = next(iter_bits(free))
                    return (a, b, c, d)
    return None


def recognize(graph: Graph) -> CotreeNode | None:
    """Cotree of a cograph with identity leaf labelling, None for the empty graph.

    Raises:
        NotACographError: with an induced P4 witness when graph is not a cograph.
    """
    if graph.n == 0:
        return None

    def rec(mask: int) -> CotreeNode:
        if mask & (mask - 1) == 0:
            return Leaf(mask.bit_length() - 1)
        comps = graph.component_masks(mask)
        if len(comps) > 1:
            return Union(tuple(rec(c) for c in comps))
        cocomps = graph.component_masks(mask, complement=True)
        if len(cocomps) > 1:
            return Join(tuple(rec(c) for c in cocomps))
        witness = find_p4(graph, mask)
        assert witness is not None, "connected co-connected graph must contain a P4"
        raise NotACographError(witness)

    return rec((1 << graph.n) - 1)


# -- enumeration -------------------------------------------------------


def _multisets(total: int, pool: list[tuple[int, CotreeNode]]):
    """Multisets of >= 2 pool entries (given as (size, tree)) with sizes summing
    to total, chosen by non-decreasing pool index."""
    chosen: list[CotreeNode] = []

    def rec(remaining: int, start: int):
        if remaining == 0:
            if len(chosen) >= 2:
                yield tuple(chosen)
            return
        for idx in range(start, len(pool)):
            size, tree = pool[idx]
            if size <= remaining:
                chosen.append(tree)
                yield from rec(remaining - size, idx)
                chosen.pop()

    yield from rec(total, 0)


class _Enumerator:
    """Generates one cotree per cograph isomorphism class, by vertex count."""

    def __init__(self):
        self._connected: dict[int, list[tuple[bytes, CotreeNode]]] = {}
        self._coconnected: dict[int, list[tuple[bytes, CotreeNode]]] = {}

    def connected(self, n: int) -> list[tuple[bytes, CotreeNode]]:
        # root is a Leaf or Join
        if n not in self._connected:
            if n == 1:
                out = [(b"L", Leaf(0))]
            else:
                pool = self._pool(n, self.coconnected)
                out = []
                for kids in _multisets(n, pool):
                    tree = Join(kids)
                    out.append((canonical_code(tree), tree))
                out.sort(key=lambda item: item[0])
            self._connected[n] = out
        return self._connected[n]

    def coconnected(self, n: int) -> list[tuple[bytes, CotreeNode]]:
        # root is a Leaf or Union
        if n not in self._coconnected:
            if n == 1:
                out = [(b"L", Leaf(0))]
            else:
                out = [
                    (canonical_code(t), t)
                    for t in (Union(tuple(complement_tree(c) for c in tree.children))
                              for _, tree in self.connected(n))
                ]
                out.sort(key=lambda item: item[0])
            self._coconnected[n] = out
        return self._coconnected[n]

    def _pool(self, n: int, source) -> list[tuple[int, CotreeNode]]:
        pool = []
        for size in range(1, n):
            pool.extend((size, tree) for _, tree in source(size))
        return pool

    def all_trees(self, n: int) -> Iterator[CotreeNode]:
        for _, tree in self.connected(n):
            yield tree
        if n >= 2:
            for _, tree in self.coconnected(n):
                if not isinstance(tree, Leaf):
                    yield tree


_SHARED_ENUMERATOR = _Enumerator()


def enumerate_cographs(n: int) -> Iterator[CotreeNode]:
    """One normalized cotree per isomorphism class of cographs on n vertices.

    Trees are yielded in a deterministic order with leaf ids relabelled
    0..n-1. Intended for n up to about 12; counts grow roughly threefold
    per vertex.
    """
    if n < 1:
        raise ValueError("enumeration needs n >= 1")
    for tree in _SHARED_ENUMERATOR.all_trees(n):
        yield relabel(tree)


def count_cographs(n: int) -> int:
    return sum(1 for _ in _SHARED_ENUMERATOR.all_trees(n))


# -- random generation -------------------------------------------------


def random_cotree(n: int, rng: random.Random | int) -> CotreeNode:
    """Random normalized cotree on n leaves, labelled 0..n-1.

    Accepts a seeded random.Random or a bare seed for reproducibility.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    if n < 1:
        raise ValueError("random cotree needs n >= 1")

    def build(k: int, parent_is_union: bool | None) -> CotreeNode:
        if k == 1:
            return Leaf(0)
        arity = rng.randint(2, min(k, 5))
        cuts = sorted(rng.sample(range(1, k), arity - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [k])]
        make_union = rng.random() < 0.5 if parent_is_union is None else not parent_is_union
        kids = tuple(build(s, make_union) for s in sizes)
        return Union(kids) if make_union else Join(kids)

    return relabel(build(n, None))


def random_balanced_cotree(n: int, rng: random.Random | int) -> CotreeNode:
    """Random cotree whose splits are near-even, so depth is O(log n)."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    if n < 1:
        raise ValueError("random cotree needs n >= 1")

    def build(k: int, parent_is_union: bool | None) -> CotreeNode:
        if k == 1:
            return Leaf(0)
        arity = 2 if k < 4 else rng.randint(2, 3)
        base, extra = divmod(k, arity)
        sizes = [base + (1 if i < extra else 0) for i in range(arity)]
        make_union = rng.random() < 0.5 if parent_is_union is None else not parent_is_union
        kids = tuple(build(s, make_union) for s in sizes)
        return Union(kids) if make_union else Join(kids)

    return relabel(build(n, None))
