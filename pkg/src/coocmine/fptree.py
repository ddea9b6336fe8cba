"""Prefix-tree (pattern-growth) miner.

Transactions are inserted with their items ordered by descending global count
(ties by ascending class id), then patterns are grown by recursively mining
each item's conditional pattern base. Counts are exact transaction counts, so
the result matches level-wise mining item for item.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class _Node:
    __slots__ = ("item", "count", "parent", "children")

    def __init__(self, item: int | None, parent: "_Node | None"):
        self.item = item
        self.count = 0
        self.parent = parent
        self.children: dict[int, _Node] = {}


def _build(
    weighted: Sequence[tuple[Sequence[int], int]], min_count: int
) -> tuple[_Node, dict[int, list[_Node]]] | tuple[None, None]:
    item_count: dict[int, int] = {}
    for items, w in weighted:
        for i in items:
            item_count[i] = item_count.get(i, 0) + w
    keep = {i for i, c in item_count.items() if c >= min_count}
    if not keep:
        return None, None
    rank = {i: (-item_count[i], i) for i in keep}

    root = _Node(None, None)
    header: dict[int, list[_Node]] = {}
    for items, w in weighted:
        path = sorted((i for i in items if i in keep), key=rank.__getitem__)
        node = root
        for i in path:
            child = node.children.get(i)
            if child is None:
                child = _Node(i, node)
                node.children[i] = child
                header.setdefault(i, []).append(child)
            child.count += w
            node = child
    return root, header


def _mine(
    weighted: Sequence[tuple[Sequence[int], int]],
    min_count: int,
    max_size: int | None,
    suffix: tuple[int, ...],
    out: dict[tuple[int, ...], int],
) -> None:
    _, header = _build(weighted, min_count)
    if header is None:
        return
    for item in sorted(header):
        nodes = header[item]
        count = sum(n.count for n in nodes)
        pattern = tuple(sorted(suffix + (item,)))
        out[pattern] = count
        if max_size is not None and len(pattern) >= max_size:
            continue
        base: list[tuple[tuple[int, ...], int]] = []
        for n in nodes:
            path: list[int] = []
            p = n.parent
            while p is not None and p.item is not None:
                path.append(p.item)
                p = p.parent
            if path:
                base.append((tuple(path), n.count))
        if base:
            _mine(base, min_count, max_size, pattern, out)


def mine_tree(
    transactions: Iterable[frozenset[int]], min_count: int, max_size: int | None
) -> dict[tuple[int, ...], int]:
    """All itemsets with count >= min_count, mapped to their exact counts."""
    weighted = [(tuple(t), 1) for t in transactions]
    out: dict[tuple[int, ...], int] = {}
    _mine(weighted, min_count, max_size, (), out)
    return out
