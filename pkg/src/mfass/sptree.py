"""Two-terminal series-parallel recognition and SP-trees.

Recognition repeatedly applies the two local reductions until nothing
changes: a bundle of parallel arcs with the same tail and head becomes one
``Parallel`` arc, and an interior node with exactly one incoming and one
outgoing arc is bypassed by a ``Series`` arc. The network is series-parallel
iff this ends in a single source-to-sink arc. The lowest eligible arc/node is
reduced first so the tree is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from mfass.errors import NotSeriesParallel
from mfass.model import Arc, FlowNetwork


@dataclass(eq=False)
class Leaf:
    arc: int


@dataclass(eq=False)
class Series:
    left: "SPNode"
    right: "SPNode"


@dataclass(eq=False)
class Parallel:
    left: "SPNode"
    right: "SPNode"


SPNode = Union[Leaf, Series, Parallel]


def decompose(network: FlowNetwork) -> SPNode:
    """Return the SP-tree of ``network`` or raise :class:`NotSeriesParallel`.

    Interior nodes touched by no arc are ignored; they carry no flow.
    """
    if not network.arcs:
        raise NotSeriesParallel([], "network has no arcs")
    s, t = network.source, network.sink
    # live arcs: key -> (tail, head, subtree); keys of merged arcs are fresh
    live: dict[int, tuple[int, int, SPNode]] = {a.id: (a.tail, a.head, Leaf(a.id)) for a in network.arcs}
    next_key = network.m
    changed = True
    while changed and len(live) > 1:
        changed = False
        by_ends: dict[tuple[int, int], list[int]] = {}
        for key, (u, v, _) in live.items():
            by_ends.setdefault((u, v), []).append(key)
        bundles = [sorted(keys) for keys in by_ends.values() if len(keys) > 1]
        if bundles:
            first, *rest = min(bundles)
            u, v, tree = live.pop(first)
            for key in rest:
                tree = Parallel(tree, live.pop(key)[2])
            live[next_key] = (u, v, tree)
            next_key += 1
            changed = True
            continue
        ins: dict[int, list[int]] = {}
        outs: dict[int, list[int]] = {}
        for key, (u, v, _) in live.items():
            outs.setdefault(u, []).append(key)
            ins.setdefault(v, []).append(key)
        for node in sorted(set(ins) | set(outs)):
            if node in (s, t):
                continue
            if len(ins.get(node, ())) == 1 and len(outs.get(node, ())) == 1:
                (k_in,), (k_out,) = ins[node], outs[node]
                if k_in == k_out:
                    continue
                u, _, left = live.pop(k_in)
                _, w, right = live.pop(k_out)
                live[next_key] = (u, w, Series(left, right))
                next_key += 1
                changed = True
                break
    if len(live) == 1:
        (u, v, tree), = live.values()
        if (u, v) == (s, t):
            return tree
    raise NotSeriesParallel(sorted((u, v) for u, v, _ in live.values()))


def is_series_parallel(network: FlowNetwork) -> bool:
    try:
        decompose(network)
    except NotSeriesParallel:
        return False
    return True


def leaves(tree: SPNode) -> Iterator[int]:
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            yield node.arc
        else:
            stack.append(node.right)
            stack.append(node.left)


def postorder(tree: SPNode) -> list[SPNode]:
    """Children before parents."""
    out: list[SPNode] = []
    stack: list[tuple[SPNode, bool]] = [(tree, False)]
    while stack:
        node, done = stack.pop()
        if isinstance(node, Leaf) or done:
            out.append(node)
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return out


def sp_capacity(tree: SPNode, capacities: Mapping[int, int] | list[int], shut: Iterable[int] = ()) -> int:
    """Capacity of the subnetwork ``tree`` with ``shut`` arcs removed (series=min, parallel=sum)."""
    shut = set(shut)
    value: dict[int, int] = {}
    for node in postorder(tree):
        if isinstance(node, Leaf):
            value[id(node)] = 0 if node.arc in shut else capacities[node.arc]
        elif isinstance(node, Series):
            value[id(node)] = min(value[id(node.left)], value[id(node.right)])
        else:
            value[id(node)] = value[id(node.left)] + value[id(node.right)]
    return value[id(tree)]


def dump(tree: SPNode) -> str:
    """Nested text form, e.g. ``S(0,P(1,2))``."""
    if isinstance(tree, Leaf):
        return str(tree.arc)
    tag = "S" if isinstance(tree, Series) else "P"
    return f"{tag}({dump(tree.left)},{dump(tree.right)})"


def recompose(tree: SPNode, capacities: Mapping[int, int] | list[int]) -> FlowNetwork:
    """Build a network from an SP-tree; source is node 0 and sink node 1.

    Arc ids are the leaf arc ids, so ``recompose(decompose(net))`` matches
    ``net`` up to renaming of the nodes.
    """
    arcs: dict[int, tuple[int, int]] = {}
    node_count = 2
    stack: list[tuple[SPNode, int, int]] = [(tree, 0, 1)]
    while stack:
        node, u, v = stack.pop()
        if isinstance(node, Leaf):
            arcs[node.arc] = (u, v)
        elif isinstance(node, Parallel):
            stack.append((node.right, u, v))
            stack.append((node.left, u, v))
        else:
            mid = node_count
            node_count += 1
            stack.append((node.right, mid, v))
            stack.append((node.left, u, mid))
    return FlowNetwork(node_count, 0, 1, tuple(Arc(i, *arcs[i], capacities[i]) for i in sorted(arcs)))
