"""Reference implementations of the hot kernels.

``_kernels.pyx`` mirrors these signatures exactly; ``fdsring.kernels``
picks whichever is importable.
"""

from __future__ import annotations

from typing import Sequence


def classify(succ: Sequence[int]) -> tuple[list[int], list[int], list[list[int]]]:
    """Depth per state, component index per state, and each cycle in arrow order."""
    n = len(succ)
    depth = [-1] * n
    comp = [-1] * n
    pos = [-1] * n  # position on the current walk, -1 when not on it
    cycles: list[list[int]] = []
    for s in range(n):
        if depth[s] >= 0:
            continue
        path = []
        x = s
        while depth[x] < 0 and pos[x] < 0:
            pos[x] = len(path)
            path.append(x)
            x = succ[x]
        start = pos[x] if depth[x] < 0 else len(path)
        for y in path:
            pos[y] = -1
        if start < len(path):
            # the walk closed a new cycle at x
            cyc = path[start:]
            cid = len(cycles)
            cycles.append(cyc)
            for y in cyc:
                depth[y] = 0
                comp[y] = cid
            del path[start:]
        d = depth[x]
        c = comp[x]
        for y in reversed(path):
            d += 1
            depth[y] = d
            comp[y] = c
    return depth, comp, cycles


def product_succ(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Successor table of the pair map, state (x, y) at index x * len(b) + y."""
    m = len(b)
    out = []
    for x in range(len(a)):
        base = a[x] * m
        out.extend([base + by for by in b])
    return out


def height_and_preds(succ: Sequence[int], depth: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Height of the tree-state in-tree above every state, and tree predecessors."""
    n = len(succ)
    preds: list[list[int]] = [[] for _ in range(n)]
    for s in range(n):
        if depth[s] > 0:
            preds[succ[s]].append(s)
    order = sorted(range(n), key=depth.__getitem__, reverse=True)
    height = [0] * n
    for s in order:
        if depth[s] > 0:
            h = height[s] + 1
            t = succ[s]
            if h > height[t]:
                height[t] = h
    return height, preds
