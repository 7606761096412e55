"""Pure-Python versions of the hot loops.

Join cells are encoded as integers: element ``v`` carries a label in
``0..r`` (0 for the remainder block B, ``i`` for block A_i) and the code is
``sum(label(v) * (r + 1) ** (v - 1))``.  Membership tables are uint8 arrays
of shape ``(r, 2**m)`` indexed by face bitmask.
"""

from __future__ import annotations

import numpy as np

INF = 1 << 30


def _powers(m: int, r: int) -> list[int]:
    return [(r + 1) ** v for v in range(m)]


def _labels(code: int, m: int, base: int) -> list[int]:
    lab = [0] * m
    for v in range(m):
        code, lab[v] = divmod(code, base)
    return lab


def enumerate_cells(m: int, r: int, table, symmetric: bool, perms) -> np.ndarray:
    tab = [bytes(np.ascontiguousarray(table[i], dtype=np.uint8)) for i in range(r)]
    if symmetric:
        union = bytearray(len(tab[0]))
        for t in tab:
            for f, x in enumerate(t):
                if x:
                    union[f] = 1
        prune = [bytes(union)] * r
    else:
        prune = tab
    perm_rows = [tuple(int(x) for x in row) for row in np.asarray(perms)]
    pw = _powers(m, r)
    blocks = [0] * r
    out: list[int] = []

    def admitted() -> bool:
        if not symmetric:
            return True
        for row in perm_rows:
            if all(tab[row[i]][blocks[i]] for i in range(r)):
                return True
        return False

    def rec(v: int, code: int, nonempty: bool) -> None:
        if v == m:
            if nonempty and admitted():
                out.append(code)
            return
        rec(v + 1, code, nonempty)
        bit = 1 << v
        for i in range(r):
            grown = blocks[i] | bit
            if prune[i][grown]:
                blocks[i] = grown
                rec(v + 1, code + (i + 1) * pw[v], True)
                blocks[i] = grown ^ bit

    rec(0, 0, False)
    return np.array(sorted(out), dtype=np.int64)


def _prefix_pivot(lab: list[int], m: int, k: int) -> int:
    """Step-k pivot (1-based element) or INF; uses blocks 1..k of ``lab``."""
    a = 0
    for i in range(1, k + 1):
        nxt = INF
        for v in range(a, m):
            if lab[v] == 0 or lab[v] == i:
                nxt = v + 1
                break
        if nxt == INF:
            return INF
        a = nxt
    return a


def build_matching(codes, m: int, r: int):
    codes_list = [int(c) for c in codes]
    n = len(codes_list)
    index = {c: i for i, c in enumerate(codes_list)}
    base = r + 1
    pw = _powers(m, r)
    partner = [-1] * n
    step = [0] * n
    pivot = [0] * n
    is_lower = [0] * n
    for k in range(1, r + 1):
        for idx in range(n):
            if partner[idx] != -1:
                continue
            lab = _labels(codes_list[idx], m, base)
            a = _prefix_pivot(lab, m, k)
            if a == INF or lab[a - 1] != 0:
                continue
            up = codes_list[idx] + k * pw[a - 1]
            j = index.get(up, -1)
            if j < 0 or partner[j] != -1:
                continue
            if _prefix_pivot(_labels(up, m, base), m, k) != a:
                raise RuntimeError(f"step-{k} pivot mismatch between cells {codes_list[idx]} and {up}")
            partner[idx] = j
            partner[j] = idx
            step[idx] = step[j] = k
            pivot[idx] = pivot[j] = a
            is_lower[idx] = 1
    return (
        np.array(partner, dtype=np.int64),
        np.array(step, dtype=np.int8),
        np.array(pivot, dtype=np.int8),
        np.array(is_lower, dtype=np.uint8),
    )


def find_cycle(codes, partner, is_lower, m: int, r: int) -> list[int]:
    """A closed gradient path as a list of lower-cell indices, or []."""
    codes_list = [int(c) for c in codes]
    index = {c: i for i, c in enumerate(codes_list)}
    partner = [int(p) for p in partner]
    is_lower = [int(x) for x in is_lower]
    base = r + 1
    pw = _powers(m, r)

    def successors(a: int) -> list[int]:
        beta = codes_list[partner[a]]
        lab = _labels(beta, m, base)
        out = []
        for v in range(m):
            if lab[v]:
                j = index.get(beta - lab[v] * pw[v], -1)
                if j >= 0 and j != a and is_lower[j]:
                    out.append(j)
        return out

    color = [0] * len(codes_list)
    for root in range(len(codes_list)):
        if not is_lower[root] or color[root]:
            continue
        color[root] = 1
        stack = [(root, iter(successors(root)))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color[nxt] == 1:
                path = [s[0] for s in stack]
                return path[path.index(nxt):]
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(successors(nxt))))
    return []


def bruteforce_witness(m: int, r: int, table):
    """Labels (0-based block per element) with no block a face, or None."""
    tab = [bytes(np.ascontiguousarray(table[i], dtype=np.uint8)) for i in range(r)]
    blocks = [0] * r
    labels = [0] * m

    def rec(v: int) -> bool:
        inside = sum(1 for i in range(r) if tab[i][blocks[i]])
        if inside > m - v:
            return False
        if v == m:
            return inside == 0
        bit = 1 << v
        for i in range(r):
            blocks[i] |= bit
            labels[v] = i
            if rec(v + 1):
                return True
            blocks[i] ^= bit
        return False

    return np.array(labels, dtype=np.int64) if rec(0) else None
