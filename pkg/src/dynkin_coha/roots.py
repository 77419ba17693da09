"""Positive roots of an ADE quiver and their admissible ordering.

Roots are found by exhaustive search over the box [0,6]^n (6 is the largest
simple-root multiplicity occurring in any ADE root), keeping exactly the
nonzero vectors on which the integral quadratic form takes the value 1.  The
search walks the underlying tree and prunes with an exact per-subtree lower
bound of the form, so even E8 finishes instantly.
"""

from __future__ import annotations

import heapq

from .quiver import DimVector, Quiver, euler_form

MAX_COORD = 6


class CyclicConstraints(RuntimeError):
    """Precedence constraints for the root order contain a cycle (cannot
    happen for a valid ADE quiver; indicates corrupted hom/ext tables)."""


class NoUnitCoordinate(ValueError):
    """The root has no coordinate equal to 1, so no distinguished vertex can
    be chosen for it (the longest root of E8)."""


def tits_form(q: Quiver, d) -> int:
    return euler_form(q, d, d)


def positive_roots(q: Quiver) -> tuple[DimVector, ...]:
    """All dimension vectors d with quadratic form value 1, sorted
    lexicographically."""
    n = q.n
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for t, h in q.edges:
        adj[t].append(h)
        adj[h].append(t)

    # Preorder of the tree from vertex 1; each later vertex has exactly one
    # earlier neighbour, its parent.
    parent = {1: 0}
    order = [1]
    stack = [1]
    seen = {1}
    while stack:
        v = stack.pop()
        for w in sorted(adj[v], reverse=True):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
                stack.append(w)
    children = {v: [w for w in order if parent.get(w) == v] for v in order}

    # g[v][x] = minimal possible contribution of the subtree at v to the form,
    # given that v's parent carries the value x.  Contribution of vertex w with
    # value d and parent value x is d^2 - d*x; summing over a subtree gives an
    # exact decomposition of the quadratic form.
    g: dict[int, list[int]] = {}
    for v in reversed(order):
        table = []
        for x in range(MAX_COORD + 1):
            best = min(
                d * d - d * x + sum(g[c][d] for c in children[v])
                for d in range(MAX_COORD + 1)
            )
            table.append(best)
        g[v] = table

    roots: list[DimVector] = []
    values = [0] * n

    def search(pending: list[tuple[int, int]], partial: int, bound: int) -> None:
        if not pending:
            if partial == 1:
                roots.append(tuple(values))
            return
        v, x = pending[-1]
        rest = pending[:-1]
        for d in range(MAX_COORD + 1):
            p2 = partial + d * d - d * x
            b2 = bound - g[v][x] + sum(g[c][d] for c in children[v])
            if p2 + b2 > 1:
                continue
            values[v - 1] = d
            search(rest + [(c, d) for c in children[v]], p2, b2)
        values[v - 1] = 0

    search([(1, 0)], 0, g[1][0])
    roots.sort()
    for d in roots:
        assert tits_form(q, d) == 1
    return tuple(roots)


def admissible_root_order(q: Quiver, roots, hom, ext) -> tuple[DimVector, ...]:
    """Order the roots so that earlier-to-later Hom and later-to-earlier Ext
    both vanish.

    hom and ext are square tables indexed like roots (pairwise dimensions
    between the corresponding indecomposables).  Among all valid orders the
    lexicographically smallest sequence of dimension vectors is returned, so
    the choice is deterministic.
    """
    roots = list(roots)
    nroots = len(roots)
    succ: list[set[int]] = [set() for _ in range(nroots)]
    indeg = [0] * nroots
    for x in range(nroots):
        for y in range(nroots):
            if x == y:
                continue
            # x may precede y only if hom[x][y] == 0 and ext[y][x] == 0;
            # a violation forces y before x.
            if hom[x][y] or ext[y][x]:
                if x not in succ[y]:
                    succ[y].add(x)
                    indeg[x] += 1
    heap = [(roots[i], i) for i in range(nroots) if indeg[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, i = heapq.heappop(heap)
        out.append(roots[i])
        for j in sorted(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (roots[j], j))
    if len(out) != nroots:
        raise CyclicConstraints("hom/ext precedence constraints contain a cycle")
    return tuple(out)


def choose_i(root: DimVector) -> int:
    """Smallest vertex whose coefficient in the root is exactly 1.

    This choice is fixed once per root and shared by the restriction
    subalgebras downstream.
    """
    for i, d in enumerate(root, start=1):
        if d == 1:
            return i
    raise NoUnitCoordinate(f"root {root} has no coordinate equal to 1")
