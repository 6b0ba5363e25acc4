"""Finite acyclic quivers and path enumeration."""

from __future__ import annotations


class QuiverError(ValueError):
    pass


class Quiver:
    """Finite acyclic directed graph; cyclic input is rejected at construction.

    Vertices and arrows are identified by strings; arrow iteration and path
    enumeration are always in sorted-id order so downstream matrices are
    reproducible.
    """

    __slots__ = ("vertices", "arrows", "_out", "_in", "_topo")

    def __init__(self, vertices, arrows):
        vertices = tuple(str(v) for v in vertices)
        arrows = tuple((str(a), str(s), str(t)) for a, s, t in arrows)
        if len(set(vertices)) != len(vertices):
            raise QuiverError("duplicate vertex ids")
        if len(set(a for a, _, _ in arrows)) != len(arrows):
            raise QuiverError("duplicate arrow ids")
        vset = set(vertices)
        for a, s, t in arrows:
            if s not in vset or t not in vset:
                raise QuiverError(f"arrow {a!r} has endpoint outside the vertex set")
        self.vertices = vertices
        self.arrows = arrows
        self._out = {v: tuple(sorted((a, s, t) for a, s, t in arrows if s == v)) for v in vertices}
        self._in = {v: tuple(sorted((a, s, t) for a, s, t in arrows if t == v)) for v in vertices}
        self._topo = self._topological_sort()

    def _topological_sort(self):
        indeg = {v: 0 for v in self.vertices}
        for _, _, t in self.arrows:
            indeg[t] += 1
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for _, _, t in self._out[v]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
            ready.sort()
        if len(order) != len(self.vertices):
            raise QuiverError("quiver has a directed cycle")
        return tuple(order)

    def out_arrows(self, v):
        return self._out[v]

    def in_arrows(self, v):
        return self._in[v]

    def source(self, a):
        for aid, s, _ in self.arrows:
            if aid == a:
                return s
        raise QuiverError(f"no arrow {a!r}")

    def target(self, a):
        for aid, _, t in self.arrows:
            if aid == a:
                return t
        raise QuiverError(f"no arrow {a!r}")

    def topological_order(self):
        return self._topo

    def reverse_topological_order(self):
        return tuple(reversed(self._topo))

    def paths(self, v, w):
        """All paths v -> w as tuples of arrow ids, lexicographically sorted.

        The trivial path () is included when v == w.
        """
        if v not in self._out or w not in self._out:
            raise QuiverError(f"unknown vertex in path query ({v!r}, {w!r})")
        found = []

        def walk(cur, prefix):
            if cur == w:
                found.append(tuple(prefix))
            for a, _, t in self._out[cur]:
                prefix.append(a)
                walk(t, prefix)
                prefix.pop()

        walk(v, [])
        found.sort()
        return tuple(found)

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {list(self.arrows)})"


def a2_quiver():
    """Two vertices, one arrow 1 -> 2 (the morphism-category shape)."""
    return Quiver(("1", "2"), (("a", "1", "2"),))


def line_quiver(k):
    """The linear quiver 1 -> 2 -> ... -> k."""
    vertices = tuple(str(i) for i in range(1, k + 1))
    arrows = tuple((f"a{i}", str(i), str(i + 1)) for i in range(1, k))
    return Quiver(vertices, arrows)


def fork_quiver():
    """Three vertices with arrows 1 -> 2, 1 -> 3."""
    return Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "1", "3")))
