"""Decorated stable graphs and the graph-sum expression for correlators.

A decorated graph has vertices ``(genus, branch, dilaton leaves)``, edges
joining two half-edges ``(vertex, k)``, and ordinary leaves ``(vertex, k)``
numbered ``1..n``.  Its weight is the product of

* vertex factors ``hbar^(g_v-1) y_v^(2-2g_v-n_v) c(g_v; k's at v)``, where
  ``y_v`` is ``y_{-1}`` (irregular) or ``y_1`` (regular), ``n_v`` counts
  half-edges and ordinary leaves, and ``c`` is the Bessel or Airy
  coefficient in the V-basis normalization, evaluated on every label at
  the vertex including the dilaton leaves;
* edge factors ``hbar (2k-1)!! (2l-1)!! B^{alpha,beta}_{2k,2l}``;
* dilaton leaf factors ``-(2j-1)!! y_{2j-1}/y_v`` with ``j >= 2`` at regular
  and ``j >= 1`` at irregular vertices;

divided by the order of the automorphism group fixing the ordinary leaves.
Summing weights over graphs whose leaf ``i`` carries ``(k_i, alpha_i)`` gives
the coefficient of ``prod_i (2k_i+1)!! xi^{alpha_i}_{k_i}(p_i)`` in
``omega_{g,n}``, where ``xi^alpha_k`` has pure principal part
``ds/s^(2k+2)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator

from .algebra.scalar import Scalar, double_factorial
from .curve import SpectralCurve
from .recursion import Correlator, Index, Key, sorted_key, xi_to_v
from .tables import local_engine

HalfEdge = tuple[int, int]  # (vertex, k)


@dataclass(frozen=True)
class Vertex:
    genus: int
    branch: int
    dilatons: tuple[int, ...] = ()


@dataclass(frozen=True)
class DecoratedGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[HalfEdge, HalfEdge], ...]
    leaves: tuple[HalfEdge, ...]  # leaf i (0-based) -> (vertex, k)
    automorphisms: int = 1

    @property
    def n(self) -> int:
        return len(self.leaves)

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + 1 + sum(v.genus for v in self.vertices)

    def valence(self, v: int) -> int:
        """Half-edges plus ordinary leaves at ``v`` (dilaton leaves excluded)."""
        count = sum(1 for leaf in self.leaves if leaf[0] == v)
        for a, b in self.edges:
            count += (a[0] == v) + (b[0] == v)
        return count

    def labels_at(self, v: int) -> list[int]:
        """k-labels of the half-edges and ordinary leaves at ``v``."""
        out = [k for w, k in self.leaves if w == v]
        for a, b in self.edges:
            for w, k in (a, b):
                if w == v:
                    out.append(k)
        return out

    def leaf_key(self) -> tuple[Index, ...]:
        return tuple((k, self.vertices[v].branch) for v, k in self.leaves)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {0}
        stack = [0]
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a[0]].add(b[0])
            adj[b[0]].add(a[0])
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"genus": v.genus, "branch": v.branch, "dilatons": list(v.dilatons)} for v in self.vertices
            ],
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "leaves": [list(leaf) for leaf in self.leaves],
            "automorphisms": self.automorphisms,
        }


# ---------------------------------------------------------------------------
# canonical forms and automorphisms

def _encode(graph: DecoratedGraph, perm: tuple[int, ...]) -> tuple:
    """Encoding after renaming vertex ``v`` to ``perm[v]``."""
    verts = [None] * len(graph.vertices)
    for v, vert in enumerate(graph.vertices):
        verts[perm[v]] = (vert.genus, vert.branch, vert.dilatons)
    edges = sorted(
        tuple(sorted(((perm[a[0]], a[1]), (perm[b[0]], b[1])))) for a, b in graph.edges
    )
    leaves = tuple((perm[v], k) for v, k in graph.leaves)
    return (tuple(verts), tuple(edges), leaves)


def canonical_form(graph: DecoratedGraph) -> tuple:
    return min(_encode(graph, p) for p in itertools.permutations(range(len(graph.vertices))))


def automorphism_order(graph: DecoratedGraph) -> int:
    """Half-edge bijections preserving all decorations and fixing the ordinary leaves."""
    ident = _encode(graph, tuple(range(len(graph.vertices))))
    vertex_perms = sum(
        1 for p in itertools.permutations(range(len(graph.vertices))) if _encode(graph, p) == ident
    )
    internal = 1
    edge_types = Counter(tuple(sorted(e)) for e in graph.edges)
    for (a, b), m in edge_types.items():
        internal *= factorial(m)
        if a == b:  # a loop whose two half-edges carry the same label can be flipped
            internal *= 2**m
    for vert in graph.vertices:
        for m in Counter(vert.dilatons).values():
            internal *= factorial(m)
    return vertex_perms * internal


# ---------------------------------------------------------------------------
# enumeration

def _vertex_budget(kind: str, genus: int, valence: int) -> int:
    """Sum of slot labels plus dilaton excess that a vertex must carry.

    Regular: ``sum k + sum (j - 1) = 3g - 3 + n``; irregular: ``sum k + sum j = g - 1``.
    """
    return 3 * genus - 3 + valence if kind == "regular" else genus - 1


def _dilaton_multisets(kind: str, budget: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Dilaton label multisets with their budget cost."""
    lowest = 2 if kind == "regular" else 1
    cost = (lambda j: j - 1) if kind == "regular" else (lambda j: j)

    def rec(min_j: int, left: int) -> Iterator[tuple[int, ...]]:
        yield ()
        j = min_j
        while cost(j) <= left:
            for tail in rec(j, left - cost(j)):
                yield (j,) + tail
            j += 1

    for combo in rec(lowest, budget):
        yield combo, sum(cost(j) for j in combo)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _underlying(g: int, n: int, branches: list[int]) -> Iterator[tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...], tuple[int, ...]]]:
    """Undecorated connected stable graphs with vertex labels (genus, branch).

    Yields ``(vertices, edge_pairs, leaf_vertices)`` over all vertex numberings;
    duplicates are removed later by canonical form.
    """
    for nv in range(1, 2 * g - 2 + n + 1):
        for genera in itertools.product(range(g + 1), repeat=nv):
            ne = g - sum(genera) + nv - 1
            if ne < nv - 1 or ne < 0:
                continue
            pair_types = [(i, j) for i in range(nv) for j in range(i, nv)]
            for edge_multiset in itertools.combinations_with_replacement(pair_types, ne):
                for leaf_vertices in itertools.product(range(nv), repeat=n):
                    val = [0] * nv
                    for i, j in edge_multiset:
                        val[i] += 1
                        val[j] += 1
                    for v in leaf_vertices:
                        val[v] += 1
                    if any(2 * genera[v] - 2 + val[v] <= 0 for v in range(nv)):
                        continue
                    for labels in itertools.product(branches, repeat=nv):
                        yield tuple(zip(genera, labels)), edge_multiset, leaf_vertices


def enumerate_graphs(curve: SpectralCurve, g: int, n: int, leaf_branches: tuple[int, ...] | None = None) -> list[DecoratedGraph]:
    """Isomorphism classes of decorated graphs with admissible labels.

    ``leaf_branches`` optionally fixes the branch label of each leaf's vertex.
    """
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is unstable")
    kinds = {b.label: b.kind for b in curve.branches}
    seen: dict[tuple, DecoratedGraph] = {}
    for verts, edge_pairs, leaf_vertices in _underlying(g, n, curve.labels):
        if leaf_branches is not None and any(verts[v][1] != leaf_branches[i] for i, v in enumerate(leaf_vertices)):
            continue
        nv = len(verts)
        graph0 = DecoratedGraph(
            tuple(Vertex(ge, br) for ge, br in verts),
            tuple(((i, 0), (j, 0)) for i, j in edge_pairs),
            tuple((v, 0) for v in leaf_vertices),
        )
        if not graph0.is_connected():
            continue
        # slots at each vertex: ('e', edge index, side) or ('l', leaf index)
        slots: list[list[tuple]] = [[] for _ in range(nv)]
        for ei, (i, j) in enumerate(edge_pairs):
            slots[i].append(("e", ei, 0))
            slots[j].append(("e", ei, 1))
        for li, v in enumerate(leaf_vertices):
            slots[v].append(("l", li))
        per_vertex = []
        for v in range(nv):
            kind = kinds[verts[v][1]]
            budget = _vertex_budget(kind, verts[v][0], len(slots[v]))
            options = []
            if budget >= 0:
                for dil, cost in _dilaton_multisets(kind, budget):
                    for ks in _compositions(budget - cost, len(slots[v])):
                        options.append((dil, ks))
            per_vertex.append(options)
        for choice in itertools.product(*per_vertex):
            edge_k = [[0, 0] for _ in edge_pairs]
            leaf_k = [0] * n
            for v, (dil, ks) in enumerate(choice):
                for slot, k in zip(slots[v], ks):
                    if slot[0] == "e":
                        edge_k[slot[1]][slot[2]] = k
                    else:
                        leaf_k[slot[1]] = k
            graph = DecoratedGraph(
                tuple(Vertex(verts[v][0], verts[v][1], tuple(sorted(choice[v][0]))) for v in range(nv)),
                tuple(((i, edge_k[ei][0]), (j, edge_k[ei][1])) for ei, (i, j) in enumerate(edge_pairs)),
                tuple((leaf_vertices[li], leaf_k[li]) for li in range(n)),
            )
            cf = canonical_form(graph)
            if cf not in seen:
                seen[cf] = graph
    out = []
    for cf in sorted(seen, key=repr):
        graph = seen[cf]
        out.append(
            DecoratedGraph(graph.vertices, graph.edges, graph.leaves, automorphism_order(graph))
        )
    return out


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class GraphWeight:
    value: object
    hbar: int
    factors: dict[str, object] = field(default_factory=dict)


def _family_v_coefficient(kind: str, genus: int, labels: list[int]) -> Fraction:
    """Airy/Bessel correlator coefficient in the basis ``V_k = (2k+1)!! dz/z^(2k+2)``."""
    family = "airy" if kind == "regular" else "bessel"
    key = tuple(sorted((k, 1) for k in labels))
    value = local_engine(family).xi_correlator(genus, len(labels)).get(key)
    if value is None:
        return Fraction(0)
    norm = 1
    for k in labels:
        norm *= double_factorial(2 * k + 1)
    return value.to_fraction() / norm


def graph_weight(graph: DecoratedGraph, curve: SpectralCurve) -> GraphWeight:
    """Product of vertex, edge and dilaton factors divided by ``|Aut|``."""
    one = curve.ring.coerce(1)
    value = one
    hbar = 0
    factors: dict[str, object] = {}
    for v, vert in enumerate(graph.vertices):
        kind = curve.branch(vert.branch).kind
        ymin = curve.y_min(vert.branch)
        nv = graph.valence(v)
        labels = graph.labels_at(v) + list(vert.dilatons)
        coeff = _family_v_coefficient(kind, vert.genus, labels)
        f = ymin ** (2 - 2 * vert.genus - nv) * coeff
        for j in vert.dilatons:
            f = f * (-(curve.y_coefficient(vert.branch, 2 * j - 1) / ymin) * double_factorial(2 * j - 1))
        factors[f"vertex{v}"] = f
        value = value * f
        hbar += vert.genus - 1
    for e, ((v, k), (w, l)) in enumerate(graph.edges):
        a, b = graph.vertices[v].branch, graph.vertices[w].branch
        size = 2 * max(k, l) + 1
        bval = curve.bergman(a, b, size)[(2 * k, 2 * l)]
        f = bval * (double_factorial(2 * k - 1) * double_factorial(2 * l - 1))
        factors[f"edge{e}"] = f
        value = value * f
        hbar += 1
    value = value * Fraction(1, graph.automorphisms)
    return GraphWeight(value, hbar, factors)


def graph_sum(curve: SpectralCurve, g: int, n: int, basis: str = "V") -> Correlator:
    """Correlator coefficients assembled from graph weights.

    ``basis`` is ``"V"`` (auxiliary differentials) or ``"xi"`` (pure principal parts).
    """
    kmax = max(3 * g - 3 + n, 0)
    sums: dict[Key, object] = {}
    for graph in enumerate_graphs(curve, g, n):
        key = graph.leaf_key()
        if key != sorted_key(key):
            continue  # the sorted representative determines the symmetric table
        w = graph_weight(graph, curve)
        if w.hbar != g - 1:
            raise AssertionError("graph weight has the wrong hbar degree")
        prev = sums.get(key)
        sums[key] = w.value if prev is None else prev + w.value
    xi: dict[Key, object] = {}
    for key, value in sums.items():
        norm = 1
        for k, _ in key:
            norm *= double_factorial(2 * k + 1)
        if not value.is_zero():
            xi[key] = value * norm
    if basis == "xi":
        return Correlator(g, n, xi, "xi")
    return Correlator(g, n, xi_to_v(curve, xi, kmax), "V")
