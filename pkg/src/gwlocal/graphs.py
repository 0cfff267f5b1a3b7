"""Decorated trees indexing torus-fixed loci of genus-zero stable map spaces.

A fixed locus of M-bar_{0,m}(X, d) is indexed by a tree whose vertices carry
fixed-point labels of X, whose edges carry covering degrees, and whose marked
points sit on vertices.  This module enumerates those trees up to decorated
isomorphism, computes canonical byte encodings and automorphism orders, and
persists enumerations to checksummed cache files.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
import os
import tempfile
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from .targets import (TARGET_GR, TARGET_P, TARGET_PP, GrPoint, PPPoint,
                      edge_moving_data, fixed_points, is_diagonal)

ENUM_ALGO_VERSION = 1


class InvalidDegree(ValueError):
    """Raised for negative degree components."""


class CacheCorruption(RuntimeError):
    """An enumeration cache file failed its checksum or framing."""


@dataclass(frozen=True)
class FixedGraph:
    """A decorated tree: one torus-fixed locus of the moduli space.

    labels[v] is the fixed point at vertex v; edges hold (u, v, d_e) with
    u < v; markings[k] is the vertex carrying marked point k.
    """

    target: str
    n: int
    labels: tuple
    edges: Tuple[Tuple[int, int, int], ...]
    markings: Tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.markings)

    def valence(self, v: int) -> int:
        return sum(1 for (a, b, _) in self.edges if v in (a, b))

    def marks_at(self, v: int) -> int:
        return sum(1 for x in self.markings if x == v)

    def adjacency(self) -> Dict[int, List[Tuple[int, int]]]:
        """vertex -> list of (neighbor, edge degree)."""
        adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(len(self.labels))}
        for (a, b, d) in self.edges:
            adj[a].append((b, d))
            adj[b].append((a, d))
        return adj

    def bidegree(self) -> Tuple[int, int]:
        if self.target != TARGET_PP:
            raise ValueError("bidegree is defined for the product target only")
        d1 = d2 = 0
        for (a, b, d) in self.edges:
            f, _, _ = edge_moving_data(TARGET_PP, self.labels[a], self.labels[b])
            if f == 1:
                d1 += d
            else:
                d2 += d
        return d1, d2

    def total_degree(self) -> int:
        return sum(d for (_, _, d) in self.edges)

    def diagonal_vertices(self) -> Tuple[int, ...]:
        if self.target != TARGET_PP:
            return ()
        return tuple(v for v, lab in enumerate(self.labels) if is_diagonal(lab))

    def touches_diagonal(self) -> bool:
        return bool(self.diagonal_vertices())


class GraphWithSymmetry(NamedTuple):
    graph: FixedGraph
    aut_order: int
    divisor: int  # a_Gamma = |Aut| * prod of edge degrees


def _product_of_degrees(g: FixedGraph) -> int:
    out = 1
    for (_, _, d) in g.edges:
        out *= d
    return out


def with_symmetry(g: FixedGraph) -> GraphWithSymmetry:
    aut = automorphism_order(g)
    return GraphWithSymmetry(g, aut, aut * _product_of_degrees(g))


# ---------------------------------------------------------------------------
# validity
# ---------------------------------------------------------------------------

def validate_graph(g: FixedGraph) -> None:
    nv = g.num_vertices
    if len(g.edges) != nv - 1:
        raise ValueError(f"not a tree: {nv} vertices, {len(g.edges)} edges")
    seen = {0}
    frontier = [0]
    adj = g.adjacency()
    while frontier:
        v = frontier.pop()
        for (u, _) in adj[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    if len(seen) != nv:
        raise ValueError("graph is not connected")
    for (a, b, d) in g.edges:
        if d < 1:
            raise InvalidDegree(f"edge degree {d} < 1")
        # raises if the two labels are not joined by an invariant curve
        edge_moving_data(g.target, g.labels[a], g.labels[b])
    for v in g.markings:
        if not (0 <= v < nv):
            raise ValueError(f"marking on missing vertex {v}")


# ---------------------------------------------------------------------------
# canonical byte encoding
# ---------------------------------------------------------------------------

def _label_code(label) -> list:
    if isinstance(label, int):
        return [label]
    return [label[0], label[1]]


def _root_code(g: FixedGraph, root: int, adj) -> list:
    marks: Dict[int, list] = {}
    for k, v in enumerate(g.markings):
        marks.setdefault(v, []).append(k)

    def rec(v: int, parent: int) -> list:
        kids = sorted([d, rec(u, v)] for (u, d) in adj[v] if u != parent)
        return [_label_code(g.labels[v]), marks.get(v, []), kids]

    return rec(root, -1)


def canonical_form(g: FixedGraph) -> bytes:
    """Canonical bytes: equal exactly for isomorphic decorated trees.

    AHU-style rooted encoding, minimized over all choices of root, then
    serialized as compact JSON.  The encoding is lossless; see
    graph_from_canonical.
    """
    adj = g.adjacency()
    best = None
    for root in range(g.num_vertices):
        code = json.dumps([g.target, g.n, _root_code(g, root, adj)],
                          separators=(",", ":"))
        if best is None or code < best:
            best = code
    return best.encode()


def graph_from_canonical(data: bytes) -> FixedGraph:
    target, n, root_code = json.loads(data.decode())
    labels: List = []
    edges: List[Tuple[int, int, int]] = []
    mark_pairs: List[Tuple[int, int]] = []

    def build(code, parent: int) -> None:
        label_code, marks, kids = code
        v = len(labels)
        if target == TARGET_P:
            labels.append(label_code[0])
        elif target == TARGET_PP:
            labels.append(PPPoint(*label_code))
        else:
            labels.append(GrPoint(*label_code))
        for k in marks:
            mark_pairs.append((k, v))
        for d, kid in kids:
            u = len(labels)
            build(kid, v)
            edges.append((min(v, u), max(v, u), d))

    build(root_code, -1)
    markings = tuple(v for _, v in sorted(mark_pairs))
    return FixedGraph(target, n, tuple(labels), tuple(sorted(edges)), markings)


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

def automorphism_order(g: FixedGraph) -> int:
    """Order of the group of label-, degree- and marking-preserving
    automorphisms of the tree."""
    nv = g.num_vertices
    marked = set(g.markings)
    groups: Dict[object, List[int]] = {}
    for v in range(nv):
        if v in marked:
            continue  # markings are distinguishable, so marked vertices are pinned
        groups.setdefault(g.labels[v], []).append(v)
    edge_set = set(g.edges)
    marks_by_vertex: Dict[int, tuple] = {}
    for k, v in enumerate(g.markings):
        marks_by_vertex.setdefault(v, ())
        marks_by_vertex[v] += (k,)

    count = 0
    perm = list(range(nv))
    group_items = list(groups.values())

    def check() -> bool:
        for (a, b, d) in g.edges:
            x, y = perm[a], perm[b]
            if (min(x, y), max(x, y), d) not in edge_set:
                return False
        return True

    def rec(gi: int) -> None:
        nonlocal count
        if gi == len(group_items):
            if check():
                count += 1
            return
        verts = group_items[gi]
        for assignment in itertools.permutations(verts):
            for v, img in zip(verts, assignment):
                perm[v] = img
            rec(gi + 1)
        for v in verts:
            perm[v] = v

    rec(0)
    return count


def flip_vertices(g: FixedGraph, subset: Iterable[int]) -> FixedGraph:
    """Swap the two coordinates of the labels at the given vertices.

    Product target only; the graph surgery behind the Weyl group action.
    """
    if g.target != TARGET_PP:
        raise ValueError("label flips act on the product target only")
    subset = set(subset)
    labels = tuple(PPPoint(lab.j, lab.i) if v in subset else lab
                   for v, lab in enumerate(g.labels))
    return replace(g, labels=labels)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _labeled_trees(nv: int) -> List[Tuple[Tuple[int, int], ...]]:
    """All labeled trees on {0..nv-1}, as sorted edge tuples (Pruefer decode)."""
    if nv == 1:
        return [()]
    if nv == 2:
        return [((0, 1),)]
    trees = []
    for seq in itertools.product(range(nv), repeat=nv - 2):
        degree = [1] * nv
        for x in seq:
            degree[x] += 1
        seq_list = list(seq)
        edges = []
        ptr = [v for v in range(nv) if degree[v] == 1]
        heapq.heapify(ptr)
        for x in seq_list:
            leaf = heapq.heappop(ptr)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(ptr, x)
        u, v = heapq.heappop(ptr), heapq.heappop(ptr)
        edges.append((min(u, v), max(u, v)))
        trees.append(tuple(sorted(edges)))
    return trees


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _edge_decorations(target: str, ne: int, degree) -> Iterable[Tuple[Tuple[int, int], ...]]:
    """Per-edge (moving_factor, d_e) tuples matching the requested degree."""
    if target == TARGET_PP:
        d1, d2 = degree
        for subset_bits in range(1 << ne):
            f1 = [i for i in range(ne) if subset_bits >> i & 1]
            f2 = [i for i in range(ne) if not subset_bits >> i & 1]
            if (d1 == 0) != (len(f1) == 0) or (d2 == 0) != (len(f2) == 0):
                continue
            for c1 in _compositions(d1, len(f1)):
                for c2 in _compositions(d2, len(f2)):
                    decor = [None] * ne
                    for idx, e in enumerate(f1):
                        decor[e] = (1, c1[idx])
                    for idx, e in enumerate(f2):
                        decor[e] = (2, c2[idx])
                    yield tuple(decor)
    else:
        for comp in _compositions(degree, ne):
            yield tuple((0, d) for d in comp)


def _compatible_labels(target: str, n: int, parent_label, factor: int) -> list:
    if target == TARGET_P:
        return [k for k in range(n) if k != parent_label]
    if target == TARGET_PP:
        if factor == 1:
            return [PPPoint(a, parent_label.j) for a in range(n) if a != parent_label.i]
        return [PPPoint(parent_label.i, b) for b in range(n) if b != parent_label.j]
    i, j = parent_label
    out = []
    for k in range(n):
        if k in (i, j):
            continue
        out.append(GrPoint(min(i, k), max(i, k)))
        out.append(GrPoint(min(j, k), max(j, k)))
    return out


def _labelings(target: str, n: int, tree: Sequence[Tuple[int, int]],
               decor) -> Iterable[tuple]:
    """All vertex labelings compatible with the tree's decorated edges."""
    nv = len(tree) + 1
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(nv)}
    for idx, (a, b) in enumerate(tree):
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    order = []
    parent_edge = {0: None}
    stack = [0]
    seen = {0}
    while stack:
        v = stack.pop()
        order.append(v)
        for (u, idx) in adj[v]:
            if u not in seen:
                seen.add(u)
                parent_edge[u] = (v, idx)
                stack.append(u)

    labels: List = [None] * nv

    def rec(pos: int):
        if pos == len(order):
            yield tuple(labels)
            return
        v = order[pos]
        if parent_edge[v] is None:
            choices = fixed_points(target, n)
        else:
            p, eidx = parent_edge[v]
            choices = _compatible_labels(target, n, labels[p], decor[eidx][0])
        for lab in choices:
            labels[v] = lab
            yield from rec(pos + 1)
        labels[v] = None

    yield from rec(0)


def enumerate_graphs(target: str, n: int, degree, m: int) -> List[GraphWithSymmetry]:
    """One representative per isomorphism class, sorted by canonical form.

    degree is an int for "p"/"gr" and a pair (d1, d2) for "pp".  Total degree
    zero is legal when m >= 3 and yields the single-vertex graphs.
    """
    if target == TARGET_PP:
        d1, d2 = degree
        if d1 < 0 or d2 < 0:
            raise InvalidDegree(f"negative degree component in {degree}")
        total = d1 + d2
    else:
        if degree < 0:
            raise InvalidDegree(f"negative degree {degree}")
        total = degree
    found: Dict[bytes, FixedGraph] = {}
    if total == 0:
        if m >= 3:
            for p in fixed_points(target, n):
                for marks in itertools.product(range(1), repeat=m):
                    g = FixedGraph(target, n, (p,), (), tuple(marks))
                    found[canonical_form(g)] = g
        return [with_symmetry(found[c]) for c in sorted(found)]

    for ne in range(1, total + 1):
        nv = ne + 1
        for tree in _labeled_trees(nv):
            for decor in _edge_decorations(target, ne, degree):
                edges_decorated = tuple(
                    (a, b, decor[idx][1]) for idx, (a, b) in enumerate(tree))
                for labels in _labelings(target, n, tree, decor):
                    base = FixedGraph(target, n, labels, edges_decorated, ())
                    for marks in itertools.product(range(nv), repeat=m):
                        g = replace(base, markings=marks)
                        c = canonical_form(g)
                        if c not in found:
                            found[c] = g
    return [with_symmetry(found[c]) for c in sorted(found)]


# ---------------------------------------------------------------------------
# cache persistence
# ---------------------------------------------------------------------------

_MAGIC = b"GWENUM1\n"


def cache_key(target: str, n: int, degree, m: int) -> str:
    blob = json.dumps([target, n, list(degree) if isinstance(degree, tuple) else degree,
                       m, ENUM_ALGO_VERSION])
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def _cache_payload(items: Sequence[GraphWithSymmetry]) -> bytes:
    chunks = []
    for gws in items:
        canon = canonical_form(gws.graph)
        chunks.append(len(canon).to_bytes(4, "big"))
        chunks.append(canon)
        chunks.append(gws.aut_order.to_bytes(4, "big"))
    return b"".join(chunks)


def save_enumeration(path: str, items: Sequence[GraphWithSymmetry]) -> None:
    payload = _cache_payload(items)
    digest = hashlib.sha256(payload).hexdigest().encode()
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
    with os.fdopen(fd, "wb") as fh:
        fh.write(_MAGIC + digest + b"\n" + payload)
    os.replace(tmp, path)


def load_enumeration(path: str) -> List[GraphWithSymmetry]:
    with open(path, "rb") as fh:
        blob = fh.read()
    if not blob.startswith(_MAGIC):
        raise CacheCorruption(f"bad magic in {path}")
    rest = blob[len(_MAGIC):]
    nl = rest.index(b"\n")
    digest, payload = rest[:nl], rest[nl + 1:]
    if hashlib.sha256(payload).hexdigest().encode() != digest:
        raise CacheCorruption(f"checksum mismatch in {path}")
    items = []
    pos = 0
    try:
        while pos < len(payload):
            ln = int.from_bytes(payload[pos:pos + 4], "big")
            pos += 4
            canon = payload[pos:pos + ln]
            pos += ln
            aut = int.from_bytes(payload[pos:pos + 4], "big")
            pos += 4
            g = graph_from_canonical(canon)
            items.append(GraphWithSymmetry(g, aut, aut * _product_of_degrees(g)))
    except (ValueError, KeyError, IndexError) as exc:
        raise CacheCorruption(f"undecodable cache {path}: {exc}") from exc
    return items


def enumerate_graphs_cached(target: str, n: int, degree, m: int,
                            cache_dir: str | None):
    """Enumerate with optional persistence.  Returns (items, cache_hit)."""
    if cache_dir is None:
        return enumerate_graphs(target, n, degree, m), False
    path = os.path.join(cache_dir, cache_key(target, n, degree, m) + ".bin")
    if os.path.exists(path):
        return load_enumeration(path), True
    items = enumerate_graphs(target, n, degree, m)
    save_enumeration(path, items)
    return items, False
