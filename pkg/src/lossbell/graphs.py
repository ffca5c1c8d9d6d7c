"""Simple undirected graphs with the neighborhood/root/induced-subgraph
vocabulary used by the analysis.

Vertices are integers 0..n-1.  Graphs are immutable after construction and
hashable, so they can key caches inside sweeps.  Two text formats are
understood by :meth:`Graph.parse`: a JSON document ``{"n": 5, "edges":
[[0, 1], ...]}`` and a plain edge list ("i j" per line) with an ``n=<N>``
header line.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections.abc import Iterable

from .errors import GraphFormatError

VertexSet = frozenset  # vertex sets are frozensets of ints throughout


class Graph:
    __slots__ = ("_n", "_edges", "_adj", "_n_max", "_roots", "_fingerprint")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        normalized = set()
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            normalized.add((min(i, j), max(i, j)))
        self._n = n
        self._edges = tuple(sorted(normalized))
        adj = [set() for _ in range(n)]
        for i, j in self._edges:
            adj[i].add(j)
            adj[j].add(i)
        self._adj = tuple(frozenset(s) for s in adj)
        self._n_max = max(len(s) for s in self._adj)
        self._roots = frozenset(
            i for i in range(n) if len(self._adj[i]) == self._n_max
        )
        digest = hashlib.sha256(f"{n}|{self._edges}".encode()).hexdigest()
        self._fingerprint = digest[:12]

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def n_max(self) -> int:
        """Maximum vertex degree."""
        return self._n_max

    @property
    def roots(self) -> frozenset[int]:
        """Vertices attaining the maximum degree."""
        return self._roots

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(self._n))

    def degree(self, i: int) -> int:
        return len(self.neighborhood(i))

    def neighborhood(self, i: int) -> frozenset[int]:
        if not 0 <= i < self._n:
            raise IndexError(f"vertex {i} out of range for n={self._n}")
        return self._adj[i]

    def closed_neighborhood(self, i: int) -> frozenset[int]:
        return self.neighborhood(i) | {i}

    def leaves(self) -> tuple[int, ...]:
        """Degree-1 vertices, in index order."""
        return tuple(i for i in range(self._n) if len(self._adj[i]) == 1)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for j in self._adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self._n

    def induced_subgraph(
        self, keep: Iterable[int]
    ) -> tuple[Graph, dict[int, int]]:
        """Subgraph on ``keep`` plus the old->new vertex relabeling map."""
        keep = frozenset(keep)
        if not keep:
            raise ValueError("cannot induce a subgraph on an empty vertex set")
        if not keep <= self.vertices:
            raise ValueError("keep set contains out-of-range vertices")
        mapping = {old: new for new, old in enumerate(sorted(keep))}
        edges = [
            (mapping[i], mapping[j])
            for i, j in self._edges
            if i in keep and j in keep
        ]
        return Graph(len(keep), edges), mapping

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self._edges)})"

    # -- text formats ----------------------------------------------------------

    def to_dict(self) -> dict[str, object]:
        return {"n": self._n, "edges": [list(e) for e in self._edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def parse(cls, text: str) -> Graph:
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls._parse_json(stripped)
        return cls._parse_edge_list(text)

    @classmethod
    def _parse_json(cls, text: str) -> Graph:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(
                f"invalid JSON graph document: {exc}"
            ) from exc
        if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
            raise GraphFormatError('JSON graph needs fields "n" and "edges"')
        try:
            return cls(int(doc["n"]), [(int(i), int(j)) for i, j in doc["edges"]])
        except (TypeError, ValueError) as exc:
            raise GraphFormatError(f"bad graph document: {exc}") from exc

    @classmethod
    def _parse_edge_list(cls, text: str) -> Graph:
        n = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                if not line.startswith("n="):
                    raise GraphFormatError(
                        f'line {lineno}: expected header "n=<N>", got {line!r}'
                    )
                try:
                    n = int(line[2:])
                except ValueError as exc:
                    raise GraphFormatError(
                        f"line {lineno}: bad vertex count {line[2:]!r}"
                    ) from exc
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(
                    f'line {lineno}: expected "i j", got {line!r}'
                )
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise GraphFormatError(
                    f"line {lineno}: non-integer vertex in {line!r}"
                ) from exc
        if n is None:
            raise GraphFormatError('missing "n=<N>" header line')
        try:
            return cls(n, edges)
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from exc


def random_connected_graph(
    n: int, rng: random.Random, extra_edge_prob: float = 0.25
) -> Graph:
    """Uniform-ish random connected graph: random tree plus extra edges."""
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    present = set(edges)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in present and rng.random() < extra_edge_prob:
                edges.append((i, j))
                present.add((i, j))
    return Graph(n, edges)
