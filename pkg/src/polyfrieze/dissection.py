"""Dissections of a convex n-gon by pairwise noncrossing diagonals.

Vertices are labelled ``1..n`` counterclockwise.  Everything is purely
combinatorial: two diagonals with four distinct endpoints cross iff exactly
one endpoint of the second lies strictly between the endpoints of the first.

Pieces are derived from the diagonals, stored as ascending vertex tuples
(which is also their counterclockwise order) and numbered ``1..m`` by sorting
those tuples.  Piece ``l`` carries the variable ``x_l``.
"""

from __future__ import annotations

import json
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

Diagonal = Tuple[int, int]

MAX_ENUMERATION_N = 12


class DissectionError(ValueError):
    """Invalid polygon dissection input."""


def _norm(a: int, b: int) -> Diagonal:
    return (a, b) if a < b else (b, a)


def crosses(d1: Diagonal, d2: Diagonal) -> bool:
    """True iff the chords ``d1`` and ``d2`` cross in their interiors."""
    a, b = _norm(*d1)
    c, d = _norm(*d2)
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def is_boundary_edge(n: int, a: int, b: int) -> bool:
    return (b - a) % n in (1, n - 1)


def enumeration_guard() -> int:
    """Upper bound on n for exhaustive enumeration (env ``FRIEZE_GUARD_N``)."""
    value = os.environ.get("FRIEZE_GUARD_N")
    return int(value) if value else MAX_ENUMERATION_N


@dataclass(frozen=True)
class Dissection:
    """A dissected convex n-gon.

    Construct with :func:`build`; the fields are derived and validated there.
    """

    n: int
    diagonals: Tuple[Diagonal, ...]
    pieces: Tuple[Tuple[int, ...], ...] = field(compare=False)

    @property
    def m(self) -> int:
        return len(self.pieces)

    @property
    def type(self) -> Tuple[int, ...]:
        """Piece degrees in piece-id order."""
        return tuple(len(p) for p in self.pieces)

    def degree(self, piece: int) -> int:
        return len(self.pieces[piece - 1])

    def piece(self, piece: int) -> Tuple[int, ...]:
        return self.pieces[piece - 1]

    def vertex(self, v: int) -> int:
        """Reduce any integer label mod n to ``1..n``."""
        return (v - 1) % self.n + 1

    @cached_property
    def _incidence(self) -> Dict[int, Tuple[int, ...]]:
        inc: Dict[int, List[int]] = {v: [] for v in range(1, self.n + 1)}
        for pid, verts in enumerate(self.pieces, 1):
            for v in verts:
                inc[v].append(pid)
        out = {}
        for v, pids in inc.items():
            # counterclockwise fan: start at the piece holding edge (v, v+1)
            def offset(pid, v=v):
                return min((u - v) % self.n for u in self.pieces[pid - 1] if u != v)

            out[v] = tuple(sorted(pids, key=offset))
        return out

    def pieces_at_vertex(self, v: int) -> Tuple[int, ...]:
        """Ids of pieces incident to ``v``, in counterclockwise fan order."""
        if not 1 <= v <= self.n:
            raise DissectionError(f"vertex {v} out of range 1..{self.n}")
        return self._incidence[v]

    @cached_property
    def diagonal_pieces(self) -> Dict[Diagonal, Tuple[int, int]]:
        """Map each diagonal to the two pieces it separates (dual-tree edges)."""
        owners: Dict[Diagonal, List[int]] = {dg: [] for dg in self.diagonals}
        for pid, verts in enumerate(self.pieces, 1):
            for a, b in piece_edges(verts):
                e = _norm(a, b)
                if e in owners:
                    owners[e].append(pid)
        return {dg: tuple(p) for dg, p in owners.items()}

    def piece_of_edge(self, i: int) -> int:
        """Id of the unique piece containing boundary edge ``e_i = (i, i+1)``."""
        a, b = self.vertex(i), self.vertex(i + 1)
        for pid, verts in enumerate(self.pieces, 1):
            if a in verts and b in verts:
                return pid
        raise AssertionError("boundary edge not covered")  # unreachable for valid input

    def dual_tree(self) -> Dict[int, List[Tuple[int, Diagonal]]]:
        """Adjacency lists ``piece -> [(neighbour piece, shared diagonal)]``."""
        adj: Dict[int, List[Tuple[int, Diagonal]]] = {p: [] for p in range(1, self.m + 1)}
        for dg, (a, b) in self.diagonal_pieces.items():
            adj[a].append((b, dg))
            adj[b].append((a, dg))
        return adj

    def boundary_pieces(self) -> List[int]:
        """Pieces with exactly one diagonal among their edges."""
        if self.m < 2:
            raise DissectionError("the trivial dissection has no boundary pieces")
        return [p for p, nbrs in self.dual_tree().items() if len(nbrs) == 1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "diagonals": [list(d) for d in self.diagonals],
            "pieces": [list(p) for p in self.pieces],
            "type": list(self.type),
        }

    def __str__(self) -> str:
        diags = ", ".join(f"({a},{b})" for a, b in self.diagonals)
        return f"Dissection(n={self.n}, diagonals=[{diags}])"


def piece_edges(verts: Tuple[int, ...]) -> Iterator[Tuple[int, int]]:
    k = len(verts)
    for t in range(k):
        yield verts[t], verts[(t + 1) % k]


def _split_pieces(n: int, diagonals: Iterable[Diagonal]) -> Tuple[Tuple[int, ...], ...]:
    pieces = [list(range(1, n + 1))]
    for a, b in diagonals:
        for idx, verts in enumerate(pieces):
            if a in verts and b in verts:
                ia, ib = sorted((verts.index(a), verts.index(b)))
                pieces[idx] = verts[ia:ib + 1]
                pieces.append(verts[ib:] + verts[:ia + 1])
                break
    return tuple(sorted(tuple(sorted(p)) for p in pieces))


def build(n: int, diagonals: Iterable[Iterable[int]] = ()) -> Dissection:
    """Validate ``(n, diagonals)`` and derive the pieces."""
    if n < 3:
        raise DissectionError(f"need n >= 3, got {n}")
    seen = set()
    diags = []
    for pair in diagonals:
        pair = tuple(pair)
        if len(pair) != 2:
            raise DissectionError(f"diagonal must be a vertex pair, got {pair}")
        a, b = (int(v) for v in pair)
        for v in (a, b):
            if not 1 <= v <= n:
                raise DissectionError(f"vertex {v} out of range 1..{n}")
        if a == b:
            raise DissectionError(f"degenerate diagonal ({a},{b})")
        if is_boundary_edge(n, a, b):
            raise DissectionError(f"({a},{b}) is a boundary edge, not a diagonal")
        d = _norm(a, b)
        if d in seen:
            raise DissectionError(f"duplicate diagonal {d}")
        for other in diags:
            if crosses(d, other):
                raise DissectionError(f"diagonals {other} and {d} cross")
        seen.add(d)
        diags.append(d)
    diags.sort()
    return Dissection(n, tuple(diags), _split_pieces(n, diags))


def from_json(data) -> Dissection:
    """Build from ``{"n": ..., "diagonals": [[a, b], ...]}`` (dict or JSON text).

    Extra keys ``pieces``/``type`` are checked against the derived values.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        d = build(int(data["n"]), data.get("diagonals", []))
    except (KeyError, TypeError) as exc:
        raise DissectionError(f"malformed dissection JSON: {exc}") from exc
    if "pieces" in data and sorted(tuple(sorted(p)) for p in data["pieces"]) != list(d.pieces):
        raise DissectionError("supplied pieces disagree with the diagonals")
    if "type" in data and sorted(data["type"]) != sorted(d.type):
        raise DissectionError("supplied type disagrees with the diagonals")
    return d


def all_diagonals(n: int) -> List[Diagonal]:
    return [(a, b) for a in range(1, n + 1) for b in range(a + 2, n + 1)
            if not is_boundary_edge(n, a, b)]


def enumerate_dissections(n: int) -> Iterator[Dissection]:
    """Every noncrossing set of diagonals of the n-gon, each exactly once.

    Yields ``s(n)`` dissections (little Schroeder numbers 1, 3, 11, 45, ...).
    """
    guard = enumeration_guard()
    if not 3 <= n <= guard:
        raise DissectionError(f"enumeration needs 3 <= n <= {guard}, got {n}")
    cands = all_diagonals(n)

    def rec(start: int, chosen: List[Diagonal]) -> Iterator[Dissection]:
        yield Dissection(n, tuple(chosen), _split_pieces(n, chosen))
        for t in range(start, len(cands)):
            d = cands[t]
            if all(not crosses(d, c) for c in chosen):
                chosen.append(d)
                yield from rec(t + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def random_dissection(n: int, seed: int, stop_probability: float = 0.15) -> Dissection:
    """Deterministic pseudo-random dissection (not uniformly distributed).

    Recursively splits a sub-polygon along a random diagonal, stopping early
    with probability ``stop_probability`` at each sub-polygon of size >= 4.
    """
    if n < 3:
        raise DissectionError(f"need n >= 3, got {n}")
    rng = random.Random(seed)
    diags: List[Diagonal] = []
    stack = [list(range(1, n + 1))]
    while stack:
        verts = stack.pop()
        k = len(verts)
        if k < 4 or rng.random() < stop_probability:
            continue
        s = rng.randrange(k)
        t = (s + rng.randrange(2, k - 1)) % k
        a, b = sorted((s, t))
        diags.append(_norm(verts[a], verts[b]))
        stack.append(verts[a:b + 1])
        stack.append(verts[b:] + verts[:a + 1])
    return build(n, diags)


def type_multiset(d: Dissection) -> Tuple[int, ...]:
    return tuple(sorted(d.type))


def degree_counts(d: Dissection) -> Counter:
    return Counter(d.type)
