"""Bidirected graph model.

Vertices are opaque strings mapped to dense integers in insertion order.
Signs are stored as ints, ``0`` for ``+`` and ``1`` for ``-``, so the
opposite sign is ``s ^ 1``.  Edges are stored as four parallel arrays and
addressed by their dense edge id.  Graphs are immutable: every operation
returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError

PLUS = 0
MINUS = 1
SIGN_CHARS = ("+", "-")
_SIGN_OF = {"+": PLUS, "-": MINUS, "−": MINUS}


def sign_of(token: str) -> int:
    """Parse a sign token; accepts ``+``, ``-`` and the unicode minus."""
    try:
        return _SIGN_OF[token]
    except KeyError:
        raise InputError(f"bad sign {token!r}") from None


def sign_char(s: int) -> str:
    return SIGN_CHARS[s]


@dataclass(frozen=True, order=True)
class VertexSide:
    vertex: str
    sign: str

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            object.__setattr__(self, "sign", sign_char(sign_of(self.sign)))

    def opposite(self) -> "VertexSide":
        return VertexSide(self.vertex, "-" if self.sign == "+" else "+")

    def __str__(self) -> str:
        return f"{self.vertex}{self.sign}"


@dataclass(frozen=True)
class BidirectedEdge:
    a: VertexSide
    b: VertexSide
    id: int = -1

    def key(self) -> tuple[VertexSide, VertexSide]:
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BidirectedEdge):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        a, b = self.key()
        return f"{{{a},{b}}}"


@dataclass(frozen=True)
class Cycloid:
    """A closed bidirected path; ``exceptional`` names the non-alternating vertex."""

    edges: tuple[int, ...]
    vertices: tuple[str, ...]
    exceptional: Optional[str] = None


SidePair = tuple[VertexSide, VertexSide]


def side_pair(a: VertexSide, b: VertexSide) -> SidePair:
    """Canonical (sorted) unordered pair of vertex-sides."""
    return (a, b) if a <= b else (b, a)


EdgeSpec = Union[tuple[str, str, str, str], BidirectedEdge]


class BidirectedGraph:
    """Immutable bidirected graph without self-loops and without duplicate edges.

    Up to four edges may join the same vertex pair, one per sign pattern.
    """

    __slots__ = ("names", "index", "eu", "su", "ev", "sv", "_inc", "_deg")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[EdgeSpec] = ()) -> None:
        names: list[str] = []
        index: dict[str, int] = {}
        for name in vertices:
            if name not in index:
                index[name] = len(names)
                names.append(name)
        eu: list[int] = []
        su: list[int] = []
        ev: list[int] = []
        sv: list[int] = []
        seen: set[tuple[int, int, int, int]] = set()
        for item in edges:
            if isinstance(item, BidirectedEdge):
                x, a, y, b = item.a.vertex, item.a.sign, item.b.vertex, item.b.sign
            else:
                x, a, y, b = item
            if x == y:
                raise InputError(f"self-loop at vertex {x!r} is not supported")
            for name in (x, y):
                if name not in index:
                    index[name] = len(names)
                    names.append(name)
            u, v = index[x], index[y]
            s, t = sign_of(a), sign_of(b)
            if (u, s) > (v, t):
                u, s, v, t = v, t, u, s
            key = (u, s, v, t)
            if key in seen:
                continue
            seen.add(key)
            eu.append(u)
            su.append(s)
            ev.append(v)
            sv.append(t)
        self.names = tuple(names)
        self.index = index
        self.eu, self.su, self.ev, self.sv = eu, su, ev, sv
        self._inc: Optional[list[list[int]]] = None
        self._deg: Optional[list[list[int]]] = None

    @classmethod
    def _raw(cls, names: Sequence[str], eu: list[int], su: list[int], ev: list[int],
             sv: list[int]) -> "BidirectedGraph":
        """Build from trusted dense arrays (already canonical and deduplicated)."""
        g = cls.__new__(cls)
        g.names = tuple(names)
        g.index = {name: i for i, name in enumerate(g.names)}
        g.eu, g.su, g.ev, g.sv = eu, su, ev, sv
        g._inc = None
        g._deg = None
        return g

    # basic queries

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.eu)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.names

    def vid(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise InputError(f"unknown vertex {name!r}") from None

    def edge(self, i: int) -> BidirectedEdge:
        return BidirectedEdge(
            VertexSide(self.names[self.eu[i]], SIGN_CHARS[self.su[i]]),
            VertexSide(self.names[self.ev[i]], SIGN_CHARS[self.sv[i]]),
            i,
        )

    def edges(self) -> Iterator[BidirectedEdge]:
        for i in range(self.m):
            yield self.edge(i)

    def edge_tuples(self) -> list[tuple[str, str, str, str]]:
        nm = self.names
        return [(nm[u], SIGN_CHARS[s], nm[v], SIGN_CHARS[t])
                for u, s, v, t in zip(self.eu, self.su, self.ev, self.sv)]

    def incidence(self) -> list[list[int]]:
        """Per-vertex incident edge ids, in edge-id order."""
        if self._inc is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for i, (u, v) in enumerate(zip(self.eu, self.ev)):
                inc[u].append(i)
                inc[v].append(i)
            self._inc = inc
        return self._inc

    def sign_degrees(self) -> list[list[int]]:
        """``deg[s][v]``: number of edge ends at ``v`` carrying sign ``s``."""
        if self._deg is None:
            deg = [[0] * self.n, [0] * self.n]
            for u, s, v, t in zip(self.eu, self.su, self.ev, self.sv):
                deg[s][u] += 1
                deg[t][v] += 1
            self._deg = deg
        return self._deg

    def side_at(self, e: int, v: int) -> int:
        """Sign of edge ``e`` at its endpoint ``v``."""
        return self.su[e] if self.eu[e] == v else self.sv[e]

    def other(self, e: int, v: int) -> int:
        return self.ev[e] if self.eu[e] == v else self.eu[e]

    def tip_sign(self, v: int) -> Optional[int]:
        """Dense-id variant of :func:`is_tip`; isolated vertices count as ``+`` tips."""
        deg = self.sign_degrees()
        if deg[MINUS][v] == 0:
            return PLUS
        if deg[PLUS][v] == 0:
            return MINUS
        return None

    def has_edge(self, u: int, s: int, v: int, t: int) -> bool:
        for e in self.incidence()[u]:
            if self.eu[e] == u and self.su[e] == s and self.ev[e] == v and self.sv[e] == t:
                return True
            if self.ev[e] == u and self.sv[e] == s and self.eu[e] == v and self.su[e] == t:
                return True
        return False

    def edge_set(self) -> frozenset[BidirectedEdge]:
        return frozenset(self.edges())

    def same_as(self, other: "BidirectedGraph") -> bool:
        return set(self.names) == set(other.names) and self.edge_set() == other.edge_set()

    def remove_edges(self, drop: Iterable[int]) -> "BidirectedGraph":
        gone = set(drop)
        keep = [i for i in range(self.m) if i not in gone]
        return BidirectedGraph._raw(self.names, [self.eu[i] for i in keep], [self.su[i] for i in keep],
                                    [self.ev[i] for i in keep], [self.sv[i] for i in keep])

    def __repr__(self) -> str:
        return f"BidirectedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class UndirectedView:
    """Sign-stripped multigraph; edge ``i`` here is edge ``i`` of the source graph."""

    names: tuple[str, ...]
    eu: list[int]
    ev: list[int]

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.eu)


class DirectedGraph:
    """Plain digraph over string vertices; arc ``u -> v`` is the bidirected edge ``{u+, v-}``."""

    __slots__ = ("names", "index", "tails", "heads")

    def __init__(self, vertices: Iterable[str] = (), arcs: Iterable[tuple[str, str]] = ()) -> None:
        names: list[str] = []
        index: dict[str, int] = {}
        for name in vertices:
            if name not in index:
                index[name] = len(names)
                names.append(name)
        tails: list[int] = []
        heads: list[int] = []
        seen: set[tuple[int, int]] = set()
        for x, y in arcs:
            if x == y:
                raise InputError(f"self-loop at vertex {x!r} is not supported")
            for name in (x, y):
                if name not in index:
                    index[name] = len(names)
                    names.append(name)
            key = (index[x], index[y])
            if key in seen:
                continue
            seen.add(key)
            tails.append(key[0])
            heads.append(key[1])
        self.names = tuple(names)
        self.index = index
        self.tails = tails
        self.heads = heads

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.tails)

    def arcs(self) -> list[tuple[str, str]]:
        return [(self.names[u], self.names[v]) for u, v in zip(self.tails, self.heads)]

    def to_bidirected(self) -> BidirectedGraph:
        eu: list[int] = []
        su: list[int] = []
        ev: list[int] = []
        sv: list[int] = []
        for u, v in zip(self.tails, self.heads):
            if u < v:
                eu.append(u)
                su.append(PLUS)
                ev.append(v)
                sv.append(MINUS)
            else:
                eu.append(v)
                su.append(MINUS)
                ev.append(u)
                sv.append(PLUS)
        return BidirectedGraph._raw(self.names, eu, su, ev, sv)

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NotDigraphic:
    """Returned by :func:`as_directed` when some edge has equal signs at both ends."""

    witness: BidirectedEdge

    def __bool__(self) -> bool:
        return False


def _check(g: BidirectedGraph, v: str) -> int:
    return g.vid(v)


def fresh_name(g: BidirectedGraph, base: str) -> str:
    name = base + "'"
    while name in g.index:
        name += "'"
    return name


def split(g: BidirectedGraph, vs: VertexSide) -> tuple[BidirectedGraph, str]:
    """Move every edge end at ``vs.vertex`` with the opposite sign onto a fresh copy."""
    u = _check(g, vs.vertex)
    keep = sign_of(vs.sign)
    name = fresh_name(g, vs.vertex)
    names = list(g.names) + [name]
    w = len(names) - 1
    eu, su, ev, sv = list(g.eu), list(g.su), list(g.ev), list(g.sv)
    for i in range(len(eu)):
        if eu[i] == u and su[i] != keep:
            eu[i] = w
        if ev[i] == u and sv[i] != keep:
            ev[i] = w
        if eu[i] > ev[i]:
            eu[i], su[i], ev[i], sv[i] = ev[i], sv[i], eu[i], su[i]
    return BidirectedGraph._raw(names, eu, su, ev, sv), name


def is_tip(g: BidirectedGraph, v: str) -> Optional[str]:
    """The unique incident sign if ``v`` is a tip, else ``None``; isolated vertices give ``+``."""
    s = g.tip_sign(_check(g, v))
    return None if s is None else SIGN_CHARS[s]


def tips(g: BidirectedGraph) -> list[VertexSide]:
    """Tips of ``g`` with their sign, isolated vertices excluded."""
    deg = g.sign_degrees()
    out = []
    for v, name in enumerate(g.names):
        p, q = deg[PLUS][v], deg[MINUS][v]
        if p and not q:
            out.append(VertexSide(name, "+"))
        elif q and not p:
            out.append(VertexSide(name, "-"))
    return out


def flip_vertex(g: BidirectedGraph, v: str) -> BidirectedGraph:
    u = _check(g, v)
    su = [s ^ 1 if x == u else s for x, s in zip(g.eu, g.su)]
    sv = [s ^ 1 if x == u else s for x, s in zip(g.ev, g.sv)]
    return BidirectedGraph._raw(g.names, list(g.eu), su, list(g.ev), sv)


def underlying_undirected(g: BidirectedGraph) -> UndirectedView:
    return UndirectedView(g.names, list(g.eu), list(g.ev))


def as_directed(g: BidirectedGraph) -> Union[DirectedGraph, NotDigraphic]:
    """Arcs ``u -> v`` for every ``{u+, v-}``, or a witness edge with equal signs."""
    d = DirectedGraph.__new__(DirectedGraph)
    d.names = g.names
    d.index = dict(g.index)
    tails: list[int] = []
    heads: list[int] = []
    for i, (u, s, v, t) in enumerate(zip(g.eu, g.su, g.ev, g.sv)):
        if s == t:
            return NotDigraphic(g.edge(i))
        if s == PLUS:
            tails.append(u)
            heads.append(v)
        else:
            tails.append(v)
            heads.append(u)
    d.tails = tails
    d.heads = heads
    return d


def as_bidirected(g: Union[BidirectedGraph, DirectedGraph]) -> BidirectedGraph:
    return g.to_bidirected() if isinstance(g, DirectedGraph) else g
