"""Digraph carrier, named constructors and the weighted size functional.

A digraph on vertices ``0..n-1`` is stored as one integer ``arc_mask`` whose
bit ``u * n + v`` is set iff the arc u->v exists. Out- and in-rows are derived
bit rows, so every hot loop is a handful of ``&``/``|`` operations on ints.
Python ints are unbounded, so the same code path serves any vertex count.
"""
import logging
import math
from enum import Enum
from fractions import Fraction

import networkx as nx

from .commons import InvalidInputException

logger = logging.getLogger("tdl")

LOG2_3 = math.log2(3)


class GraphKind(Enum):
    ORIENTED = "oriented"
    DIGRAPH = "digraph"

    @property
    def base(self):
        """Number of states of one unordered vertex pair."""
        return 3 if self is GraphKind.ORIENTED else 4

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InvalidInputException("Unknown graph kind %r, use oriented or digraph." % value)


class WeightParam:
    """The weight ``a >= 1`` of a 2-cycle in ``e_a``.

    Rational inputs are kept as ``Fraction`` and make every derived value
    exact; ``log2(3)`` (the oriented counting weight) is float only.
    """

    def __init__(self, value):
        if isinstance(value, WeightParam):
            value = value.value
        if isinstance(value, float) and not value.is_integer():
            self.value = value
            self.exact = False
        else:
            try:
                self.value = Fraction(value)
            except (TypeError, ValueError):
                raise InvalidInputException("Weight %r is not a number." % (value,))
            self.exact = True
        if self.value < 1:
            raise InvalidInputException("Weight a must satisfy a >= 1, got %s." % value)

    @classmethod
    def parse(cls, text):
        s = str(text).strip().lower().replace(" ", "")
        if s in ("log2(3)", "log2_3", "log3", "oriented"):
            return cls.oriented()
        try:
            # decimal strings are exact rationals
            return cls(Fraction(s))
        except (ValueError, ZeroDivisionError):
            raise InvalidInputException("Cannot parse weight %r, use an int, a fraction p/q, "
                                        "a decimal or log2(3)." % text)

    @classmethod
    def oriented(cls):
        return cls(LOG2_3)

    @property
    def numerator(self):
        return self.value.numerator if self.exact else None

    @property
    def denominator(self):
        return self.value.denominator if self.exact else None

    def __eq__(self, other):
        return isinstance(other, WeightParam) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "WeightParam(%s)" % self

    def __str__(self):
        if not self.exact:
            return "%.10g" % self.value
        return str(self.value)


class Digraph:
    """Immutable loopless digraph on ``0..n-1``."""

    __slots__ = ("n", "arc_mask", "_out", "_in")

    def __init__(self, n, arc_mask=0):
        if n < 0:
            raise InvalidInputException("Vertex count must be non-negative.")
        if arc_mask < 0 or arc_mask >> (n * n):
            raise InvalidInputException("Arc mask has bits outside the %sx%s matrix." % (n, n))
        if arc_mask & diagonal_mask(n):
            raise InvalidInputException("Loops are not allowed.")
        self.n = n
        self.arc_mask = arc_mask
        self._out = None
        self._in = None

    @classmethod
    def empty(cls, n):
        return cls(n, 0)

    @classmethod
    def from_arcs(cls, n, arcs):
        mask = 0
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputException("Arc (%s, %s) is outside 0..%s." % (u, v, n - 1))
            if u == v:
                raise InvalidInputException("Loop at vertex %s is not allowed." % u)
            mask |= 1 << (u * n + v)
        return cls(n, mask)

    @classmethod
    def from_rows(cls, out_rows):
        n = len(out_rows)
        mask = 0
        for u, row in enumerate(out_rows):
            mask |= row << (u * n)
        return cls(n, mask)

    @property
    def out_rows(self):
        if self._out is None:
            n = self.n
            full = (1 << n) - 1
            self._out = tuple((self.arc_mask >> (u * n)) & full for u in range(n))
        return self._out

    @property
    def in_rows(self):
        if self._in is None:
            rows = [0] * self.n
            for u, row in enumerate(self.out_rows):
                while row:
                    low = row & -row
                    rows[low.bit_length() - 1] |= 1 << u
                    row ^= low
            self._in = tuple(rows)
        return self._in

    def has_arc(self, u, v):
        return bool(self.arc_mask >> (u * self.n + v) & 1)

    def arcs(self):
        n = self.n
        result = []
        mask = self.arc_mask
        while mask:
            low = mask & -mask
            i = low.bit_length() - 1
            result.append((i // n, i % n))
            mask ^= low
        return result

    @property
    def arc_count(self):
        return self.arc_mask.bit_count()

    @property
    def f2(self):
        """Number of 2-cycles."""
        return sum((o & i).bit_count() for o, i in zip(self.out_rows, self.in_rows)) // 2

    @property
    def f1(self):
        """Number of pairs joined by exactly one arc."""
        return self.arc_count - 2 * self.f2

    def out_degree(self, v):
        return self.out_rows[v].bit_count()

    def in_degree(self, v):
        return self.in_rows[v].bit_count()

    def degree(self, v):
        return self.out_degree(v) + self.in_degree(v)

    def max_degree(self):
        return max((self.degree(v) for v in range(self.n)), default=0)

    def underlying_edges(self):
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if (self.out_rows[u] | self.in_rows[u]) >> v & 1]

    def with_arc(self, u, v):
        return Digraph(self.n, self.arc_mask | 1 << (u * self.n + v))

    def without_arc(self, u, v):
        return Digraph(self.n, self.arc_mask & ~(1 << (u * self.n + v)))

    def relabel(self, perm):
        """Move vertex ``v`` to ``perm[v]``."""
        return Digraph.from_arcs(self.n, [(perm[u], perm[v]) for u, v in self.arcs()])

    def induced(self, vertices):
        vs = sorted(vertices)
        index = dict((v, i) for i, v in enumerate(vs))
        return Digraph.from_arcs(len(vs), [(index[u], index[v]) for u, v in self.arcs()
                                           if u in index and v in index])

    def is_subgraph_of(self, other):
        return self.n == other.n and self.arc_mask & ~other.arc_mask == 0

    def to_hex(self):
        return to_hex(self)

    def to_networkx(self):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arcs())
        return g

    @classmethod
    def from_networkx(cls, g):
        nodes = sorted(g.nodes())
        index = dict((v, i) for i, v in enumerate(nodes))
        return cls.from_arcs(len(nodes), [(index[u], index[v]) for u, v in g.edges()])

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.arc_mask == other.arc_mask

    def __hash__(self):
        return hash((self.n, self.arc_mask))

    def __repr__(self):
        return "Digraph(%s, arcs=%s)" % (self.n, self.arcs())


def diagonal_mask(n):
    mask = 0
    for v in range(n):
        mask |= 1 << (v * n + v)
    return mask


def full_mask(n):
    return ((1 << (n * n)) - 1) & ~diagonal_mask(n)


def to_hex(g):
    """``D <n> <hex>``: n^2 bits row-major, MSB first, zero padded to a nibble."""
    nn = g.n * g.n
    if nn == 0:
        return "D 0"
    padded = -(-nn // 4) * 4
    bits = format(g.arc_mask, "0%db" % nn)[::-1]
    value = int(bits, 2) << (padded - nn)
    return "D %d %0*x" % (g.n, padded // 4, value)


def from_hex(line):
    parts = line.split()
    if not parts or parts[0] != "D" or len(parts) not in (2, 3):
        raise InvalidInputException("Malformed graph line %r, expected 'D <n> <hex>'." % line)
    try:
        n = int(parts[1])
    except ValueError:
        raise InvalidInputException("Malformed vertex count in %r." % line)
    if n < 0:
        raise InvalidInputException("Negative vertex count in %r." % line)
    nn = n * n
    padded = -(-nn // 4) * 4
    digits = parts[2] if len(parts) == 3 else ""
    if len(digits) != padded // 4:
        raise InvalidInputException("Graph line %r needs %d hex digits." % (line, padded // 4))
    if nn == 0:
        return Digraph(0)
    try:
        value = int(digits, 16)
    except ValueError:
        raise InvalidInputException("Malformed hex digits in %r." % line)
    if value & ((1 << (padded - nn)) - 1):
        raise InvalidInputException("Nonzero padding bits in %r." % line)
    bits = format(value >> (padded - nn), "0%db" % nn)[::-1]
    mask = int(bits, 2)
    if mask & diagonal_mask(n):
        raise InvalidInputException("Nonzero diagonal bit in %r." % line)
    return Digraph(n, mask)


def weighted_size(g, a):
    """e_a(G) = a * f_2(G) + f_1(G); exact when ``a`` is rational."""
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    return w.value * g.f2 + g.f1


def is_legal(g, kind):
    return GraphKind.parse(kind) is GraphKind.DIGRAPH or g.f2 == 0


def transitive_tournament(k):
    if k < 1:
        raise InvalidInputException("Transitive tournament needs k >= 1.")
    return Digraph.from_arcs(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def blow_up(h, t):
    """Replace vertex i of H by the independent set ``i*t .. i*t+t-1``."""
    if t < 1:
        raise InvalidInputException("Blow-up needs t >= 1.")
    arcs = [(i * t + s, j * t + s2) for i, j in h.arcs() for s in range(t) for s2 in range(t)]
    return Digraph.from_arcs(h.n * t, arcs)


def directed_cycle(k):
    if k < 2:
        raise InvalidInputException("Directed cycle needs k >= 2.")
    return Digraph.from_arcs(k, [(i, (i + 1) % k) for i in range(k)])


def complete_digraph(k):
    """Bidirected K_k (the double complete graph)."""
    return Digraph.from_arcs(k, [(i, j) for i in range(k) for j in range(k) if i != j])


def turan_part_sizes(n, r):
    if r < 1:
        raise InvalidInputException("Turan graph needs r >= 1.")
    q, rem = divmod(n, r)
    return [q + 1 if i < rem else q for i in range(r)]


def turan_parts(n, r):
    parts = []
    start = 0
    for size in turan_part_sizes(n, r):
        parts.append(list(range(start, start + size)))
        start += size
    return parts


def turan_number(n, r):
    """t_r(n), the edge count of the balanced complete r-partite graph."""
    return math.comb(n, 2) - sum(math.comb(s, 2) for s in turan_part_sizes(n, r))


def turan_graph_digraph(n, r):
    """DT_r(n): balanced parts, larger parts first, every cross pair bidirected."""
    owner = []
    for i, part in enumerate(turan_parts(n, r)):
        owner.extend([i] * len(part))
    return Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if owner[u] != owner[v]])


def pattern_name(r, t):
    return "T_%d" % (r + 1) if t == 1 else "T_%d^%d" % (r + 1, t)


def blow_up_pattern(r, t):
    """T_{r+1}^t."""
    if r < 1:
        raise InvalidInputException("Pattern needs r >= 1.")
    return blow_up(transitive_tournament(r + 1), t)
