"""Graphs of groups with finite edge orders: the Euler characteristic
chi = sum 1/|G_v| - sum 1/|G_e| (with 1/infinity = 0), the vertex-local
share chi_plus, reducedness, the sign/case analysis at chi_plus = 0
vertices, edge subdivision, and permutation-voltage graph covers.

Unlike the simple-graph core, the underlying graphs here allow loops and
multi-edges; vertices and edges are named.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, InputError, NotReducedError

INF = None  # sentinel for an infinite vertex order


@dataclass(frozen=True)
class GEdge:
    name: str
    u: str
    v: str
    order: int

    @property
    def is_loop(self):
        return self.u == self.v


@dataclass(frozen=True)
class GraphOfGroups:
    """Named vertices with orders (int or None for infinity) and named
    edges with finite orders; loops and multi-edges allowed."""

    vertex_names: tuple
    vertex_orders: tuple  # parallel to vertex_names; int or None
    edges: tuple  # of GEdge

    def __post_init__(self):
        if len(self.vertex_names) != len(set(self.vertex_names)):
            raise InputError("duplicate vertex name")
        if len(self.vertex_names) != len(self.vertex_orders):
            raise InputError("vertex name/order length mismatch")
        orders = dict(zip(self.vertex_names, self.vertex_orders))
        for o in self.vertex_orders:
            if o is not None and o < 1:
                raise InputError("vertex orders must be positive or infinite")
        seen = set()
        for e in self.edges:
            if e.name in seen:
                raise InputError(f"duplicate edge name {e.name!r}")
            seen.add(e.name)
            if e.u not in orders or e.v not in orders:
                raise InputError(f"edge {e.name!r} has an unknown endpoint")
            if e.order < 1:
                raise InputError(f"edge {e.name!r} must have a finite positive order")
            for end in (e.u, e.v):
                o = orders[end]
                if o is not None and o % e.order:
                    raise InputError(
                        f"edge {e.name!r} order {e.order} does not divide "
                        f"vertex {end!r} order {o}"
                    )

    def order_of(self, name):
        return self.vertex_orders[self.vertex_names.index(name)]

    def edge(self, name):
        for e in self.edges:
            if e.name == name:
                return e
        raise InputError(f"no edge named {name!r}")

    def incidences(self, v):
        """Incident edges with multiplicity; a loop appears twice."""
        out = []
        for e in self.edges:
            if e.u == v:
                out.append(e)
            if e.v == v:
                out.append(e)
        return tuple(out)

    def degree(self, v):
        return len(self.incidences(v))


def _recip(order):
    return Fraction(0) if order is None else Fraction(1, order)


def chi(g):
    """sum over vertices of 1/|G_v| minus sum over edges of 1/|G_e|."""
    return sum((_recip(o) for o in g.vertex_orders), Fraction(0)) - sum(
        (Fraction(1, e.order) for e in g.edges), Fraction(0)
    )


def chi_plus(g, v):
    """Vertex-local share 1/|G_v| - (1/2) sum over incidences of 1/|G_e|;
    a loop contributes two incidences."""
    base = _recip(g.order_of(v))
    return base - sum(
        (Fraction(1, 2 * e.order) for e in g.incidences(v)), Fraction(0)
    )


def chi_plus_all(g):
    """chi_plus per vertex; the shares must sum to chi exactly."""
    shares = {v: chi_plus(g, v) for v in g.vertex_names}
    if sum(shares.values(), Fraction(0)) != chi(g):
        raise ConsistencyError("vertex shares do not sum to chi")
    return shares


@dataclass(frozen=True)
class ReducednessReport:
    violations: tuple  # (edge name, endpoint vertex name)

    @property
    def reduced(self):
        return not self.violations


def is_reduced(g):
    """A non-loop edge whose order equals a finite endpoint order is a
    violation (the edge group fills the vertex group)."""
    bad = []
    for e in g.edges:
        if e.is_loop:
            continue
        for end in (e.u, e.v):
            if g.order_of(end) == e.order:
                bad.append((e.name, end))
    return ReducednessReport(violations=tuple(bad))


CASE_DEG2_EQUAL = "case-1-degree-2-equal-orders"
CASE_LOOP_EQUAL = "case-2-loop-equal-orders"
CASE_HALF_ORDER = "case-3-degree-1-half-order"


@dataclass(frozen=True)
class SignReport:
    shares: dict  # vertex -> chi_plus
    zero_cases: dict  # vertex -> case label, for chi_plus == 0 vertices
    nonpositive_deg2: bool  # chi_plus <= 0 at every vertex of degree >= 2


def sign_analysis(g):
    """On a reduced graph of groups: check chi_plus <= 0 at every vertex of
    degree >= 2 and classify each chi_plus = 0 vertex.

    Case 1: degree-2 vertex whose two non-loop incidences both have the
    vertex's order (only possible on non-reduced input).  Case 2: a loop
    whose order equals the vertex order (virtually cyclic).  Case 3:
    degree-1 vertex whose order is twice the edge order.
    """
    rep = is_reduced(g)
    if not rep.reduced:
        raise NotReducedError(f"not reduced: violations {rep.violations}")
    shares = chi_plus_all(g)
    zero_cases = {}
    for v in g.vertex_names:
        inc = g.incidences(v)
        deg = len(inc)
        if deg >= 2 and shares[v] > 0:
            raise ConsistencyError(
                f"chi_plus({v!r}) > 0 at degree {deg} on a reduced input"
            )
        if shares[v] != 0:
            continue
        o = g.order_of(v)
        if any(e.is_loop and e.order == o for e in inc):
            zero_cases[v] = CASE_LOOP_EQUAL
        elif deg == 2 and all(not e.is_loop and e.order == o for e in inc):
            zero_cases[v] = CASE_DEG2_EQUAL
        elif deg == 1 and o is not None and o == 2 * inc[0].order:
            zero_cases[v] = CASE_HALF_ORDER
        else:
            zero_cases[v] = "unclassified"
    return SignReport(
        shares=shares,
        zero_cases=zero_cases,
        nonpositive_deg2=all(
            shares[v] <= 0 for v in g.vertex_names if g.degree(v) >= 2
        ),
    )


def subdivide_edge(g, edge_name, new_vertex=None):
    """Replace an edge with a midpoint vertex of the edge's order and two
    edges of that order; chi is unchanged."""
    e = g.edge(edge_name)
    w = new_vertex or f"{edge_name}_mid"
    if w in g.vertex_names:
        raise InputError(f"vertex {w!r} already exists")
    edges = tuple(x for x in g.edges if x.name != edge_name) + (
        GEdge(f"{edge_name}_a", e.u, w, e.order),
        GEdge(f"{edge_name}_b", w, e.v, e.order),
    )
    return GraphOfGroups(
        vertex_names=g.vertex_names + (w,),
        vertex_orders=g.vertex_orders + (e.order,),
        edges=edges,
    )


@dataclass(frozen=True)
class GraphCover:
    base: GraphOfGroups
    sheets: int
    voltages: dict  # edge name -> permutation of 0..n-1
    total: GraphOfGroups
    connected: bool


def build_cover(g, voltages, sheets):
    """Permutation-voltage cover: vertex set base x sheets, each base edge
    lifted along its voltage; orders are carried over, so chi multiplies by
    the sheet count whenever the cover is connected or not."""
    if sheets < 1:
        raise InputError("sheet count must be positive")
    for e in g.edges:
        if e.name not in voltages:
            raise InputError(f"missing voltage for edge {e.name!r}")
        if sorted(voltages[e.name]) != list(range(sheets)):
            raise InputError(f"voltage for {e.name!r} is not a permutation")
    vnames = tuple(f"{v}@{i}" for v in g.vertex_names for i in range(sheets))
    vorders = tuple(o for o in g.vertex_orders for _ in range(sheets))
    edges = []
    for e in g.edges:
        sig = voltages[e.name]
        for i in range(sheets):
            edges.append(
                GEdge(f"{e.name}@{i}", f"{e.u}@{i}", f"{e.v}@{sig[i]}", e.order)
            )
    total = GraphOfGroups(
        vertex_names=vnames, vertex_orders=vorders, edges=tuple(edges)
    )
    adj = {v: set() for v in vnames}
    for e in edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen = {vnames[0]} if vnames else set()
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return GraphCover(
        base=g,
        sheets=sheets,
        voltages={k: tuple(v) for k, v in voltages.items()},
        total=total,
        connected=len(seen) == len(vnames),
    )


def parse_gog(text):
    """`vertex <name> <order|inf>` lines, then `edge <name> <v1> <v2>
    <order>` lines; `#` comments."""
    vnames, vorders, edges = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 3:
            vnames.append(parts[1])
            if parts[2] in ("inf", "infinity", "oo"):
                vorders.append(None)
            elif parts[2].isdigit() and int(parts[2]) > 0:
                vorders.append(int(parts[2]))
            else:
                raise InputError(f"line {lineno}: bad vertex order {parts[2]!r}")
        elif parts[0] == "edge" and len(parts) == 5:
            if not parts[4].isdigit() or int(parts[4]) < 1:
                raise InputError(f"line {lineno}: bad edge order {parts[4]!r}")
            edges.append(GEdge(parts[1], parts[2], parts[3], int(parts[4])))
        else:
            raise InputError(f"line {lineno}: expected a vertex or edge line")
    return GraphOfGroups(
        vertex_names=tuple(vnames), vertex_orders=tuple(vorders), edges=tuple(edges)
    )


def serialize_gog(g):
    lines = [
        f"vertex {v} {'inf' if o is None else o}"
        for v, o in zip(g.vertex_names, g.vertex_orders)
    ]
    lines.extend(f"edge {e.name} {e.u} {e.v} {e.order}" for e in g.edges)
    return "\n".join(lines) + "\n"
