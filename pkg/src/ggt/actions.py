"""Finite groups acting on graphs (or bare sets): closure generation,
freeness checks, orbit counting, the reciprocal-stabilizer-sum invariant,
and the double-coset index identity.

Groups are always concrete vertex permutations; subgroup membership and
indices are decided by enumeration.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import GroupError, InputError, NotASubgroupError

DEFAULT_ORDER_CAP = 100_000


def compose(p, q):
    """p after q."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@dataclass(frozen=True)
class GroupAction:
    """A finite permutation group acting on a graph (or a bare set if graph
    is None)."""

    domain_size: int
    generators: tuple  # tuple of perms
    generator_names: tuple
    elements: tuple  # closure, shortlex order over generator words
    graph: object = None

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return tuple(range(self.domain_size))

    def generator(self, name):
        try:
            return self.generators[self.generator_names.index(name)]
        except ValueError:
            raise InputError(f"no generator named {name!r}") from None

    def element_index(self, perm):
        try:
            return self.elements.index(perm)
        except ValueError:
            raise NotASubgroupError("permutation is not in the group") from None


def generate_group(gens, graph=None, set_size=None, names=None,
                   order_cap=DEFAULT_ORDER_CAP):
    """Closure of vertex permutations under composition, breadth-first in
    shortlex order over generator words."""
    gens = tuple(tuple(p) for p in gens)
    if graph is not None:
        n = graph.n
    elif set_size is not None:
        n = set_size
    elif gens:
        n = len(gens[0])
    else:
        raise InputError("need a graph, a set size, or at least one generator")
    for p in gens:
        if sorted(p) != list(range(n)):
            raise GroupError(f"not a permutation of 0..{n - 1}: {p}")
    if graph is not None:
        eset = set(graph.edges)
        for k, p in enumerate(gens):
            for i, j in graph.edges:
                if (min(p[i], p[j]), max(p[i], p[j])) not in eset:
                    raise GroupError(
                        f"generator {k} does not preserve adjacency"
                    )
    ident = tuple(range(n))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                w = compose(e, g)
                if w not in seen:
                    if len(elements) >= order_cap:
                        raise GroupError(f"group order exceeds cap {order_cap}")
                    seen.add(w)
                    elements.append(w)
                    nxt.append(w)
        frontier = nxt
    if names is None:
        names = tuple(f"g{i}" for i in range(len(gens)))
    return GroupAction(
        domain_size=n,
        generators=gens,
        generator_names=tuple(names),
        elements=tuple(elements),
        graph=graph,
    )


def subgroup_elements(action, sub_gens):
    """Closure of sub_gens inside the group; errors if any falls outside."""
    sub_gens = tuple(tuple(p) for p in sub_gens)
    eset = set(action.elements)
    ident = action.identity
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in sub_gens:
                if g not in eset:
                    raise NotASubgroupError("generator not in the group")
                w = compose(e, g)
                if w not in elems:
                    elems.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(elems)


@dataclass(frozen=True)
class FreenessReport:
    vertex_violations: tuple  # (element index, fixed vertex)
    edge_violations: tuple  # (element index, edge) -- setwise fixed, not flipped
    edge_inversions: tuple  # (element index, edge) -- edge flipped

    @property
    def free_on_vertices(self):
        return not self.vertex_violations

    @property
    def free_on_cells(self):
        return not (
            self.vertex_violations or self.edge_violations or self.edge_inversions
        )


def verify_free_action(action):
    """Fixed vertices / setwise-fixed edges of non-identity elements; edge
    inversions are reported separately."""
    vbad, ebad, einv = [], [], []
    ident = action.identity
    for gi, p in enumerate(action.elements):
        if p == ident:
            continue
        for v in range(action.domain_size):
            if p[v] == v:
                vbad.append((gi, v))
        if action.graph is not None:
            for i, j in action.graph.edges:
                if p[i] == i and p[j] == j:
                    ebad.append((gi, (i, j)))
                elif p[i] == j and p[j] == i:
                    einv.append((gi, (i, j)))
    return FreenessReport(tuple(vbad), tuple(ebad), tuple(einv))


@dataclass(frozen=True)
class OrbitReport:
    vertex_orbits: tuple  # tuple of sorted vertex tuples
    edge_orbits: tuple  # tuple of sorted edge tuples (graph mode only)
    volume: dict  # dimension -> orbit count
    vertex_stabilizer_orders: tuple  # per vertex orbit representative
    edge_stabilizer_orders: tuple
    v_invariant: Fraction  # sum of reciprocal vertex stabilizer orders


def _orbits(elements, points, apply_fn):
    orbits = []
    seen = set()
    for x in points:
        if x in seen:
            continue
        orb = sorted({apply_fn(p, x) for p in elements})
        seen.update(orb)
        orbits.append(tuple(orb))
    return tuple(orbits)


def orbit_volume(action, elements=None):
    """Orbit partition, per-dimension volumes, stabilizer orders, and the
    exact rational sum of reciprocal stabilizer orders over vertex orbits."""
    elements = tuple(elements) if elements is not None else action.elements
    vorb = _orbits(elements, range(action.domain_size), lambda p, v: p[v])
    vstab = tuple(
        sum(1 for p in elements if p[orb[0]] == orb[0]) for orb in vorb
    )
    for orb, st in zip(vorb, vstab):
        if len(orb) * st != len(elements):
            raise GroupError("orbit-stabilizer mismatch (not a subgroup?)")
    if action.graph is not None:
        def apply_edge(p, e):
            i, j = e
            return (min(p[i], p[j]), max(p[i], p[j]))

        eorb = _orbits(elements, sorted(action.graph.edges), apply_edge)
        estab = tuple(
            sum(1 for p in elements if apply_edge(p, orb[0]) == orb[0])
            for orb in eorb
        )
        volume = {0: len(vorb), 1: len(eorb)}
    else:
        eorb = ()
        estab = ()
        volume = {0: len(vorb)}
    v_inv = sum((Fraction(1, st) for st in vstab), Fraction(0))
    return OrbitReport(
        vertex_orbits=vorb,
        edge_orbits=eorb,
        volume=volume,
        vertex_stabilizer_orders=vstab,
        edge_stabilizer_orders=estab,
        v_invariant=v_inv,
    )


@dataclass(frozen=True)
class MultiplicativityReport:
    v_group: Fraction
    v_subgroup: Fraction
    index: int
    equal: bool


def check_v_multiplicativity(action, subgroup_gens):
    """V(H) versus [G:H] * V(G) on the same domain; must always be equal."""
    h = subgroup_elements(action, subgroup_gens)
    if len(action.elements) % len(h):
        raise NotASubgroupError("subgroup order does not divide group order")
    index = len(action.elements) // len(h)
    vg = orbit_volume(action).v_invariant
    vh = orbit_volume(action, elements=sorted(h)).v_invariant
    return MultiplicativityReport(
        v_group=vg, v_subgroup=vh, index=index, equal=(vh == index * vg)
    )


@dataclass(frozen=True)
class DoubleCosetReport:
    num_double_cosets: int
    rhs: Fraction  # sum |K| / |Stab_H(g_i K)|
    index: int  # [G:H]
    equal: bool
    chain_ok: bool  # |K|/|H n g K g^-1| == [K : Stab_K(H g)] for all reps


def double_coset_check(action, h_gens, k_gens):
    """Enumerate H\\G/K and check the index identity and its proof chain."""
    g_elems = action.elements
    h = subgroup_elements(action, h_gens)
    k = subgroup_elements(action, k_gens)
    if len(g_elems) % len(h):
        raise NotASubgroupError("H order does not divide |G|")
    index = len(g_elems) // len(h)
    reps = []
    seen = set()
    for g in g_elems:
        if g in seen:
            continue
        reps.append(g)
        for a in h:
            ag = compose(a, g)
            for b in k:
                seen.add(compose(ag, b))
    rhs = Fraction(0)
    chain_ok = True
    for g in reps:
        gk = frozenset(compose(g, b) for b in k)
        stab_h = [a for a in h if frozenset(compose(a, x) for x in gk) == gk]
        term = Fraction(len(k), len(stab_h))
        rhs += term
        # |K|/|H n gKg^-1| == [K : Stab_K(Hg)]
        ginv = invert(g)
        conj = frozenset(compose(compose(g, b), ginv) for b in k)
        inter = h & conj
        hg = frozenset(compose(a, g) for a in h)
        stab_k = [b for b in k if frozenset(compose(x, b) for x in hg) == hg]
        if Fraction(len(k), len(inter)) != Fraction(len(k), len(stab_k)):
            chain_ok = False
        if len(stab_h) != len(inter):
            chain_ok = False
    return DoubleCosetReport(
        num_double_cosets=len(reps),
        rhs=rhs,
        index=index,
        equal=(rhs == index),
        chain_ok=chain_ok,
    )


def parse_action(text, graph_loader=None):
    """Action file: `graph: <path>` or `set: <n>`, then `perm <name>: <images>`
    lines.  graph_loader maps a path to a Graph."""
    graph = None
    set_size = None
    perms = []
    names = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("graph:"):
            path = line.split(":", 1)[1].strip()
            if graph_loader is None:
                raise InputError("graph reference not supported here")
            graph = graph_loader(path)
        elif line.startswith("set:"):
            set_size = int(line.split(":", 1)[1].strip())
        elif line.startswith("perm "):
            head, _, imgs = line.partition(":")
            name = head[len("perm "):].strip()
            if not name:
                raise InputError(f"line {lineno}: missing permutation name")
            try:
                perm = tuple(int(t) for t in imgs.split())
            except ValueError:
                raise InputError(f"line {lineno}: bad image list") from None
            names.append(name)
            perms.append(perm)
        else:
            raise InputError(f"line {lineno}: unknown directive")
    if graph is None and set_size is None:
        raise InputError("action file needs a graph: or set: line")
    return generate_group(perms, graph=graph, set_size=set_size, names=names)
