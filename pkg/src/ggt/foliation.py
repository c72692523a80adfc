"""Triangular presentations, Cayley 2-complexes of finite groups, and the
singular foliation induced by an action on a graph.

Marked points on each edge are the slices of the geodesic-union cylinder of
the edge's endpoint images; inside each 2-cell, marked points on distinct
sides with equal slice sets are joined by regular arcs (greedy, in cyclic
order) and the rest carry singular arcs.  Leaves are connected components
of the arc union; a leaf is two-sided iff a consistent transverse sign
assignment exists, and contains a singular arc iff it is Type III.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .actions import compose, invert
from .cylinders import cylinder_for_pair, decompose_slices
from .errors import (
    ConsistencyError,
    FoliationError,
    InputError,
    PresentationError,
)
from .graphs import all_pairs_distances
from .rips import IntegerMatrix, smith_normal_form

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Presentation:
    """Generators are single lowercase letters; relators are tuples of
    nonzero ints (+k for generator k-1, -k for its inverse), freely and
    cyclically reduced."""

    generators: tuple
    relators: tuple

    def __post_init__(self):
        if len(self.generators) != len(set(self.generators)):
            raise PresentationError("duplicate generator")
        for g in self.generators:
            if len(g) != 1 or g not in ALPHABET:
                raise PresentationError(
                    f"generator {g!r} must be a single lowercase letter"
                )
        s = len(self.generators)
        for w in self.relators:
            if not w:
                raise PresentationError("empty relator")
            for a in w:
                if a == 0 or abs(a) > s:
                    raise PresentationError(f"letter {a} out of range")
            if w != cyclic_reduce(free_reduce(w)):
                raise PresentationError(f"relator {w} is not cyclically reduced")

    @property
    def triangular(self):
        return all(len(w) <= 3 for w in self.relators)

    def word_str(self, w):
        return "".join(
            self.generators[a - 1] if a > 0 else self.generators[-a - 1].upper()
            for a in w
        )


def free_reduce(word):
    out = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word):
    w = list(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def parse_presentation(text):
    """`gens <letters>` line then `rel <word>` lines; lowercase letters are
    generators, uppercase their inverses."""
    gens = None
    relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "gens":
            if gens is not None:
                raise InputError(f"line {lineno}: duplicate gens line")
            gens = tuple(parts[1:])
        elif parts[0] == "rel" and len(parts) == 2:
            if gens is None:
                raise InputError(f"line {lineno}: rel before gens")
            word = []
            for ch in parts[1]:
                low = ch.lower()
                if low not in gens:
                    raise PresentationError(
                        f"line {lineno}: unknown symbol {ch!r}"
                    )
                idx = gens.index(low) + 1
                word.append(idx if ch.islower() else -idx)
            reduced = cyclic_reduce(free_reduce(tuple(word)))
            if not reduced:
                raise PresentationError(
                    f"line {lineno}: relator is trivial after reduction"
                )
            relators.append(reduced)
        else:
            raise InputError(f"line {lineno}: expected gens or rel line")
    if gens is None:
        raise InputError("missing gens line")
    return Presentation(generators=gens, relators=tuple(relators))


def serialize_presentation(p):
    lines = ["gens " + " ".join(p.generators)]
    lines.extend("rel " + p.word_str(w) for w in p.relators)
    return "\n".join(lines) + "\n"


def triangulate_presentation(p):
    """Split each relator of length > 3 with fresh generators: a1...an
    becomes a1 a2 B1, b1 a3 B2, ..., b_{n-3} a_{n-1} a_n."""
    fresh_pool = [c for c in ALPHABET if c not in p.generators]
    gens = list(p.generators)
    relators = []
    for w in p.relators:
        if len(w) <= 3:
            relators.append(w)
            continue
        need = len(w) - 3
        if need > len(fresh_pool):
            raise PresentationError("alphabet exhausted while triangulating")
        fresh = []
        for _ in range(need):
            gens.append(fresh_pool.pop(0))
            fresh.append(len(gens))  # 1-based index of the new generator
        relators.append((w[0], w[1], -fresh[0]))
        for k in range(need - 1):
            relators.append((fresh[k], w[k + 2], -fresh[k + 1]))
        relators.append((fresh[-1], w[-2], w[-1]))
    return Presentation(generators=tuple(gens), relators=tuple(relators))


@dataclass(frozen=True)
class CWEdge:
    tail: int  # group element index
    head: int
    gen: int  # 0-based generator index


@dataclass(frozen=True)
class Cell:
    relator: int
    base: int  # group element index of the starting corner
    corners: tuple  # element indices, one per side
    sides: tuple  # (edge index, +1 forward / -1 backward) per letter


@dataclass(frozen=True)
class PresentationComplex:
    """Cayley 2-complex of a finite group realizing a triangular
    presentation: vertices are group elements, one edge per (element,
    generator) with involution edges identified, one 2-cell per (element,
    relator) with degenerate involution bigons identified."""

    presentation: Presentation
    elements: tuple  # permutations of the action's domain
    gen_perms: tuple  # one per presentation generator
    edges: tuple  # of CWEdge
    cells: tuple  # of Cell

    @property
    def n_vertices(self):
        return len(self.elements)


def cayley_complex(p, action):
    """Build the finite Cayley 2-complex of a triangular presentation whose
    generators are named generators of the action's group."""
    if not p.relators:
        raise PresentationError("at least one relator is required")
    if not p.triangular:
        raise PresentationError("presentation is not triangular")
    gen_perms = tuple(action.generator(name) for name in p.generators)
    ident = action.identity
    for i, perm in enumerate(gen_perms):
        if perm == ident:
            raise PresentationError(
                f"generator {p.generators[i]!r} acts trivially; degenerate"
            )
    elements = action.elements
    index = {perm: k for k, perm in enumerate(elements)}
    # the named generators must generate the whole group
    reach = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            for perm in gen_perms:
                w = index.get(compose(elements[g], perm))
                if w is None:
                    raise ConsistencyError("generator closure escapes the group")
                if w not in reach:
                    reach.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(reach) != len(elements):
        raise PresentationError("named generators do not generate the group")
    for w in p.relators:
        acc = ident
        for a in w:
            perm = gen_perms[abs(a) - 1]
            acc = compose(acc, perm if a > 0 else invert(perm))
        if acc != ident:
            raise PresentationError(
                f"relator {p.word_str(w)} does not hold in the group"
            )
    right = {}  # (element index, signed letter) -> element index
    for g, perm_g in enumerate(elements):
        for i, perm in enumerate(gen_perms):
            right[(g, i + 1)] = index[compose(perm_g, perm)]
            right[(g, -(i + 1))] = index[compose(perm_g, invert(perm))]
    # edges: one per (g, generator); involutions identified to min(g, gs)
    edges = []
    elookup = {}  # (tail, gen) -> (edge index, sign)
    for i, perm in enumerate(gen_perms):
        involution = compose(perm, perm) == ident
        for g in range(len(elements)):
            h = right[(g, i + 1)]
            if involution and h < g:
                continue
            elookup[(g, i)] = (len(edges), 1)
            if involution:
                elookup[(h, i)] = (len(edges), -1)
            edges.append(CWEdge(tail=g, head=h, gen=i))
    # backward traversal: letter -（i+1) from corner g runs edge (g', i)
    # with g' = g * gen^-1, against its stored direction at that lift
    cells = []
    cell_keys = set()
    for r, w in enumerate(p.relators):
        degenerate = (
            len(w) == 2
            and abs(w[0]) == abs(w[1])
            and compose(gen_perms[abs(w[0]) - 1], gen_perms[abs(w[0]) - 1]) == ident
        )
        for g in range(len(elements)):
            corners = [g]
            for a in w[:-1]:
                corners.append(right[(corners[-1], a)])
            if degenerate:
                key = (r, frozenset(corners))
                if key in cell_keys:
                    continue
                cell_keys.add(key)
            sides = []
            for k, a in enumerate(w):
                c = corners[k]
                if a > 0:
                    eidx, sign = elookup[(c, a - 1)]
                else:
                    start = right[(c, a)]  # tail of the edge being run backward
                    eidx, sign = elookup[(start, -a - 1)]
                    sign = -sign
                sides.append((eidx, sign))
            cells.append(
                Cell(relator=r, base=g, corners=tuple(corners), sides=tuple(sides))
            )
    return PresentationComplex(
        presentation=p,
        elements=elements,
        gen_perms=gen_perms,
        edges=tuple(edges),
        cells=tuple(cells),
    )


def complex_first_homology(pc):
    """(betti_1, torsion) of the 2-complex from cellular boundary maps;
    trivial for a simply connected complex."""
    n0, n1, n2 = pc.n_vertices, len(pc.edges), len(pc.cells)
    d1 = [[0] * n1 for _ in range(n0)]
    for j, e in enumerate(pc.edges):
        d1[e.head][j] += 1
        d1[e.tail][j] -= 1
    d2 = [[0] * n2 for _ in range(n1)]
    for j, c in enumerate(pc.cells):
        for eidx, sign in c.sides:
            d2[eidx][j] += sign
    f1, r1 = smith_normal_form(
        IntegerMatrix(rows=n0, cols=n1, entries=tuple(map(tuple, d1)))
    )
    f2, r2 = smith_normal_form(
        IntegerMatrix(rows=n1, cols=n2, entries=tuple(map(tuple, d2)))
    )
    betti1 = n1 - r1 - r2
    torsion = tuple(f for f in f2 if f > 1)
    return betti1, torsion


@dataclass(frozen=True)
class CellArcs:
    regular: tuple  # pairs of incidences; incidence = (side, position)
    singular: tuple  # single incidences


@dataclass(frozen=True)
class Foliation:
    pc: PresentationComplex
    action: object
    basepoint: int
    slices: tuple  # per generator: ordered tuple of frozensets (base cylinder)
    cell_arcs: tuple  # CellArcs per cell of pc (the cover)
    quotient_leaves: tuple  # per leaf: (frozenset of (gen, idx), has_singular, two_sided)
    cover_leaves: tuple  # per leaf: frozenset of (edge index, idx), plus flags

    def marked_count(self, gen):
        return len(self.slices[gen])


def _side_points(pc, fol_slices, cell, k):
    """Slice sets of the marked points along side k of a cell, in the
    cell's traversal order, each translated by the corner element."""
    w = pc.presentation.relators[cell.relator]
    a = w[k]
    gen = abs(a) - 1
    base = fol_slices[gen]
    m = len(base)
    corner = cell.corners[k]
    if a > 0:
        perm = pc.elements[corner]
        return [frozenset(perm[v] for v in base[j]) for j in range(m)]
    nxt = cell.corners[(k + 1) % len(cell.corners)]
    perm = pc.elements[nxt]
    return [frozenset(perm[v] for v in base[m - 1 - j]) for j in range(m)]


def _match_cell(pc, fol_slices, cell):
    """Greedy matching of equal slice sets across distinct sides, in cyclic
    incidence order."""
    w = pc.presentation.relators[cell.relator]
    incs = []
    vals = []
    for k in range(len(w)):
        pts = _side_points(pc, fol_slices, cell, k)
        for j, s in enumerate(pts):
            incs.append((k, j))
            vals.append(s)
    matched = [None] * len(incs)
    regular = []
    for i in range(len(incs)):
        if matched[i] is not None:
            continue
        for j in range(i + 1, len(incs)):
            if (
                matched[j] is None
                and incs[j][0] != incs[i][0]
                and vals[j] == vals[i]
            ):
                matched[i] = j
                matched[j] = i
                regular.append((incs[i], incs[j]))
                break
    singular = tuple(incs[i] for i in range(len(incs)) if matched[i] is None)
    return CellArcs(regular=tuple(regular), singular=singular)


def _quotient_point(pc, cell, inc, m_of):
    """Project a cell incidence to (generator, slice index, traversal sign)."""
    k, j = inc
    a = pc.presentation.relators[cell.relator][k]
    gen = abs(a) - 1
    if a > 0:
        return (gen, j, 1)
    return (gen, m_of[gen] - 1 - j, -1)


def _cover_point(pc, cell, inc, m_of):
    """Project a cell incidence to (edge index, slice index along the
    edge's stored orientation, traversal sign).

    The side's stored sign already encodes the traversal direction of the
    cell relative to the edge's tail-to-head order, so cell position j sits
    at edge index j (sign +1) or m-1-j (sign -1).
    """
    k, j = inc
    a = pc.presentation.relators[cell.relator][k]
    gen = abs(a) - 1
    eidx, sign = cell.sides[k]
    edge_pos = j if sign == 1 else m_of[gen] - 1 - j
    return (eidx, edge_pos, sign)


def _components(points, arcs, singular_points):
    """Connected components over `points` with regular-arc edges; returns
    (leaves, two_sidedness) where each arc imposes the opposite transverse
    sign on its endpoints."""
    adj = {pt: [] for pt in points}
    for (pa, ta), (pb, tb) in arcs:
        adj[pa].append((pb, ta * tb))
        adj[pb].append((pa, ta * tb))
    leaves = []
    seen = set()
    for pt in points:
        if pt in seen:
            continue
        comp = {pt}
        sign = {pt: 1}
        consistent = True
        stack = [pt]
        while stack:
            u = stack.pop()
            for w, tt in adj[u]:
                want = -sign[u] * tt  # sign(w)*t_w = -sign(u)*t_u
                if w in sign:
                    if sign[w] != want:
                        consistent = False
                else:
                    sign[w] = want
                    comp.add(w)
                    stack.append(w)
        seen.update(comp)
        has_sing = any(p in singular_points for p in comp)
        leaves.append((frozenset(comp), has_sing, consistent))
    return tuple(leaves)


def build_foliation(pc, action, basepoint):
    """Marked points, per-cell arcs over the whole cover, and leaves in both
    the quotient and the cover."""
    from .actions import verify_free_action

    g = action.graph
    if g is None:
        raise FoliationError("the action must be on a graph")
    if not (0 <= basepoint < g.n):
        raise InputError(f"basepoint {basepoint} out of range")
    fr = verify_free_action(action)
    if not fr.free_on_vertices:
        raise FoliationError(
            f"action is not free on vertices: {fr.vertex_violations[:3]}"
        )
    metric = all_pairs_distances(g)
    slices = []
    for perm in pc.gen_perms:
        cyl = cylinder_for_pair(g, metric, basepoint, perm[basepoint])
        slices.append(decompose_slices(cyl).slices)
    slices = tuple(slices)
    m_of = tuple(len(s) for s in slices)
    cell_arcs = tuple(_match_cell(pc, slices, c) for c in pc.cells)
    # quotient: leaves over points (gen, idx) using one cell per relator
    # (identity-based lift); equivariance makes the choice immaterial
    reps = {}
    for ci, c in enumerate(pc.cells):
        if c.relator not in reps or c.base < pc.cells[reps[c.relator]].base:
            reps[c.relator] = ci
    qpoints = [(i, j) for i in range(len(slices)) for j in range(m_of[i])]
    qarcs = []
    qsing = set()
    for ci in reps.values():
        c = pc.cells[ci]
        arcs = cell_arcs[ci]
        for a, b in arcs.regular:
            ga, ja, ta = _quotient_point(pc, c, a, m_of)
            gb, jb, tb = _quotient_point(pc, c, b, m_of)
            qarcs.append((((ga, ja), ta), ((gb, jb), tb)))
        for s in arcs.singular:
            gs_, js, _ = _quotient_point(pc, c, s, m_of)
            qsing.add((gs_, js))
    quotient_leaves = _components(qpoints, qarcs, qsing)
    # cover: leaves over points (edge index, idx) using every cell
    cpoints = [
        (ei, j) for ei, e in enumerate(pc.edges) for j in range(m_of[e.gen])
    ]
    carcs = []
    csing = set()
    for ci, c in enumerate(pc.cells):
        arcs = cell_arcs[ci]
        for a, b in arcs.regular:
            ea, ja, ta = _cover_point(pc, c, a, m_of)
            eb, jb, tb = _cover_point(pc, c, b, m_of)
            carcs.append((((ea, ja), ta), ((eb, jb), tb)))
        for s in arcs.singular:
            es, js, _ = _cover_point(pc, c, s, m_of)
            csing.add((es, js))
    cover_leaves = _components(cpoints, carcs, csing)
    return Foliation(
        pc=pc,
        action=action,
        basepoint=basepoint,
        slices=slices,
        cell_arcs=cell_arcs,
        quotient_leaves=quotient_leaves,
        cover_leaves=cover_leaves,
    )


def optimize_basepoint(pc, action):
    """Vertex minimizing the maximum edge image length max_i d(x, s_i x);
    ties break to the lowest vertex index."""
    g = action.graph
    if g is None:
        raise FoliationError("the action must be on a graph")
    metric = all_pairs_distances(g)
    best, best_len = None, None
    for x in range(g.n):
        worst = max(metric.d(x, perm[x]) for perm in pc.gen_perms)
        if best_len is None or worst < best_len:
            best, best_len = x, worst
    return best, best_len


@dataclass(frozen=True)
class LeafCensus:
    type_i: int
    type_ii: int
    type_iii: int
    per_edge_marked: tuple  # per generator
    per_cell_unmatched: tuple
    epsilon_observed: int
    basepoint: int
    max_edge_length: int

    @property
    def total(self):
        return self.type_i + self.type_ii + self.type_iii


def classify_leaves(f):
    """Quotient census: Type III contains a singular arc, Type I is
    two-sided, Type II is one-sided."""
    t1 = t2 = t3 = 0
    for _, has_sing, two_sided in f.quotient_leaves:
        if has_sing:
            t3 += 1
        elif two_sided:
            t1 += 1
        else:
            t2 += 1
    unmatched = tuple(len(a.singular) for a in f.cell_arcs)
    max_unmatched = max(unmatched) if unmatched else 0
    metric = all_pairs_distances(f.action.graph)
    max_len = max(
        metric.d(f.basepoint, perm[f.basepoint]) for perm in f.pc.gen_perms
    )
    census = LeafCensus(
        type_i=t1,
        type_ii=t2,
        type_iii=t3,
        per_edge_marked=tuple(len(s) for s in f.slices),
        per_cell_unmatched=unmatched,
        epsilon_observed=ceil(max_unmatched / 3) if max_unmatched else 0,
        basepoint=f.basepoint,
        max_edge_length=max_len,
    )
    if census.type_iii > max_unmatched * len(f.pc.cells):
        raise ConsistencyError("Type III count exceeds the unmatched bound")
    return census


def check_marked_point_conservation(f):
    """Per cell: side incidences = 2 * regular + singular, exactly."""
    m_of = tuple(len(s) for s in f.slices)
    for c, arcs in zip(f.pc.cells, f.cell_arcs):
        w = f.pc.presentation.relators[c.relator]
        total = sum(m_of[abs(a) - 1] for a in w)
        if total != 2 * len(arcs.regular) + len(arcs.singular):
            return False
    return True


def check_equivariance(f):
    """The cover foliation is invariant under the deck (left translation)
    action, and quotient leaves biject with G-orbits of cover leaves."""
    pc = f.pc
    elements = pc.elements
    index = {perm: k for k, perm in enumerate(elements)}
    m_of = tuple(len(s) for s in f.slices)
    # left translation on edges: h . (g --gen--> g s) = (hg --gen--> hg s)
    def edge_map(h):
        out = {}
        for ei, e in enumerate(pc.edges):
            nt = index[compose(elements[h], elements[e.tail])]
            nh = index[compose(elements[h], elements[e.head])]
            for ej, e2 in enumerate(pc.edges):
                if e2.gen == e.gen and {e2.tail, e2.head} == {nt, nh}:
                    out[ei] = (ej, 1 if e2.tail == nt else -1)
                    break
            else:
                raise ConsistencyError("translated edge missing")
        return out

    def move_point(emap, pt):
        ei, j = pt
        ej, sign = emap[ei]
        gen = pc.edges[ei].gen
        return (ej, j if sign == 1 else m_of[gen] - 1 - j)

    cover_sets = [set(comp) for comp, _, _ in f.cover_leaves]
    # invariance: each translated leaf is again a leaf
    for h in range(len(elements)):
        emap = edge_map(h)
        for comp in cover_sets:
            moved = {move_point(emap, pt) for pt in comp}
            if moved not in cover_sets:
                return False
    # orbit count of cover leaves vs quotient leaf count
    leaf_ids = {frozenset(c): i for i, c in enumerate(cover_sets)}
    orbit_of = list(range(len(cover_sets)))

    def find(i):
        while orbit_of[i] != i:
            orbit_of[i] = orbit_of[orbit_of[i]]
            i = orbit_of[i]
        return i

    for h in range(len(elements)):
        emap = edge_map(h)
        for i, comp in enumerate(cover_sets):
            j = leaf_ids[frozenset(move_point(emap, pt) for pt in comp)]
            ri, rj = find(i), find(j)
            if ri != rj:
                orbit_of[ri] = rj
    orbits = len({find(i) for i in range(len(cover_sets))})
    return orbits == len(f.quotient_leaves)


@dataclass(frozen=True)
class DualGraphReport:
    n_components: int
    component_of_segment: dict  # (cell id or None, key) -> component id
    incidences: tuple  # (leaf index, component id)


def foliation_dual_graph(f, cover=False):
    """Components of the complement of the arc union, by union-find over
    boundary segments, edge gaps, and vertices, plus the bipartite
    leaf/component incidence."""
    pc = f.pc
    m_of = tuple(len(s) for s in f.slices)
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    if cover:
        cells = list(range(len(pc.cells)))
        def vertex_node(cell, k):
            return ("v", pc.cells[cell].corners[k])
        def gap_node(cell, k, local_gap):
            c = pc.cells[cell]
            a = pc.presentation.relators[c.relator][k]
            gen = abs(a) - 1
            eidx, sign = c.sides[k]
            return (
                "g",
                eidx,
                local_gap if sign == 1 else m_of[gen] - local_gap,
            )
    else:
        # one representative cell per relator, lowest base
        reps = {}
        for ci, c in enumerate(pc.cells):
            if c.relator not in reps or c.base < pc.cells[reps[c.relator]].base:
                reps[c.relator] = ci
        cells = [reps[r] for r in sorted(reps)]
        def vertex_node(cell, k):
            return ("v", 0)
        def gap_node(cell, k, local_gap):
            c = pc.cells[cell]
            a = pc.presentation.relators[c.relator][k]
            gen = abs(a) - 1
            if a > 0:
                return ("g", gen, local_gap)
            return ("g", gen, m_of[gen] - local_gap)

    seg_class = {}
    leaf_of_point = {}
    if cover:
        for li, (comp, _, _) in enumerate(f.cover_leaves):
            for pt in comp:
                leaf_of_point[pt] = li
    else:
        for li, (comp, _, _) in enumerate(f.quotient_leaves):
            for pt in comp:
                leaf_of_point[pt] = li
    inc_pairs = set()
    for ci in cells:
        c = pc.cells[ci]
        w = pc.presentation.relators[c.relator]
        arcs = f.cell_arcs[ci]
        incs = []
        for k, a in enumerate(w):
            for j in range(m_of[abs(a) - 1]):
                incs.append((k, j))
        pos = {inc: t for t, inc in enumerate(incs)}
        M = len(incs)
        segs = [("s", ci, t) for t in range(M)]  # seg t precedes incidence t
        # glue each segment to the edge gaps / vertices it covers
        t = 0
        for k, a in enumerate(w):
            m = m_of[abs(a) - 1]
            for j in range(m):
                # segment preceding incidence (k, j)
                node = segs[pos[(k, j)]]
                if j == 0:
                    # spans end of the previous side, the corner, and gap 0
                    union(node, vertex_node(ci, k))
                    union(node, gap_node(ci, k, 0))
                    kp = (k - 1) % len(w)
                    union(node, gap_node(ci, kp, m_of[abs(w[kp]) - 1]))
                else:
                    union(node, gap_node(ci, k, j))
        if M == 0:
            # no marked points: the whole cell is one region at its corners
            for k in range(len(w)):
                union(("c", ci), vertex_node(ci, k))
                union(("c", ci), gap_node(ci, k, 0))
        # arcs cut the cell: chord (t,u) joins s_{t+1}~s_u and s_t~s_{u+1}
        for a_inc, b_inc in arcs.regular:
            ta, tb = pos[a_inc], pos[b_inc]
            union(segs[(ta + 1) % M], segs[tb])
            union(segs[ta], segs[(tb + 1) % M])
        for s_inc in arcs.singular:
            ts = pos[s_inc]
            union(segs[ts], segs[(ts + 1) % M])
        # record leaf incidences via adjacent segments
        if cover:
            def proj(inc):
                e, j, _ = _cover_point(pc, c, inc, m_of)
                return (e, j)
        else:
            def proj(inc):
                g_, j, _ = _quotient_point(pc, c, inc, m_of)
                return (g_, j)
        for inc in incs:
            li = leaf_of_point[proj(inc)]
            t0 = pos[inc]
            inc_pairs.add((li, segs[t0]))
            inc_pairs.add((li, segs[(t0 + 1) % M]))
        seg_class[ci] = segs
    roots = sorted({find(x) for x in list(parent)})
    comp_id = {r: i for i, r in enumerate(roots)}
    n_comp = len(roots) if roots else 1
    incidences = sorted({(li, comp_id[find(node)]) for li, node in inc_pairs})
    return DualGraphReport(
        n_components=n_comp,
        component_of_segment={
            key: comp_id[find(key)] for key in parent
        },
        incidences=tuple(incidences),
    )


@dataclass(frozen=True)
class BoundDiagnostics:
    type_iii_bound: tuple  # (lhs, rhs, passed)
    per_edge_bound: tuple  # (max marked per edge, 10*theta^2, passed)
    leaf_ratio: Fraction  # leaves per 2-cell orbit


def leaf_bound_diagnostics(f, census):
    """Measured-bound diagnostics; failures are informative, not errors."""
    max_unmatched = max(census.per_cell_unmatched, default=0)
    t = len({c.relator for c in f.pc.cells})
    lhs = census.type_iii
    rhs = max_unmatched * t
    g = f.action.graph
    metric = all_pairs_distances(g)
    thetas = []
    for perm in f.pc.gen_perms:
        cyl = cylinder_for_pair(g, metric, f.basepoint, perm[f.basepoint])
        thetas.append(cyl.theta)
    theta = max(thetas) if thetas else 0
    max_marked = max(census.per_edge_marked, default=0)
    return BoundDiagnostics(
        type_iii_bound=(lhs, rhs, lhs <= rhs),
        per_edge_bound=(max_marked, 10 * theta * theta, max_marked <= 10 * theta * theta),
        leaf_ratio=Fraction(census.total, t),
    )
