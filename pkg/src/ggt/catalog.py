"""Concrete finite groups given by element lists and multiplication tables,
with generic constructors (cyclic, products, semidirect, dicyclic, quotient)
and a complete catalog of the isomorphism classes of order <= 24.

Used by the orbit/volume machinery: every group here can hand out its Cayley
(left-translation) permutation action, and its full subgroup poset can be
enumerated by closure joins at these orders.
"""

from itertools import permutations

from .errors import GroupError

# number of isomorphism classes per order 1..24
GROUP_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15]


class FiniteGroup:
    """Finite group with an explicit multiplication table over 0..n-1."""

    def __init__(self, elements, mult, name=""):
        self.name = name
        self.elements = list(elements)
        index = {e: i for i, e in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise GroupError("duplicate elements")
        n = len(self.elements)
        self.table = [
            [index[mult(a, b)] for b in self.elements] for a in self.elements
        ]
        self.identity = next(
            i for i in range(n) if all(self.table[i][j] == j for j in range(n))
        )
        self.inverse = [
            next(j for j in range(n) if self.table[i][j] == self.identity)
            for i in range(n)
        ]

    @property
    def order(self):
        return len(self.elements)

    def mul(self, i, j):
        return self.table[i][j]

    def element_order(self, i):
        k, x = 1, i
        while x != self.identity:
            x = self.table[x][i]
            k += 1
        return k

    def element_orders(self):
        return sorted(self.element_order(i) for i in range(self.order))

    def is_abelian(self):
        t = self.table
        n = self.order
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i))

    def center(self):
        t = self.table
        n = self.order
        return [i for i in range(n) if all(t[i][j] == t[j][i] for j in range(n))]

    def center_size(self):
        return len(self.center())

    def conjugacy_class_sizes(self):
        n = self.order
        seen = [False] * n
        sizes = []
        for i in range(n):
            if seen[i]:
                continue
            cls = {self.table[self.table[g][i]][self.inverse[g]] for g in range(n)}
            for x in cls:
                seen[x] = True
            sizes.append(len(cls))
        return sorted(sizes)

    def derived_subgroup(self):
        comms = {
            self.table[self.table[self.inverse[a]][self.inverse[b]]][self.table[a][b]]
            for a in range(self.order)
            for b in range(self.order)
        }
        return self.closure(comms)

    def closure(self, seed):
        cur = set(seed) | {self.identity}
        frontier = list(cur)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(cur):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in cur:
                            cur.add(c)
                            nxt.append(c)
            frontier = nxt
        return frozenset(cur)

    def subgroups(self):
        """All subgroups, as frozensets of element indices."""
        cyclics = {self.closure({i}) for i in range(self.order)}
        subs = set(cyclics)
        frontier = set(cyclics)
        while frontier:
            new = set()
            for h in frontier:
                for k in cyclics:
                    j = self.closure(h | k)
                    if j not in subs:
                        subs.add(j)
                        new.add(j)
            frontier = new
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    def generating_set(self):
        """A small generating set, greedily (deterministic)."""
        gens = []
        cur = frozenset({self.identity})
        for i in sorted(range(self.order), key=lambda i: -self.element_order(i)):
            if i not in cur:
                gens.append(i)
                cur = self.closure(set(gens))
                if len(cur) == self.order:
                    break
        return gens

    def left_translation_perms(self, subset=None):
        """Cayley action: each element of `subset` (default: all) as the
        permutation g -> h*g of the element indices."""
        hs = range(self.order) if subset is None else sorted(subset)
        return [tuple(self.table[h][g] for g in range(self.order)) for h in hs]

    def invariant_fingerprint(self):
        """Isomorphism invariants used to tell catalog entries apart."""
        return (
            self.order,
            self.is_abelian(),
            tuple(self.element_orders()),
            tuple(sorted(self.element_order(i) for i in self.center())),
            tuple(self.conjugacy_class_sizes()),
            len(self.derived_subgroup()),
            len(self.subgroups()),
        )


def cyclic(n):
    return FiniteGroup(range(n), lambda a, b: (a + b) % n, name=f"C{n}")


def direct_product(g, h, name=None):
    fg = FiniteGroup(
        [(a, b) for a in range(g.order) for b in range(h.order)],
        lambda p, q: (g.table[p[0]][q[0]], h.table[p[1]][q[1]]),
        name=name or f"{g.name}x{h.name}",
    )
    return fg


def semidirect(a, b, act, name=""):
    """A x| B with act(b_index) a permutation of A's indices (automorphism)."""
    return FiniteGroup(
        [(x, y) for x in range(a.order) for y in range(b.order)],
        lambda p, q: (a.table[p[0]][act(p[1])[q[0]]], b.table[p[1]][q[1]]),
        name=name,
    )


def dihedral(m):
    """Dihedral group of order 2m: elements (i, j), j = 1 for reflections."""
    def mult(p, q):
        i, j = p
        k, l = q
        return ((i + k) % m if j == 0 else (i - k) % m, (j + l) % 2)

    return FiniteGroup(
        [(i, j) for j in range(2) for i in range(m)], mult, name=f"D{2 * m}"
    )


def dicyclic(m):
    """Dicyclic group of order 4m (m=2: quaternion Q8)."""
    n2 = 2 * m

    def mult(p, q):
        i, j = p
        k, l = q
        if j == 0:
            return ((i + k) % n2, l)
        if l == 0:
            return ((i - k) % n2, 1)
        return ((i - k + m) % n2, 0)

    return FiniteGroup(
        [(i, j) for j in range(2) for i in range(n2)], mult, name=f"Dic{m}"
    )


def symmetric(n):
    elems = sorted(permutations(range(n)))
    return FiniteGroup(
        elems, lambda p, q: tuple(p[q[i]] for i in range(n)), name=f"S{n}"
    )


def alternating(n):
    def parity(p):
        inv = sum(
            1
            for i in range(len(p))
            for j in range(i + 1, len(p))
            if p[i] > p[j]
        )
        return inv % 2

    elems = [p for p in sorted(permutations(range(n))) if parity(p) == 0]
    return FiniteGroup(
        elems, lambda p, q: tuple(p[q[i]] for i in range(n)), name=f"A{n}"
    )


def sl2_3():
    """SL(2, F3), order 24, as 2x2 matrices mod 3."""
    elems = [
        ((a, b), (c, d))
        for a in range(3)
        for b in range(3)
        for c in range(3)
        for d in range(3)
        if (a * d - b * c) % 3 == 1
    ]

    def mult(p, q):
        (a, b), (c, d) = p
        (e, f), (g, h) = q
        return (
            ((a * e + b * g) % 3, (a * f + b * h) % 3),
            ((c * e + d * g) % 3, (c * f + d * h) % 3),
        )

    return FiniteGroup(elems, mult, name="SL(2,3)")


def quotient(g, normal, name=""):
    """Quotient of g by a normal subgroup given as an index frozenset."""
    n = frozenset(normal)
    for x in range(g.order):
        for h in n:
            if g.table[g.table[x][h]][g.inverse[x]] not in n:
                raise GroupError("subgroup is not normal")
    cosets = []
    seen = set()
    for x in range(g.order):
        if x in seen:
            continue
        coset = frozenset(g.table[x][h] for h in n)
        seen |= coset
        cosets.append(coset)

    def mult(a, b):
        x = g.table[min(a)][min(b)]
        for c in cosets:
            if x in c:
                return c
        raise GroupError("quotient multiplication escaped the coset list")

    return FiniteGroup(cosets, mult, name=name)


def _power_action(m, k):
    """x -> k*x on C_m indices, as an automorphism table."""
    perm = tuple((k * x) % m for x in range(m))
    return perm


def _cyclic_semidirect(m, n, k, name):
    """C_m x| C_n where the generator of C_n acts by x -> k*x."""
    pows = [tuple(x for x in range(m))]
    for _ in range(1, n):
        prev = pows[-1]
        pows.append(tuple(prev[(k * x) % m] for x in range(m)))
    return semidirect(cyclic(m), cyclic(n), lambda j: pows[j % n], name=name)


def _abelian(factors, name):
    g = cyclic(factors[0])
    for f in factors[1:]:
        g = direct_product(g, cyclic(f))
    g.name = name
    return g


def _c3_rtimes_d4():
    """C3 x| D4 acting through the parity of the rotation part (24,8)."""
    d4 = dihedral(4)
    inv = (0, 2, 1)
    idp = (0, 1, 2)

    def act(j):
        i, _ = d4.elements[j]
        return inv if i % 2 else idp

    return semidirect(cyclic(3), d4, act, name="C3:D4")


def _c2sq_rtimes_c4():
    """(C2 x C2) x| C4 with the C4 generator swapping the factors (16,3)."""
    v = direct_product(cyclic(2), cyclic(2))
    swap = tuple(v.elements.index((b, a)) for (a, b) in v.elements)
    idp = tuple(range(4))

    def act(j):
        return swap if j % 2 else idp

    return semidirect(v, cyclic(4), act, name="(C2xC2):C4")


def _c4_rtimes_c4():
    inv = (0, 3, 2, 1)
    idp = (0, 1, 2, 3)
    return semidirect(
        cyclic(4), cyclic(4), lambda j: inv if j % 2 else idp, name="C4:C4"
    )


def _c3_rtimes_c8():
    inv = (0, 2, 1)
    idp = (0, 1, 2)
    return semidirect(
        cyclic(3), cyclic(8), lambda j: inv if j % 2 else idp, name="C3:C8"
    )


def _pauli16():
    """Central product D4 o C4 (the order-16 Pauli group)."""
    d4 = dihedral(4)
    g = direct_product(d4, cyclic(4))
    r2 = g.elements.index((d4.elements.index((2, 0)), 2))
    return quotient(g, frozenset({g.identity, r2}), name="D4oC4")


def _gen_dihedral_c3c3():
    v = direct_product(cyclic(3), cyclic(3))
    inv = tuple(v.elements.index(((3 - a) % 3, (3 - b) % 3)) for (a, b) in v.elements)
    idp = tuple(range(9))
    return semidirect(
        v, cyclic(2), lambda j: inv if j else idp, name="(C3xC3):C2"
    )


def _f20():
    return _cyclic_semidirect(5, 4, 2, name="F20")


def _c7_rtimes_c3():
    return _cyclic_semidirect(7, 3, 2, name="C7:C3")


def groups_of_order(n):
    """All isomorphism classes of groups of order n (n <= 24)."""
    if n < 1 or n > 24:
        raise GroupError("catalog covers orders 1..24 only")
    out = []

    def add(g, name=None):
        if name:
            g.name = name
        out.append(g)

    # abelian classes: one per multiset of invariant factors
    abelian_lists = {
        1: [[1]],
        2: [[2]],
        3: [[3]],
        4: [[4], [2, 2]],
        5: [[5]],
        6: [[6]],
        7: [[7]],
        8: [[8], [2, 4], [2, 2, 2]],
        9: [[9], [3, 3]],
        10: [[10]],
        11: [[11]],
        12: [[12], [2, 6]],
        13: [[13]],
        14: [[14]],
        15: [[15]],
        16: [[16], [2, 8], [4, 4], [2, 2, 4], [2, 2, 2, 2]],
        17: [[17]],
        18: [[18], [3, 6]],
        19: [[19]],
        20: [[20], [2, 10]],
        21: [[21]],
        22: [[22]],
        23: [[23]],
        24: [[24], [2, 12], [2, 2, 6]],
    }
    for factors in abelian_lists[n]:
        name = "x".join(f"C{f}" for f in factors)
        add(_abelian(factors, name))

    nonabelian = {
        6: lambda: [symmetric(3)],
        8: lambda: [dihedral(4), dicyclic(2)],
        10: lambda: [dihedral(5)],
        12: lambda: [dihedral(6), alternating(4), dicyclic(3)],
        14: lambda: [dihedral(7)],
        16: lambda: [
            dihedral(8),
            dicyclic(4),
            _cyclic_semidirect(8, 2, 3, "SD16"),
            _cyclic_semidirect(8, 2, 5, "M4(2)"),
            direct_product(dihedral(4), cyclic(2)),
            direct_product(dicyclic(2), cyclic(2)),
            _c4_rtimes_c4(),
            _c2sq_rtimes_c4(),
            _pauli16(),
        ],
        18: lambda: [
            dihedral(9),
            direct_product(cyclic(3), symmetric(3)),
            _gen_dihedral_c3c3(),
        ],
        20: lambda: [dihedral(10), dicyclic(5), _f20()],
        21: lambda: [_c7_rtimes_c3()],
        22: lambda: [dihedral(11)],
        24: lambda: [
            symmetric(4),
            sl2_3(),
            direct_product(cyclic(2), alternating(4)),
            dihedral(12),
            dicyclic(6),
            _c3_rtimes_c8(),
            direct_product(cyclic(4), symmetric(3)),
            direct_product(cyclic(2), dicyclic(3)),
            direct_product(direct_product(cyclic(2), cyclic(2)), symmetric(3)),
            direct_product(cyclic(3), dihedral(4)),
            direct_product(cyclic(3), dicyclic(2)),
            _c3_rtimes_d4(),
        ],
    }
    if n in nonabelian:
        out.extend(nonabelian[n]())
    return out


def all_groups_up_to(n_max=24):
    out = []
    for n in range(1, n_max + 1):
        out.extend(groups_of_order(n))
    return out
