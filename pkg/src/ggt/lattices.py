"""Finite-index sublattices of Z^n in Hermite normal form, exact rational
matrix arithmetic, lattice intersections and preimages, and the power-tower
index sequences of a rational isomorphism between two sublattices.

HNF here means row-style: upper triangular, positive pivots, entries above
each pivot reduced into [0, pivot).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

from .errors import ConsistencyError, InputError, LatticeError


def hnf_rows(rows, n):
    """Row Hermite normal form of an integer matrix with n columns; returns
    the nonzero rows (echelon, positive pivots, reduced above)."""
    a = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in a):
        raise InputError("ragged matrix")
    r = 0
    for c in range(n):
        # clear column c below row r by Euclidean row combinations
        while True:
            nz = [i for i in range(r + 1, len(a)) if a[i][c]]
            if not nz:
                break
            if not a[r][c]:
                i = nz[0]
                a[r], a[i] = a[i], a[r]
                continue
            for i in nz:
                q = a[i][c] // a[r][c]
                for j in range(n):
                    a[i][j] -= q * a[r][j]
                if a[i][c]:
                    a[r], a[i] = a[i], a[r]
                    break
        if a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    for j in range(n):
                        a[i][j] -= q * a[r][j]
            r += 1
            if r == len(a):
                break
    return tuple(tuple(row) for row in a[:r])


@dataclass(frozen=True)
class IntegerLattice:
    """Finite-index sublattice of Z^n; basis rows in canonical HNF."""

    n: int
    basis: tuple  # n x n integer rows, HNF

    def __post_init__(self):
        if len(self.basis) != self.n:
            raise LatticeError("basis is not full rank (infinite index)")
        if self.basis != hnf_rows(self.basis, self.n):
            raise LatticeError("basis is not in Hermite normal form")

    @staticmethod
    def from_rows(rows, n=None):
        n = n if n is not None else (len(rows[0]) if rows else 0)
        h = hnf_rows(rows, n)
        if len(h) != n:
            raise LatticeError("rows do not span a finite-index lattice")
        return IntegerLattice(n=n, basis=h)

    @staticmethod
    def standard(n):
        return IntegerLattice.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def index(self):
        """[Z^n : L] = product of the HNF diagonal."""
        return prod(self.basis[i][i] for i in range(self.n))

    def contains(self, vec):
        """Membership by back-substitution along the HNF diagonal."""
        v = list(map(int, vec))
        for i in range(self.n):
            p = self.basis[i][i]
            if v[i] % p:
                return False
            q = v[i] // p
            for j in range(self.n):
                v[j] -= q * self.basis[i][j]
        return all(x == 0 for x in v)

    def contains_lattice(self, other):
        return all(self.contains(row) for row in other.basis)


def index_in(big, small):
    """[big : small] for small <= big."""
    if not big.contains_lattice(small):
        raise LatticeError("not a sublattice")
    q, r = divmod(small.index, big.index)
    if r:
        raise ConsistencyError("sublattice index is not integral")
    return q


# ---- exact rational matrix helpers (rows of Fractions) ----


def frac_matrix(rows):
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_inv(m):
    """Gauss-Jordan over Fractions."""
    n = len(m)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise LatticeError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(r[n:]) for r in a)


def transpose(m):
    return tuple(zip(*m))


def is_integral(m):
    return all(x.denominator == 1 for r in m for x in r)


def _scale_to_int(rows):
    """(integer rows, common denominator d) with rows == int_rows / d."""
    d = lcm(*(x.denominator for r in rows for x in r)) if rows else 1
    return [[int(x * d) for x in r] for r in rows], d


def _rational_lattice_hnf(rows, n):
    """Canonical rational basis of the lattice generated by rational rows."""
    ints, d = _scale_to_int(frac_matrix(rows))
    h = hnf_rows(ints, n)
    return tuple(tuple(Fraction(x, d) for x in row) for row in h)


def _dual(rows):
    """Row basis of the dual lattice {x : x . b in Z for all b}."""
    return transpose(mat_inv(frac_matrix(rows)))


def lattice_intersect(l1, l2):
    """L1 n L2 via duality: the dual of the sum of the duals."""
    if l1.n != l2.n:
        raise LatticeError("rank mismatch")
    s = _rational_lattice_hnf(_dual(l1.basis) + _dual(l2.basis), l1.n)
    back = _dual(s)
    if not is_integral(back):
        raise ConsistencyError("intersection basis is not integral")
    return IntegerLattice.from_rows([[int(x) for x in r] for r in back])


def apply_map(phi, lat):
    """Image lattice of a row lattice under v -> v . phi^T; must be integral."""
    img = mat_mul(frac_matrix(lat.basis), transpose(phi))
    if not is_integral(img):
        raise LatticeError("map image is not an integer lattice")
    return IntegerLattice.from_rows([[int(x) for x in r] for r in img])


def lattice_preimage(phi, target, domain):
    """{v in domain : phi(v) in target} as an integer lattice."""
    phi = frac_matrix(phi)
    if not is_integral(mat_mul(frac_matrix(domain.basis), transpose(phi))):
        raise LatticeError("map is not integral on the domain")
    pre_rows = mat_mul(
        frac_matrix(target.basis), mat_inv(transpose(phi))
    )  # rational basis of phi^{-1}(target)
    pre = _rational_lattice_hnf(pre_rows, domain.n)
    ints, d = _scale_to_int(pre)
    scaled_dom = IntegerLattice.from_rows(
        [[d * x for x in row] for row in domain.basis]
    )
    meet = lattice_intersect(IntegerLattice.from_rows(ints), scaled_dom)
    rows = [[Fraction(x, d) for x in r] for r in meet.basis]
    if not is_integral(rows):
        raise ConsistencyError("preimage basis is not integral")
    return IntegerLattice.from_rows([[int(x) for x in r] for r in rows])


@dataclass(frozen=True)
class CommPowerSequence:
    phi: tuple
    a_lattices: tuple  # A_1..A_n
    b_lattices: tuple
    a: tuple  # relative indices a_1..a_n
    b: tuple
    abar: tuple  # running products = [Z^n : A_i]
    bbar: tuple


def power_sequence(phi, a_lat, b_lat, depth):
    """The two nested towers A_i = phi^{-1}(B n A_{i-1}), B_i = phi(A n
    B_{i-1}) with all relative and absolute indices; every invariant
    (monotonicity, the cross identity a_i * b_{i+1} = b_i * a_{i+1},
    determinant cross-check) is verified and violations raise."""
    phi = frac_matrix(phi)
    if depth < 1:
        raise InputError("depth must be >= 1")
    if a_lat.n != b_lat.n or len(phi) != a_lat.n:
        raise LatticeError("rank mismatch")
    if apply_map(phi, a_lat) != b_lat:
        raise LatticeError("the map does not carry A onto B")
    z = IntegerLattice.standard(a_lat.n)
    a_ls, b_ls = [a_lat], [b_lat]
    for _ in range(depth - 1):
        a_ls.append(lattice_preimage(phi, lattice_intersect(b_lat, a_ls[-1]), a_lat))
        b_ls.append(apply_map(phi, lattice_intersect(a_lat, b_ls[-1])))
    a_rel, b_rel, abar, bbar = [], [], [], []
    for i in range(depth):
        prev_a = z if i == 0 else a_ls[i - 1]
        prev_b = z if i == 0 else b_ls[i - 1]
        a_rel.append(index_in(prev_a, a_ls[i]))
        b_rel.append(index_in(prev_b, b_ls[i]))
        abar.append(a_ls[i].index)
        bbar.append(b_ls[i].index)
        if abar[-1] != prod(a_rel) or bbar[-1] != prod(b_rel):
            raise ConsistencyError("absolute index is not the product of relatives")
    for i in range(depth - 1):
        if a_rel[i] < a_rel[i + 1] or b_rel[i] < b_rel[i + 1]:
            raise ConsistencyError("relative indices are not non-increasing")
        if a_rel[i] * b_rel[i + 1] != b_rel[i] * a_rel[i + 1]:
            raise ConsistencyError("cross identity a_i b_{i+1} = b_i a_{i+1} fails")
    return CommPowerSequence(
        phi=phi,
        a_lattices=tuple(a_ls),
        b_lattices=tuple(b_ls),
        a=tuple(a_rel),
        b=tuple(b_rel),
        abar=tuple(abar),
        bbar=tuple(bbar),
    )


@dataclass(frozen=True)
class RatioSearchResult:
    status: str  # "found" | "not-found" | "not-applicable"
    n: int | None = None
    abar: int | None = None
    bbar: int | None = None
    inverted: bool = False


def ratio_search(phi, a_lat, b_lat, lam, depth_cap=32):
    """Smallest n with the larger absolute index exceeding lam times the
    smaller; uses the inverse tower when [Z^n:A] > [Z^n:B]."""
    lam = Fraction(lam)
    phi = frac_matrix(phi)
    inverted = False
    if a_lat.index > b_lat.index:
        phi, a_lat, b_lat = mat_inv(phi), b_lat, a_lat
        inverted = True
    elif a_lat.index == b_lat.index:
        return RatioSearchResult(status="not-applicable")
    seq = power_sequence(phi, a_lat, b_lat, depth_cap)
    for i in range(depth_cap):
        if Fraction(seq.bbar[i], seq.abar[i]) > lam:
            return RatioSearchResult(
                status="found",
                n=i + 1,
                abar=seq.abar[i],
                bbar=seq.bbar[i],
                inverted=inverted,
            )
    return RatioSearchResult(status="not-found", inverted=inverted)


def parse_matrix(text):
    """One row per line, entries as integers or p/q rationals."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append(tuple(Fraction(tok) for tok in line.split()))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"line {lineno}: bad matrix entry") from None
    if not rows:
        raise InputError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise InputError("ragged matrix")
    return tuple(rows)


def parse_lattice(text):
    m = parse_matrix(text)
    if not is_integral(m):
        raise InputError("lattice basis must be integral")
    return IntegerLattice.from_rows([[int(x) for x in r] for r in m])


def serialize_matrix(m):
    return "\n".join(" ".join(str(x) for x in row) for row in m) + "\n"
