"""Exact span kernels: membership with coefficients, dual functionals,
integer characters, and coordinate-constrained span search.

Each ring gets an incremental row-echelon engine over sparse rows
(column index -> value) that tracks provenance, i.e. how every basis row
was combined from the inserted vectors.  Membership answers therefore
come with exact coefficients, and non-membership leaves behind the data
needed to build an independently checkable witness:

* fields: a functional vanishing on the span but not on the target,
  read off the reduced row echelon basis;
* Z: a rational character mod 1, built from the Smith normal form of
  the lattice basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from permod.kernels import (
    axpy_int,
    axpy_mod,
    axpy_q,
    rowpair_int,
    scale_mod,
    scale_q,
)
from permod.ring import (
    INTEGERS,
    PRIME_FIELD,
    RATIONALS,
    CharacterQZ,
    ExactMatrix,
    RingError,
    RingSpec,
    Scalar,
    primitive_int_vector,
)

Pairs = Iterable[tuple[int, Scalar]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    # x*a + y*b == g >= 0
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _q_row(pairs: Pairs) -> tuple[dict, int]:
    # integer numerators over one positive denominator, gcd-reduced
    fracs = {c: Fraction(v) for c, v in pairs if v != 0}
    den = lcm(*(f.denominator for f in fracs.values())) if fracs else 1
    nums = {c: f.numerator * (den // f.denominator) for c, f in fracs.items()}
    return nums, den


class RationalSpan:
    """Row echelon span over Q, grown one vector at a time.

    With ``reduced=True`` (the default) the basis is kept fully reduced,
    which the separating-functional construction relies on; with
    ``reduced=False`` basis rows stay in first-seen echelon form.
    """

    ring = RingSpec(RATIONALS)

    def __init__(self, reduced: bool = True) -> None:
        self.reduced = reduced
        self.rows: list[dict] = []
        self.dens: list[int] = []
        self.prov: list[dict] = []
        self.pdens: list[int] = []
        self.pivot_of: list[int] = []
        self.pivots: dict[int, int] = {}
        self.n_inserted = 0

    def _reduce(self, nums: dict, den: int) -> tuple[dict, int, dict, int]:
        row = dict(nums)
        comb: dict = {}
        cden = 1
        while True:
            hit = [c for c in row if c in self.pivots]
            if not hit:
                return row, den, comb, cden
            c = min(hit)
            i = self.pivots[c]
            fn, fd = row[c], den
            den = axpy_q(row, den, self.rows[i], self.dens[i], -fn, fd)
            cden = axpy_q(comb, cden, self.prov[i], self.pdens[i], fn, fd)

    def insert(self, pairs: Pairs) -> bool:
        idx = self.n_inserted
        self.n_inserted += 1
        nums, den = _q_row(pairs)
        row, den, comb, cden = self._reduce(nums, den)
        if not row:
            return False
        pivot = min(row)
        pn, pd = row[pivot], den
        den = scale_q(row, den, pd, pn)
        pnums = {idx: 1}
        pden = axpy_q(pnums, 1, comb, cden, -1, 1)
        pden = scale_q(pnums, pden, pd, pn)
        if self.reduced:
            # clear the new pivot column from every older basis row
            for i in range(len(self.rows)):
                if pivot in self.rows[i]:
                    fn, fd = self.rows[i][pivot], self.dens[i]
                    self.dens[i] = axpy_q(self.rows[i], self.dens[i], row, den, -fn, fd)
                    self.pdens[i] = axpy_q(self.prov[i], self.pdens[i], pnums, pden, -fn, fd)
        self.pivots[pivot] = len(self.rows)
        self.rows.append(row)
        self.dens.append(den)
        self.prov.append(pnums)
        self.pdens.append(pden)
        self.pivot_of.append(pivot)
        return True

    def reduce_comb(self, pairs: Pairs):
        """Coefficients over the inserted vectors, or None if outside the span."""
        nums, den = _q_row(pairs)
        row, den, comb, cden = self._reduce(nums, den)
        if row:
            return None
        return {k: Fraction(v, cden) for k, v in comb.items()}

    def residual(self, pairs: Pairs) -> dict[int, Fraction]:
        nums, den = _q_row(pairs)
        row, den, _, _ = self._reduce(nums, den)
        return {c: Fraction(v, den) for c, v in row.items()}

    def functional(self, pairs: Pairs) -> dict[int, Fraction]:
        """A functional annihilating the span but not the given vector."""
        if not self.reduced:
            raise RuntimeError("functional needs the fully reduced basis")
        rho = self.residual(pairs)
        if not rho:
            raise RingError("vector lies in the span; no separating functional")
        j = min(c for c, v in rho.items() if v != 0)
        phi = {j: Fraction(1)}
        for i, row in enumerate(self.rows):
            if j in row:
                phi[self.pivot_of[i]] = -Fraction(row[j], self.dens[i])
        return phi

    def basis_pairs(self) -> list[tuple[int, dict[int, Fraction]]]:
        return [
            (self.pivot_of[i], {c: Fraction(v, self.dens[i]) for c, v in row.items()})
            for i, row in enumerate(self.rows)
        ]


class PrimeFieldSpan:
    """Row echelon span over GF(p); see RationalSpan for ``reduced``."""

    def __init__(self, p: int, reduced: bool = True) -> None:
        self.p = p
        self.reduced = reduced
        self.rows: list[dict] = []
        self.prov: list[dict] = []
        self.pivot_of: list[int] = []
        self.pivots: dict[int, int] = {}
        self.n_inserted = 0

    def _reduce(self, row: dict) -> tuple[dict, dict]:
        comb: dict = {}
        p = self.p
        while True:
            hit = [c for c in row if c in self.pivots]
            if not hit:
                return row, comb
            c = min(hit)
            i = self.pivots[c]
            f = row[c]
            axpy_mod(row, self.rows[i], p - f, p)
            axpy_mod(comb, self.prov[i], f, p)

    def insert(self, pairs: Pairs) -> bool:
        idx = self.n_inserted
        self.n_inserted += 1
        p = self.p
        row = {c: v % p for c, v in pairs if v % p}
        row, comb = self._reduce(row)
        if not row:
            return False
        pivot = min(row)
        inv = pow(row[pivot], -1, p)
        scale_mod(row, inv, p)
        pnums = {idx: 1}
        axpy_mod(pnums, comb, p - 1, p)
        scale_mod(pnums, inv, p)
        if self.reduced:
            for i in range(len(self.rows)):
                if pivot in self.rows[i]:
                    f = self.rows[i][pivot]
                    axpy_mod(self.rows[i], row, p - f, p)
                    axpy_mod(self.prov[i], pnums, p - f, p)
        self.pivots[pivot] = len(self.rows)
        self.rows.append(row)
        self.prov.append(pnums)
        self.pivot_of.append(pivot)
        return True

    def reduce_comb(self, pairs: Pairs):
        p = self.p
        row = {c: v % p for c, v in pairs if v % p}
        row, comb = self._reduce(row)
        if row:
            return None
        return comb

    def residual(self, pairs: Pairs) -> dict[int, int]:
        p = self.p
        row = {c: v % p for c, v in pairs if v % p}
        row, _ = self._reduce(row)
        return row

    def functional(self, pairs: Pairs) -> dict[int, int]:
        if not self.reduced:
            raise RuntimeError("functional needs the fully reduced basis")
        rho = self.residual(pairs)
        if not rho:
            raise RingError("vector lies in the span; no separating functional")
        j = min(rho)
        phi = {j: 1}
        for i, row in enumerate(self.rows):
            if j in row:
                phi[self.pivot_of[i]] = (-row[j]) % self.p
        return phi

    def basis_pairs(self) -> list[tuple[int, dict[int, int]]]:
        return [(self.pivot_of[i], dict(row)) for i, row in enumerate(self.rows)]


class IntegerSpan:
    """Row echelon lattice basis over Z with provenance (pivots positive,
    leading columns distinct)."""

    ring = RingSpec(INTEGERS)

    def __init__(self) -> None:
        self.rows: list[dict] = []
        self.prov: list[dict] = []
        self.pivot_of: list[int] = []
        self.pivots: dict[int, int] = {}
        self.n_inserted = 0

    def insert(self, pairs: Pairs) -> bool:
        idx = self.n_inserted
        self.n_inserted += 1
        row = {c: int(v) for c, v in pairs if v != 0}
        pr = {idx: 1}
        while row:
            lead = min(row)
            if lead not in self.pivots:
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                    pr = {c: -v for c, v in pr.items()}
                self.pivots[lead] = len(self.rows)
                self.rows.append(row)
                self.prov.append(pr)
                self.pivot_of.append(lead)
                return True
            i = self.pivots[lead]
            a = self.rows[i][lead]
            b = row[lead]
            if b % a == 0:
                q = b // a
                axpy_int(row, self.rows[i], -q)
                axpy_int(pr, self.prov[i], -q)
            else:
                x, y, g = xgcd(a, b)
                rowpair_int(self.rows[i], row, x, y, -(b // g), a // g)
                rowpair_int(self.prov[i], pr, x, y, -(b // g), a // g)
        return False

    def reduce_comb(self, pairs: Pairs):
        row = {c: int(v) for c, v in pairs if v != 0}
        comb: dict = {}
        while row:
            lead = min(row)
            if lead not in self.pivots:
                return None
            i = self.pivots[lead]
            a = self.rows[i][lead]
            b = row[lead]
            if b % a:
                return None
            q = b // a
            axpy_int(row, self.rows[i], -q)
            axpy_int(comb, self.prov[i], q)
        return comb

    def hnf_normalize(self) -> None:
        """Reduce entries above each pivot into [0, pivot); canonical form."""
        order = sorted(range(len(self.rows)), key=lambda i: self.pivot_of[i])
        for j in order:
            pj = self.pivot_of[j]
            a = self.rows[j][pj]
            for i in range(len(self.rows)):
                if i != j and pj in self.rows[i]:
                    q = self.rows[i][pj] // a
                    if q:
                        axpy_int(self.rows[i], self.rows[j], -q)
                        axpy_int(self.prov[i], self.prov[j], -q)

    def basis_pairs(self) -> list[tuple[int, dict[int, int]]]:
        return [(self.pivot_of[i], dict(row)) for i, row in enumerate(self.rows)]

    def dense_basis(self, ncols: int) -> list[list[int]]:
        order = sorted(range(len(self.rows)), key=lambda i: self.pivot_of[i])
        return [[self.rows[i].get(c, 0) for c in range(ncols)] for i in order]


def make_span(ring: RingSpec, reduced: bool = True):
    if ring.kind == RATIONALS:
        return RationalSpan(reduced)
    if ring.kind == PRIME_FIELD:
        return PrimeFieldSpan(ring.p, reduced)
    return IntegerSpan()


def smith_with_colops(matrix: Sequence[Sequence[int]], ncols: int):
    """Diagonalise an integer matrix by unimodular row/column operations.

    Returns (divisors, Q) where the divisors are positive with d1 | d2 | ...
    and Q is the accumulated n x n column transform, so that the row span
    of the input equals the row span of diag(divisors) * Q^-1.
    """
    A = [list(r) for r in matrix]
    m = len(A)
    n = ncols
    Q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = 0
    while r < m and r < n:
        best = None
        for i in range(r, m):
            for j in range(r, n):
                v = abs(A[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != r:
            A[r], A[bi] = A[bi], A[r]
        if bj != r:
            for row in A:
                row[r], row[bj] = row[bj], row[r]
            for row in Q:
                row[r], row[bj] = row[bj], row[r]
        if A[r][r] < 0:
            A[r] = [-v for v in A[r]]
        d = A[r][r]
        dirty = False
        for i in range(r + 1, m):
            if A[i][r]:
                q = A[i][r] // d
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                if A[i][r]:
                    dirty = True
        for j in range(r + 1, n):
            if A[r][j]:
                q = A[r][j] // d
                for row in A:
                    row[j] -= q * row[r]
                for row in Q:
                    row[j] -= q * row[r]
                if A[r][j]:
                    dirty = True
        if dirty:
            continue
        ok = True
        for i in range(r + 1, m):
            bad = next((j for j in range(r + 1, n) if A[i][j] % d), None)
            if bad is not None:
                A[r] = [a + b for a, b in zip(A[r], A[i])]
                ok = False
                break
        if ok:
            r += 1
    return [A[i][i] for i in range(r)], Q


# ---------------------------------------------------------------------------
# public operations on dense scalar vectors
# ---------------------------------------------------------------------------


def _check_shapes(target: Sequence, generators: Sequence[Sequence], ring: RingSpec):
    tgt = [ring.normalize(v) for v in target]
    if not generators:
        return tgt, []
    mat = ExactMatrix.from_rows(ring, generators)
    if mat.n_cols != len(tgt):
        raise RingError("generator/target length mismatch")
    return tgt, [list(row) for row in mat.rows]


def span_membership(target: Sequence, generators: Sequence[Sequence], ring: RingSpec):
    """Exact coefficients c with sum(c_j * gen_j) == target, else None.

    Fields reduce against an incremental RREF basis; Z reduces against a
    triangular lattice basis, demanding integral quotients.
    """
    tgt, gens = _check_shapes(target, generators, ring)
    engine = make_span(ring)
    for g in gens:
        engine.insert(enumerate(g))
    comb = engine.reduce_comb(enumerate(tgt))
    if comb is None:
        return None
    return [comb.get(j, ring.zero()) for j in range(len(gens))]


def dual_functional(target: Sequence, generators: Sequence[Sequence], ring: RingSpec):
    """A vector phi with phi . gen_j = 0 for all j and phi . target != 0.

    Only defined over fields (use `dual_character` for Z) and only when the
    target is outside the span.
    """
    if not ring.is_field:
        raise RingError("dual_functional needs a field; use dual_character over Z")
    tgt, gens = _check_shapes(target, generators, ring)
    engine = make_span(ring)
    for g in gens:
        engine.insert(enumerate(g))
    phi = engine.functional(enumerate(tgt))
    dense = [phi.get(c, ring.zero()) for c in range(len(tgt))]
    return normalize_functional(dense, ring)


def normalize_functional(dense: list, ring: RingSpec) -> list:
    if ring.kind == RATIONALS:
        return [Fraction(v) for v in primitive_int_vector(dense)]
    lead = next((v for v in dense if v), None)
    if lead is not None:
        inv = pow(lead, -1, ring.p)
        dense = [v * inv % ring.p for v in dense]
    return dense


def character_from_span(engine: IntegerSpan, target: Sequence[int], ncols: int) -> CharacterQZ:
    """Separating character for a target outside an already-built lattice.

    The obstruction column of the Smith form is the smallest elementary
    divisor exceeding 1 that fails on the target, with ties broken by the
    lowest coordinate; a free direction yields the value 1/2 instead.
    """
    divisors, Q = smith_with_colops(engine.dense_basis(ncols), ncols)
    s = [sum(target[i] * Q[i][j] for i in range(ncols)) for j in range(ncols)]
    rank = len(divisors)
    witnessed = [
        (divisors[j], j) for j in range(rank) if divisors[j] > 1 and s[j] % divisors[j]
    ]
    if witnessed:
        d, j = min(witnessed)
        scale = Fraction(1, d)
    else:
        j = next((j for j in range(rank, ncols) if s[j]), None)
        if j is None:
            raise RingError("target lies in the span; no separating character")
        scale = Fraction(1, 2 * s[j])
    return CharacterQZ(tuple(Q[i][j] * scale for i in range(ncols)))


def dual_character(target: Sequence[int], generators: Sequence[Sequence[int]]) -> CharacterQZ:
    """A character mod 1 vanishing on the Z-span of the generators but not
    on the target, built from the Smith normal form of the lattice basis.
    """
    ring = RingSpec(INTEGERS)
    tgt, gens = _check_shapes(target, generators, ring)
    n = len(tgt)
    engine = IntegerSpan()
    for g in gens:
        engine.insert(enumerate(g))
    if engine.reduce_comb(enumerate(tgt)) is not None:
        raise RingError("target lies in the span; no separating character")
    return character_from_span(engine, tgt, n)


def span_intersect_coords(
    generators: Sequence[Sequence], coords: Iterable[int], ring: RingSpec
):
    """A nonzero span vector vanishing outside ``coords``, else None.

    Works by re-echelonising with the complement columns ordered first:
    any basis row whose pivot falls in the trailing block is supported on
    ``coords`` alone.
    """
    gens = [[ring.normalize(v) for v in g] for g in generators]
    if not gens:
        return None
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise RingError("generator length mismatch")
    coords = sorted(set(coords))
    if any(c < 0 or c >= n for c in coords):
        raise RingError("coordinate index out of range")
    others = [c for c in range(n) if c not in coords]
    new_order = others + coords
    new_of_old = {old: new for new, old in enumerate(new_order)}
    block = len(others)

    engine = make_span(ring)
    for g in gens:
        engine.insert((new_of_old[c], v) for c, v in enumerate(g))
    if isinstance(engine, IntegerSpan):
        engine.hnf_normalize()
    hits = [(p, row) for p, row in engine.basis_pairs() if p >= block]
    if not hits:
        return None
    _, row = min(hits, key=lambda t: t[0])
    dense = [ring.zero()] * n
    for c, v in row.items():
        dense[new_order[c]] = v
    if ring.kind == RATIONALS:
        return [Fraction(v) for v in primitive_int_vector(dense)]
    if ring.kind == PRIME_FIELD:
        return normalize_functional(dense, ring)
    return dense
