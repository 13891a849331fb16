"""Weyl groups as exact integer matrices in the simple-root basis.

A group element is the matrix whose j-th column holds the simple-root
coordinates of the image of alpha_j; elements therefore act on column
vectors of root-lattice coordinates.  Bulk enumeration runs on compact
numpy int8 stacks (entries of Weyl matrices are bounded by the highest
root's coordinates) with exact integer arithmetic throughout; dedup keys
are images of the strictly dominant vector 2*rho, on which the action is
free.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GroupCapExceeded, NotInvolution, OrbitCapExceeded
from .intlinalg import (
    IntMatrix,
    RatVector,
    cokernel_invariant_factors,
    integer_kernel,
    rank_int,
    solve_exact,
)
from .rootsystem import RootSystem, sorted_ratvectors

DEFAULT_ORBIT_CAP = 10_000_000
DEFAULT_GROUP_CAP = 4_000_000

Q = Fraction


class WeylElement:
    """Immutable integer matrix in simple-root coordinates, hashable."""

    __slots__ = ("n", "_data")

    def __init__(self, rows: Iterable[Sequence[int]]):
        mat = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(mat)
        if any(len(r) != n for r in mat):
            raise ValueError("square matrix required")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_data", array("h", [x for r in mat for x in r]).tobytes())

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        flat = array("h")
        flat.frombytes(self._data)
        n = self.n
        return tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("immutable")

    def __hash__(self) -> int:
        return hash(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self._data == other._data

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.matrix, other.matrix
        n = self.n
        return WeylElement(
            tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        m = self.matrix
        return tuple(sum(m[i][j] * v[j] for j in range(self.n)) for i in range(self.n))

    def apply_rational(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        m = self.matrix
        return tuple(sum((Q(m[i][j]) * v[j] for j in range(self.n)), Q(0)) for i in range(self.n))

    def is_identity(self) -> bool:
        m = self.matrix
        return all(m[i][j] == (1 if i == j else 0) for i in range(self.n) for j in range(self.n))

    def order(self) -> int:
        w = self
        k = 1
        while not w.is_identity():
            w = w * self
            k += 1
            if k > 10000:
                raise RuntimeError("runaway order computation")
        return k

    def trace(self) -> int:
        m = self.matrix
        return sum(m[i][i] for i in range(self.n))

    def as_int_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.matrix)

    def sort_key(self):
        return self.matrix

    def __repr__(self) -> str:
        return f"WeylElement({self.matrix})"


def identity_element(n: int) -> WeylElement:
    return WeylElement(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def simple_reflections(rs: RootSystem) -> tuple[WeylElement, ...]:
    """Matrices of the simple reflections: s_i = id - e_i (x) cartan-row_i."""
    n = rs.rank
    out = []
    for i in range(n):
        rows = [[(1 if k == j else 0) for j in range(n)] for k in range(n)]
        for j in range(n):
            rows[i][j] -= rs.cartan[i, j]
        out.append(WeylElement(rows))
    return tuple(out)


def reflection_in_root(rs: RootSystem, beta: Sequence[Fraction | int]) -> WeylElement:
    """Reflection s_beta for a root beta given in ambient coordinates."""
    beta = tuple(Q(x) for x in beta)
    cols = []
    for a in rs.simple_roots:
        img = _reflect_ambient(a, beta)
        c = rs.alpha_coords(img)
        if any(x.denominator != 1 for x in c):
            raise ValueError("reflection does not preserve the root lattice")
        cols.append(tuple(int(x) for x in c))
    return WeylElement(tuple(zip(*cols)))


def _reflect_ambient(v: tuple[Fraction, ...], beta: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    num = sum((a * b for a, b in zip(v, beta)), Q(0))
    den = sum((b * b for b in beta), Q(0))
    coef = 2 * num / den
    return tuple(a - coef * b for a, b in zip(v, beta))


@dataclass(frozen=True)
class OrbitSet:
    """Canonically sorted Weyl orbit, in ambient coordinates."""

    vectors: tuple[RatVector, ...]

    @property
    def size(self) -> int:
        return len(self.vectors)


def orbit(rs: RootSystem, v: Sequence[Fraction | int], cap: int = DEFAULT_ORBIT_CAP) -> OrbitSet:
    """BFS closure of v under the simple reflections."""
    vq = tuple(Q(x) for x in v)
    pair = rs.pairing_with_simple(vq)
    if all(p.denominator == 1 for p in pair):
        # weight-coordinate fast path over integers
        perp = tuple(a - b for a, b in zip(vq, rs.span_component(vq)))
        pts = orbit_weight_coords(rs, tuple(int(p) for p in pair), cap)
        amb = []
        for m in pts:
            u = rs.from_weight_coords(m)
            amb.append(tuple(a + b for a, b in zip(u, perp)))
        return OrbitSet(sorted_ratvectors(amb))
    seen = {vq}
    frontier = [vq]
    while frontier:
        nxt = []
        for x in frontier:
            for a in rs.simple_roots:
                y = _reflect_ambient(x, a)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise OrbitCapExceeded(f"orbit larger than {cap}")
        frontier = nxt
    return OrbitSet(sorted_ratvectors(seen))


def orbit_weight_coords(
    rs: RootSystem, m: Sequence[int], cap: int = DEFAULT_ORBIT_CAP
) -> set[tuple[int, ...]]:
    """Orbit of a weight given in weight coordinates; all-integer BFS.

    s_i acts by m_j -> m_j - m_i * cartan[j][i].
    """
    n = rs.rank
    cart = rs.cartan.rows
    start = tuple(int(x) for x in m)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(n):
                xi = x[i]
                if xi == 0:
                    continue  # fixed by s_i
                y = tuple(x[j] - xi * cart[j][i] for j in range(n))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise OrbitCapExceeded(f"orbit larger than {cap}")
        frontier = nxt
    return seen


def _two_rho_alpha(rs: RootSystem) -> np.ndarray:
    coords = []
    for i in range(rs.rank):
        c = sum((w[i] for w in rs.fundamental_weights_alpha), Q(0)) * 2
        if c.denominator != 1:
            raise AssertionError("2*rho must lie in the root lattice")
        coords.append(int(c))
    return np.array(coords, dtype=np.int64)


def _group_levels(rs: RootSystem) -> Iterator[np.ndarray]:
    """Yield BFS levels of the Weyl group as int8 stacks (F, n, n)."""
    n = rs.rank
    crow = [np.array(rs.cartan.rows[i], dtype=np.int64) for i in range(n)]
    rho2 = _two_rho_alpha(rs)
    ident = np.eye(n, dtype=np.int8)
    frontier = ident[None, :, :]
    seen = {(ident.astype(np.int64) @ rho2).astype(np.int32).tobytes()}
    yield frontier
    while frontier.shape[0]:
        cands = []
        for i in range(n):
            new = frontier.copy()
            corr = np.einsum("j,fjk->fk", crow[i], frontier.astype(np.int64))
            new[:, i, :] = frontier[:, i, :] - corr.astype(np.int8)
            cands.append(new)
        cands = np.concatenate(cands)
        keys = (cands.astype(np.int64) @ rho2).astype(np.int32)
        kv = np.ascontiguousarray(keys).view([("", keys.dtype)] * n)
        _, idx = np.unique(kv, return_index=True)
        fresh_rows = []
        for r in idx:
            b = keys[r].tobytes()
            if b not in seen:
                seen.add(b)
                fresh_rows.append(r)
        if not fresh_rows:
            return
        frontier = cands[np.array(fresh_rows)]
        yield frontier


def group_order_bfs(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> int:
    """|W| by BFS closure of the simple reflections."""
    if rs.weyl_order > cap:
        raise GroupCapExceeded(f"|W| = {rs.weyl_order} exceeds cap {cap}")
    total = sum(level.shape[0] for level in _group_levels(rs))
    if total != rs.weyl_order:
        raise AssertionError(f"BFS found {total} elements, classical order is {rs.weyl_order}")
    return total


def enumerate_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> frozenset[WeylElement]:
    """All Weyl group elements; raises GroupCapExceeded when |W| > cap."""
    if rs.weyl_order > cap:
        raise GroupCapExceeded(f"|W| = {rs.weyl_order} exceeds cap {cap}")
    n = rs.rank
    out = []
    for level in _group_levels(rs):
        lvl16 = level.astype(np.int16)
        for k in range(lvl16.shape[0]):
            w = object.__new__(WeylElement)
            object.__setattr__(w, "n", n)
            object.__setattr__(w, "_data", lvl16[k].tobytes())
            out.append(w)
    if len(out) != rs.weyl_order:
        raise AssertionError("enumeration does not match the classical order")
    return frozenset(out)


def is_reflection(w: WeylElement) -> bool:
    """True iff 1 - w has rank exactly 1 (lattice reflection)."""
    n = w.n
    m = w.matrix
    rows = [[(1 if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
    return rank_int(IntMatrix.from_rows(rows)) == 1


def reflections(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> tuple[WeylElement, ...]:
    """All reflections in W, by exhaustive scan (trace prefilter, exact rank check)."""
    if rs.weyl_order > cap:
        raise GroupCapExceeded(f"|W| = {rs.weyl_order} exceeds cap {cap}")
    n = rs.rank
    found = []
    for level in _group_levels(rs):
        tr = np.trace(level, axis1=1, axis2=2)
        for k in np.nonzero(tr == n - 2)[0]:
            w = WeylElement(level[k].tolist())
            if is_reflection(w):
                found.append(w)
    found.sort(key=WeylElement.sort_key)
    return tuple(found)


def h1_cyclic2(w: WeylElement) -> int:
    """Order of H^1(<w>, Z^n) = ker(1+w) / im(1-w) for an involution w."""
    n = w.n
    if not (w * w).is_identity():
        raise NotInvolution("element does not square to the identity")
    m = w.matrix
    if w.is_identity():
        return 1
    plus = IntMatrix.from_rows(
        [[(1 if i == j else 0) + m[i][j] for j in range(n)] for i in range(n)]
    )
    minus_cols = [[(1 if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
    kern = integer_kernel(plus)  # basis of the anti-invariant sublattice
    k = len(kern)
    if k == 0:
        return 1
    # express the columns of (1 - w) in the kernel basis; integrality is automatic
    basis_rows = [[kern[b][i] for b in range(k)] for i in range(n)]
    # pick k independent rows to solve against
    sq_rows = _independent_rows(basis_rows, k)
    sq = [basis_rows[i] for i in sq_rows]
    coords = []
    for j in range(n):
        col = [minus_cols[i][j] for i in range(n)]
        x = solve_exact(sq, [col[i] for i in sq_rows])
        if any(xx.denominator != 1 for xx in x):
            raise AssertionError("image is not inside the anti-invariant lattice")
        # verify on the full (possibly overdetermined) system
        for i in range(n):
            if sum(basis_rows[i][b] * x[b] for b in range(k)) != col[i]:
                raise AssertionError("inconsistent solve in H^1 computation")
        coords.append(tuple(int(xx) for xx in x))
    quotient = IntMatrix.from_rows([[coords[j][b] for j in range(n)] for b in range(k)])
    fac = cokernel_invariant_factors(quotient)
    out = 1
    for f in fac:
        out *= f
    return out


def _independent_rows(rows: list[list[int]], k: int) -> list[int]:
    """Indices of k Q-linearly independent rows (assumes rank k)."""
    chosen: list[int] = []
    cur: list[list[Fraction]] = []
    for idx, r in enumerate(rows):
        cand = cur + [[Q(x) for x in r]]
        if _rank_q(cand) == len(cand):
            chosen.append(idx)
            cur = cand
            if len(chosen) == k:
                return chosen
    raise AssertionError("kernel basis is rank deficient")


def _rank_q(rows: list[list[Fraction]]) -> int:
    m = [r[:] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        m[row] = [x / m[row][col] for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        row += 1
        rank += 1
    return rank


@dataclass(frozen=True)
class DiagonalizableReflections:
    """Diagonalizable reflections of W on the root lattice.

    They generate a normal elementary abelian 2-subgroup whose rank equals
    their number.
    """

    rank: int
    generators: tuple[WeylElement, ...]
    method: str


def diagonalizable_reflection_subgroup(
    rs: RootSystem, cap: int = DEFAULT_GROUP_CAP
) -> DiagonalizableReflections:
    """Subgroup generated by reflections with nontrivial H^1 (diagonalizable ones)."""
    if rs.weyl_order <= cap:
        refl = reflections(rs, cap)
        diag = tuple(r for r in refl if h1_cyclic2(r) == 2)
        return DiagonalizableReflections(len(diag), diag, "exhaustive-scan")
    return _diagonalizable_fallback(rs)


def _diagonalizable_fallback(rs: RootSystem) -> DiagonalizableReflections:
    """Conjugacy-class analysis for groups above the enumeration cap.

    Reflections of a Weyl group are the root reflections; H^1 is constant on
    conjugacy classes, so one representative per root length suffices.  For
    the C/D families the rank-4 subcheck that no mixed signed double
    transposition is a lattice reflection is re-run explicitly.
    """
    fam, n = rs.rtype.family, rs.rank
    simples = simple_reflections(rs)
    if fam == "A":
        if h1_cyclic2(simples[0]) != 1:
            raise AssertionError("unexpected H^1 for a transposition reflection")
        return DiagonalizableReflections(0, (), "family-fallback")
    if fam == "B":
        short = [reflection_in_root(rs, _unit_vec(n, i)) for i in range(n)]
        if any(h1_cyclic2(r) != 2 for r in short):
            raise AssertionError("sign-change reflections must be diagonalizable")
        if h1_cyclic2(simples[0]) != 1:
            raise AssertionError("long reflections of B_n are not diagonalizable")
        return DiagonalizableReflections(n, tuple(short), "family-fallback")
    if fam in ("C", "D"):
        reps = [simples[0], simples[-1]]
        if fam == "D":
            reps.append(simples[-2])
        if any(h1_cyclic2(r) != 1 for r in reps):
            raise AssertionError("unexpected diagonalizable root reflection")
        _check_mixed_rank4()
        return DiagonalizableReflections(0, (), "family-fallback")
    if fam == "E" and n == 8:
        if h1_cyclic2(simples[0]) != 1:
            raise AssertionError("unexpected H^1 in the simply-laced class")
        return DiagonalizableReflections(0, (), "family-fallback")
    raise GroupCapExceeded(f"no fallback available for {rs.rtype.name}")


def _check_mixed_rank4() -> None:
    """No product (sign change) x (double transposition) is a lattice reflection.

    Checked on the rank-4 signed permutation group, where such elements
    first appear; conjugation reduces the general case to this one.
    """
    from .rootsystem import RootSystemType, build
    import warnings as _w

    with _w.catch_warnings():
        _w.simplefilter("ignore")
        rs4 = build(RootSystemType("C", 4))
    perms = [(1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
    for perm in perms:
        for bits in range(16):
            signs = tuple(1 if not (bits >> i) & 1 else -1 for i in range(4))
            w = element_from_signed_permutation(rs4, perm, signs)
            if is_reflection(w):
                raise AssertionError("mixed signed double transposition acts as a reflection")


def _unit_vec(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Q(1) if k == i else Q(0) for k in range(n))


def element_from_signed_permutation(
    rs: RootSystem, perm: Sequence[int], signs: Sequence[int]
) -> WeylElement:
    """Matrix of e_i -> signs[i] * e_{perm[i]} in simple-root coordinates."""
    cols = []
    for a in rs.simple_roots:
        img = [Q(0)] * rs.ambient_dim
        for i, x in enumerate(a):
            img[perm[i]] += signs[i] * x
        c = rs.alpha_coords(tuple(img))
        if any(x.denominator != 1 for x in c):
            raise ValueError("signed permutation does not preserve the root lattice")
        cols.append(tuple(int(x) for x in c))
    return WeylElement(tuple(zip(*cols)))


def ambient_action(rs: RootSystem, w: WeylElement, v: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    """Apply w to an ambient vector (identity on the span-orthogonal part)."""
    vq = tuple(Q(x) for x in v)
    c = rs.alpha_coords(vq)
    span = rs.from_alpha_coords(c)
    perp = tuple(a - b for a, b in zip(vq, span))
    wc = w.apply_rational(c)
    img = rs.from_alpha_coords(wc)
    return tuple(a + b for a, b in zip(img, perp))
