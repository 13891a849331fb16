"""Affine monoids cut out of Z+^n by linear congruences.

Two independent Hilbert-basis routes are provided: a fundamental-box scan
(for finite-index congruence sublattices) and a Contejean-Devie style
completion procedure for kernels of integer rows.  They are used to
cross-check each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import BoxCapExceeded, DimensionMismatch, FrontierCapExceeded
from .intlinalg import IntMatrix, IntVec, cokernel_invariant_factors, integer_kernel, smith_normal_form

DEFAULT_BOX_CAP = 10_000_000
DEFAULT_FRONTIER_CAP = 2_000_000


@dataclass(frozen=True)
class Congruence:
    """Linear condition sum(coeffs[i] * v[i]) == 0 mod modulus."""

    coeffs: IntVec
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "coeffs", tuple(c % self.modulus for c in self.coeffs))

    def holds(self, v: Sequence[int]) -> bool:
        return sum(c * x for c, x in zip(self.coeffs, v)) % self.modulus == 0


@dataclass(frozen=True)
class CongruenceMonoid:
    """M = {v in Z+^dim : all congruences hold}."""

    dim: int
    congruences: tuple[Congruence, ...]

    def __post_init__(self) -> None:
        for c in self.congruences:
            if len(c.coeffs) != self.dim:
                raise DimensionMismatch("congruence arity != monoid dimension")

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)}, expected {self.dim}")
        return all(x >= 0 for x in v) and all(c.holds(v) for c in self.congruences)

    def generator_orders(self) -> IntVec:
        """Minimal t_i > 0 with t_i * e_i in the underlying lattice."""
        out = []
        for i in range(self.dim):
            z = 1
            for c in self.congruences:
                m = c.modulus
                z = lcm(z, m // gcd(c.coeffs[i], m))
            out.append(z)
        return tuple(out)

    def lattice_basis(self) -> IntMatrix:
        """Columns form a basis of {v in Z^dim : all congruences hold}."""
        if not self.congruences:
            return IntMatrix.identity(self.dim)
        k = len(self.congruences)
        rows = []
        for idx, c in enumerate(self.congruences):
            row = list(c.coeffs) + [0] * k
            row[self.dim + idx] = -c.modulus
            rows.append(row)
        kern = integer_kernel(IntMatrix.from_rows(rows))
        cols = [v[: self.dim] for v in kern]
        if len(cols) != self.dim:
            raise AssertionError("congruence lattice must have full rank")
        return IntMatrix.from_rows([[col[i] for col in cols] for i in range(self.dim)])

    def lattice_index(self) -> int:
        """Index of the congruence lattice inside Z^dim."""
        sf = smith_normal_form(self.lattice_basis())
        out = 1
        for d in sf.diagonal:
            out *= d
        return out

    def serialize(self) -> str:
        lines = [str(self.dim)]
        for c in self.congruences:
            lines.append(" ".join(str(x) for x in c.coeffs) + f" mod {c.modulus}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KernelInstance:
    """Monoid {l in Z+^s : sum coeffs[i] * l[i] == 0}; needs mixed signs to be nontrivial."""

    coeffs: IntVec

    def __post_init__(self) -> None:
        if not any(c > 0 for c in self.coeffs) or not any(c < 0 for c in self.coeffs):
            raise ValueError("kernel instance needs at least one positive and one negative coefficient")


@dataclass(frozen=True)
class HilbertBasis:
    """Unique minimal generating set, in graded-lexicographic order."""

    elements: tuple[IntVec, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def graded_lex_sorted(vs: Iterable[Sequence[int]]) -> tuple[IntVec, ...]:
    return tuple(sorted((tuple(int(x) for x in v) for v in vs), key=lambda v: (sum(v), v)))


def parse_instance(text: str) -> CongruenceMonoid | KernelInstance:
    """Parse the instance text format.

    Congruence form: first line the dimension, then one congruence per line
    as "a_1 ... a_n mod m".  Kernel form: a single line "ker: a_1 ... a_s".
    """
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty instance")
    if lines[0].lower().startswith("ker:"):
        coeffs = tuple(int(x) for x in lines[0][4:].split())
        return KernelInstance(coeffs)
    dim = int(lines[0])
    congs = []
    for ln in lines[1:]:
        head, _, mod = ln.partition(" mod ")
        coeffs = tuple(int(x) for x in head.split())
        congs.append(Congruence(coeffs, int(mod)))
    return CongruenceMonoid(dim, tuple(congs))


def box_elements(m: CongruenceMonoid, box_cap: int = DEFAULT_BOX_CAP) -> tuple[IntVec, ...]:
    """Monoid points of the half-open fundamental box prod [0, z_i)."""
    z = m.generator_orders()
    size = 1
    for zi in z:
        size *= zi
    if size > box_cap:
        raise BoxCapExceeded(f"box has {size} points, cap is {box_cap}")
    pts = [v for v in product(*(range(zi) for zi in z)) if all(c.holds(v) for c in m.congruences)]
    return graded_lex_sorted(pts)


def hilbert_basis_box(m: CongruenceMonoid, box_cap: int = DEFAULT_BOX_CAP) -> HilbertBasis:
    """Hilbert basis via the fundamental-box construction.

    The basis is the union of the scaled unit vectors z_i * e_i and the
    additively indecomposable nonzero box points.
    """
    z = m.generator_orders()
    pts = [p for p in box_elements(m, box_cap) if any(p)]
    indecomposable: list[IntVec] = []
    for v in pts:  # graded order: any proper summand precedes v
        if not any(all(h[i] <= v[i] for i in range(m.dim)) for h in indecomposable if h != v):
            indecomposable.append(v)
    gens = [tuple(zi if j == i else 0 for j in range(m.dim)) for i, zi in enumerate(z)]
    return HilbertBasis(graded_lex_sorted(gens + indecomposable))


def hilbert_basis_kernel(
    inst: KernelInstance | Sequence[Sequence[int]],
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> HilbertBasis:
    """Hilbert basis of {l in Z+^s : A l = 0} by Contejean-Devie completion.

    Starts from the unit vectors and only grows a candidate t by e_i when
    <A t, A e_i> < 0, pruning anything that dominates a known minimal
    solution.  The frontier cap is a divergence guard.
    """
    if isinstance(inst, KernelInstance):
        rows = [inst.coeffs]
    else:
        rows = [tuple(int(x) for x in r) for r in inst]
    s = len(rows[0])
    cols = [tuple(r[i] for r in rows) for i in range(s)]

    def value(v: IntVec) -> IntVec:
        return tuple(sum(r[i] * v[i] for i in range(s)) for r in rows)

    def dot(a: IntVec, b: IntVec) -> int:
        return sum(x * y for x, y in zip(a, b))

    basis: list[IntVec] = []
    frontier: dict[IntVec, IntVec] = {}
    for i in range(s):
        e = tuple(1 if j == i else 0 for j in range(s))
        frontier[e] = cols[i]
    while frontier:
        nxt: dict[IntVec, IntVec] = {}
        for t, val in frontier.items():
            if not any(val):
                if not any(all(b[i] <= t[i] for i in range(s)) for b in basis):
                    basis.append(t)
                continue
            for i in range(s):
                if dot(val, cols[i]) < 0:
                    t2 = tuple(t[j] + (1 if j == i else 0) for j in range(s))
                    if t2 in nxt:
                        continue
                    if any(all(b[j] <= t2[j] for j in range(s)) for b in basis):
                        continue
                    nxt[t2] = tuple(v + c for v, c in zip(val, cols[i]))
        if len(nxt) > frontier_cap:
            raise FrontierCapExceeded(f"completion frontier grew past {frontier_cap}")
        frontier = nxt
    # final minimality sweep (a solution found early could dominate a later one)
    basis = [
        b
        for b in basis
        if not any(b2 != b and all(b2[i] <= b[i] for i in range(s)) for b2 in basis)
    ]
    return HilbertBasis(graded_lex_sorted(basis))


def split_free_part(m: CongruenceMonoid) -> tuple[tuple[int, ...], CongruenceMonoid]:
    """Indices unconstrained by every congruence, plus the residual monoid.

    Returned indices are 0-based positions whose coefficient vanishes in all
    congruences; the residual monoid lives on the remaining coordinates.
    """
    free = tuple(
        i for i in range(m.dim) if all(c.coeffs[i] % c.modulus == 0 for c in m.congruences)
    )
    rest = tuple(i for i in range(m.dim) if i not in free)
    congs = tuple(
        Congruence(tuple(c.coeffs[i] for i in rest), c.modulus) for c in m.congruences
    )
    return free, CongruenceMonoid(len(rest), congs)


def hironaka_cells(m: CongruenceMonoid, box_cap: int = DEFAULT_BOX_CAP) -> tuple[IntVec, ...]:
    """Coset representatives for the free decomposition of the monoid.

    These are exactly the box points; the monoid is the disjoint union of
    translates cell + sum Z+ (z_i e_i).
    """
    cells = box_elements(m, box_cap)
    z = m.generator_orders()
    size = 1
    for zi in z:
        size *= zi
    if len(cells) * m.lattice_index() != size:
        raise AssertionError("cell count times lattice index must equal the box volume")
    return cells


def cell_of(m: CongruenceMonoid, v: Sequence[int]) -> IntVec:
    """The unique cell whose translate contains v."""
    z = m.generator_orders()
    if not m.contains(v):
        raise ValueError("vector is not in the monoid")
    return tuple(x % zi for x, zi in zip(v, z))


def toric_class_group(m: CongruenceMonoid) -> IntVec:
    """Invariant factors of the divisor class group of the monoid algebra.

    This is Z^dim modulo the congruence lattice, with each coordinate
    functional rescaled to be primitive on that lattice (the gcd of its
    values); the rescaling only matters in degenerate low-rank cases.
    """
    basis = m.lattice_basis()
    rows = []
    for i in range(m.dim):
        row = list(basis.rows[i])
        g = 0
        for x in row:
            g = gcd(g, x)
        if g > 1:
            row = [x // g for x in row]
        rows.append(row)
    try:
        return cokernel_invariant_factors(IntMatrix.from_rows(rows))
    except Exception as exc:  # full-rank lattice cannot fail; re-raise with context
        raise AssertionError("congruence lattice unexpectedly rank deficient") from exc


def verify_cell_partition(m: CongruenceMonoid, bound: int, box_cap: int = DEFAULT_BOX_CAP) -> int:
    """Exhaustively check the free decomposition on all elements with coords <= bound.

    Every monoid element must reduce (componentwise mod the generator orders)
    to exactly one cell, and distinct cells must stay distinct.  Returns the
    number of elements checked; raises AssertionError on any violation.
    """
    import numpy as np

    cells = hironaka_cells(m, box_cap)
    if len(set(cells)) != len(cells):
        raise AssertionError("cells are not distinct")
    z = np.array(m.generator_orders(), dtype=np.int64)
    axes = [np.arange(bound + 1, dtype=np.int64) for _ in range(m.dim)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m.dim)
    mask = np.ones(len(grid), dtype=bool)
    for c in m.congruences:
        a = np.array(c.coeffs, dtype=np.int64)
        mask &= (grid @ a) % c.modulus == 0
    pts = grid[mask]
    res = pts % z
    cell_set = {tuple(int(x) for x in c) for c in cells}
    seen: set[IntVec] = set()
    uniq = np.unique(res, axis=0)
    for r in uniq:
        t = tuple(int(x) for x in r)
        if t not in cell_set:
            raise AssertionError(f"residue {t} is not a cell")
        seen.add(t)
    if bound >= max(int(x) for x in z) - 1 and seen != cell_set:
        raise AssertionError("some cell received no element despite exhaustive bound")
    return int(len(pts))


def member_of_generated(v: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    """Is v a Z+-combination of gens?  Backtracking with memo, fine at test scale."""
    target = tuple(int(x) for x in v)
    gs = [tuple(int(x) for x in g) for g in gens]
    gs = [g for g in gs if all(a <= b for a, b in zip(g, target))]
    seen: set[IntVec] = set()

    def rec(t: IntVec) -> bool:
        if not any(t):
            return True
        if t in seen:
            return False
        seen.add(t)
        for g in gs:
            if all(a <= b for a, b in zip(g, t)):
                if rec(tuple(b - a for a, b in zip(g, t))):
                    return True
        return False

    return rec(target)
