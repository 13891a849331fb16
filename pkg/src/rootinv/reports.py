"""Multiplicative invariant algebras of root lattices under their Weyl groups.

For each irreducible type the exponential map identifies the invariant
algebra with the monoid algebra of M = (root lattice) intersect (dominant
weight cone), written in fundamental-weight coordinates.  M is cut out of
Z+^rank by explicit congruences; the reports package the Hilbert basis,
the primary/secondary split, the Hironaka cells and the free/residual
factorization, plus orbit-sum descriptions of every generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import InvalidRank
from .intlinalg import IntVec
from .laurent import LaurentPoly, alpha_ring, is_invariant, orbit_sum_weight_coords
from .monoids import (
    Congruence,
    CongruenceMonoid,
    HilbertBasis,
    graded_lex_sorted,
    hilbert_basis_box,
    hironaka_cells,
    split_free_part,
)
from .rootsystem import RootSystem, RootSystemType, build
from .weyl import DEFAULT_ORBIT_CAP


@dataclass(frozen=True)
class GeneratorInfo:
    coords: IntVec
    role: str  # "primary" | "secondary" | "unit"
    name: str
    omega: str  # orbit-sum power-product description


@dataclass(frozen=True)
class InvariantReport:
    rtype: RootSystemType
    monoid: CongruenceMonoid
    hilbert_basis: HilbertBasis
    primaries: tuple[IntVec, ...]
    secondaries: tuple[IntVec, ...]
    free_coordinates: tuple[int, ...]  # 0-based monoid coordinates split off as free
    residual: CongruenceMonoid | None
    cells: tuple[IntVec, ...]
    generator_count: int
    polynomial: bool
    generators: tuple[GeneratorInfo, ...]
    laurent_unit: str | None
    structure: str
    class_group_note: str


def omega_description(m: IntVec) -> str:
    """Power-product of fundamental-weight orbit sums for a monoid element."""
    bits = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            bits.append(f"o(w{i})")
        elif e > 1:
            bits.append(f"o(w{i})^{e}")
    return "*".join(bits) if bits else "1"


def family_monoid(rs: RootSystem) -> CongruenceMonoid:
    """M = {m in Z+^rank : sum m_i w_i lies in the root lattice}, as congruences."""
    fam, n = rs.rtype.family, rs.rank
    if fam == "A":
        return CongruenceMonoid(n, (Congruence(tuple(range(1, n + 1)), n + 1),))
    if fam == "B":
        return CongruenceMonoid(n, (Congruence((0,) * (n - 1) + (1,), 2),))
    if fam == "C":
        return CongruenceMonoid(n, (Congruence(tuple(i % 2 for i in range(1, n + 1)), 2),))
    if fam == "D":
        parity = tuple((1 if i % 2 else 0) for i in range(1, n - 1))
        c1 = Congruence((0,) * (n - 2) + (1, 1), 2)
        if n % 2 == 0:
            c2 = Congruence(parity + ((n // 2 + 1) % 2, (n // 2) % 2), 2)
        else:
            c2 = Congruence(tuple(2 * x for x in parity) + ((n + 2) % 4, n % 4), 4)
        return CongruenceMonoid(n, (c1, c2))
    if fam == "E" and n == 6:
        return CongruenceMonoid(6, (Congruence((1, 0, 2, 0, 1, 2), 3),))
    if fam == "E" and n == 7:
        return CongruenceMonoid(7, (Congruence((0, 1, 0, 0, 1, 0, 1), 2),))
    # weight lattice equals root lattice: no conditions
    return CongruenceMonoid(n, ())


def monoid_from_weight_lattice(rs: RootSystem) -> CongruenceMonoid:
    """Independent derivation of the same monoid from a Smith form of the Cartan matrix.

    Used as a cross-check: the congruences read off U and the invariant
    factors must cut out the same sublattice as :func:`family_monoid`.
    """
    from .intlinalg import smith_normal_form

    sf = smith_normal_form(rs.cartan)
    congs = []
    for i, d in enumerate(sf.diagonal):
        if d > 1:
            congs.append(Congruence(tuple(sf.U.rows[i]), d))
    return CongruenceMonoid(rs.rank, tuple(congs))


def _build_report(
    rs: RootSystem,
    monoid: CongruenceMonoid,
    structure: str,
    note: str,
    secondary_names: dict[IntVec, str] | None = None,
) -> InvariantReport:
    z = monoid.generator_orders()
    if z != rs.weight_orders:
        raise AssertionError("congruence orders disagree with weight orders mod the root lattice")
    hb = hilbert_basis_box(monoid)
    primaries = graded_lex_sorted(
        tuple(zi if j == i else 0 for j in range(monoid.dim)) for i, zi in enumerate(z)
    )
    prim_set = set(primaries)
    secondaries = tuple(h for h in hb if h not in prim_set)
    free, residual = split_free_part(monoid)
    cells = hironaka_cells(monoid)
    polynomial = len(hb) == monoid.dim
    gens = []
    names = secondary_names or {}
    for h in hb:
        if h in prim_set:
            i = next(k for k, x in enumerate(h) if x) + 1
            role, name = "primary", f"p{i}"
        else:
            role, name = "secondary", names.get(h, f"q{len(gens) + 1}")
        gens.append(GeneratorInfo(h, role, name, omega_description(h)))
    return InvariantReport(
        rtype=rs.rtype,
        monoid=monoid,
        hilbert_basis=hb,
        primaries=primaries,
        secondaries=secondaries,
        free_coordinates=free,
        residual=residual if 0 < residual.dim < monoid.dim else None,
        cells=cells,
        generator_count=len(hb),
        polynomial=polynomial,
        generators=tuple(gens),
        laurent_unit=None,
        structure=structure,
        class_group_note=note,
    )


def _nonzero_pos(v: IntVec) -> int:
    return next(k for k, x in enumerate(v) if x)


def report_A(n: int) -> InvariantReport:
    """Invariants of the rank-(n-1) root lattice under the symmetric group S_n."""
    if n < 2:
        raise InvalidRank("need n >= 2")
    rs = build(RootSystemType("A", n - 1))
    m = family_monoid(rs)
    note = "0" if n == 2 else f"Z/{n}"
    deg = "polynomial ring" if n == 2 else "non-free monoid algebra"
    return _build_report(rs, m, f"{deg}; congruence sum(i*l_i) = 0 mod {n}", note)


def report_B(n: int) -> InvariantReport:
    rs = build(RootSystemType("B", n))
    m = family_monoid(rs)
    return _build_report(
        rs,
        m,
        "polynomial ring on the elementary symmetric functions of x_j + 1/x_j",
        "0",
    )


def report_C(n: int) -> InvariantReport:
    rs = build(RootSystemType("C", n))
    m = family_monoid(rs)
    names = {}
    for i, j in combinations(range(1, n + 1), 2):
        if i % 2 and j % 2:
            v = tuple(1 if k in (i, j) else 0 for k in range(1, n + 1))
            names[v] = f"g{i}_{j}"
    note = "0" if n == 2 else "Z/2"
    return _build_report(
        rs,
        m,
        "free part on even coordinates; residual second-Veronese-type factor on odd ones",
        note,
        names,
    )


def report_D(n: int) -> InvariantReport:
    rs = build(RootSystemType("D", n))
    m = family_monoid(rs)
    names: dict[IntVec, str] = {}
    for v, nm in _d_secondary_names(n):
        names[v] = nm
    note = "Z/4" if n % 2 else "Z/2 x Z/2"
    return _build_report(
        rs,
        m,
        "free part on even coordinates; residual factor mixing the two half-spin coordinates",
        note,
        names,
    )


def report_E6() -> InvariantReport:
    rs = build(RootSystemType("E", 6))
    m = family_monoid(rs)
    return _build_report(
        rs,
        m,
        "two free coordinates (w2, w4); rank-4 residual with congruence k1+2k2+k3+2k4 = 0 mod 3",
        "Z/3",
    )


def report_E7() -> InvariantReport:
    rs = build(RootSystemType("E", 7))
    m = family_monoid(rs)
    return _build_report(
        rs,
        m,
        "four free coordinates (w1, w3, w4, w6); residual = second Veronese on three variables",
        "Z/2",
    )


def report_selfdual(name: str) -> InvariantReport:
    rs = build(RootSystemType.parse(name))
    if rs.weight_orders != (1,) * rs.rank:
        raise InvalidRank(f"{name} does not have weight lattice equal to root lattice")
    m = family_monoid(rs)
    return _build_report(
        rs,
        m,
        "polynomial ring on the fundamental-weight orbit sums",
        "0",
    )


def report_B_sym(n: int) -> InvariantReport:
    """Invariants of the B-type lattice under the symmetric subgroup only.

    Mixed Laurent polynomial ring: the top elementary symmetric function is
    a unit, so the monoid is Z+^(n-1) + Z.
    """
    rs = build(RootSystemType("B", n))
    m = CongruenceMonoid(n - 1, ())
    hb = hilbert_basis_box(m)
    gens = [
        GeneratorInfo(h, "primary", f"s{_nonzero_pos(h) + 1}", f"o(w{_nonzero_pos(h) + 1})")
        for h in hb
    ]
    unit_vec = (0,) * (n - 1)
    gens.append(GeneratorInfo(unit_vec, "unit", f"s{n}", "x^(1,...,1)"))
    return InvariantReport(
        rtype=rs.rtype,
        monoid=m,
        hilbert_basis=hb,
        primaries=tuple(hb),
        secondaries=(),
        free_coordinates=tuple(range(n - 1)),
        residual=None,
        cells=((0,) * (n - 1),),
        generator_count=n,
        polynomial=True,
        generators=tuple(gens),
        laurent_unit=f"s{n}^(+-1)",
        structure="mixed Laurent polynomial ring Z[s_1..s_(n-1), s_n, 1/s_n]",
        class_group_note="0",
    )


def _d_secondary_names(n: int) -> list[tuple[IntVec, str]]:
    out = []
    odd = [i for i in range(1, n - 1) if i % 2]
    for i, j in combinations(odd, 2):
        out.append((tuple(1 if k in (i, j) else 0 for k in range(1, n + 1)), f"g{i}_{j}"))
    if n % 2 == 0:
        for i in odd:
            v = [0] * n
            v[i - 1] = 1
            v[n - 2] = 1
            v[n - 1] = 1
            out.append((tuple(v), f"b{i}"))
    else:
        for i in odd:
            v = [0] * n
            v[i - 1] = 1
            v[n - 2] = 2
            out.append((tuple(v), f"g{i}_{n - 1}"))
            v2 = [0] * n
            v2[i - 1] = 1
            v2[n - 1] = 2
            out.append((tuple(v2), f"g{i}_{n}"))
        v3 = [0] * n
        v3[n - 2] = 1
        v3[n - 1] = 1
        out.append((tuple(v3), f"g{n - 1}_{n}"))
    return out


def expected_generators_C(n: int) -> tuple[IntVec, ...]:
    """Theorem-side generator list for the C family: z_i e_i and odd pairs."""
    gens = []
    for i in range(1, n + 1):
        z = 2 if i % 2 else 1
        gens.append(tuple(z if k == i else 0 for k in range(1, n + 1)))
    odd = [i for i in range(1, n + 1) if i % 2]
    for i, j in combinations(odd, 2):
        gens.append(tuple(1 if k in (i, j) else 0 for k in range(1, n + 1)))
    return graded_lex_sorted(gens)


def expected_generator_count_C(n: int) -> int:
    k = (n + 1) // 2
    return n + k * (k - 1) // 2


def expected_generators_D(n: int) -> tuple[IntVec, ...]:
    """Theorem-side generator list for the D family."""
    gens = []
    for i in range(1, n - 1):
        z = 2 if i % 2 else 1
        gens.append(tuple(z if k == i else 0 for k in range(1, n + 1)))
    zlast = 2 if n % 2 == 0 else 4
    gens.append(tuple(zlast if k == n - 1 else 0 for k in range(1, n + 1)))
    gens.append(tuple(zlast if k == n else 0 for k in range(1, n + 1)))
    gens.extend(v for v, _ in _d_secondary_names(n))
    return graded_lex_sorted(gens)


def expected_generator_count_D(n: int) -> int:
    if n % 2 == 0:
        return (n * n + 6 * n) // 8
    return (n * n + 12 * n + 3) // 8


def e6_residual_hilbert_basis() -> tuple[IntVec, ...]:
    """The twelve residual generators of the E6 monoid, graded-lex order."""
    raw = [
        (3, 0, 0, 0), (0, 3, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3),
        (1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1),
        (1, 0, 2, 0), (0, 1, 0, 2), (0, 2, 0, 1), (2, 0, 1, 0),
    ]
    return graded_lex_sorted(raw)


def e7_residual_hilbert_basis() -> tuple[IntVec, ...]:
    """Residual generators on the three constrained E7 coordinates."""
    raw = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    return graded_lex_sorted(raw)


@dataclass(frozen=True)
class VeroneseStructure:
    """Second Veronese of a polynomial ring in d variables, as a monoid algebra."""

    d: int
    monoid: CongruenceMonoid
    generators: tuple[IntVec, ...]  # squares 2e_i then products e_i + e_j
    square_generators: tuple[IntVec, ...]
    product_generators: tuple[IntVec, ...]
    relations: tuple[tuple[IntVec, IntVec], ...]  # (plus, minus) exponent pairs over generators
    cells: tuple[IntVec, ...]
    class_group_note: str


def veronese_structure(d: int) -> VeroneseStructure:
    """Generators x_i^2 and x_i x_j, relations (x_i^2)(x_j^2) = (x_i x_j)^2."""
    if d < 1:
        raise InvalidRank("need d >= 1")
    m = CongruenceMonoid(d, (Congruence((1,) * d, 2),))
    squares = tuple(tuple(2 if k == i else 0 for k in range(d)) for i in range(d))
    products = tuple(
        tuple(1 if k in (i, j) else 0 for k in range(d)) for i, j in combinations(range(d), 2)
    )
    gens = graded_lex_sorted(squares + products)
    index = {g: t for t, g in enumerate(gens)}
    rels = []
    for i, j in combinations(range(d), 2):
        plus = [0] * len(gens)
        plus[index[squares[i]]] = 1
        plus[index[squares[j]]] = 1
        minus = [0] * len(gens)
        minus[index[products[_pair_pos(i, j, d)]]] = 2
        rels.append((tuple(plus), tuple(minus)))
    cells = hironaka_cells(m)
    return VeroneseStructure(
        d=d,
        monoid=m,
        generators=gens,
        square_generators=graded_lex_sorted(squares),
        product_generators=graded_lex_sorted(products),
        relations=tuple(rels),
        cells=cells,
        class_group_note="Z/2" if d >= 2 else "0",
    )


def _pair_pos(i: int, j: int, d: int) -> int:
    return list(combinations(range(d), 2)).index((i, j))


def omega_expand(rs: RootSystem, m: IntVec, orbit_cap: int = DEFAULT_ORBIT_CAP) -> LaurentPoly:
    """Laurent expansion of the generator with weight-coordinate vector m."""
    ring = alpha_ring(rs)
    out = LaurentPoly.constant(ring, 1)
    for i, e in enumerate(m):
        if e:
            unit = tuple(1 if j == i else 0 for j in range(rs.rank))
            out = out * (orbit_sum_weight_coords(rs, unit, ring, orbit_cap) ** e)
    return out


def verify_omega(rs: RootSystem, report: InvariantReport, degree_bound: int | None = None) -> bool:
    """Exponent-lattice integrality plus Weyl invariance of every basis element's expansion."""
    ring = alpha_ring(rs)
    for h in report.hilbert_basis:
        if degree_bound is not None and sum(h) > degree_bound:
            continue
        p = omega_expand(rs, h)
        for e, _ in p.terms():
            if any(x % ring.scale for x in e):
                return False
        if not is_invariant(rs, p):
            return False
    return True
