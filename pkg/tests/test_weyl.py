"""Weyl group elements, orbits, enumeration, reflections, cohomology tests."""

from __future__ import annotations

import pytest

from rootinv.errors import GroupCapExceeded, NotInvolution, OrbitCapExceeded
from rootinv.intlinalg import IntMatrix
from rootinv.rootsystem import RootSystemType, build
from rootinv.weyl import (
    WeylElement,
    diagonalizable_reflection_subgroup,
    element_from_signed_permutation,
    enumerate_group,
    group_order_bfs,
    h1_cyclic2,
    identity_element,
    is_reflection,
    orbit,
    orbit_weight_coords,
    reflection_in_root,
    reflections,
    simple_reflections,
)


def _inverse(w: WeylElement) -> WeylElement:
    out = identity_element(w.n)
    for _ in range(w.order() - 1):
        out = out * w
    return out


def test_simple_reflection_matrix_a2():
    rs = build("A", 2)
    s1, s2 = simple_reflections(rs)
    assert s1.matrix == ((-1, 1), (0, 1))
    assert s2.matrix == ((1, 0), (1, -1))
    assert (s1 * s1).is_identity()
    assert (s1 * s2).order() == 3


def test_element_algebra():
    rs = build("B", 3)
    gens = simple_reflections(rs)
    w = gens[0] * gens[1] * gens[2]
    assert not w.is_identity()
    e = identity_element(3)
    assert (w * e) == w
    assert hash(w * e) == hash(w)
    assert w.as_int_matrix() == IntMatrix.from_rows([list(r) for r in w.matrix])
    assert w.apply((0, 0, 0)) == (0, 0, 0)


def test_orbit_sizes():
    cases = [
        (("A", 2), (1, 0), 3),
        (("A", 2), (1, 1), 6),  # regular weight: orbit is the full group
        (("A", 3), (1, 0, 0), 4),
        (("B", 2), (0, 1), 4),
        (("B", 3), (1, 0, 0), 6),
        (("C", 3), (1, 0, 0), 6),
        (("D", 4), (1, 0, 0, 0), 8),
        (("G", 2), (1, 0), 6),
        (("E", 6), (1, 0, 0, 0, 0, 0), 27),
        (("E", 6), (0, 0, 0, 0, 0, 1), 27),
        (("E", 7), (0, 0, 0, 0, 0, 0, 1), 56),
    ]
    for (fam, rank), m, size in cases:
        rs = build(fam, rank)
        assert len(orbit_weight_coords(rs, m)) == size, (fam, rank, m)


def test_every_root_is_conjugate_to_a_simple_root():
    from fractions import Fraction

    for name in ["A3", "B3", "G2", "F4"]:
        rs = build(RootSystemType.parse(name))
        seen = set()
        for alpha in rs.simple_roots:
            for rv in orbit(rs, alpha).vectors:
                seen.add(rv.to_fractions())
        assert seen == {tuple(Fraction(x) for x in beta) for beta in rs.roots}


def test_orbit_rational_vector_agrees_with_weight_route():
    rs = build("A", 3)
    amb = rs.from_weight_coords((1, 0, 1))
    assert orbit(rs, amb).size == len(orbit_weight_coords(rs, (1, 0, 1)))


def test_orbit_cap():
    rs = build("D", 4)
    with pytest.raises(OrbitCapExceeded):
        orbit_weight_coords(rs, (1, 1, 1, 1), cap=10)


def test_group_enumeration_small():
    orders = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12, "F4": 1152}
    for name, order in orders.items():
        rs = build(RootSystemType.parse(name))
        g = enumerate_group(rs)
        assert len(g) == order == rs.weyl_order
        assert group_order_bfs(rs) == order
        assert identity_element(rs.rank) in g


def test_group_cap():
    rs = build("E", 6)
    with pytest.raises(GroupCapExceeded):
        group_order_bfs(rs, cap=1000)


def test_reflection_count_equals_positive_roots():
    for name, count in [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24)]:
        rs = build(RootSystemType.parse(name))
        assert len(reflections(rs)) == count


def test_reflection_in_root():
    rs = build("B", 3)
    group = enumerate_group(rs)
    for beta in rs.roots:
        s = reflection_in_root(rs, beta)
        assert is_reflection(s)
        assert s.order() == 2
        assert s in group


def test_h1_values():
    swap = WeylElement(((0, 1), (1, 0)))
    assert h1_cyclic2(swap) == 1
    sign = WeylElement(((-1,),))
    assert h1_cyclic2(sign) == 2
    sign2 = WeylElement(((-1, 0), (0, 1)))
    assert h1_cyclic2(sign2) == 2
    minus = WeylElement(((-1, 0), (0, -1)))
    assert h1_cyclic2(minus) == 4  # (Z/2)^2 has order 4
    ident = identity_element(2)
    assert h1_cyclic2(ident) == 1


def test_h1_rejects_higher_order():
    rs = build("A", 2)
    s1, s2 = simple_reflections(rs)
    with pytest.raises(NotInvolution):
        h1_cyclic2(s1 * s2)


def test_h1_conjugation_invariant():
    rs = build("B", 3)
    refl = sorted(reflections(rs), key=lambda w: w.sort_key())
    group = sorted(enumerate_group(rs), key=lambda w: w.sort_key())
    for s in refl[:4]:
        base = h1_cyclic2(s)
        for g in group[:12]:
            conj = g * s * _inverse(g)
            assert h1_cyclic2(conj) == base


def test_diagonalizable_subgroup_b4():
    rs = build("B", 4)
    diag = diagonalizable_reflection_subgroup(rs)
    assert diag.method == "exhaustive-scan"
    assert diag.rank == 4
    for s in diag.generators:
        assert is_reflection(s)
        assert h1_cyclic2(s) == 2


def test_diagonalizable_subgroup_trivial_cases():
    for name in ["A3", "A4", "C3", "C4", "D4", "D5", "G2", "F4"]:
        rs = build(RootSystemType.parse(name))
        diag = diagonalizable_reflection_subgroup(rs)
        assert diag.rank == 0, name


def test_diagonalizable_subgroup_a1_c2():
    rs = build("A", 1)
    assert diagonalizable_reflection_subgroup(rs).rank == 1
    with pytest.warns(UserWarning):
        c2 = build("C", 2)
    assert diagonalizable_reflection_subgroup(c2).rank > 0


def test_fallback_agrees_with_scan():
    for name in ["A3", "B3", "B4", "C3", "C4", "D4", "D5"]:
        rs = build(RootSystemType.parse(name))
        scan = diagonalizable_reflection_subgroup(rs)
        fallback = diagonalizable_reflection_subgroup(rs, cap=1)
        assert fallback.method != "exhaustive-scan"
        assert scan.rank == fallback.rank, name


def test_signed_permutation_constructor():
    rs = build("B", 3)
    w = element_from_signed_permutation(rs, [1, 0, 2], [1, 1, -1])
    assert (w * w).is_identity()
    assert w in enumerate_group(rs)
    with pytest.raises(ValueError):
        # an odd sign pattern under a plain permutation is not in W(D_3)
        d = build("A", 3)
        element_from_signed_permutation(d, [0, 1, 2, 3], [1, 1, 1, -1])
