"""Congruence monoids: Hilbert bases by two routes, cells, class groups."""

from __future__ import annotations

import pytest

from rootinv.errors import BoxCapExceeded, DimensionMismatch, FrontierCapExceeded
from rootinv.monoids import (
    Congruence,
    CongruenceMonoid,
    KernelInstance,
    box_elements,
    cell_of,
    graded_lex_sorted,
    hilbert_basis_box,
    hilbert_basis_kernel,
    hironaka_cells,
    member_of_generated,
    parse_instance,
    split_free_part,
    toric_class_group,
    verify_cell_partition,
)
from rootinv.reports import family_monoid
from rootinv.rootsystem import build


def a_monoid(n: int) -> CongruenceMonoid:
    """Dominant lattice points of the rank-(n-1) simply-laced lattice."""
    return CongruenceMonoid(n - 1, (Congruence(tuple(range(1, n)), n),))


def kernel_route(m: CongruenceMonoid) -> set:
    """Lift each congruence to an exact kernel condition with one slack column."""
    k = len(m.congruences)
    rows = []
    for idx, c in enumerate(m.congruences):
        slack = tuple(-c.modulus if j == idx else 0 for j in range(k))
        rows.append(tuple(c.coeffs) + slack)
    return {v[: m.dim] for v in hilbert_basis_kernel(rows)}


def test_kernel_frozen_instances():
    assert set(hilbert_basis_kernel(KernelInstance((1, 2, -3)))) == {
        (1, 1, 1),
        (3, 0, 1),
        (0, 3, 2),
    }
    assert len(hilbert_basis_kernel(KernelInstance((1, 2, 3, -4)))) == 6
    assert len(hilbert_basis_kernel(KernelInstance((1, 2, 1, 2, -3)))) == 12


def test_kernel_trivial_swap():
    assert set(hilbert_basis_kernel(KernelInstance((1, -1)))) == {(1, 1)}


def test_box_route_a2():
    m = a_monoid(3)
    assert m.generator_orders() == (3, 3)
    hb = hilbert_basis_box(m)
    assert set(hb) == {(1, 1), (3, 0), (0, 3)}
    assert hb.elements == graded_lex_sorted([(1, 1), (3, 0), (0, 3)])


def test_box_and_kernel_agree_on_a_family():
    for n in range(3, 7):
        m = a_monoid(n)
        assert set(hilbert_basis_box(m)) == kernel_route(m)


def test_box_and_kernel_agree_on_multicongruence():
    for name in ["D4", "D5", "C4", "E6"]:
        rs = build(name[0], int(name[1]))
        m = family_monoid(rs)
        assert set(hilbert_basis_box(m)) == kernel_route(m), name


def test_minimality_of_basis():
    for make in (lambda: a_monoid(4), lambda: family_monoid(build("D", 4))):
        hb = list(hilbert_basis_box(make()))
        for i, h in enumerate(hb):
            others = hb[:i] + hb[i + 1 :]
            assert not member_of_generated(h, others), h


def test_every_small_element_is_generated():
    for rs_name, bound in [("A3", 6), ("C3", 6)]:
        m = family_monoid(build(rs_name[0], int(rs_name[1])))
        hb = list(hilbert_basis_box(m))
        from itertools import product

        for v in product(range(bound + 1), repeat=m.dim):
            if m.contains(v) and any(v):
                assert member_of_generated(v, hb), v


def test_split_free_part():
    m = family_monoid(build("E", 6))
    free, residual = split_free_part(m)
    assert free == (1, 3)
    assert residual.dim == 4
    assert residual.congruences[0].coeffs == (1, 2, 1, 2)
    assert residual.congruences[0].modulus == 3

    m7 = family_monoid(build("E", 7))
    free7, res7 = split_free_part(m7)
    assert free7 == (0, 2, 3, 5)
    assert res7.congruences[0].coeffs == (1, 1, 1)
    assert res7.congruences[0].modulus == 2

    mc = family_monoid(build("C", 4))
    freec, resc = split_free_part(mc)
    assert freec == (1, 3)
    assert resc.congruences[0].coeffs == (1, 1)


def test_hironaka_cells_a2_and_c4():
    assert set(hironaka_cells(a_monoid(3))) == {(0, 0), (1, 1), (2, 2)}
    c4 = family_monoid(build("C", 4))
    assert set(hironaka_cells(c4)) == {(0, 0, 0, 0), (1, 0, 1, 0)}


def test_cell_count_times_index():
    for name in ["A2", "A3", "C3", "D4", "D5", "E6"]:
        rs = build(name[0], int(name[1]))
        m = family_monoid(rs)
        cells = hironaka_cells(m)
        z = m.generator_orders()
        vol = 1
        for zi in z:
            vol *= zi
        assert len(cells) * m.lattice_index() == vol, name


def test_cell_of():
    m = a_monoid(3)
    assert cell_of(m, (1, 1)) == (1, 1)
    assert cell_of(m, (4, 1)) == (1, 1)
    assert cell_of(m, (3, 0)) == (0, 0)
    assert cell_of(m, (5, 2)) == (2, 2)
    with pytest.raises(ValueError):
        cell_of(m, (1, 0))


def test_verify_cell_partition_small():
    assert verify_cell_partition(a_monoid(3), 8) > 0
    assert verify_cell_partition(family_monoid(build("D", 4)), 6) > 0


def test_toric_class_groups():
    cases = {
        "A1": (),
        "A2": (3,),
        "A3": (4,),
        "B3": (),
        "C3": (2,),
        "C4": (2,),
        "D4": (2, 2),
        "D5": (4,),
        "E6": (3,),
        "E7": (2,),
    }
    for name, factors in cases.items():
        rs = build(name[0], int(name[1]))
        assert toric_class_group(family_monoid(rs)) == factors, name


def test_congruence_normalization_and_contains():
    c = Congruence((5, -1, 3), 3)
    assert c.coeffs == (2, 2, 0)
    m = CongruenceMonoid(3, (c,))
    assert m.contains((1, 2, 5))
    assert not m.contains((1, 0, 0))
    with pytest.raises(DimensionMismatch):
        m.contains((1, 0))


def test_generator_orders_and_lattice_index():
    m = family_monoid(build("D", 5))
    assert m.generator_orders() == (2, 1, 2, 4, 4)
    assert m.lattice_index() == 4


def test_kernel_instance_validation():
    with pytest.raises(ValueError):
        KernelInstance((1, 2, 3))
    with pytest.raises(ValueError):
        KernelInstance((-1, -2))


def test_parse_instance_round_trip():
    m = family_monoid(build("D", 4))
    text = m.serialize()
    again = parse_instance(text)
    assert again == m

    ker = parse_instance("# comment\nker: 1 2 -3\n")
    assert isinstance(ker, KernelInstance)
    assert ker.coeffs == (1, 2, -3)

    with pytest.raises(ValueError):
        parse_instance("")


def test_box_cap():
    big = CongruenceMonoid(4, (Congruence((1, 1, 1, 1), 100),))
    with pytest.raises(BoxCapExceeded):
        box_elements(big, box_cap=1000)


def test_frontier_cap():
    with pytest.raises(FrontierCapExceeded):
        hilbert_basis_kernel(KernelInstance((13, 17, -23, -29)), frontier_cap=5)


def test_graded_lex_order():
    out = graded_lex_sorted([(3, 0), (0, 3), (1, 1), (0, 0)])
    assert out == ((0, 0), (1, 1), (0, 3), (3, 0))
