"""Divisor class groups of the invariant algebras.

For an irreducible system the class group of the invariant ring is either
the (finite) weight-by-root lattice quotient — when no reflection acts
diagonalizably on the root lattice — or trivial, when some reflection does.
Both routes below are exact; `class_group_cross_check` compares the group
computed this way with the toric divisor class group of the associated
affine monoid algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import IntVec, cokernel_invariant_factors
from .monoids import toric_class_group
from .reports import family_monoid
from .rootsystem import RootSystem
from .weyl import DEFAULT_GROUP_CAP, diagonalizable_reflection_subgroup


@dataclass(frozen=True)
class AbelianGroupStructure:
    """A finite abelian group given by its invariant factors (each > 1)."""

    invariant_factors: IntVec

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def name(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


def weight_quotient(rs: RootSystem) -> AbelianGroupStructure:
    """Weight lattice modulo root lattice: cokernel of the Cartan matrix."""
    return AbelianGroupStructure(cokernel_invariant_factors(rs.cartan))


@dataclass(frozen=True)
class ClassGroupResult:
    group: AbelianGroupStructure
    diagonalizable_rank: int
    method: str

    @property
    def name(self) -> str:
        return self.group.name


def class_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> ClassGroupResult:
    """Divisor class group of the multiplicative invariant algebra.

    Trivial as soon as a diagonalizable reflection exists; otherwise the
    full weight quotient survives.
    """
    diag = diagonalizable_reflection_subgroup(rs, cap)
    if diag.rank == 0:
        return ClassGroupResult(weight_quotient(rs), 0, diag.method)
    return ClassGroupResult(AbelianGroupStructure(()), diag.rank, diag.method)


def class_group_cross_check(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> ClassGroupResult:
    """Recompute via the toric route and insist the two answers agree."""
    res = class_group(rs, cap)
    toric = toric_class_group(family_monoid(rs))
    if toric != res.group.invariant_factors:
        raise AssertionError(
            f"{rs.rtype.name}: reflection route {res.group.invariant_factors} "
            f"!= toric route {toric}"
        )
    return res
