"""Binomial defining relations of monoid algebras, by fiber connectivity.

A relation is a binomial g^plus = g^minus between power products of the
Hilbert-basis generators.  Relation sets are regenerated degree by degree:
whenever two factorizations of the same monoid element are not yet joined
by the relations found so far, a connecting binomial is emitted.  Two
relation sets are considered equivalent when they induce identical
connected-component partitions on every factorization fiber up to the
degree bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from itertools import combinations_with_replacement
from math import comb

from .errors import DimensionMismatch, FiberCapExceeded
from .intlinalg import IntVec
from .monoids import graded_lex_sorted
from .reports import omega_expand
from .rootsystem import RootSystem

DEFAULT_FIBER_CAP = 2_000_000


@dataclass(frozen=True)
class Binomial:
    """Exponent vectors over a fixed generator list; supports are disjoint."""

    plus: IntVec
    minus: IntVec

    def __post_init__(self) -> None:
        if len(self.plus) != len(self.minus):
            raise DimensionMismatch("sides use different generator counts")
        if not any(self.plus) or not any(self.minus):
            raise ValueError("both sides must be nonempty")
        if any(a and b for a, b in zip(self.plus, self.minus)):
            raise ValueError("sides must have disjoint supports")

    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def canonical(self) -> "Binomial":
        a, b = self.plus, self.minus
        ka, kb = (sum(a), a), (sum(b), b)
        return self if ka >= kb else Binomial(b, a)

    def format(self) -> str:
        return f"{_side_str(self.plus)} = {_side_str(self.minus)}"


def _side_str(v: IntVec) -> str:
    bits = []
    for i, e in enumerate(v, start=1):
        if e == 1:
            bits.append(f"g{i}")
        elif e > 1:
            bits.append(f"g{i}^{e}")
    return "·".join(bits)


_TERM_RE = re.compile(r"g(\d+)(?:\^(\d+))?$")


def parse_binomial(line: str, ngens: int) -> Binomial:
    """Parse "g1^2·g3 = g2^4" (ASCII '*' is accepted as the separator)."""
    lhs, _, rhs = line.partition("=")
    if not rhs:
        raise ValueError(f"missing '=' in relation line: {line!r}")
    return Binomial(_parse_side(lhs, ngens), _parse_side(rhs, ngens)).canonical()


def _parse_side(s: str, ngens: int) -> IntVec:
    v = [0] * ngens
    for term in re.split(r"[·*]", s.strip()):
        term = term.strip()
        if not term:
            continue
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad term {term!r}")
        idx = int(m.group(1)) - 1
        if not 0 <= idx < ngens:
            raise ValueError(f"generator index out of range in {term!r}")
        v[idx] += int(m.group(2) or 1)
    return tuple(v)


def verify_relation(basis: tuple[IntVec, ...], rel: Binomial) -> bool:
    """Both sides evaluate to the same monoid element."""
    if len(rel.plus) != len(basis):
        raise DimensionMismatch("relation arity != basis size")
    dim = len(basis[0])
    lhs = tuple(sum(rel.plus[k] * basis[k][i] for k in range(len(basis))) for i in range(dim))
    rhs = tuple(sum(rel.minus[k] * basis[k][i] for k in range(len(basis))) for i in range(dim))
    return lhs == rhs


def verify_relation_laurent(rs: RootSystem, basis: tuple[IntVec, ...], rel: Binomial) -> bool:
    """Both sides expand to the same Laurent polynomial (exact arithmetic)."""
    lhs = rhs = None
    for k, e in enumerate(rel.plus):
        if e:
            p = omega_expand(rs, basis[k]) ** e
            lhs = p if lhs is None else lhs * p
    for k, e in enumerate(rel.minus):
        if e:
            p = omega_expand(rs, basis[k]) ** e
            rhs = p if rhs is None else rhs * p
    return lhs == rhs


def _value(basis: tuple[IntVec, ...], c: tuple[int, ...]) -> IntVec:
    dim = len(basis[0])
    return tuple(sum(c[k] * basis[k][i] for k in range(len(basis))) for i in range(dim))


def _fibers(
    basis: tuple[IntVec, ...], degree_bound: int, fiber_cap: int
) -> list[tuple[IntVec, list[tuple[int, ...]]]]:
    g = len(basis)
    total = sum(comb(d + g - 1, g - 1) for d in range(1, degree_bound + 1))
    if total > fiber_cap:
        raise FiberCapExceeded(f"{total} factorizations at bound {degree_bound}")
    by_value: dict[IntVec, list[tuple[int, ...]]] = {}
    for d in range(1, degree_bound + 1):
        for pick in combinations_with_replacement(range(g), d):
            c = [0] * g
            for k in pick:
                c[k] += 1
            by_value.setdefault(_value(basis, tuple(c)), []).append(tuple(c))
    out = [(val, sorted(facs)) for val, facs in by_value.items() if len(facs) > 1]
    out.sort(key=lambda kv: (min(sum(f) for f in kv[1]), sum(kv[0]), kv[0]))
    return out


def _components(facs: list[tuple[int, ...]], rels: list[Binomial]) -> list[list[tuple[int, ...]]]:
    index = {f: i for i, f in enumerate(facs)}
    parent = list(range(len(facs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for f in facs:
        for rel in rels:
            for src, dst in ((rel.plus, rel.minus), (rel.minus, rel.plus)):
                if all(f[k] >= src[k] for k in range(len(f))):
                    f2 = tuple(f[k] - src[k] + dst[k] for k in range(len(f)))
                    if f2 in index:
                        union(index[f], index[f2])
    comps: dict[int, list[tuple[int, ...]]] = {}
    for f in facs:
        comps.setdefault(find(index[f]), []).append(f)
    out = [sorted(c) for c in comps.values()]
    out.sort(key=lambda c: c[0])
    return out


def relations_bounded(
    basis: tuple[IntVec, ...],
    degree_bound: int,
    fiber_cap: int = DEFAULT_FIBER_CAP,
) -> tuple[Binomial, ...]:
    """Deterministic generating set for all fiber identifications up to the bound."""
    basis = graded_lex_sorted(basis)
    rels: list[Binomial] = []
    for _, facs in _fibers(basis, degree_bound, fiber_cap):
        comps = _components(facs, rels)
        while len(comps) > 1:
            u, v = comps[0][0], comps[1][0]
            w = tuple(min(a, b) for a, b in zip(u, v))
            rels.append(
                Binomial(
                    tuple(a - c for a, c in zip(u, w)),
                    tuple(b - c for b, c in zip(v, w)),
                ).canonical()
            )
            comps = _components(facs, rels)
    return tuple(sorted(rels, key=lambda r: (r.degree(), r.plus, r.minus)))


def relations_equivalent(
    first: tuple[Binomial, ...],
    second: tuple[Binomial, ...],
    basis: tuple[IntVec, ...],
    degree_bound: int,
    fiber_cap: int = DEFAULT_FIBER_CAP,
) -> bool:
    """Same fiber partitions up to the bound."""
    basis = graded_lex_sorted(basis)
    for _, facs in _fibers(basis, degree_bound, fiber_cap):
        c1 = _components(facs, list(first))
        c2 = _components(facs, list(second))
        if c1 != c2:
            return False
    return True


@dataclass(frozen=True)
class RelationFixture:
    """A relation set frozen from a published presentation.

    The generator order of the source is recorded in the file header, so
    the binomials can be permuted onto any canonical basis ordering.
    """

    name: str
    generators: tuple[IntVec, ...]  # source ordering
    relations: tuple[Binomial, ...]  # over the source ordering

    def relabeled(self, target: tuple[IntVec, ...]) -> tuple[Binomial, ...]:
        """Re-express the relations over a different ordering of the same set."""
        if sorted(self.generators) != sorted(target):
            raise DimensionMismatch("fixture and target generator sets differ")
        pos = {g: i for i, g in enumerate(target)}
        perm = [pos[g] for g in self.generators]
        out = []
        for rel in self.relations:
            plus = [0] * len(target)
            minus = [0] * len(target)
            for k, e in enumerate(rel.plus):
                plus[perm[k]] = e
            for k, e in enumerate(rel.minus):
                minus[perm[k]] = e
            out.append(Binomial(tuple(plus), tuple(minus)).canonical())
        return tuple(sorted(out, key=lambda r: (r.degree(), r.plus, r.minus)))


def load_fixture(name: str) -> RelationFixture:
    """Load a named fixture shipped with the package."""
    text = resources.files("rootinv.fixtures").joinpath(f"{name}.relations").read_text()
    return parse_fixture(name, text)


def parse_fixture(name: str, text: str) -> RelationFixture:
    gens: tuple[IntVec, ...] | None = None
    rels: list[Binomial] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("generators:"):
            gens = tuple(
                tuple(int(x) for x in tok.split(",")) for tok in line[len("generators:") :].split()
            )
            continue
        if gens is None:
            raise ValueError("fixture must declare generators before relations")
        rels.append(parse_binomial(line, len(gens)))
    if gens is None:
        raise ValueError("fixture has no generator line")
    return RelationFixture(name, gens, tuple(rels))
