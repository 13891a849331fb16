"""Command-line surface: structured reports, raw Hilbert-basis solving,
relation regeneration, class groups, and a replayable self-check.

All commands print a JSON document with a schema_version field and fully
canonical ordering, so identical invocations produce identical bytes.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

from .classgroup import class_group, class_group_cross_check, weight_quotient
from .errors import (
    DimensionMismatch,
    InvalidRank,
    OrbitCapExceeded,
    RootinvError,
)
from .intlinalg import det_int
from .laurent import LaurentPoly, is_invariant, orbit_sum_weight_coords, render
from .monoids import (
    DEFAULT_BOX_CAP,
    KernelInstance,
    graded_lex_sorted,
    hilbert_basis_box,
    hilbert_basis_kernel,
    parse_instance,
    verify_cell_partition,
)
from .relations import load_fixture, relations_bounded, relations_equivalent, verify_relation
from .reports import (
    InvariantReport,
    e6_residual_hilbert_basis,
    e7_residual_hilbert_basis,
    expected_generator_count_C,
    expected_generator_count_D,
    expected_generators_C,
    expected_generators_D,
    family_monoid,
    omega_expand,
    report_A,
    report_B,
    report_C,
    report_D,
    report_E6,
    report_E7,
    report_selfdual,
    veronese_structure,
)
from .rootsystem import RootSystemType, build
from .weyl import DEFAULT_GROUP_CAP, DEFAULT_ORBIT_CAP, group_order_bfs

SCHEMA_VERSION = "1"

# Shipped relation fixtures, keyed by type name, with the regeneration
# degree bound needed to reach every fixture relation.
_FIXTURES = {"A2": ("a2", 3), "A3": ("a3_magma", 4), "E6": ("e6_magma", 3)}


def _document(command: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload}


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _thread_count() -> int:
    raw = os.environ.get("ROOTINV_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parse_type(args: argparse.Namespace) -> RootSystemType:
    return RootSystemType.parse(args.type, args.rank)


def _report_for(t: RootSystemType) -> InvariantReport:
    if t.family == "A":
        return report_A(t.rank + 1)
    if t.family == "B":
        return report_B(t.rank)
    if t.family == "C":
        return report_C(t.rank)
    if t.family == "D":
        return report_D(t.rank)
    if t.name == "E6":
        return report_E6()
    if t.name == "E7":
        return report_E7()
    return report_selfdual(t.name)


def cmd_info(args: argparse.Namespace) -> int:
    t = _parse_type(args)
    rs = build(t)
    payload = {
        "type": t.name,
        "family": t.family,
        "rank": t.rank,
        "ambient_dimension": rs.ambient_dim,
        "root_count": len(rs.roots),
        "weyl_order": rs.weyl_order,
        "cartan_matrix": [list(r) for r in rs.cartan.rows],
        "cartan_determinant": det_int(rs.cartan),
        "fundamental_weights_alpha": [
            [str(x) for x in w] for w in rs.fundamental_weights_alpha
        ],
        "weight_orders": list(rs.weight_orders),
        "weight_quotient": weight_quotient(rs).name,
    }
    _emit(_document(f"info {t.name}", payload))
    return 0


def _monoid_payload(m) -> dict:
    return {
        "dim": m.dim,
        "congruences": [
            {"coefficients": list(c.coeffs), "modulus": c.modulus} for c in m.congruences
        ],
    }


def cmd_invariants(args: argparse.Namespace) -> int:
    t = _parse_type(args)
    rep = _report_for(t)
    rs = build(t)
    failed = False
    payload = {
        "type": t.name,
        "rank": t.rank,
        "monoid": _monoid_payload(rep.monoid),
        "weight_orders": list(rs.weight_orders),
        "hilbert_basis": [list(v) for v in rep.hilbert_basis],
        "generator_count": rep.generator_count,
        "primary_generators": [list(v) for v in rep.primaries],
        "secondary_generators": [list(v) for v in rep.secondaries],
        "free_coordinates": [i + 1 for i in rep.free_coordinates],
        "polynomial": rep.polynomial,
        "generators": [
            {"name": g.name, "coords": list(g.coords), "role": g.role, "omega": g.omega}
            for g in rep.generators
        ],
        "structure": rep.structure,
        "class_group": rep.class_group_note,
    }
    if rep.laurent_unit is not None:
        payload["laurent_unit"] = rep.laurent_unit
    if rep.residual is not None:
        payload["residual"] = _monoid_payload(rep.residual)
    if args.hironaka:
        payload["hironaka_cells"] = [list(c) for c in rep.cells]
        payload["hironaka_cell_count"] = len(rep.cells)
    if args.relations:
        fixture = _FIXTURES.get(t.name)
        bound = args.degree_bound or (fixture[1] if fixture else 3)
        if rep.residual is not None:
            rel_basis = hilbert_basis_box(rep.residual, args.box_cap).elements
        else:
            rel_basis = rep.hilbert_basis.elements
        rel_basis = graded_lex_sorted(rel_basis)
        rels = relations_bounded(rel_basis, bound)
        block = {
            "degree_bound": bound,
            "generators": [list(v) for v in rel_basis],
            "binomials": [r.format() for r in rels],
            "count": len(rels),
        }
        if fixture:
            fx = load_fixture(fixture[0])
            relabeled = fx.relabeled(rel_basis)
            ok_equiv = relations_equivalent(rels, relabeled, rel_basis, bound)
            ok_verify = all(verify_relation(rel_basis, r) for r in relabeled)
            block["fixture"] = {
                "name": fixture[0],
                "relation_count": len(relabeled),
                "equivalent": ok_equiv,
                "all_relations_verify": ok_verify,
            }
            if not (ok_equiv and ok_verify):
                failed = True
        payload["relations"] = block
    if args.expand:
        expansions = []
        truncated = False
        for g in rep.generators:
            try:
                p = omega_expand(rs, g.coords, args.orbit_cap)
            except OrbitCapExceeded:
                truncated = True
                break
            expansions.append({"name": g.name, "laurent": render(p), "terms": p.nterms})
        payload["expansion"] = expansions
        if truncated:
            payload["expansion_truncated"] = True
    _emit(_document(f"invariants {t.name}", payload))
    return 1 if failed else 0


def cmd_hilbert(args: argparse.Namespace) -> int:
    if args.ker:
        inst = KernelInstance(tuple(int(x) for x in args.ker.split()))
        basis = hilbert_basis_kernel(inst)
        payload = {
            "kind": "kernel",
            "coefficients": list(inst.coeffs),
            "basis": [list(v) for v in basis],
            "count": len(basis),
        }
    else:
        with open(args.monoid) as fh:
            inst = parse_instance(fh.read())
        if isinstance(inst, KernelInstance):
            basis = hilbert_basis_kernel(inst)
            payload = {
                "kind": "kernel",
                "coefficients": list(inst.coeffs),
                "basis": [list(v) for v in basis],
                "count": len(basis),
            }
        else:
            basis = hilbert_basis_box(inst, args.box_cap)
            payload = {
                "kind": "congruence",
                "monoid": _monoid_payload(inst),
                "basis": [list(v) for v in basis],
                "count": len(basis),
            }
    _emit(_document("hilbert", payload))
    return 0


def cmd_classgroup(args: argparse.Namespace) -> int:
    t = _parse_type(args)
    rs = build(t)
    res = class_group_cross_check(rs, args.group_cap)
    payload = {
        "type": t.name,
        "class_group": res.name,
        "invariant_factors": list(res.group.invariant_factors),
        "diagonalizable_reflection_rank": res.diagonalizable_rank,
        "method": res.method,
        "weight_quotient": weight_quotient(rs).name,
        "toric_cross_check": "agree",
    }
    _emit(_document(f"classgroup {t.name}", payload))
    return 0


# ---------------------------------------------------------------------------
# selfcheck


_KERNEL_3VAR = {(1, 1, 1), (3, 0, 1), (0, 3, 2)}
_KERNEL_4VAR = {
    (0, 2, 0, 1),
    (1, 0, 1, 1),
    (2, 1, 0, 1),
    (0, 1, 2, 2),
    (4, 0, 0, 1),
    (0, 0, 4, 3),
}
_KERNEL_E6 = {
    (0, 0, 1, 1, 1),
    (1, 0, 0, 1, 1),
    (0, 1, 1, 0, 1),
    (1, 1, 0, 0, 1),
    (0, 0, 3, 0, 1),
    (1, 0, 2, 0, 1),
    (2, 0, 1, 0, 1),
    (3, 0, 0, 0, 1),
    (0, 0, 0, 3, 2),
    (0, 1, 0, 2, 2),
    (0, 2, 0, 1, 2),
    (0, 3, 0, 0, 2),
}


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def _check_kernel_3var() -> str:
    basis = set(hilbert_basis_kernel(KernelInstance((1, 2, -3))))
    _expect(basis == _KERNEL_3VAR, f"got {sorted(basis)}")
    return "3 vectors"


def _check_kernel_4var() -> str:
    basis = set(hilbert_basis_kernel(KernelInstance((1, 2, 3, -4))))
    _expect(basis == _KERNEL_4VAR, f"got {sorted(basis)}")
    return "6 vectors"


def _check_kernel_e6() -> str:
    basis = set(hilbert_basis_kernel(KernelInstance((1, 2, 1, 2, -3))))
    _expect(basis == _KERNEL_E6, f"got {sorted(basis)}")
    dropped = {v[:-1] for v in basis}
    _expect(dropped == set(e6_residual_hilbert_basis()), "projection mismatch")
    return "12 vectors; projection matches residual basis"


def _check_box_kernel_agreement() -> str:
    for rank in range(2, 7):
        m = family_monoid(build(RootSystemType("A", rank)))
        box = set(hilbert_basis_box(m))
        c = m.congruences[0]
        row = tuple(c.coeffs) + (-c.modulus,)
        lifted = {v[:-1] for v in hilbert_basis_kernel(KernelInstance(row))}
        _expect(box == lifted, f"rank {rank}: box {len(box)} vs kernel {len(lifted)}")
    return "ranks 2..6 agree"


def _check_a2_identities() -> str:
    rs = build(RootSystemType("A", 2))
    mu = omega_expand(rs, (1, 1))
    p1 = omega_expand(rs, (3, 0))
    p2 = omega_expand(rs, (0, 3))
    three = LaurentPoly.constant(mu.ring, 3)
    _expect(mu**3 == p1 * p2, "cubic relation fails")
    _expect(mu - three == orbit_sum_weight_coords(rs, (1, 1)), "six-term root orbit sum")
    _expect(p1 - mu * 3 + three == orbit_sum_weight_coords(rs, (3, 0)), "first corner identity")
    _expect(p2 - mu * 3 + three == orbit_sum_weight_coords(rs, (0, 3)), "second corner identity")
    return "cubic + 3 orbit-sum identities"


def _relation_check(type_name: str) -> str:
    name, bound = _FIXTURES[type_name]
    rep = _report_for(RootSystemType.parse(type_name))
    if rep.residual is not None:
        basis = hilbert_basis_box(rep.residual).elements
    else:
        basis = rep.hilbert_basis.elements
    basis = graded_lex_sorted(basis)
    rels = relations_bounded(basis, bound)
    fx = load_fixture(name).relabeled(basis)
    _expect(all(verify_relation(basis, r) for r in fx), "a fixture relation fails")
    _expect(relations_equivalent(rels, fx, basis, bound), "regeneration not equivalent")
    return f"{len(fx)} fixture relations verified; regeneration of {len(rels)} equivalent"


def _check_relations_a2() -> str:
    return _relation_check("A2")


def _check_relations_a3() -> str:
    return _relation_check("A3")


def _check_relations_e6() -> str:
    return _relation_check("E6")


def _check_generator_counts_C() -> str:
    for n in range(2, 13):
        rep = report_C(n)
        _expect(
            rep.generator_count == expected_generator_count_C(n),
            f"C{n}: {rep.generator_count}",
        )
        want = set(expected_generators_C(n))
        _expect(set(rep.hilbert_basis) == want, f"C{n}: basis mismatch")
    return "n = 2..12"


def _check_generator_counts_D() -> str:
    for n in range(4, 13):
        rep = report_D(n)
        _expect(
            rep.generator_count == expected_generator_count_D(n),
            f"D{n}: {rep.generator_count}",
        )
        want = set(expected_generators_D(n))
        _expect(set(rep.hilbert_basis) == want, f"D{n}: basis mismatch")
    return "n = 4..12"


def _check_e7_veronese() -> str:
    residual = set(e7_residual_hilbert_basis())
    _expect(len(residual) == 6, "residual basis size")
    ver = veronese_structure(3)
    _expect(set(ver.generators) == residual, "not the quadratic Veronese generators")
    rep = report_E7()
    _expect(len(rep.free_coordinates) == 4, "free coordinate count")
    _expect(rep.generator_count == 10, "total generator count")
    return "6 residual generators = Veronese d=3; report 4 free + 6"


def _class_table(include_e7: bool) -> list[tuple[str, str]]:
    table: list[tuple[str, str]] = []
    for r in range(1, 8):
        table.append((f"A{r}", "0" if r == 1 else f"Z/{r + 1}"))
    for n in range(2, 7):
        table.append((f"B{n}", "0"))
    for n in range(2, 7):
        table.append((f"C{n}", "0" if n == 2 else "Z/2"))
    for n in range(4, 8):
        table.append((f"D{n}", "Z/4" if n % 2 else "Z/2 x Z/2"))
    table.append(("E6", "Z/3"))
    if include_e7:
        table.append(("E7", "Z/2"))
    table.extend([("G2", "0"), ("F4", "0"), ("E8", "0")])
    return table


def _check_class_groups(include_e7: bool, group_cap: int) -> str:
    for name, want in _class_table(include_e7):
        rs = build(RootSystemType.parse(name))
        res = class_group_cross_check(rs, group_cap)
        _expect(res.name == want, f"{name}: got {res.name}, want {want}")
    # beyond the scan cap: the sign-change argument must kick in
    for n in (7, 8):
        rs = build(RootSystemType("B", n))
        res = class_group(rs, cap=1000)
        _expect(res.name == "0", f"B{n} fallback: got {res.name}")
        _expect(res.method != "exhaustive-scan", "fallback not exercised")
    return "table verified with toric cross-checks"


def _check_orbit_invariance() -> str:
    systems = [RootSystemType("A", r) for r in range(1, 6)]
    systems += [RootSystemType("B", n) for n in range(2, 6)]
    systems += [RootSystemType("C", n) for n in range(2, 6)]
    systems += [RootSystemType("D", n) for n in range(4, 6)]
    systems.append(RootSystemType("E", 6))
    count = 0
    for t in systems:
        rs = build(t)
        for i in range(rs.rank):
            unit = tuple(1 if j == i else 0 for j in range(rs.rank))
            p = orbit_sum_weight_coords(rs, unit)
            _expect(is_invariant(rs, p), f"{t.name} w{i + 1}")
            count += 1
    return f"{count} fundamental orbit sums invariant"


def _check_hironaka_partition() -> str:
    total = 0
    for t in (
        [RootSystemType("A", r) for r in range(2, 5)]
        + [RootSystemType("C", n) for n in range(2, 7)]
        + [RootSystemType("D", n) for n in range(4, 7)]
    ):
        m = family_monoid(build(t))
        total += verify_cell_partition(m, 10)
    return f"{total} monoid elements reduced to unique cells"


def _check_weyl_e6() -> str:
    n = group_order_bfs(build(RootSystemType("E", 6)))
    _expect(n == 51840, f"got {n}")
    return "|W(E6)| = 51840 by closure"


def _check_weyl_e7() -> str:
    n = group_order_bfs(build(RootSystemType("E", 7)))
    _expect(n == 2903040, f"got {n}")
    return "|W(E7)| = 2903040 by closure"


def _selfcheck_list(include_e7: bool, group_cap: int):
    checks = [
        ("hilbert-kernel-3var", _check_kernel_3var),
        ("hilbert-kernel-4var", _check_kernel_4var),
        ("hilbert-kernel-e6", _check_kernel_e6),
        ("box-kernel-agreement", _check_box_kernel_agreement),
        ("a2-identity-suite", _check_a2_identities),
        ("relations-a2", _check_relations_a2),
        ("relations-a3", _check_relations_a3),
        ("relations-e6", _check_relations_e6),
        ("generator-counts-C", _check_generator_counts_C),
        ("generator-counts-D", _check_generator_counts_D),
        ("e7-residual-veronese", _check_e7_veronese),
        ("class-group-table", lambda: _check_class_groups(include_e7, group_cap)),
        ("orbit-sum-invariance", _check_orbit_invariance),
        ("hironaka-partition", _check_hironaka_partition),
        ("weyl-order-e6", _check_weyl_e6),
    ]
    if include_e7:
        checks.append(("weyl-order-e7", _check_weyl_e7))
    return checks


def _run_check(fn) -> tuple[bool, str]:
    try:
        return True, fn()
    except Exception as exc:  # report, never crash the harness
        return False, f"{type(exc).__name__}: {exc}"


def cmd_selfcheck(args: argparse.Namespace) -> int:
    warnings.filterwarnings("ignore", message=".*isomorphic.*")
    checks = _selfcheck_list(args.include_e7, args.group_cap)
    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_check, fn) for _, fn in checks]
            results = [f.result() for f in futures]
    else:
        results = [_run_check(fn) for _, fn in checks]
    failures = 0
    for (name, _), (ok, detail) in zip(checks, results):
        status = "PASS" if ok else "FAIL"
        if not ok:
            failures += 1
        print(f"{status}  {name}: {detail}")
    print(f"selfcheck: {len(checks) - failures} passed, {failures} failed")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootinv",
        description="Multiplicative invariants of root lattices: exact reports, "
        "Hilbert bases, binomial relations, class groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_type_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("type", help="family letter (A,B,C,D) or fused name (E6, F4, G2)")
        p.add_argument("rank", nargs="?", type=int, default=None, help="rank for letter families")

    p_info = sub.add_parser("info", help="root-system data: roots, Cartan, weights, orders")
    add_type_args(p_info)
    p_info.set_defaults(func=cmd_info)

    p_inv = sub.add_parser("invariants", help="invariant-algebra report for one type")
    add_type_args(p_inv)
    p_inv.add_argument("--expand", action="store_true", help="Laurent expansions of generators")
    p_inv.add_argument("--relations", action="store_true", help="regenerate binomial relations")
    p_inv.add_argument("--hironaka", action="store_true", help="include decomposition cells")
    p_inv.add_argument("--degree-bound", type=int, default=None, metavar="K")
    p_inv.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
    p_inv.add_argument("--box-cap", type=int, default=DEFAULT_BOX_CAP)
    p_inv.set_defaults(func=cmd_invariants)

    p_hil = sub.add_parser("hilbert", help="Hilbert basis of a kernel or congruence monoid")
    src = p_hil.add_mutually_exclusive_group(required=True)
    src.add_argument("--ker", metavar="COEFFS", help='integer row, e.g. "1 2 -3"')
    src.add_argument("--monoid", metavar="FILE", help="instance file")
    p_hil.add_argument("--box-cap", type=int, default=DEFAULT_BOX_CAP)
    p_hil.set_defaults(func=cmd_hilbert)

    p_cg = sub.add_parser("classgroup", help="divisor class group of the invariant algebra")
    add_type_args(p_cg)
    p_cg.add_argument("--group-cap", type=int, default=DEFAULT_GROUP_CAP)
    p_cg.set_defaults(func=cmd_classgroup)

    p_sc = sub.add_parser("selfcheck", help="replay the frozen examples; exit 0 iff all pass")
    p_sc.add_argument("--include-e7", action="store_true", help="also run the heavy enumeration")
    p_sc.add_argument("--group-cap", type=int, default=DEFAULT_GROUP_CAP)
    p_sc.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidRank, DimensionMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except RootinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
