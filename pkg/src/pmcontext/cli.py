"""Command-line driver and the serialization layer.

Subcommands:

* convert  -- read a polyhedron file (H or V) and emit the dual description
* derive   -- run the whole pipeline for a scenario and write all artifacts
* classify -- orbit-classify the rows of a polyhedron file
* quantum  -- correlations, violations and noise thresholds at a given r
* verify   -- run every reproduction check and report pass/fail per check

File formats.  Polyhedra travel in a plain text format: first line "H" or
"V", second line "<rows> <cols>", then one primitive integer row per line
(inequality rows read 0 <= b + a.x with b first; point rows carry the
homogenizing entry first).  Structured artifacts travel as JSON with exact
rationals rendered as "p/q" strings.  All outputs are byte-deterministic:
rows are canonically sorted and JSON keys are sorted.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import dualdesc, quantum, symmetry
from .correlation import (
    CLASS_I_MAX_QUANTUM,
    CLASS_II_ALL_PLUS,
    CLASS_I_REPRESENTATIVE,
    TRIVIAL_REPRESENTATIVE,
    ClassifiedOrbit,
    CorrelationPoint,
    Inequality,
    InequalityClass,
    classify_inequalities,
    correlation_vertices,
    derive_inequalities,
    evaluate,
    is_class_i_pattern,
    is_class_ii_pattern,
    is_trivial_pattern,
    logically_possible_sign_matrices,
    pair_vertices,
    verify_trivial_class,
)
from .exactgeom import HomogeneousVector, HRep, VectorKind, VRep, from_integer_entries
from .scenario import (
    Context,
    DeterministicAssignment,
    Role,
    Scenario,
    all_deterministic_assignments,
    build_assignment_polytope,
    check_deterministic_assignment,
    peres_mermin,
)
from .simplex import lp_maximize

# --- text format ------------------------------------------------------------

def dump_polyhedron(rep: HRep | VRep) -> str:
    tag = "H" if isinstance(rep, HRep) else "V"
    lines = [tag, f"{len(rep.rows)} {rep.dimension + 1}"]
    lines += [" ".join(str(e) for e in row.entries) for row in rep.rows]
    return "\n".join(lines) + "\n"


def load_polyhedron(text: str) -> HRep | VRep:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() not in ("H", "V"):
        raise ValueError("polyhedron files start with a line 'H' or 'V'")
    kind = VectorKind.INEQUALITY if lines[0].strip() == "H" else VectorKind.POINT
    nrows, ncols = (int(x) for x in lines[1].split())
    rows = []
    for ln in lines[2 : 2 + nrows]:
        entries = [int(x) for x in ln.split()]
        if len(entries) != ncols:
            raise ValueError(f"expected {ncols} entries per row, got {len(entries)}")
        rows.append(from_integer_entries(entries, kind))
    if len(rows) != nrows:
        raise ValueError(f"expected {nrows} rows, found {len(rows)}")
    cls = HRep if kind is VectorKind.INEQUALITY else VRep
    return cls.from_rows(rows)


# --- JSON layer -------------------------------------------------------------

def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def scenario_to_json(s: Scenario) -> dict:
    return {
        "name": s.name,
        "shape": list(s.shape),
        "contexts": [
            {"cells": [list(c) for c in ctx.cells], "parity": ctx.parity}
            for ctx in s.contexts
        ],
    }


def scenario_from_json(data: dict) -> Scenario:
    contexts = tuple(
        Context(tuple(tuple(c) for c in ctx["cells"]), ctx["parity"])
        for ctx in data["contexts"]
    )
    return Scenario(data["name"], tuple(data["shape"]), contexts)


def rep_to_json(rep: HRep | VRep) -> dict:
    return {
        "kind": "H" if isinstance(rep, HRep) else "V",
        "dimension": rep.dimension,
        "rows": [list(row.entries) for row in rep.rows],
    }


def rep_from_json(data: dict) -> HRep | VRep:
    kind = VectorKind.INEQUALITY if data["kind"] == "H" else VectorKind.POINT
    rows = [from_integer_entries(r, kind) for r in data["rows"]]
    cls = HRep if data["kind"] == "H" else VRep
    return cls.from_rows(rows)


def inequality_to_json(iq: Inequality, orbit: int | None = None) -> dict:
    data = {
        "alpha": [list(r) for r in iq.alpha],
        "beta": iq.beta,
        "class": iq.klass.value if iq.klass else None,
    }
    if orbit is not None:
        data["orbit"] = orbit
    return data


def inequality_from_json(data: dict) -> Inequality:
    klass = InequalityClass(data["class"]) if data.get("class") else None
    return Inequality.from_matrix(data["alpha"], data["beta"], klass)


def correlation_point_to_json(pt: CorrelationPoint) -> list[list[str]]:
    return [[_frac_str(x) for x in row] for row in pt.omega]


def correlation_point_from_json(data) -> CorrelationPoint:
    return CorrelationPoint.from_matrix([[Fraction(x) for x in row] for row in data])


# --- quantum report ---------------------------------------------------------

@dataclass(frozen=True)
class QuantumReport:
    strength: Fraction
    omegas: CorrelationPoint
    violated: tuple[Inequality, ...]
    thresholds: tuple[tuple[Inequality, Fraction | None], ...]


def quantum_report(strength, inequalities) -> QuantumReport:
    r = quantum.DepolarizingStrength.of(strength)
    omegas = quantum.correlations(r)
    violated = tuple(iq for iq in inequalities if evaluate(iq, omegas)[1])
    thresholds = tuple((iq, quantum.noise_threshold(iq)) for iq in inequalities)
    return QuantumReport(r.r, omegas, violated, thresholds)


def quantum_report_to_json(report: QuantumReport) -> dict:
    def threshold_entry(iq, r2):
        entry = inequality_to_json(iq)
        entry["r_squared"] = _frac_str(r2) if r2 is not None else None
        # decimal renderings are display-only; the exact value is the rational
        entry["r_decimal"] = f"{math.sqrt(r2):.5f}" if r2 is not None else None
        return entry

    return {
        "r": _frac_str(report.strength),
        "r2": _frac_str(report.strength * report.strength),
        "omegas": correlation_point_to_json(report.omegas),
        "violations": [inequality_to_json(iq) for iq in report.violated],
        "thresholds": [threshold_entry(iq, r2) for iq, r2 in report.thresholds],
    }


# --- pipeline ---------------------------------------------------------------

@dataclass(frozen=True)
class PipelineResult:
    scenario: Scenario
    assignment_hrep: HRep
    assignment_vertices: VRep
    vertex_orbit_sizes: tuple[int, ...]
    assignment_group_order: int
    correlation_vrep: VRep
    correlation_hrep: HRep
    inequalities: tuple[Inequality, ...]
    facet_orbits: tuple[ClassifiedOrbit, ...]
    correlation_group_order: int
    quantum: QuantumReport


def run_pipeline(scenario: Scenario | None = None) -> PipelineResult:
    scenario = scenario or peres_mermin()
    hrep = build_assignment_polytope(Role.MEASUREMENT, scenario)
    vertices = dualdesc.facets_to_vertices(hrep)
    a_group = symmetry.close_generators(symmetry.assignment_symmetry_generators(), hrep)
    vertex_orbits = symmetry.orbits([v.coords for v in vertices.rows], a_group)
    corr_vertices = correlation_vertices(vertices, vertices)
    inequalities = tuple(derive_inequalities(corr_vertices))
    hrep_rows = []
    for iq in inequalities:
        coeffs = [iq.beta] + [-x for x in iq.coefficient_vector()]
        hrep_rows.append(from_integer_entries(coeffs, VectorKind.INEQUALITY))
    corr_hrep = HRep.from_rows(hrep_rows)
    w_group = symmetry.close_generators(symmetry.correlation_symmetry_generators(), corr_hrep)
    facet_orbits = tuple(classify_inequalities(inequalities, w_group))
    q_report = quantum_report(Fraction(1), inequalities)
    return PipelineResult(
        scenario=scenario,
        assignment_hrep=hrep,
        assignment_vertices=vertices,
        vertex_orbit_sizes=tuple(sorted(o.size for o in vertex_orbits)),
        assignment_group_order=len(a_group),
        correlation_vrep=corr_vertices,
        correlation_hrep=corr_hrep,
        inequalities=inequalities,
        facet_orbits=facet_orbits,
        correlation_group_order=len(w_group),
        quantum=q_report,
    )


def pipeline_to_json(result: PipelineResult) -> dict:
    orbit_of = {}
    for idx, orbit in enumerate(result.facet_orbits):
        for iq in orbit.members:
            orbit_of[iq.coefficient_vector()] = idx
    return {
        "scenario": scenario_to_json(result.scenario),
        "hreps": {
            "assignment": rep_to_json(result.assignment_hrep),
            "correlation": rep_to_json(result.correlation_hrep),
        },
        "vreps": {
            "assignment": rep_to_json(result.assignment_vertices),
            "correlation": rep_to_json(result.correlation_vrep),
        },
        "inequalities": [
            inequality_to_json(iq, orbit_of[iq.coefficient_vector()])
            for iq in result.inequalities
        ],
        "symmetry": {
            "groups": {
                "assignment_order": result.assignment_group_order,
                "correlation_order": result.correlation_group_order,
            },
            "orbits": {
                "assignment_vertices": list(result.vertex_orbit_sizes),
                "correlation_facets": [
                    {
                        "class": orbit.klass.value if orbit.klass else None,
                        "beta": orbit.beta,
                        "size": orbit.size,
                        "representative": inequality_to_json(orbit.representative),
                    }
                    for orbit in result.facet_orbits
                ],
            },
        },
        "quantum": quantum_report_to_json(result.quantum),
    }


def write_artifacts(result: PipelineResult, out_dir: Path, fmt: str = "text") -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name: str, text: str):
        path = out_dir / name
        path.write_text(text)
        written.append(path)

    if fmt in ("text", "both"):
        emit("assignment.hrep", dump_polyhedron(result.assignment_hrep))
        emit("assignment.vrep", dump_polyhedron(result.assignment_vertices))
        emit("correlation.vrep", dump_polyhedron(result.correlation_vrep))
        emit("correlation.hrep", dump_polyhedron(result.correlation_hrep))
    emit("report.json", json.dumps(pipeline_to_json(result), indent=2, sort_keys=True) + "\n")
    return written


# --- verification -----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: str
    computed: str


def _check(name, expected, computed) -> Check:
    return Check(name, expected == computed, repr(expected), repr(computed))


def _kappa_matrices():
    cross = (0, 0, -1, 0, 0, 1, 1, 1, 1)  # one signed row plus one signed column
    monomial = (0, 0, 1, 1, 0, 0, 0, -1, 0)  # one signed cell per row and column
    return cross, monomial


def verify_all(only: str | None = None, rng_seed: int = 20240) -> list[Check]:
    """Every reproduction check, as named pass/fail records."""
    checks: list[Check] = []
    result = run_pipeline()
    inequalities = result.inequalities

    # 1. assignment polytope counts
    checks.append(_check("assignment-facet-count", 24, len(result.assignment_hrep.rows)))
    checks.append(_check("assignment-vertex-count", 120, len(result.assignment_vertices.rows)))
    entries = {x for row in result.assignment_vertices.rows for x in row.coords}
    checks.append(_check("assignment-vertex-entries", True, entries <= {-1, 0, 1}))

    # 2. vertex symmetry classes
    checks.append(_check("vertex-orbit-sizes", (48, 72), result.vertex_orbit_sizes))
    cross, monomial = _kappa_matrices()
    a_group = symmetry.close_generators(
        symmetry.assignment_symmetry_generators(), result.assignment_hrep
    )
    vertex_orbits = symmetry.orbits(
        [v.coords for v in result.assignment_vertices.rows], a_group
    )
    orbit_size_of = {}
    for orbit in vertex_orbits:
        for member in orbit.members:
            orbit_size_of[member] = orbit.size
    checks.append(_check("cross-vertex-in-72-class", 72, orbit_size_of.get(cross)))
    checks.append(_check("monomial-vertex-in-48-class", 48, orbit_size_of.get(monomial)))

    # 3. correlation vertices
    pairings = pair_vertices(result.assignment_vertices, result.assignment_vertices)
    checks.append(_check("pairing-count", 14400, len(pairings)))
    checks.append(_check("correlation-vertex-count", 120, len(result.correlation_vrep.rows)))
    cross_product = tuple(x * x for x in cross)
    vertex_set = {v.coords for v in result.correlation_vrep.rows}
    checks.append(_check("cross-self-product-kept", True, cross_product in vertex_set))
    mixed = tuple(a * b for a, b in zip(cross, monomial))
    checks.append(_check("cross-monomial-product-filtered", True, mixed not in vertex_set))

    # 4. facet enumeration
    checks.append(_check("facet-count", 184, len(inequalities)))
    alpha_entries = {x for iq in inequalities for x in iq.coefficient_vector()}
    checks.append(_check("facet-alpha-entries", True, alpha_entries <= {-1, 0, 1}))
    betas = sorted({iq.beta for iq in inequalities})
    checks.append(_check("facet-beta-values", [1, 3, 5], betas))
    sizes = {orbit.beta: orbit.size for orbit in result.facet_orbits}
    checks.append(_check("facet-orbit-sizes", {1: 24, 3: 144, 5: 16}, sizes))
    plain = {(iq.alpha, iq.beta) for iq in inequalities}
    for name, rep in (
        ("trivial-representative-present", TRIVIAL_REPRESENTATIVE),
        ("class1-representative-present", CLASS_I_REPRESENTATIVE),
        ("class1-max-quantum-present", CLASS_I_MAX_QUANTUM),
        ("class2-all-plus-present", CLASS_II_ALL_PLUS),
    ):
        checks.append(_check(name, True, (rep.alpha, rep.beta) in plain))

    # 5. no deterministic assignment satisfies all contexts
    totals = {"valid": 0, "five": 0}
    for assignment in all_deterministic_assignments():
        violated = check_deterministic_assignment(assignment)
        if not violated:
            totals["valid"] += 1
        if len(violated) == 1:
            totals["five"] += 1
    checks.append(_check("no-valid-deterministic-assignment", 0, totals["valid"]))
    checks.append(_check("some-assignment-misses-one-context", True, totals["five"] > 0))

    # 6. the bound-1 facets are insensitive to contextuality
    trivial_report = verify_trivial_class(inequalities)
    checks.append(_check("logical-sign-matrix-count", 16, len(trivial_report.logical_vertices)))
    checks.append(_check("trivial-facets-hold-logically", True, trivial_report.trivial_bound_holds))
    checks.append(
        _check("nontrivial-facets-all-violable", True, trivial_report.nontrivial_all_violated)
    )

    # 7. ideal quantum realization
    ideal = quantum.correlations(Fraction(1))
    checks.append(
        _check("ideal-correlations-all-one", True, all(x == 1 for x in ideal.as_vector()))
    )
    checks.append(_check("class1-max-ideal-value", Fraction(5), evaluate(CLASS_I_MAX_QUANTUM, ideal)[0]))
    checks.append(_check("class2-ideal-value", Fraction(9), evaluate(CLASS_II_ALL_PLUS, ideal)[0]))
    checks.append(_check("ideal-violates-class1-max", True, evaluate(CLASS_I_MAX_QUANTUM, ideal)[1]))
    checks.append(_check("ideal-violates-class2", True, evaluate(CLASS_II_ALL_PLUS, ideal)[1]))

    # 8. noise robustness
    checks.append(
        _check("class1-threshold", Fraction(3, 5), quantum.noise_threshold(CLASS_I_MAX_QUANTUM))
    )
    checks.append(
        _check("class2-threshold", Fraction(5, 9), quantum.noise_threshold(CLASS_II_ALL_PLUS))
    )
    noisy = quantum.correlations(Fraction(3, 4))
    checks.append(
        _check("three-quarters-omegas", True, all(x == Fraction(9, 16) for x in noisy.as_vector()))
    )
    checks.append(_check("three-quarters-violates-class2", True, evaluate(CLASS_II_ALL_PLUS, noisy)[1]))
    checks.append(
        _check("three-quarters-spares-class1-max", False, evaluate(CLASS_I_MAX_QUANTUM, noisy)[1])
    )

    # 9. the parity-weighted product sum
    checks.append(_check("product-sum-under-identities", 6, quantum.context_product_sum()))
    best = -10
    best_valid = False
    for assignment in all_deterministic_assignments():
        value = quantum.context_product_sum(assignment)
        if value > best:
            best = value
            best_valid = not check_deterministic_assignment(assignment)
        elif value == best:
            best_valid = best_valid or not check_deterministic_assignment(assignment)
    checks.append(_check("product-sum-max-over-assignments", 4, best))
    checks.append(_check("product-sum-maximizers-all-invalid", False, best_valid))

    # 10. round trips and the brute-force oracle
    checks.append(
        _check("assignment-roundtrip", True, dualdesc.roundtrip_check(result.assignment_hrep))
    )
    import random

    rng = random.Random(rng_seed)
    roundtrips = 0
    oracle_matches = 0
    trials = 25
    for _ in range(trials):
        hrep = _random_small_polytope(rng)
        if dualdesc.roundtrip_check(hrep):
            roundtrips += 1
        vertices = dualdesc.facets_to_vertices(hrep)
        expected = _brute_force_vertices(hrep)
        if {v.entries for v in vertices.rows} == expected:
            oracle_matches += 1
    checks.append(_check("random-polytope-roundtrips", trials, roundtrips))
    checks.append(_check("random-polytope-oracle-matches", trials, oracle_matches))

    # 11. the two symmetry-group constructions coincide
    w_group = symmetry.close_generators(
        symmetry.correlation_symmetry_generators(), result.correlation_hrep
    )
    relabelings = symmetry.enumerate_relabelings()
    induced = relabelings.induced_correlation_group()
    checks.append(_check("sign-product-sets-agree", True, relabelings.sign_products_agree))
    checks.append(_check("correlation-group-equality", True, set(w_group) == induced))
    preserved = all(symmetry.preserves(g, result.correlation_hrep) for g in induced)
    checks.append(_check("induced-group-preserves-facets", True, preserved))

    if only:
        checks = [c for c in checks if only in c.name]
    return checks


def _random_small_polytope(rng) -> HRep:
    """A bounded, full-dimensional, irredundant H-rep with d <= 4, <= 12 facets."""
    while True:
        d = rng.randint(2, 4)
        rows = []
        for axis in range(d):
            for sign in (1, -1):
                coeffs = [0] * (d + 1)
                coeffs[0] = rng.randint(1, 3)
                coeffs[1 + axis] = sign
                rows.append(tuple(coeffs))
        for _ in range(rng.randint(0, 12 - len(rows))):
            coeffs = [rng.randint(1, 4)] + [rng.randint(-2, 2) for _ in range(d)]
            if any(coeffs[1:]):
                rows.append(tuple(coeffs))
        hrep = HRep.from_rows(
            [from_integer_entries(r, VectorKind.INEQUALITY) for r in rows]
        )
        # drop redundant rows so the round trip can reproduce the input exactly
        kept = []
        for i, row in enumerate(hrep.rows):
            others = [r.entries for j, r in enumerate(hrep.rows) if j != i]
            from .simplex import in_cone

            if not in_cone(row.entries, others).inside:
                kept.append(row)
        if len(kept) < d + 1:
            continue
        trimmed = HRep.from_rows(kept)
        if dualdesc.affine_dimension(dualdesc.facets_to_vertices(trimmed).points()) == d:
            return trimmed


def _brute_force_vertices(hrep: HRep) -> set:
    """Oracle: intersect every d-subset of facets and keep feasible solutions."""
    from itertools import combinations

    from . import linalg

    d = hrep.dimension
    rows = [r.entries for r in hrep.rows]
    found = set()
    for subset in combinations(rows, d):
        mat = [[Fraction(r[1 + j]) for j in range(d)] for r in subset]
        rhs = [Fraction(-r[0]) for r in subset]
        if linalg.rank(mat) < d:
            continue
        x = linalg.solve(mat, rhs)
        if x is None:
            continue
        if all(r[0] + sum(r[1 + j] * x[j] for j in range(d)) >= 0 for r in rows):
            denom = 1
            for f in x:
                denom = denom * f.denominator // math.gcd(denom, f.denominator)
            found.add(tuple([denom] + [int(f * denom) for f in x]))
    return found


# --- artifact comparison (fault injection surface) --------------------------

def verify_artifacts(result: PipelineResult, out_dir: Path) -> list[Check]:
    expected = {
        "assignment.hrep": dump_polyhedron(result.assignment_hrep),
        "assignment.vrep": dump_polyhedron(result.assignment_vertices),
        "correlation.vrep": dump_polyhedron(result.correlation_vrep),
        "correlation.hrep": dump_polyhedron(result.correlation_hrep),
    }
    checks = []
    for name, text in expected.items():
        path = out_dir / name
        if not path.exists():
            checks.append(Check(f"artifact:{name}", False, "file present", "missing"))
            continue
        actual = path.read_text()
        checks.append(
            Check(
                f"artifact:{name}",
                actual == text,
                "canonical file contents",
                "match" if actual == text else "mismatch",
            )
        )
    return checks


# --- entry points -----------------------------------------------------------

def _load_scenario(spec: str) -> Scenario:
    if spec == "peres-mermin":
        return peres_mermin()
    return scenario_from_json(json.loads(Path(spec).read_text()))


def _cmd_convert(args) -> int:
    rep = load_polyhedron(Path(args.input).read_text())
    if isinstance(rep, HRep):
        out = dualdesc.facets_to_vertices(rep)
        text = dump_polyhedron(out)
    else:
        enumeration = dualdesc.vertices_to_facets(rep)
        text = dump_polyhedron(enumeration.facets)
        if enumeration.equalities:
            eq_lines = ["E", f"{len(enumeration.equalities)} {rep.dimension + 1}"]
            eq_lines += [" ".join(str(e) for e in row.entries) for row in enumeration.equalities]
            text += "\n".join(eq_lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_derive(args) -> int:
    scenario = _load_scenario(args.scenario)
    result = run_pipeline(scenario)
    out_dir = Path(args.out)
    write_artifacts(result, out_dir, fmt=args.format)
    sizes = {orbit.beta: orbit.size for orbit in result.facet_orbits}
    summary = "/".join(str(sizes[beta]) for beta in sorted(sizes))
    print(f"{len(result.inequalities)} inequalities, classes {summary}")
    failures = [c for c in verify_artifacts(result, out_dir) if not c.passed]
    if scenario.name == "peres-mermin":
        failures += [c for c in verify_all(only="count") if not c.passed]
    for c in failures:
        print(f"FAIL {c.name}: expected {c.expected}, computed {c.computed}")
    return 1 if failures else 0


def _cmd_classify(args) -> int:
    rep = load_polyhedron(Path(args.input).read_text())
    if isinstance(rep, VRep):
        generators = symmetry.assignment_symmetry_generators()
        items = [row.coords for row in rep.rows]
    else:
        generators = symmetry.correlation_symmetry_generators()
        items = [tuple(-x for x in row.coords) for row in rep.rows]
    group = symmetry.close_generators(generators, rep)
    classes = symmetry.orbits(items, group)
    payload = {
        "group_order": len(group),
        "orbits": [
            {"size": orbit.size, "representative": list(orbit.representative)}
            for orbit in classes
        ],
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_quantum(args) -> int:
    strength = Fraction(args.r)
    inequalities = derive_inequalities()
    report = quantum_report(strength, inequalities)
    payload = quantum_report_to_json(report)
    if args.format == "text":
        lines = [f"r = {payload['r']}, r^2 = {payload['r2']}"]
        lines.append("omegas:")
        for row in payload["omegas"]:
            lines.append("  " + " ".join(row))
        lines.append(f"violated inequalities: {len(report.violated)} of {len(inequalities)}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    checks = verify_all(only=args.only)
    if args.artifacts:
        result = run_pipeline()
        artifact_checks = verify_artifacts(result, Path(args.artifacts))
        if args.only:
            artifact_checks = [c for c in artifact_checks if args.only in c.name]
        checks += artifact_checks
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: expected {c.expected}, computed {c.computed}")
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pmcontext",
        description="Exact polyhedral analysis of the operational Peres-Mermin scenario.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="cap on worker threads for stage internals (current stages are "
        "sequential; outputs are identical for any value)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert a polyhedron file to its dual description")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("derive", help="run the full pipeline and write artifacts")
    p.add_argument("--scenario", default="peres-mermin", help="'peres-mermin' or a scenario JSON file")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["text", "json", "both"], default="both")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("classify", help="orbit-classify the rows of a polyhedron file")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("quantum", help="correlations and violations at depolarizing strength r")
    p.add_argument("--r", required=True, help="rational strength, e.g. 3/4")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_quantum)

    p = sub.add_parser("verify", help="run every reproduction check")
    p.add_argument("--only", help="restrict to checks whose name contains this substring")
    p.add_argument("--artifacts", help="also compare artifact files in this directory")
    p.set_defaults(func=_cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
