"""Scenario runner: ``analyze <scenario.toml> [--json out] [--seed n] ...``.

A scenario is a TOML file with a ``[scenario]`` header (field, seed), named
``[algebras.*]``, ``[groups.*]``, ``[actions.*]`` and ``[morphisms.*]``
tables, and an ordered ``[[tasks]]`` array.  Exit code 0 means every task
ended with its expected status, 1 means some did not, 2 is a usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .algmod import (
    AlgebraMorphism,
    AxiomError,
    FiniteGroup,
    GroupAction,
    field_algebra,
    flatness_report,
    function_algebra,
    group_algebra,
    groupoid_algebra,
    hom_space,
    product_algebra,
    quotient_ring,
    Algebra,
)
from .chainhom import (
    amitsur_comparison,
    derived_descent_check,
    equivariant_comparison,
    sample_complexes,
)
from .comonad import ExtensionAdjunction, beck_report, check_comodule, default_base_samples
from .cosimp import (
    KernCategory,
    action_nerve_tcc,
    amitsur_tcc,
    canonical_comparison,
    check_A1_A2,
    check_descent_theta,
    check_family,
    family_to_theta,
    hom_descent,
    standard_samples,
    theta_to_family,
)
from .descent import (
    FAULTS,
    equivariant_iso_classes,
    equivariant_kern_bridge,
    h_from_theta,
    inject_fault,
    kern_rank_one_data,
    maschke_split,
    random_descent_data,
    rank_one_data,
    scdt_analyze,
    theta_from_h,
)
from .exactlin import GF, QQ, ExactMatrix, FieldSpec

log = logging.getLogger("codescent.cli")

STATUSES = ("pass", "fail", "counterexample", "not-applicable")


class ScenarioError(Exception):
    """Malformed scenario: bad syntax, unknown names or invalid constructions."""


def parse_field(text: str) -> FieldSpec:
    t = str(text).strip().upper().replace(" ", "")
    if t in ("QQ", "Q"):
        return QQ
    digits = None
    for prefix in ("GF(", "F("):
        if t.startswith(prefix) and t.endswith(")"):
            digits = t[len(prefix):-1]
    if t.startswith("GF") and t[2:].isdigit():
        digits = t[2:]
    if digits is None or not digits.isdigit():
        raise ScenarioError(f"unknown field {text!r}")
    try:
        return GF(int(digits))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def matrix_grid(m: ExactMatrix) -> list[list[str]]:
    return [[m.field.format(x) for x in m.row(i)] for i in range(m.rows)]


@dataclass
class TaskRecord:
    name: str
    status: str
    expect: str = "pass"
    details: dict = dc_field(default_factory=dict)
    dims: list = dc_field(default_factory=list)
    witness: object = None
    seconds: float = 0.0  # human output only

    @property
    def met(self) -> bool:
        return self.status == self.expect or (self.status == "not-applicable" and self.expect == "pass")

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "expect": self.expect,
                "details": self.details, "dims": self.dims, "witness": self.witness}

    @classmethod
    def from_dict(cls, d: dict) -> "TaskRecord":
        return cls(d["name"], d["status"], d.get("expect", "pass"), d.get("details", {}),
                   d.get("dims", []), d.get("witness"))


@dataclass
class Report:
    scenario: str
    seed: int
    tasks: list

    @property
    def ok(self) -> bool:
        return all(t.met for t in self.tasks)

    def to_dict(self) -> dict:
        return {"scenario": self.scenario, "seed": self.seed, "tasks": [t.to_dict() for t in self.tasks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(d["scenario"], d["seed"], [TaskRecord.from_dict(t) for t in d["tasks"]])

    def __eq__(self, other):
        return isinstance(other, Report) and self.to_dict() == other.to_dict()


class Scenario:
    """Resolved constructions from a scenario document."""

    def __init__(self, doc: dict, name: str = ""):
        head = doc.get("scenario", {})
        self.name = head.get("name", name)
        self.seed = int(head.get("seed", 0))
        self.field = parse_field(head.get("field", "QQ"))
        self.level = int(head.get("level", 3))
        self.max_dim = int(head.get("max_dim", 4))
        self.groups: dict = {}
        self.actions: dict = {}
        self.algebras: dict = {}
        self.morphisms: dict = {}
        for key, spec in doc.get("groups", {}).items():
            self.groups[key] = self._group(key, spec)
        for key, spec in doc.get("actions", {}).items():
            self.actions[key] = self._action(key, spec)
        self._pending = dict(doc.get("algebras", {}))
        for key in list(self._pending):
            self.algebra(key)
        for key, spec in doc.get("morphisms", {}).items():
            self.morphisms[key] = self._morphism(key, spec)
        self.tasks = list(doc.get("tasks", []))
        for i, t in enumerate(self.tasks):
            if "name" not in t:
                raise ScenarioError(f"task {i} has no name")
            if t.get("expect", "pass") not in STATUSES:
                raise ScenarioError(f"task {i}: unknown expected status {t['expect']!r}")

    @classmethod
    def load(cls, path: str | Path) -> "Scenario":
        path = Path(path)
        try:
            doc = tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as exc:
            raise ScenarioError(f"{path}: {exc}") from exc
        try:
            return cls(doc, path.stem)
        except AxiomError as exc:
            raise ScenarioError(f"{path}: invalid construction: {exc}") from exc
        except KeyError as exc:
            raise ScenarioError(f"{path}: missing key {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"{path}: {exc}") from exc

    def scalar(self, x):
        if isinstance(x, str) and "/" in x:
            p, q = x.split("/")
            return self.field.div(self.field(int(p)), self.field(int(q)))
        return self.field(int(x))

    def _group(self, key, spec) -> FiniteGroup:
        kind = spec.get("kind")
        if kind == "cyclic":
            return FiniteGroup.cyclic(int(spec["order"]))
        if kind == "symmetric3":
            return FiniteGroup.symmetric3()
        if kind == "trivial":
            return FiniteGroup.trivial()
        raise ScenarioError(f"group {key!r}: unknown kind {kind!r}")

    def _lookup(self, table: dict, key: str, what: str):
        if key not in table:
            raise ScenarioError(f"unknown {what} {key!r}")
        return table[key]

    def _action(self, key, spec) -> GroupAction:
        G = self._lookup(self.groups, spec.get("group"), "group")
        kind = spec.get("kind", "trivial")
        if kind == "trivial":
            return GroupAction.trivial(G, int(spec.get("points", 1)))
        if kind == "regular":
            return GroupAction.regular(G)
        raise ScenarioError(f"action {key!r}: unknown kind {kind!r}")

    def algebra(self, key: str) -> Algebra:
        if key in self.algebras:
            return self.algebras[key]
        spec = self._lookup(self._pending, key, "algebra")
        F = self.field
        kind = spec.get("kind")
        if kind == "field":
            A = field_algebra(F)
        elif kind == "quotient_ring":
            A = quotient_ring(F, [self.scalar(c) for c in spec["coeffs"]], name=key)
        elif kind == "product":
            A, projs = product_algebra([self.algebra(k) for k in spec["factors"]], name=key)
            for i, p in enumerate(projs):
                self.morphisms[f"{key}.pr{i}"] = p
        elif kind == "functions":
            A = function_algebra(F, int(spec["points"]), name=key)
        elif kind == "group_algebra":
            A = group_algebra(self._lookup(self.groups, spec["group"], "group"), F)
        elif kind == "groupoid":
            A = groupoid_algebra(self._lookup(self.actions, spec["action"], "action"), F)
        elif kind == "structure":
            table = [[[self.scalar(c) for c in v] for v in row] for row in spec["table"]]
            A = Algebra(F, table, [self.scalar(c) for c in spec["unit"]], name=key)
        else:
            raise ScenarioError(f"algebra {key!r}: unknown kind {kind!r}")
        self.algebras[key] = A
        return A

    def _morphism(self, key, spec) -> AlgebraMorphism:
        kind = spec.get("kind")
        if kind == "structure_map":
            return AlgebraMorphism.structure_map(self.algebra(spec["target"]))
        if kind == "identity":
            return AlgebraMorphism.identity(self.algebra(spec["algebra"]))
        if kind == "projection":
            self.algebra(spec["product"])
            return self._lookup(self.morphisms, f"{spec['product']}.pr{int(spec['index'])}", "projection")
        if kind == "explicit":
            S, T = self.algebra(spec["source"]), self.algebra(spec["target"])
            rows = [[self.scalar(c) for c in r] for r in spec["matrix"]]
            return AlgebraMorphism(S, T, ExactMatrix.from_rows(self.field, rows, S.dim))
        raise ScenarioError(f"morphism {key!r}: unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# tasks


def _morphism_of(sc: Scenario, task: dict) -> AlgebraMorphism:
    return sc._lookup(sc.morphisms, task.get("morphism", ""), "morphism")


def task_analyze(sc: Scenario, task: dict, opts) -> TaskRecord:
    phi = _morphism_of(sc, task)
    fr = flatness_report(phi)
    rep = scdt_analyze(phi)
    details = {"flat": bool(fr.flat), "faithfully_flat": bool(fr.faithfully_flat),
               "free_rank": None if fr.free_rank is None else str(fr.free_rank),
               "method": rep.method, "rank": rep.rank, "splits": rep.splits, "notes": list(rep.notes)}
    witness = matrix_grid(rep.unit_splits.matrix) if rep.splits else None
    status = "pass" if rep.descent_type and fr.faithfully_flat else "counterexample"
    return TaskRecord("analyze", status, details=details, witness=witness)


def task_beck(sc: Scenario, task: dict, opts) -> TaskRecord:
    phi = _morphism_of(sc, task)
    rep = beck_report(ExtensionAdjunction(phi), seed=opts.seed, max_dim=opts.max_dim)
    return TaskRecord("beck", "pass" if rep.ok else "counterexample", details=rep.summary())


def task_kern(sc: Scenario, task: dict, opts) -> TaskRecord:
    phi = _morphism_of(sc, task)
    tcc = amitsur_tcc(phi, opts.level)
    samples = default_base_samples(phi.source, opts.max_dim)
    objs = [canonical_comparison(tcc, H) for H in samples]
    bad = [i for i, o in enumerate(objs) if not check_descent_theta(tcc, o)]
    families = 0
    for o in objs:
        fam = theta_to_family(tcc, o, top=3)
        if not check_family(fam) or family_to_theta(fam).theta.matrix != o.theta.matrix:
            bad.append(len(objs) + families)
        families += 1
    dims = []
    for i, H1 in enumerate(samples):
        for j, H2 in enumerate(samples):
            dims.append([i, j, hom_space(H1, H2).dim, hom_descent(objs[i], objs[j]).dim])
    classes = KernCategory(tcc).iso_classes(objs)
    agree = all(a == b for _, _, a, b in dims)
    details = {"samples": len(samples), "iso_classes": len(classes), "invalid": bad,
               "hom_dims_agree": agree}
    return TaskRecord("kern", "pass" if not bad and agree else "fail", details=details, dims=dims)


def task_dictionary(sc: Scenario, task: dict, opts) -> TaskRecord:
    phi = _morphism_of(sc, task)
    tcc = amitsur_tcc(phi, opts.level)
    count = int(task.get("count", 20))
    data = random_descent_data(tcc, count, seed=opts.seed)
    round_trips = 0
    for obj in data:
        c = h_from_theta(tcc, obj)
        back = theta_from_h(tcc, c)
        if check_comodule(c) and back.theta.matrix == obj.theta.matrix:
            round_trips += 1
    detected = {}
    for kind in FAULTS:
        hits = 0
        for k, obj in enumerate(data[: min(len(data), 5)]):
            broken = inject_fault(tcc, obj, kind, seed=opts.seed + k)
            ok = check_comodule(broken) if kind in ("C1", "C2") else check_descent_theta(tcc, broken)
            hits += not ok
        detected[kind] = hits
    probes = min(len(data), 5)
    status = "pass" if round_trips == count and all(v == probes for v in detected.values()) else "fail"
    details = {"data": count, "round_trips": round_trips, "faults_detected": detected, "fault_probes": probes}
    return TaskRecord("dictionary", status, details=details)


def task_equivariant(sc: Scenario, task: dict, opts) -> TaskRecord:
    action = sc._lookup(sc.actions, task.get("action", ""), "action")
    F = sc.field
    m = maschke_split(action.group, F)
    tcc = action_nerve_tcc(action, F, truncation=opts.level, augmented=False)
    details = {"group": action.group.name, "field": str(F), "maschke_split": m.present}
    if action.points == 1:
        data = rank_one_data(action, F)
        eq_classes = equivariant_iso_classes(data)
        kern_classes = KernCategory(tcc).iso_classes(kern_rank_one_data(tcc))
        bridge = equivariant_kern_bridge(tcc, data)
        details.update({"rank_one_classes": len(eq_classes), "kern_rank_one_classes": len(kern_classes),
                        "bridge": bridge.detail})
        ok = bridge.ok and len(eq_classes) == len(kern_classes)
    else:
        ok = True
        details["bridge"] = "rank one classification is computed over a point only"
    witness = matrix_grid(m.retraction.matrix) if m.retraction is not None else None
    return TaskRecord("equivariant", "pass" if ok else "fail", details=details, witness=witness)


def task_derived(sc: Scenario, task: dict, opts) -> TaskRecord:
    if "action" in task:
        action = sc._lookup(sc.actions, task["action"], "action")
        tcc = action_nerve_tcc(action, sc.field, truncation=opts.level, augmented=False)
        comp = equivariant_comparison(tcc)
    else:
        tcc = amitsur_tcc(_morphism_of(sc, task), opts.level)
        comp = amitsur_comparison(tcc)
    max_total = int(task.get("max_total", 6))
    samples = sample_complexes(comp.base_algebra, max_total)
    rep = derived_descent_check(comp, samples, shifts=task.get("shifts", (-1, 0, 1)), max_total=max_total)
    details = {"unit_splits": rep.unit_splits, "verdict": rep.verdict, "pairs": len(rep.rows),
               "skipped": len(rep.skipped), "samples": [repr(s) for s in samples]}
    witness = None
    if rep.counterexample:
        i, j, n, base, top = rep.counterexample
        witness = {"source": i, "target": j, "shift": n, "base_hom_dim": base, "descent_hom_dim": top}
    status = "pass" if rep.agree else "counterexample"
    return TaskRecord("derived", status, details=details, dims=[list(r) for r in rep.rows], witness=witness)


def task_a2(sc: Scenario, task: dict, opts) -> TaskRecord:
    tcc = amitsur_tcc(_morphism_of(sc, task), opts.level)
    rep = check_A1_A2(tcc, standard_samples(tcc, opts.max_dim))
    details = {"squares": rep.squares, "checks": rep.checks, "failures": len(rep.failures)}
    return TaskRecord("a2", "pass" if rep.ok else "fail", details=details)


TASKS = {
    "analyze": task_analyze,
    "beck": task_beck,
    "kern": task_kern,
    "dictionary": task_dictionary,
    "equivariant": task_equivariant,
    "derived": task_derived,
    "a2": task_a2,
}


@dataclass
class Options:
    seed: int = 0
    level: int = 3
    max_dim: int = 4


def run(scenario: Scenario | str | Path, seed: int | None = None, level: int | None = None,
        max_dim: int | None = None) -> Report:
    sc = scenario if isinstance(scenario, Scenario) else Scenario.load(scenario)
    opts = Options(sc.seed if seed is None else seed, sc.level if level is None else level,
                   sc.max_dim if max_dim is None else max_dim)
    records = []
    for task in sc.tasks:
        fn = TASKS.get(task["name"])
        if fn is None:
            raise ScenarioError(f"unknown task {task['name']!r}")
        start = time.perf_counter()
        log.info("running %s", task["name"])
        try:
            rec = fn(sc, task, opts)
        except AxiomError as exc:
            rec = TaskRecord(task["name"], "fail", details={"error": str(exc)})
        except KeyError as exc:
            raise ScenarioError(f"task {task['name']!r}: missing key {exc}") from exc
        rec.expect = task.get("expect", "pass")
        rec.seconds = time.perf_counter() - start
        records.append(rec)
    return Report(sc.name, opts.seed, records)


def format_table(report: Report) -> str:
    rows = [("task", "status", "expected", "seconds", "summary")]
    for t in report.tasks:
        summary = ", ".join(f"{k}={v}" for k, v in t.details.items() if not isinstance(v, (list, dict)))
        rows.append((t.name, t.status, t.expect, f"{t.seconds:.2f}", summary))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = [f"scenario {report.scenario} (seed {report.seed})"]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r[:4], widths)) + "  " + r[4])
    lines.append("result: " + ("ok" if report.ok else "FAILED"))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="analyze", description="Run descent analyses described by a scenario file.")
    p.add_argument("scenario", help="scenario TOML file")
    p.add_argument("--json", metavar="OUT", help="write the machine-readable report here ('-' for stdout)")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.add_argument("--level", type=int, help="truncation level of cosimplicial algebras")
    p.add_argument("--max-dim", type=int, dest="max_dim", help="largest sample module dimension")
    p.add_argument("--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report = run(args.scenario, args.seed, args.level, args.max_dim)
    except (ScenarioError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json == "-":
        sys.stdout.write(report.to_json())
    else:
        print(format_table(report))
        if args.json:
            Path(args.json).write_text(report.to_json())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
