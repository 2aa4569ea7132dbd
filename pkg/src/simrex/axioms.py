"""The equational and inequational laws of regular expressions under the
simulation preorder (weak Kleene algebra), as executable schemas, with
randomized semantic soundness suites.

Every schema instantiates to concrete expressions and is judged
semantically: equations with simulation equivalence, inequations with the
simulation preorder (x < y meaning x + y = y). Conditional schemas first
evaluate their hypothesis; instances whose hypothesis fails are vacuous
and never counted as passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .relations import sim_equiv, sim_leq
from .semantics import StateSpaceExceeded
from .syntax import GenConfig, ONE, Product, Regex, Star, Sum, ZERO, draw, render

Assignment = dict[str, Regex]
Template = Callable[..., tuple[Regex, Regex]]

REJECTION_ATTEMPTS = 200
MAX_SKIP_RATE = 0.01


@dataclass(frozen=True)
class Schema:
    """A law template over regex metavariables.

    `conclusion` (and `hypothesis`, when present) map an assignment to a
    (left, right) pair; `relation` is "=" for equations and "<" for
    inequations. `family`, when present, draws assignments guaranteed to
    satisfy the hypothesis.
    """

    name: str
    variables: tuple[str, ...]
    relation: str
    conclusion: Template
    hypothesis: Template | None = None
    family: Callable[[random.Random, GenConfig], Assignment] | None = None

    @property
    def conditional(self) -> bool:
        return self.hypothesis is not None

    def render_conclusion(self, assignment: Assignment) -> str:
        l, r = self.conclusion(**assignment)
        return f"{render(l)} {self.relation} {render(r)}"

    def render_hypothesis(self, assignment: Assignment) -> str | None:
        if self.hypothesis is None:
            return None
        l, r = self.hypothesis(**assignment)
        return f"{render(l)} < {render(r)}"


def _family_left_induction(rng: random.Random, config: GenConfig) -> Assignment:
    # y·x < x holds for x := y*·z
    y, z = draw(rng, config), draw(rng, config)
    return {"x": Product(Star(y), z), "y": y}


def _family_right_induction(rng: random.Random, config: GenConfig) -> Assignment:
    # x·(y+1) < x holds for x := z·y*
    y, z = draw(rng, config), draw(rng, config)
    return {"x": Product(z, Star(y)), "y": y}


def _family_left_induction_strong(rng: random.Random, config: GenConfig) -> Assignment:
    y, w, z = draw(rng, config), draw(rng, config), draw(rng, config)
    return {"x": Product(Star(y), w), "y": y, "z": z}


_SCHEMAS: tuple[Schema, ...] = (
    Schema("plus-assoc", ("x", "y", "z"), "=",
           lambda x, y, z: (Sum(Sum(x, y), z), Sum(x, Sum(y, z)))),
    Schema("plus-idem", ("x",), "=",
           lambda x: (Sum(x, x), x)),
    Schema("plus-comm", ("x", "y"), "=",
           lambda x, y: (Sum(x, y), Sum(y, x))),
    Schema("plus-zero", ("x",), "=",
           lambda x: (Sum(x, ZERO), x)),
    Schema("one-seq", ("x",), "=",
           lambda x: (Product(ONE, x), x)),
    Schema("seq-one", ("x",), "=",
           lambda x: (Product(x, ONE), x)),
    Schema("zero-seq", ("x",), "=",
           lambda x: (Product(ZERO, x), ZERO)),
    Schema("seq-assoc", ("x", "y", "z"), "=",
           lambda x, y, z: (Product(Product(x, y), z), Product(x, Product(y, z)))),
    Schema("plus-seq", ("x", "y", "z"), "=",
           lambda x, y, z: (Product(Sum(x, y), z), Sum(Product(x, z), Product(y, z)))),
    Schema("seq-plus", ("x", "y", "z"), "<",
           lambda x, y, z: (Sum(Product(x, y), Product(x, z)), Product(x, Sum(y, z)))),
    Schema("star-unfold", ("x",), "=",
           lambda x: (Star(x), Sum(ONE, Product(x, Star(x))))),
    Schema("left-induction", ("x", "y"), "<",
           lambda x, y: (Product(Star(y), x), x),
           hypothesis=lambda x, y: (Product(y, x), x),
           family=_family_left_induction),
    Schema("right-induction", ("x", "y"), "<",
           lambda x, y: (Product(x, Star(y)), x),
           hypothesis=lambda x, y: (Product(x, Sum(y, ONE)), x),
           family=_family_right_induction),
    Schema("left-induction-strong", ("x", "y", "z"), "<",
           lambda x, y, z: (Product(z, Product(Star(y), x)), Product(z, x)),
           hypothesis=lambda x, y, z: (Product(y, x), x),
           family=_family_left_induction_strong),
)


def schemas() -> tuple[Schema, ...]:
    """The thirteen core laws plus the strong left-induction law."""
    return _SCHEMAS


def schema(name: str) -> Schema:
    for s in _SCHEMAS:
        if s.name == name:
            return s
    raise KeyError(name)


@dataclass(frozen=True)
class InstanceResult:
    """Outcome of evaluating one schema instantiation."""

    status: str  # "pass" | "fail" | "vacuous"
    schema: str
    assignment: Assignment


def check_instance(s: Schema, assignment: Assignment, *, cap: int = 10000) -> InstanceResult:
    """Semantically evaluate one instantiation. StateSpaceExceeded propagates."""
    if set(assignment) != set(s.variables):
        raise ValueError(
            f"assignment keys {sorted(assignment)} do not match schema variables {sorted(s.variables)}"
        )
    if s.hypothesis is not None:
        hl, hr = s.hypothesis(**assignment)
        if not sim_leq(hl, hr, cap=cap, witness=False).verdict:
            return InstanceResult("vacuous", s.name, assignment)
    cl, cr = s.conclusion(**assignment)
    if s.relation == "=":
        ok = sim_equiv(cl, cr, cap=cap)
    else:
        ok = sim_leq(cl, cr, cap=cap, witness=False).verdict
    return InstanceResult("pass" if ok else "fail", s.name, assignment)


@dataclass
class SchemaReport:
    """Per-schema tallies for one suite run."""

    name: str
    attempted: int = 0
    non_vacuous: int = 0
    vacuous: int = 0
    from_family: int = 0
    rejected: int = 0  # slots where rejection sampling found no hypothesis
    skipped: int = 0  # slots lost to StateSpaceExceeded
    failures: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "attempted": self.attempted,
            "non_vacuous": self.non_vacuous,
            "vacuous": self.vacuous,
            "from_family": self.from_family,
            "rejected": self.rejected,
            "skipped": self.skipped,
            "failures": self.failures,
        }


@dataclass
class SuiteReport:
    """Aggregated suite outcome; reproducible from seed and config."""

    seed: int
    config: GenConfig
    instances_per_schema: int
    reports: list[SchemaReport]

    @property
    def failure_count(self) -> int:
        return sum(len(r.failures) for r in self.reports)

    @property
    def skip_rate(self) -> float:
        planned = self.instances_per_schema * len(self.reports)
        return (sum(r.skipped for r in self.reports) / planned) if planned else 0.0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0 and self.skip_rate <= MAX_SKIP_RATE

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config": {
                "max_size": self.config.max_size,
                "alphabet": list(self.config.alphabet),
                "star_probability": self.config.star_probability,
                "seed": self.config.seed,
            },
            "instances_per_schema": self.instances_per_schema,
            "failure_count": self.failure_count,
            "skip_rate": self.skip_rate,
            "passed": self.passed,
            "schemas": [r.to_json_dict() for r in self.reports],
        }

    def summary_lines(self) -> list[str]:
        head = f"{'schema':<24}{'attempted':>10}{'non-vac':>9}{'family':>8}{'rejected':>10}{'skipped':>9}{'failures':>10}"
        lines = [head, "-" * len(head)]
        for r in self.reports:
            lines.append(
                f"{r.name:<24}{r.attempted:>10}{r.non_vacuous:>9}{r.from_family:>8}"
                f"{r.rejected:>10}{r.skipped:>9}{len(r.failures):>10}"
            )
        lines.append(
            f"total failures: {self.failure_count}, skip rate: {self.skip_rate:.2%}, "
            f"verdict: {'PASS' if self.passed else 'FAIL'}"
        )
        return lines


def _random_assignment(s: Schema, rng: random.Random, config: GenConfig) -> Assignment:
    return {v: draw(rng, config) for v in s.variables}


def run_suite(
    config: GenConfig,
    instances_per_schema: int,
    *,
    cap: int = 10000,
    only: tuple[str, ...] | None = None,
) -> SuiteReport:
    """Randomized semantic suite across the schemas.

    Unconditional schemas draw fully random assignments. Conditional ones
    draw half their instances from constructed hypothesis-satisfying
    families and rejection-sample the other half (REJECTION_ATTEMPTS draws
    per wanted instance); shortfalls and state-space skips are tallied,
    never silently dropped. Deterministic in config.seed.
    """
    if instances_per_schema < 1:
        raise ValueError("instances_per_schema must be at least 1")
    chosen = schemas() if only is None else tuple(schema(n) for n in only)
    reports = []
    for s in chosen:
        rng = random.Random(f"{config.seed}:{s.name}")
        rep = SchemaReport(s.name)
        for slot in range(instances_per_schema):
            family_slot = s.family is not None and slot % 2 == 0
            try:
                if family_slot:
                    assignment = s.family(rng, config)
                elif s.hypothesis is not None:
                    assignment = None
                    for _ in range(REJECTION_ATTEMPTS):
                        candidate = _random_assignment(s, rng, config)
                        hl, hr = s.hypothesis(**candidate)
                        if sim_leq(hl, hr, cap=cap, witness=False).verdict:
                            assignment = candidate
                            break
                    if assignment is None:
                        rep.rejected += 1
                        continue
                else:
                    assignment = _random_assignment(s, rng, config)
                result = check_instance(s, assignment, cap=cap)
            except StateSpaceExceeded:
                rep.skipped += 1
                continue
            rep.attempted += 1
            if family_slot:
                rep.from_family += 1
            if result.status == "vacuous":
                rep.vacuous += 1
                continue
            rep.non_vacuous += 1
            if result.status == "fail":
                rep.failures.append(
                    {
                        "schema": s.name,
                        "assignment": {v: render(e) for v, e in assignment.items()},
                        "hypothesis": s.render_hypothesis(assignment),
                        "conclusion": s.render_conclusion(assignment),
                    }
                )
        reports.append(rep)
    return SuiteReport(config.seed, config, instances_per_schema, reports)
