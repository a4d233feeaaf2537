"""Mutation programs on the Grassmannian grid seed.

A program is an explicit list of grid mutations followed by a list of
freezes.  Each flag type gets one rectangular mutation region per pair of
consecutive levels; inside a region the schedule runs in pages, each page
sweeping the rows bottom-up with shrinking widths.  After the program runs,
vertices whose tableaux appear in the padded flag seed are kept and the rest
are deleted, which must leave a legal restricted seed equal to the flag
initial seed.  That comparison is what ``verify_theorem`` certifies.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import tableaux as tb
from .flags import FlagSeed, FlagType, GrassmannianSeed, embedded_flag_seed
from .plucker import DEFAULT_PRIME, EvaluationPoint, random_matrix_point
from .quiver import LaurentError, QuiverError, Seed, quivers_agree


class ProgramError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    kind: str  # "mutate" | "freeze"
    row: int
    col: int
    region: int = 0
    page: int = 0


@dataclass
class MutationProgram:
    flag: FlagType
    steps: list[Step]

    @property
    def mutations(self) -> list[Step]:
        return [s for s in self.steps if s.kind == "mutate"]

    @property
    def freezes(self) -> list[Step]:
        return [s for s in self.steps if s.kind == "freeze"]


def region_parameters(flag: FlagType, j: int) -> tuple[int, int, int, int]:
    """(a, b, c, top_row) of the mutation region between levels j-1 and j:
    a rows, width cap b, page width c; the region's top row in the grid."""
    ext = flag.extended
    d1_prev, dj = ext[j - 1], ext[j]
    a = dj - d1_prev - 1
    b = flag.dims[-1] - 2
    c = d1_prev
    top = d1_prev - flag.dims[0] + 2
    return a, b, c, top


def region_mutation_count(a: int, b: int, c: int) -> int:
    """Closed form for one region's length."""
    return a * c * (c + 1) // 2 + a * (a - 1) // 2 * b


def expected_mutation_count(flag: FlagType) -> int:
    total = 0
    for j in range(2, flag.k + 1):
        a, b, c, _ = region_parameters(flag, j)
        total += region_mutation_count(a, b, c)
    return total


def _region_steps(flag: FlagType, j: int) -> list[Step]:
    a, b, c, top = region_parameters(flag, j)
    steps: list[Step] = []
    if a <= 0:
        return steps
    for page in range(1, a + c):
        for t in range(a, 0, -1):  # bottom row of the region first
            width = b if t > page else c - (page - t)
            if width <= 0:
                continue
            row = top + t - 1
            for col in range(2, width + 2):
                steps.append(Step("mutate", row, col, region=j, page=page))
    return steps


def _freeze_steps(flag: FlagType) -> list[Step]:
    ext = flag.extended
    d1 = flag.dims[0]
    steps: list[Step] = []
    for j in range(2, flag.k + 1):
        col = ext[j - 1] + 1
        for i in range(ext[j - 1] - d1 + 2, ext[j] - d1 + 1):
            steps.append(Step("freeze", i, col, region=j))
    # the padded coordinates P_{[1,d_j]} sitting inside the grid
    for j in range(1, flag.k):
        steps.append(Step("freeze", flag.dims[j - 1] - d1 + 1, flag.dims[j - 1] + 1))
    return steps


def general_flag_program(flag: FlagType, region_order: Sequence[int] | None = None) -> MutationProgram:
    """Concatenation of the per-region schedules followed by all freezes.

    ``region_order`` defaults to 2..k; regions commute (their mutable
    supports are disjoint), which the test suite exercises.
    """
    order = list(region_order) if region_order is not None else list(range(2, flag.k + 1))
    if sorted(order) != list(range(2, flag.k + 1)):
        raise ProgramError("region order must be a permutation of 2..k")
    steps: list[Step] = []
    for j in order:
        steps.extend(_region_steps(flag, j))
    steps.extend(_freeze_steps(flag))
    return MutationProgram(flag, steps)


def two_step_program(d1: int, d2: int, n: int) -> MutationProgram:
    if not (1 <= d1 < d2 <= n - 1):
        raise ProgramError("need 1 <= d1 < d2 <= n-1")
    return general_flag_program(FlagType((d1, d2), n))


def mt_program(n: int) -> MutationProgram:
    """Three mutations, one freeze, for the (2,4) flag at any ambient size."""
    if n < 5:
        raise ProgramError("need n >= 5")
    return general_flag_program(FlagType((2, 4), n))


def sh_program(n: int) -> MutationProgram:
    """The (2, n-2) flag family; length (1/2)(n-5)(n^2-10n+30)."""
    if n < 6:
        raise ProgramError("need n >= 6")
    return general_flag_program(FlagType((2, n - 2), n))


def standard_form_tableau(flag: FlagType, j: int, j1: int, j2: int) -> tb.Tableau:
    """Padded two-column tableau that page j1+j2+1 of region j places at
    grid position (top + j1, c - j2 + 1)."""
    ext = flag.extended
    d_prev, dj = ext[j - 1], ext[j]
    t = tb.initial_tableau(j2 + 1, d_prev, d_prev + j1 + 2, dj, flag.n)
    return tb.fill_up(t, flag.dims, flag.n)


@dataclass
class RunResult:
    program: MutationProgram
    grassmannian: GrassmannianSeed
    endpoint: Seed              # after mutations and freezes, before deletion
    restricted: Seed | None
    flag_seed: FlagSeed
    embedded: Seed
    mapping: dict[int, int]     # flag vertex -> grid vertex
    kept: set[int]
    deleted: set[int]
    match_problems: list[str]
    mutation_trace: list[tuple[Step, int, int]]  # (step, vertex, label)
    frozen_effective: list[int]                  # labels


def match_embedded_vertices(endpoint: Seed, embedded: Seed) -> tuple[dict[int, int], list[str]]:
    """Pair every embedded flag vertex with the endpoint vertex carrying the
    same tableau.  Exact equality is expected; equivalence up to trivial
    columns is accepted as a fallback and reported."""
    problems: list[str] = []
    by_tab: dict[tb.Tableau, list[int]] = {}
    for vid, st in endpoint.variables.items():
        by_tab.setdefault(st.tableau, []).append(vid)
    mapping: dict[int, int] = {}
    used: set[int] = set()
    for fvid, st in embedded.variables.items():
        name = embedded.quiver.vertices[fvid].name
        cands = [v for v in by_tab.get(st.tableau, []) if v not in used]
        if not cands:
            cands = [
                v
                for v, est in endpoint.variables.items()
                if v not in used and tb.equivalent(est.tableau, st.tableau)
            ]
            if cands:
                problems.append("vertex %s matched only up to trivial columns" % name)
        if not cands:
            problems.append("no endpoint vertex carries the tableau of %s" % name)
            continue
        if len(cands) > 1:
            problems.append("tableau of %s appears at several endpoint vertices" % name)
            continue
        mapping[fvid] = cands[0]
        used.add(cands[0])
    return mapping, problems


def run_program(
    gr: GrassmannianSeed,
    program: MutationProgram,
    page_hook: Callable[[Seed, int, int], None] | None = None,
) -> RunResult:
    """Execute the program and carry out the freeze/match/delete endgame."""
    seed = gr.seed
    trace: list[tuple[Step, int, int]] = []
    current_page = None
    for step in program.mutations:
        if page_hook is not None and current_page is not None and (step.region, step.page) != current_page:
            page_hook(seed, *current_page)
        current_page = (step.region, step.page)
        vid = gr.vertex_at(step.row, step.col)
        seed = seed.mutate(vid)
        trace.append((step, vid, gr.label_of(vid)))
    if page_hook is not None and current_page is not None:
        page_hook(seed, *current_page)

    frozen_effective: list[int] = []
    for step in program.freezes:
        vid = gr.vertex_at(step.row, step.col)
        if not seed.quiver.is_frozen(vid):
            frozen_effective.append(gr.label_of(vid))
            seed = seed.freeze(vid)

    flag_seed = FlagSeed(program.flag)
    embedded = embedded_flag_seed(flag_seed)
    mapping, problems = match_embedded_vertices(seed, embedded)
    kept = set(mapping.values())
    deleted = set(seed.quiver.vertices) - kept

    restricted: Seed | None = None
    if len(mapping) == len(embedded.variables):
        try:
            restricted = seed.restrict(kept)
        except QuiverError as exc:
            problems.append(str(exc))
    else:
        problems.append(
            "matched %d of %d flag vertices" % (len(mapping), len(embedded.variables))
        )
    return RunResult(
        program=program,
        grassmannian=gr,
        endpoint=seed,
        restricted=restricted,
        flag_seed=flag_seed,
        embedded=embedded,
        mapping=mapping,
        kept=kept,
        deleted=deleted,
        match_problems=problems,
        mutation_trace=trace,
        frozen_effective=frozen_effective,
    )


# -- verification ---------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    flag: FlagType
    checks: list[Check] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    mutation_labels: list[int] = field(default_factory=list)
    freeze_labels: list[int] = field(default_factory=list)
    deleted_labels: list[int] = field(default_factory=list)
    elapsed: float = 0.0
    prime: int = DEFAULT_PRIME
    trials: int = 20
    master_seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, passed, detail))

    def to_dict(self) -> dict:
        return {
            "schema": "clusterflag-report/1",
            "flag": {"dims": list(self.flag.dims), "n": self.flag.n},
            "grassmannian": dict(
                zip(("k", "n"), self.flag.target_grassmannian)
            ),
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "counts": self.counts,
            "mutations": self.mutation_labels,
            "freezes": self.freeze_labels,
            "deleted": self.deleted_labels,
            "elapsed_s": round(self.elapsed, 3),
            "prime": self.prime,
            "trials": self.trials,
            "master_seed": self.master_seed,
        }

    def summary_lines(self) -> list[str]:
        lines = [
            "flag (%s; %d) in Gr(%d; %d)"
            % (
                ",".join(map(str, self.flag.dims)),
                self.flag.n,
                *self.flag.target_grassmannian,
            )
        ]
        for c in self.checks:
            mark = "ok" if c.passed else "FAIL"
            lines.append("  [%s] %s%s" % (mark, c.name, (": " + c.detail) if c.detail else ""))
        lines.append(
            "  %d mutations, %d freezes, %d deletions, %.2fs"
            % (
                self.counts.get("mutations", 0),
                self.counts.get("freezes", 0),
                self.counts.get("deleted", 0),
                self.elapsed,
            )
        )
        return lines


def sample_nonsingular_point(
    seed: Seed, rows: int, cols: int, prime: int, rng: random.Random, max_tries: int = 100
) -> tuple[EvaluationPoint, list[int], dict]:
    """Random matrix at which every initial variable is nonzero."""
    for _ in range(max_tries):
        point = random_matrix_point(rows, cols, prime, rng)
        cache: dict = {}
        try:
            values = seed.initial_values(point, cache)
        except ArithmeticError:
            continue
        return point, values, cache
    raise ProgramError("could not sample a nonsingular evaluation point")


def verify_theorem(
    flag: FlagType,
    trials: int = 20,
    prime: int = DEFAULT_PRIME,
    master_seed: int = 0,
    page_hook: Callable[[Seed, int, int], None] | None = None,
) -> Report:
    """Run the program for a flag type and certify that freezing plus
    deletion turns the endpoint into the padded flag initial seed."""
    t0 = time.perf_counter()
    report = Report(flag, prime=prime, trials=trials, master_seed=master_seed)
    program = general_flag_program(flag)
    k, ambient = flag.target_grassmannian
    gr = GrassmannianSeed(k, ambient)

    expected = expected_mutation_count(flag)
    report.add(
        "mutation count matches closed form",
        len(program.mutations) == expected,
        "%d vs %d" % (len(program.mutations), expected),
    )

    try:
        result = run_program(gr, program, page_hook=page_hook)
    except (LaurentError, QuiverError, tb.TableauError) as exc:
        report.add("program executed with exact exchanges", False, str(exc))
        report.elapsed = time.perf_counter() - t0
        return report
    report.add(
        "program executed with exact exchanges",
        True,
        "%d Laurent divisions" % len(result.mutation_trace),
    )

    report.mutation_labels = [lab for (_, _, lab) in result.mutation_trace]
    report.freeze_labels = sorted(result.frozen_effective)
    report.deleted_labels = sorted(gr.label_of(v) for v in result.deleted)
    report.counts = {
        "mutations": len(result.mutation_trace),
        "freezes": len(result.frozen_effective),
        "deleted": len(result.deleted),
        "kept": len(result.kept),
        "flag_vertices": len(result.embedded.variables),
        "grid_vertices": len(gr.seed.variables),
    }

    balance = result.endpoint.is_balanced()
    report.add("endpoint degree-balanced", not balance, "; ".join(balance[:3]))

    report.add(
        "endpoint tableaux contain the padded flag tableaux",
        not result.match_problems and len(result.mapping) == len(result.embedded.variables),
        "; ".join(result.match_problems[:3]),
    )

    if result.restricted is None:
        report.add("deletion leaves a legal restricted seed", False, "restriction failed")
        report.elapsed = time.perf_counter() - t0
        return report
    report.add("deletion leaves a legal restricted seed", True)

    mismatches = quivers_agree(result.embedded.quiver, result.restricted.quiver, result.mapping)
    report.add(
        "restricted quiver equals the flag quiver",
        not mismatches,
        "; ".join(mismatches[:3]),
    )

    # flag-grading balance of the restricted seed, via the matched weights
    inverse = {g: f for f, g in result.mapping.items()}
    weight_issues: list[str] = []
    for vid in result.restricted.mutable_ids():
        w_in = [0] * flag.k
        w_out = [0] * flag.k
        for u, m in result.restricted.quiver.arrows_in(vid):
            wu = result.embedded.variables[inverse[u]].weight
            w_in = [a + m * b for a, b in zip(w_in, wu)]
        for w, m in result.restricted.quiver.arrows_out(vid):
            ww = result.embedded.variables[inverse[w]].weight
            w_out = [a + m * b for a, b in zip(w_out, ww)]
        if w_in != w_out:
            weight_issues.append(result.restricted.quiver.vertices[vid].name)
    report.add(
        "restricted seed balanced for the flag grading",
        not weight_issues,
        "; ".join(weight_issues[:3]),
    )

    rng = random.Random(master_seed)
    value_issues: list[str] = []
    for trial in range(trials):
        point, values, cache = sample_nonsingular_point(
            result.restricted, k, ambient, prime, rng
        )
        for fvid, gvid in result.mapping.items():
            lhs = result.restricted.variables[gvid].laurent.evaluate(values, prime)
            rhs = result.embedded.dictionary[fvid].evaluate(point, cache)
            if lhs != rhs % prime:
                value_issues.append(
                    "trial %d at %s" % (trial, result.embedded.quiver.vertices[fvid].name)
                )
    report.add(
        "kept variables equal the lifted flag coordinates at %d points" % trials,
        not value_issues,
        "; ".join(value_issues[:3]),
    )

    report.elapsed = time.perf_counter() - t0
    return report
