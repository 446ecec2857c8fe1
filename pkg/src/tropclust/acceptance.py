"""The fourteen acceptance criteria as callable checks.

Each check returns a :class:`CriterionResult`; ``run_acceptance`` runs a
selection of them in order.  Randomness comes from one integer seed, split
per criterion and per sample, so results do not depend on which criteria run.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .dilog import (
    classical_di_reports,
    random_full_grid_init,
    random_positive_rational,
    rogers_l,
    solve_constant_ysystem,
    verify_di6,
    verify_di7,
)
from .dynkin import dynkin
from .exchange import ExchangeMatrix
from .periodicity import (
    YSystemQuiver,
    build_ysystem_quiver,
    composite_sequence,
    framed_cvectors,
    verify_ysystem_period,
    ysystem_domain,
    ysystem_iterate,
    ysystem_states,
)
from .quantum import (
    check_q1_specialization,
    pentagon_abstract_check,
    run_quantum,
    tropical_quantum_y,
    verify_qdi,
)
from .reference_tables import (
    A2_B,
    A2_CVECTORS,
    A2_CVECTORS_OPPOSITE,
    A2_SEQUENCE,
    A3_LEVEL2_ROWS,
    A3_LEVEL2_ROWS_OPPOSITE,
    A3_LEVEL3_CVECTORS,
    a2_example_seeds,
)
from .sampling import RandomRunConfig, random_run
from .seed import Falsification, initial_seed, mutate_seed, mutate_sequence
from .tropical import matrix_form_check, run_sequence, verify_separation

__all__ = ["AcceptanceConfig", "CriterionResult", "CRITERIA", "run_acceptance", "select_criteria", "sample_rng"]


@dataclass(frozen=True)
class AcceptanceConfig:
    rng_seed: int = 2024
    random_runs: int = 100
    random_run_config: RandomRunConfig = RandomRunConfig()
    separation_runs: int = 50
    separation_run_config: RandomRunConfig = RandomRunConfig(n_min=2, n_max=3, depth=6, entry_bound=None)
    ysystem_inits: int = 20
    dilog_inits: int = 100
    di7_inits: int = 3
    quantum_order_rank2: int = 8
    quantum_order: int = 6


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    lhs: object
    rhs: object
    tol: object
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0
    budget: float | None = None

    @property
    def id(self) -> str:
        return f"criterion-{self.number:02d}"

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds < self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def as_dict(self, timings: bool = False) -> dict:
        detail = dict(self.detail, title=self.title)
        if timings:
            detail["seconds"] = round(self.seconds, 3)
            detail["budget_seconds"] = self.budget
        return {
            "id": self.id,
            "status": "pass" if self.ok else "fail",
            "lhs": self.lhs,
            "rhs": self.rhs,
            "tol": self.tol,
            "detail": detail,
        }

    def line(self) -> str:
        budget = f" (budget {self.budget:g}s)" if self.budget is not None else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.id} {self.title}: {self.seconds:.2f}s{budget}"


def sample_rng(seed: int, label: str, index: int = 0) -> random.Random:
    """Independent stream for one sample of one check."""
    return random.Random(f"{seed}/{label}/{index}")


def _a2() -> ExchangeMatrix:
    return ExchangeMatrix(A2_B)


# 1 -------------------------------------------------------------------------
def criterion_1(cfg: AcceptanceConfig) -> CriterionResult:
    seeds = mutate_sequence(initial_seed(_a2()), A2_SEQUENCE)
    ref = a2_example_seeds()
    bad = []
    compared = quivers = 0
    for t, (s, r) in enumerate(zip(seeds, ref)):
        quivers += 1
        if s.B.tolist() != r["B"]:
            bad.append(f"B({t})")
        for i in range(2):
            compared += 2
            if s.x[i] != r["x"][i]:
                bad.append(f"x{i + 1}({t})")
            if s.y[i] != r["y"][i]:
                bad.append(f"y{i + 1}({t})")
    return CriterionResult(
        1, "A2 example seeds", not bad, f"{compared} variables, {quivers} quivers", "reference table", "exact",
        {"mismatches": bad}, budget=1.0,
    )


# 2 -------------------------------------------------------------------------
def criterion_2(cfg: AcceptanceConfig) -> CriterionResult:
    signs = run_sequence(_a2(), A2_SEQUENCE).signs
    n_plus, n_minus = signs.count(1), signs.count(-1)
    want = (1, 1, -1, -1, -1)
    ok = tuple(signs) == want and (n_plus, n_minus) == (2, 3)
    return CriterionResult(
        2, "pentagon tropical signs", ok, {"signs": list(signs), "N+": n_plus, "N-": n_minus},
        {"signs": list(want), "N+": 2, "N-": 3}, "exact",
    )


# 3 -------------------------------------------------------------------------
def criterion_3(cfg: AcceptanceConfig) -> CriterionResult:
    failures = []
    steps = 0
    ranks = {}
    for r in range(cfg.random_runs):
        B, seq = random_run(sample_rng(cfg.rng_seed, "eps-independence", r), cfg.random_run_config)
        ranks[B.n] = ranks.get(B.n, 0) + 1
        s = initial_seed(B, "universal")
        try:
            for k in seq:
                s2 = mutate_seed(s, k, check=True)
                if not mutate_seed(s2, k, check=False).same_as(s):
                    raise Falsification("mutation is not an involution", s2.history)
                s = s2
                steps += 1
        except Falsification as exc:
            failures.append({"run": r, "B": B.tolist(), "d": list(B.d), "seq": [k + 1 for k in seq], "error": str(exc)})
    return CriterionResult(
        3, "eps-independence and involution", not failures, f"{steps} steps checked", f"{cfg.random_runs} runs",
        "exact", {"failures": failures, "runs_by_rank": {str(k): v for k, v in sorted(ranks.items())}}, budget=60.0,
    )


# 4 and 5 share their runs ---------------------------------------------------
def _separation_runs(cfg: AcceptanceConfig) -> list[tuple[ExchangeMatrix, tuple[int, ...]]]:
    runs = [random_run(sample_rng(cfg.rng_seed, "separation", r), cfg.separation_run_config) for r in range(cfg.separation_runs)]
    runs.append((_a2(), A2_SEQUENCE))
    return runs


def criterion_4(cfg: AcceptanceConfig) -> CriterionResult:
    failures = []
    steps = 0
    for r, (B, seq) in enumerate(_separation_runs(cfg)):
        try:
            run = run_sequence(B, seq, universal=True, principal=True)
            for st in run.steps:
                verify_separation(st.universal, st.tropical)
                steps += 1
            matrix_form_check(run)
        except Falsification as exc:
            failures.append({"run": r, "B": B.tolist(), "seq": [k + 1 for k in seq], "error": str(exc)})
    return CriterionResult(
        4, "separation formulas and duality", not failures, f"{steps} seeds reconstructed", "direct mutation",
        "exact", {"failures": failures, "runs": cfg.separation_runs + 1},
    )


def criterion_5(cfg: AcceptanceConfig) -> CriterionResult:
    runs = _separation_runs(cfg)
    for X, level in (("A2", 2), ("A3", 2), ("A2", 3)):
        q = build_ysystem_quiver(dynkin(X), level)
        runs.append((q.B, composite_sequence(q, 2 * (dynkin(X).coxeter + level))))
    failures = []
    cvecs = fpolys = 0
    for r, (B, seq) in enumerate(runs):
        try:
            # run_sequence raises on a non sign-coherent c-vector or an F-polynomial
            # whose constant term is not 1; the counts below record what was covered
            run = run_sequence(B, seq, principal=True)
            for st in run.steps:
                t = st.tropical
                for i in range(B.n):
                    c = t.c_vector(i)
                    if not (all(v >= 0 for v in c) or all(v <= 0 for v in c)):
                        raise Falsification(f"c-vector {c} is not sign-coherent", t.history)
                    cvecs += 1
                for f in t.F or ():
                    if f.constant_term() != 1:
                        raise Falsification(f"F-polynomial constant term {f.constant_term()}", t.history)
                    fpolys += 1
        except Falsification as exc:
            failures.append({"run": r, "B": B.tolist(), "seq": [k + 1 for k in seq], "error": str(exc)})
    return CriterionResult(
        5, "sign-coherence and F constant terms", not failures,
        {"c_vectors": cvecs, "f_polynomials": fpolys}, "no violation", "exact", {"failures": failures, "runs": len(runs)},
    )


# 6 -------------------------------------------------------------------------
YSYSTEM_CASES = (("A2", 2), ("A3", 2), ("A3", 3), ("A1", 2), ("A1", 3), ("A1", 4), ("A1", 5), ("A2", 3))


def criterion_6(cfg: AcceptanceConfig) -> CriterionResult:
    rows = {}
    ok = True
    for X, level in YSYSTEM_CASES:
        rep = verify_ysystem_period(dynkin(X), level)
        h = dynkin(X).coxeter
        good = rep.ok and rep.half_steps == h + level
        ok = ok and good
        rows[f"({X},{level})"] = {
            "half_steps": rep.half_steps,
            "expected": h + level,
            "nu": rep.half.nu_one_based() if rep.half else None,
            "minimal": rep.minimal_steps,
            "cross_validated": rep.cross_validated,
            "ok": good,
        }
    return CriterionResult(
        6, "Y-system periodicities", ok, {k: v["half_steps"] for k, v in rows.items()},
        {k: v["expected"] for k, v in rows.items()}, "exact", rows, budget=300.0,
    )


# 7 -------------------------------------------------------------------------
def _opposite(q: YSystemQuiver) -> YSystemQuiver:
    return YSystemQuiver(q.X, q.level, ExchangeMatrix((-q.B.b).tolist()), tuple(-p for p in q.parity))


def criterion_7(cfg: AcceptanceConfig) -> CriterionResult:
    q = build_ysystem_quiver(dynkin("A3"), 3)
    states = ysystem_states(q, -4, 3)
    framed = framed_cvectors(q, -4, 3)
    problems = []
    for u, t in states.items():
        got = tuple(t.c_vector(i) for i in range(q.n))
        if got != A3_LEVEL3_CVECTORS[u]:
            problems.append(f"grid u={u}")
        if any(framed[u][i] != A3_LEVEL3_CVECTORS[u][i] for i in framed[u]):
            problems.append(f"framed u={u}")

    # independent sub-quiver runs reproduce the smaller tables
    a2 = run_sequence(_a2(), A2_SEQUENCE)
    a2_opp = run_sequence(ExchangeMatrix([[0, 1], [-1, 0]]), A2_SEQUENCE)
    for name, run, table in (("A2", a2, A2_CVECTORS), ("A2 opposite", a2_opp, A2_CVECTORS_OPPOSITE)):
        for u, st in enumerate(run.steps):
            if tuple(st.tropical.c_vector(i) for i in range(2)) != table[u]:
                problems.append(f"{name} t={u}")
    q32 = build_ysystem_quiver(dynkin("A3"), 2)
    for name, quiver, table in (("A3 rows", q32, A3_LEVEL2_ROWS), ("A3 rows opposite", _opposite(q32), A3_LEVEL2_ROWS_OPPOSITE)):
        for u, t in ysystem_states(quiver, -6, 0).items():
            if tuple(t.c_vector(i) for i in range(3)) != table[u]:
                problems.append(f"{name} u={u}")

    # columns for u = 0..2: the (m=1, m=2) pair, '+' vertex first, is an A2 run
    for u in range(0, 3):
        for a in range(3):
            order = (a, a + 3) if q.parity[a] == 1 else (a + 3, a)
            for pos, i in enumerate(order):
                v = A3_LEVEL3_CVECTORS[u][i]
                if any(v[j] for j in range(6) if j not in order):
                    problems.append(f"column support u={u} a={a}")
                if tuple(v[j] for j in order) != A2_CVECTORS_OPPOSITE[u][pos]:
                    problems.append(f"column u={u} a={a}")
    # rows for u = -1..-4: row m is an (A3, 2) run
    for u in range(-4, 0):
        for m, table in ((1, A3_LEVEL2_ROWS), (2, A3_LEVEL2_ROWS_OPPOSITE)):
            row = tuple(range(3 * (m - 1), 3 * m))
            for a, i in enumerate(row):
                v = A3_LEVEL3_CVECTORS[u][i]
                if any(v[j] for j in range(6) if j not in row):
                    problems.append(f"row support u={u} m={m}")
                if tuple(v[j] for j in row) != table[u][a]:
                    problems.append(f"row u={u} m={m}")
    return CriterionResult(
        7, "(A3,3) c-vector grid and factorization", not problems, f"{len(states)} seeds", "reference grid", "exact",
        {"problems": problems},
    )


# 8 -------------------------------------------------------------------------
def criterion_8(cfg: AcceptanceConfig) -> CriterionResult:
    rows = {}
    ok = True
    for X, level in (("A1", 2), ("A2", 2), ("A3", 2), ("A2", 3)):
        D = dynkin(X)
        period = 2 * (D.coxeter + level)
        bad = 0
        for s in range(cfg.ysystem_inits):
            init = random_full_grid_init(D, level, sample_rng(cfg.rng_seed, f"ysystem-{X}-{level}", s))
            Y = ysystem_iterate(D, level, init, period + 1)
            if any(Y[(a, m, u + period)] != Y[(a, m, u)] for u in (0, 1) for a, m in ysystem_domain(D, level, u, None)):
                bad += 1
        rows[f"({X},{level})"] = {"period": period, "failures": bad}
        ok = ok and bad == 0
    return CriterionResult(
        8, "exact Y-system periodicity", ok, {k: v["failures"] for k, v in rows.items()}, 0, "exact", rows,
    )


# 9 -------------------------------------------------------------------------
def criterion_9(cfg: AcceptanceConfig) -> CriterionResult:
    checks = {}
    y_a1 = solve_constant_ysystem(dynkin("A1"), 2)
    checks["A1,2 Y=1"] = abs(y_a1[(0, 1)] - 1) <= 1e-12
    val = 6 / math.pi**2 * rogers_l(0.5)
    checks["A1,2 L(1/2)"] = abs(val - 0.5) <= 1e-10
    y_a2 = solve_constant_ysystem(dynkin("A2"), 2)
    golden = (1 + math.sqrt(5)) / 2
    checks["A2,2 golden"] = all(abs(v - golden) <= 1e-12 for v in y_a2.values())
    di6 = {}
    for n in (1, 2, 3):
        for level in (2, 3):
            rep = verify_di6(dynkin(f"A{n}"), level)
            di6[f"(A{n},{level})"] = {"lhs": rep.lhs, "rhs": rep.rhs, "diff": rep.diff}
            checks[f"DI6 A{n},{level}"] = rep.passed
    checks["A2,2 value 6/5"] = abs(di6["(A2,2)"]["lhs"] - 1.2) <= 1e-10
    return CriterionResult(
        9, "constant Y-system and central charges", all(checks.values()), {k: v["lhs"] for k, v in di6.items()},
        {k: v["rhs"] for k, v in di6.items()}, 1e-10, {"checks": checks, "golden_ratio_solution": list(y_a2.values())},
    )


# 10 ------------------------------------------------------------------------
def _classical_cases():
    cases = [("pentagon", _a2(), A2_SEQUENCE)]
    for X in ("A2", "A3"):
        q = build_ysystem_quiver(dynkin(X), 2)
        cases.append((f"({X},2)", q.B, composite_sequence(q, 2 * (dynkin(X).coxeter + 2))))
    return cases


def criterion_10(cfg: AcceptanceConfig) -> CriterionResult:
    rows = {}
    ok = True
    for name, B, seq in _classical_cases():
        worst = {}
        fails = 0
        for s in range(cfg.dilog_inits):
            rng = sample_rng(cfg.rng_seed, f"classical-{name}", s)
            init = [random_positive_rational(rng) for _ in range(B.n)]
            for key, rep in classical_di_reports(B, seq, init, tol=1e-9).items():
                if key not in worst or rep.diff > worst[key].diff:
                    worst[key] = rep
                fails += not rep.passed
        signed = worst["signed"]
        rows[name] = {
            "N+": signed.n_plus,
            "N-": signed.n_minus,
            "worst_lhs": {k: r.lhs for k, r in worst.items()},
            "rhs": {k: r.rhs for k, r in worst.items()},
            "max_diff": {k: r.diff for k, r in worst.items()},
            "failures": fails,
        }
        ok = ok and fails == 0
    return CriterionResult(
        10, "classical dilogarithm identities", ok, {k: v["worst_lhs"] for k, v in rows.items()},
        {k: v["rhs"] for k, v in rows.items()}, 1e-9, rows,
    )


# 11 ------------------------------------------------------------------------
def criterion_11(cfg: AcceptanceConfig) -> CriterionResult:
    rows = {}
    ok = True
    for X, level in (("A1", 2), ("A2", 2), ("A3", 3)):
        D = dynkin(X)
        vals = []
        for s in range(cfg.di7_inits):
            init = random_full_grid_init(D, level, sample_rng(cfg.rng_seed, f"di7-{X}-{level}", s))
            rep = verify_di7(D, level, init, tol=1e-8)
            vals.append(rep.lhs)
            ok = ok and rep.passed
        rows[f"({X},{level})"] = {"values": vals, "expected": 2 * D.coxeter * D.rank * (level - 1)}
    return CriterionResult(
        11, "functional central-charge identity", ok, {k: v["values"] for k, v in rows.items()},
        {k: v["expected"] for k, v in rows.items()}, 1e-8, rows,
    )


# 12 ------------------------------------------------------------------------
def criterion_12(cfg: AcceptanceConfig) -> CriterionResult:
    qdi = verify_qdi(_a2(), A2_SEQUENCE, cfg.quantum_order_rank2, id="quantum-pentagon")
    abstract = pentagon_abstract_check(cfg.quantum_order_rank2)
    return CriterionResult(
        12, "quantum pentagon", qdi.ok and abstract.ok,
        {"product": qdi.as_dict()["lhs"], "abstract": abstract.as_dict()["lhs"]}, 1,
        f"exact through total degree {cfg.quantum_order_rank2}",
        {"product": qdi.as_dict()["detail"], "abstract": abstract.as_dict()["detail"]}, budget=30.0,
    )


# 13 ------------------------------------------------------------------------
def criterion_13(cfg: AcceptanceConfig) -> CriterionResult:
    q32 = build_ysystem_quiver(dynkin("A3"), 2)
    cases = [
        ("pentagon", _a2(), A2_SEQUENCE, cfg.quantum_order_rank2),
        ("(A3,2)", q32.B, composite_sequence(q32, 12), cfg.quantum_order),
    ]
    rows = {}
    ok = True
    for name, B, seq, order in cases:
        qrun = run_quantum(B, seq, order)
        crun = run_sequence(B, seq)
        leads = tropical_quantum_y(B, seq)
        lead_bad = []
        for st, cst, lead in zip(qrun, crun.steps, leads):
            if st.seed.leads != lead:
                lead_bad.append(f"t={st.index} q-powers")
            if any(Y.lead != cst.tropical.c_vector(i) for i, Y in enumerate(st.seed.variables)):
                lead_bad.append(f"t={st.index} c-vectors")
            if st.eps is not None and st.eps != cst.eps:
                lead_bad.append(f"t={st.index} sign")
        q1 = [(t, i) for t, i, good in check_q1_specialization(B, seq, order) if not good]
        rows[name] = {"lead_mismatches": lead_bad, "q1_mismatches": q1}
        ok = ok and not lead_bad and not q1
    y23 = run_quantum(_a2(), A2_SEQUENCE, cfg.quantum_order_rank2)[3].seed.variables[1]
    y23_form = {"ordered_q_power": y23.ordered_power(), "vector": list(y23.lead)}
    ok = ok and y23_form == {"ordered_q_power": -1, "vector": [-1, -1]}
    rows["[Y2(3)]"] = y23_form
    return CriterionResult(
        13, "quantum lead parts and q=1 limit", ok, y23_form, {"ordered_q_power": -1, "vector": [-1, -1]}, "exact", rows,
    )


# 14 ------------------------------------------------------------------------
def criterion_14(cfg: AcceptanceConfig) -> CriterionResult:
    q = build_ysystem_quiver(dynkin("A3"), 2)
    seq = composite_sequence(q, 2 * (dynkin("A3").coxeter + 2))
    rep = verify_qdi(q.B, seq, cfg.quantum_order, id="quantum-identity-A3-2")
    d = rep.as_dict()
    return CriterionResult(
        14, "quantum identity for (A3,2)", rep.ok, d["lhs"], 1, d["tol"], d["detail"],
    )


@dataclass(frozen=True)
class Criterion:
    number: int
    tags: frozenset
    check: Callable[[AcceptanceConfig], CriterionResult]


CRITERIA = (
    Criterion(1, frozenset({"a2", "classical", "seeds"}), criterion_1),
    Criterion(2, frozenset({"pentagon", "classical", "signs"}), criterion_2),
    Criterion(3, frozenset({"random", "classical", "seeds"}), criterion_3),
    Criterion(4, frozenset({"random", "separation", "classical"}), criterion_4),
    Criterion(5, frozenset({"random", "sign-coherence", "classical"}), criterion_5),
    Criterion(6, frozenset({"ysystem", "period"}), criterion_6),
    Criterion(7, frozenset({"ysystem", "diagram"}), criterion_7),
    Criterion(8, frozenset({"ysystem", "iteration"}), criterion_8),
    Criterion(9, frozenset({"dilog", "ysystem"}), criterion_9),
    Criterion(10, frozenset({"dilog", "pentagon", "classical"}), criterion_10),
    Criterion(11, frozenset({"dilog", "ysystem"}), criterion_11),
    Criterion(12, frozenset({"quantum", "pentagon"}), criterion_12),
    Criterion(13, frozenset({"quantum", "pentagon"}), criterion_13),
    Criterion(14, frozenset({"quantum", "ysystem"}), criterion_14),
)


def select_criteria(only: Iterable[str] | None = None) -> list[Criterion]:
    """Criteria whose number or tag appears in ``only`` (all when empty)."""
    keys = {k.strip().lower() for k in (only or ()) if k.strip()}
    if not keys:
        return list(CRITERIA)
    out = [c for c in CRITERIA if str(c.number) in keys or c.tags & keys]
    known = {str(c.number) for c in CRITERIA} | set().union(*(c.tags for c in CRITERIA))
    unknown = keys - known
    if unknown:
        raise ValueError(f"unknown criterion selector(s): {sorted(unknown)}")
    return out


def run_acceptance(cfg: AcceptanceConfig = AcceptanceConfig(), only: Iterable[str] | None = None) -> list[CriterionResult]:
    results = []
    for c in select_criteria(only):
        t0 = time.perf_counter()
        res = c.check(cfg)
        results.append(replace(res, seconds=time.perf_counter() - t0))
    return results
