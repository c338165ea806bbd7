"""Monte Carlo operating characteristics for both design strategies.

Replications use independent counter-derived RNG streams (`default_rng([seed,
rep])`) so results are reproducible regardless of execution order. Reports are
rendered with fixed formatting so identical configurations produce
byte-identical artifacts.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .boin import BoinBoundaries, eliminate_safety, EliminationConfig, lambda_bounds
from .boin12 import (Boin12Config, DoseState, RdsTable, decide,
                     default_rds_table, generate_rds_table, select_obd)
from .copula import DoseScenario, sample_cohort_counts, joint_pmf
from .merit import MeritDesign, MeritSpec, admissible, search
from .outcomes import (DEFAULT_UTILITY, UtilityTable, ValidationError,
                       quasi_events_joint, utility_brt)


@dataclass(frozen=True)
class TwoStageConfig:
    """Escalation stage (toxicity-only interval design) plus randomized stage."""

    target_t: float = 0.3
    boundaries: BoinBoundaries = None
    cohort_size: int = 3
    max_per_dose: int = 12
    stage1_max_total: int | None = None      # default 6 * n_doses at runtime
    safety_cutoff: float = 0.95
    carry_count: int = 2
    stage2: MeritDesign | MeritSpec = None
    utility: UtilityTable = DEFAULT_UTILITY

    def __post_init__(self):
        if self.boundaries is None:
            object.__setattr__(self, "boundaries", lambda_bounds(self.target_t))
        if self.stage2 is None:
            object.__setattr__(self, "stage2", MeritSpec())
        if self.carry_count < 1:
            raise ValidationError("carry_count must be >= 1", field="carry_count")


@dataclass(frozen=True)
class SimConfig:
    scenario: DoseScenario
    design: Boin12Config | TwoStageConfig
    n_sim: int = 1000
    seed: int = 0
    start_dose: int = 1

    def __post_init__(self):
        if self.n_sim < 1:
            raise ValidationError("n_sim must be >= 1", field="n_sim")
        if not (1 <= self.start_dose <= self.scenario.n_doses):
            raise ValidationError(
                f"start_dose {self.start_dose} outside 1..{self.scenario.n_doses}",
                field="start_dose")


@dataclass
class OperatingCharacteristics:
    """Aggregate simulation summaries.

    early_termination_pct counts replications stopped without exhausting the
    sample-size budget (all doses eliminated, or no arms carried into the
    randomized stage).
    """

    n_doses: int
    n_sim: int
    seed: int
    selection_pct: list[float]
    none_selected_pct: float
    avg_patients: list[float]
    avg_total_patients: float
    early_termination_pct: float
    true_best_dose: int
    avg_patients_at_true_best: float
    detail: dict = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "n_doses": self.n_doses, "n_sim": self.n_sim, "seed": self.seed,
            "selection_pct": [round(v, 6) for v in self.selection_pct],
            "none_selected_pct": round(self.none_selected_pct, 6),
            "avg_patients": [round(v, 6) for v in self.avg_patients],
            "avg_total_patients": round(self.avg_total_patients, 6),
            "early_termination_pct": round(self.early_termination_pct, 6),
            "true_best_dose": self.true_best_dose,
            "avg_patients_at_true_best": round(self.avg_patients_at_true_best, 6),
        }

    def to_csv(self, header_lines=()) -> str:
        buf = io.StringIO()
        for line in header_lines:
            buf.write(f"# {line}\n")
        buf.write(f"# n_sim={self.n_sim} seed={self.seed} "
                  f"true_best_dose={self.true_best_dose}\n")
        buf.write("dose,selection_pct,avg_patients\n")
        for j in range(self.n_doses):
            buf.write(f"{j + 1},{self.selection_pct[j]:.4f},{self.avg_patients[j]:.4f}\n")
        buf.write(f"none,{self.none_selected_pct:.4f},\n")
        buf.write(f"# avg_total={self.avg_total_patients:.4f} "
                  f"early_termination_pct={self.early_termination_pct:.4f} "
                  f"avg_patients_at_true_best={self.avg_patients_at_true_best:.4f}\n")
        return buf.getvalue()


def true_best_dose(scenario: DoseScenario, utility: UtilityTable) -> int:
    """1-based dose maximizing true mean utility (ties to the lower dose)."""
    scores = [utility_brt(scenario.pmf(j + 1), utility)
              for j in range(scenario.n_doses)]
    best = max(range(scenario.n_doses), key=lambda j: (scores[j], -j))
    return best + 1


def _aggregate(scenario, design_utility, n_sim, seed, selections, patients,
               early, detail) -> OperatingCharacteristics:
    J = scenario.n_doses
    sel_pct = [100.0 * selections.count(j + 1) / n_sim for j in range(J)]
    none_pct = 100.0 * selections.count(None) / n_sim
    avg_pat = [float(np.mean([p[j] for p in patients])) for j in range(J)]
    best = true_best_dose(scenario, design_utility)
    return OperatingCharacteristics(
        n_doses=J, n_sim=n_sim, seed=seed,
        selection_pct=sel_pct, none_selected_pct=none_pct,
        avg_patients=avg_pat,
        avg_total_patients=float(np.mean([sum(p) for p in patients])),
        early_termination_pct=100.0 * early / n_sim,
        true_best_dose=best,
        avg_patients_at_true_best=avg_pat[best - 1],
        detail=detail)


def simulate_boin12(cfg: SimConfig, collect_audit: bool = False) -> OperatingCharacteristics:
    """Replicate the efficacy-integrated design against a truth scenario."""
    design = cfg.design
    if not isinstance(design, Boin12Config):
        raise ValidationError("simulate_boin12 needs a Boin12Config design",
                              field="design")
    scenario = cfg.scenario
    J = scenario.n_doses
    table: RdsTable | None = None
    if design.mode == "table":
        table = (generate_rds_table(design, range(design.max_per_dose + 1))
                 if design.generator is not None else default_rds_table())

    selections: list[int | None] = []
    patients: list[list[int]] = []
    early = 0
    audit: list[tuple[int, int, bool]] = []   # (rep, dose, eliminated-at-assignment)

    for rep in range(cfg.n_sim):
        rng = np.random.default_rng([cfg.seed, rep])
        state = [DoseState() for _ in range(J)]
        current = cfg.start_dose
        terminated_early = False
        while True:
            decision = decide(state, current, design, table)
            if decision.action == "terminate":
                reason = decision.rationale.get("termination_reason", "")
                terminated_early = not reason.startswith("max_total")
                break
            dose = decision.dose
            if collect_audit:
                audit.append((rep, dose, state[dose - 1].eliminated))
            x_t, x_e, _ = sample_cohort_counts(
                rng, scenario.pi_t[dose - 1], scenario.pi_e[dose - 1],
                scenario.psi, design.cohort_size)
            state[dose - 1] = state[dose - 1].add(design.cohort_size, x_t, x_e)
            current = dose
        selections.append(select_obd(state, design, table))
        patients.append([ds.n for ds in state])
        early += terminated_early

    detail = {"audit": audit} if collect_audit else {}
    return _aggregate(scenario, design.utility, cfg.n_sim, cfg.seed,
                      selections, patients, early, detail)


def isotonic_pava(values, weights):
    """Weighted pool-adjacent-violators fit, nondecreasing."""
    vals = [float(v) for v in values]
    wts = [float(w) for w in weights]
    blocks = [[v, w, 1] for v, w in zip(vals, wts)]   # mean, weight, length
    merged: list[list[float]] = []
    for b in blocks:
        merged.append(b)
        while len(merged) > 1 and merged[-2][0] > merged[-1][0] + 1e-15:
            v2, w2, l2 = merged.pop()
            v1, w1, l1 = merged.pop()
            w = w1 + w2
            merged.append([(v1 * w1 + v2 * w2) / w, w, l1 + l2])
    out = []
    for v, _, length in merged:
        out.extend([v] * length)
    return out


def _stage1_escalation(rng, scenario, ts: TwoStageConfig, start: int,
                       stage1_max: int):
    """Toxicity-guided escalation.

    Returns per-dose (n, x_t, x_e) plus the elimination floor: 1-based level
    at and above which doses were removed for safety (J+1 when none were).
    """
    J = scenario.n_doses
    n = [0] * J
    x_t = [0] * J
    x_e = [0] * J
    elim_floor = J + 1          # doses >= floor are eliminated (1-based)
    current = start
    b = ts.boundaries
    ecfg = EliminationConfig(phi_t_limit=ts.target_t, phi_e_limit=0.01,
                             cutoff=ts.safety_cutoff, min_n=3)
    while sum(n) + ts.cohort_size <= stage1_max:
        t, e, _ = sample_cohort_counts(rng, scenario.pi_t[current - 1],
                                       scenario.pi_e[current - 1],
                                       scenario.psi, ts.cohort_size)
        n[current - 1] += ts.cohort_size
        x_t[current - 1] += t
        x_e[current - 1] += e
        for j in range(J):
            if n[j] and eliminate_safety(n[j], x_t[j], ecfg):
                elim_floor = min(elim_floor, j + 1)
        if elim_floor == 1:
            return n, x_t, x_e, elim_floor      # nothing tolerable
        current = min(current, elim_floor - 1)
        nj, xj = n[current - 1], x_t[current - 1]
        if b.deescalation_required(xj, nj):
            nxt = max(1, current - 1)
        elif b.escalation_ok(xj, nj) and current + 1 < elim_floor and current < J:
            nxt = current + 1
        else:
            nxt = current
        if n[nxt - 1] >= ts.max_per_dose:
            if n[current - 1] >= ts.max_per_dose:
                break
            nxt = current
        current = nxt
    return n, x_t, x_e, elim_floor


def stage1_mtd(n, x_t, target: float, elim_floor: int) -> int | None:
    """Isotonic-regression MTD: treated non-eliminated dose whose monotone
    posterior toxicity estimate is closest to the target (ties go lower)."""
    treated = [j for j in range(len(n)) if n[j] > 0 and j + 1 < elim_floor]
    if not treated:
        return None
    means = [(1 + x_t[j]) / (2 + n[j]) for j in treated]
    weights = [2 + n[j] for j in treated]
    iso = isotonic_pava(means, weights)
    best = min(range(len(treated)),
               key=lambda i: (abs(iso[i] - target), treated[i]))
    return treated[best] + 1


def simulate_two_stage(cfg: SimConfig,
                       collect_detail: bool = False) -> OperatingCharacteristics:
    """Escalation to the MTD, then equal randomization with the exact
    admissibility rule; OBD picked among admissible arms by mean utility."""
    ts = cfg.design
    if not isinstance(ts, TwoStageConfig):
        raise ValidationError("simulate_two_stage needs a TwoStageConfig design",
                              field="design")
    scenario = cfg.scenario
    J = scenario.n_doses
    stage1_max = ts.stage1_max_total or 6 * J
    design = ts.stage2 if isinstance(ts.stage2, MeritDesign) else search(ts.stage2)

    selections: list[int | None] = []
    patients: list[list[int]] = []
    early = 0
    adm_tallies: list[dict] = []

    for rep in range(cfg.n_sim):
        rng = np.random.default_rng([cfg.seed, rep])
        n, x_t, x_e, elim_floor = _stage1_escalation(
            rng, scenario, ts, cfg.start_dose, stage1_max)
        mtd = stage1_mtd(n, x_t, ts.target_t, elim_floor)
        if mtd is None:
            selections.append(None)
            patients.append(list(n))
            early += 1
            if collect_detail:
                adm_tallies.append({})
            continue
        lo = max(1, mtd - ts.carry_count + 1)
        arms = [d for d in range(lo, mtd + 1) if n[d - 1] > 0 or d == mtd]
        per_arm = {}
        for d in arms:
            t, e, joint = sample_cohort_counts(
                rng, scenario.pi_t[d - 1], scenario.pi_e[d - 1], scenario.psi,
                design.n)
            per_arm[d] = (t, e, joint, admissible(e, t, design))
            n[d - 1] += design.n
        admissible_arms = [d for d in arms if per_arm[d][3]]
        if admissible_arms:
            def mean_utility(d):
                joint = per_arm[d][2]
                return 100.0 * quasi_events_joint(*joint, ts.utility) / design.n
            pick = max(admissible_arms, key=lambda d: (mean_utility(d), -d))
            selections.append(pick)
        else:
            selections.append(None)
        patients.append(list(n))
        if collect_detail:
            adm_tallies.append({d: per_arm[d][3] for d in arms})

    detail = {"merit_design": design, "admissibility": adm_tallies,
              "selections": selections} if collect_detail else {}
    return _aggregate(scenario, ts.utility, cfg.n_sim, cfg.seed,
                      selections, patients, early, detail)


def advise_sample_size(n_doses: int, strategy: str, arms: int = 2):
    """Rule-of-thumb total sample size range.

    Efficacy-integrated: 6J to 9J. Two-stage: 6J for escalation plus 20 to 40
    per randomized arm.
    """
    if n_doses < 1:
        raise ValidationError("n_doses must be >= 1", field="n_doses")
    if strategy == "efficacy-integrated":
        return (6 * n_doses, 9 * n_doses)
    if strategy == "two-stage":
        return (6 * n_doses + 20 * arms, 6 * n_doses + 40 * arms)
    raise ValidationError(f"unknown strategy {strategy!r}", field="strategy")
