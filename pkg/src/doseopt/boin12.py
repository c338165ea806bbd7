"""Efficacy-integrated interval design: desirability scores and dose decisions.

The design tabulates, for every observable (n, #tox, #eff) configuration at a
dose, a rank-based desirability score (RDS): the competition rank of the
posterior probability that the dose's standardized utility beats a benchmark.
Dose assignment combines a toxicity boundary check with an RDS comparison over
the admissible neighbor doses; admissibility is policed by the elimination
rules in :mod:`doseopt.boin`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Literal

import numpy as np
from scipy.special import betainc

from .boin import (BoinBoundaries, EliminationConfig, beta_tail,
                   eliminate_futility, eliminate_safety, lambda_bounds)
from .outcomes import (DEFAULT_UTILITY, UtilityTable, ValidationError,
                       benchmark_utility, quasi_events)

ELIMINATED = "E"
DESIRABILITY_TIE_TOL = 1e-12


@dataclass(frozen=True)
class RdsGeneratorParams:
    """Quasi-beta prior shapes and benchmark for the desirability tail.

    The posterior for a dose with pseudo-event mass x out of n is
    Beta(a0 + x, b0 + n - x); desirability is its tail beyond u_b. The
    calibrated flag records whether the parameters passed (or came from)
    calibration against a reference table; trial conduct refuses to run the
    generator with uncalibrated parameters.
    """

    a0: float = 1.0
    b0: float = 1.0
    u_b: float = 0.705
    calibrated: bool = True

    def __post_init__(self):
        if self.a0 <= 0 or self.b0 <= 0:
            raise ValidationError("prior shapes must be positive", field="a0")
        if not (0.0 < self.u_b < 1.0):
            raise ValidationError(f"benchmark u_b={self.u_b} outside (0,1)", field="u_b")

    @classmethod
    def for_limits(cls, phi_t: float, phi_e: float,
                   utility: UtilityTable = DEFAULT_UTILITY) -> "RdsGeneratorParams":
        """Uniform prior with the benchmark midway between the borderline dose
        utility and the perfect score: u_b = (benchmark/100 + 1)/2.

        For the default limits (0.35, 0.25) this gives u_b = 0.705, which
        reproduces the published default score table exactly.
        """
        bench = benchmark_utility(phi_t, phi_e, utility) / 100.0
        return cls(a0=1.0, b0=1.0, u_b=(bench + 1.0) / 2.0)


@dataclass(frozen=True)
class Boin12Config:
    """Full configuration of the efficacy-integrated design."""

    phi_t: float = 0.35
    phi_e: float = 0.25
    utility: UtilityTable = DEFAULT_UTILITY
    boundaries: BoinBoundaries = None  # filled from phi_t when omitted
    n_star: int = 6
    cohort_size: int = 3
    max_per_dose: int = 12
    max_total: int = 36
    elimination: EliminationConfig = None
    generator: RdsGeneratorParams | None = None
    mode: Literal["table", "generator"] = "generator"
    exploration_override: bool = True

    def __post_init__(self):
        if self.boundaries is None:
            object.__setattr__(self, "boundaries", lambda_bounds(self.phi_t))
        if self.elimination is None:
            object.__setattr__(self, "elimination",
                               EliminationConfig(phi_t_limit=self.phi_t,
                                                phi_e_limit=self.phi_e))
        if self.generator is None:
            object.__setattr__(self, "generator",
                               RdsGeneratorParams.for_limits(self.phi_t, self.phi_e,
                                                             self.utility))
        if self.n_star < self.cohort_size:
            raise ValidationError("n_star must be >= cohort_size", field="n_star")
        if self.max_per_dose > self.max_total:
            raise ValidationError("max_per_dose cannot exceed max_total",
                                  field="max_per_dose")
        if self.cohort_size < 1:
            raise ValidationError("cohort_size must be >= 1", field="cohort_size")


@dataclass(frozen=True)
class RdsTable:
    """Map from (n, n_tox, n_eff) to a positive integer RDS or the E sentinel."""

    rows: dict

    def entry(self, n: int, x_t: int, x_e: int):
        key = (n, x_t, x_e)
        if key not in self.rows:
            raise ValidationError(f"no decision-table row for {key}", field="row")
        return self.rows[key]

    def scored(self) -> dict:
        return {k: v for k, v in self.rows.items() if v != ELIMINATED}

    def eliminated_keys(self) -> set:
        return {k for k, v in self.rows.items() if v == ELIMINATED}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "n_tox", "n_eff", "rds_or_E"])
        for key in sorted(self.rows):
            w.writerow([key[0], key[1], key[2], self.rows[key]])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "RdsTable":
        rows = {}
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != ["n", "n_tox", "n_eff", "rds_or_E"]:
            raise ValidationError(f"unexpected score-table header: {header}", field="header")
        for line in reader:
            if not line:
                continue
            n, x_t, x_e, val = int(line[0]), int(line[1]), int(line[2]), line[3]
            rows[(n, x_t, x_e)] = ELIMINATED if val == ELIMINATED else int(val)
        return cls(rows=rows)


def default_rds_table() -> RdsTable:
    """The shipped default score table (cohort-of-3 layout, n in {0, 3, 6})."""
    text = resources.files("doseopt.data").joinpath("rds_table_default.csv").read_text()
    return RdsTable.from_csv(text)


def desirability(n: int, x: float, cfg: Boin12Config) -> float:
    """Posterior probability the standardized utility exceeds the benchmark.

    x is the pseudo-event mass (see quasi_events); for n = 0 this is the
    prior tail. beta_tail is cached, so repeated decisions over the same
    configurations cost one dictionary hit.
    """
    if not (0.0 <= x <= n + 1e-9):
        raise ValidationError(f"pseudo-events {x} outside 0..{n}", field="x")
    g = cfg.generator
    if g is None:
        raise ValidationError("config has no generator parameters", field="generator")
    return beta_tail(g.a0 + x, g.b0 + n - x, g.u_b)


def _competition_ranks(values: dict) -> dict:
    """Ascending competition ranking: tied values share a rank, ranks skip."""
    keys = list(values)
    vals = np.array([values[k] for k in keys])
    ranks = {}
    for i, k in enumerate(keys):
        ranks[k] = 1 + int(np.sum(vals < vals[i] - DESIRABILITY_TIE_TOL))
    return ranks


def generate_rds_table(cfg: Boin12Config, n_values) -> RdsTable:
    """Enumerate all (n, x_t, x_e) over n_values, mark eliminations, rank the rest.

    Rows are marked E exactly when the safety or futility rule fires; scored
    rows get ascending competition ranks of their desirability.
    """
    n_values = sorted(set(int(n) for n in n_values))
    if not n_values:
        raise ValidationError("n_values must be nonempty", field="n_values")
    if cfg.generator is None or not cfg.generator.calibrated:
        raise ValidationError(
            "generator parameters are uncalibrated; run calibrate_generator "
            "against a reference table or use the shipped table",
            field="generator")
    des = {}
    rows = {}
    for n in n_values:
        for x_t in range(n + 1):
            for x_e in range(n + 1):
                key = (n, x_t, x_e)
                if (eliminate_safety(n, x_t, cfg.elimination)
                        or eliminate_futility(n, x_e, cfg.elimination)):
                    rows[key] = ELIMINATED
                else:
                    des[key] = desirability(n, quasi_events(n, x_t, x_e, cfg.utility), cfg)
    rows.update(_competition_ranks(des))
    return RdsTable(rows=rows)


class CalibrationError(ValidationError):
    """No parameter triple reproduces the reference table exactly."""

    def __init__(self, best_params, mismatch_count, mismatched_rows):
        super().__init__(
            f"calibration failed: best parameters {best_params} still mismatch "
            f"{mismatch_count} rows: {sorted(mismatched_rows)[:8]}",
            field="generator")
        self.best_params = best_params
        self.mismatch_count = mismatch_count
        self.mismatched_rows = mismatched_rows


def calibrate_generator(cfg: Boin12Config, reference: RdsTable,
                        a_grid=None, ub_grid=None) -> RdsGeneratorParams:
    """Search (a0, b0, u_b) until the generated table matches the reference.

    Lattice search ordered by prior mass a0+b0 then a0 then u_b, covering
    a0+b0 in [0.5, 8] and u_b in [0.3, 0.9]; the first exact reproduction of
    every rank, tie, and E cell wins. Raises CalibrationError with the
    best-achieved mismatch count when no lattice point is exact.
    """
    if a_grid is None:
        a_grid = [round(0.25 * i, 2) for i in range(1, 17)]  # 0.25 .. 4.0
    if ub_grid is None:
        ub_grid = [round(0.30 + 0.005 * i, 3) for i in range(121)]  # 0.30 .. 0.90
    ref_rows = reference.rows
    keys = sorted(ref_rows)
    e_keys = {k for k in keys if ref_rows[k] == ELIMINATED}

    # E cells do not depend on the generator: verify once against the rules
    rule_e = {k for k in keys
              if eliminate_safety(k[0], k[1], cfg.elimination)
              or eliminate_futility(k[0], k[2], cfg.elimination)}
    e_mismatch = rule_e.symmetric_difference(e_keys)

    scored_keys = [k for k in keys if k not in rule_e]
    want = np.array([ref_rows[k] if isinstance(ref_rows[k], int) else -1
                     for k in scored_keys])
    ns = np.array([k[0] for k in scored_keys], dtype=float)
    xs = np.array([quasi_events(k[0], k[1], k[2], cfg.utility) for k in scored_keys])

    best = None  # (mismatch_count, params, rows)
    pairs = sorted(((a, b) for a in a_grid for b in a_grid),
                   key=lambda p: (p[0] + p[1], p[0], p[1]))
    for a0, b0 in pairs:
        # desirability for all scored rows across the whole u_b grid at once
        tails = 1.0 - betainc(a0 + xs[:, None], b0 + (ns - xs)[:, None],
                              np.asarray(ub_grid)[None, :])
        for j, ub in enumerate(ub_grid):
            d = tails[:, j]
            ranks = 1 + np.sum(d[None, :] < d[:, None] - DESIRABILITY_TIE_TOL, axis=1)
            bad = np.nonzero(ranks != want)[0]
            count = len(bad) + len(e_mismatch)
            if count == 0:
                return RdsGeneratorParams(a0=a0, b0=b0, u_b=ub)
            if best is None or count < best[0]:
                best = (count, RdsGeneratorParams(a0=a0, b0=b0, u_b=ub),
                        {scored_keys[i] for i in bad} | e_mismatch)
    raise CalibrationError(best[1], best[0], best[2])


@dataclass(frozen=True)
class DoseState:
    """Accumulated outcomes at one dose."""

    n: int = 0
    x_t: int = 0
    x_e: int = 0
    eliminated: bool = False
    elimination_reason: str | None = None

    def __post_init__(self):
        if not (0 <= self.x_t <= self.n and 0 <= self.x_e <= self.n):
            raise ValidationError(
                f"inconsistent dose state (n={self.n}, x_t={self.x_t}, x_e={self.x_e})",
                field="state")

    def add(self, size: int, x_t: int, x_e: int) -> "DoseState":
        return replace(self, n=self.n + size, x_t=self.x_t + x_t, x_e=self.x_e + x_e)


@dataclass(frozen=True)
class Decision:
    """A dose-assignment or termination decision plus its full rationale."""

    action: str                       # "assign" | "terminate"
    dose: int | None                  # 1-based dose level for "assign"
    rationale: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"action": self.action, "dose": self.dose, "rationale": self.rationale}


def refresh_eliminations(state: list[DoseState], cfg: Boin12Config) -> list[DoseState]:
    """Recompute elimination flags from counts alone.

    A safety elimination removes the dose and every higher dose; a futility
    elimination removes only the offending dose (efficacy need not be
    monotone in dose).
    """
    safety_floor = None
    futile = set()
    for j, ds in enumerate(state):
        if eliminate_safety(ds.n, ds.x_t, cfg.elimination):
            safety_floor = j if safety_floor is None else min(safety_floor, j)
        if eliminate_futility(ds.n, ds.x_e, cfg.elimination):
            futile.add(j)
    if safety_floor is None and not futile \
            and not any(ds.eliminated for ds in state):
        return list(state)
    out = []
    for j, ds in enumerate(state):
        if safety_floor is not None and j >= safety_floor:
            reason = "safety" if eliminate_safety(ds.n, ds.x_t, cfg.elimination) \
                else "above-unsafe-dose"
            out.append(replace(ds, eliminated=True, elimination_reason=reason))
        elif j in futile:
            out.append(replace(ds, eliminated=True, elimination_reason="futility"))
        else:
            out.append(replace(ds, eliminated=False, elimination_reason=None))
    return out


def _score_of(ds: DoseState, cfg: Boin12Config, table: RdsTable | None):
    """Comparable desirability score of a dose (untried doses use n=0)."""
    if cfg.mode == "table":
        if table is None:
            raise ValidationError("table-driven decisions need a score table",
                                  field="table")
        entry = table.entry(ds.n, ds.x_t, ds.x_e)
        if entry == ELIMINATED:
            raise ValidationError(
                f"table marks ({ds.n}, {ds.x_t}, {ds.x_e}) eliminated but the "
                "elimination rules do not; table and config disagree",
                field="table")
        return entry
    return desirability(ds.n, quasi_events(ds.n, ds.x_t, ds.x_e, cfg.utility), cfg)


def decide(state: list[DoseState], current: int, cfg: Boin12Config,
           table: RdsTable | None = None) -> Decision:
    """Next-cohort decision for the trial state with the given current dose.

    current is the 1-based dose level being administered. Pure function of
    its arguments; the returned rationale reproduces every input it used.
    """
    n_doses = len(state)
    if not (1 <= current <= n_doses):
        raise ValidationError(f"current dose {current} outside 1..{n_doses}",
                              field="current")
    state = refresh_eliminations(state, cfg)
    rationale: dict = {"current": current}

    alive = [j for j in range(n_doses) if not state[j].eliminated]
    rationale["eliminated"] = {j + 1: state[j].elimination_reason
                               for j in range(n_doses) if state[j].eliminated}
    if not alive:
        rationale["termination_reason"] = "all doses eliminated"
        return Decision(action="terminate", dose=None, rationale=rationale)

    total = sum(ds.n for ds in state)
    if total >= cfg.max_total:
        rationale["termination_reason"] = f"max_total {cfg.max_total} reached"
        return Decision(action="terminate", dose=None, rationale=rationale)

    cur = state[current - 1]
    b = cfg.boundaries
    rationale["boundaries"] = {"lambda_e": b.lambda_e, "lambda_d": b.lambda_d}

    if cur.n == 0:
        # trial not yet started at this dose: treat at it unless eliminated
        comparison = "untried"
        cand_levels = [current]
    elif b.deescalation_required(cur.x_t, cur.n):
        comparison = "deescalate"
        cand_levels = [current - 1]
    elif b.escalation_ok(cur.x_t, cur.n):
        comparison = "escalate-eligible"
        cand_levels = [current - 1, current, current + 1]
    else:
        comparison = "stay-range"
        cand_levels = [current - 1, current]
    rationale["observed_rate"] = {"x_t": cur.x_t, "n": cur.n}
    rationale["comparison"] = comparison

    assignable = [j for j in alive if state[j].n < cfg.max_per_dose]
    if not assignable:
        rationale["termination_reason"] = "all non-eliminated doses at max_per_dose"
        return Decision(action="terminate", dose=None, rationale=rationale)

    candidates = [lv for lv in cand_levels
                  if 1 <= lv <= n_doses and (lv - 1) in assignable]
    rationale["candidates"] = candidates

    # exploration override: with a quiet current dose fully observed to the
    # cutoff, jump to the next higher dose if it is untried and admissible
    if (cfg.exploration_override and comparison == "escalate-eligible"
            and cur.n >= cfg.n_star and current + 1 <= n_doses):
        nxt = state[current]
        if nxt.n == 0 and not nxt.eliminated:
            rationale["exploration_override"] = current + 1
            return Decision(action="assign", dose=current + 1, rationale=rationale)

    scores = {}
    for lv in candidates:
        scores[lv] = _score_of(state[lv - 1], cfg, table)
    rationale["scores"] = {lv: scores[lv] for lv in sorted(scores)}

    if not candidates:
        fallback = min(assignable) + 1
        rationale["fallback"] = fallback
        return Decision(action="assign", dose=fallback, rationale=rationale)

    # highest score; ties prefer the current dose, then the lower level
    best = max(candidates, key=lambda lv: (scores[lv], lv == current, -lv))
    return Decision(action="assign", dose=best, rationale=rationale)


def select_obd(state: list[DoseState], cfg: Boin12Config,
               table: RdsTable | None = None) -> int | None:
    """End-of-trial selection: the non-eliminated treated dose with the
    highest desirability (ties go to the lower dose); None if no dose
    qualifies."""
    state = refresh_eliminations(state, cfg)
    contenders = [j for j, ds in enumerate(state) if not ds.eliminated and ds.n >= 1]
    if not contenders:
        return None
    scores = {j: _score_of(state[j], cfg, table) for j in contenders}
    best = max(contenders, key=lambda j: (scores[j], -j))
    return best + 1
