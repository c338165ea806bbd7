"""Live-trial conduct: an append-only event log that every decision replays from.

Each trial is one line-delimited JSON file: a header line with the frozen
configuration, then one self-describing record per cohort (and an optional
closing record). State is a pure fold of the decision engine over the log, so
any reader can reproduce every recommendation bit-for-bit.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .boin12 import (Boin12Config, Decision, DoseState, RdsTable, decide,
                     default_rds_table, generate_rds_table,
                     refresh_eliminations, select_obd)
from .outcomes import ValidationError
from . import configio


def _canon(obj) -> dict:
    """JSON-normalized form (string keys, parsed floats) for comparisons."""
    return json.loads(json.dumps(obj, sort_keys=True))

FORMAT_VERSION = "doseopt-trial/1"

ENROLLING = "enrolling"
TERMINATED = "terminated"
CLOSED = "closed"


class ConflictError(ValidationError):
    pass


class ReplayError(ValidationError):
    """A log line failed to parse or verify; carries its location."""

    def __init__(self, message: str, line_no: int, offset: int):
        super().__init__(f"{message} (line {line_no}, byte offset {offset})")
        self.line_no = line_no
        self.offset = offset


@dataclass(frozen=True)
class ConductConfig:
    """Trial-level settings wrapped around the decision design.

    table_rows picks the rows of a table-driven trial's decision table:
    "all" covers every n up to the per-dose cap (tolerates odd cohort
    sizes), "cohort-multiples" matches the protocol-printed table (lookups
    off the multiples fail loudly as protocol deviations).
    """

    design: Boin12Config
    n_doses: int
    start_dose: int = 1
    table_rows: str = "all"
    table_n_max: int | None = None        # default: the per-dose cap

    def __post_init__(self):
        if self.n_doses < 1:
            raise ValidationError("n_doses must be >= 1", field="n_doses")
        if not (1 <= self.start_dose <= self.n_doses):
            raise ValidationError("start_dose outside the dose grid",
                                  field="start_dose")
        if self.table_rows not in ("all", "cohort-multiples"):
            raise ValidationError(f"unknown table_rows {self.table_rows!r}",
                                  field="table_rows")


@dataclass(frozen=True)
class CohortEvent:
    dose: int
    size: int
    x_t: int
    x_e: int
    note: str = ""
    override: bool = False
    event_key: str | None = None

    def validate(self, n_doses: int):
        if not (1 <= self.dose <= n_doses):
            raise ValidationError(f"dose {self.dose} outside 1..{n_doses}",
                                  field="dose")
        if self.size < 1:
            raise ValidationError("cohort size must be >= 1", field="size")
        if not (0 <= self.x_t <= self.size):
            raise ValidationError(f"x_t={self.x_t} exceeds cohort size {self.size}",
                                  field="x_t")
        if not (0 <= self.x_e <= self.size):
            raise ValidationError(f"x_e={self.x_e} exceeds cohort size {self.size}",
                                  field="x_e")


@dataclass
class TrialRecord:
    """Reconstructed view of one trial."""

    trial_id: str
    config: ConductConfig
    created_at: str
    status: str = ENROLLING
    events: list = field(default_factory=list)       # raw event dicts
    decisions: list = field(default_factory=list)    # Decision per event
    state: list = field(default_factory=list)        # DoseState per dose
    recommendation: int | None = None
    final_obd: int | None = None
    closed: dict | None = None
    warnings: list = field(default_factory=list)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _decision_table(cfg: ConductConfig) -> RdsTable | None:
    design = cfg.design
    if design.mode == "generator":
        return None
    if design.generator is not None and design.generator.calibrated:
        step = design.cohort_size if cfg.table_rows == "cohort-multiples" else 1
        n_max = cfg.table_n_max if cfg.table_n_max is not None else design.max_per_dose
        return generate_rds_table(design, range(0, n_max + 1, step))
    return default_rds_table()


def resolve_config(cfg: ConductConfig) -> tuple[ConductConfig, list[str]]:
    """Apply the calibration gate: an uncalibrated generator demotes the
    trial to table-driven decisions, with a warning recorded on the trial."""
    warnings = []
    design = cfg.design
    if design.mode == "generator" and design.generator is not None \
            and not design.generator.calibrated:
        from dataclasses import replace
        design = replace(design, mode="table")
        cfg = ConductConfig(design=design, n_doses=cfg.n_doses,
                            start_dose=cfg.start_dose)
        warnings.append("generator parameters uncalibrated; trial created in "
                        "table-driven mode")
    return cfg, warnings


class TrialStore:
    """Directory of trial logs; one writer at a time per trial."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, trial_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(trial_id, threading.Lock())

    def _path(self, trial_id: str) -> Path:
        if not trial_id or "/" in trial_id or "\\" in trial_id:
            raise ValidationError(f"bad trial id {trial_id!r}", field="trial_id")
        return self.root / f"{trial_id}.jsonl"

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.jsonl"))

    # -- creation ----------------------------------------------------------

    def create(self, cfg: ConductConfig, trial_id: str | None = None) -> TrialRecord:
        trial_id = trial_id or uuid.uuid4().hex[:12]
        path = self._path(trial_id)
        with self._lock(trial_id):
            if path.exists():
                raise ConflictError(f"trial {trial_id!r} already exists",
                                    field="trial_id")
            cfg, warnings = resolve_config(cfg)
            header = {"format": FORMAT_VERSION, "trial_id": trial_id,
                      "created_at": _now(),
                      "warnings": warnings,
                      "config": configio.conduct_config_to_dict(cfg)}
            self._append_line(path, header)
        return self.replay(trial_id)

    # -- event handling ----------------------------------------------------

    def record_cohort(self, trial_id: str, event: CohortEvent) -> Decision:
        with self._lock(trial_id):
            rec = self.replay(trial_id)
            if rec.status != ENROLLING:
                raise ValidationError(
                    f"trial {trial_id} is {rec.status}; no further cohorts",
                    field="status")
            event.validate(rec.config.n_doses)
            for prior in rec.events:
                if event.event_key and prior.get("event_key") == event.event_key:
                    # idempotent resubmission: return the decision already made
                    return Decision(**prior["decision"])
            if rec.recommendation is not None and event.dose != rec.recommendation \
                    and not event.override:
                raise ValidationError(
                    f"dose {event.dose} differs from the recommendation "
                    f"{rec.recommendation}; set the override flag to record it",
                    field="dose")
            state = list(rec.state)
            state[event.dose - 1] = state[event.dose - 1].add(
                event.size, event.x_t, event.x_e)
            table = _decision_table(rec.config)
            decision = decide(state, event.dose, rec.config.design, table)
            line = {"type": "cohort", "seq": len(rec.events) + 1,
                    "recorded_at": _now(),
                    "dose": event.dose, "size": event.size,
                    "x_t": event.x_t, "x_e": event.x_e,
                    "note": event.note, "override": event.override,
                    "event_key": event.event_key,
                    "decision": decision.to_dict()}
            self._append_line(self._path(trial_id), line)
            return decision

    def close(self, trial_id: str, force: bool = False) -> dict:
        with self._lock(trial_id):
            rec = self.replay(trial_id)
            if rec.status == CLOSED:
                raise ValidationError(f"trial {trial_id} already closed",
                                      field="status")
            if rec.status != TERMINATED and not force:
                raise ValidationError(
                    "trial still enrolling; pass force=True for an interim closure",
                    field="status")
            table = _decision_table(rec.config)
            obd = select_obd(rec.state, rec.config.design, table)
            line = {"type": "close", "closed_at": _now(),
                    "forced": rec.status != TERMINATED, "obd": obd}
            self._append_line(self._path(trial_id), line)
        return self.final_report(trial_id)

    # -- reading -----------------------------------------------------------

    def replay(self, trial_id: str) -> TrialRecord:
        """Rebuild the trial from its log, recomputing state from scratch."""
        path = self._path(trial_id)
        if not path.exists():
            raise ValidationError(f"no trial {trial_id!r}", field="trial_id")
        raw = path.read_bytes()
        lines = raw.split(b"\n")
        offset = 0
        rec: TrialRecord | None = None
        table = None
        for i, line in enumerate(lines, start=1):
            if line == b"" and offset + len(line) >= len(raw):
                break       # trailing newline at end of file
            try:
                obj = json.loads(line.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise ReplayError(f"corrupted log record: {exc}", i, offset)
            if i == 1:
                if obj.get("format") != FORMAT_VERSION:
                    raise ReplayError(
                        f"unsupported log format {obj.get('format')!r}", i, offset)
                cfg = configio.conduct_config_from_dict(obj["config"])
                rec = TrialRecord(trial_id=obj["trial_id"], config=cfg,
                                  created_at=obj["created_at"],
                                  warnings=list(obj.get("warnings", [])),
                                  state=[DoseState() for _ in range(cfg.n_doses)],
                                  recommendation=cfg.start_dose)
                table = _decision_table(cfg)
            elif obj.get("type") == "cohort":
                dose = obj["dose"]
                rec.state[dose - 1] = rec.state[dose - 1].add(
                    obj["size"], obj["x_t"], obj["x_e"])
                decision = decide(rec.state, dose, rec.config.design, table)
                stored = obj.get("decision")
                if stored is not None and stored != _canon(decision.to_dict()):
                    raise ReplayError(
                        "stored decision does not match replayed decision", i, offset)
                rec.events.append(obj)
                rec.decisions.append(decision)
                if decision.action == "terminate":
                    rec.status = TERMINATED
                    rec.recommendation = None
                else:
                    rec.recommendation = decision.dose
            elif obj.get("type") == "close":
                rec.status = CLOSED
                rec.final_obd = obj.get("obd")
                rec.closed = obj
                rec.recommendation = None
            else:
                raise ReplayError(f"unknown record type {obj.get('type')!r}", i, offset)
            offset += len(line) + 1
        if rec is None:
            raise ReplayError("empty log", 1, 0)
        rec.state = refresh_eliminations(rec.state, rec.config.design)
        return rec

    def final_report(self, trial_id: str) -> dict:
        rec = self.replay(trial_id)
        return {
            "trial_id": trial_id,
            "status": rec.status,
            "interim_closure": bool(rec.closed and rec.closed.get("forced")),
            "obd": rec.final_obd,
            "n_events": len(rec.events),
            "state": [{"dose": j + 1, "n": ds.n, "x_t": ds.x_t, "x_e": ds.x_e,
                       "eliminated": ds.eliminated}
                      for j, ds in enumerate(rec.state)],
        }

    def audit_bundle(self, trial_id: str) -> dict:
        """Config + raw log + replayed decisions, for archival review."""
        rec = self.replay(trial_id)
        return {
            "trial_id": trial_id,
            "format": FORMAT_VERSION,
            "config": configio.conduct_config_to_dict(rec.config),
            "created_at": rec.created_at,
            "status": rec.status,
            "warnings": rec.warnings,
            "events": rec.events,
            "decisions": [d.to_dict() for d in rec.decisions],
            "final_obd": rec.final_obd,
            "log_text": self._path(trial_id).read_text(),
        }

    # -- plumbing ----------------------------------------------------------

    @staticmethod
    def _append_line(path: Path, obj: dict):
        data = json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n"
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
