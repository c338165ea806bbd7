import dataclasses
import json

import pytest

from doseopt import Boin12Config, CohortEvent, ConductConfig, TrialStore
from doseopt import RdsGeneratorParams, ValidationError
from doseopt.conduct import ConflictError, ReplayError


@pytest.fixture
def store(tmp_path):
    return TrialStore(tmp_path / "trials")


def cfg3(**kw):
    return ConductConfig(design=Boin12Config(**kw), n_doses=3, start_dose=1)


class TestCreate:
    def test_initial_recommendation_is_start_dose(self, store):
        rec = store.create(cfg3(), trial_id="t1")
        assert rec.recommendation == 1
        assert rec.status == "enrolling"
        assert rec.events == []

    def test_duplicate_id_conflicts(self, store):
        store.create(cfg3(), trial_id="dup")
        with pytest.raises(ConflictError):
            store.create(cfg3(), trial_id="dup")

    def test_uncalibrated_generator_demoted_with_warning(self, store):
        params = RdsGeneratorParams(a0=2.0, b0=2.0, u_b=0.5, calibrated=False)
        cfg = ConductConfig(
            design=Boin12Config(generator=params, mode="generator"),
            n_doses=2)
        rec = store.create(cfg, trial_id="uncal")
        assert rec.config.design.mode == "table"
        assert any("uncalibrated" in w for w in rec.warnings)

    def test_invalid_config(self, store):
        with pytest.raises(ValidationError):
            store.create(ConductConfig(design=Boin12Config(), n_doses=0))


class TestRecordCohort:
    def test_worked_example_history(self, store):
        """Overridden doses reconstruct the worked three-dose state; the
        engine then recommends staying at dose 2 with scores (13, 23, 11)
        straight from the published cohort-of-3 table."""
        cfg = ConductConfig(design=Boin12Config(mode="table"), n_doses=3,
                            table_rows="cohort-multiples", table_n_max=6)
        store.create(cfg, trial_id="w")
        store.record_cohort("w", CohortEvent(dose=1, size=3, x_t=0, x_e=0))
        store.record_cohort("w", CohortEvent(dose=2, size=3, x_t=0, x_e=2,
                                             override=True))
        store.record_cohort("w", CohortEvent(dose=3, size=3, x_t=2, x_e=1,
                                             override=True))
        d = store.record_cohort("w", CohortEvent(dose=2, size=3, x_t=1, x_e=1,
                                                 override=True))
        assert (d.action, d.dose) == ("assign", 2)
        assert d.rationale["scores"] == {1: 13, 2: 23, 3: 11}

    def test_cart_replay(self, store):
        store.create(cfg3(), trial_id="cart")
        d1 = store.record_cohort("cart", CohortEvent(dose=1, size=3, x_t=0, x_e=3))
        assert (d1.action, d1.dose) == ("assign", 1)
        d2 = store.record_cohort("cart", CohortEvent(dose=1, size=2, x_t=0, x_e=2))
        assert (d2.action, d2.dose) == ("assign", 1)
        rec = store.replay("cart")
        assert rec.state[0].n == 5 and rec.state[0].x_e == 5

    def test_replay_equality_after_every_event(self, store):
        store.create(cfg3(), trial_id="r")
        outcomes = [(1, 3, 0, 2), (1, 3, 1, 1), (2, 3, 1, 2), (2, 3, 2, 0)]
        last = None
        for dose, size, x_t, x_e in outcomes:
            rec_before = store.replay("r")
            if rec_before.status != "enrolling":
                break
            ev = CohortEvent(dose=dose, size=size, x_t=x_t, x_e=x_e,
                             override=dose != rec_before.recommendation)
            last = store.record_cohort("r", ev)
            rec_after = store.replay("r")     # recomputes + verifies stored
            assert rec_after.decisions[-1].to_dict()["action"] == last.action
            assert sum(ds.n for ds in rec_after.state) == \
                sum(size for d_, size, *_ in outcomes[:len(rec_after.events)])

    def test_count_validation(self, store):
        store.create(cfg3(), trial_id="v")
        with pytest.raises(ValidationError, match="x_t"):
            store.record_cohort("v", CohortEvent(dose=1, size=3, x_t=4, x_e=0))

    def test_dose_mismatch_needs_override(self, store):
        store.create(cfg3(), trial_id="m")
        with pytest.raises(ValidationError, match="override"):
            store.record_cohort("m", CohortEvent(dose=2, size=3, x_t=0, x_e=0))

    def test_idempotent_event_key(self, store):
        store.create(cfg3(), trial_id="i")
        e = CohortEvent(dose=1, size=3, x_t=0, x_e=1, event_key="once")
        d1 = store.record_cohort("i", e)
        d2 = store.record_cohort("i", e)
        assert d1.action == d2.action and d1.dose == d2.dose
        assert len(store.replay("i").events) == 1

    def test_terminated_trial_refuses_cohorts(self, store):
        store.create(cfg3(), trial_id="t")
        d = store.record_cohort("t", CohortEvent(dose=1, size=3, x_t=3, x_e=0))
        assert d.action == "terminate"
        assert store.replay("t").status == "terminated"
        with pytest.raises(ValidationError, match="terminated"):
            store.record_cohort("t", CohortEvent(dose=1, size=3, x_t=0, x_e=0))


class TestReplayIntegrity:
    def test_corrupted_line_reports_location(self, store):
        store.create(cfg3(), trial_id="c")
        store.record_cohort("c", CohortEvent(dose=1, size=3, x_t=0, x_e=1))
        path = store._path("c")
        with open(path, "a") as fh:
            fh.write("{not json\n")
        with pytest.raises(ReplayError) as exc:
            store.replay("c")
        assert exc.value.line_no == 3

    def test_truncated_final_line_reports_offset(self, store):
        store.create(cfg3(), trial_id="tr")
        store.record_cohort("tr", CohortEvent(dose=1, size=3, x_t=0, x_e=1))
        path = store._path("tr")
        raw = path.read_bytes()
        cut = raw[:-25]                      # chop the tail of the last record
        path.write_bytes(cut)
        with pytest.raises(ReplayError) as exc:
            store.replay("tr")
        assert exc.value.line_no == 2
        assert exc.value.offset == cut.rindex(b"\n") + 1

    def test_tampered_decision_detected(self, store):
        store.create(cfg3(), trial_id="tp")
        store.record_cohort("tp", CohortEvent(dose=1, size=3, x_t=0, x_e=1))
        path = store._path("tp")
        lines = path.read_text().splitlines()
        rec = json.loads(lines[1])
        rec["decision"]["dose"] = 3
        lines[1] = json.dumps(rec, separators=(",", ":"), sort_keys=True)
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(ReplayError, match="stored decision"):
            store.replay("tp")

    def test_empty_log(self, store):
        path = store.root / "empty.jsonl"
        path.write_text("")
        with pytest.raises(ReplayError):
            store.replay("empty")


class TestClose:
    def test_all_eliminated_closes_with_no_obd(self, store):
        store.create(cfg3(), trial_id="e")
        d = store.record_cohort("e", CohortEvent(dose=1, size=3, x_t=3, x_e=0))
        assert d.action == "terminate"
        report = store.close("e")
        assert report["obd"] is None
        assert report["status"] == "closed"
        assert not report["interim_closure"]

    def test_history_favoring_dose_two(self, store):
        cfg = ConductConfig(design=Boin12Config(max_total=12, max_per_dose=6),
                            n_doses=2)
        store.create(cfg, trial_id="f")
        store.record_cohort("f", CohortEvent(dose=1, size=3, x_t=0, x_e=0))
        store.record_cohort("f", CohortEvent(dose=2, size=3, x_t=0, x_e=3,
                                             override=True))
        store.record_cohort("f", CohortEvent(dose=2, size=3, x_t=0, x_e=2))
        store.record_cohort("f", CohortEvent(dose=1, size=3, x_t=1, x_e=1,
                                             override=True))
        report = store.close("f")           # budget exhausted -> terminated
        assert report["obd"] == 2           # (6,0,5) outranks (6,1,1)

    def test_forced_interim_close_flagged(self, store):
        store.create(cfg3(), trial_id="fc")
        store.record_cohort("fc", CohortEvent(dose=1, size=3, x_t=0, x_e=2))
        with pytest.raises(ValidationError):
            store.close("fc")               # still enrolling
        report = store.close("fc", force=True)
        assert report["interim_closure"]
        assert report["obd"] == 1

    def test_double_close_errors(self, store):
        store.create(cfg3(), trial_id="dc")
        store.close("dc", force=True)
        with pytest.raises(ValidationError, match="closed"):
            store.close("dc")

    def test_audit_bundle_complete(self, store):
        store.create(cfg3(), trial_id="a")
        store.record_cohort("a", CohortEvent(dose=1, size=3, x_t=0, x_e=2,
                                             note="first cohort"))
        bundle = store.audit_bundle("a")
        assert bundle["config"]["n_doses"] == 3
        assert len(bundle["events"]) == len(bundle["decisions"]) == 1
        assert bundle["events"][0]["note"] == "first cohort"
        assert "rationale" in bundle["decisions"][0]
        assert bundle["log_text"].count("\n") == 2
