"""JSON codecs for configuration objects shared by the CLI and the service.

Every loader raises ValidationError with the offending field path, so both
gateway surfaces report the same machine-readable errors.
"""

from __future__ import annotations

import json

from .boin import BoinBoundaries, EliminationConfig, lambda_bounds
from .boin12 import Boin12Config, RdsGeneratorParams
from .copula import DoseScenario, EffToxCurves, curves_to_scenario
from .merit import MeritDesign, MeritSpec
from .outcomes import UtilityTable, ValidationError


_SENTINEL = object()


def _get(d: dict, key: str, path: str, default=_SENTINEL):
    if key in d:
        return d[key]
    if default is _SENTINEL:
        raise ValidationError(f"missing field {path}.{key}", field=f"{path}.{key}")
    return default


def utility_to_block(u: UtilityTable) -> list:
    return u.as_block()


def utility_from_block(block, path="utility") -> UtilityTable:
    try:
        return UtilityTable.from_block(block)
    except (TypeError, IndexError):
        raise ValidationError(f"{path} must be a 2x2 block", field=path)


def elimination_to_dict(e: EliminationConfig) -> dict:
    return {"phi_t_limit": e.phi_t_limit, "phi_e_limit": e.phi_e_limit,
            "cutoff": e.cutoff, "min_n": e.min_n}


def elimination_from_dict(d: dict, path="elimination") -> EliminationConfig:
    return EliminationConfig(
        phi_t_limit=float(_get(d, "phi_t_limit", path)),
        phi_e_limit=float(_get(d, "phi_e_limit", path)),
        cutoff=float(_get(d, "cutoff", path, 0.9)),
        min_n=int(_get(d, "min_n", path, 3)))


def generator_to_dict(g: RdsGeneratorParams | None) -> dict | None:
    if g is None:
        return None
    return {"a0": g.a0, "b0": g.b0, "u_b": g.u_b, "calibrated": g.calibrated}


def generator_from_dict(d: dict | None, path="generator") -> RdsGeneratorParams | None:
    if d is None:
        return None
    return RdsGeneratorParams(
        a0=float(_get(d, "a0", path)), b0=float(_get(d, "b0", path)),
        u_b=float(_get(d, "u_b", path)),
        calibrated=bool(_get(d, "calibrated", path, True)))


def boundaries_to_dict(b: BoinBoundaries) -> dict:
    return {"phi": b.phi, "phi1": b.phi1, "phi2": b.phi2,
            "lambda_e": b.lambda_e, "lambda_d": b.lambda_d}


def boundaries_from_dict(d: dict, path="boundaries") -> BoinBoundaries:
    phi1 = d.get("phi1")
    phi2 = d.get("phi2")
    return lambda_bounds(float(_get(d, "phi", path)),
                         float(phi1) if phi1 is not None else None,
                         float(phi2) if phi2 is not None else None)


def boin12_config_to_dict(c: Boin12Config) -> dict:
    return {
        "phi_t": c.phi_t, "phi_e": c.phi_e,
        "utility": utility_to_block(c.utility),
        "boundaries": boundaries_to_dict(c.boundaries),
        "n_star": c.n_star, "cohort_size": c.cohort_size,
        "max_per_dose": c.max_per_dose, "max_total": c.max_total,
        "elimination": elimination_to_dict(c.elimination),
        "generator": generator_to_dict(c.generator),
        "mode": c.mode, "exploration_override": c.exploration_override,
    }


def boin12_config_from_dict(d: dict, path="design") -> Boin12Config:
    phi_t = float(_get(d, "phi_t", path, 0.35))
    phi_e = float(_get(d, "phi_e", path, 0.25))
    bd = d.get("boundaries")
    return Boin12Config(
        phi_t=phi_t, phi_e=phi_e,
        utility=utility_from_block(d["utility"], f"{path}.utility")
        if "utility" in d else UtilityTable(),
        boundaries=boundaries_from_dict(bd, f"{path}.boundaries") if bd else None,
        n_star=int(_get(d, "n_star", path, 6)),
        cohort_size=int(_get(d, "cohort_size", path, 3)),
        max_per_dose=int(_get(d, "max_per_dose", path, 12)),
        max_total=int(_get(d, "max_total", path, 36)),
        elimination=elimination_from_dict(d["elimination"], f"{path}.elimination")
        if "elimination" in d else None,
        generator=generator_from_dict(d.get("generator"), f"{path}.generator"),
        mode=str(_get(d, "mode", path, "generator")),
        exploration_override=bool(_get(d, "exploration_override", path, True)))


def scenario_to_dict(s: DoseScenario) -> dict:
    return {"pi_t": list(s.pi_t), "pi_e": list(s.pi_e), "psi": s.psi}


def scenario_from_dict(d: dict, path="scenario") -> DoseScenario:
    psi = float(_get(d, "psi", path, 0.0))
    if "curves" in d:
        c = d["curves"]
        curves = EffToxCurves(
            gamma0=float(_get(c, "gamma0", f"{path}.curves")),
            gamma1=float(_get(c, "gamma1", f"{path}.curves")),
            beta0=float(_get(c, "beta0", f"{path}.curves")),
            beta1=float(_get(c, "beta1", f"{path}.curves")),
            beta2=float(_get(c, "beta2", f"{path}.curves", 0.0)),
            standardization=str(_get(c, "standardization", f"{path}.curves",
                                     "log-centered")))
        return curves_to_scenario(curves, _get(d, "doses", path), psi)
    pi_t = _get(d, "pi_t", path)
    pi_e = _get(d, "pi_e", path)
    for name, vec in (("pi_t", pi_t), ("pi_e", pi_e)):
        for i, v in enumerate(vec):
            if not (0.0 <= float(v) <= 1.0):
                raise ValidationError(f"{path}.{name}[{i}]={v} outside [0,1]",
                                      field=f"{path}.{name}[{i}]")
    return DoseScenario(pi_t=tuple(float(v) for v in pi_t),
                        pi_e=tuple(float(v) for v in pi_e), psi=psi)


def merit_spec_to_dict(s: MeritSpec) -> dict:
    return {"phi_t0": s.phi_t0, "phi_t1": s.phi_t1,
            "phi_e0": s.phi_e0, "phi_e1": s.phi_e1,
            "alpha": s.alpha, "beta_power": s.beta_power,
            "n_doses": s.n_doses,
            "t1e_variant": s.t1e_variant, "power_variant": s.power_variant}


def merit_spec_from_dict(d: dict, path="spec") -> MeritSpec:
    return MeritSpec(
        phi_t0=float(_get(d, "phi_t0", path)),
        phi_t1=float(_get(d, "phi_t1", path)),
        phi_e0=float(_get(d, "phi_e0", path)),
        phi_e1=float(_get(d, "phi_e1", path)),
        alpha=float(_get(d, "alpha", path)),
        beta_power=float(_get(d, "beta_power", path)),
        n_doses=int(_get(d, "n_doses", path, 2)),
        t1e_variant=str(_get(d, "t1e_variant", path, "per-dose")),
        power_variant=str(_get(d, "power_variant", path, "per-dose")))


def merit_design_to_dict(m: MeritDesign) -> dict:
    return {"n": m.n, "m_t": m.m_t, "m_e": m.m_e}


def two_stage_to_dict(t) -> dict:
    from .simulate import TwoStageConfig
    assert isinstance(t, TwoStageConfig)
    stage2 = (merit_design_to_dict(t.stage2) if isinstance(t.stage2, MeritDesign)
              else merit_spec_to_dict(t.stage2))
    return {"target_t": t.target_t,
            "boundaries": boundaries_to_dict(t.boundaries),
            "cohort_size": t.cohort_size, "max_per_dose": t.max_per_dose,
            "stage1_max_total": t.stage1_max_total,
            "safety_cutoff": t.safety_cutoff, "carry_count": t.carry_count,
            "stage2": stage2, "stage2_kind":
            "design" if isinstance(t.stage2, MeritDesign) else "spec",
            "utility": utility_to_block(t.utility)}


def two_stage_from_dict(d: dict, path="design"):
    from .simulate import TwoStageConfig
    kind = _get(d, "stage2_kind", path, "spec")
    raw = _get(d, "stage2", path)
    if kind == "design":
        stage2 = MeritDesign(n=int(_get(raw, "n", f"{path}.stage2")),
                             m_t=int(_get(raw, "m_t", f"{path}.stage2")),
                             m_e=int(_get(raw, "m_e", f"{path}.stage2")))
    else:
        stage2 = merit_spec_from_dict(raw, f"{path}.stage2")
    bd = d.get("boundaries")
    return TwoStageConfig(
        target_t=float(_get(d, "target_t", path, 0.3)),
        boundaries=boundaries_from_dict(bd, f"{path}.boundaries") if bd else None,
        cohort_size=int(_get(d, "cohort_size", path, 3)),
        max_per_dose=int(_get(d, "max_per_dose", path, 12)),
        stage1_max_total=d.get("stage1_max_total"),
        safety_cutoff=float(_get(d, "safety_cutoff", path, 0.95)),
        carry_count=int(_get(d, "carry_count", path, 2)),
        stage2=stage2,
        utility=utility_from_block(d["utility"], f"{path}.utility")
        if "utility" in d else UtilityTable())


def sim_config_to_dict(c) -> dict:
    from .simulate import SimConfig, TwoStageConfig
    assert isinstance(c, SimConfig)
    two_stage = isinstance(c.design, TwoStageConfig)
    return {"scenario": scenario_to_dict(c.scenario),
            "strategy": "two-stage" if two_stage else "efficacy-integrated",
            "design": (two_stage_to_dict(c.design) if two_stage
                       else boin12_config_to_dict(c.design)),
            "n_sim": c.n_sim, "seed": c.seed, "start_dose": c.start_dose}


def sim_config_from_dict(d: dict, path="simulation"):
    from .simulate import SimConfig
    strategy = _get(d, "strategy", path, "efficacy-integrated")
    design_raw = _get(d, "design", path, {})
    if strategy == "two-stage":
        design = two_stage_from_dict(design_raw, f"{path}.design")
    elif strategy == "efficacy-integrated":
        design = boin12_config_from_dict(design_raw, f"{path}.design")
    else:
        raise ValidationError(f"unknown strategy {strategy!r}",
                              field=f"{path}.strategy")
    return SimConfig(
        scenario=scenario_from_dict(_get(d, "scenario", path), f"{path}.scenario"),
        design=design,
        n_sim=int(_get(d, "n_sim", path, 1000)),
        seed=int(_get(d, "seed", path, 0)),
        start_dose=int(_get(d, "start_dose", path, 1)))


def conduct_config_to_dict(c) -> dict:
    return {"design": boin12_config_to_dict(c.design),
            "n_doses": c.n_doses, "start_dose": c.start_dose,
            "table_rows": c.table_rows, "table_n_max": c.table_n_max}


def conduct_config_from_dict(d: dict, path="config"):
    from .conduct import ConductConfig
    return ConductConfig(
        design=boin12_config_from_dict(_get(d, "design", path), f"{path}.design"),
        n_doses=int(_get(d, "n_doses", path)),
        start_dose=int(_get(d, "start_dose", path, 1)),
        table_rows=str(_get(d, "table_rows", path, "all")),
        table_n_max=d.get("table_n_max"))


def load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON in {path}: {exc}", field="file")
