"""Command-line gateway over the engine; same code paths as the HTTP service."""

from __future__ import annotations

import json
import sys

import click

from . import configio, merit
from .boin import boundary_table_csv, lambda_bounds
from .boin12 import (Boin12Config, CalibrationError, RdsTable,
                     calibrate_generator, default_rds_table, generate_rds_table)
from .outcomes import OutcomeProbVector, UtilityTable, ValidationError, utility_brt
from .simulate import (TwoStageConfig, advise_sample_size, simulate_boin12,
                       simulate_two_stage)


def _fail(exc: ValidationError):
    payload = {"code": "invalid", "message": str(exc),
               "field": getattr(exc, "field", None)}
    click.echo(json.dumps(payload), err=True)
    sys.exit(1)


@click.group()
def main():
    """Dose-optimization design, simulation, and conduct tools."""


@main.command()
@click.option("--target", type=float, required=True, help="target toxicity rate")
@click.option("--phi1", type=float, default=None)
@click.option("--phi2", type=float, default=None)
@click.option("--table", is_flag=True, help="print the standard 6-target table as CSV")
def boundaries(target, phi1, phi2, table):
    """Print the escalation/de-escalation boundary pair for a target rate."""
    try:
        if table:
            click.echo(boundary_table_csv(), nl=False)
            return
        b = lambda_bounds(target, phi1, phi2)
        click.echo(f"{b.lambda_e:.3f} {b.lambda_d:.3f}")
    except ValidationError as exc:
        _fail(exc)


@main.command("rds-table")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--n-max", type=int, default=None, help="generate rows for n = 0..n_max")
@click.option("--out", type=click.Path(), default="-")
def rds_table(config_path, n_max, out):
    """Write the desirability score table as CSV (defaults: the shipped table)."""
    try:
        if config_path is None and n_max is None:
            table = default_rds_table()
        else:
            cfg = (configio.boin12_config_from_dict(configio.load_json(config_path))
                   if config_path else Boin12Config())
            table = generate_rds_table(
                cfg, range((n_max if n_max is not None else cfg.max_per_dose) + 1))
        text = table.to_csv()
        if out == "-":
            click.echo(text, nl=False)
        else:
            with open(out, "w") as fh:
                fh.write(text)
    except ValidationError as exc:
        _fail(exc)


@main.command()
@click.option("--reference", type=click.Path(exists=True), default=None,
              help="reference score table CSV (default: the shipped table)")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def calibrate(reference, config_path):
    """Search generator parameters that reproduce a reference score table."""
    try:
        cfg = (configio.boin12_config_from_dict(configio.load_json(config_path))
               if config_path else Boin12Config())
        table = (RdsTable.from_csv(open(reference).read()) if reference
                 else default_rds_table())
        params = calibrate_generator(cfg, table)
        click.echo(json.dumps({"a0": params.a0, "b0": params.b0, "u_b": params.u_b}))
    except CalibrationError as exc:
        click.echo(json.dumps({
            "code": "calibration-failed",
            "mismatch_count": exc.mismatch_count,
            "mismatched_rows": sorted(exc.mismatched_rows),
            "best": {"a0": exc.best_params.a0, "b0": exc.best_params.b0,
                     "u_b": exc.best_params.u_b}}), err=True)
        sys.exit(2)
    except ValidationError as exc:
        _fail(exc)


@main.command("merit")
@click.option("--spec", "spec_path", type=click.Path(exists=True), required=True)
def merit_cmd(spec_path):
    """Solve the randomized-stage design for a spec file."""
    try:
        spec = configio.merit_spec_from_dict(configio.load_json(spec_path))
        d = merit.search(spec)
        t1e = merit.generalized_t1e(d, spec)
        power = merit.generalized_power(d, spec)
        click.echo(f"n={d.n} m_T={d.m_t} m_E={d.m_e} "
                   f"t1e={t1e:.6f} power={power:.6f}")
    except ValidationError as exc:
        _fail(exc)


@main.command("merit-report")
@click.option("--out", type=click.Path(), default="-")
@click.option("--table-out", type=click.Path(), default=None,
              help="also write the solved grid CSV for the selected variants")
def merit_report(out, table_out):
    """Fit all error/power variants to the reference grid; report discrepancies."""
    fits = merit.fit_reference_variants()
    text = merit.discrepancy_report(fits)
    if out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)
    if table_out:
        best = fits[0]
        with open(table_out, "w") as fh:
            fh.write(merit.solved_table_csv(best.t1e_variant, best.power_variant))


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default="-")
def simulate(config_path, out):
    """Run a simulation config and write the operating-characteristics report."""
    try:
        cfg = configio.sim_config_from_dict(configio.load_json(config_path))
        oc = (simulate_two_stage(cfg) if isinstance(cfg.design, TwoStageConfig)
              else simulate_boin12(cfg))
        # full provenance: the exact configuration rides in the report header
        header = [json.dumps(configio.sim_config_to_dict(cfg), sort_keys=True)]
        text = oc.to_csv(header_lines=header)
        if out == "-":
            click.echo(text, nl=False)
        else:
            with open(out, "w") as fh:
                fh.write(text)
    except ValidationError as exc:
        _fail(exc)


@main.command()
@click.option("--probs", nargs=4, type=float, required=True,
              metavar="P00 P01 P10 P11")
@click.option("--utility", "utility_path", type=click.Path(exists=True),
              default=None, help="JSON file with a 2x2 utility block")
def brt(probs, utility_path):
    """Utility-weighted benefit-risk score of an outcome distribution."""
    try:
        u = (configio.utility_from_block(configio.load_json(utility_path))
             if utility_path else UtilityTable())
        p = OutcomeProbVector(*probs)
        click.echo(f"{utility_brt(p, u):.6f}")
    except ValidationError as exc:
        _fail(exc)


@main.command()
@click.option("--doses", "n_doses", type=int, required=True)
@click.option("--strategy", type=click.Choice(["efficacy-integrated", "two-stage"]),
              required=True)
@click.option("--arms", type=int, default=2)
def advise(n_doses, strategy, arms):
    """Rule-of-thumb sample-size range."""
    try:
        lo, hi = advise_sample_size(n_doses, strategy, arms)
        click.echo(f"{lo} {hi}")
    except ValidationError as exc:
        _fail(exc)


@main.command()
@click.option("--addr", default="127.0.0.1:8350", metavar="HOST:PORT")
@click.option("--data", "data_dir", type=click.Path(), required=True)
@click.option("--token", default=None, help="static bearer token (omit to disable auth)")
def serve(addr, data_dir, token):
    """Run the HTTP service."""
    import uvicorn
    from .service import create_app
    host, _, port = addr.partition(":")
    app = create_app(data_dir, token=token)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8350))


if __name__ == "__main__":
    main()
