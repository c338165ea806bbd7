"""Optimal-interval escalation boundaries and posterior elimination rules.

The interval design compares the observed toxicity rate at the current dose
against a pair of optimized boundaries (lambda_e, lambda_d); dose-level
admissibility is policed by Beta-posterior tail checks against prespecified
toxicity/efficacy limits.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.special import betainc

from .outcomes import ValidationError


@dataclass(frozen=True)
class BoinBoundaries:
    """Escalation/de-escalation boundaries for a target toxicity rate phi.

    phi1/phi2 are the sub-toxic and over-toxic reference rates; defaults are
    0.6*phi and 1.4*phi. Observed rate <= lambda_e permits escalation,
    >= lambda_d forces de-escalation (both comparisons inclusive).
    """

    phi: float
    phi1: float
    phi2: float
    lambda_e: float
    lambda_d: float

    def escalation_ok(self, x_t: int, n: int) -> bool:
        """Observed rate at or below the escalation boundary (x_t/n <= lambda_e)."""
        return x_t <= self.lambda_e * n + 1e-12

    def deescalation_required(self, x_t: int, n: int) -> bool:
        """Observed rate at or above the de-escalation boundary (x_t/n >= lambda_d)."""
        return x_t >= self.lambda_d * n - 1e-12


def lambda_bounds(phi: float, phi1: float | None = None,
                  phi2: float | None = None) -> BoinBoundaries:
    """Optimal interval boundaries for target toxicity probability phi.

    lambda_e is the likelihood crossing point between rates phi1 and phi,
    lambda_d between phi and phi2:

        lambda_e = ln[(1-phi1)/(1-phi)] / ln[phi(1-phi1)/(phi1(1-phi))]
        lambda_d = ln[(1-phi)/(1-phi2)] / ln[phi2(1-phi)/(phi(1-phi2))]
    """
    if phi1 is None:
        phi1 = 0.6 * phi
    if phi2 is None:
        phi2 = 1.4 * phi
    if not (0.0 < phi1 < phi < phi2 < 1.0):
        raise ValidationError(
            f"need 0 < phi1 < phi < phi2 < 1, got ({phi1}, {phi}, {phi2})", field="phi")
    lam_e = (math.log((1 - phi1) / (1 - phi))
             / math.log(phi * (1 - phi1) / (phi1 * (1 - phi))))
    lam_d = (math.log((1 - phi) / (1 - phi2))
             / math.log(phi2 * (1 - phi) / (phi * (1 - phi2))))
    return BoinBoundaries(phi=phi, phi1=phi1, phi2=phi2, lambda_e=lam_e, lambda_d=lam_d)


STANDARD_TARGETS = (0.15, 0.20, 0.25, 0.30, 0.35, 0.40)


def boundary_table_csv(targets=STANDARD_TARGETS) -> str:
    """Boundary table as CSV in the 6-column published layout."""
    buf = io.StringIO()
    buf.write("target," + ",".join(f"{t:g}" for t in targets) + "\n")
    rows = [("lambda_e", [lambda_bounds(t).lambda_e for t in targets]),
            ("lambda_d", [lambda_bounds(t).lambda_d for t in targets])]
    for name, vals in rows:
        buf.write(name + "," + ",".join(f"{v:.3f}" for v in vals) + "\n")
    return buf.getvalue()


@lru_cache(maxsize=1 << 20)
def beta_tail(a: float, b: float, t: float) -> float:
    """Pr(X > t) for X ~ Beta(a, b), via the regularized incomplete beta.

    Cached: a pure scalar kernel on the hot path of every posterior check.
    """
    if a <= 0 or b <= 0:
        raise ValidationError(f"beta shapes must be positive, got ({a}, {b})", field="a")
    if not (0.0 <= t <= 1.0):
        raise ValidationError(f"threshold {t} outside [0,1]", field="t")
    return float(1.0 - betainc(a, b, t))


@dataclass(frozen=True)
class EliminationConfig:
    """Posterior admissibility limits for dropping a dose.

    With a uniform Beta(1,1) prior, a dose is safety-eliminated when
    Pr(pi_T > phi_t_limit | data) exceeds the cutoff, and futility-eliminated
    when Pr(pi_E < phi_e_limit | data) exceeds it. Rules are vacuous below
    min_n patients.
    """

    phi_t_limit: float = 0.35
    phi_e_limit: float = 0.25
    cutoff: float = 0.9
    min_n: int = 3

    def __post_init__(self):
        if not (0.5 < self.cutoff < 1.0):
            raise ValidationError(f"cutoff {self.cutoff} outside (0.5, 1)", field="cutoff")
        if self.min_n < 1:
            raise ValidationError("min_n must be >= 1", field="min_n")


@lru_cache(maxsize=1 << 18)
def eliminate_safety(n: int, x_t: int, cfg: EliminationConfig) -> bool:
    """True when the posterior tox tail Pr(pi_T > limit) clears the cutoff."""
    if not (0 <= x_t <= n):
        raise ValidationError(f"x_t={x_t} outside 0..{n}", field="x_t")
    if n < cfg.min_n:
        return False
    return beta_tail(1 + x_t, 1 + n - x_t, cfg.phi_t_limit) > cfg.cutoff


@lru_cache(maxsize=1 << 18)
def eliminate_futility(n: int, x_e: int, cfg: EliminationConfig) -> bool:
    """True when the posterior eff head Pr(pi_E < limit) clears the cutoff."""
    if not (0 <= x_e <= n):
        raise ValidationError(f"x_e={x_e} outside 0..{n}", field="x_e")
    if n < cfg.min_n:
        return False
    # Pr(pi_E < limit) = 1 - Pr(pi_E > limit) for the continuous posterior
    return (1.0 - beta_tail(1 + x_e, 1 + n - x_e, cfg.phi_e_limit)) > cfg.cutoff
