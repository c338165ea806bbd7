"""Truth scenarios and correlated bivariate-binary outcome generation.

Marginal dose-response curves are logistic in a standardized dose (linear for
toxicity, quadratic for efficacy); the joint (toxicity, efficacy) distribution
couples the margins through a Gumbel-Morgenstern-type term whose association
factor is (e^psi - 1)/(e^psi + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .outcomes import OutcomeProbVector, Outcome, ValidationError

CELL_NAMES = ("p00", "p01", "p10", "p11")


def association_factor(psi: float) -> float:
    """(e^psi - 1)/(e^psi + 1) = tanh(psi/2); handles psi = +/-inf."""
    if math.isinf(psi):
        return 1.0 if psi > 0 else -1.0
    return math.tanh(psi / 2.0)


def joint_pmf_assoc(pi_t: float, pi_e: float, kappa: float) -> OutcomeProbVector:
    """Joint pmf of (y_T, y_E) from margins and an association factor kappa.

    Cells follow
        p(y_T, y_E) = piE^yE (1-piE)^(1-yE) piT^yT (1-piT)^(1-yT)
                      + (-1)^(yT+yE) piE(1-piE)piT(1-piT) kappa.

    |kappa| <= 1 always yields a valid pmf; values beyond that can push a
    cell negative, which is rejected naming the offending cell.
    """
    if not (0.0 <= pi_t <= 1.0):
        raise ValidationError(f"pi_t={pi_t} outside [0,1]", field="pi_t")
    if not (0.0 <= pi_e <= 1.0):
        raise ValidationError(f"pi_e={pi_e} outside [0,1]", field="pi_e")
    c = pi_e * (1 - pi_e) * pi_t * (1 - pi_t) * kappa
    cells = [
        (1 - pi_t) * (1 - pi_e) + c,   # p00
        (1 - pi_t) * pi_e - c,         # p01
        pi_t * (1 - pi_e) - c,         # p10
        pi_t * pi_e + c,               # p11
    ]
    for name, v in zip(CELL_NAMES, cells):
        if v < 0.0:
            raise ValidationError(
                f"joint cell {name} = {v} negative for "
                f"(pi_t={pi_t}, pi_e={pi_e}, kappa={kappa})", field=name)
    # exact renormalization is unnecessary; the kappa terms cancel in the sum
    return OutcomeProbVector(*[min(1.0, v) for v in cells])


def joint_pmf(pi_t: float, pi_e: float, psi: float) -> OutcomeProbVector:
    """Joint pmf of (y_T, y_E) given marginal rates and log-association psi."""
    return joint_pmf_assoc(pi_t, pi_e, association_factor(psi))


def sample_outcome(rng, pi_t: float, pi_e: float, psi: float) -> Outcome:
    """One categorical draw over the four joint outcomes."""
    p = joint_pmf(pi_t, pi_e, psi)
    u = rng.random()
    if u < p.p00:
        return Outcome(0, 0)
    if u < p.p00 + p.p01:
        return Outcome(0, 1)
    if u < p.p00 + p.p01 + p.p10:
        return Outcome(1, 0)
    return Outcome(1, 1)


def sample_cohort_counts(rng, pi_t: float, pi_e: float, psi: float,
                         size: int) -> tuple[int, int, tuple[int, int, int, int]]:
    """Joint outcome counts of a cohort: (x_t, x_e, (n00, n01, n10, n11))."""
    p = joint_pmf(pi_t, pi_e, psi)
    n00, n01, n10, n11 = rng.multinomial(size, p.cells())
    return int(n10 + n11), int(n01 + n11), (int(n00), int(n01), int(n10), int(n11))


@dataclass(frozen=True)
class DoseScenario:
    """Per-dose true rates plus the shared association parameter."""

    pi_t: tuple
    pi_e: tuple
    psi: float = 0.0

    def __post_init__(self):
        if len(self.pi_t) != len(self.pi_e) or not self.pi_t:
            raise ValidationError("pi_t and pi_e must be equal-length, nonempty",
                                  field="pi_t")
        object.__setattr__(self, "pi_t", tuple(float(v) for v in self.pi_t))
        object.__setattr__(self, "pi_e", tuple(float(v) for v in self.pi_e))
        for j in range(len(self.pi_t)):
            joint_pmf(self.pi_t[j], self.pi_e[j], self.psi)  # validates cells

    @property
    def n_doses(self) -> int:
        return len(self.pi_t)

    def pmf(self, dose: int) -> OutcomeProbVector:
        """Joint pmf at a 1-based dose level."""
        return joint_pmf(self.pi_t[dose - 1], self.pi_e[dose - 1], self.psi)


@dataclass(frozen=True)
class EffToxCurves:
    """Marginal logistic dose-response coefficients.

    logit(pi_T | x) = gamma0 + gamma1*x, gamma1 > 0 (toxicity monotone);
    logit(pi_E | x) = beta0 + beta1*x + beta2*x^2.
    """

    gamma0: float
    gamma1: float
    beta0: float
    beta1: float
    beta2: float = 0.0
    standardization: str = "log-centered"   # or "centered", "raw"

    def __post_init__(self):
        if self.gamma1 <= 0:
            raise ValidationError("gamma1 must be positive (monotone toxicity)",
                                  field="gamma1")
        if self.standardization not in ("log-centered", "centered", "raw"):
            raise ValidationError(
                f"unknown standardization {self.standardization!r}",
                field="standardization")


def _logistic(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def standardize_doses(doses, rule: str) -> list[float]:
    if any(d <= 0 for d in doses):
        raise ValidationError("raw doses must be positive", field="doses")
    if list(doses) != sorted(set(doses)):
        raise ValidationError("doses must be strictly increasing", field="doses")
    if rule == "raw":
        return [float(d) for d in doses]
    vals = [math.log(d) for d in doses] if rule == "log-centered" else list(doses)
    mean = sum(vals) / len(vals)
    return [v - mean for v in vals]


def curves_to_scenario(curves: EffToxCurves, doses, psi: float = 0.0) -> DoseScenario:
    """Evaluate the marginal curves on a standardized dose grid."""
    xs = standardize_doses(doses, curves.standardization)
    pi_t = [_logistic(curves.gamma0 + curves.gamma1 * x) for x in xs]
    pi_e = [_logistic(curves.beta0 + curves.beta1 * x + curves.beta2 * x * x)
            for x in xs]
    if any(b < a - 1e-12 for a, b in zip(pi_t, pi_t[1:])):
        raise ValidationError("toxicity curve not monotone over the grid",
                              field="gamma1")
    return DoseScenario(pi_t=tuple(pi_t), pi_e=tuple(pi_e), psi=psi)
