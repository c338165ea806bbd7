"""Patient outcome semantics, utility tables, and benefit-risk tradeoff scores.

Everything here is pure arithmetic on binary (toxicity, efficacy) outcomes.
The four joint outcomes are indexed (y_T, y_E); a utility table assigns each
a score on the 0-100 scale, and a dose's desirability is the utility-weighted
average over its outcome distribution.
"""

from __future__ import annotations

from dataclasses import dataclass

PROB_SUM_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when a domain object or argument violates its invariants."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class Outcome:
    """One patient's binary (toxicity, efficacy) outcome."""

    y_t: int
    y_e: int

    def __post_init__(self):
        if self.y_t not in (0, 1):
            raise ValidationError("y_t must be 0 or 1", field="y_t")
        if self.y_e not in (0, 1):
            raise ValidationError("y_e must be 0 or 1", field="y_e")


@dataclass(frozen=True)
class UtilityTable:
    """Scores u[y_T][y_E] on the 0-100 scale for the four joint outcomes.

    The default convention fixes the best outcome (no toxicity, efficacy) at
    100 and the worst (toxicity, no efficacy) at 0; the two mixed outcomes are
    elicited. A table is *additive* when u01 + u10 == u11 + u00, in which case
    total utility depends on the margins only (see :func:`quasi_events`).
    """

    u00: float = 40.0
    u01: float = 100.0
    u10: float = 0.0
    u11: float = 60.0

    def __post_init__(self):
        for name in ("u00", "u01", "u10", "u11"):
            v = getattr(self, name)
            if not (0.0 <= v <= 100.0):
                raise ValidationError(f"{name}={v} outside the 0-100 scale", field=name)
        if not (self.u01 >= self.u11 and self.u01 >= self.u00
                and self.u11 >= self.u10 and self.u00 >= self.u10):
            raise ValidationError("utility table violates outcome monotonicity", field="utility")

    @property
    def additive(self) -> bool:
        return abs((self.u01 + self.u10) - (self.u11 + self.u00)) < 1e-9

    def score(self, y_t: int, y_e: int) -> float:
        return (self.u00, self.u01, self.u10, self.u11)[2 * y_t + y_e]

    def as_block(self) -> list[list[float]]:
        """Row-major 2x2 block indexed (y_T, y_E); the config-file layout."""
        return [[self.u00, self.u01], [self.u10, self.u11]]

    @classmethod
    def from_block(cls, block) -> "UtilityTable":
        if len(block) != 2 or any(len(row) != 2 for row in block):
            raise ValidationError("utility block must be 2x2", field="utility")
        return cls(u00=float(block[0][0]), u01=float(block[0][1]),
                   u10=float(block[1][0]), u11=float(block[1][1]))


DEFAULT_UTILITY = UtilityTable()


@dataclass(frozen=True)
class OutcomeProbVector:
    """Probabilities of the four (y_T, y_E) outcomes; must sum to one."""

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        for name in ("p00", "p01", "p10", "p11"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValidationError(f"{name}={v} outside [0,1]", field=name)
        total = self.p00 + self.p01 + self.p10 + self.p11
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"outcome probabilities sum to {total!r}, not 1", field="sum")

    @property
    def pi_t(self) -> float:
        return self.p10 + self.p11

    @property
    def pi_e(self) -> float:
        return self.p01 + self.p11

    def cells(self) -> tuple[float, float, float, float]:
        return (self.p00, self.p01, self.p10, self.p11)


@dataclass(frozen=True)
class BrtWeights:
    """Toxicity penalty for the linear efficacy-toxicity tradeoff."""

    w: float = 1.0

    def __post_init__(self):
        if not self.w > 0:
            raise ValidationError("toxicity penalty w must be positive", field="w")


def utility_brt(p: OutcomeProbVector, u: UtilityTable = DEFAULT_UTILITY) -> float:
    """Mean utility of a dose: sum over the four outcomes of probability x score.

    Linear in p; 0-100 scale. The worked default-table example:
    p=(0.15, 0.5, 0.1, 0.25) -> 0.5*100 + 0.15*40 + 0.25*60 + 0.1*0 = 71.
    """
    return (p.p00 * u.u00 + p.p01 * u.u01 + p.p10 * u.u10 + p.p11 * u.u11)


def linear_brt(pi_e: float, pi_t: float, weights: BrtWeights = BrtWeights()) -> float:
    """Linear tradeoff pi_E - w*pi_T; higher is better, decreasing in pi_T."""
    if not (0.0 <= pi_e <= 1.0):
        raise ValidationError(f"pi_e={pi_e} outside [0,1]", field="pi_e")
    if not (0.0 <= pi_t <= 1.0):
        raise ValidationError(f"pi_t={pi_t} outside [0,1]", field="pi_t")
    return pi_e - weights.w * pi_t


def quasi_events(n: int, x_t: int, x_e: int, u: UtilityTable = DEFAULT_UTILITY) -> float:
    """Pseudo-event mass of n patients with x_t toxicities and x_e responses.

    For an additive utility table the total standardized utility
    sum_i u_i/100 of any joint outcome configuration depends only on the
    margins, collapsing to

        x = [u00*n + (u01 - u00)*x_e - (u00 - u10)*x_t] / 100.

    Feeds the quasi-binomial posterior: x successes in n trials.

    Raises:
        ValidationError: counts out of range, or table not additive (use
            :func:`quasi_events_joint` with the four joint counts instead).
    """
    if not (0 <= x_t <= n):
        raise ValidationError(f"x_t={x_t} outside 0..{n}", field="x_t")
    if not (0 <= x_e <= n):
        raise ValidationError(f"x_e={x_e} outside 0..{n}", field="x_e")
    if not u.additive:
        raise ValidationError(
            "utility table is not additive; marginal counts do not determine total "
            "utility -- call quasi_events_joint(n00, n01, n10, n11, u)",
            field="utility")
    x = (u.u00 * n + (u.u01 - u.u00) * x_e - (u.u00 - u.u10) * x_t) / 100.0
    # clip float dust at the boundaries; the exact value lies in [0, n]
    return min(max(x, 0.0), float(n))


def quasi_events_joint(n00: int, n01: int, n10: int, n11: int,
                       u: UtilityTable = DEFAULT_UTILITY) -> float:
    """Pseudo-event mass from explicit joint outcome counts: sum n_ij*u_ij/100."""
    for name, v in (("n00", n00), ("n01", n01), ("n10", n10), ("n11", n11)):
        if v < 0:
            raise ValidationError(f"{name}={v} negative", field=name)
    return (n00 * u.u00 + n01 * u.u01 + n10 * u.u10 + n11 * u.u11) / 100.0


def benchmark_utility(phi_t: float, phi_e: float,
                      u: UtilityTable = DEFAULT_UTILITY) -> float:
    """Utility of a borderline dose with independent Bernoulli(phi_t), Bernoulli(phi_e).

    This is the natural benchmark for ranking dose desirability: a dose at
    exactly the toxicity upper limit and efficacy lower limit. Defaults give
    benchmark_utility(0.35, 0.25) = 41.0.
    """
    if not (0.0 <= phi_t <= 1.0):
        raise ValidationError(f"phi_t={phi_t} outside [0,1]", field="phi_t")
    if not (0.0 <= phi_e <= 1.0):
        raise ValidationError(f"phi_e={phi_e} outside [0,1]", field="phi_e")
    p = OutcomeProbVector(
        p00=(1 - phi_t) * (1 - phi_e),
        p01=(1 - phi_t) * phi_e,
        p10=phi_t * (1 - phi_e),
        p11=phi_t * phi_e,
    )
    return utility_brt(p, u)
