"""Dose-optimization trial design engine.

Subpackages cover the utility/benefit-risk core, interval-design boundaries
and elimination rules, the efficacy-integrated decision engine and its score
tables, exact randomized-stage design search, correlated outcome scenarios,
Monte Carlo operating characteristics, and event-sourced trial conduct behind
a CLI and HTTP service.
"""

from .outcomes import (BrtWeights, Outcome, OutcomeProbVector, UtilityTable,
                       ValidationError, benchmark_utility, linear_brt,
                       quasi_events, quasi_events_joint, utility_brt)
from .boin import (BoinBoundaries, EliminationConfig, beta_tail,
                   eliminate_futility, eliminate_safety, lambda_bounds)
from .boin12 import (Boin12Config, CalibrationError, Decision, DoseState,
                     RdsGeneratorParams, RdsTable, calibrate_generator, decide,
                     default_rds_table, desirability, generate_rds_table,
                     select_obd)
from .merit import (MeritDesign, MeritSpec, accept_prob, admissible,
                    binom_cdf, binom_sf_geq, generalized_power,
                    generalized_t1e, search)
from .copula import (DoseScenario, EffToxCurves, curves_to_scenario, joint_pmf,
                     sample_outcome)
from .simulate import (OperatingCharacteristics, SimConfig, TwoStageConfig,
                       advise_sample_size, simulate_boin12, simulate_two_stage)
from .conduct import (CohortEvent, ConductConfig, TrialStore)

__version__ = "0.1.0"
