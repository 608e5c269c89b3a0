"""Machine-checkable success conditions for the recovery algorithms.

Each evaluator fills in one side of a guarantee: the decay-driven
average-case conditions for greedy pursuit (noiseless and noisy), the
classic worst-case coherence conditions, and the per-coefficient noise
floor.  Logarithms are natural throughout; the failure probabilities of
the form K^(1-2m) only make sense on that convention.
"""

import math
from dataclasses import dataclass

# Guarantee constants for the average-case conditions.
NOISELESS_THRESHOLD = 1.0 / 13.0
NOISY_THRESHOLD = 1.0 / 10.0
NOISE_FLOOR_FACTOR = 14.0
RECOVERABLE_FACTOR = 2.0


@dataclass(frozen=True)
class DecayParams:
    """Coefficient-decay description: c_{i+t}/c_i <= 1 - lam/S.

    ``m`` steers the failure probability (2*S*K^(1-2m) in the noiseless
    setting); values below 1/2 make the bound vacuous but are accepted and
    reported as-is.
    """

    t: int
    lam: float
    m: float
    S: int
    K: int
    mu: float

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"step t must be >= 1, got {self.t}")
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not self.m > 0:
            raise ValueError(f"probability exponent m must be positive, got {self.m}")
        if self.S < 1:
            raise ValueError(f"sparsity must be >= 1, got {self.S}")
        if self.K < 2:
            raise ValueError(f"atom count must be >= 2, got {self.K}")
        if not 0.0 < self.mu < 1.0:
            raise ValueError(f"coherence must lie in (0, 1), got {self.mu}")


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: lhs vs threshold, plus the failure
    probability of the probabilistic statement it belongs to (0 for
    deterministic guarantees; may exceed 1 when vacuous)."""

    label: str
    lhs: float
    threshold: float
    satisfied: bool
    failure_probability: float
    strict: bool = False

    def __post_init__(self):
        expected = self.lhs < self.threshold if self.strict else self.lhs <= self.threshold
        if self.satisfied != expected:
            raise ValueError(f"inconsistent report {self.label}: {self.lhs} vs {self.threshold}")


def _make_report(label, lhs, threshold, failure_probability, strict=False):
    satisfied = lhs < threshold if strict else lhs <= threshold
    return BoundReport(
        label=label,
        lhs=float(lhs),
        threshold=float(threshold),
        satisfied=bool(satisfied),
        failure_probability=float(failure_probability),
        strict=strict,
    )


def _decay_bracket(p):
    """(t*ceil(S/lam) + sqrt(m*t*S*log(K)/lam) + 1), shared by both
    average-case conditions."""
    return (
        p.t * math.ceil(p.S / p.lam)
        + math.sqrt(p.m * p.t * p.S * math.log(p.K) / p.lam)
        + 1.0
    )


def noiseless_condition(p):
    """Average-case full-recovery condition for greedy pursuit.

    lhs = bracket * S * mu^2 against 1/13; holds except with probability
    2*S*K^(1-2m).
    """
    lhs = _decay_bracket(p) * p.S * p.mu ** 2
    fail = 2.0 * p.S * p.K ** (1.0 - 2.0 * p.m)
    return _make_report("noiseless_decay_condition", lhs, NOISELESS_THRESHOLD, fail)


def noisy_conditions(p, s, nu, profile):
    """Average-case partial-recovery conditions under noise.

    Returns two reports: the decay condition
    bracket * (mu + 2*s*mu^2) <= 1/10, and the noise floor
    14 * nu * sqrt(m*log K) <= c_s (the s-th largest coefficient).
    Both carry the joint failure probability 4*s*K^(1-2m).
    """
    s = int(s)
    if not 1 <= s <= profile.S:
        raise ValueError(f"recovery depth s must lie in [1, S={profile.S}], got {s}")
    if nu < 0:
        raise ValueError(f"noise level must be >= 0, got {nu}")
    fail = 4.0 * s * p.K ** (1.0 - 2.0 * p.m)
    lhs_decay = _decay_bracket(p) * (p.mu + 2.0 * s * p.mu ** 2)
    decay_report = _make_report("noisy_decay_condition", lhs_decay, NOISY_THRESHOLD, fail)
    floor = NOISE_FLOOR_FACTOR * nu * math.sqrt(p.m * math.log(p.K))
    floor_report = _make_report(
        "coefficient_noise_floor", floor, float(profile.values[s - 1]), fail
    )
    return decay_report, floor_report


def worst_case_conditions(S, mu, profile):
    """Deterministic coherence conditions.

    Pursuit and l1 minimisation succeed on every S-sparse signal when
    2*S*mu < 1; thresholding additionally needs 2*S*mu below the
    smallest-to-largest coefficient ratio.  Both are strict inequalities
    with zero failure probability.
    """
    S = int(S)
    if S < 1:
        raise ValueError(f"sparsity must be >= 1, got {S}")
    if S > profile.S:
        raise ValueError(f"profile has only {profile.S} coefficients, got S={S}")
    lhs = 2.0 * S * mu
    pair = _make_report("worst_case_support", lhs, 1.0, 0.0, strict=True)
    ratio = float(profile.values[S - 1] / profile.values[0])
    thresh = _make_report("worst_case_thresholding", lhs, ratio, 0.0, strict=True)
    return pair, thresh


def recoverable_count(profile, nu, K):
    """Number of coefficients above the noise level: c_i^2 >= 2*nu^2*log(K)."""
    if nu < 0:
        raise ValueError(f"noise level must be >= 0, got {nu}")
    level = RECOVERABLE_FACTOR * nu ** 2 * math.log(K)
    return int((profile.values ** 2 >= level).sum())


def geometric_to_decay_params(alpha, S, m, K, mu):
    """DecayParams for a geometric profile: t = 1, lam = S * (1 - alpha).

    Requires alpha strictly inside (0, 1); a flat profile has no decay and
    the average-case condition does not apply.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"decay parameter must lie in (0, 1), got {alpha}")
    return DecayParams(t=1, lam=float(S) * (1.0 - float(alpha)), m=m, S=int(S), K=int(K), mu=mu)
