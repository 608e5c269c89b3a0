"""Sparse signal generation: geometric coefficient profiles, random
supports and signs, and additive Gaussian noise.

All randomness flows through counter-based Philox streams keyed by
(seed, path) so that independent trials get independent, reproducible
streams regardless of execution order.
"""

import numpy as np
from dataclasses import dataclass

from .linops import as_vector

PROFILE_TOL = 1e-12
RECONSTRUCT_TOL = 1e-12


def stream(seed, *path):
    """Deterministic RNG stream for domain ``path`` under a master seed.

    ``path`` is a tuple of non-negative integers naming the consumer
    (e.g. experiment namespace, grid cell, trial).  Distinct paths yield
    statistically independent streams.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def _as_generator(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return stream(seed_or_rng)


@dataclass(frozen=True, eq=False)
class CoefficientProfile:
    """Strictly positive, non-increasing coefficients with unit l2 norm."""

    alpha: float
    values: np.ndarray

    def __post_init__(self):
        v = as_vector(self.values).copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if v.size < 1:
            raise ValueError("profile needs at least one coefficient")
        if not (v > 0).all():
            raise ValueError("coefficients must be strictly positive")
        if (np.diff(v) > 0).any():
            raise ValueError("coefficients must be non-increasing")
        if abs(float(v @ v) - 1.0) > PROFILE_TOL:
            raise ValueError("coefficients must have unit l2 norm")

    @property
    def S(self):
        return int(self.values.size)


def geometric_profile(S, alpha):
    """Geometric coefficient sequence beta * alpha^i, i = 1..S, unit norm.

    ``alpha`` = 1 gives the flat profile 1/sqrt(S).
    """
    S = int(S)
    if S < 1:
        raise ValueError(f"sparsity must be >= 1, got {S}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"decay parameter must lie in (0, 1], got {alpha}")
    powers = alpha ** np.arange(1, S + 1, dtype=float)
    values = powers / np.linalg.norm(powers)
    return CoefficientProfile(alpha=float(alpha), values=values)


@dataclass(frozen=True, eq=False)
class SparseSignal:
    """A synthesised sparse signal and the ground truth that produced it."""

    support: tuple
    signs: tuple
    profile: CoefficientProfile
    clean: np.ndarray
    noisy: np.ndarray = None
    noise_param: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(int(i) for i in self.support))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(set(self.support)) != len(self.support):
            raise ValueError("support contains duplicate indices")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +/-1")
        if not (len(self.support) == len(self.signs) == self.profile.S):
            raise ValueError("support, signs and profile sizes disagree")

    @property
    def observed(self):
        """The vector a solver sees: noisy if present, else clean."""
        return self.clean if self.noisy is None else self.noisy

    def signed_coefficients(self):
        return np.array(self.signs, dtype=float) * self.profile.values


def draw_support(K, S, seed):
    """Ordered support of S distinct indices, uniform over ordered subsets."""
    K, S = int(K), int(S)
    if S > K:
        raise ValueError(f"cannot draw {S} distinct indices from {K}")
    rng = _as_generator(seed)
    return tuple(int(i) for i in rng.permutation(K)[:S])


def draw_signs(S, seed):
    """Independent fair +/-1 signs."""
    rng = _as_generator(seed)
    return tuple(int(s) for s in rng.integers(0, 2, size=int(S)) * 2 - 1)


def synthesize(dictionary, profile, support, signs):
    """Build the clean signal sum_k signs[k] * values[k] * atom[support[k]]."""
    support = tuple(int(i) for i in support)
    signs = tuple(int(s) for s in signs)
    if not (len(support) == len(signs) == profile.S):
        raise ValueError(
            f"size mismatch: |support|={len(support)}, |signs|={len(signs)}, S={profile.S}"
        )
    for j in support:
        if not 0 <= j < dictionary.K:
            raise ValueError(f"support index {j} out of range [0, {dictionary.K})")
    coeffs = np.array(signs, dtype=float) * profile.values
    clean = dictionary.matrix[:, list(support)] @ coeffs
    return SparseSignal(support=support, signs=signs, profile=profile, clean=clean)


def add_noise(signal, nu, seed):
    """Add i.i.d. Gaussian noise of standard deviation ``nu`` per coordinate."""
    nu = float(nu)
    if nu < 0:
        raise ValueError(f"noise level must be >= 0, got {nu}")
    if nu == 0.0:
        noisy = signal.clean.copy()
    else:
        rng = _as_generator(seed)
        noisy = signal.clean + nu * rng.standard_normal(signal.clean.shape[0])
    return SparseSignal(
        support=signal.support,
        signs=signal.signs,
        profile=signal.profile,
        clean=signal.clean,
        noisy=noisy,
        noise_param=nu,
    )


def snr_to_nu(snr, d):
    """Noise standard deviation for a target SNR = 1 / (d * nu^2)."""
    snr = float(snr)
    if snr <= 0:
        raise ValueError(f"SNR must be positive, got {snr}")
    return 1.0 / np.sqrt(int(d) * snr)


def fixture_row(signal, seed):
    """One CSV fixture line: support; signs; alpha; S; seed."""
    support = " ".join(str(i) for i in signal.support)
    signs = " ".join(str(s) for s in signal.signs)
    return f"{support};{signs};{signal.profile.alpha:.17g};{signal.profile.S};{seed}"


def parse_fixture_row(row):
    """Inverse of fixture_row: returns (support, signs, alpha, S, seed)."""
    support_s, signs_s, alpha_s, s_s, seed_s = row.strip().split(";")
    support = tuple(int(x) for x in support_s.split())
    signs = tuple(int(x) for x in signs_s.split())
    return support, signs, float(alpha_s), int(s_s), int(seed_s)
