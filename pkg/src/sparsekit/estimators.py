"""Scikit-learn style front end.

``SparseCoder`` wraps the functional solvers behind the usual
fit/transform contract so sparse coding drops into pipelines and model
selection.  Signals are rows of X; codes are rows of the returned
(n_signals, K) array.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from .dictionaries import Dictionary
from .solvers import bp_solve, omp, thresholding

_ALGORITHMS = ("omp", "bp", "threshold")


def _as_dictionary(dictionary):
    if isinstance(dictionary, Dictionary):
        return dictionary
    return Dictionary(matrix=np.asarray(dictionary, dtype=float))


class SparseCoder(TransformerMixin, BaseEstimator):
    """Transform signals into sparse codes over a fixed dictionary.

    Parameters
    ----------
    dictionary : Dictionary or array of shape (d, K)
        Unit-norm atoms stored as columns.
    algorithm : {"omp", "bp", "threshold"}
        Pursuit, minimum-l1, or one-shot correlation thresholding.
    sparsity : int, required for "omp" and "threshold"
        Number of atoms to select per signal.
    residual_tol : float
        Early-stop tolerance for pursuit.
    """

    def __init__(self, dictionary=None, algorithm="omp", sparsity=None, residual_tol=0.0):
        self.dictionary = dictionary
        self.algorithm = algorithm
        self.sparsity = sparsity
        self.residual_tol = residual_tol

    def fit(self, X=None, y=None):
        if self.dictionary is None:
            raise ValueError("a dictionary is required")
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"algorithm must be one of {_ALGORITHMS}, got {self.algorithm!r}")
        if self.algorithm in ("omp", "threshold") and self.sparsity is None:
            raise ValueError(f"algorithm {self.algorithm!r} requires a sparsity level")
        self.dictionary_ = _as_dictionary(self.dictionary)
        self.n_features_in_ = self.dictionary_.d
        return self

    def _encode(self, signal):
        if self.algorithm == "omp":
            res = omp(self.dictionary_, signal, max_iters=self.sparsity,
                      residual_tol=self.residual_tol)
        elif self.algorithm == "threshold":
            res = thresholding(self.dictionary_, signal, self.sparsity)
        else:
            return bp_solve(self.dictionary_, signal).x_hat
        code = np.zeros(self.dictionary_.K)
        code[list(res.support)] = res.coeffs
        return code

    def transform(self, X):
        if not hasattr(self, "dictionary_"):
            raise NotFittedError("SparseCoder is not fitted; call fit first")
        X = check_array(X, ensure_2d=True, dtype=float)
        if X.shape[1] != self.dictionary_.d:
            raise ValueError(
                f"signals have {X.shape[1]} features, dictionary expects {self.dictionary_.d}"
            )
        return np.vstack([self._encode(row) for row in X])

    def inverse_transform(self, codes):
        if not hasattr(self, "dictionary_"):
            raise NotFittedError("SparseCoder is not fitted; call fit first")
        codes = check_array(codes, ensure_2d=True, dtype=float)
        return codes @ self.dictionary_.matrix.T
