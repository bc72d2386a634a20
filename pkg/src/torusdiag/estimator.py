"""scikit-learn style wrapper.

``fit`` takes the rational function and performs the reduction; ``predict``
evaluates the diagonal at a batch of parameter vectors.  Parameters are
complex, which scikit-learn's own ``check_array`` refuses, so input
validation is done here.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .geometry import Contour
from .lattice import DiagonalSpec
from .laurent import RationalFunction
from .parser import parse_rational
from .quadrature import MAX_NODES, converge, eval_original, eval_reduced
from .reduction import reduce, verify_reduction
from .series import diagonal_partial_sum


def check_parameters(T, p: int) -> np.ndarray:
    """Coerce ``T`` to a finite complex array of shape (m, p)."""
    arr = np.asarray(T, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim == 1:
        arr = arr.reshape(-1, p) if p > 1 or arr.size == 0 else arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] != p:
        raise ValueError(f"expected parameters of shape (m, {p}), got {np.shape(T)}")
    if arr.shape[0] == 0:
        raise ValueError("found an empty parameter array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("parameters must be finite")
    return arr


class DiagonalIntegral(BaseEstimator):
    """Estimator computing the one-sided diagonal of a rational function.

    Parameters
    ----------
    directions : sequence of integer vectors
        The diagonal directions q^(1..p).
    variables : sequence of str, optional
        Variable names, needed only when ``fit`` receives an expression string.
    rho : "auto" or sequence of float
        Log-radii of the original torus.
    matrix : n x n integer rows, optional
        Completion matrix whose first p columns are the directions.
    method : {"reduced", "original", "series"}
        Which route ``predict`` uses.
    tol, n_max : float, int
        Quadrature convergence target and node cap.
    series_order : int
        Truncation order for ``method="series"``.
    """

    def __init__(self, directions=((1, 1),), variables=None, rho="auto", matrix=None, method="reduced",
                 tol=1e-10, n_max=MAX_NODES, series_order=16):
        self.directions = directions
        self.variables = variables
        self.rho = rho
        self.matrix = matrix
        self.method = method
        self.tol = tol
        self.n_max = n_max
        self.series_order = series_order

    def fit(self, X, y=None):
        if self.method not in ("reduced", "original", "series"):
            raise ValueError(f"unknown method {self.method!r}")
        if isinstance(X, str):
            if self.variables is None:
                raise ValueError("variables must be set to parse an expression")
            X = parse_rational(X, self.variables)
        if not isinstance(X, RationalFunction):
            raise TypeError("fit expects a RationalFunction or an expression string")
        self.function_ = X
        self.spec_ = DiagonalSpec(tuple(tuple(d) for d in self.directions))
        rho = self.rho if isinstance(self.rho, str) else Contour(tuple(self.rho))
        self.representation_ = reduce(X, self.spec_, rho=rho, matrix=self.matrix)
        self.verification_ = verify_reduction(self.representation_)
        self.A_ = self.representation_.A
        self.A_inv_ = self.representation_.A_inv
        self.n_features_in_ = self.spec_.rank
        return self

    def predict(self, T) -> np.ndarray:
        check_is_fitted(self, "representation_")
        arr = check_parameters(T, self.spec_.rank)
        rep = self.representation_
        out = np.empty(arr.shape[0], dtype=complex)
        for i, t in enumerate(arr):
            t = list(t)
            if self.method == "series":
                out[i] = diagonal_partial_sum(self.function_, self.spec_, t, self.series_order).value
                continue
            if self.method == "original":
                res = converge(lambda N: eval_original(self.function_, self.spec_, t, rep.rho, N), self.tol, self.n_max)
            else:
                res = converge(lambda N: eval_reduced(rep, t, N), self.tol, self.n_max)
            out[i] = res.value
        return out
