"""Quadratic forms of (0,1)-matrices over the standard simplex.

Covers the symmetric/one-sided split ``A = B + C`` with ``b_ij = a_ij a_ji``,
saturation of mutually-zero pairs, the two closed-form bounds and a
replicator-dynamics solver with a brute-force grid oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

import numpy as np
from numba import njit

from .core import ComplexMatrix, as_matrix
from .pattern import OracleSizeError

DEFAULT_RESTARTS = 20
MAX_ITERATIONS = 100_000
GAIN_TOL = 1e-14
# roundoff allowance when auditing that replicator steps never decrease the objective
MONOTONE_SLACK = 1e-13
_TINY = float(np.finfo(np.float64).tiny)

GRID_MAX_N = 5
GRID_MAX_DENOMINATOR = 30


class PatternMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class MSResult:
    value: float
    argmax: np.ndarray
    restarts_used: int
    converged: bool
    monotone: bool = True


def _check_zero_one(A: ComplexMatrix) -> np.ndarray:
    if not A.is_zero_one() or np.any(np.diag(A.array).real != 0):
        raise PatternMatrixError("not a 0/1 zero-diagonal matrix")
    return A.array.real.copy()


def symmetrize_support(A: Any) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Split ``A`` into its symmetric part ``B = {a_ij a_ji}`` and ``C = A - B``."""
    a = _check_zero_one(as_matrix(A))
    b = a * a.T
    return ComplexMatrix(b), ComplexMatrix(a - b)


def saturate(A: Any) -> ComplexMatrix:
    """Set ``a_ij = 1`` (``i < j``) for every pair with ``a_ij = a_ji = 0``."""
    a = _check_zero_one(as_matrix(A))
    both_zero = np.triu((a == 0) & (a.T == 0), k=1)
    a[both_zero] = 1.0
    return ComplexMatrix(a)


def is_saturated(A: Any) -> bool:
    a = _check_zero_one(as_matrix(A))
    s = a + a.T
    np.fill_diagonal(s, 1.0)
    return bool(np.all(s >= 1))


def ms_bound_symmetric(omega: int) -> float:
    if omega < 1:
        raise ValueError("omega must be >= 1")
    return 1.0 - 1.0 / omega


def lemma1_bound(omega: int, n: int) -> float:
    """``1 - 1/(2 omega) - 1/(2n)``, the simplex ceiling for 0/1 zero-diagonal matrices."""
    if n < 1 or omega < 1:
        raise ValueError("omega and n must be >= 1")
    if omega > n:
        raise ValueError(f"omega = {omega} exceeds n = {n}")
    return 1.0 - 1.0 / (2 * omega) - 1.0 / (2 * n)


def _restart_start(n: int, seed: int, restart: int) -> np.ndarray:
    if restart == 0:
        return np.full(n, 1.0 / n)
    rng = np.random.default_rng([seed, restart])
    x = rng.exponential(size=n)
    return x / x.sum()


@njit(cache=True)
def _trajectory(s, x, max_iter, gain_tol, slack):
    """Run ``x <- x * Sx / <Sx, x>`` from ``x`` until the per-step gain drops below ``gain_tol``.

    Returns ``(value, x, converged, monotone)``.
    """
    n = x.shape[0]
    x = x.copy()
    sx = np.empty(n)
    x_new = np.empty(n)
    sx_new = np.empty(n)
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += s[i, j] * x[j]
        sx[i] = acc
    value = 0.0
    for i in range(n):
        value += x[i] * sx[i]
    monotone = True
    for _ in range(max_iter):
        if value <= 0.0:
            return value, x, False, monotone
        total = 0.0
        for i in range(n):
            x_new[i] = x[i] * sx[i] / value
            total += x_new[i]
        for i in range(n):
            x_new[i] /= total
            # decaying coordinates would go subnormal, which is ~100x slower
            if x_new[i] < _TINY:
                x_new[i] = 0.0
        new_value = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += s[i, j] * x_new[j]
            sx_new[i] = acc
            new_value += x_new[i] * acc
        gain = new_value - value
        if gain < -slack * max(1.0, value):
            monotone = False
        if gain < gain_tol:
            if gain >= 0.0:
                return new_value, x_new.copy(), True, monotone
            return value, x, True, monotone
        x[:] = x_new
        sx[:] = sx_new
        value = new_value
    return value, x, False, monotone


def replicator_max(S: Any, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> MSResult:
    """Best local maximum of ``<Sx, x>`` on the simplex found by replicator dynamics.

    The first trajectory starts at the barycentre, the rest at random
    simplex points drawn from per-restart seeded streams.  Ties keep the
    lowest restart index.  A trajectory whose objective is zero cannot move
    and counts as not converged.
    """
    S = as_matrix(S)
    s = S.array
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if np.any(s.imag) or np.any(s.real < 0) or np.any(np.diag(s).real != 0):
        raise ValueError("S must be real, nonnegative, with zero diagonal")
    s = np.ascontiguousarray(s.real)
    if np.max(np.abs(s - s.T)) > 1e-12:
        raise ValueError("S must be symmetric")
    best_value, best_x = -1.0, None
    all_converged = all_monotone = True
    for k in range(restarts):
        value, x, conv, mono = _trajectory(
            s, _restart_start(S.n, seed, k), MAX_ITERATIONS, GAIN_TOL, MONOTONE_SLACK
        )
        all_converged &= conv
        all_monotone &= mono
        if value > best_value:
            best_value, best_x = value, x
    return MSResult(float(best_value), best_x, restarts, bool(all_converged), bool(all_monotone))


def general_simplex_max(A: Any, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> MSResult:
    """Maximise ``<Ax, x>`` over the simplex for a 0/1 zero-diagonal ``A``.

    On real vectors ``<Ax, x> = <Sx, x>`` with ``S = (A + A^T)/2``, so the
    symmetric solver applies unchanged.
    """
    a = _check_zero_one(as_matrix(A))
    res = replicator_max((a + a.T) / 2.0, restarts, seed)
    value = float(res.argmax @ a @ res.argmax)
    return MSResult(value, res.argmax, res.restarts_used, res.converged, res.monotone)


def _compositions(total: int, parts: int) -> np.ndarray:
    rows = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(total + parts - 2 - prev)
        rows.append(row)
    return np.array(rows, dtype=np.float64)


def _grid_values(A: Any, denominator: int) -> tuple[np.ndarray, np.ndarray]:
    A = as_matrix(A)
    if A.n > GRID_MAX_N or not 1 <= denominator <= GRID_MAX_DENOMINATOR:
        raise OracleSizeError(
            f"oracle size limit: need n <= {GRID_MAX_N} and denominator <= {GRID_MAX_DENOMINATOR}"
        )
    if not A.is_real():
        raise ValueError("simplex programs need a real matrix")
    pts = _compositions(denominator, A.n) / denominator
    return pts, np.einsum("si,ij,sj->s", pts, A.array.real, pts)


def simplex_grid_max(A: Any, denominator: int) -> float:
    """Exhaustive maximum of ``<Ax, x>`` over simplex points with coordinates in ``(1/d) Z``."""
    _, vals = _grid_values(A, denominator)
    return float(vals.max())


def grid_argmax(A: Any, denominator: int) -> np.ndarray:
    pts, vals = _grid_values(A, denominator)
    return pts[int(np.argmax(vals))]
