"""Numerical radius via the rotated Hermitian part.

``eta(A) = max_theta lambda_max((e^{i theta} A + e^{-i theta} A^*) / 2)``.
The phase is located on a fixed grid and polished by golden-section search;
the maximising eigenvector is a witness ``y`` with ``|<Ay, y>| = eta(A)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .core import ComplexMatrix, as_matrix, frobenius_norm, is_hermitian, normalize_phase

GRID_SIZE = 720
REFINE_BRACKETS = 5
PHASE_WIDTH = 1e-12
HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class RadiusResult:
    value: float
    theta_star: float
    witness: np.ndarray
    iterations: int


def rotated_hermitian_part(A: Any, theta: float) -> ComplexMatrix:
    return ComplexMatrix(_rotated(as_matrix(A).array, theta))


def _rotated(a: np.ndarray, theta: float) -> np.ndarray:
    z = complex(math.cos(theta), math.sin(theta))
    h = z * a
    h = (h + h.conj().T) / 2.0
    return h


def jacobi_eigh(
    H: Any, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic complex Jacobi diagonalisation of a Hermitian matrix.

    Returns ascending eigenvalues, the matching orthonormal eigenvectors as
    columns, and the number of sweeps performed.  Pairs are visited in
    row-cyclic order; iteration stops once the off-diagonal Frobenius mass
    drops to ``tol * max(1, ||H||)``.
    """
    a = np.array(as_matrix(H).array, dtype=np.complex128)
    n = a.shape[0]
    if not is_hermitian(a, HERMITIAN_TOL * max(1.0, float(np.abs(a).max(initial=0.0)))):
        raise NotHermitianError("not hermitian")
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=np.complex128)
    limit = tol * max(1.0, float(np.linalg.norm(a)))
    sweeps = 0
    while sweeps < max_sweeps:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= limit:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag == 0.0:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                e = g / mag
                # unitary on coordinates (p, q): phase fix then real rotation
                rot = np.array([[c, s], [-s * e.conjugate(), c * e.conjugate()]])
                cols = a[:, [p, q]] @ rot
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = rot.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
                a[p, p], a[q, q] = a[p, p].real, a[q, q].real
                vc = v[:, [p, q]] @ rot
                v[:, p], v[:, q] = vc[:, 0], vc[:, 1]
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


def lambda_max_hermitian(H: Any) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a phase-normalised unit eigenvector."""
    w, v, _ = jacobi_eigh(H)
    return float(w[-1]), normalize_phase(v[:, -1])


def spectral_radius_hermitian(A: Any) -> float:
    w, _, _ = jacobi_eigh(A)
    return float(max(w[-1], -w[0], 0.0))


def _top_eigenvalues(a: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    z = np.exp(1j * thetas)[:, None, None]
    h = z * a[None, :, :]
    h = (h + np.conj(np.swapaxes(h, 1, 2))) / 2.0
    return np.linalg.eigvalsh(h)[:, -1]


def _g(a: np.ndarray, theta: float) -> float:
    return float(np.linalg.eigvalsh(_rotated(a, theta))[-1])


def _pick_brackets(values: np.ndarray, count: int) -> list[int]:
    k = values.shape[0]
    chosen: list[int] = []
    for idx in np.argsort(-values, kind="stable"):
        idx = int(idx)
        if all(min((idx - c) % k, (c - idx) % k) > 1 for c in chosen):
            chosen.append(idx)
            if len(chosen) == count:
                break
    return chosen


def _golden_max(a: np.ndarray, lo: float, hi: float, width: float) -> tuple[float, float, int]:
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = _g(a, x1), _g(a, x2)
    steps = 0
    while hi - lo > width:
        steps += 1
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = _g(a, x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = _g(a, x2)
    return (x1, f1, steps) if f1 >= f2 else (x2, f2, steps)


def numerical_radius(
    A: Any,
    grid: int = GRID_SIZE,
    brackets: int = REFINE_BRACKETS,
    hermitian_shortcut: bool = True,
) -> RadiusResult:
    """``eta(A) = max_{|x|=1} |<Ax, x>|`` with a maximising unit vector.

    Hermitian inputs are diagonalised directly (only the phases 0 and pi
    matter); pass ``hermitian_shortcut=False`` to force the phase sweep.
    """
    A = as_matrix(A)
    a = A.array
    n = A.n
    if not np.any(a):
        e1 = np.zeros(n, dtype=np.complex128)
        e1[0] = 1.0
        return RadiusResult(0.0, 0.0, e1, 0)

    if hermitian_shortcut and is_hermitian(A, HERMITIAN_TOL):
        w, v, sweeps = jacobi_eigh(A)
        if w[-1] >= -w[0]:
            return RadiusResult(float(w[-1]), 0.0, normalize_phase(v[:, -1]), sweeps)
        return RadiusResult(float(-w[0]), math.pi, normalize_phase(v[:, 0]), sweeps)

    step = 2.0 * math.pi / grid
    thetas = np.arange(grid) * step
    values = _top_eigenvalues(a, thetas)
    best_k = int(np.argmax(values))
    best_theta, best_value = float(thetas[best_k]), float(values[best_k])
    iterations = grid
    for k in _pick_brackets(values, brackets):
        theta, value, steps = _golden_max(a, (k - 1) * step, (k + 1) * step, PHASE_WIDTH)
        iterations += steps
        if value > best_value:
            best_theta, best_value = theta, value
    best_theta %= 2.0 * math.pi

    _, vecs = np.linalg.eigh(_rotated(a, best_theta))
    witness = normalize_phase(vecs[:, -1])
    # the maximum is flat in theta, so read the phase back off the witness:
    # <A y, y> = value * e^{-i theta}
    q = complex(np.vdot(witness, a @ witness))
    theta_star = (-math.atan2(q.imag, q.real)) % (2.0 * math.pi)
    if theta_star >= 2.0 * math.pi:
        theta_star = 0.0
    value = max(best_value, abs(q))
    return RadiusResult(float(value), theta_star, witness, iterations)


def sampled_lower_bound(A: Any, samples: int, rng: np.random.Generator) -> float:
    """Largest ``|<Ax, x>|`` over random unit vectors (a lower bound for ``eta``)."""
    a = as_matrix(A).array
    n = a.shape[0]
    x = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    vals = np.einsum("si,ij,sj->s", x.conj(), a, x)
    return float(np.max(np.abs(vals)))


def frobenius_ceiling(A: Any) -> float:
    """``||A||``, the trivial upper bound for ``eta(A)``."""
    return frobenius_norm(A)
