"""Dense complex matrices, quadratic forms, norms and structural predicates."""

from __future__ import annotations

import json
from typing import Any, Sequence

import numpy as np

UNIT_TOL = 1e-12
FLOAT_PATTERN_TOL = 1e-12


class DimensionError(ValueError):
    """Raised when vector and matrix orders disagree."""


class ComplexMatrix:
    """Immutable dense ``n x n`` complex matrix.

    The entries are held in a read-only ``complex128`` array so instances can
    be shared freely.  Anything accepted by :func:`numpy.asarray` that forms a
    finite square 2-d array can be passed in.
    """

    __slots__ = ("_a",)

    def __init__(self, entries: Any):
        a = np.array(entries, dtype=np.complex128, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, n: int) -> "ComplexMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._a
        return self._a.astype(dtype)

    def __getitem__(self, key):
        return self._a[key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.n, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"ComplexMatrix(n={self.n})"

    @property
    def H(self) -> "ComplexMatrix":
        """Conjugate transpose."""
        return ComplexMatrix(self._a.conj().T)

    def is_real(self) -> bool:
        return not np.any(self._a.imag)

    def is_zero_one(self) -> bool:
        """True when every entry is exactly 0 or 1."""
        a = self._a
        return self.is_real() and bool(np.all((a.real == 0) | (a.real == 1)))

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        flat = self._a.reshape(-1)
        return {"n": self.n, "entries": [[float(z.real), float(z.imag)] for z in flat]}

    @classmethod
    def from_dict(cls, data: dict) -> "ComplexMatrix":
        try:
            n = data["n"]
            entries = data["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError("matrix JSON needs keys 'n' and 'entries'") from exc
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"'n' must be a positive integer, got {n!r}")
        if not isinstance(entries, list) or len(entries) != n * n:
            raise ValueError(f"'entries' must hold n*n = {n * n} [re, im] pairs")
        values = []
        for pair in entries:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
            ):
                raise ValueError(f"bad entry {pair!r}; expected [re, im]")
            values.append(complex(pair[0], pair[1]))
        return cls(np.array(values, dtype=np.complex128).reshape(n, n))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ComplexMatrix":
        return cls.from_dict(json.loads(text))


def as_matrix(A: Any) -> ComplexMatrix:
    return A if isinstance(A, ComplexMatrix) else ComplexMatrix(A)


def _vector(x: Any, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] != n:
        raise DimensionError(f"dimension mismatch: matrix order {n}, vector shape {v.shape}")
    return v


def quadratic_form(A: Any, x: Sequence[complex] | np.ndarray) -> complex:
    """Return ``<Ax, x> = sum_ij a_ij x_j conj(x_i)``."""
    A = as_matrix(A)
    v = _vector(x, A.n)
    return complex(np.vdot(v, A.array @ v))


def frobenius_norm_sq(A: Any) -> float | int:
    """Sum of squared moduli; an exact ``int`` for 0/1 matrices."""
    A = as_matrix(A)
    if A.is_zero_one():
        return int(np.count_nonzero(A.array))
    a = A.array
    return float(np.sum(a.real**2 + a.imag**2))


def frobenius_norm(A: Any) -> float:
    return float(np.sqrt(frobenius_norm_sq(A)))


def is_hermitian(A: Any, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    a = as_matrix(A).array
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def has_zero_diagonal(A: Any, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return bool(np.max(np.abs(np.diag(as_matrix(A).array))) <= tol)


def scale(A: Any, c: complex) -> ComplexMatrix:
    return ComplexMatrix(complex(c) * as_matrix(A).array)


def unit_vector(coords: Any, tol: float = UNIT_TOL) -> np.ndarray:
    """Validate a unit vector and return it as a complex array."""
    v = np.asarray(coords, dtype=np.complex128).reshape(-1)
    if v.size == 0 or abs(float(np.vdot(v, v).real) - 1.0) > tol:
        raise ValueError("not a unit vector")
    return v


def simplex_vector(coords: Any, tol: float = UNIT_TOL) -> np.ndarray:
    """Validate a point of the standard simplex and return it as a float array."""
    v = np.asarray(coords, dtype=np.float64).reshape(-1)
    if v.size == 0 or np.any(v < 0) or abs(float(v.sum()) - 1.0) > tol:
        raise ValueError("not a point of the standard simplex")
    return v


def normalize_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate ``v`` so its first coordinate above ``tol`` in modulus is real and positive."""
    v = np.asarray(v, dtype=np.complex128)
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v.copy()
    z = v[idx[0]]
    out = v * (abs(z) / z)
    out[idx[0]] = abs(z)
    return out
