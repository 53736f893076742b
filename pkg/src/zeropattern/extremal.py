"""Extremal constructions and the equality certificate for Hermitian matrices.

``turan_partite_filled`` is the saturated balanced complete r-partite
pattern, ``clique_plus_isolated`` is ``K_r`` padded with isolated vertices,
and ``proposition_matrix`` / ``check_equality_conditions`` build and
recognise the Hermitian matrices with ``eta^2 = (1 - 1/r) ||A||^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Sequence

import numpy as np

from .core import ComplexMatrix, as_matrix, frobenius_norm_sq, has_zero_diagonal, is_hermitian
from .numradius import HERMITIAN_TOL, numerical_radius
from .pattern import omega

CERT_TOL = 1e-8
CONFIG_TOL = 1e-9


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class PartiteSpec:
    n: int
    r: int
    nu: int
    class_sizes: tuple[int, ...]

    @classmethod
    def balanced(cls, n: int, r: int) -> "PartiteSpec":
        if not 2 <= r <= n:
            raise ValueError(f"need 2 <= r <= n, got n = {n}, r = {r}")
        q, nu = divmod(n, r)
        sizes = tuple([q + 1] * nu + [q] * (r - nu))
        return cls(n, r, nu, sizes)

    def labels(self) -> list[int]:
        """Class index (0-based) of each vertex; contiguous blocks, larger classes first."""
        out = []
        for k, size in enumerate(self.class_sizes):
            out.extend([k] * size)
        return out


def turan_partite_filled(n: int, r: int) -> ComplexMatrix:
    """Balanced complete r-partite adjacency with ones above the diagonal inside each class."""
    labels = np.array(PartiteSpec.balanced(n, r).labels())
    cross = labels[:, None] != labels[None, :]
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    return ComplexMatrix((cross | upper).astype(float))


def turan_norm_sq_formula(n: int, r: int) -> Fraction:
    """``C(n,2) + C(r,2)(n^2 - nu^2)/r^2 + C(nu,2)`` in exact arithmetic."""
    nu = n % r
    return comb(n, 2) + Fraction(comb(r, 2) * (n * n - nu * nu), r * r) + comb(nu, 2)


def uniform_simplex_value(n: int, r: int) -> Fraction:
    """Exact ``<Ax, x>`` of ``turan_partite_filled(n, r)`` at the barycentre."""
    nu = n % r
    return (
        1
        - Fraction(1, 2 * r)
        - Fraction(1, 2 * n)
        + (Fraction(nu * nu, 2 * r) - Fraction(nu, 2)) / (n * n)
    )


def clique_plus_isolated(n: int, r: int) -> ComplexMatrix:
    """Adjacency of ``K_r`` on the first ``r`` vertices plus ``n - r`` isolated ones."""
    if not 2 <= r <= n:
        raise ValueError(f"need 2 <= r <= n, got n = {n}, r = {r}")
    a = np.zeros((n, n))
    a[:r, :r] = 1.0
    np.fill_diagonal(a, 0.0)
    return ComplexMatrix(a)


def _validate_configuration(labels: Sequence[int], x: np.ndarray, tol: float) -> int:
    labels = list(labels)
    if len(labels) != x.shape[0]:
        raise ConfigurationError("partition and vector lengths differ")
    if any(not isinstance(k, (int, np.integer)) or k < 0 for k in labels):
        raise ConfigurationError("partition labels must be integers >= 0")
    r = max(labels, default=0)
    if r < 2:
        raise ConfigurationError("not an equality configuration: need at least two classes")
    if abs(float(np.vdot(x, x).real) - 1.0) > tol:
        raise ConfigurationError("not an equality configuration: x is not a unit vector")
    lab = np.array(labels)
    if np.any(np.abs(x[lab == 0]) > tol):
        raise ConfigurationError("not an equality configuration: x is nonzero on N_0")
    w = np.abs(x) ** 2
    for k in range(1, r + 1):
        if abs(w[lab == k].sum() - 1.0 / r) > tol:
            raise ConfigurationError(f"not an equality configuration: class {k} mass != 1/{r}")
    return r


def proposition_matrix(labels: Sequence[int], x: Any, c: complex) -> ComplexMatrix:
    """Hermitian ``A`` with ``a_ij = c x_i conj(x_j)`` (``i < j``) across distinct classes.

    ``labels[i]`` is 0 for the null block ``N_0`` and ``1..r`` otherwise.
    Entries inside a class, and those touching ``N_0``, are zero, so the
    pattern is complete r-partite on the support of ``x``.
    """
    c = complex(c)
    if c == 0:
        raise ConfigurationError("c must be nonzero")
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    _validate_configuration(labels, x, CONFIG_TOL)
    lab = np.array(labels)
    n = x.shape[0]
    full = c * np.outer(x, x.conj())
    mask = (lab[:, None] != lab[None, :]) & (lab[:, None] > 0) & (lab[None, :] > 0)
    upper = np.triu(np.where(mask, full, 0.0), k=1)
    a = upper + upper.conj().T
    return ComplexMatrix(a.reshape(n, n))


@dataclass(frozen=True)
class EqualityCertificate:
    c: complex
    partition: tuple[int, ...]
    x: np.ndarray
    r: int
    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    equality_holds: bool
    eta_sq: float
    rhs: float

    @property
    def overall(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii


def _components(n: int, members: list[int], linked) -> list[list[int]]:
    parent = {v: v for v in members}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a_idx, i in enumerate(members):
        for j in members[a_idx + 1 :]:
            if linked(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for v in members:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda g: g[0])


def check_equality_conditions(A: Any, x: Any, tol: float = CERT_TOL) -> EqualityCertificate:
    """Infer ``(c, N_0..N_r)`` from ``A`` and ``x`` and test the three conditions.

    ``c`` comes from the first nonzero ``a_ij / (x_i conj(x_j))`` with ``i < j``
    on the support of ``x``.  Support vertices ``i, j`` share a class when
    ``a_ij`` is zero where ``c x_i conj(x_j)`` is not; classes are the
    connected components of that relation.  Inference failures show up as
    false conditions, never as exceptions.
    """
    A = as_matrix(A)
    if not is_hermitian(A, HERMITIAN_TOL):
        raise ValueError("not Hermitian")
    if not has_zero_diagonal(A, HERMITIAN_TOL):
        raise ValueError("nonzero diagonal")
    a = A.array
    n = A.n
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.shape[0] != n:
        raise ValueError("dimension mismatch")

    r = omega(A, tol)
    eta = numerical_radius(A).value
    norm_sq = float(frobenius_norm_sq(A))
    eta_sq = eta * eta
    rhs = (1.0 - 1.0 / r) * norm_sq
    equality = abs(eta_sq - rhs) <= tol * max(1.0, norm_sq)

    support = [i for i in range(n) if abs(x[i]) > tol]
    labels = [0] * n

    c = 0j
    for idx, i in enumerate(support):
        for j in support[idx + 1 :]:
            if abs(a[i, j]) > tol:
                c = a[i, j] / (x[i] * x[j].conjugate())
                break
        if c:
            break

    def same_class(i: int, j: int) -> bool:
        return abs(a[min(i, j), max(i, j)]) <= tol

    classes = _components(n, support, same_class) if c else [support] if support else []
    for k, group in enumerate(classes, start=1):
        for v in group:
            labels[v] = k

    # (i) holds by construction of N_0 but is re-evaluated against the inferred labels
    cond_i = all(abs(x[i]) <= tol for i in range(n) if labels[i] == 0)
    w = np.abs(x) ** 2
    cond_ii = (
        r >= 2
        and len(classes) == r
        and abs(float(w.sum()) - 1.0) <= tol
        and all(abs(float(w[group].sum()) - 1.0 / r) <= tol for group in classes)
    )
    cond_iii = c != 0
    if cond_iii:
        for i in range(n):
            for j in range(i + 1, n):
                li, lj = labels[i], labels[j]
                target = c * x[i] * x[j].conjugate() if li and lj and li != lj else 0.0
                if abs(a[i, j] - target) > tol:
                    cond_iii = False
                    break
            if not cond_iii:
                break
    return EqualityCertificate(
        c=complex(c),
        partition=tuple(labels),
        x=x,
        r=r,
        condition_i=cond_i,
        condition_ii=bool(cond_ii),
        condition_iii=bool(cond_iii),
        equality_holds=bool(equality),
        eta_sq=eta_sq,
        rhs=rhs,
    )
