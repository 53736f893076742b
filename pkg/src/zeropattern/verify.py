"""Checks of the zero-pattern bounds on single matrices and seeded ensembles."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

from .core import (
    ComplexMatrix,
    as_matrix,
    frobenius_norm_sq,
    has_zero_diagonal,
    is_hermitian,
)
from .motzkin import (
    DEFAULT_RESTARTS,
    general_simplex_max,
    lemma1_bound,
    ms_bound_symmetric,
    replicator_max,
    saturate,
)
from .numradius import numerical_radius
from .pattern import PatternGraph, omega, omega_exact

HOLDS_TOL = 1e-8
STRUCTURE_TOL = 1e-12

BOUND_IDS = ("theorem1", "theorem2", "lemma1", "turan", "ms")
ENSEMBLE_KINDS = ("hermitian_gaussian", "complex_gaussian", "zero_one_random", "pattern_planted")
CSV_COLUMNS = ("bound_id", "n", "omega", "frob_sq", "lhs", "rhs", "slack", "holds", "degenerate", "seed", "trial")

APPLICABLE = {
    "hermitian_gaussian": {"theorem1", "theorem2"},
    "complex_gaussian": {"theorem2"},
    "zero_one_random": {"theorem2", "lemma1"},
    "pattern_planted": {"theorem1", "theorem2", "lemma1", "turan", "ms"},
}


class HypothesisError(ValueError):
    """An input does not meet the hypotheses of the requested bound."""


class CounterexampleError(RuntimeError):
    """A bound that must hold was reported violated; carries the offending instance."""

    def __init__(self, report: "BoundReport", matrix: ComplexMatrix):
        self.report = report
        self.matrix = matrix
        super().__init__(
            f"{report.bound_id} violated (slack {report.slack!r}) on instance "
            f"{matrix.to_json()}"
        )


@dataclass
class BoundReport:
    bound_id: str
    lhs: float
    rhs: float
    n: int
    omega: int
    frob_sq: float
    value: float | None = None
    witness: np.ndarray | None = None
    seed: int | None = None
    trial: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= -HOLDS_TOL

    @property
    def degenerate(self) -> bool:
        return self.omega == 1

    def row(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "n": self.n,
            "omega": self.omega,
            "frob_sq": self.frob_sq,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "degenerate": self.degenerate,
            "seed": self.seed,
            "trial": self.trial,
        }

    def to_dict(self) -> dict:
        d = self.row()
        if self.value is not None:
            d["value"] = self.value
        if self.witness is not None:
            w = np.asarray(self.witness, dtype=np.complex128)
            d["witness"] = [[float(z.real), float(z.imag)] for z in w]
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        known = set(CSV_COLUMNS) | {"value", "witness"}
        witness = d.get("witness")
        if witness is not None:
            witness = np.array([complex(re, im) for re, im in witness])
        return cls(
            bound_id=d["bound_id"],
            lhs=float(d["lhs"]),
            rhs=float(d["rhs"]),
            n=int(d["n"]),
            omega=int(d["omega"]),
            frob_sq=d["frob_sq"],
            value=d.get("value"),
            witness=witness,
            seed=d.get("seed"),
            trial=d.get("trial"),
            extra={k: v for k, v in d.items() if k not in known},
        )


def _require(A: ComplexMatrix, *, hermitian: bool = False, zero_one: bool = False, symmetric: bool = False):
    if hermitian and not is_hermitian(A, STRUCTURE_TOL):
        raise HypothesisError("not Hermitian")
    if not has_zero_diagonal(A, STRUCTURE_TOL):
        raise HypothesisError("nonzero diagonal")
    if zero_one and not A.is_zero_one():
        raise HypothesisError("not a 0/1 matrix")
    if symmetric and not is_hermitian(A, 0.0):
        raise HypothesisError("not symmetric")


def check_theorem1(A: Any) -> BoundReport:
    """``eta^2 <= (1 - 1/omega) ||A||^2`` for Hermitian zero-diagonal ``A``."""
    A = as_matrix(A)
    _require(A, hermitian=True)
    w = omega(A, 0.0)
    norm_sq = frobenius_norm_sq(A)
    res = numerical_radius(A)
    return BoundReport(
        "theorem1", res.value**2, (1.0 - 1.0 / w) * norm_sq, A.n, w, norm_sq,
        value=res.value, witness=res.witness,
    )


def check_theorem2(A: Any) -> BoundReport:
    """``eta^2 <= (1 - 1/(2 omega) - 1/(2n)) ||A||^2`` for zero-diagonal ``A``."""
    A = as_matrix(A)
    _require(A)
    w = omega(A, 0.0)
    norm_sq = frobenius_norm_sq(A)
    res = numerical_radius(A)
    rhs = (1.0 - 1.0 / (2 * w) - 1.0 / (2 * A.n)) * norm_sq
    return BoundReport(
        "theorem2", res.value**2, rhs, A.n, w, norm_sq, value=res.value, witness=res.witness
    )


def check_lemma1(A: Any, solver_restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> BoundReport:
    """Simplex maximum of ``<Ax, x>`` against ``1 - 1/(2 omega) - 1/(2n)``.

    The maximum is taken for the saturated matrix, which has the same
    ``omega`` and a pointwise larger objective, so the check is never weaker
    than one on ``A`` itself.  The unsaturated optimum is kept in ``extra``.
    """
    A = as_matrix(A)
    _require(A, zero_one=True)
    w = omega(A, 0.0)
    sat = saturate(A)
    res = general_simplex_max(sat, solver_restarts, seed)
    raw = general_simplex_max(A, solver_restarts, seed) if sat != A else res
    return BoundReport(
        "lemma1", res.value, lemma1_bound(w, A.n), A.n, w, frobenius_norm_sq(A),
        value=res.value, witness=res.argmax,
        extra={"unsaturated_value": raw.value, "converged": res.converged},
    )


def check_turan_edge_bound(A: Any) -> BoundReport:
    """Edge count ``m <= (1 - 1/omega) n^2 / 2`` for a graph adjacency matrix."""
    A = as_matrix(A)
    _require(A, zero_one=True, symmetric=True)
    w = omega(A, 0.0)
    norm_sq = frobenius_norm_sq(A)
    m = norm_sq // 2
    return BoundReport("turan", float(m), (1.0 - 1.0 / w) * A.n**2 / 2.0, A.n, w, norm_sq)


def check_motzkin_straus(A: Any, solver_restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> BoundReport:
    """Replicator maximum of ``<Ax, x>`` on the simplex against ``1 - 1/omega``."""
    A = as_matrix(A)
    _require(A, zero_one=True, symmetric=True)
    w = omega(A, 0.0)
    res = replicator_max(A, solver_restarts, seed)
    return BoundReport(
        "ms", res.value, ms_bound_symmetric(w), A.n, w, frobenius_norm_sq(A),
        value=res.value, witness=res.argmax, extra={"converged": res.converged},
    )


CHECKS = {
    "theorem1": lambda A, restarts, seed: check_theorem1(A),
    "theorem2": lambda A, restarts, seed: check_theorem2(A),
    "lemma1": check_lemma1,
    "turan": lambda A, restarts, seed: check_turan_edge_bound(A),
    "ms": check_motzkin_straus,
}


def check(bound_id: str, A: Any, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> BoundReport:
    try:
        fn = CHECKS[bound_id]
    except KeyError:
        raise ValueError(f"unknown bound {bound_id!r}; choose from {BOUND_IDS}") from None
    return fn(A, restarts, seed)


# -- ensembles -----------------------------------------------------------------


@dataclass(frozen=True)
class EnsembleSpec:
    """Seeded family of random zero-diagonal matrices.

    ``density`` is the probability that an off-diagonal slot is nonzero
    (unordered pairs for the Hermitian and planted kinds, ordered entries
    otherwise).
    """

    kind: str
    n: int
    density: float = 1.0
    forced_omega: int | None = None
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise ValueError(f"unknown ensemble {self.kind!r}; choose from {ENSEMBLE_KINDS}")
        if self.n < 2:
            raise ValueError("ensemble order n must be >= 2")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if self.kind == "pattern_planted":
            if self.forced_omega is None:
                raise ValueError("pattern_planted needs forced_omega")
            if not 1 <= self.forced_omega <= self.n:
                raise ValueError(f"infeasible forced_omega {self.forced_omega} for n = {self.n}")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent PCG64 stream for one trial, fixed by ``(seed, trial)`` alone."""
    return np.random.default_rng([seed, trial])


def _complex_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)


def _planted(rng: np.random.Generator, n: int, target: int, density: float) -> np.ndarray:
    clique = sorted(rng.permutation(n)[:target].tolist())
    G = PatternGraph.from_edges(n, ((i, j) for i in clique for j in clique if i < j))
    members = set(clique)
    candidates = [(i, j) for i in range(n) for j in range(i + 1, n) if not (i in members and j in members)]
    for idx in rng.permutation(len(candidates)):
        accept = rng.random() < density
        if not accept:
            continue
        trial = G.with_edge(*candidates[int(idx)])
        if omega_exact(trial) <= target:
            G = trial
    assert omega_exact(G) == target
    return G.to_matrix()


def generate_matrix(spec: EnsembleSpec, trial: int) -> ComplexMatrix:
    rng = trial_rng(spec.seed, trial)
    n = spec.n
    if spec.kind == "hermitian_gaussian":
        m = _complex_gaussian(rng, n)
        h = (m + m.conj().T) / 2.0
        keep = np.triu(rng.random((n, n)) < spec.density, k=1)
        keep = keep | keep.T
        a = np.where(keep, h, 0.0)
    elif spec.kind == "complex_gaussian":
        m = _complex_gaussian(rng, n)
        keep = rng.random((n, n)) < spec.density
        a = np.where(keep, m, 0.0)
    elif spec.kind == "zero_one_random":
        a = (rng.random((n, n)) < spec.density).astype(float)
    else:
        a = _planted(rng, n, spec.forced_omega, spec.density)
    np.fill_diagonal(a, 0.0)
    return ComplexMatrix(a)


def generate_ensemble(spec: EnsembleSpec) -> list[ComplexMatrix]:
    return [generate_matrix(spec, t) for t in range(spec.trials)]


@dataclass
class SweepResult:
    reports: list[BoundReport]
    summary: dict

    def __iter__(self) -> Iterator[BoundReport]:
        return iter(self.reports)

    def __len__(self) -> int:
        return len(self.reports)


def summarize(reports: list[BoundReport]) -> dict:
    slacks = [r.slack for r in reports]
    return {
        "trials": len(reports),
        "violations": sum(not r.holds for r in reports),
        "degenerate": sum(r.degenerate for r in reports),
        "min_slack": min(slacks),
        "mean_slack": sum(slacks) / len(slacks),
    }


def sweep(
    spec: EnsembleSpec,
    bound_id: str,
    restarts: int = DEFAULT_RESTARTS,
    abort_on_violation: bool = True,
) -> SweepResult:
    """Run one bound over every trial of an ensemble.

    A violated bound raises :class:`CounterexampleError` with the offending
    matrix unless ``abort_on_violation`` is false.
    """
    if bound_id not in BOUND_IDS:
        raise ValueError(f"unknown bound {bound_id!r}; choose from {BOUND_IDS}")
    if bound_id not in APPLICABLE[spec.kind]:
        raise HypothesisError(f"bound {bound_id} does not apply to ensemble {spec.kind}")
    reports = []
    for t in range(spec.trials):
        A = generate_matrix(spec, t)
        rep = check(bound_id, A, restarts, spec.seed)
        rep.seed, rep.trial = spec.seed, t
        if abort_on_violation and not rep.holds:
            raise CounterexampleError(rep, A)
        reports.append(rep)
    return SweepResult(reports, summarize(reports))


# -- report formats ------------------------------------------------------------


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def reports_to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        row = rep.row()
        writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def _parse_number(s: str) -> int | float:
    try:
        return int(s)
    except ValueError:
        return float(s)


def reports_from_csv(text: str) -> list[BoundReport]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        rep = BoundReport(
            bound_id=row["bound_id"],
            lhs=float(row["lhs"]),
            rhs=float(row["rhs"]),
            n=int(row["n"]),
            omega=int(row["omega"]),
            frob_sq=_parse_number(row["frob_sq"]),
            seed=int(row["seed"]) if row["seed"] else None,
            trial=int(row["trial"]) if row["trial"] else None,
        )
        if float(row["slack"]) != rep.slack or row["holds"] != _fmt(rep.holds):
            raise ValueError(f"inconsistent derived columns in row {row}")
        out.append(rep)
    return out


def reports_to_json(reports: list[BoundReport]) -> str:
    return json.dumps([r.to_dict() for r in reports])


def reports_from_json(text: str) -> list[BoundReport]:
    return [BoundReport.from_dict(d) for d in json.loads(text)]
