"""Decision procedures for strong and weak definiteness of parametric families.

Strong questions (does every member matrix satisfy the property?) are
decided exactly by reduced vertex enumeration and approximated cheaply by
a PSD-splitting sufficient condition and, for definiteness, a regularity
argument with the Beeck spectral-radius criterion.  Weak questions (does
some member satisfy it?) get a splitting-based necessary condition and a
heuristic witness search; a full weak decision is out of scope, so those
routes may report Unknown.

All verdicts follow one tolerance convention: a matrix counts as PSD when
its smallest eigenvalue is >= -tol and as PD when it is > +tol, so
"disproved PD" includes matrices whose smallest eigenvalue sits inside the
tolerance band.  Every Proved/Disproved verdict carries a certificate that
can be re-checked independently.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union

import numpy as np

from .intervals import IntervalMatrix
from .parametric import (
    ParametricSymMatrix,
    evaluate,
    family_tol,
    precondition_relax,
    vertices,
)
from .symlinalg import (
    PsdSplit,
    SingularMatrixError,
    SymMatrix,
    default_tol,
    min_eig,
    psd_split,
    spectral_radius_nonneg,
)

DEFAULT_VERTEX_BUDGET = 1 << 20
DEFAULT_SEED = 0x5EED
RHO_MARGIN = 1e-9

GOALS = ("strong_psd", "strong_pd", "weak_psd", "weak_pd")


class Status(Enum):
    PROVED = "proved"
    DISPROVED = "disproved"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class VertexList:
    """All reduced vertices checked; the worst one is recorded."""

    checked: int
    worst_vertex: tuple[float, ...]
    worst_min_eig: float


@dataclass(frozen=True)
class CounterexampleVertex:
    p: tuple[float, ...]
    min_eig: float


@dataclass(frozen=True)
class SplitWitness:
    """The splitting-condition bound matrix and its smallest eigenvalue."""

    matrix: SymMatrix
    min_eig: float


@dataclass(frozen=True)
class BeeckWitness:
    rho: float
    converged: bool


@dataclass(frozen=True)
class NecessaryFailure:
    """The necessary-condition bound matrix and its smallest eigenvalue."""

    matrix: SymMatrix
    min_eig: float


@dataclass(frozen=True)
class WitnessPoint:
    p: tuple[float, ...]
    min_eig: float


Certificate = Union[
    VertexList, CounterexampleVertex, SplitWitness, BeeckWitness, NecessaryFailure, WitnessPoint
]


@dataclass(frozen=True)
class Verdict:
    status: Status
    method: str
    certificate: Optional[Certificate] = None
    detail: str = ""

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def disproved(self) -> bool:
        return self.status is Status.DISPROVED

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN


@dataclass(frozen=True)
class SignVector:
    """Sign pattern z in {-1, +1}^n."""

    z: tuple[int, ...]

    def __post_init__(self):
        if any(v not in (-1, 1) for v in self.z):
            raise ValueError("sign vector entries must be -1 or +1")


def sign_vectors(n: int) -> Iterator[SignVector]:
    """All sign vectors with the first entry pinned to +1.

    z and -z generate the same vertex matrix, so this halves the 2^n
    enumeration.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    for rest in itertools.product((1, -1), repeat=n - 1):
        yield SignVector((1, *rest))


def _resolve_tol(p: ParametricSymMatrix, tol: float | None) -> float:
    return family_tol(p) if tol is None else float(tol)


# ---------------------------------------------------------------------------
# vertex characterizations


def _strong_by_vertices(p, goal: str, tol, budget) -> Verdict:
    tol = _resolve_tol(p, tol)
    enum = vertices(p, "pd" if goal == "pd" else "psd", tol=tol)
    if len(enum) > budget:
        return Verdict(
            Status.UNKNOWN,
            "vertex",
            detail=f"2^{enum.free_count} vertices exceed budget {budget}",
        )
    worst = np.inf
    worst_vertex: tuple[float, ...] = ()
    for v in enum:
        m = min_eig(evaluate(p, v.values, check=False))
        if m < worst:
            worst, worst_vertex = m, v.values
        failed = m <= tol if goal == "pd" else m < -tol
        if failed:
            return Verdict(Status.DISPROVED, "vertex", CounterexampleVertex(v.values, m))
    return Verdict(Status.PROVED, "vertex", VertexList(len(enum), worst_vertex, worst))


def strong_psd(
    p: ParametricSymMatrix, tol: float | None = None, budget: int = DEFAULT_VERTEX_BUDGET
) -> Verdict:
    """Exact decision of strong positive semidefiniteness over the reduced vertex set."""
    return _strong_by_vertices(p, "psd", tol, budget)


def strong_pd(
    p: ParametricSymMatrix, tol: float | None = None, budget: int = DEFAULT_VERTEX_BUDGET
) -> Verdict:
    """Exact decision of strong positive definiteness over the reduced vertex set."""
    return _strong_by_vertices(p, "pd", tol, budget)


# ---------------------------------------------------------------------------
# splitting-based one-shot conditions


def _split_parts(coeff: SymMatrix, tol: float | None) -> PsdSplit:
    t = default_tol(coeff) if tol is None else tol
    m = min_eig(coeff)
    if m >= -t:
        return PsdSplit(coeff, SymMatrix(np.zeros_like(coeff.array)))
    if min_eig(SymMatrix(-coeff.array)) >= -t:
        return PsdSplit(SymMatrix(np.zeros_like(coeff.array)), SymMatrix(-coeff.array))
    return psd_split(coeff)


def _split_combination(p: ParametricSymMatrix, proving: bool, tol: float | None) -> SymMatrix:
    """Bound matrix built from per-coefficient PSD splits.

    ``proving=True`` pairs the PSD part with the lower endpoint and the
    NSD part with the upper (underestimates every member); ``False``
    swaps the endpoints (overestimates every member).
    """
    acc = np.zeros((p.n, p.n))
    for coeff, iv in zip(p.coeffs, p.box.intervals):
        parts = _split_parts(coeff, tol)
        lo, hi = (iv.inf, iv.sup) if proving else (iv.sup, iv.inf)
        acc += parts.plus.array * lo - parts.minus.array * hi
    return SymMatrix(acc)


def _strong_by_split(p, goal: str, tol) -> Verdict:
    tol = _resolve_tol(p, tol)
    s = _split_combination(p, proving=True, tol=tol)
    m = min_eig(s)
    ok = m > tol if goal == "pd" else m >= -tol
    status = Status.PROVED if ok else Status.UNKNOWN
    return Verdict(status, "split", SplitWitness(s, m))


def strong_psd_split(p: ParametricSymMatrix, tol: float | None = None) -> Verdict:
    """Sufficient splitting condition for strong PSD; never disproves."""
    return _strong_by_split(p, "psd", tol)


def strong_pd_split(p: ParametricSymMatrix, tol: float | None = None) -> Verdict:
    """Sufficient splitting condition for strong PD; never disproves."""
    return _strong_by_split(p, "pd", tol)


def _weak_by_necessary(p, goal: str, tol) -> Verdict:
    tol = _resolve_tol(p, tol)
    n = _split_combination(p, proving=False, tol=tol)
    m = min_eig(n)
    fails = m <= tol if goal == "pd" else m < -tol
    status = Status.DISPROVED if fails else Status.UNKNOWN
    return Verdict(status, "necessary", NecessaryFailure(n, m))


def weak_psd_necessary(p: ParametricSymMatrix, tol: float | None = None) -> Verdict:
    """Necessary condition for weak PSD; Disproved means no member is PSD."""
    return _weak_by_necessary(p, "psd", tol)


def weak_pd_necessary(p: ParametricSymMatrix, tol: float | None = None) -> Verdict:
    """Necessary condition for weak PD; Disproved means no member is PD."""
    return _weak_by_necessary(p, "pd", tol)


# ---------------------------------------------------------------------------
# regularity route


def strong_pd_regularity(p: ParametricSymMatrix, tol: float | None = None) -> Verdict:
    """Strong PD via definiteness at the midpoint plus the Beeck regularity bound.

    Proves when A(mid) is PD and rho(Rad M) < 1 for the midpoint-
    preconditioned relaxation M; sufficient only, so the alternative is
    always Unknown.
    """
    tol = _resolve_tol(p, tol)
    mid_min = min_eig(evaluate(p, p.box.mid(), check=False))
    try:
        _, m = precondition_relax(p)
    except SingularMatrixError as exc:
        return Verdict(Status.UNKNOWN, "regularity", detail=f"singular midpoint: {exc}")
    bracket = spectral_radius_nonneg(m.rad())
    cert = BeeckWitness(bracket.upper, bracket.converged)
    if mid_min > tol and bracket.upper < 1.0 - RHO_MARGIN:
        return Verdict(Status.PROVED, "regularity", cert)
    why = "midpoint not positive definite" if mid_min <= tol else "spectral radius not below one"
    return Verdict(Status.UNKNOWN, "regularity", cert, detail=why)


# ---------------------------------------------------------------------------
# classical interval-matrix checks and the Hertz minimum eigenvalue


def _sign_vertex_matrices(a: IntervalMatrix) -> Iterator[SymMatrix]:
    mid, rad = a.symmetric_parts()
    for sv in sign_vectors(a.rows):
        z = np.array(sv.z, dtype=float)
        yield SymMatrix(mid - np.outer(z, z) * rad)


def strong_psd_interval(a: IntervalMatrix, tol: float | None = None) -> bool:
    """Strong PSD of a symmetric interval matrix via sign-vertex enumeration."""
    for m in _sign_vertex_matrices(a):
        t = default_tol(m) if tol is None else tol
        if min_eig(m) < -t:
            return False
    return True


def strong_pd_interval(a: IntervalMatrix, tol: float | None = None) -> bool:
    """Strong PD of a symmetric interval matrix via sign-vertex enumeration."""
    for m in _sign_vertex_matrices(a):
        t = default_tol(m) if tol is None else tol
        if min_eig(m) <= t:
            return False
    return True


def hertz_min_eig(a: IntervalMatrix) -> float:
    """Exact smallest eigenvalue over a symmetric interval matrix.

    Minimum of the smallest eigenvalues of the 2^(n-1) sign-vertex
    matrices Mid - diag(z) Rad diag(z); exponential in n.
    """
    return min(min_eig(m) for m in _sign_vertex_matrices(a))


# ---------------------------------------------------------------------------
# heuristic witness search for weak definiteness


def _coordinate_ascent(p: ParametricSymMatrix, start: np.ndarray, sweeps: int = 30, steps: int = 48):
    """Maximize min_eig(A(q)) over the box by per-coordinate ternary search.

    The objective is concave in q, so each line search is unimodal.
    """
    lows = p.box.inf()
    highs = p.box.sup()
    q = start.copy()
    best = min_eig(evaluate(p, q, check=False))
    for _ in range(sweeps):
        improved = best
        for k in range(p.K):
            if lows[k] == highs[k]:
                continue
            lo, hi = lows[k], highs[k]
            for _ in range(steps):
                third = (hi - lo) / 3.0
                a, b = lo + third, hi - third
                q[k] = a
                fa = min_eig(evaluate(p, q, check=False))
                q[k] = b
                fb = min_eig(evaluate(p, q, check=False))
                if fa < fb:
                    lo = a
                else:
                    hi = b
            q[k] = 0.5 * (lo + hi)
            best = min_eig(evaluate(p, q, check=False))
        if best - improved <= 1e-13 * (1.0 + abs(best)):
            break
    return q, best


def weak_pd_witness(
    p: ParametricSymMatrix,
    restarts: int = 20,
    goal: str = "pd",
    seed: int = DEFAULT_SEED,
    tol: float | None = None,
) -> Optional[np.ndarray]:
    """Multi-start search for a parameter point whose matrix passes the goal.

    Returns a constructive witness or None; absence of a witness proves
    nothing.  ``goal="psd"`` relaxes the acceptance threshold to the PSD
    tolerance.
    """
    if goal not in ("pd", "psd"):
        raise ValueError(f"goal must be 'pd' or 'psd', got {goal!r}")
    tol = _resolve_tol(p, tol)
    rng = np.random.default_rng(seed)
    lows = p.box.inf()
    highs = p.box.sup()

    def accepted(value: float) -> bool:
        return value > tol if goal == "pd" else value >= -tol

    for trial in range(max(restarts, 1)):
        start = p.box.mid() if trial == 0 else rng.uniform(lows, highs)
        q, best = _coordinate_ascent(p, start)
        if accepted(best):
            return q
    return None


# ---------------------------------------------------------------------------
# orchestration


def decide(
    p: ParametricSymMatrix,
    goal: str,
    tol: float | None = None,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    restarts: int = 20,
    seed: int = DEFAULT_SEED,
    timings: dict | None = None,
) -> Verdict:
    """Cheap-to-expensive cascade over the applicable decision procedures.

    Strong goals try the splitting condition, then (PD only) the
    regularity route, then reduced vertex enumeration within the budget.
    Weak goals try the necessary condition, then the witness search, and
    otherwise stay Unknown since the complete weak decision is not
    implemented.  The returned verdict's ``method`` names the stage that
    decided; stage wall times in milliseconds are appended to ``timings``
    when a dict is supplied.
    """
    if goal not in GOALS:
        raise ValueError(f"goal must be one of {GOALS}, got {goal!r}")

    def run(name, fn):
        t0 = time.perf_counter()
        verdict = fn()
        if timings is not None:
            timings[name] = timings.get(name, 0.0) + (time.perf_counter() - t0) * 1e3
        return verdict

    last = Verdict(Status.UNKNOWN, "none")
    if goal in ("strong_psd", "strong_pd"):
        pd = goal == "strong_pd"
        last = run("split", lambda: _strong_by_split(p, "pd" if pd else "psd", tol))
        if not last.unknown:
            return last
        if pd:
            last = run("regularity", lambda: strong_pd_regularity(p, tol))
            if not last.unknown:
                return last
        last = run("vertex", lambda: _strong_by_vertices(p, "pd" if pd else "psd", tol, vertex_budget))
        return last

    kind = "pd" if goal == "weak_pd" else "psd"
    last = run("necessary", lambda: _weak_by_necessary(p, kind, tol))
    if not last.unknown:
        return last

    def search():
        witness = weak_pd_witness(p, restarts=restarts, goal=kind, seed=seed, tol=tol)
        if witness is None:
            return Verdict(Status.UNKNOWN, "witness", detail="no witness found; weak decision incomplete")
        m = min_eig(evaluate(p, witness, check=False))
        return Verdict(Status.PROVED, "witness", WitnessPoint(tuple(float(v) for v in witness), m))

    return run("witness", search)
