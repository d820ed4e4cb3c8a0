"""Joint outcome probabilities of the two-party, two-setting EPR experiment.

Layout of the 16 probabilities (1-based labels in messages, 0-based arrays)::

                    Bob S1'            Bob S2'
                  +1      -1         +1      -1
    Alice S1 +1   eps1    eps2       eps5    eps6
             -1   eps3    eps4       eps7    eps8
    Alice S2 +1   eps9    eps10      eps13   eps14
             -1   eps11   eps12      eps15   eps16

Block k (0..3) covers the direction pair (S1,S1'), (S1,S2'), (S2,S1'),
(S2,S2') and holds outcomes (+,+), (+,-), (-,+), (-,-) in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

EXTERNAL_TOL = 1e-9
INTERNAL_TOL = 1e-12

BLOCK_LABELS = ("S1,S1'", "S1,S2'", "S2,S1'", "S2,S2'")

# 0-based positions of the independent set mu = (e1, e4, e5, e8, e9, e12, e14, e15)
MU_INDEX = np.array([0, 3, 4, 7, 8, 11, 13, 14])
# 0-based positions of the dependent set (e2, e3, e6, e7, e10, e11, e13, e16)
DEPENDENT_INDEX = np.array([1, 2, 5, 6, 9, 10, 12, 15])

# dependent = (1 + _DEPENDENT_SIGNS @ mu) / 2; rows follow DEPENDENT_INDEX,
# columns follow MU_INDEX.
_DEPENDENT_SIGNS = np.array(
    [
        [-1, -1, +1, -1, -1, +1, +1, -1],  # e2
        [-1, -1, -1, +1, +1, -1, -1, +1],  # e3
        [+1, -1, -1, -1, -1, +1, +1, -1],  # e6
        [-1, +1, -1, -1, +1, -1, -1, +1],  # e7
        [-1, +1, +1, -1, -1, -1, +1, -1],  # e10
        [+1, -1, -1, +1, -1, -1, -1, +1],  # e11
        [-1, +1, +1, -1, +1, -1, -1, -1],  # e13
        [+1, -1, -1, +1, -1, +1, -1, -1],  # e16
    ],
    dtype=float,
)

# Marginal equalities lhs == rhs, as 1-based index pairs.
LOCALITY_CONSTRAINTS = (
    ((1, 2), (5, 6)),
    ((1, 3), (9, 11)),
    ((9, 10), (13, 14)),
    ((5, 7), (13, 15)),
    ((3, 4), (7, 8)),
    ((11, 12), (15, 16)),
    ((2, 4), (10, 12)),
    ((6, 8), (14, 16)),
)

# correlation <xy> within a block
_PARITY = np.array([1.0, -1.0, -1.0, 1.0])
# signs of the four correlations in the CHSH sum
CHSH_SIGNS = np.array([1.0, 1.0, 1.0, -1.0])


def _readonly(values, size: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.shape != (size,):
        raise ValueError(f"{name} must have {size} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} entries must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class EprDistribution:
    """The 16 joint probabilities eps1..eps16.

    Construction only checks shape and finiteness. Entries outside [0, 1]
    and broken constraints are representable; use :func:`validate`.
    """

    eps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eps", _readonly(self.eps, 16, "eps"))

    @property
    def blocks(self) -> np.ndarray:
        """4x4 view: row = direction pair, column = outcome pair."""
        return self.eps.reshape(4, 4)

    @property
    def mu(self) -> np.ndarray:
        return self.eps[MU_INDEX].copy()

    def __eq__(self, other):
        if not isinstance(other, EprDistribution):
            return NotImplemented
        return bool(np.array_equal(self.eps, other.eps))

    def __hash__(self):
        return hash(self.eps.tobytes())

    def __repr__(self):
        return f"EprDistribution(eps={self.eps.tolist()!r})"


@dataclass(frozen=True, eq=False)
class IndependentProbs:
    """The independent set mu = (eps1, eps4, eps5, eps8, eps9, eps12, eps14, eps15)."""

    mu: np.ndarray

    def __post_init__(self):
        mu = _readonly(self.mu, 8, "mu")
        bad = np.flatnonzero((mu < 0.0) | (mu > 1.0))
        if bad.size:
            labels = ", ".join(f"eps{MU_INDEX[i] + 1}={mu[i]!r}" for i in bad)
            raise ValueError(f"mu entries must lie in [0, 1]: {labels}")
        object.__setattr__(self, "mu", mu)


@dataclass(frozen=True)
class CorrelationSet:
    e11: float
    e12: float
    e21: float
    e22: float
    delta: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.e11, self.e12, self.e21, self.e22)


@dataclass(frozen=True)
class ConstraintReport:
    violations: list[tuple[str, float]] = field(default_factory=list)
    is_local_polytope_member: Optional[bool] = None

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "violations": [{"constraint": c, "residual": r} for c, r in self.violations],
            "is_local_polytope_member": self.is_local_polytope_member,
        }


def complete_mu_array(mu: np.ndarray) -> np.ndarray:
    """Vectorised completion without range checks.

    ``mu`` has shape (..., 8); returns shape (..., 16). Used for identity
    checks where mu is arbitrary.
    """
    mu = np.asarray(mu, dtype=float)
    out = np.empty(mu.shape[:-1] + (16,))
    out[..., MU_INDEX] = mu
    out[..., DEPENDENT_INDEX] = 0.5 * (1.0 + mu @ _DEPENDENT_SIGNS.T)
    return out


def complete_from_independent(mu: Union[IndependentProbs, Sequence[float]]) -> EprDistribution:
    """Fill in the eight dependent probabilities from mu.

    The result satisfies normalization and locality identically. Dependent
    entries may still fall outside [0, 1]; the caller validates.
    """
    if not isinstance(mu, IndependentProbs):
        mu = IndependentProbs(mu)
    return EprDistribution(complete_mu_array(mu.mu))


def constraint_residuals(eps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Signed normalization (4,) and locality (8,) residuals; eps has shape (..., 16)."""
    eps = np.asarray(eps, dtype=float)
    norm = eps.reshape(eps.shape[:-1] + (4, 4)).sum(axis=-1) - 1.0
    loc = np.stack(
        [
            eps[..., l[0] - 1] + eps[..., l[1] - 1] - eps[..., r[0] - 1] - eps[..., r[1] - 1]
            for l, r in LOCALITY_CONSTRAINTS
        ],
        axis=-1,
    )
    return norm, loc


def validate(dist: EprDistribution, tol: float = EXTERNAL_TOL, check_local: bool = False) -> ConstraintReport:
    """Report every range, normalization and locality residual above ``tol``.

    With ``check_local`` the report also says whether the distribution is a
    convex mixture of deterministic local assignments (LP feasibility).
    """
    eps = dist.eps
    violations: list[tuple[str, float]] = []
    for i, e in enumerate(eps):
        if e < -tol:
            violations.append((f"range[eps{i + 1}>=0]", float(-e)))
        elif e > 1.0 + tol:
            violations.append((f"range[eps{i + 1}<=1]", float(e - 1.0)))
    norm, loc = constraint_residuals(eps)
    for k, r in enumerate(norm):
        if abs(r) > tol:
            lo = 4 * k + 1
            violations.append((f"normalization[eps{lo}+..+eps{lo + 3}=1]", float(abs(r))))
    for (l, r), res in zip(LOCALITY_CONSTRAINTS, loc):
        if abs(res) > tol:
            name = f"locality[eps{l[0]}+eps{l[1]}=eps{r[0]}+eps{r[1]}]"
            violations.append((name, float(abs(res))))
    member = None
    if check_local:
        # local models are a subset of the constrained set; skip the LP otherwise
        member = False if violations else local_polytope_member(dist, tol=max(tol, 1e-9))
    return ConstraintReport(violations=violations, is_local_polytope_member=member)


def local_polytope_member(dist: EprDistribution, tol: float = 1e-9) -> bool:
    """True when eps is reproduced by some mixture of the 16 deterministic strategies."""
    from scipy.optimize import linprog

    from .quantum import deterministic_vertices

    vertices = deterministic_vertices()  # (16 strategies, 16 eps)
    n_w = vertices.shape[0]
    # minimise L1 slack of  V^T w - eps  subject to w >= 0, sum w = 1
    a_eq = np.hstack([vertices.T, np.eye(16), -np.eye(16)])
    a_eq = np.vstack([a_eq, np.concatenate([np.ones(n_w), np.zeros(32)])])
    b_eq = np.concatenate([dist.eps, [1.0]])
    cost = np.concatenate([np.zeros(n_w), np.ones(32)])
    res = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        return False
    return bool(res.fun <= 16 * tol)


def correlations(dist: EprDistribution) -> CorrelationSet:
    """Correlations <S_i S_j'> per block and the CHSH sum e11 + e12 + e21 - e22."""
    corr = dist.blocks @ _PARITY
    delta = float(corr @ CHSH_SIGNS)
    return CorrelationSet(*(float(c) for c in corr), delta=delta)


def chsh_delta_mu(dist: EprDistribution) -> float:
    """CHSH sum from the independent set alone: 2 (sum(mu) - 2).

    Only equal to ``correlations(dist).delta`` when normalization and
    locality hold.
    """
    return float(2.0 * (dist.eps[MU_INDEX].sum() - 2.0))


def bell_discriminant(dist: EprDistribution) -> float:
    """2 - |Delta|; negative means the CHSH inequality is violated."""
    return 2.0 - abs(chsh_delta_mu(dist))


def uniform_distribution() -> EprDistribution:
    return EprDistribution(np.full(16, 0.25))


def sample_valid_mu(rng: np.random.Generator, n: int, tol: float = 0.0, batch: int = 65536) -> np.ndarray:
    """Rejection-sample ``n`` mu vectors whose completion lies in [-tol, 1+tol]^16.

    Draws uniform [0,1]^8 in fixed-size batches so the accepted sequence
    depends only on the generator state.
    """
    kept: list[np.ndarray] = []
    total = 0
    while total < n:
        mu = rng.random((batch, 8))
        dep = 0.5 * (1.0 + mu @ _DEPENDENT_SIGNS.T)
        ok = np.all((dep >= -tol) & (dep <= 1.0 + tol), axis=1)
        kept.append(mu[ok])
        total += int(ok.sum())
    return np.concatenate(kept)[:n]
