"""
Metric-signature bookkeeping for flat N-dimensional manifolds.

Signature is fixed to (+, -, ..., -): the zero-mass reduction needs
(dt)^2 = dx_a dx^a, so time is the positive axis. Only diagonal,
constant-coefficient metrics are represented.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Metric:
    """Diagonal metric g_{mu nu} with an optional conjugate-invariant label (m, m', ...)."""

    dim: int
    diag: tuple[int, ...]
    invariant_label: str | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"metric dimension must be positive, got {self.dim}")
        if len(self.diag) != self.dim:
            raise DimensionError(f"diag has {len(self.diag)} entries for dim {self.dim}")
        if any(s not in (1, -1) for s in self.diag):
            raise DimensionError(f"diag entries must be +1 or -1, got {self.diag}")
        object.__setattr__(self, "diag", tuple(int(s) for s in self.diag))

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.array(self.diag, dtype=float))

    @property
    def determinant(self) -> int:
        det = 1
        for s in self.diag:
            det *= s
        return det

    def raise_index(self, mu: int) -> int:
        # g^{mu mu} == g_{mu mu} for a +-1 diagonal
        return self.diag[mu]


@dataclass(frozen=True)
class IndexPermutation:
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))


def minkowski_metric(n: int) -> Metric:
    """diag(+1, -1, ..., -1) in n dimensions."""
    if n < 2:
        raise DimensionError(f"Minkowski metric needs N >= 2, got {n}")
    return Metric(dim=n, diag=(1,) + (-1,) * (n - 1))


def extend_metric(g: Metric, new_invariant: str) -> Metric:
    """Adjoin the arc-length as coordinate x^N: g'_NN = -1, g'_{N mu} = 0."""
    return Metric(dim=g.dim + 1, diag=g.diag + (-1,), invariant_label=new_invariant)


def dimensional_ladder(n0: int, labels: Sequence[str]) -> list[Metric]:
    """Minkowski metric of dimension n0 followed by one extension per label."""
    chain = [minkowski_metric(n0)]
    for label in labels:
        chain.append(extend_metric(chain[-1], label))
    return chain


def light_cone_reduction(g: Metric) -> Metric:
    """
    Zero-mass reduction: on the light cone (dt)^2 = dx_a dx^a, so the
    N-dimensional Minkowski manifold carries the Euclidean structure of the
    N-1 spatial axes, with time as arc-length and omega as its conjugate.
    """
    if g.diag[0] != 1 or any(s != -1 for s in g.diag[1:]):
        raise DimensionError(f"light-cone reduction needs a Minkowski metric, got {g.diag}")
    return Metric(dim=g.dim - 1, diag=(1,) * (g.dim - 1), invariant_label="omega")


def interval(g: Metric, dx: Iterable) -> float:
    """Quadratic form sum_mu g_{mu mu} dx^mu dx^mu (keeps Fraction inputs exact)."""
    components = list(dx)
    if len(components) != g.dim:
        raise DimensionError(f"vector of length {len(components)} for metric of dim {g.dim}")
    return sum(s * c * c for s, c in zip(g.diag, components))


def levi_civita_sign(p: IndexPermutation | Sequence[int]) -> int:
    """Parity of the index sequence; 0 when an index repeats."""
    indices = p.indices if isinstance(p, IndexPermutation) else tuple(p)
    n = len(indices)
    for i in indices:
        if not 0 <= i < n:
            raise IndexError(f"index {i} out of range for {n} dimensions")
    if len(set(indices)) != n:
        return 0
    inversions = 0
    for a in range(n):
        for b in range(a + 1, n):
            if indices[a] > indices[b]:
                inversions += 1
    return -1 if inversions % 2 else 1


def dual_rank(n: int) -> int:
    return n - 2


def is_self_dual_dimension(n: int) -> bool:
    """Rank-2 field and its dual have the same rank only when N = 4."""
    return dual_rank(n) == 2
