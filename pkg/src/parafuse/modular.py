"""S-matrix and quantum dimensions over the canonical labels.

The raw S-entry for labels (m, n) and (m', n') is

    (k(k+2))^(-1/2) * exp(i pi (m-2n)(m'-2n')/k) * sin(pi (m+1)(m'+1)/(k+2)),

which is manifestly symmetric and depends only on the isomorphism class of
each argument.  Summing the modular transform over the redundant index set
{0<=m<=k, 0<=n<=k-1} counts every class twice, so restricting rows and
columns to canonical labels requires rescaling by kappa = 2 to restore
unitarity.  Rather than hard-coding that, :func:`s_matrix` *fits* kappa by
unit-normalizing the vacuum row and fails loudly if the fit strays from 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UnitarityError
from .labels import (
    CanonicalPFLabel,
    Level,
    enumerate_labels,
    pf_label,
    require_canonical,
    vacuum,
)

#: Max-norm tolerance on S S^dagger - I.
DEFAULT_UNITARITY_TOL = 1e-10
#: Allowed deviation of the fitted normalization from 2.
DEFAULT_KAPPA_TOL = 1e-9


def s_entry_raw(k: Level, a, b) -> complex:
    """Un-normalized S-entry; arguments need not be canonical."""
    m, n = pf_label(k, *a)
    mp, npr = pf_label(k, *b)
    phase = cmath.exp(1j * math.pi * (m - 2 * n) * (mp - 2 * npr) / k)
    return (k * (k + 2)) ** -0.5 * phase * math.sin(math.pi * (m + 1) * (mp + 1) / (k + 2))


@dataclass(frozen=True)
class SMatrix:
    """Unitarity-normalized S-matrix over ``enumerate_labels(level)``."""

    level: int
    order: tuple[CanonicalPFLabel, ...]
    entries: np.ndarray
    kappa: float
    tol: float
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        self.entries.flags.writeable = False
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.order)})

    def index(self, label) -> int:
        return self._index[require_canonical(self.level, label)]

    @property
    def vacuum_index(self) -> int:
        return self._index[vacuum(self.level)]

    def unitarity_residual(self) -> float:
        n = len(self.order)
        return float(np.abs(self.entries @ self.entries.conj().T - np.eye(n)).max())


def s_matrix(k: Level, tol: float = DEFAULT_UNITARITY_TOL,
             kappa_tol: float = DEFAULT_KAPPA_TOL) -> SMatrix:
    """Build the normalized S-matrix, asserting unitarity and kappa = 2.

    Entries are evaluated element-wise from the closed form (upper triangle
    only, then mirrored, so symmetry holds exactly).  kappa is fitted as
    the inverse Euclidean norm of the raw vacuum row.
    """
    labels = enumerate_labels(k)
    n = len(labels)
    raw = np.zeros((n, n), dtype=complex)
    for i, a in enumerate(labels):
        for j in range(i, n):
            raw[i, j] = s_entry_raw(k, a, labels[j])
            raw[j, i] = raw[i, j]
    iv = labels.index(vacuum(k))
    kappa = 1.0 / float(np.linalg.norm(raw[iv]))
    if abs(kappa - 2.0) > kappa_tol:
        raise UnitarityError(
            f"fitted vacuum-row normalization kappa={kappa!r} deviates from 2 "
            f"by more than {kappa_tol} at level {k}"
        )
    S = SMatrix(level=k, order=tuple(labels), entries=kappa * raw, kappa=kappa, tol=tol)
    resid = S.unitarity_residual()
    if resid > tol:
        raise UnitarityError(f"||S S^dagger - I||_max = {resid} exceeds {tol} at level {k}")
    if not (S.entries[iv].real > 0).all() or np.abs(S.entries[iv].imag).max() > tol:
        raise UnitarityError(f"vacuum row of S is not strictly positive real at level {k}")
    return S


@dataclass(frozen=True)
class QDim:
    """Quantum dimension of a canonical label.

    ``closed_form`` is the pair (m+1, k+2) identifying the exact value
    sin(pi (m+1)/(k+2)) / sin(pi/(k+2)).
    """

    label: CanonicalPFLabel
    value: float
    closed_form: tuple[int, int]


def qdim(k: Level, label) -> QDim:
    """Quantum dimension sin(pi(m+1)/(k+2))/sin(pi/(k+2)) of a canonical label.

    Depends on m only; always >= 1, and equals 1 exactly at the vacuum.
    Agrees with the S-matrix ratio S[a][vac]/S[vac][vac] (property-tested).
    """
    lab = require_canonical(k, label)
    value = math.sin(math.pi * (lab.m + 1) / (k + 2)) / math.sin(math.pi / (k + 2))
    return QDim(label=lab, value=value, closed_form=(lab.m + 1, k + 2))


def global_dimension(k: Level) -> float:
    """Sum of squared quantum dimensions; equals S[vac][vac]^(-2)."""
    return sum(qdim(k, lab).value ** 2 for lab in enumerate_labels(k))
