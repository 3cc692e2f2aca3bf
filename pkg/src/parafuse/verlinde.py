"""Verlinde-formula oracle for the fusion rules.

Fusion coefficients are recomputed from nothing but the S-matrix,

    N_{ab}^c = sum_x S[a,x] S[b,x] conj(S[c,x]) / S[vac,x],

rounded to integers with the rounding residual tracked.  A residual above
tolerance is an error, not a warning: a wrong normalization or a label
permutation must fail loudly.  The same machinery applied to the affine
S-matrix sqrt(2/(k+2)) sin(pi(i+1)(j+1)/(k+2)) cross-checks the affine
fusion rule used by the closed form.

Sums are cancellation-prone (many unit-magnitude terms), so above level 12
the tensor is accumulated with Kahan compensation over the summation index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RoundingResidualError, UnitarityError
from .fusion import FusionTable, affine_fuse
from .labels import Level, enumerate_labels, validate_level
from .modular import SMatrix, s_matrix

#: Verlinde sums farther than this from an integer raise.
DEFAULT_ROUNDING_TOL = 1e-7
#: Kahan-compensated accumulation kicks in above this level.
COMPENSATION_LEVEL = 12


@dataclass(frozen=True)
class VerlindeResult:
    coefficient: int
    residual: float


def verlinde_coeff(S: SMatrix, a, b, c, tol: float = DEFAULT_ROUNDING_TOL) -> VerlindeResult:
    """One fusion coefficient from the S-matrix, with Kahan summation."""
    ia, ib, ic = S.index(a), S.index(b), S.index(c)
    E = S.entries
    w = E[ia] * E[ib] * E[ic].conj() / E[S.vacuum_index]
    total = 0j
    comp = 0j
    for term in w:
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    coeff = round(total.real)
    residual = abs(total - coeff)
    if residual >= tol:
        raise RoundingResidualError(
            f"Verlinde sum {total} for {tuple(a)} x {tuple(b)} -> {tuple(c)} "
            f"has rounding residual {residual} >= {tol} at level {S.level}"
        )
    return VerlindeResult(coefficient=coeff, residual=residual)


def verlinde_tensor(S: SMatrix, tol: float = DEFAULT_ROUNDING_TOL,
                    compensated: bool | None = None) -> tuple[np.ndarray, float]:
    """All coefficients as an (n, n, n) integer array, plus the max residual.

    ``compensated=None`` selects Kahan accumulation automatically for
    levels above COMPENSATION_LEVEL.
    """
    if compensated is None:
        compensated = S.level > COMPENSATION_LEVEL
    E = S.entries
    n = E.shape[0]
    W = E / E[S.vacuum_index]
    if not compensated:
        raw = np.einsum("ax,bx,cx->abc", W, E, E.conj())
    else:
        raw = np.zeros((n, n, n), dtype=complex)
        comp = np.zeros_like(raw)
        for x in range(n):
            term = W[:, x, None, None] * E[None, :, x, None] * E.conj()[None, None, :, x]
            y = term - comp
            t = raw + y
            comp = (t - raw) - y
            raw = t
    N = np.round(raw.real)
    max_residual = float(np.abs(raw - N).max())
    if max_residual >= tol:
        raise RoundingResidualError(
            f"max Verlinde rounding residual {max_residual} >= {tol} at level {S.level}"
        )
    return N.astype(int), max_residual


def verlinde_table(k: Level, tol: float = DEFAULT_ROUNDING_TOL) -> FusionTable:
    """Fusion table recomputed purely from the S-matrix."""
    S = s_matrix(k)
    N, _ = verlinde_tensor(S, tol)
    labels = list(S.order)
    constants = {}
    for i, a in enumerate(labels):
        for j in range(i, len(labels)):
            outs = frozenset(labels[c] for c in np.nonzero(N[i, j])[0])
            constants[(a, labels[j])] = outs
    return FusionTable(level=k, order=S.order, constants=constants)


def affine_s_matrix(k: Level) -> np.ndarray:
    """S-matrix of affine sl2 at level k over spins 0..k."""
    validate_level(k)
    i = np.arange(k + 1)
    return np.sqrt(2 / (k + 2)) * np.sin(np.pi * np.outer(i + 1, i + 1) / (k + 2))


@dataclass(frozen=True)
class AffineVerlindeReport:
    level: int
    triples_checked: int
    mismatches: list[str]
    max_residual: float
    unitarity_residual: float

    @property
    def ok(self) -> bool:
        return not self.mismatches


def affine_verlinde_check(k: Level, tol: float = DEFAULT_ROUNDING_TOL) -> AffineVerlindeReport:
    """Verlinde coefficients of the affine S-matrix vs the closed-form rule."""
    S = affine_s_matrix(k)
    n = k + 1
    uresid = float(np.abs(S @ S.T - np.eye(n)).max())
    if uresid > 1e-10:
        raise UnitarityError(f"affine S-matrix not unitary at level {k}: residual {uresid}")
    raw = np.einsum("ax,bx,cx->abc", S / S[0], S, S)
    N = np.round(raw)
    max_residual = float(np.abs(raw - N).max())
    if max_residual >= tol:
        raise RoundingResidualError(
            f"affine Verlinde rounding residual {max_residual} >= {tol} at level {k}"
        )
    mismatches = []
    for i in range(n):
        for j in range(n):
            allowed = set(affine_fuse(k, i, j))
            for c in range(n):
                expected = 1 if c in allowed else 0
                if int(N[i, j, c]) != expected:
                    mismatches.append(
                        f"affine {i} x {j} -> {c}: Verlinde {int(N[i, j, c])}, "
                        f"closed form {expected}"
                    )
    return AffineVerlindeReport(level=k, triples_checked=n ** 3, mismatches=mismatches,
                                max_residual=max_residual, unitarity_residual=uresid)
