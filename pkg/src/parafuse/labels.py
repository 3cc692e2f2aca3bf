"""Module labels of the rank-one parafermion algebra at level k.

The irreducible modules are labelled by pairs (m, n) with 0 <= m <= k and
n taken mod k.  The pairs (m, n) and (k-m, (k-m+n) mod k) name isomorphic
modules, so each isomorphism class has exactly one *canonical* label with
1 <= m <= k and 0 <= n <= m-1, giving k(k+1)/2 classes in total.  The
vacuum is (k, 0).

Everything here is exact integer / rational arithmetic: conformal weights
double as golden test values and as exponent offsets for the q-series
characters, so they are never floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidLabelError, InvalidLevelError, NonCanonicalLabelError

#: A level is a plain integer k >= 2, validated by :func:`validate_level`.
Level = int


class PFLabel(NamedTuple):
    """A parafermion module label (m, n); n is a residue mod k."""

    m: int
    n: int


class CanonicalPFLabel(NamedTuple):
    """The chosen representative of an isomorphism class: 1 <= m <= k,
    0 <= n <= m-1."""

    m: int
    n: int


def validate_level(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise InvalidLevelError(f"level must be an integer >= 2, got {k!r}")
    return k


def pf_label(k: Level, m: int, n: int) -> PFLabel:
    """Validated constructor: rejects m outside [0, k], reduces n mod k."""
    validate_level(k)
    if not 0 <= m <= k:
        raise InvalidLabelError(f"label ({m},{n}) invalid at level {k}: need 0 <= m <= {k}")
    return PFLabel(m, n % k)


def is_canonical(k: Level, label) -> bool:
    """True when (m, n) already satisfies 1 <= m <= k, 0 <= n <= m-1."""
    m, n = pf_label(k, *label)
    return m >= 1 and n <= m - 1


def involution(k: Level, label) -> PFLabel:
    """The identification (m, n) -> (k-m, (k-m+n) mod k).

    Applying it twice returns the input; it has no fixed points.
    """
    m, n = pf_label(k, *label)
    return PFLabel(k - m, (k - m + n) % k)


def canonicalize(k: Level, label) -> CanonicalPFLabel:
    """Canonical representative of the isomorphism class of ``label``.

    Exactly one of {label, involution(label)} is canonical.
    """
    lab = pf_label(k, *label)
    if not is_canonical(k, lab):
        lab = involution(k, lab)
    return CanonicalPFLabel(*lab)


def enumerate_labels(k: Level) -> list[CanonicalPFLabel]:
    """All k(k+1)/2 canonical labels in lexicographic (m, n) order.

    This ordering indexes every matrix and table in the package, so
    serialized artifacts are reproducible byte for byte.
    """
    validate_level(k)
    return [CanonicalPFLabel(m, n) for m in range(1, k + 1) for n in range(m)]


def vacuum(k: Level) -> CanonicalPFLabel:
    """The vacuum label (k, 0), the unique label of conformal weight 0."""
    validate_level(k)
    return CanonicalPFLabel(k, 0)


def require_canonical(k: Level, label) -> CanonicalPFLabel:
    """Return ``label`` as a CanonicalPFLabel or raise."""
    lab = pf_label(k, *label)
    if not is_canonical(k, lab):
        raise NonCanonicalLabelError(
            f"label {tuple(label)} is not canonical at level {k}; "
            f"call canonicalize() first (canonical form: {tuple(canonicalize(k, lab))})"
        )
    return CanonicalPFLabel(*lab)


def conformal_weight(k: Level, label) -> Fraction:
    """Exact conformal weight of a canonical label.

    lambda(m, n) = [k(m-2n) - (m-2n)^2 + 2kn(m-n+1)] / [2k(k+2)]

    Zero exactly at the vacuum (k, 0) and positive elsewhere.  The formula
    is stated for canonical labels only, so non-canonical input raises
    instead of being silently canonicalized.
    """
    m, n = require_canonical(k, label)
    t = m - 2 * n
    return Fraction(k * t - t * t + 2 * k * n * (m - n + 1), 2 * k * (k + 2))
