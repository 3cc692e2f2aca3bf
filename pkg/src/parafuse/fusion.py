"""Closed-form fusion products and the fusion ring.

Three layers of fusion rules enter:

* affine sl2 at level k:  i x j -> {c : |i-j| <= c <= i+j, i+j+c even,
  i+j+c <= 2k};
* the rank-one lattice with squared norm 2k:  residues add mod 2k;
* the parafermion algebra:  for canonical inputs (i, i') and (j, j'),
  one output per admissible affine c, namely the canonical form of
  (c, (2i'-i+2j'-j+c)/2 mod k).

Outputs of a single product are pairwise inequivalent, so every structure
constant is 0 or 1.  The table stores unordered pairs only and mirrors on
read; serialization expands to ordered pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DualityError, InvalidLabelError
from .labels import (
    CanonicalPFLabel,
    Level,
    canonicalize,
    enumerate_labels,
    vacuum,
    validate_level,
)


def affine_fuse(k: Level, i: int, j: int) -> list[int]:
    """Admissible affine outputs of i x j at level k, ascending.

    Closed form: from |i-j| (automatically parity-aligned with i+j) step 2
    up to min(i+j, 2k-i-j).
    """
    validate_level(k)
    if not (0 <= i <= k and 0 <= j <= k):
        raise InvalidLabelError(f"affine labels must lie in [0, {k}], got {i}, {j}")
    return list(range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2))


def lattice_fuse(k: Level, r: int, s: int) -> int:
    """Fusion of lattice cosets: residues add mod 2k."""
    validate_level(k)
    return (r + s) % (2 * k)


def pf_fuse(k: Level, a, b) -> list[CanonicalPFLabel]:
    """Fusion product of two parafermion modules, as sorted canonical labels.

    Inputs are canonicalized before the closed form is applied; that the
    result is independent of the chosen representatives is verified by the
    property suite, not assumed here.
    """
    i, ip = canonicalize(k, a)
    j, jp = canonicalize(k, b)
    out = []
    for c in affine_fuse(k, i, j):
        t = 2 * ip - i + 2 * jp - j + c
        # admissible c has the parity of i+j, so t is always even
        assert t % 2 == 0, f"parity violation in fusion index: {t}"
        out.append(canonicalize(k, (c, (t // 2) % k)))
    result = sorted(set(out))
    assert len(result) == len(out), f"fusion outputs collided for {a} x {b} at level {k}"
    return result


@dataclass(frozen=True)
class FusionTable:
    """Structure constants N_{ab}^c over the canonical labels.

    ``constants`` maps an unordered pair key (a, b) with a <= b to the set
    of output labels (multiplicity 1 each).  Use :meth:`product` /
    :meth:`coefficient` for order-free access.
    """

    level: int
    order: tuple[CanonicalPFLabel, ...]
    constants: dict[tuple[CanonicalPFLabel, CanonicalPFLabel], frozenset[CanonicalPFLabel]]
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.order)})

    def product(self, a, b) -> list[CanonicalPFLabel]:
        a, b = CanonicalPFLabel(*a), CanonicalPFLabel(*b)
        return sorted(self.constants[(a, b) if a <= b else (b, a)])

    def coefficient(self, a, b, c) -> int:
        return 1 if CanonicalPFLabel(*c) in set(self.product(a, b)) else 0

    def dense(self) -> np.ndarray:
        """Dense (n, n, n) array of structure constants, float for BLAS use."""
        n = len(self.order)
        N = np.zeros((n, n, n))
        for (a, b), outs in self.constants.items():
            ia, ib = self._index[a], self._index[b]
            for c in outs:
                N[ia, ib, self._index[c]] = 1.0
                N[ib, ia, self._index[c]] = 1.0
        return N

    def ordered_entries(self):
        """Yield (a, b, c, multiplicity) over all ordered pairs, in index order."""
        for a in self.order:
            for b in self.order:
                for c in self.product(a, b):
                    yield a, b, c, 1


def fusion_table(k: Level) -> FusionTable:
    """The full closed-form fusion table at level k."""
    labels = enumerate_labels(k)
    constants = {}
    for i, a in enumerate(labels):
        for b in labels[i:]:
            constants[(a, b)] = frozenset(pf_fuse(k, a, b))
    return FusionTable(level=k, order=tuple(labels), constants=constants)


def contragredient(k: Level, table: FusionTable, a) -> CanonicalPFLabel:
    """The dual of ``a``: the unique partner whose product with ``a``
    contains the vacuum.  Raises DualityError otherwise (a fusion-table
    bug, since the ring must have exact duality)."""
    vac = vacuum(k)
    partners = [b for b in table.order if vac in table.constants[tuple(sorted((CanonicalPFLabel(*a), b)))]]
    if len(partners) != 1:
        raise DualityError(f"label {tuple(a)} has {len(partners)} vacuum partners at level {k}")
    return partners[0]


@dataclass(frozen=True)
class CosetConsistencyReport:
    """Result of the affine/lattice/parafermion bookkeeping check."""

    level: int
    pairs_checked: int
    sectors_checked: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def coset_consistency(k: Level) -> CosetConsistencyReport:
    """Check that parafermion fusion matches the affine and lattice rules.

    Inputs (i, i') and (j, j') sit in lattice-charge sectors (i-2i') and
    (j-2j') mod 2k, which fuse additively.  For each admissible affine
    output l there is exactly one residue l' mod k whose sector (l-2l')
    matches the combined charge, namely l' = (l-i+2i'-j+2j')/2 mod k; the
    parafermion product must contain precisely the classes (l, l') so
    predicted, one per admissible l, and nothing else.
    """
    labels = enumerate_labels(k)
    violations = []
    pairs = sectors = 0
    for x, a in enumerate(labels):
        for b in labels[x:]:
            pairs += 1
            (i, ip), (j, jp) = a, b
            charge = lattice_fuse(k, (i - 2 * ip) % (2 * k), (j - 2 * jp) % (2 * k))
            prod = set(pf_fuse(k, a, b))
            expected = set()
            for l in affine_fuse(k, i, j):
                matches = [lp for lp in range(k) if (l - 2 * lp - charge) % (2 * k) == 0]
                sectors += k
                if len(matches) != 1:
                    violations.append(
                        f"{tuple(a)} x {tuple(b)}: affine output {l} has "
                        f"{len(matches)} charge-compatible residues, expected 1"
                    )
                    continue
                lab = canonicalize(k, (l, matches[0]))
                if lab not in prod:
                    violations.append(
                        f"{tuple(a)} x {tuple(b)}: predicted output {tuple(lab)} "
                        f"(affine {l}, residue {matches[0]}) missing from product"
                    )
                expected.add(lab)
            extra = prod - expected
            if extra:
                violations.append(
                    f"{tuple(a)} x {tuple(b)}: product contains unpredicted labels "
                    f"{sorted(tuple(e) for e in extra)}"
                )
    return CosetConsistencyReport(level=k, pairs_checked=pairs,
                                  sectors_checked=sectors, violations=violations)
