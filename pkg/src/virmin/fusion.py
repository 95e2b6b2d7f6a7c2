"""Fusion rules of the minimal models and the resulting fusion ring.

The single-model rule: N_{(m',n')(m'',n'')}^{(m,n)} = 1 iff the triple
satisfies the eight strict inequalities

    m < m' + m'',   m' < m'' + m,   m'' < m + m',   m + m' + m'' < 2p
    (same in n with bound 2q)

and both sums m+m'+m'', n+n'+n'' are odd; otherwise 0.  Each weight has
two Kac representatives, so we declare the rule to hold for an orbit
triple when it holds for at least one choice of representatives; this
makes it well defined on isomorphism classes (and is what the slot
symmetry and associativity checks below validate).

Tensor-product models fuse factorwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import ShapeError
from .models import (
    KacLabel,
    MinimalModel,
    TensorLabel,
    TensorModel,
    canonicalize,
    check_label,
    check_tensor_label,
    kac_table,
    reflect,
)


def _triple_ok(p: int, q: int, a: KacLabel, b: KacLabel, c: KacLabel) -> bool:
    m, n = a.m, a.n
    mp_, np_ = b.m, b.n
    mpp, npp = c.m, c.n
    sm = m + mp_ + mpp
    sn = n + np_ + npp
    if sm % 2 == 0 or sn % 2 == 0:
        return False
    if not (sm < 2 * p and sn < 2 * q):
        return False
    if not (m < mp_ + mpp and mp_ < mpp + m and mpp < m + mp_):
        return False
    if not (n < np_ + npp and np_ < npp + n and npp < n + np_):
        return False
    return True


def fusion_rule(model: MinimalModel, a: KacLabel, b: KacLabel, c: KacLabel) -> int:
    """Multiplicity N_{ab}^c, either 0 or 1.

    Invariant under canonicalization and under permutations of the three
    slots (the minimal models are self-dual).
    """
    for lab in (a, b, c):
        check_label(model, lab)
    for ra in (a, reflect(model, a)):
        for rb in (b, reflect(model, b)):
            for rc in (c, reflect(model, c)):
                if _triple_ok(model.p, model.q, ra, rb, rc):
                    return 1
    return 0


def fuse(model: MinimalModel, a: KacLabel, b: KacLabel) -> set[KacLabel]:
    """All canonical labels c with N_{ab}^c = 1."""
    table = fusion_table(model)
    a = canonicalize(model, a)
    b = canonicalize(model, b)
    return {c for c in table.labels if table.multiplicity(a, b, c) == 1}


def tensor_fusion_rule(
    tmodel: TensorModel, a: TensorLabel, b: TensorLabel, c: TensorLabel
) -> int:
    """Product of the per-factor multiplicities."""
    for tlab in (a, b, c):
        check_tensor_label(tmodel, tlab)
    result = 1
    for factor, la, lb, lc in zip(tmodel.factors, a.labels, b.labels, c.labels):
        result *= fusion_rule(factor, la, lb, lc)
        if result == 0:
            break
    return result


@dataclass(frozen=True)
class FusionTable:
    """Dense multiplicity table over the canonical labels of one model."""

    model: MinimalModel
    labels: tuple[KacLabel, ...]
    table: np.ndarray  # shape (k, k, k), dtype int8; symmetric in all slots

    def index(self, label: KacLabel) -> int:
        return self.labels.index(canonicalize(self.model, label))

    def multiplicity(self, a: KacLabel, b: KacLabel, c: KacLabel) -> int:
        return int(self.table[self.index(a), self.index(b), self.index(c)])


@lru_cache(maxsize=None)
def fusion_table(model: MinimalModel) -> FusionTable:
    """Compute (once per model) the full multiplicity table."""
    labels = tuple(lab for lab, _ in kac_table(model))
    k = len(labels)
    table = np.zeros((k, k, k), dtype=np.int8)
    for i, a in enumerate(labels):
        for j in range(i, k):
            b = labels[j]
            for l, c in enumerate(labels):
                if fusion_rule(model, a, b, c):
                    table[i, j, l] = 1
                    table[j, i, l] = 1
    return FusionTable(model, labels, table)


@dataclass(frozen=True)
class RingReport:
    """Outcome of the fusion-ring consistency checks."""

    model: MinimalModel
    passed: bool
    failures: tuple[str, ...]


def verify_ring_axioms(model: MinimalModel) -> RingReport:
    """Check commutativity, unit law, slot symmetry and associativity.

    Failures are collected and reported, not raised.
    """
    ft = fusion_table(model)
    k = len(ft.labels)
    t = ft.table.astype(np.int64)
    failures: list[str] = []

    vac = ft.labels.index(canonicalize(model, KacLabel(1, 1)))
    eye = np.eye(k, dtype=np.int64)
    if not np.array_equal(t[vac], eye):
        failures.append("vacuum row is not the identity pattern")

    if not np.array_equal(t, t.transpose(1, 0, 2)):
        failures.append("commutativity N_ab^c = N_ba^c fails")
    for perm in [(0, 2, 1), (2, 1, 0)]:
        if not np.array_equal(t, t.transpose(*perm)):
            failures.append(f"slot permutation {perm} changes the multiplicity")
            break

    # Associativity: sum_e N_ab^e N_ec^d = sum_f N_bc^f N_af^d for all a,b,c,d.
    # With matrices (M_a)_c^d = N_ac^d this is M_a M_b = sum_e N_ab^e M_e.
    mats = [t[i] for i in range(k)]
    for i, j in product(range(k), repeat=2):
        lhs = mats[i] @ mats[j]
        rhs = sum(int(t[i, j, e]) * mats[e] for e in range(k))
        if not np.array_equal(lhs, rhs):
            failures.append(
                f"associativity fails for a={ft.labels[i]}, b={ft.labels[j]}"
            )
            break

    return RingReport(model=model, passed=not failures, failures=tuple(failures))
