"""Verma modules over the Virasoro algebra, exactly.

A level-N subspace of M(c, h) is spanned by normal-ordered lowering
monomials L(-m_1)...L(-m_k)|h> with m_1 >= ... >= m_k and sum m_i = N,
indexed here by partitions of N.  Everything is driven by the bracket

    [L(a), L(b)] = (a - b) L(a+b) + (a^3 - a)/12 delta_{a+b,0} c

together with L(n)|h> = 0 for n > 0, L(0)|h> = h|h>.  The module
provides the contravariant (Shapovalov) Gram matrices, their exact
determinants, and singular-vector extraction by exact kernel
computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import RangeError
from .linalg import RowSpace, det, nullspace
from .models import KacLabel, MinimalModel, central_charge, check_label, conformal_weight

Partition = tuple[int, ...]


@dataclass(frozen=True)
class VermaParams:
    """Central charge and lowest weight, as exact rationals."""

    c: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "h", Fraction(self.h))


@dataclass(frozen=True)
class PBWVector:
    """Element of the level-`level` subspace: partition -> coefficient."""

    level: int
    coefficients: dict[Partition, Fraction]

    def __post_init__(self):
        for parts in self.coefficients:
            if sum(parts) != self.level:
                raise RangeError(
                    f"partition {parts} does not have level {self.level}"
                )
        object.__setattr__(
            self,
            "coefficients",
            {p: Fraction(v) for p, v in self.coefficients.items() if v != 0},
        )

    def is_zero(self) -> bool:
        return not self.coefficients

    def scaled(self, factor: Fraction) -> "PBWVector":
        return PBWVector(self.level, {p: v * factor for p, v in self.coefficients.items()})

    def __str__(self):
        if self.is_zero():
            return "0"
        bits = []
        for parts in pbw_basis(self.level):
            coef = self.coefficients.get(parts)
            if coef is None:
                continue
            mono = "".join(f"L(-{m})" for m in parts) or "1"
            bits.append(f"({coef})*{mono}")
        return " + ".join(bits)


@lru_cache(maxsize=None)
def pbw_basis(level: int) -> tuple[Partition, ...]:
    """All partitions of `level` in descending lexicographic order."""
    if level < 0:
        raise RangeError("level must be nonnegative")

    def gen(n: int, max_part: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, max_part), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return tuple(gen(level, level))


@lru_cache(maxsize=None)
def _normal_order(word: tuple[int, ...]) -> tuple[tuple[Partition, int], ...]:
    """Reorder a product of lowering operators L(-word[0])...L(-word[-1]).

    Returns (partition, integer coefficient) pairs.  Uses
    L(-a)L(-b) = L(-b)L(-a) + (b-a) L(-(a+b)) for a < b.
    """
    for i in range(len(word) - 1):
        if word[i] < word[i + 1]:
            a, b = word[i], word[i + 1]
            swapped = word[:i] + (b, a) + word[i + 2:]
            merged = word[:i] + (a + b,) + word[i + 2:]
            out: dict[Partition, int] = {}
            for parts, cf in _normal_order(swapped):
                out[parts] = out.get(parts, 0) + cf
            for parts, cf in _normal_order(merged):
                out[parts] = out.get(parts, 0) + (b - a) * cf
            return tuple((p, cf) for p, cf in out.items() if cf != 0)
    return ((word, 1),)


@lru_cache(maxsize=None)
def _raise_monomial(
    c: Fraction, h: Fraction, m: int, parts: Partition
) -> tuple[tuple[Partition, Fraction], ...]:
    """Normal-ordered L(m) . (L(-parts)|h>) for m >= 1."""
    if not parts:
        return ()
    mu, rest = parts[0], parts[1:]
    out: dict[Partition, Fraction] = {}

    def accumulate(items, factor):
        for word, cf in items:
            val = factor * cf
            if val:
                out[word] = out.get(word, Fraction(0)) + val

    # [L(m), L(-mu)] = (m + mu) L(m - mu) + (m^3 - m)/12 delta_{m,mu} c
    k = m - mu
    if k > 0:
        accumulate(_raise_monomial(c, h, k, rest), Fraction(m + mu))
    elif k == 0:
        accumulate(((rest, 1),), Fraction(m + mu) * (h + sum(rest)))
        accumulate(((rest, 1),), Fraction(m**3 - m, 12) * c)
    else:
        accumulate(_normal_order((-k,) + rest), Fraction(m + mu))
    # plus L(-mu) L(m) acting on the tail
    for word, cf in _raise_monomial(c, h, m, rest):
        accumulate(_normal_order((mu,) + word), cf)
    return tuple((p, v) for p, v in out.items() if v != 0)


def apply_raising(params: VermaParams, m: int, v: PBWVector) -> PBWVector:
    """L(m) applied to v (m >= 1), landing at level v.level - m."""
    if m < 1:
        raise RangeError("apply_raising handles positive modes only")
    new_level = max(v.level - m, 0)
    out: dict[Partition, Fraction] = {}
    for parts, coef in v.coefficients.items():
        for word, cf in _raise_monomial(params.c, params.h, m, parts):
            out[word] = out.get(word, Fraction(0)) + coef * cf
    return PBWVector(new_level, out)


def apply_lowering(m: int, v: PBWVector) -> PBWVector:
    """L(-m) applied to v (m >= 1)."""
    if m < 1:
        raise RangeError("apply_lowering handles positive modes only")
    out: dict[Partition, Fraction] = {}
    for parts, coef in v.coefficients.items():
        for word, cf in _normal_order((m,) + parts):
            out[word] = out.get(word, Fraction(0)) + coef * cf
    return PBWVector(v.level + m, out)


@dataclass(frozen=True)
class GramMatrix:
    """Contravariant-form matrix at one level, in pbw_basis order."""

    params: VermaParams
    level: int
    basis: tuple[Partition, ...]
    entries: tuple[tuple[Fraction, ...], ...]


def gram_matrix(params: VermaParams, level: int, cache=None) -> GramMatrix:
    """Exact Gram matrix; entry (i, j) pairs basis monomials i and j.

    Row i is computed by applying the raising modes of partition i
    (the adjoint composition, innermost mode first) to basis vector j
    and reading off the coefficient of the empty partition.
    """
    if level < 0:
        raise RangeError("level must be nonnegative")
    if cache is not None:
        hit = cache.load(params, level)
        if hit is not None:
            return hit
    basis = pbw_basis(level)
    rows = []
    for parts_i in basis:
        row = []
        for parts_j in basis:
            # the adjoint of L(-m_1)...L(-m_k) is L(m_k)...L(m_1) read as a
            # composition, so the innermost (first applied) mode is m_1
            v = PBWVector(level, {parts_j: Fraction(1)})
            for m in parts_i:
                v = apply_raising(params, m, v)
            row.append(v.coefficients.get((), Fraction(0)))
        rows.append(tuple(row))
    gram = GramMatrix(params, level, basis, tuple(rows))
    if cache is not None:
        cache.store(gram)
    return gram


def kac_determinant(params: VermaParams, level: int, cache=None) -> Fraction:
    """Exact determinant of the level-`level` Gram matrix."""
    gram = gram_matrix(params, level, cache)
    return det([list(row) for row in gram.entries])


def _singular_space(params: VermaParams, level: int) -> list[PBWVector]:
    """Exact basis of {v at this level : L(1) v = 0 and L(2) v = 0}.

    L(1) and L(2) generate the raising subalgebra under brackets, so
    annihilation by both is annihilation by every positive mode.
    """
    basis = pbw_basis(level)
    rows: list[list[Fraction]] = []
    for m in (1, 2):
        if level - m < 0:
            continue
        target = pbw_basis(level - m)
        images = [
            apply_raising(params, m, PBWVector(level, {parts: Fraction(1)}))
            for parts in basis
        ]
        for t in target:
            rows.append([img.coefficients.get(t, Fraction(0)) for img in images])
    kernel = nullspace(rows, n_cols=len(basis))
    return [
        PBWVector(level, {parts: coef for parts, coef in zip(basis, vec)})
        for vec in kernel
    ]


def _normalize_singular(v: PBWVector) -> PBWVector:
    lead = v.coefficients.get((v.level,))
    if lead is None:
        basis = pbw_basis(v.level)
        lead = next(v.coefficients[p] for p in basis if p in v.coefficients)
    return v.scaled(1 / lead)


def singular_vectors(
    model: MinimalModel, label: KacLabel, max_level: int, cache=None
) -> list[tuple[int, PBWVector]]:
    """Primitive singular vectors up to max_level.

    At each level the singular space is computed exactly and vectors
    lying in the submodule generated by lower-level singular vectors are
    filtered out; what remains generates new submodules.  Minimal-model
    weights produce two primitive vectors, at levels m*n and
    (p-m)*(q-n), when both are within range.
    """
    check_label(model, label)
    if max_level < 1:
        raise RangeError("max_level must be at least 1")
    params = VermaParams(central_charge(model), conformal_weight(model, label))
    found: list[tuple[int, PBWVector]] = []
    for level in range(1, max_level + 1):
        sing = _singular_space(params, level)
        if not sing:
            continue
        basis = pbw_basis(level)
        span = RowSpace()
        for lev, prim in found:
            for parts in pbw_basis(level - lev):
                desc = prim
                for k in reversed(parts):
                    desc = apply_lowering(k, desc)
                span.add([desc.coefficients.get(p, Fraction(0)) for p in basis])
        for v in sing:
            if span.add([v.coefficients.get(p, Fraction(0)) for p in basis]):
                found.append((level, _normalize_singular(v)))
    return found


def verify_singular(params: VermaParams, v: PBWVector) -> bool:
    """True iff L(1) and L(2) both annihilate v exactly."""
    if v.is_zero():
        return False
    return (
        apply_raising(params, 1, v).is_zero()
        and apply_raising(params, 2, v).is_zero()
    )
