from itertools import product
from math import gcd

import pytest

from virmin.errors import RangeError, ShapeError
from virmin.fusion import (
    fuse,
    fusion_rule,
    fusion_table,
    tensor_fusion_rule,
    verify_ring_axioms,
)
from virmin.models import (
    KacLabel,
    MinimalModel,
    TensorLabel,
    TensorModel,
    canonicalize,
    kac_table,
    reflect,
)

M34 = MinimalModel(3, 4)
M25 = MinimalModel(2, 5)

SIGMA = KacLabel(2, 2)  # same orbit as (1,2)
EPS = KacLabel(2, 1)


def test_fusion_rule_examples():
    # vacuum unit
    assert fusion_rule(M34, KacLabel(1, 1), SIGMA, SIGMA) == 1
    # sigma x sigma contains epsilon (via the reflected representative)
    assert fusion_rule(M34, SIGMA, SIGMA, EPS) == 1
    # epsilon x epsilon does not contain epsilon
    assert fusion_rule(M34, EPS, EPS, EPS) == 0


def test_fusion_rule_reflection_invariance():
    for model in (M34, M25, MinimalModel(4, 5)):
        labels = [
            KacLabel(m, n) for m in range(1, model.p) for n in range(1, model.q)
        ]
        for a, b, c in product(labels, repeat=3):
            base = fusion_rule(model, a, b, c)
            assert base == fusion_rule(model, reflect(model, a), b, c)
            assert base == fusion_rule(model, a, reflect(model, b), c)
            assert base == fusion_rule(model, a, b, reflect(model, c))


def test_fusion_rule_range_error():
    with pytest.raises(RangeError):
        fusion_rule(M34, KacLabel(3, 1), SIGMA, SIGMA)


def test_fuse_examples():
    assert fuse(M34, SIGMA, SIGMA) == {KacLabel(1, 1), EPS}
    assert fuse(M25, KacLabel(1, 2), KacLabel(1, 2)) == {KacLabel(1, 1), KacLabel(1, 2)}


def test_vacuum_strict_unit():
    for model in (M34, M25, MinimalModel(4, 5), MinimalModel(3, 5)):
        vac = KacLabel(1, 1)
        for lab, _ in kac_table(model):
            assert fuse(model, vac, lab) == {lab}


def test_tensor_fusion_examples():
    tm = TensorModel((M34, M34))
    a = TensorLabel((SIGMA, SIGMA))
    c = TensorLabel((KacLabel(1, 1), EPS))
    assert tensor_fusion_rule(tm, a, a, c) == 1

    mixed = TensorModel((M34, M25))
    aa = TensorLabel((SIGMA, KacLabel(1, 2)))
    cc = TensorLabel((EPS, KacLabel(1, 1)))
    assert tensor_fusion_rule(mixed, aa, aa, cc) == 1


def test_tensor_vacuum_is_delta():
    tm = TensorModel((M34, M25))
    vac = TensorLabel((KacLabel(1, 1), KacLabel(1, 1)))
    labels = [
        TensorLabel((la, lb))
        for la, _ in kac_table(M34)
        for lb, _ in kac_table(M25)
    ]
    for b in labels:
        for c in labels:
            want = 1 if b == c else 0
            assert tensor_fusion_rule(tm, vac, b, c) == want


def test_tensor_shape_error():
    tm = TensorModel((M34, M25))
    short = TensorLabel((KacLabel(1, 1),))
    with pytest.raises(ShapeError):
        tensor_fusion_rule(tm, short, short, short)


def test_ring_axioms_examples():
    assert verify_ring_axioms(M34).passed
    assert verify_ring_axioms(MinimalModel(2, 3)).passed
    assert verify_ring_axioms(MinimalModel(4, 5)).passed


def test_slot_permutation_symmetry_exhaustive():
    for model in (M34, M25, MinimalModel(3, 5)):
        labels = [lab for lab, _ in kac_table(model)]
        for a, b, c in product(labels, repeat=3):
            n = fusion_rule(model, a, b, c)
            assert n == fusion_rule(model, b, a, c)
            assert n == fusion_rule(model, a, c, b)


def test_fusion_table_matches_rule():
    ft = fusion_table(M34)
    for a, b, c in product(ft.labels, repeat=3):
        assert ft.multiplicity(a, b, c) == fusion_rule(M34, a, b, c)


def test_multiplicities_are_zero_or_one():
    for model in (M34, M25, MinimalModel(5, 6)):
        ft = fusion_table(model)
        assert set(ft.table.flatten().tolist()) <= {0, 1}
