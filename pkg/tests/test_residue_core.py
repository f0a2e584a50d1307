from math import gcd

import numpy as np
import pytest

from core.errors import DomainError
from core.residue_core import (
    GeneratorSpec,
    ResidueSet,
    element_order,
    full_mask,
    is_primitive,
    k_fold_sumset,
    make_set,
    parse_set_literal,
    quotient_set,
    rotate_mask,
    scale,
    sumset,
    translate,
    units,
)

# quick runs by default; the full-size runs are marked slow
CASE_COUNTS = [300, pytest.param(10 ** 4, marks=pytest.mark.slow)]


def _random_set(rng, n):
    size = int(rng.integers(1, n + 1))
    return make_set(n, rng.choice(n, size=size, replace=False).tolist())


def test_make_set_reduces_negative_and_oversized_values():
    s = make_set(5, [-1, 7, 0])
    assert s.elements() == [0, 2, 4]
    assert len(s) == 3


@pytest.mark.parametrize("bad", [1, 0, -3, 2 ** 20 + 1])
def test_make_set_rejects_bad_modulus(bad):
    with pytest.raises(DomainError):
        make_set(bad, [0])


def test_make_set_rejects_empty():
    with pytest.raises(DomainError):
        make_set(5, [])


def test_parse_set_literal():
    assert parse_set_literal(13, "0,1,12").elements() == [0, 1, 12]
    assert parse_set_literal(5, " 0, 6 ").elements() == [0, 1]


@pytest.mark.parametrize("text", ["", "0,,1", "0;1", "a,b", "0,1,"])
def test_parse_set_literal_rejects_malformed(text):
    with pytest.raises(DomainError):
        parse_set_literal(5, text)


def test_generator_spec_requires_sorted_distinct():
    with pytest.raises(DomainError):
        GeneratorSpec(5, (1, 0))
    with pytest.raises(DomainError):
        GeneratorSpec(5, (0, 5))
    spec = GeneratorSpec(7, (0, 1, 3))
    assert spec.literal() == "0,1,3"
    assert str(spec) == "{0, 1, 3}"
    assert spec.to_set().elements() == [0, 1, 3]


def test_residue_set_rejects_mask_wider_than_modulus():
    with pytest.raises(DomainError):
        ResidueSet(3, 0b1000)


def test_rotate_mask_wraps():
    assert rotate_mask(0b10001, 1, 5) == 0b00011
    assert rotate_mask(0b00011, -1, 5) == 0b10001


def test_sumset_small_sets():
    assert sumset(make_set(5, [0, 1]), make_set(5, [0, 2])).elements() == [0, 1, 2, 3]
    assert sumset(make_set(6, [0, 3]), make_set(6, [0, 3])).elements() == [0, 3]


def test_sumset_modulus_mismatch():
    with pytest.raises(DomainError):
        sumset(make_set(5, [0]), make_set(6, [0]))


def test_k_fold_sumset():
    s = make_set(5, [0, 1, 2])
    assert k_fold_sumset(s, 1) == s
    assert k_fold_sumset(s, 2).is_full()
    assert k_fold_sumset(make_set(10, [0, 1]), 4).elements() == [0, 1, 2, 3, 4]


def test_k_fold_sumset_rejects_k_zero():
    with pytest.raises(DomainError):
        k_fold_sumset(make_set(5, [0, 1]), 0)


def test_translate_and_scale():
    s = make_set(7, [0, 1, 3])
    assert translate(s, 5).elements() == [1, 5, 6]
    assert scale(s, 2).elements() == [0, 2, 6]
    with pytest.raises(DomainError):
        scale(make_set(6, [0, 1]), 2)


def test_element_order():
    assert element_order(12, 0) == 1
    assert element_order(12, 8) == 3
    assert element_order(12, 5) == 12
    with pytest.raises(DomainError):
        element_order(12, 12)


def test_is_primitive():
    assert is_primitive(7, make_set(7, [1, 2]))
    assert not is_primitive(6, make_set(6, [0, 2, 4]))
    # translated copies of a subgroup coset are still imprimitive
    assert not is_primitive(6, make_set(6, [1, 3, 5]))
    assert not is_primitive(5, make_set(5, [3]))


def test_quotient_set():
    assert quotient_set(make_set(12, [0, 1, 5, 7]), 4).elements() == [0, 1, 3]
    with pytest.raises(DomainError):
        quotient_set(make_set(12, [0, 1]), 5)


def test_units():
    assert units(12) == [1, 5, 7, 11]
    assert units(7) == [1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("cases", CASE_COUNTS)
def test_k_fold_sizes_nondecreasing_and_full_absorbing(cases):
    rng = np.random.default_rng(11)
    for _ in range(cases):
        n = int(rng.integers(2, 60))
        s = _random_set(rng, n)
        sizes = [len(k_fold_sumset(s, k)) for k in range(1, 8)]
        assert sizes == sorted(sizes)
        full = ResidueSet(n, full_mask(n))
        assert sumset(full, s) == full


@pytest.mark.parametrize("cases", CASE_COUNTS)
def test_sumset_commutative_associative_with_identity(cases):
    rng = np.random.default_rng(19)
    for _ in range(cases):
        n = int(rng.integers(2, 60))
        a, b, c = _random_set(rng, n), _random_set(rng, n), _random_set(rng, n)
        assert sumset(a, b) == sumset(b, a)
        assert sumset(sumset(a, b), c) == sumset(a, sumset(b, c))
        assert sumset(a, make_set(n, [0])) == a


@pytest.mark.parametrize("cases", CASE_COUNTS)
def test_scale_and_translate_compose(cases):
    rng = np.random.default_rng(23)
    for _ in range(cases):
        n = int(rng.integers(2, 60))
        s = _random_set(rng, n)
        unit_list = units(n)
        u, v = int(rng.choice(unit_list)), int(rng.choice(unit_list))
        x, y = int(rng.integers(0, n)), int(rng.integers(0, n))
        assert scale(scale(s, u), v) == scale(s, u * v % n)
        assert translate(translate(s, x), y) == translate(s, (x + y) % n)


@pytest.mark.parametrize("cases", CASE_COUNTS)
def test_element_order_divides_modulus(cases):
    rng = np.random.default_rng(29)
    for _ in range(cases):
        n = int(rng.integers(2, 500))
        x = int(rng.integers(0, n))
        order = element_order(n, x)
        assert n % order == 0
        assert order == n // gcd(n, x)
        assert (order == n) == (gcd(n, x) == 1)


@pytest.mark.parametrize("cases", CASE_COUNTS)
def test_is_primitive_invariant_under_affine_maps(cases):
    rng = np.random.default_rng(31)
    for _ in range(cases):
        n = int(rng.integers(2, 60))
        s = _random_set(rng, n)
        u = int(rng.choice(units(n)))
        c = int(rng.integers(0, n))
        assert is_primitive(n, translate(scale(s, u), c)) == is_primitive(n, s)
