import math

import numpy as np
import pytest

from sumprod.residues import make_modulus, residue_set, NonInvertibleError
from sumprod.setops import (
    additive_rep,
    dilate,
    indicator,
    productset,
    quotient_rep,
    sumset,
    sumset_fast,
    unit_quotient_rep,
)

from oracles import (
    naive_additive_counts,
    naive_dilate,
    naive_productset,
    naive_quotient_counts,
    naive_sumset,
    random_subset,
)


def _set(m, elems):
    return residue_set(make_modulus(m), elems)


def _counts_dict(mv):
    if mv.is_dense:
        return {int(t): int(c) for t, c in enumerate(mv.counts) if c}
    return {t: c for t, c in mv.counts.items() if c}


def test_sumset_examples():
    a = _set(9, [0, 3, 6])
    assert sumset(a, a).elements == {0, 3, 6}
    b = _set(9, [1, 4, 7])
    assert sumset(_set(9, [0]), b).elements == b.elements
    c = _set(7, [1, 2, 3])
    assert sumset(c, c).elements == {2, 3, 4, 5, 6}


def test_productset_examples():
    a = _set(9, [0, 3, 6])
    assert productset(a, a).elements == {0}
    b = _set(9, [2, 5, 7])
    assert productset(_set(9, [1]), b).elements == b.elements
    c = _set(7, [1, 2, 3])
    assert productset(c, c).elements == {1, 2, 3, 4, 6}


def test_modulus_mismatch_rejected():
    with pytest.raises(ValueError, match="mismatch"):
        sumset(_set(7, [1]), _set(11, [1]))
    with pytest.raises(ValueError, match="mismatch"):
        productset(_set(7, [1]), _set(11, [1]))


def test_dilate_examples():
    a = _set(9, [1, 2, 3])
    assert dilate(3, a).elements == {3, 6, 0}
    assert dilate(1, a).elements == a.elements
    assert dilate(0, a).elements == {0}


def test_against_naive_oracles_random():
    rng = np.random.default_rng(11)
    for _ in range(120):
        m = int(rng.integers(2, 120))
        mod = make_modulus(m)
        a = random_subset(rng, m, int(rng.integers(1, m + 1)))
        b = random_subset(rng, m, int(rng.integers(1, m + 1)))
        sa, sb = residue_set(mod, a), residue_set(mod, b)
        assert sumset(sa, sb).elements == naive_sumset(a, b, m)
        assert productset(sa, sb).elements == naive_productset(a, b, m)
        c = int(rng.integers(0, m))
        assert dilate(c, sa).elements == naive_dilate(c, a, m)


def test_commutativity_random():
    rng = np.random.default_rng(13)
    for _ in range(60):
        m = int(rng.integers(2, 200))
        mod = make_modulus(m)
        a = residue_set(mod, random_subset(rng, m, int(rng.integers(1, m + 1))))
        b = residue_set(mod, random_subset(rng, m, int(rng.integers(1, m + 1))))
        assert sumset(a, b).elements == sumset(b, a).elements
        assert productset(a, b).elements == productset(b, a).elements


def test_translation_covariance_exhaustive_small_m():
    rng = np.random.default_rng(17)
    for m in range(2, 101):
        mod = make_modulus(m)
        a = random_subset(rng, m, int(rng.integers(1, m + 1)))
        b = random_subset(rng, m, int(rng.integers(1, m + 1)))
        base = sumset(residue_set(mod, a), residue_set(mod, b)).elements
        for c in range(m):
            shifted_a = residue_set(mod, [(x + c) % m for x in a])
            shifted = sumset(shifted_a, residue_set(mod, b)).elements
            assert shifted == {(t + c) % m for t in base}


def test_unit_dilation_preserves_pair_sizes():
    rng = np.random.default_rng(19)
    for p in (11, 31, 101):
        mod = make_modulus(p)
        for _ in range(20):
            a = residue_set(mod, random_subset(rng, p, int(rng.integers(1, p))))
            c = int(rng.integers(1, p))
            ca = dilate(c, a)
            assert sumset(ca, ca).size == sumset(a, a).size
            assert productset(ca, ca).size == productset(a, a).size


def test_dilate_fiber_bound_all_small_m():
    rng = np.random.default_rng(23)
    for m in range(2, 501):
        mod = make_modulus(m)
        a = residue_set(mod, random_subset(rng, m, int(rng.integers(1, m + 1))))
        for c in range(m):
            assert dilate(c, a).size * math.gcd(c, m) >= a.size


def test_additive_rep_examples():
    mod5 = make_modulus(5)
    a = residue_set(mod5, [1, 2])
    mv = additive_rep(a, a, 1)
    assert _counts_dict(mv) == {2: 1, 3: 2, 4: 1}
    assert mv.total_mass == 4
    b = residue_set(mod5, [0, 2, 3])
    assert _counts_dict(additive_rep(residue_set(mod5, [0]), b, 1)) == {0: 1, 2: 1, 3: 1}
    with pytest.raises(ValueError):
        additive_rep(a, a, 2)


def test_additive_rep_matches_oracle_and_support():
    rng = np.random.default_rng(29)
    for _ in range(80):
        m = int(rng.integers(2, 150))
        mod = make_modulus(m)
        a = random_subset(rng, m, int(rng.integers(1, m + 1)))
        b = random_subset(rng, m, int(rng.integers(1, m + 1)))
        sa, sb = residue_set(mod, a), residue_set(mod, b)
        for sign in (1, -1):
            mv = additive_rep(sa, sb, sign)
            assert _counts_dict(mv) == naive_additive_counts(a, b, sign, m)
            assert mv.total_mass == len(a) * len(b)
        assert mv.total_mass == sa.size * sb.size
        assert additive_rep(sa, sb, 1).support() == sumset(sa, sb).elements


def test_quotient_rep_examples():
    mod5 = make_modulus(5)
    x = residue_set(mod5, [1, 2, 4])
    a = residue_set(mod5, [1, 2])
    mv = quotient_rep(x, a)
    assert _counts_dict(mv) == {1: 2, 2: 2, 3: 1, 4: 1}
    assert mv.total_mass == 6
    assert _counts_dict(quotient_rep(x, residue_set(mod5, [1]))) == {1: 1, 2: 1, 4: 1}
    with pytest.raises(NonInvertibleError):
        quotient_rep(x, residue_set(mod5, [0, 1]))
    with pytest.raises(ValueError, match="prime"):
        quotient_rep(_set(9, [1]), _set(9, [1]))


def test_quotient_rep_matches_oracle():
    rng = np.random.default_rng(31)
    for p in (5, 11, 31, 101):
        mod = make_modulus(p)
        for _ in range(15):
            xs = random_subset(rng, p, int(rng.integers(1, p)))
            a = random_subset(rng, p, int(rng.integers(1, p)), exclude_zero=True)
            mv = quotient_rep(residue_set(mod, xs), residue_set(mod, a))
            assert _counts_dict(mv) == naive_quotient_counts(xs, a, p)


def test_unit_quotient_rep_ring():
    mod9 = make_modulus(9)
    x = residue_set(mod9, [0, 1, 2, 4])
    a = residue_set(mod9, [1, 2])  # both units mod 9; 2^{-1} = 5
    mv = unit_quotient_rep(x, a)
    assert mv.total_mass == 8
    assert _counts_dict(mv) == naive_quotient_counts([0, 1, 2, 4], [1, 2], 9)
    with pytest.raises(NonInvertibleError) as err:
        unit_quotient_rep(x, residue_set(mod9, [3]))
    assert err.value.gcd == 3


def test_sumset_fast_matches_sumset_grid():
    # density grid per modulus; counts scaled to keep the exact side cheap
    cases = {16: 40, 97: 40, 360: 30, 1024: 20, 9973: (12, 8, 3)}
    rng = np.random.default_rng(37)
    for m, reps in cases.items():
        mod = make_modulus(m)
        for di, density in enumerate((0.01, 0.1, 0.5)):
            n_cases = reps if isinstance(reps, int) else reps[di]
            size = max(1, int(round(density * m)))
            for _ in range(n_cases):
                a = residue_set(mod, random_subset(rng, m, size))
                b = residue_set(mod, random_subset(rng, m, size))
                assert sumset_fast(a, b).elements == sumset(a, b).elements
    empty = residue_set(make_modulus(16), [])
    assert sumset_fast(empty, empty).elements == set()
    full = residue_set(make_modulus(16), range(16))
    assert sumset_fast(full, full).elements == set(range(16))


def test_productset_dlog_path_matches_naive():
    # large dense zero-free prime input takes the discrete-log route
    rng = np.random.default_rng(41)
    for p in (101, 499):
        mod = make_modulus(p)
        a = random_subset(rng, p, p // 2, exclude_zero=True)
        b = random_subset(rng, p, p // 2, exclude_zero=True)
        got = productset(residue_set(mod, a), residue_set(mod, b)).elements
        assert got == naive_productset(a, b, p)
        with_zero = residue_set(mod, set(a) | {0})
        assert productset(with_zero, residue_set(mod, b)).elements == naive_productset(
            set(a) | {0}, b, p
        )


def test_zero_absorption_edges():
    mod7 = make_modulus(7)
    zero = residue_set(mod7, [0])
    empty = residue_set(mod7, [])
    assert productset(zero, empty).elements == set()
    assert productset(zero, residue_set(mod7, [5])).elements == {0}
    assert sumset(empty, residue_set(mod7, [5])).elements == set()


def test_sparse_representation_above_dense_limit():
    m = (1 << 20) + 2
    mod = make_modulus(m)
    a = residue_set(mod, [1, 5, m - 1])
    b = residue_set(mod, [2, 7])
    mv = additive_rep(a, b, 1)
    assert not mv.is_dense
    assert _counts_dict(mv) == naive_additive_counts([1, 5, m - 1], [2, 7], 1, m)
    assert sumset(a, b).elements == naive_sumset([1, 5, m - 1], [2, 7], m)


def test_products_near_modulus_cap_are_exact():
    m = (1 << 31) - 1
    mod = make_modulus(m)
    a = [m - 1, m - 2]
    b = [m - 3, 123456789]
    got = productset(residue_set(mod, a), residue_set(mod, b)).elements
    assert got == naive_productset(a, b, m)


def test_indicator_mass_and_support():
    mod = make_modulus(17)
    a = residue_set(mod, [2, 3, 5])
    mv = indicator(a)
    assert mv.total_mass == 3
    assert mv.support() == a.elements
