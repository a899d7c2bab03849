"""Sum sets, product sets, dilations and representation (multiplicity)
functions over Z_m.

`sumset`/`productset` are the exact reference operations (direct pair
enumeration, vectorized). `sumset_fast` is the optimized bit-array path
and must agree with `sumset` exactly; the product operation transparently
switches to a discrete-log reduction for large dense inputs over a prime
modulus, which must agree with the direct path exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .residues import (
    BITSET_LIMIT,
    Modulus,
    NonInvertibleError,
    ResidueSet,
    find_generator,
    set_from_mask,
)

# Representation functions are dense length-m arrays below this, sparse
# dicts above; both behave identically.
DENSE_COUNT_LIMIT = 1 << 20
# Cap on elements materialized per vectorized chunk.
_CHUNK_ELEMS = 1 << 22


@dataclass(frozen=True, eq=False)
class MultiplicityVector:
    """Integer counts per residue: counts[t] = number of ways t is hit.

    counts is a read-only int64 array of length m when m <= 2^20, and a
    dict {residue: count} above that.
    """

    modulus: Modulus
    counts: "np.ndarray | dict[int, int]"
    total_mass: int

    @property
    def is_dense(self) -> bool:
        return isinstance(self.counts, np.ndarray)

    def count(self, t: int) -> int:
        if self.is_dense:
            return int(self.counts[t])
        return self.counts.get(t, 0)

    def support(self) -> frozenset[int]:
        if self.is_dense:
            return frozenset(np.flatnonzero(self.counts).tolist())
        return frozenset(t for t, c in self.counts.items() if c > 0)

    def dense_mod(self, q: int) -> np.ndarray:
        """Aggregate the counts by residue mod q into a dense length-q array."""
        if self.modulus.m % q != 0:
            raise ValueError(f"{q} does not divide the modulus {self.modulus.m}")
        if self.is_dense:
            m = self.modulus.m
            if q == m:
                return self.counts.copy()
            return self.counts.reshape(m // q, q).sum(axis=0)
        out = np.zeros(q, dtype=np.int64)
        for t, c in self.counts.items():
            out[t % q] += c
        return out


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _mv_from_dense(mod: Modulus, counts: np.ndarray) -> MultiplicityVector:
    return MultiplicityVector(mod, _freeze(counts), int(counts.sum()))


def _mv_from_dict(mod: Modulus, counts: dict[int, int]) -> MultiplicityVector:
    return MultiplicityVector(mod, counts, sum(counts.values()))


def indicator(a_set: ResidueSet) -> MultiplicityVector:
    """0/1 multiplicity vector of a set."""
    m = a_set.modulus.m
    if m <= DENSE_COUNT_LIMIT:
        counts = np.zeros(m, dtype=np.int64)
        counts[a_set.array] = 1
        return _mv_from_dense(a_set.modulus, counts)
    return _mv_from_dict(a_set.modulus, {a: 1 for a in a_set.elements})


def _require_same_modulus(a: ResidueSet, b: ResidueSet) -> Modulus:
    if a.modulus.m != b.modulus.m:
        raise ValueError(f"modulus mismatch: {a.modulus.m} vs {b.modulus.m}")
    return a.modulus


def _pairwise_values(a: np.ndarray, b: np.ndarray, m: int, multiply: bool) -> np.ndarray:
    """Unique values of a[i] op b[j] mod m over all pairs, chunked over a."""
    if a.size == 0 or b.size == 0:
        return np.empty(0, dtype=np.int64)
    step = max(1, _CHUNK_ELEMS // b.size)
    pieces = []
    for lo in range(0, a.size, step):
        block = a[lo : lo + step, None]
        vals = (block * b[None, :]) if multiply else (block + b[None, :])
        pieces.append(np.unique(vals % m))
    return np.unique(np.concatenate(pieces)) if len(pieces) > 1 else pieces[0]


def sumset(a_set: ResidueSet, b_set: ResidueSet) -> ResidueSet:
    """Exact {a + b mod m} by direct pair enumeration."""
    mod = _require_same_modulus(a_set, b_set)
    vals = _pairwise_values(a_set.array, b_set.array, mod.m, multiply=False)
    return ResidueSet(mod, frozenset(vals.tolist()))


def _rotate_mask(mask: int, shift: int, m: int, full: int) -> int:
    shift %= m
    if shift == 0:
        return mask
    return ((mask << shift) | (mask >> (m - shift))) & full


def sumset_fast(a_set: ResidueSet, b_set: ResidueSet) -> ResidueSet:
    """Bit-array sum set: union of cyclic shifts of one indicator mask.

    Output is identical to sumset; requires the dense representation
    (m <= 2^24).
    """
    mod = _require_same_modulus(a_set, b_set)
    m = mod.m
    if m > BITSET_LIMIT:
        raise ValueError(f"dense representation unavailable for m={m} > 2^24")
    small, big = (a_set, b_set) if a_set.size <= b_set.size else (b_set, a_set)
    if small.size == 0:
        return ResidueSet(mod, frozenset())
    full = (1 << m) - 1
    base = big.mask
    acc = 0
    for a in small.elements:
        acc |= _rotate_mask(base, a, m, full)
    return set_from_mask(mod, acc)


def _sumset_best(a_set: ResidueSet, b_set: ResidueSet) -> ResidueSet:
    """Fast path when the dense representation exists, exact path otherwise."""
    if a_set.modulus.m <= BITSET_LIMIT:
        return sumset_fast(a_set, b_set)
    return sumset(a_set, b_set)


@lru_cache(maxsize=16)
def _dlog_arrays(m: int) -> tuple[int, np.ndarray, np.ndarray]:
    """Cached (g, exponent-of-residue, residue-of-exponent) tables for prime m."""
    from .residues import make_modulus

    mod = make_modulus(m)
    g = find_generator(mod)
    exp_of = np.zeros(m, dtype=np.int64)
    pow_of = np.zeros(max(m - 1, 1), dtype=np.int64)
    acc = 1
    for k in range(m - 1):
        exp_of[acc] = k
        pow_of[k] = acc
        acc = acc * g % m
    return g, _freeze(exp_of), _freeze(pow_of)


def productset(a_set: ResidueSet, b_set: ResidueSet) -> ResidueSet:
    """Exact {a * b mod m}; products are formed in 64-bit-safe intermediates.

    For a prime modulus and large zero-free dense inputs the pair
    enumeration is replaced by a discrete-log reduction (products become
    an exponent sum set mod m-1); 0 is stripped first and appended back
    as the absorbing element. Both routes produce identical sets.
    """
    mod = _require_same_modulus(a_set, b_set)
    m = mod.m
    a_arr, b_arr = a_set.array, b_set.array
    has_zero = (a_arr.size > 0 and a_arr[0] == 0, b_arr.size > 0 and b_arr[0] == 0)
    zero_in_result = (has_zero[0] and b_arr.size > 0) or (has_zero[1] and a_arr.size > 0)
    if has_zero[0]:
        a_arr = a_arr[1:]
    if has_zero[1]:
        b_arr = b_arr[1:]

    use_dlog = (
        mod.is_prime
        and m <= BITSET_LIMIT
        and m > 2
        and a_arr.size * b_arr.size > 4 * m
    )
    if use_dlog:
        _, exp_of, pow_of = _dlog_arrays(m)
        group = m - 1
        full = (1 << group) - 1
        bits = np.zeros(group, dtype=np.uint8)
        bits[exp_of[b_arr]] = 1
        base = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
        acc = 0
        for e in exp_of[a_arr]:
            acc |= _rotate_mask(base, int(e), group, full)
        raw = acc.to_bytes((group + 7) // 8, "little")
        exps = np.flatnonzero(
            np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=group, bitorder="little")
        )
        vals = pow_of[exps]
    else:
        vals = _pairwise_values(a_arr, b_arr, m, multiply=True)

    elems = set(vals.tolist())
    if zero_in_result:
        elems.add(0)
    return ResidueSet(mod, frozenset(elems))


def dilate(c: int, a_set: ResidueSet) -> ResidueSet:
    """{c * a mod m}; its size is at least |A| / gcd(c, m)."""
    m = a_set.modulus.m
    c %= m
    vals = np.unique((c * a_set.array) % m)
    return ResidueSet(a_set.modulus, frozenset(vals.tolist()))


def _counts_of_pairs(a: np.ndarray, b: np.ndarray, mod: Modulus) -> MultiplicityVector:
    """Multiplicity vector of a[i] + b[j] mod m over all pairs."""
    m = mod.m
    if m <= DENSE_COUNT_LIMIT:
        counts = np.zeros(m, dtype=np.int64)
        if a.size and b.size:
            step = max(1, _CHUNK_ELEMS // b.size)
            for lo in range(0, a.size, step):
                block = (a[lo : lo + step, None] + b[None, :]) % m
                counts += np.bincount(block.ravel(), minlength=m)
        return _mv_from_dense(mod, counts)
    out: dict[int, int] = {}
    if a.size and b.size:
        step = max(1, _CHUNK_ELEMS // b.size)
        for lo in range(0, a.size, step):
            block = (a[lo : lo + step, None] + b[None, :]) % m
            keys, reps = np.unique(block.ravel(), return_counts=True)
            for k, r in zip(keys.tolist(), reps.tolist()):
                out[k] = out.get(k, 0) + r
    return _mv_from_dict(mod, out)


def additive_rep(a_set: ResidueSet, b_set: ResidueSet, sign: int) -> MultiplicityVector:
    """counts[t] = number of pairs (a, b) with a + sign*b = t (mod m)."""
    mod = _require_same_modulus(a_set, b_set)
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    b_arr = b_set.array if sign == 1 else (-b_set.array) % mod.m
    return _counts_of_pairs(a_set.array, b_arr, mod)


def unit_quotient_rep(x_set: ResidueSet, a_set: ResidueSet) -> MultiplicityVector:
    """counts[t] = number of pairs (x, a) with x * a^{-1} = t (mod m).

    Every element of the denominator set must be a unit of Z_m.
    """
    mod = _require_same_modulus(x_set, a_set)
    m = mod.m
    inverses = np.empty(a_set.size, dtype=np.int64)
    for i, a in enumerate(a_set.array.tolist()):
        g = math.gcd(a, m)
        if g != 1:
            raise NonInvertibleError(a, m, g)
        inverses[i] = pow(a, -1, m)
    m_dense = m <= DENSE_COUNT_LIMIT
    x_arr = x_set.array
    if m_dense:
        counts = np.zeros(m, dtype=np.int64)
        if x_arr.size and inverses.size:
            step = max(1, _CHUNK_ELEMS // inverses.size)
            for lo in range(0, x_arr.size, step):
                block = (x_arr[lo : lo + step, None] * inverses[None, :]) % m
                counts += np.bincount(block.ravel(), minlength=m)
        return _mv_from_dense(mod, counts)
    out: dict[int, int] = {}
    for x in x_arr.tolist():
        for inv in inverses.tolist():
            t = x * inv % m
            out[t] = out.get(t, 0) + 1
    return _mv_from_dict(mod, out)


def quotient_rep(x_set: ResidueSet, a_set: ResidueSet) -> MultiplicityVector:
    """Prime-field quotient counts: pairs (x, a) in X x A with x * a^{-1} = t.

    Requires a prime modulus and 0 not in A; the ring case goes through
    unit_quotient_rep on a unit-restricted denominator instead.
    """
    mod = _require_same_modulus(x_set, a_set)
    if not mod.is_prime:
        raise ValueError(f"quotient counts require a prime modulus, got {mod.m}")
    if 0 in a_set.elements:
        raise NonInvertibleError(0, mod.m, mod.m)
    return unit_quotient_rep(x_set, a_set)
