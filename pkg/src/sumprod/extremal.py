"""Pigeonhole construction of near-extremal sets in a prime field.

Take the first M powers of a generator and intersect with the best cyclic
window {L+1, ..., L+M}. Averaging over all p offsets, a window holds
M^2/p prefix elements on average, so the best offset holds at least
ceil(M^2/p). With M = ceil(sqrt(p*N)) that yields N elements whose sum
set and product set each live in a structured length-M set, capping both
at 2M - 1 <= 2*ceil(sqrt(p*N)) - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .residues import Modulus, ResidueSet, find_generator, make_modulus
from .setops import _sumset_best, productset


def power_prefix(mod: Modulus, g: int, length: int) -> ResidueSet:
    """The first `length` powers {g, g^2, ..., g^length} of a primitive root."""
    if not mod.is_prime:
        raise ValueError(f"prime modulus required, got {mod.m}")
    p = mod.m
    if not 1 <= length <= p - 1:
        raise ValueError(f"prefix length {length} out of range [1, {p - 1}]")
    elems = []
    acc = 1
    for _ in range(length):
        acc = acc * g % p
        elems.append(acc)
    out = frozenset(elems)
    if len(out) != length:
        raise ValueError(f"{g} is not a primitive root mod {p}: prefix repeats")
    return ResidueSet(mod, out)


def best_window(points: ResidueSet, length: int) -> tuple[int, int]:
    """Offset L maximizing |points ∩ {L+1, ..., L+length mod p}|.

    Scans all p offsets with a cyclic prefix-sum window in O(p); ties go
    to the smallest offset. Returns (offset, count).
    """
    p = points.modulus.m
    if not 1 <= length <= p - 1:
        raise ValueError(f"window length {length} out of range [1, {p - 1}]")
    ind = np.zeros(2 * p, dtype=np.int64)
    if points.size:
        arr = points.array
        ind[arr] = 1
        ind[arr + p] = 1
    prefix = np.concatenate(([0], np.cumsum(ind)))
    offsets = np.arange(p)
    counts = prefix[offsets + 1 + length] - prefix[offsets + 1]
    best = int(np.argmax(counts))
    return best, int(counts[best])


@dataclass(frozen=True)
class ExtremalConstruction:
    """A constructed set of size n with both pair statistics <= 2M - 1."""

    p: int
    n: int
    g: int
    window_len: int
    offset: int
    window_count: int
    prefix: ResidueSet
    chosen: ResidueSet
    sum_size: int
    prod_size: int
    max_size: int

    @property
    def structural_cap(self) -> int:
        return 2 * self.window_len - 1


def build_extremal(p: int, n: int) -> ExtremalConstruction:
    """Construct A with |A| = n and max(|A+A|, |AA|) <= 2*ceil(sqrt(p*n)) - 1.

    Uses M = ceil(sqrt(p*n)), the smallest window length whose pigeonhole
    guarantee ceil(M^2/p) covers n; infeasible when M exceeds p - 1. The
    n smallest representatives of the prefix/window intersection are kept.
    """
    mod = make_modulus(p)
    if not mod.is_prime:
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"target size must be positive, got {n}")
    window_len = math.isqrt(p * n)
    if window_len * window_len < p * n:
        window_len += 1
    if window_len > p - 1:
        raise ValueError(
            f"infeasible: window length {window_len} exceeds p-1 = {p - 1} for n = {n}"
        )
    g = find_generator(mod)
    prefix = power_prefix(mod, g, window_len)
    offset, count = best_window(prefix, window_len)
    window = {(offset + 1 + i) % p for i in range(window_len)}
    pool = sorted(prefix.elements & window)
    if count < n or len(pool) < n:
        raise AssertionError(f"window holds {len(pool)} < {n} elements")
    chosen = ResidueSet(mod, frozenset(pool[:n]))
    sums = _sumset_best(chosen, chosen)
    prod = productset(chosen, chosen)
    return ExtremalConstruction(
        p=p,
        n=n,
        g=g,
        window_len=window_len,
        offset=offset,
        window_count=count,
        prefix=prefix,
        chosen=chosen,
        sum_size=sums.size,
        prod_size=prod.size,
        max_size=max(sums.size, prod.size),
    )
