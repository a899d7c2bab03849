"""Exact modular arithmetic: modulus metadata, residue sets, inverses,
primitive roots and discrete-log tables.

Every value in this module is immutable after construction and every
function is pure, so everything here is safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

import numpy as np

MODULUS_CAP = 1 << 31
# Dense bit-array representation of a ResidueSet is available below this.
BITSET_LIMIT = 1 << 24


class NonInvertibleError(ValueError):
    """Raised when an element has no inverse; carries the offending gcd."""

    def __init__(self, a: int, m: int, g: int):
        super().__init__(f"{a} is not invertible mod {m} (gcd {g})")
        self.gcd = g


@dataclass(frozen=True)
class Modulus:
    """A ring size m together with its primality, factorization and divisors.

    divisor_halfpower_sum is the sum of sqrt(d) over the proper divisors
    d < m; it equals 1.0 exactly when m is prime.
    """

    m: int
    is_prime: bool
    factorization: tuple[tuple[int, int], ...]
    divisors: tuple[int, ...]
    divisor_halfpower_sum: float

    def __repr__(self) -> str:
        return f"Modulus({self.m})"


@lru_cache(maxsize=None)
def make_modulus(m: int) -> Modulus:
    """Build a Modulus by trial division. Requires 2 <= m <= 2**31."""
    if not isinstance(m, int) or isinstance(m, bool):
        raise ValueError(f"modulus must be an integer, got {m!r}")
    if m < 2 or m > MODULUS_CAP:
        raise ValueError(f"modulus must be in [2, 2^31], got {m}")
    factorization = []
    rest = m
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factorization.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        factorization.append((rest, 1))

    divisors = [1]
    for prime, exp in factorization:
        prime_powers = [prime**k for k in range(exp + 1)]
        divisors = [dv * pk for dv in divisors for pk in prime_powers]
    divisors.sort()

    halfpower = float(sum(math.sqrt(d) for d in divisors[:-1]))
    return Modulus(
        m=m,
        is_prime=len(divisors) == 2,
        factorization=tuple(factorization),
        divisors=tuple(divisors),
        divisor_halfpower_sum=halfpower,
    )


@dataclass(frozen=True)
class ResidueSet:
    """An immutable subset of Z_m with exact membership and cardinality.

    Derived views (sorted array, dense bit mask) are computed lazily and
    cached; they never change the set's value semantics.
    """

    modulus: Modulus
    elements: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements))

    def __repr__(self) -> str:
        shown = sorted(self.elements)
        if len(shown) > 8:
            shown = shown[:8] + ["..."]
        return f"ResidueSet(mod {self.modulus.m}, {shown})"

    @cached_property
    def array(self) -> np.ndarray:
        """Sorted int64 view of the elements (read-only)."""
        arr = np.fromiter(sorted(self.elements), dtype=np.int64, count=len(self.elements))
        arr.setflags(write=False)
        return arr

    @cached_property
    def mask(self) -> int:
        """Dense bit array packed into a Python int; bit t set iff t in the set."""
        m = self.modulus.m
        if m > BITSET_LIMIT:
            raise ValueError(f"dense representation unavailable for m={m} > 2^24")
        if not self.elements:
            return 0
        bits = np.zeros(m, dtype=np.uint8)
        bits[self.array] = 1
        return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def residue_set(modulus: Modulus, elements: Iterable[int]) -> ResidueSet:
    """Validate and build a ResidueSet; every element must lie in [0, m)."""
    elems = frozenset(int(x) for x in elements)
    m = modulus.m
    for x in elems:
        if not 0 <= x < m:
            raise ValueError(f"residue {x} out of range [0, {m})")
    return ResidueSet(modulus=modulus, elements=elems)


def set_from_mask(modulus: Modulus, mask: int) -> ResidueSet:
    """Inverse of ResidueSet.mask."""
    m = modulus.m
    raw = mask.to_bytes((m + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=m, bitorder="little")
    return ResidueSet(modulus=modulus, elements=frozenset(np.flatnonzero(bits).tolist()))


def mod_inverse(a: int, mod: Modulus) -> int:
    """Return b with a*b = 1 (mod m), or raise NonInvertibleError with the gcd."""
    m = mod.m
    a = a % m
    g = math.gcd(a, m)
    if g != 1:
        raise NonInvertibleError(a, m, g)
    return pow(a, -1, m)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def find_generator(mod: Modulus) -> int:
    """Smallest generator of the multiplicative group mod a prime p.

    Candidates are tested in increasing order by checking
    g^((p-1)/q) != 1 for every prime q dividing p-1, so the result is
    deterministic and its order is exactly p-1.
    """
    if not mod.is_prime:
        raise ValueError(f"generator search requires a prime modulus, got {mod.m}")
    p = mod.m
    if p == 2:
        return 1
    cofactors = [(p - 1) // q for q in _prime_factors(p - 1)]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def dlog_table(mod: Modulus, g: int) -> dict[int, int]:
    """Discrete-log table for a primitive root g: table[g^k mod p] = k.

    Built in one pass of successive multiplication; a repeated value
    before the pass completes means g is not primitive.
    """
    if not mod.is_prime:
        raise ValueError(f"discrete logs require a prime modulus, got {mod.m}")
    p = mod.m
    if not 1 <= g < p:
        raise ValueError(f"generator {g} out of range [1, {p})")
    table = {1: 0}
    acc = 1
    for k in range(1, p - 1):
        acc = acc * g % p
        if acc in table:
            raise ValueError(f"{g} is not a primitive root mod {p}: g^{k} collides")
        table[acc] = k
    return table


def min_gcd(a_set: ResidueSet) -> int:
    """Minimum of gcd(a, m) over a in the set, with gcd(0, m) = m."""
    if not a_set.elements:
        raise ValueError("min_gcd of an empty set")
    m = a_set.modulus.m
    return min(math.gcd(a, m) for a in a_set.elements)


def unit_part(a_set: ResidueSet) -> ResidueSet:
    """The elements coprime to the modulus (the invertible ones)."""
    m = a_set.modulus.m
    return ResidueSet(
        modulus=a_set.modulus,
        elements=frozenset(a for a in a_set.elements if math.gcd(a, m) == 1),
    )
