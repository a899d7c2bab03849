"""Report generation for the two sum-product lower bounds.

Prime field: |A+A| * |AA| >= (1/4) * min(p |A|, |A|^4 / p). The 1/4 comes
from splitting the master inequality

    |A|^3 <= |AA| |A|^2 |A+A| / p + sqrt(p |AA| |A|) * sqrt(|A| |A+A|)

by which term dominates: if the first does, |AA||A+A| >= p|A|/2; if the
second does, squaring gives |AA||A+A| >= |A|^4/(4p).

Residue ring: |A+A| * |AA| >= (1/64) * min(m |A|, |A|^4 / (m D(m)^2))
where D(m) sums sqrt(d) over proper divisors d of m. The 1/64 tracks the
reduction chain: when |A|^2 <= 4 m D^2 / d0 the dilation bound
|AA| >= |A|/d0 settles it at 1/4; otherwise non-units number at most
sqrt(m/d0) D < |A|/2, so the unit part A' keeps more than half of A, and
the character-sum chain on A' gives |A'A'||A'+A'| >= |A'|^4/(4 m D^2)
with |A'|^4 > |A|^4/16.

Both constants are asserted in the test suite: the prime case in exact
integer arithmetic, the ring case in floating point with 1e-9 slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .residues import (
    MODULUS_CAP,
    ResidueSet,
    make_modulus,
    min_gcd,
    residue_set,
    unit_part,
)
from .setops import (
    MultiplicityVector,
    _sumset_best,
    additive_rep,
    productset,
    quotient_rep,
)
from .spectra import (
    REL_SLACK,
    DivisorBoundRow,
    dft_counts,
    divisor_bound_checks,
    max_nontrivial,
    parseval_bound_check,
)

BRUTE_FORCE_CAP = 10**9


def _mv_dot(a: MultiplicityVector, b: MultiplicityVector) -> int:
    if a.is_dense and b.is_dense:
        return int(np.dot(a.counts, b.counts))
    sparse, other = (a, b) if not a.is_dense else (b, a)
    return sum(c * other.count(t) for t, c in sparse.counts.items())


def _require_prime_zero_free(a_set: ResidueSet) -> int:
    mod = a_set.modulus
    if not mod.is_prime:
        raise ValueError(f"prime modulus required, got {mod.m}")
    if 0 in a_set.elements:
        raise ValueError("0 must not be in the set")
    return mod.m


def count_quadruples(a_set: ResidueSet) -> int:
    """Exact number of solutions of x * a1^{-1} + a2 = y over (AA) x A x A x (A+A).

    Computed as the inner product of the quotient counts of (AA, A) with
    the difference counts of (A+A, A); requires a prime modulus and a
    zero-free set.
    """
    _require_prime_zero_free(a_set)
    if a_set.size == 0:
        return 0
    prod = productset(a_set, a_set)
    sums = _sumset_best(a_set, a_set)
    return _count_quadruples_from(prod, a_set, sums)


def _count_quadruples_from(prod: ResidueSet, a_set: ResidueSet, sums: ResidueSet) -> int:
    quotients = quotient_rep(prod, a_set)
    differences = additive_rep(sums, a_set, -1)
    return _mv_dot(quotients, differences)


def count_quadruples_bruteforce(a_set: ResidueSet) -> int:
    """Literal enumeration of every quadruple (x, a1, a2, y), testing the
    defining equation on each; the independent oracle for count_quadruples.

    Refuses inputs with more than 10^9 quadruples.
    """
    p = _require_prime_zero_free(a_set)
    if a_set.size == 0:
        return 0
    arr = a_set.array
    prod = productset(a_set, a_set).array
    sums = _sumset_best(a_set, a_set).array
    quadruples = prod.size * arr.size * arr.size * sums.size
    if quadruples > BRUTE_FORCE_CAP:
        raise ValueError(f"{quadruples} quadruples exceed the brute-force cap {BRUTE_FORCE_CAP}")
    total = 0
    step = max(1, (1 << 22) // max(1, arr.size * sums.size))
    for a1 in arr.tolist():
        t = prod * pow(a1, -1, p) % p
        for lo in range(0, t.size, step):
            residual = (t[lo : lo + step, None, None] + arr[None, :, None] - sums[None, None, :]) % p
            total += int(np.count_nonzero(residual == 0))
    return total


@dataclass(frozen=True)
class FieldBoundReport:
    """All sizes, bound terms and proof diagnostics for the prime-field bound.

    Size statistics cover the full input set; the quadruple count and the
    spectral peak are computed on the zero-free part (flagged by
    stripped_zero), which is where they are meaningful.
    """

    p: int
    size_a: int
    size_sum: int
    size_prod: int
    lhs: int
    term_pa: float
    term_a4p: float
    bound: float
    ratio: float
    quad_count: int
    quad_lower: int
    fourier_max: float
    fourier_cap: float
    stripped_zero: bool


def field_bound_report(a_set: ResidueSet) -> FieldBoundReport:
    mod = a_set.modulus
    if not mod.is_prime:
        raise ValueError(f"prime modulus required, got {mod.m}")
    if a_set.size == 0:
        raise ValueError("empty set")
    p = mod.m
    sums = _sumset_best(a_set, a_set)
    prod = productset(a_set, a_set)
    stripped = 0 in a_set.elements
    core = ResidueSet(mod, a_set.elements - {0}) if stripped else a_set
    if core.size:
        core_prod = productset(core, core)
        core_sums = _sumset_best(core, core)
        quad_count = _count_quadruples_from(core_prod, core, core_sums)
        spec = dft_counts(quotient_rep(core_prod, core), p)
        _, fourier_max = max_nontrivial(spec)
        fourier_cap = math.sqrt(p * core_prod.size * core.size)
    else:
        quad_count, fourier_max, fourier_cap = 0, 0.0, 0.0
    k = a_set.size
    lhs = sums.size * prod.size
    term_pa = float(p * k)
    term_a4p = k**4 / p
    bound = min(term_pa, term_a4p)
    return FieldBoundReport(
        p=p,
        size_a=k,
        size_sum=sums.size,
        size_prod=prod.size,
        lhs=lhs,
        term_pa=term_pa,
        term_a4p=term_a4p,
        bound=bound,
        ratio=lhs / bound,
        quad_count=quad_count,
        quad_lower=core.size**3,
        fourier_max=fourier_max,
        fourier_cap=fourier_cap,
        stripped_zero=stripped,
    )


def field_constant_holds(p: int, size_a: int, lhs: int) -> bool:
    """Exact check of lhs >= (1/4) min(p |A|, |A|^4 / p) in integers."""
    return 4 * lhs * p >= min(p * p * size_a, size_a**4)


@dataclass(frozen=True)
class MasterInequalityCheck:
    """|A|^3 <= main + offdiagonal with both terms from exact sizes.

    holds is decided in exact integer arithmetic (the square root is
    removed by squaring the residual), so no tolerance is involved.
    """

    cube: int
    term_main: float
    term_offdiag: float
    holds: bool


def master_inequality_holds(p: int, size_a: int, size_sum: int, size_prod: int) -> bool:
    excess = p * size_a**3 - size_prod * size_a**2 * size_sum
    if excess <= 0:
        return True
    return excess * excess <= p**3 * size_a**2 * size_prod * size_sum


def master_inequality_check(a_set: ResidueSet) -> MasterInequalityCheck:
    p = _require_prime_zero_free(a_set)
    k = a_set.size
    s = _sumset_best(a_set, a_set).size
    pr = productset(a_set, a_set).size
    return MasterInequalityCheck(
        cube=k**3,
        term_main=pr * k**2 * s / p,
        term_offdiag=math.sqrt(p * pr * k) * math.sqrt(k * s),
        holds=master_inequality_holds(p, k, s, pr),
    )


@dataclass(frozen=True)
class RingBoundReport:
    """Sizes, bound terms and reduction diagnostics for the ring bound."""

    m: int
    d0: int
    size_a: int
    size_unit_a: int
    size_sum: int
    size_prod: int
    divisor_halfpower_sum: float
    lhs: int
    term_ma: float
    term_ring: float
    bound: float
    ratio: float
    nonunit_count: int
    nonunit_cap: float
    branch: str


def ring_bound_report(a_set: ResidueSet) -> RingBoundReport:
    if a_set.size == 0:
        raise ValueError("empty set")
    mod = a_set.modulus
    m = mod.m
    k = a_set.size
    d0 = min_gcd(a_set)
    units = unit_part(a_set)
    halfpower = mod.divisor_halfpower_sum
    sums = _sumset_best(a_set, a_set)
    prod = productset(a_set, a_set)
    lhs = sums.size * prod.size
    term_ma = float(m * k)
    term_ring = k**4 / (m * halfpower * halfpower)
    bound = min(term_ma, term_ring)
    # Strict inequality selects the unit-reduction branch; ties stay trivial.
    branch = "unit_reduced" if k * k * d0 > 4 * m * halfpower * halfpower else "trivial_d0"
    return RingBoundReport(
        m=m,
        d0=d0,
        size_a=k,
        size_unit_a=units.size,
        size_sum=sums.size,
        size_prod=prod.size,
        divisor_halfpower_sum=halfpower,
        lhs=lhs,
        term_ma=term_ma,
        term_ring=term_ring,
        bound=bound,
        ratio=lhs / bound,
        nonunit_count=k - units.size,
        nonunit_cap=math.sqrt(m / d0) * halfpower,
        branch=branch,
    )


def ring_constant_holds(m: int, size_a: int, halfpower: float, lhs: int) -> bool:
    """lhs >= (1/64) min(m |A|, |A|^4 / (m D^2)) with 1e-9 slack for D."""
    bound = min(float(m * size_a), size_a**4 / (m * halfpower * halfpower))
    return 64 * lhs >= bound * (1 - REL_SLACK)


@dataclass(frozen=True)
class NonunitBound:
    """Count of elements sharing a factor with m against its two caps.

    The count is over gcd(a, m) >= max(d0, 2); the divisor cap sums m/d
    over divisors d >= max(d0, 2) (exact integers); the sqrt cap is
    sqrt(m/d0) * D(m). Both caps hold for every input set.
    """

    m: int
    d0: int
    count: int
    divisor_cap: int
    sqrt_cap: float
    count_ok: bool
    caps_ok: bool


def nonunit_bound_check(a_set: ResidueSet) -> NonunitBound:
    mod = a_set.modulus
    m = mod.m
    if a_set.size == 0:
        d0 = m
        count = 0
    else:
        d0 = min_gcd(a_set)
        threshold = max(d0, 2)
        count = sum(1 for a in a_set.elements if math.gcd(a, m) >= threshold)
    threshold = max(d0, 2)
    divisor_cap = sum(m // d for d in mod.divisors if d >= threshold)
    sqrt_cap = math.sqrt(m / d0) * mod.divisor_halfpower_sum
    return NonunitBound(
        m=m,
        d0=d0,
        count=count,
        divisor_cap=divisor_cap,
        sqrt_cap=sqrt_cap,
        count_ok=count <= divisor_cap,
        caps_ok=divisor_cap <= sqrt_cap * (1 + REL_SLACK),
    )


@dataclass(frozen=True)
class RingProofChecks:
    """Every intermediate inequality of the ring reduction, on one input set."""

    dilation_ok: bool
    nonunit: NonunitBound
    divisor_rows: tuple[DivisorBoundRow, ...]
    parseval_set_ok: bool
    parseval_sumset_ok: bool
    unit_majority_ok: bool
    branch: str
    all_ok: bool


def ring_proof_checks(a_set: ResidueSet) -> RingProofChecks:
    """Verify the dilation bound, the non-unit caps, the per-divisor square
    bound and the one-period power-sum bounds for one set.

    The spectral checks run on the unit part of the set (where inverses
    exist); the unit-majority step is asserted only when the reduction
    actually takes that branch.
    """
    if a_set.size == 0:
        raise ValueError("empty set")
    mod = a_set.modulus
    m = mod.m
    d0 = min_gcd(a_set)
    prod = productset(a_set, a_set)
    dilation_ok = prod.size * d0 >= a_set.size
    nonunit = nonunit_bound_check(a_set)
    units = unit_part(a_set)
    rows = divisor_bound_checks(units)
    unit_sums = _sumset_best(units, units)
    parseval_set_ok = True
    parseval_sumset_ok = True
    for d in mod.divisors[:-1]:
        q = m // d
        parseval_set_ok &= parseval_bound_check(units, q).holds
        parseval_sumset_ok &= parseval_bound_check(unit_sums, q).holds
    halfpower = mod.divisor_halfpower_sum
    branch = (
        "unit_reduced"
        if a_set.size**2 * d0 > 4 * m * halfpower * halfpower
        else "trivial_d0"
    )
    unit_majority_ok = branch != "unit_reduced" or 2 * units.size > a_set.size
    all_ok = (
        dilation_ok
        and nonunit.count_ok
        and nonunit.caps_ok
        and all(r.holds for r in rows)
        and parseval_set_ok
        and parseval_sumset_ok
        and unit_majority_ok
    )
    return RingProofChecks(
        dilation_ok=dilation_ok,
        nonunit=nonunit,
        divisor_rows=rows,
        parseval_set_ok=parseval_set_ok,
        parseval_sumset_ok=parseval_sumset_ok,
        unit_majority_ok=unit_majority_ok,
        branch=branch,
        all_ok=all_ok,
    )


@dataclass(frozen=True)
class RingExtremalExample:
    """The multiples of p inside Z_{p^2}: sum set equal to the set itself,
    product set collapsed to {0}."""

    p: int
    m: int
    a: ResidueSet
    size_a: int
    size_sum: int
    size_prod: int
    ratio: float


def zm_extremal(p: int) -> RingExtremalExample:
    """Build {0, p, 2p, ...} in Z_{p^2} and verify the exact size triple (p, p, 1)."""
    if p * p > MODULUS_CAP:
        raise ValueError(f"p^2 = {p*p} exceeds the modulus cap")
    p_mod = make_modulus(p)
    if not p_mod.is_prime:
        raise ValueError(f"{p} is not prime")
    mod = make_modulus(p * p)
    a_set = residue_set(mod, range(0, p * p, p))
    sums = _sumset_best(a_set, a_set)
    prod = productset(a_set, a_set)
    if (a_set.size, sums.size, prod.size) != (p, p, 1):
        raise AssertionError(
            f"size triple {(a_set.size, sums.size, prod.size)} != {(p, p, 1)}"
        )
    ratio = ring_bound_report(a_set).ratio
    return RingExtremalExample(
        p=p,
        m=p * p,
        a=a_set,
        size_a=a_set.size,
        size_sum=sums.size,
        size_prod=prod.size,
        ratio=ratio,
    )
