"""Seeded random sweeps, exhaustive small-case searches, set-file
ingestion and CSV emission.

Determinism contract: every trial draws its subset from a generator
seeded by mix(seed, size, trial) where mix is three rounds of splitmix64
(see derive_seed), so a sweep's output is byte-identical across runs and
across worker-thread counts. The elapsed_micros CSV column is fixed at 0
to keep the file reproducible; it is retained for schema compatibility.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .estimates import (
    field_bound_report,
    field_constant_holds,
    ring_bound_report,
    ring_constant_holds,
)
from .residues import Modulus, ResidueSet, make_modulus, residue_set
from .spectra import ring_fourier_diagnostics

CSV_HEADER = (
    "modulus,kind,size,trial,derived_seed,sum_size,prod_size,"
    "lhs,bound,ratio,J,fourier_max,fourier_cap,elapsed_micros"
)

KIND_PRIME = "prime"
KIND_RING = "ring"

_MASK64 = (1 << 64) - 1


class DuplicateResidueWarning(UserWarning):
    """A set file listed the same residue more than once."""


def parse_set_file(path: str, modulus: Modulus) -> ResidueSet:
    """Read whitespace-separated decimal residues; '#' starts a comment.

    Values must already lie in [0, m); out-of-range or non-numeric tokens
    are errors. Duplicates are removed, one DuplicateResidueWarning per
    extra occurrence.
    """
    m = modulus.m
    seen: set[int] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            body = line.split("#", 1)[0]
            for token in body.split():
                try:
                    value = int(token, 10)
                except ValueError:
                    raise ValueError(f"{path}:{line_no}: non-numeric token {token!r}") from None
                if value < 0 or value >= m:
                    raise ValueError(f"{path}:{line_no}: residue {value} out of range [0, {m})")
                if value in seen:
                    warnings.warn(f"duplicate residue {value}", DuplicateResidueWarning, stacklevel=2)
                else:
                    seen.add(value)
    return residue_set(modulus, seen)


def splitmix64(x: int) -> int:
    """One round of the splitmix64 mixing function."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, size: int, trial: int) -> int:
    """Per-trial stream seed: sm64(sm64(sm64(seed) ^ size) ^ trial)."""
    acc = splitmix64(seed & _MASK64)
    acc = splitmix64(acc ^ (size & _MASK64))
    acc = splitmix64(acc ^ (trial & _MASK64))
    return acc


@dataclass(frozen=True)
class SweepConfig:
    modulus: int
    kind: str
    sizes: tuple[int, ...]
    trials: int
    seed: int
    out_path: str | None = None
    exclude_zero: bool = False


@dataclass(frozen=True)
class SweepRow:
    modulus: int
    kind: str
    size: int
    trial: int
    derived_seed: int
    sum_size: int
    prod_size: int
    lhs: int
    bound: float
    ratio: float
    quad_count: int | None
    fourier_max: float
    fourier_cap: float
    elapsed_micros: int


def _validated_modulus(cfg: SweepConfig) -> Modulus:
    mod = make_modulus(cfg.modulus)
    if cfg.kind not in (KIND_PRIME, KIND_RING):
        raise ValueError(f"kind must be {KIND_PRIME!r} or {KIND_RING!r}, got {cfg.kind!r}")
    if cfg.kind == KIND_PRIME and not mod.is_prime:
        raise ValueError(f"kind {KIND_PRIME!r} requires a prime modulus, got {mod.m}")
    if cfg.trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0 <= cfg.seed <= _MASK64:
        raise ValueError("seed must fit in 64 bits")
    pool = mod.m - (1 if cfg.exclude_zero else 0)
    if not cfg.sizes:
        raise ValueError("no sizes given")
    for s in cfg.sizes:
        if not 1 <= s <= pool:
            raise ValueError(f"size {s} exceeds the {pool} available residues")
    return mod


def _draw_subset(mod: Modulus, size: int, derived: int, exclude_zero: bool) -> ResidueSet:
    rng = np.random.Generator(np.random.PCG64(derived))
    low = 1 if exclude_zero else 0
    picks = rng.choice(mod.m - low, size=size, replace=False) + low
    return residue_set(mod, picks.tolist())


def _trial_row(cfg: SweepConfig, mod: Modulus, size: int, trial: int) -> SweepRow:
    derived = derive_seed(cfg.seed, size, trial)
    subset = _draw_subset(mod, size, derived, cfg.exclude_zero)
    if cfg.kind == KIND_PRIME:
        rep = field_bound_report(subset)
        quad, fmax, fcap = rep.quad_count, rep.fourier_max, rep.fourier_cap
        lhs, bound, ratio = rep.lhs, rep.bound, rep.ratio
        sum_size, prod_size = rep.size_sum, rep.size_prod
    else:
        rep = ring_bound_report(subset)
        quad = None
        fmax, fcap = ring_fourier_diagnostics(subset)
        lhs, bound, ratio = rep.lhs, rep.bound, rep.ratio
        sum_size, prod_size = rep.size_sum, rep.size_prod
    return SweepRow(
        modulus=cfg.modulus,
        kind=cfg.kind,
        size=size,
        trial=trial,
        derived_seed=derived,
        sum_size=sum_size,
        prod_size=prod_size,
        lhs=lhs,
        bound=bound,
        ratio=ratio,
        quad_count=quad,
        fourier_max=fmax,
        fourier_cap=fcap,
        elapsed_micros=0,
    )


def row_violates(row: SweepRow) -> bool:
    """Exact re-check of the explicit-constant bound for one emitted row."""
    if row.kind == KIND_PRIME:
        return not field_constant_holds(row.modulus, row.size, row.lhs)
    halfpower = make_modulus(row.modulus).divisor_halfpower_sum
    return not ring_constant_holds(row.modulus, row.size, halfpower, row.lhs)


def _format_value(x: "int | float | None") -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def format_row(row: SweepRow) -> str:
    return ",".join(
        _format_value(v)
        for v in (
            row.modulus,
            row.kind,
            row.size,
            row.trial,
            row.derived_seed,
            row.sum_size,
            row.prod_size,
            row.lhs,
            row.bound,
            row.ratio,
            row.quad_count,
            row.fourier_max,
            row.fourier_cap,
            row.elapsed_micros,
        )
    )


def write_csv(rows: list[SweepRow], path: str) -> None:
    """UTF-8, LF line endings, exact fixed header, shortest-round-trip floats."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(CSV_HEADER + "\n")
        for row in rows:
            handle.write(format_row(row) + "\n")


def run_sweep(cfg: SweepConfig, threads: int | None = None) -> list[SweepRow]:
    """Run every (size, trial) cell of the sweep; rows come back ordered by
    config position then trial index regardless of scheduling.

    threads affects speed only, never output; None uses machine parallelism.
    """
    mod = _validated_modulus(cfg)
    tasks = [(pos, size, trial) for pos, size in enumerate(cfg.sizes) for trial in range(cfg.trials)]
    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    results: dict[tuple[int, int], SweepRow] = {}
    if workers == 1 or len(tasks) == 1:
        for pos, size, trial in tasks:
            results[(pos, trial)] = _trial_row(cfg, mod, size, trial)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                (pos, trial): pool.submit(_trial_row, cfg, mod, size, trial)
                for pos, size, trial in tasks
            }
            for key, fut in futures.items():
                results[key] = fut.result()
    rows = [results[(pos, trial)] for pos, size, trial in tasks]
    if cfg.out_path is not None:
        write_csv(rows, cfg.out_path)
    return rows


@dataclass(frozen=True)
class ExhaustiveSummary:
    p: int
    k: int
    subsets: int
    min_ratio: float
    witness: tuple[int, ...]
    violations: int


def run_exhaustive(p: int, k: int) -> ExhaustiveSummary:
    """Scan every k-subset of the nonzero residues mod p for a violation of
    the exact 1/4 bound; record the minimum ratio and its witness.

    Limits: p prime <= 19, C(p-1, k) <= 10^7.
    """
    mod = make_modulus(p)
    if not mod.is_prime or p > 19:
        raise ValueError(f"p must be a prime at most 19, got {p}")
    if not 1 <= k <= p - 1:
        raise ValueError(f"k must be in [1, {p - 1}], got {k}")
    if math.comb(p - 1, k) > 10**7:
        raise ValueError(f"C({p - 1}, {k}) exceeds the enumeration cap 10^7")

    full = (1 << p) - 1
    prod_table = [[a * b % p for b in range(p)] for a in range(p)]
    min_ratio = math.inf
    witness: tuple[int, ...] = ()
    violations = 0
    subsets = 0
    for combo in combinations(range(1, p), k):
        subsets += 1
        mask = 0
        for a in combo:
            mask |= 1 << a
        acc = 0
        for a in combo:
            shifted = (mask << a) | (mask >> (p - a))
            acc |= shifted & full
        sum_size = acc.bit_count()
        prods = set()
        for i, a in enumerate(combo):
            row = prod_table[a]
            for b in combo[i:]:
                prods.add(row[b])
        lhs = sum_size * len(prods)
        if not field_constant_holds(p, k, lhs):
            violations += 1
        ratio = lhs / min(p * k, k**4 / p)
        if ratio < min_ratio:
            min_ratio = ratio
            witness = combo
    return ExhaustiveSummary(
        p=p,
        k=k,
        subsets=subsets,
        min_ratio=min_ratio,
        witness=witness,
        violations=violations,
    )
