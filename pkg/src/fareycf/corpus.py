"""Seeded random corpora of eventually periodic continued fractions."""

from __future__ import annotations

import random

from .cf import ContinuedFraction, PeriodicityClass, classify, normalize

DEFAULT_SEED = 20240611


def random_cf(rng: random.Random, max_quotient: int = 9, max_period: int = 6, max_preperiod: int = 4,
              max_a0: int = 9) -> ContinuedFraction:
    """Positive eventually periodic CF, returned in normal form."""
    while True:
        a0 = rng.randint(0, max_a0)
        pre = tuple(rng.randint(1, max_quotient) for _ in range(rng.randint(0, max_preperiod)))
        period = tuple(rng.randint(1, max_quotient) for _ in range(rng.randint(1, max_period)))
        cf = normalize(ContinuedFraction(a0, pre, period))
        if cf.a0 > 0 or cf.preperiod or cf.period:
            return cf


def corpus(size: int = 200, seed: int = DEFAULT_SEED, **bounds) -> list[ContinuedFraction]:
    rng = random.Random(seed)
    return [random_cf(rng, **bounds) for _ in range(size)]


def sp_corpus(size: int = 50, seed: int = DEFAULT_SEED, max_quotient: int = 9, max_period: int = 6) -> list[ContinuedFraction]:
    """Strictly periodic CFs, alternating the [(a0;...)] and [0;(...)] shapes."""
    rng = random.Random(seed)
    out = []
    for i in range(size):
        period = tuple(rng.randint(1, max_quotient) for _ in range(rng.randint(1, max_period)))
        if i % 2:
            cf = ContinuedFraction(0, (), period)
        else:
            cf = ContinuedFraction(period[0], (), period[1:] + period[:1])
        out.append(normalize(cf))
    return out


def esp_part(cfs: list[ContinuedFraction]) -> list[ContinuedFraction]:
    return [cf for cf in cfs if classify(cf) in (PeriodicityClass.SP, PeriodicityClass.ESP)]


def evp_only_part(cfs: list[ContinuedFraction]) -> list[ContinuedFraction]:
    return [cf for cf in cfs if classify(cf) is PeriodicityClass.EVP]
