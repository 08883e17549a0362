"""Empirical normality diagnostics: k-gram counts, chi-square uniformity,
and the exact equidistribution probability of a random digit block.

These are finite-sample diagnostics. No output of this module constitutes
a proof of normality, and report text says so.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from decimal import Context as DecimalContext, Decimal
from fractions import Fraction
from typing import NamedTuple

from scipy.special import gammaincc

from .digits import ConstantSpec, DigitBlock, digits_in_base
from .errors import BlockTooShort, KTooLarge, MismatchedTotals, TooFewSamples

TABLE_BUDGET_BITS = 24
UNDERFLOW_FLOOR = 1e-308


@dataclass(frozen=True)
class KGramCounts:
    """Overlapping-window counts of the length-k digit strings in a block."""

    base: int
    k: int
    length: int
    counts: dict

    @property
    def samples(self) -> int:
        return self.length - self.k + 1

    @property
    def cells(self) -> int:
        return self.base ** self.k

    def count(self, gram) -> int:
        return self.counts.get(tuple(gram), 0)


def kgram_counts(digits: DigitBlock, k: int) -> KGramCounts:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k * math.log2(digits.base) > TABLE_BUDGET_BITS:
        raise KTooLarge(
            f"base**k table for base {digits.base}, k {k} exceeds "
            f"2**{TABLE_BUDGET_BITS} cells")
    if len(digits) < k:
        raise BlockTooShort(f"need at least {k} digits, got {len(digits)}")
    seq = digits.digits
    grams = zip(*(seq[i:] for i in range(k)))
    return KGramCounts(digits.base, k, len(seq), dict(Counter(grams)))


class ChiSquare(NamedTuple):
    statistic: float
    p_value: float
    underflow: bool


def chi_square_uniform(counts: KGramCounts, min_expected: float = 5.0) -> ChiSquare:
    """Pearson statistic against the uniform model and its upper-tail
    p-value from the regularized incomplete gamma function."""
    cells = counts.cells
    samples = counts.samples
    if samples < min_expected * cells:
        raise TooFewSamples(
            f"{samples} windows for {cells} cells; need >= {min_expected} per cell")
    expected = samples / cells
    statistic = sum((n - expected) ** 2 for n in counts.counts.values()) / expected
    statistic += (cells - len(counts.counts)) * expected
    dof = cells - 1
    p = float(gammaincc(dof / 2.0, statistic / 2.0))
    underflow = p < UNDERFLOW_FLOOR
    if underflow:
        p = 0.0
    return ChiSquare(statistic, p, underflow)


@dataclass(frozen=True)
class KDiagnostics:
    k: int
    cells: int
    samples: int
    statistic: float
    dof: int
    p_value: float
    underflow: bool


@dataclass(frozen=True)
class NormalityReport:
    constant: str
    base: int
    length: int
    per_k: tuple
    verdict: str

    def as_record(self) -> dict:
        return {
            "constant": self.constant,
            "base": self.base,
            "length": self.length,
            "per_k": [
                {"k": d.k, "cells": d.cells, "samples": d.samples,
                 "chi_square": d.statistic, "dof": d.dof,
                 "p_value": d.p_value, "underflow": d.underflow}
                for d in self.per_k
            ],
            "verdict": self.verdict,
        }


def normality_scan(constant: ConstantSpec, base: int, length: int,
                   k_max: int) -> NormalityReport:
    """Chi-square uniformity of k-grams for k = 1..k_max over the first
    `length` digits. A diagnostic, never a proof."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    block = digits_in_base(constant, base, length)
    rows = []
    for k in range(1, k_max + 1):
        counts = kgram_counts(block, k)
        chi = chi_square_uniform(counts)
        rows.append(KDiagnostics(k, counts.cells, counts.samples,
                                 chi.statistic, counts.cells - 1,
                                 chi.p_value, chi.underflow))
    worst = min(rows, key=lambda d: d.p_value)
    verdict = (
        f"finite-sample diagnostic over {length} base-{base} digits: "
        f"smallest chi-square p-value {worst.p_value:.3g} at k={worst.k}"
        f"{' (underflow)' if worst.underflow else ''}; "
        "this measures consistency with uniform k-gram frequencies only "
        "and proves nothing about normality")
    return NormalityReport(constant.identifier(), base, length, tuple(rows), verdict)


# ---------------------------------------------------------------------------
# exact equidistribution probability

@dataclass(frozen=True)
class EquidistributionProbability:
    exact: Fraction
    exact_decimal: str
    stirling_approx: float


def _sci_string(value: Fraction, sig_digits: int = 6) -> str:
    ctx = DecimalContext(prec=sig_digits, Emax=10 ** 12, Emin=-(10 ** 12))
    d = ctx.divide(Decimal(value.numerator), Decimal(value.denominator))
    return f"{d:.{sig_digits - 1}e}"


def _stirling_log_factorial(n: int) -> float:
    # sqrt(2 pi n) * (n/e)**n, in logs to dodge overflow
    return 0.5 * math.log(2 * math.pi * n) + n * (math.log(n) - 1)


def exact_equidistribution_probability(trials: int, categories: int,
                                       per_category: int) -> EquidistributionProbability:
    """Probability that `trials` uniform draws over `categories` outcomes hit
    every outcome exactly `per_category` times.

    exact = trials! / ((per_category!)**categories * categories**trials)
    computed in big integers; the Stirling form is evaluated in logs.
    """
    if trials < 1 or categories < 1 or per_category < 1:
        raise ValueError("all arguments must be positive")
    if trials != categories * per_category:
        raise MismatchedTotals(
            f"trials {trials} != categories {categories} x per_category {per_category}")
    numerator = math.factorial(trials)
    denominator = math.factorial(per_category) ** categories * categories ** trials
    exact = Fraction(numerator, denominator)
    log_prob = (_stirling_log_factorial(trials)
                - categories * _stirling_log_factorial(per_category)
                - trials * math.log(categories))
    return EquidistributionProbability(exact, _sci_string(exact), math.exp(log_prob))
