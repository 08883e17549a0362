"""Streaming first-occurrence search for digital n-circle patterns,
plus the expected-position and CPU-cost estimators.

Matching runs over the flattened 1-D digit string; the square raster view
of a matched window is a rendering concern. Scanning advances one digit at
a time so the reported anchor is minimal.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .digits import ConstantSpec, DigitBlock, DigitStream, open_stream
from .errors import BaseMismatch, BaseTooSmall, DigitOutOfRange, LimitTooSmall
from .raster import GeneralizedPattern, RasterPattern

# big-decimal context: magnitudes like 11**2048 need huge exponents
_CTX = decimal.Context(prec=40, Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)

NANOSECONDS_PER_YEAR = Decimal("3.2E+16")
UNIVERSE_AGE_YEARS = Decimal("1.35E+10")


class CompiledMatcher:
    """Per-position admissible digit sets plus shift-and bit masks."""

    __slots__ = ("base", "admissible", "masks")

    def __init__(self, base: int, admissible):
        sets = tuple(frozenset(int(d) for d in s) for s in admissible)
        if not sets:
            raise ValueError("matcher needs at least one position")
        for s in sets:
            if not s:
                raise ValueError("admissible sets must be non-empty")
            if any(d < 0 or d >= base for d in s):
                raise BaseTooSmall(
                    f"digit set {sorted(s)} not representable in base {base}")
        self.base = base
        self.admissible = sets
        masks = [0] * base
        for i, s in enumerate(sets):
            bit = 1 << i
            for d in s:
                masks[d] |= bit
        self.masks = masks

    @property
    def length(self) -> int:
        return len(self.admissible)

    def admits(self, window) -> bool:
        return len(window) == self.length and all(
            d in s for d, s in zip(window, self.admissible))


def compile(pattern, base: int) -> CompiledMatcher:
    """Compile a RasterPattern or GeneralizedPattern into a matcher."""
    if base < 2:
        raise BaseTooSmall(f"base {base} < 2")
    if isinstance(pattern, GeneralizedPattern):
        if base <= pattern.max_digit:
            raise BaseTooSmall(
                f"base {base} <= max digit {pattern.max_digit} of P and Q")
        p, q = pattern.circle_set, pattern.background_set
        sets = [p if bit else q for bit in pattern.shape.bits]
    elif isinstance(pattern, RasterPattern):
        one, zero = frozenset((1,)), frozenset((0,))
        sets = [one if bit else zero for bit in pattern.bits]
    else:
        raise TypeError(f"cannot compile {type(pattern).__name__}")
    return CompiledMatcher(base, sets)


@dataclass(frozen=True)
class SearchResult:
    found: bool
    position: int | None
    window: DigitBlock | None
    context_before: tuple
    context_after: tuple
    digits_examined: int
    limit: int
    base: int


def find_first(stream: DigitStream, matcher: CompiledMatcher, limit: int,
               context_width: int = 12) -> SearchResult:
    """Smallest anchor p with digits p..p+len-1 all admissible, scanning
    one position at a time up to `limit` digits."""
    if stream.base != matcher.base:
        raise BaseMismatch(
            f"stream base {stream.base} != matcher base {matcher.base}")
    length = matcher.length
    if limit < length:
        raise LimitTooSmall(f"limit {limit} < window length {length}")
    if context_width < 0:
        raise ValueError("context width must be >= 0")

    masks = matcher.masks
    goal = 1 << (length - 1)
    state = 0
    seen: list[int] = []
    pos = 0
    anchor = None
    while pos < limit and anchor is None:
        block = stream.next_block()
        seen.extend(block.digits)
        for d in block.digits:
            pos += 1
            state = ((state << 1) | 1) & masks[d]
            if state & goal:
                anchor = pos - length + 1
                break
            if pos >= limit:
                break

    if anchor is None:
        return SearchResult(False, None, None, (), (), limit, limit, matcher.base)

    window = DigitBlock(matcher.base, anchor,
                        seen[anchor - 1:anchor - 1 + length])
    before = tuple(seen[max(0, anchor - 1 - context_width):anchor - 1])
    end = anchor + length - 1
    while len(seen) < end + context_width:
        seen.extend(stream.next_block().digits)
    after = tuple(seen[end:end + context_width])
    return SearchResult(True, anchor, window, before, after, end, limit, matcher.base)


def find_digit(stream: DigitStream, digit: int, limit: int,
               context_width: int = 12) -> SearchResult:
    """First position of a single digit; a length-1 matcher."""
    if not 0 <= digit < stream.base:
        raise DigitOutOfRange(f"digit {digit} not valid in base {stream.base}")
    matcher = CompiledMatcher(stream.base, [frozenset((digit,))])
    return find_first(stream, matcher, limit, context_width)


def find_first_chunked(constant: ConstantSpec, base: int, matcher: CompiledMatcher,
                       limit: int, chunk_size: int, block_size: int = 1024,
                       context_width: int = 12) -> SearchResult:
    """Sequential scan partitioned into position ranges, each with its own
    stream and overlapping the next by window length - 1. The minimum anchor
    over the ranges equals the plain sequential result."""
    length = matcher.length
    if limit < length:
        raise LimitTooSmall(f"limit {limit} < window length {length}")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    masks = matcher.masks
    goal = 1 << (length - 1)
    last_anchor = limit - length + 1

    anchor = None
    start = 1
    while start <= last_anchor and anchor is None:
        chunk_last = min(start + chunk_size - 1, last_anchor)
        stop = chunk_last + length - 1
        stream = open_stream(constant, base, block_size)
        stream.skip(start - 1)
        state = 0
        pos = start - 1
        while pos < stop and anchor is None:
            for d in stream.next_block().digits:
                pos += 1
                state = ((state << 1) | 1) & masks[d]
                if (state & goal) and pos - length + 1 >= start:
                    anchor = pos - length + 1
                    break
                if pos >= stop:
                    break
        start = chunk_last + 1

    if anchor is None:
        return SearchResult(False, None, None, (), (), limit, limit, base)

    # rebuild the window and context from a fresh stream over the hit range
    ctx_start = max(1, anchor - context_width)
    stream = open_stream(constant, base, block_size)
    stream.skip(ctx_start - 1)
    span = stream.take(anchor - ctx_start + length + context_width)
    window = DigitBlock(base, anchor,
                        span.digits[anchor - ctx_start:anchor - ctx_start + length])
    before = span.digits[:anchor - ctx_start]
    after = span.digits[anchor - ctx_start + length:]
    return SearchResult(True, anchor, window, before, after,
                        anchor + length - 1, limit, base)


# ---------------------------------------------------------------------------
# estimators

def expected_position(base: int, window_length: int) -> Decimal:
    """base**window_length as a Decimal with exact base-10 exponent and a
    mantissa good to well over 6 significant digits."""
    if base < 2:
        raise BaseTooSmall(f"base {base} < 2")
    if window_length < 1:
        raise ValueError("window_length must be >= 1")
    ctx = decimal.Context(prec=60, Emax=_CTX.Emax, Emin=_CTX.Emin)
    log10_base = ctx.divide(ctx.ln(Decimal(base)), ctx.ln(Decimal(10)))
    e = ctx.multiply(Decimal(window_length), log10_base)
    exponent = int(e)
    mantissa = ctx.power(Decimal(10), ctx.subtract(e, Decimal(exponent)))
    return _CTX.plus(ctx.scaleb(mantissa, Decimal(exponent)))


def class_frequency_gain(matcher: CompiledMatcher) -> int:
    """Number of distinct windows the matcher admits: the expected-frequency
    multiplier versus a plain pattern under a uniform digit model."""
    gain = 1
    for s in matcher.admissible:
        gain *= len(s)
    return gain


@dataclass(frozen=True)
class CostEstimate:
    expected_digits: Decimal
    cpu_seconds: Decimal
    cpu_years: Decimal
    universe_age_multiples: Decimal


def _as_decimal(value) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, Fraction):
        return _CTX.divide(Decimal(value.numerator), Decimal(value.denominator))
    if isinstance(value, int):
        return Decimal(value)
    return Decimal(str(value))


def cost_estimate(expected_digits, ns_per_digit=1) -> CostEstimate:
    """CPU time to examine `expected_digits` digits at `ns_per_digit` each,
    using 3.2e16 ns per year and 1.35e10 years per universe age."""
    digits = _as_decimal(expected_digits)
    ns = _as_decimal(ns_per_digit)
    if digits <= 0 or ns <= 0:
        raise ValueError("expected_digits and ns_per_digit must be positive")
    total_ns = _CTX.multiply(digits, ns)
    seconds = _CTX.divide(total_ns, Decimal("1E+9"))
    years = _CTX.divide(total_ns, NANOSECONDS_PER_YEAR)
    ages = _CTX.divide(years, UNIVERSE_AGE_YEARS)
    return CostEstimate(digits, seconds, years, ages)


# ---------------------------------------------------------------------------
# JSON record (the CLI's machine-readable output)

def compact_digit_string(digits) -> str:
    """Digit values as text; 10..255 rendered in bracketed decimal."""
    return "".join(str(d) if d < 10 else f"[{d}]" for d in digits)


def result_record(result: SearchResult, *, constant_id: str, scheme: str | None,
                  n: int | None, circle_set, background_set) -> dict:
    return {
        "constant": constant_id,
        "base": result.base,
        "scheme": scheme,
        "n": n,
        "P": sorted(circle_set) if circle_set is not None else None,
        "Q": sorted(background_set) if background_set is not None else None,
        "position": result.position,
        "window": compact_digit_string(result.window.digits) if result.found else None,
        "context_before": compact_digit_string(result.context_before),
        "context_after": compact_digit_string(result.context_after),
        "digits_examined": result.digits_examined,
        "limit": result.limit,
        "found": result.found,
    }
