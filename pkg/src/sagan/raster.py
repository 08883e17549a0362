"""Digital n-circles: rasterization schemes, symmetries, and cell counting.

Every geometric predicate is evaluated in exact integer or rational
arithmetic on a half-unit lattice; no floating point enters any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    AsymmetricPattern,
    EllipseOutOfRaster,
    EvenOrTooSmallN,
    WrongOctantLength,
)

NAIVE = "naive"
CENTER = "center"
SCHEMES = (NAIVE, CENTER)


class RasterPattern:
    """n x n bit raster flattened row major, top row first."""

    __slots__ = ("n", "scheme", "bits")

    def __init__(self, n: int, scheme: str, bits):
        if scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {scheme!r}")
        bits = tuple(int(b) for b in bits)
        if len(bits) != n * n:
            raise ValueError(f"expected {n * n} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        self.n = n
        self.scheme = scheme
        self.bits = bits

    def bit(self, row: int, col: int) -> int:
        """1-indexed access, row 1 = top."""
        n = self.n
        if not (1 <= row <= n and 1 <= col <= n):
            raise IndexError((row, col))
        return self.bits[(row - 1) * n + (col - 1)]

    def flat(self) -> str:
        return "".join(str(b) for b in self.bits)

    def rows(self) -> list[tuple[int, ...]]:
        n = self.n
        return [self.bits[i * n:(i + 1) * n] for i in range(n)]

    def ascii(self, frame: bool = False, on: str = "#", off: str = ".") -> str:
        rows = [("".join(on if b else off for b in row)) for row in self.rows()]
        if frame:
            width = self.n + 2
            rows = [off * width] + [off + row + off for row in rows] + [off * width]
        return "\n".join(rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RasterPattern) and self.n == other.n
                and self.scheme == other.scheme and self.bits == other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.scheme, self.bits))

    def __repr__(self) -> str:
        return f"RasterPattern(n={self.n}, scheme={self.scheme!r}, flat={self.flat()!r})"


class BitRaster:
    """Plain width x height bit raster (ellipse digitization output)."""

    __slots__ = ("width", "height", "bits")

    def __init__(self, width: int, height: int, bits):
        bits = tuple(int(b) for b in bits)
        if len(bits) != width * height:
            raise ValueError("bit count does not match raster size")
        self.width = width
        self.height = height
        self.bits = bits

    def bit(self, row: int, col: int) -> int:
        return self.bits[(row - 1) * self.width + (col - 1)]

    def flat(self) -> str:
        return "".join(str(b) for b in self.bits)

    def ascii(self, on: str = "#", off: str = ".") -> str:
        w = self.width
        return "\n".join(
            "".join(on if b else off for b in self.bits[i * w:(i + 1) * w])
            for i in range(self.height))


@dataclass(frozen=True)
class GeneralizedPattern:
    """Raster shape plus digit classes: circle cells draw from P, background from Q."""

    shape: RasterPattern
    circle_set: frozenset
    background_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "circle_set", frozenset(int(d) for d in self.circle_set))
        object.__setattr__(self, "background_set", frozenset(int(d) for d in self.background_set))
        if not self.circle_set or not self.background_set:
            raise ValueError("P and Q must be non-empty")
        if any(d < 0 for d in self.circle_set | self.background_set):
            raise ValueError("digit classes must be non-negative")

    @property
    def degenerate(self) -> bool:
        """True when P and Q overlap; such patterns carry less information."""
        return bool(self.circle_set & self.background_set)

    @property
    def max_digit(self) -> int:
        return max(self.circle_set | self.background_set)


# ---------------------------------------------------------------------------
# exact predicates on the half-unit lattice
#
# With radius ru/rv, all coordinates are scaled by 2*rv: the raster center
# (n/2, n/2) becomes (n*rv, n*rv), pixel edges land on even multiples of rv,
# and the radius becomes 2*ru. Squared distances are then plain integers.

def _scaled(n: int, radius: Fraction | None):
    r = Fraction(n, 2) if radius is None else Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    rv = r.denominator
    return n * rv, 2 * rv, 2 * r.numerator  # center coord, pixel size, radius


def _square_crossed(cx: int, step: int, rr: int, row: int, col: int) -> bool:
    """Does the circle meet the closed unit square at (row, col)?"""
    lo_x, hi_x = (col - 1) * step, col * step
    lo_y, hi_y = (row - 1) * step, row * step
    dx_lo, dx_hi = abs(cx - lo_x), abs(cx - hi_x)
    dy_lo, dy_hi = abs(cx - lo_y), abs(cx - hi_y)
    dx_min = 0 if lo_x <= cx <= hi_x else min(dx_lo, dx_hi)
    dy_min = 0 if lo_y <= cx <= hi_y else min(dy_lo, dy_hi)
    dx_max = max(dx_lo, dx_hi)
    dy_max = max(dy_lo, dy_hi)
    rr2 = rr * rr
    return dx_min * dx_min + dy_min * dy_min <= rr2 <= dx_max * dx_max + dy_max * dy_max


def rasterize_naive(n: int, radius: Fraction | None = None) -> RasterPattern:
    """Mark every pixel the circle of diameter n (or 2*radius) crosses."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cx, step, rr = _scaled(n, radius)
    rr2 = rr * rr
    # per-axis min/max squared distances, identical for rows and columns
    mins, maxs = [0] * (n + 1), [0] * (n + 1)
    for c in range(1, n + 1):
        lo, hi = (c - 1) * step, c * step
        d_lo, d_hi = abs(cx - lo), abs(cx - hi)
        mins[c] = 0 if lo <= cx <= hi else min(d_lo, d_hi) ** 2
        maxs[c] = max(d_lo, d_hi) ** 2
    bits = []
    for r in range(1, n + 1):
        ymin, ymax = mins[r], maxs[r]
        row = [1 if mins[c] + ymin <= rr2 <= maxs[c] + ymax else 0
               for c in range(1, n + 1)]
        bits.extend(row)
    return RasterPattern(n, NAIVE, bits)


def _inside_matrix(n: int, radius: Fraction | None) -> list[list[bool]]:
    cx, step, rr = _scaled(n, radius)
    rr2 = rr * rr
    # pixel center (c - 1/2) scaled: (2c - 1) * step / 2; step is even here
    half = step // 2
    d2 = [0] * (n + 1)
    for c in range(1, n + 1):
        d = (2 * c - 1) * half - cx
        d2[c] = d * d
    return [[d2[c] + d2[r] <= rr2 for c in range(1, n + 1)] for r in range(1, n + 1)]


def rasterize_center(n: int, radius: Fraction | None = None) -> RasterPattern:
    """Boundary ring of the pixels whose centers lie inside the circle.

    A pixel gets a 1 when it is inside and touches the outside: one of its
    4-neighbors is outside, or it sits on the raster border.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    inside = _inside_matrix(n, radius)
    bits = []
    for r in range(n):
        for c in range(n):
            if not inside[r][c]:
                bits.append(0)
                continue
            on_border = r == 0 or c == 0 or r == n - 1 or c == n - 1
            exposed = on_border or not (inside[r - 1][c] and inside[r + 1][c]
                                        and inside[r][c - 1] and inside[r][c + 1])
            bits.append(1 if exposed else 0)
    return RasterPattern(n, CENTER, bits)


def rasterize_ellipse(semi_axis_a, semi_axis_b, width: int, height: int) -> BitRaster:
    """Center-boundary digitization of an axis-aligned ellipse."""
    a, b = Fraction(semi_axis_a), Fraction(semi_axis_b)
    if a <= 0 or b <= 0:
        raise ValueError("semi-axes must be positive")
    if width < 1 or height < 1:
        raise ValueError("raster must be at least 1 x 1")
    if a > Fraction(width, 2) or b > Fraction(height, 2):
        raise EllipseOutOfRaster(
            f"ellipse {a} x {b} exceeds raster {width} x {height}")
    cx, cy = Fraction(width, 2), Fraction(height, 2)
    a2, b2 = a * a, b * b

    def is_inside(x: int, y: int) -> bool:
        dx = Fraction(2 * x - 1, 2) - cx
        dy = Fraction(2 * y - 1, 2) - cy
        return dx * dx / a2 + dy * dy / b2 <= 1

    inside = [[is_inside(x, y) for x in range(1, width + 1)]
              for y in range(1, height + 1)]
    bits = []
    for r in range(height):
        for c in range(width):
            if not inside[r][c]:
                bits.append(0)
                continue
            on_border = r == 0 or c == 0 or r == height - 1 or c == width - 1
            exposed = on_border or not (inside[r - 1][c] and inside[r + 1][c]
                                        and inside[r][c - 1] and inside[r][c + 1])
            bits.append(1 if exposed else 0)
    return BitRaster(width, height, bits)


def corner_crossed(n: int) -> bool:
    """Does the diameter-n circle cross the corner pixel of the n x n raster?

    True exactly for n <= 6 (threshold 4 + 2*sqrt(2) ~ 6.83), and for n = 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cx, step, rr = _scaled(n, None)
    return _square_crossed(cx, step, rr, 1, 1)


def centered_one_radius_bounds(n: int):
    """Open radius interval giving a single centered 1 in the top raster row.

    Returns (lower, upper_squared): radii r with lower < r and
    r**2 < upper_squared produce top row 0...010...0 in the naive scheme.
    """
    if n < 3 or n % 2 == 0:
        raise EvenOrTooSmallN("requires odd n >= 3")
    lower = Fraction(n, 2) - 1
    return lower, lower * lower + Fraction(1, 4)


# ---------------------------------------------------------------------------
# chessboard counts (circle of diameter 2n-1 on a 2n x 2n board)

def chessboard_crossed_cells(n: int) -> int:
    """Cells containing an arc segment, from lattice-line crossing counts.

    The circle meets no cell corner, so every visited cell is entered
    through exactly one grid-line crossing.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    crossings = 0
    # interior grid lines k = 1 .. 2n-1; the circle crosses line k twice
    # when its distance |k - n| from the center is below the radius
    for k in range(1, 2 * n):
        if 2 * abs(k - n) < 2 * n - 1:
            crossings += 2
    return 2 * crossings  # vertical plus horizontal families


def chessboard_interior_cells(n: int) -> int:
    """Cells lying entirely inside the circle: 4 * sum of per-row counts."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rr = (2 * n - 1) ** 2
    total = 0
    for k in range(1, n):
        total += isqrt(rr - 4 * k * k) // 2
    return 4 * total


def _cell_distance_range(n: int, i: int, j: int):
    """Min and max squared distance (x4) from board center to cell (i, j)."""
    cx = 2 * n  # center and radius scaled by 2
    lo_x, hi_x = 2 * i, 2 * i + 2
    lo_y, hi_y = 2 * j, 2 * j + 2
    dx_lo, dx_hi = abs(cx - lo_x), abs(cx - hi_x)
    dy_lo, dy_hi = abs(cx - lo_y), abs(cx - hi_y)
    dx_min = 0 if lo_x <= cx <= hi_x else min(dx_lo, dx_hi)
    dy_min = 0 if lo_y <= cx <= hi_y else min(dy_lo, dy_hi)
    d2_min = dx_min * dx_min + dy_min * dy_min
    d2_max = max(dx_lo, dx_hi) ** 2 + max(dy_lo, dy_hi) ** 2
    return d2_min, d2_max


def chessboard_counts_brute(n: int) -> tuple[int, int, int]:
    """(crossed, interior, exterior) by per-cell distance tests; the oracle."""
    rr = (2 * n - 1) ** 2
    crossed = interior = exterior = 0
    for i in range(2 * n):
        for j in range(2 * n):
            d2_min, d2_max = _cell_distance_range(n, i, j)
            if d2_max < rr:
                interior += 1
            elif d2_min > rr:
                exterior += 1
            else:
                crossed += 1
    return crossed, interior, exterior


# ---------------------------------------------------------------------------
# symmetry machinery

@dataclass(frozen=True)
class SymmetryReport:
    palindrome: bool
    transpose: bool
    row_mirror: bool
    column_mirror: bool

    @property
    def all_hold(self) -> bool:
        return self.palindrome and self.transpose and self.row_mirror and self.column_mirror


def check_symmetries(pattern: RasterPattern) -> SymmetryReport:
    n, bits = pattern.n, pattern.bits
    palindrome = bits == bits[::-1]
    transpose = all(bits[r * n + c] == bits[c * n + r]
                    for r in range(n) for c in range(r + 1, n))
    row_mirror = all(bits[r * n + c] == bits[r * n + (n - 1 - c)]
                     for r in range(n) for c in range(n // 2))
    column_mirror = all(bits[r * n + c] == bits[(n - 1 - r) * n + c]
                        for r in range(n // 2) for c in range(n))
    return SymmetryReport(palindrome, transpose, row_mirror, column_mirror)


def _octant_cells(n: int) -> list[tuple[int, int]]:
    """Fundamental half-quadrant: cells (r, c) with r <= c <= ceil(n/2)."""
    top = (n + 1) // 2
    return [(r, c) for r in range(1, top + 1) for c in range(r, top + 1)]


def octant_cell_count(n: int) -> int:
    top = (n + 1) // 2
    return top * (top + 1) // 2


def extract_octant(pattern: RasterPattern) -> tuple[int, ...]:
    """Minimal generating cells under the order-8 dihedral group."""
    if not check_symmetries(pattern).all_hold:
        raise AsymmetricPattern("pattern lacks full dihedral symmetry")
    return tuple(pattern.bit(r, c) for r, c in _octant_cells(pattern.n))


def reconstruct_from_octant(octant, n: int, scheme: str = CENTER) -> RasterPattern:
    """Fill all n*n cells from the half-quadrant by the 8 symmetry maps."""
    octant = tuple(int(b) for b in octant)
    cells = _octant_cells(n)
    if len(octant) != len(cells):
        raise WrongOctantLength(
            f"expected {len(cells)} octant bits for n={n}, got {len(octant)}")
    index = {cell: k for k, cell in enumerate(cells)}
    bits = []
    for r in range(1, n + 1):
        rm = min(r, n + 1 - r)
        for c in range(1, n + 1):
            cm = min(c, n + 1 - c)
            key = (rm, cm) if rm <= cm else (cm, rm)
            bits.append(octant[index[key]])
    return RasterPattern(n, scheme, bits)


def rasterize(n: int, scheme: str, radius: Fraction | None = None) -> RasterPattern:
    if scheme == NAIVE:
        return rasterize_naive(n, radius)
    if scheme == CENTER:
        return rasterize_center(n, radius)
    raise ValueError(f"unknown scheme {scheme!r}")


def octant_reconstruction_failures(max_n: int, scheme: str = CENTER) -> list[int]:
    """n values (up to max_n) where octant thinning does not round trip.

    Kept as an empirical probe; no failing n has been observed.
    """
    bad = []
    for n in range(1, max_n + 1):
        pattern = rasterize(n, scheme)
        try:
            rebuilt = reconstruct_from_octant(extract_octant(pattern), n, scheme)
        except (AsymmetricPattern, WrongOctantLength):
            bad.append(n)
            continue
        if rebuilt.bits != pattern.bits:
            bad.append(n)
    return bad
