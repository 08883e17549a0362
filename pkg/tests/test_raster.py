"""Raster tests: printed reference patterns, exact-threshold behavior, and
brute-force oracles recomputed here with Fraction arithmetic."""

from fractions import Fraction

import pytest

from sagan.raster import (
    BitRaster,
    GeneralizedPattern,
    RasterPattern,
    centered_one_radius_bounds,
    check_symmetries,
    chessboard_counts_brute,
    chessboard_crossed_cells,
    chessboard_interior_cells,
    corner_crossed,
    extract_octant,
    octant_cell_count,
    octant_reconstruction_failures,
    rasterize,
    rasterize_center,
    rasterize_ellipse,
    rasterize_naive,
    reconstruct_from_octant,
)
from sagan.errors import (
    AsymmetricPattern,
    EllipseOutOfRaster,
    EvenOrTooSmallN,
    WrongOctantLength,
)


def center_scheme_oracle(n: int) -> list[int]:
    """Independent Fraction-based recomputation of the center-boundary scheme."""
    r = Fraction(n, 2)
    cx = Fraction(n, 2)

    def inside(x, y):
        dx = Fraction(2 * x - 1, 2) - cx
        dy = Fraction(2 * y - 1, 2) - cx
        return dx * dx + dy * dy <= r * r

    bits = []
    for row in range(1, n + 1):
        for col in range(1, n + 1):
            if not inside(col, row):
                bits.append(0)
                continue
            edge = row in (1, n) or col in (1, n)
            ring = edge or not all(
                inside(col + dc, row + dr)
                for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)))
            bits.append(1 if ring else 0)
    return bits


class TestNaiveScheme:
    def test_printed_small_patterns(self):
        assert rasterize_naive(1).flat() == "1"
        assert rasterize_naive(2).flat() == "1111"
        assert rasterize_naive(3).flat() == "111101111"

    def test_n7_corners_empty(self):
        pattern = rasterize_naive(7)
        for r, c in ((1, 1), (1, 7), (7, 1), (7, 7)):
            assert pattern.bit(r, c) == 0

    def test_corner_bit_threshold(self):
        # crossed exactly while n <= 4 + 2*sqrt(2)
        for n in range(1, 65):
            assert rasterize_naive(n).bit(1, 1) == (1 if n <= 6 else 0)
            assert corner_crossed(n) == (n <= 6)


class TestCenterScheme:
    def test_single_pixel(self):
        assert rasterize_center(1).flat() == "1"

    def test_two_by_two(self):
        assert rasterize_center(2).flat() == "1111"

    def test_against_fraction_oracle(self):
        for n in range(1, 33):
            assert list(rasterize_center(n).bits) == center_scheme_oracle(n)

    def test_four_by_four_ring(self):
        assert rasterize_center(4).rows() == [
            (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 0, 1), (0, 1, 1, 0)]

    def test_five_by_five_ring(self):
        assert rasterize_center(5).flat() == "0111010001100011000101110"

    def test_alternative_diameter_radius(self):
        # diameter n-1 reading: only the central 2x2 block is inside
        pattern = rasterize_center(4, Fraction(3, 2))
        assert pattern.rows() == [
            (0, 0, 0, 0), (0, 1, 1, 0), (0, 1, 1, 0), (0, 0, 0, 0)]


class TestEllipse:
    def test_degenerate_circle_matches_center_scheme(self):
        for n in (1, 2, 5, 8, 13):
            raster = rasterize_ellipse(Fraction(n, 2), Fraction(n, 2), n, n)
            assert raster.bits == rasterize_center(n).bits

    def test_unit_raster(self):
        assert rasterize_ellipse(Fraction(1, 2), Fraction(1, 2), 1, 1).flat() == "1"

    def test_four_by_three_instance_against_oracle(self):
        a, b, w, h = Fraction(4), Fraction(3), 8, 6
        raster = rasterize_ellipse(a, b, w, h)

        def inside(x, y):
            dx = Fraction(2 * x - 1, 2) - Fraction(w, 2)
            dy = Fraction(2 * y - 1, 2) - Fraction(h, 2)
            return dx * dx / (a * a) + dy * dy / (b * b) <= 1

        expected = []
        for row in range(1, h + 1):
            for col in range(1, w + 1):
                if not inside(col, row):
                    expected.append(0)
                    continue
                edge = row in (1, h) or col in (1, w)
                ring = edge or not all(
                    inside(col + dc, row + dr)
                    for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)))
                expected.append(1 if ring else 0)
        assert list(raster.bits) == expected

    def test_out_of_raster(self):
        with pytest.raises(EllipseOutOfRaster):
            rasterize_ellipse(5, 3, 8, 6)


class TestRadiusBounds:
    def test_instantiated_bounds(self):
        assert centered_one_radius_bounds(3) == (Fraction(1, 2), Fraction(1, 2))
        assert centered_one_radius_bounds(5) == (Fraction(3, 2), Fraction(5, 2))

    def test_rejects_even_or_small(self):
        for n in (1, 2, 4):
            with pytest.raises(EvenOrTooSmallN):
                centered_one_radius_bounds(n)

    def test_top_row_inside_bounds(self):
        # r = 1.55 lies in (3/2, sqrt(5/2)) for n = 5
        lower, upper_sq = centered_one_radius_bounds(5)
        r = Fraction(31, 20)
        assert lower < r and r * r < upper_sq
        top = rasterize_naive(5, r).rows()[0]
        assert top == (0, 0, 1, 0, 0)

    def test_top_row_outside_bounds(self):
        top = rasterize_naive(5, Fraction(29, 20)).rows()[0]  # below lower bound
        assert top != (0, 0, 1, 0, 0)


class TestChessboard:
    def test_smallest_board(self):
        assert chessboard_crossed_cells(1) == 4
        assert chessboard_interior_cells(1) == 0

    def test_analytic_equals_brute_force(self):
        for n in range(1, 65):
            crossed, interior, exterior = chessboard_counts_brute(n)
            assert chessboard_crossed_cells(n) == crossed
            assert chessboard_interior_cells(n) == interior
            assert crossed + interior + exterior == 4 * n * n

    def test_interior_set_dihedral_symmetry(self):
        n = 6
        rr = (2 * n - 1) ** 2
        cells = set()
        for i in range(2 * n):
            for j in range(2 * n):
                from sagan.raster import _cell_distance_range
                _, d2max = _cell_distance_range(n, i, j)
                if d2max < rr:
                    cells.add((i, j))
        size = 2 * n - 1
        for i, j in cells:
            assert (j, i) in cells
            assert (size - i, j) in cells
            assert (i, size - j) in cells


class TestSymmetries:
    def test_generated_patterns_fully_symmetric(self):
        for n in range(1, 65):
            for scheme in ("naive", "center"):
                assert check_symmetries(rasterize(n, scheme)).all_hold

    def test_asymmetric_report(self):
        report = check_symmetries(RasterPattern(2, "naive", [1, 0, 0, 0]))
        assert not report.palindrome
        assert report.transpose
        assert not report.row_mirror
        assert not report.column_mirror
        assert not report.all_hold

    def test_single_bit_pattern(self):
        for bit in (0, 1):
            assert check_symmetries(RasterPattern(1, "naive", [bit])).all_hold


class TestOctant:
    def test_small_octants(self):
        assert extract_octant(rasterize_naive(2)) == (1,)
        assert extract_octant(rasterize_naive(3)) == (1, 1, 0)

    def test_rejects_asymmetric(self):
        with pytest.raises(AsymmetricPattern):
            extract_octant(RasterPattern(2, "naive", [1, 0, 0, 0]))

    def test_wrong_length(self):
        with pytest.raises(WrongOctantLength):
            reconstruct_from_octant((1, 0), 4)

    def test_all_zero_octant(self):
        n = 4
        zero = (0,) * octant_cell_count(n)
        assert reconstruct_from_octant(zero, n).bits == (0,) * 16

    def test_roundtrip_both_schemes(self):
        for scheme in ("naive", "center"):
            for n in (1, 2, 3, 5, 8, 13, 40, 64):
                pattern = rasterize(n, scheme)
                rebuilt = reconstruct_from_octant(
                    extract_octant(pattern), n, scheme)
                assert rebuilt.bits == pattern.bits

    def test_reconstruction_passes_symmetry(self):
        octant = extract_octant(rasterize_center(9))
        assert check_symmetries(reconstruct_from_octant(octant, 9)).all_hold

    def test_no_failures_observed(self):
        assert octant_reconstruction_failures(64, "naive") == []
        assert octant_reconstruction_failures(64, "center") == []


class TestGeneralizedPattern:
    def test_degeneracy_flag(self):
        shape = rasterize_naive(3)
        clean = GeneralizedPattern(shape, frozenset({1, 7}), frozenset({0, 3}))
        assert not clean.degenerate
        overlapping = GeneralizedPattern(shape, frozenset({1}), frozenset({0, 1}))
        assert overlapping.degenerate

    def test_validation(self):
        shape = rasterize_naive(2)
        with pytest.raises(ValueError):
            GeneralizedPattern(shape, frozenset(), frozenset({0}))
        with pytest.raises(ValueError):
            GeneralizedPattern(shape, frozenset({-1}), frozenset({0}))

    def test_max_digit(self):
        shape = rasterize_naive(2)
        gp = GeneralizedPattern(shape, frozenset({1, 7}), frozenset({0, 3}))
        assert gp.max_digit == 7


class TestRendering:
    def test_flat_and_ascii(self):
        pattern = rasterize_naive(3)
        assert pattern.flat() == "111101111"
        assert pattern.ascii() == "###\n#.#\n###"
        framed = pattern.ascii(frame=True)
        assert framed.splitlines()[0] == "....."
        assert len(framed.splitlines()) == 5

    def test_bitraster_ascii(self):
        raster = BitRaster(2, 1, [1, 0])
        assert raster.ascii() == "#."
        assert raster.flat() == "10"
