"""Digit toolkit: constants to digits, digital n-circles, and pattern search."""

from . import bbp, normality, raster, search
from .digits import (
    ConstantSpec,
    DigitBlock,
    DigitStream,
    base_convert,
    cfrac_digits,
    concat_constant_digits,
    decimal_digits,
    digits_in_base,
    open_stream,
)
from .raster import GeneralizedPattern, RasterPattern, rasterize_center, rasterize_naive
from .search import SearchResult, find_first

__all__ = [
    "ConstantSpec",
    "DigitBlock",
    "DigitStream",
    "GeneralizedPattern",
    "RasterPattern",
    "SearchResult",
    "base_convert",
    "bbp",
    "cfrac_digits",
    "concat_constant_digits",
    "decimal_digits",
    "digits_in_base",
    "find_first",
    "normality",
    "open_stream",
    "raster",
    "rasterize_center",
    "rasterize_naive",
    "search",
]

__version__ = "0.1.0"
