"""Variance-ratio grids over (alpha, theta) for ARMA(1,1) levels and for a
random walk with ARMA(1,1) increments."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .analytic import vr_array
from .dgp import Model, Variant
from .errors import InvalidSpecError

TABLE_AXIS = (0.99, 0.90, 0.75, 0.50, 0.10, 0.00, -0.10, -0.50, -0.75, -0.90, -0.99)
TABLE_S = (4, 10)


class Family(str, enum.Enum):
    STATIONARY = "stationary"
    NONSTATIONARY = "nonstationary"

    @property
    def model(self) -> Model:
        return Model.ARMA11 if self is Family.STATIONARY else Model.RW_ARMA11


@dataclass(frozen=True, eq=False)
class ParamGrid:
    """Rows index alpha, columns index theta."""

    family: Family
    variant: Variant
    s: int
    alphas: np.ndarray
    thetas: np.ndarray
    cells: np.ndarray
    na_mask: np.ndarray

    def __post_init__(self):
        shape = (len(self.alphas), len(self.thetas))
        if self.cells.shape != shape or self.na_mask.shape != shape:
            raise ValueError("cell matrix does not match axes")

    def rounded(self, decimals: int = 2) -> np.ndarray:
        return round_half_away(self.cells, decimals)

    def rows(self):
        """(alpha, theta, value or None) in row-major order."""
        for r, a in enumerate(self.alphas):
            for c, t in enumerate(self.thetas):
                yield float(a), float(t), None if self.na_mask[r, c] else float(self.cells[r, c])


def round_half_away(x, decimals: int = 2) -> np.ndarray:
    """Round to ``decimals`` places, ties away from zero, using the exact
    decimal expansion of each double."""
    q = Decimal(1).scaleb(-decimals)
    flat = [float(Decimal(float(v)).quantize(q, rounding=ROUND_HALF_UP)) for v in np.ravel(x)]
    return np.array(flat).reshape(np.shape(x))


def _evaluate(family: Family, variant: Variant, s: int, alphas, thetas) -> np.ndarray:
    A, T = np.meshgrid(alphas, thetas, indexing="ij")
    return vr_array(family.model, variant, s, A, T)


def table(family, s: int) -> tuple[ParamGrid, ParamGrid]:
    """Original and interpolated ratios on the fixed 11 x 11 axis.

    For the stationary family the white-noise cell (0, 0) is computed but
    flagged in ``na_mask``.
    """
    family = Family(family)
    if s not in TABLE_S:
        raise InvalidSpecError(f"table s must be one of {TABLE_S}, got {s}")
    axis = np.array(TABLE_AXIS)
    mask = np.zeros((len(axis), len(axis)), dtype=bool)
    if family is Family.STATIONARY:
        mask[axis == 0.0, axis == 0.0] = True
    out = []
    for variant in (Variant.ORIGINAL, Variant.INTERPOLATED):
        cells = _evaluate(family, variant, s, axis, axis)
        out.append(ParamGrid(family, variant, s, axis.copy(), axis.copy(), cells, mask.copy()))
    return out[0], out[1]


def surface_axis(n: int, margin: float) -> np.ndarray:
    """``n`` evenly spaced points on [-1 + margin, 1 - margin], symmetric
    about zero to the last bit."""
    step = 2.0 * (1.0 - margin) / (n - 1)
    return (np.arange(n) - (n - 1) / 2) * step


def surface(family, variant, s: int, n: int = 99, margin: float = 0.01) -> ParamGrid:
    family = Family(family)
    variant = Variant(variant)
    if int(n) != n or n < 3:
        raise InvalidSpecError(f"grid size must be an integer >= 3, got {n}")
    if not 0 < margin < 0.5:
        raise InvalidSpecError(f"margin must be in (0, 0.5), got {margin}")
    axis = surface_axis(int(n), margin)
    cells = _evaluate(family, variant, s, axis, axis)
    if not (np.all(np.isfinite(cells)) and np.all(cells > 0)):
        raise ArithmeticError("non-finite or non-positive cell in surface")
    mask = np.zeros(cells.shape, dtype=bool)
    return ParamGrid(family, variant, s, axis.copy(), axis.copy(), cells, mask)
