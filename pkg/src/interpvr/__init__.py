"""Short variance, long variance and variance ratios of segmented linearly
interpolated time series: closed forms, simulation and estimation."""

from .analytic import (
    AgSums,
    ArmaMoments,
    VarianceSummary,
    ag_sums,
    arma_moments,
    arma_vy_threshold,
    long_var,
    long_var_phase,
    short_var,
    variance_ratio,
    variance_shrinkage,
    vr_closed_form,
)
from .dgp import DgpSpec, Model, SegmentedSeries, Variant, benchmarks, simulate
from .errors import DegenerateSeriesError, InsufficientDataError, InvalidSpecError
from .estimate import McReport, diff_var, mc_compare, phase_vars, vr_hat
from .grids import Family, ParamGrid, surface, table
from .interp import from_segment_index, interpolate, to_segment_index

__version__ = "0.1.0"
