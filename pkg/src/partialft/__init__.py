"""Fast partial Fourier transforms.

Fourier sums whose frequency summation range varies per output point:
exact in 1D in O(n log^2 n) via multiscale domain decomposition plus
fractional Fourier transforms, approximate in 2D in O(n^2 log^2 n) via
radial decomposition plus a butterfly sparse Fourier summation.
"""
from .butterfly import (ButterflyPlan, Expansion, GridSpec, butterfly_apply,
                        expansions_at_level, kernel_phase, plan_butterfly)
from .cutoffs import (BUILTIN_1D, BUILTIN_2D, ConstantProfile, ConstantProfile2D,
                      CutoffProfile1D, CutoffProfile2D, GaussianProfile,
                      LinearProfile, SampledCutoff1D, SampledCutoff2D,
                      SeparableSineProfile, SineProfile, TableProfile1D,
                      TableProfile2D, builtin_profile, cutoff_from_velocity,
                      read_velocity_file, sample_cutoff_1d, sample_cutoff_2d)
from .decomp import (BoxClass, Decomposition1D, Decomposition2D, DyadicBox1D,
                     DyadicBox2D, MinMaxTable, RingGroup, build_minmax,
                     classify_box_1d, classify_box_2d, decompose_1d,
                     decompose_2d, group_by_interval, ring_points)
from .errors import (InvalidArgumentError, InvalidDataError,
                     InvalidProfileError, PartialFTError)
from .frft import FrftPlan, cached_frft_plan, frft_apply, frft_plan
from .oracle import (UNDEFINED_ERROR, direct_pft_1d, direct_pft_1d_at,
                     direct_pft_2d, direct_pft_2d_at, direct_sparse_sum,
                     relative_error_sampled, sample_indices,
                     sampled_error_vs_direct_1d, sampled_error_vs_direct_2d)
from .pft1d import box_contribution, pft1d_apply
from .pft2d import pft2d_apply, ring_group_contribution
from .pointset import PointSet

__version__ = "0.1.0"
