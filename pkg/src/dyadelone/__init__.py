"""Exact construction and analysis of Delone sets in the 2-adic numbers.

The package builds well placed point sets of prescribed patch counting
entropy by a stagewise extension procedure, and provides exact patch
statistics, blurred patch representations and finite volume diffraction
diagnostics for them.
"""

from .balls import coset_rep, haar, in_ball, transversal
from .construct import (
    BuildResult,
    ExtensionStep,
    StageSchedule,
    StageSet,
    build,
    extend,
    min_r,
    schedule,
    spike_steps,
)
from .diffraction import (
    Autocorrelation,
    Spectrum,
    almost_period_defect,
    autocorr,
    pp_mass,
    randomized_control,
    spectrum,
)
from .dyadic import (
    ONE,
    ZERO,
    Dyadic,
    abs2,
    abs_real,
    cmp_real,
    dyadic_from_json,
    dyadic_to_json,
    from_int,
    normalize,
    real_value,
    val2,
)
from .patches import (
    EntropyRow,
    Patch,
    entropy_series,
    frequency,
    frequency_sorted,
    make_patch,
    patch_at,
    patch_map,
    patch_set,
)
from .patchrep import (
    PatRow,
    RepResult,
    min_representation,
    pat_series,
    v_close,
)
from .pointset import (
    DeloneReport,
    FinitePointSet,
    comb,
    delone_check,
    delta_v,
    fps_from_json,
    fps_to_json,
    model_set,
    point_set,
    random_well_placed,
    well_placed,
)
from .verify import ExtensionReport, verify_extension

__version__ = "0.1.0"

__all__ = [
    "Autocorrelation",
    "BuildResult",
    "DeloneReport",
    "Dyadic",
    "EntropyRow",
    "ExtensionReport",
    "ExtensionStep",
    "FinitePointSet",
    "ONE",
    "PatRow",
    "Patch",
    "RepResult",
    "Spectrum",
    "StageSchedule",
    "StageSet",
    "ZERO",
    "abs2",
    "abs_real",
    "almost_period_defect",
    "autocorr",
    "build",
    "cmp_real",
    "comb",
    "coset_rep",
    "delone_check",
    "delta_v",
    "dyadic_from_json",
    "dyadic_to_json",
    "entropy_series",
    "extend",
    "frequency",
    "frequency_sorted",
    "from_int",
    "fps_from_json",
    "fps_to_json",
    "haar",
    "in_ball",
    "make_patch",
    "min_r",
    "min_representation",
    "model_set",
    "normalize",
    "pat_series",
    "patch_at",
    "patch_map",
    "patch_set",
    "point_set",
    "pp_mass",
    "random_well_placed",
    "randomized_control",
    "real_value",
    "schedule",
    "spectrum",
    "spike_steps",
    "transversal",
    "v_close",
    "val2",
    "verify_extension",
    "well_placed",
]
