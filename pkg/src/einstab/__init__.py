"""Stability of invariant Einstein metrics on compact homogeneous spaces."""

__version__ = "0.1.0"

from .space import (  # noqa: E402
    DescriptorError, DiagonalMetric, SpaceDescriptor, StructureConstants,
    descriptor_from_dict, descriptor_to_dict, load_descriptor, metric, save_descriptor,
)
from .catalog import (  # noqa: E402
    FAMILIES, CatalogError, exceptional_wallach_descriptor, flag_r2_descriptor,
    full_flag_sun_descriptor, generalized_wallach, parse_space, wallach_descriptor,
)
from .curvature import (  # noqa: E402
    curvature_report, einstein_residual, ricci_eigenvalues, scalar_curvature,
    scalar_curvature_normalized, scalar_gradient, two_rho,
)
from .lichnerowicz import (  # noqa: E402
    Kind, NotEinsteinError, StabilityVerdict, build_matrix, charpoly, classify,
    classify_from_matrix, lichnerowicz_report, rational_form, second_variation,
    tt_certificate, tt_charpoly, tt_spectrum,
)
from .solvers import (  # noqa: E402
    EinsteinSolution, Source, polish_metric, solve_auto, solve_equal_dims, solve_flag_r2,
    solve_numeric, solve_two_equal, solve_w2_general, solve_w4_quartic,
)
from .flow import FlowTrajectory, Terminal, flow, unstable_dimension_probe, write_csv  # noqa: E402
from .tables import TableReport, reproduce  # noqa: E402



def clear_caches() -> None:
    """Drop memoized Ricci eigenvalues and hyperplane bases (for cold timings)."""
    from . import curvature, lichnerowicz
    curvature._ricci_symmetric.cache_clear()
    lichnerowicz._tt_basis.cache_clear()


__all__ = [
    "clear_caches",
    "DescriptorError",
    "DiagonalMetric",
    "SpaceDescriptor",
    "StructureConstants",
    "descriptor_from_dict",
    "descriptor_to_dict",
    "load_descriptor",
    "metric",
    "save_descriptor",
    "FAMILIES",
    "CatalogError",
    "exceptional_wallach_descriptor",
    "flag_r2_descriptor",
    "full_flag_sun_descriptor",
    "generalized_wallach",
    "parse_space",
    "wallach_descriptor",
    "curvature_report",
    "einstein_residual",
    "ricci_eigenvalues",
    "scalar_curvature",
    "scalar_curvature_normalized",
    "scalar_gradient",
    "two_rho",
    "Kind",
    "NotEinsteinError",
    "StabilityVerdict",
    "build_matrix",
    "charpoly",
    "classify",
    "classify_from_matrix",
    "lichnerowicz_report",
    "rational_form",
    "second_variation",
    "tt_certificate",
    "tt_charpoly",
    "tt_spectrum",
    "EinsteinSolution",
    "Source",
    "polish_metric",
    "solve_auto",
    "solve_equal_dims",
    "solve_flag_r2",
    "solve_numeric",
    "solve_two_equal",
    "solve_w2_general",
    "solve_w4_quartic",
    "FlowTrajectory",
    "Terminal",
    "flow",
    "unstable_dimension_probe",
    "write_csv",
    "TableReport",
    "reproduce",
]
