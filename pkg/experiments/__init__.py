"""
Experiments package: divergence sweeps, inequality verifiers and the
three-dimensional cube section.
"""

from experiments.records import SweepRecord, VerdictReport, InequalityLedger
from experiments.sweeps import (
    sweep_surface_slicing,
    sweep_quermass_slicing,
    sweep_q_unbounded,
    sweep_p_limits,
)
from experiments.verifiers import (
    verify_interlacing,
    verify_extremal_sections,
    verify_positive_bound,
    verify_prop_sec71,
    verify_body_inequalities,
    verify_ellipsoid_suite,
    verify_cube_section,
    verify_random_positive_bounds,
    default_body_matrix,
    random_ellipsoid,
)
from experiments.cube_section import cube_section_perimeter_3d, cube_max_section_perimeter, cube_section_max_scan

__all__ = [
    'SweepRecord', 'VerdictReport', 'InequalityLedger',
    'sweep_surface_slicing', 'sweep_quermass_slicing', 'sweep_q_unbounded',
    'sweep_p_limits', 'verify_interlacing', 'verify_extremal_sections',
    'verify_positive_bound', 'verify_prop_sec71', 'verify_body_inequalities',
    'verify_ellipsoid_suite', 'verify_cube_section',
    'verify_random_positive_bounds', 'default_body_matrix', 'random_ellipsoid',
    'cube_section_perimeter_3d', 'cube_max_section_perimeter',
    'cube_section_max_scan',
]
