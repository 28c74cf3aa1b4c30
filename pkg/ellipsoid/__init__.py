"""
Ellipsoid package: exact geometry of centered ellipsoids and their
quermassintegrals.
"""

from ellipsoid.ellipsoid import (
    Ellipsoid,
    RevolutionEllipsoid,
    volume,
    section,
    projection,
    ellipse_perimeter,
)
from ellipsoid.quermass import (
    surface_rivin,
    surface_area,
    mean_width,
    mean_norm,
    quermass_kubota,
    quermass_revolution,
    quermass,
    q_k,
    dual_affine_quermass,
    dual_affine_ball_value,
    avg_section_surfaceless,
    kz_dual,
)
from ellipsoid.extremal import ScanReport, extremal_section_scan, coordinate_sections, ratio_scan

__all__ = [
    'Ellipsoid', 'RevolutionEllipsoid', 'volume', 'section', 'projection',
    'ellipse_perimeter', 'surface_rivin', 'surface_area', 'mean_width',
    'mean_norm', 'quermass_kubota', 'quermass_revolution', 'quermass', 'q_k',
    'dual_affine_quermass', 'dual_affine_ball_value',
    'avg_section_surfaceless', 'kz_dual', 'ScanReport',
    'extremal_section_scan', 'coordinate_sections', 'ratio_scan',
]
