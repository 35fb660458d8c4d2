"""Liquid plano-convex lens toolkit.

Spherical-cap geometry, thin-lens focal model, exact meridional ray tracing
and pump-volume calibration. Lengths in mm, volumes in mm^3, angles in degrees
at this interface.
"""

from ._liquilens import (
    DEFAULT_VOLUME_SCALE,
    CapState,
    ComparisonRow,
    ComparisonTable,
    CurvePoint,
    EndpointDiscrepancy,
    FocalRange,
    LinearFit,
    MeasurementPoint,
    MeasurementSeries,
    Prescription,
    SimulationResult,
    SpotMetrics,
    VolumeCalibration,
    best_focus,
    compare,
    fit_volume_model,
    focal_to_volume,
    hemisphere_focal_bound,
    hemisphere_volume,
    linear_fit,
    load_measurements,
    paraxial_efl,
    plano_convex_focal,
    predict_theta,
    resolve_cap,
    sample_measurements,
    sample_reported_focal_range,
    simulate,
    theoretical_curve,
    volume_to_focal,
)

__all__ = [
    "DEFAULT_VOLUME_SCALE",
    "CapState",
    "ComparisonRow",
    "ComparisonTable",
    "CurvePoint",
    "EndpointDiscrepancy",
    "FocalRange",
    "LinearFit",
    "MeasurementPoint",
    "MeasurementSeries",
    "Prescription",
    "SimulationResult",
    "SpotMetrics",
    "VolumeCalibration",
    "best_focus",
    "compare",
    "fit_volume_model",
    "focal_to_volume",
    "hemisphere_focal_bound",
    "hemisphere_volume",
    "linear_fit",
    "load_measurements",
    "paraxial_efl",
    "plano_convex_focal",
    "predict_theta",
    "resolve_cap",
    "sample_measurements",
    "sample_reported_focal_range",
    "simulate",
    "theoretical_curve",
    "volume_to_focal",
]

__version__ = "0.1.0"
