"""Static path planning trajectories for mobile-anchor WSN localization."""

from .geometry import Point2D, Polyline, Rect, bounding_box, collinear, point_at_arclength, polyline_length
from .models import ModelParams, ModelStats, Trajectory, compute_stats, registry_get, registry_list

__version__ = "0.1.0"

__all__ = [
    "ModelParams", "ModelStats", "Point2D", "Polyline", "Rect", "Trajectory",
    "bounding_box", "collinear", "compute_stats", "point_at_arclength",
    "polyline_length", "registry_get", "registry_list",
]
