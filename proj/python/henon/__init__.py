"""Python access to the Hénon map engine."""

from ._henon import (
    BranchError,
    HenonMap,
    MapSpecError,
    Point,
    boettcher_plus,
    filtration_radius,
    green_minus,
    green_plus,
    in_K_plus,
    leading_constants,
    render_ppm,
    run_cli,
    sha256_hex,
    verify_functorial,
)

__all__ = [
    "BranchError",
    "HenonMap",
    "MapSpecError",
    "Point",
    "boettcher_plus",
    "filtration_radius",
    "green_minus",
    "green_plus",
    "in_K_plus",
    "leading_constants",
    "render_ppm",
    "run_cli",
    "sha256_hex",
    "verify_functorial",
]
