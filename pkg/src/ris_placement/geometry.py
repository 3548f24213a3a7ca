"""Element positions for planar antenna arrays and rectangular RIS panels.

All coordinates are in meters. Arrays and panels lie in planes of constant z
with their normals along the z-axis. Every function here is pure and every
type is immutable, so geometry objects can be shared freely across workers.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SphericalPoint",
    "CartesianPoint",
    "PlanarArray",
    "RisPanel",
    "spherical_to_cartesian",
    "array_element_positions",
    "ris_element_positions",
    "ris_centroid",
    "fresnel_bounds",
    "in_fresnel_zone",
]


@dataclass(frozen=True)
class SphericalPoint:
    """Point given as (distance from origin, polar angle, azimuth angle).

    Angles in radians: polar in [0, pi] measured from the +z axis, azimuth
    in [0, 2*pi) measured from the +x axis in the xy-plane.
    """

    distance: float
    polar: float
    azimuth: float

    def __post_init__(self):
        if self.distance < 0:
            raise ValueError(f"distance must be >= 0, got {self.distance}")
        if not 0 <= self.polar <= np.pi:
            raise ValueError(f"polar angle must lie in [0, pi], got {self.polar}")
        if not 0 <= self.azimuth < 2 * np.pi:
            raise ValueError(f"azimuth must lie in [0, 2*pi), got {self.azimuth}")


@dataclass(frozen=True)
class CartesianPoint:
    """Point in Cartesian coordinates (meters)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(np.isfinite([self.x, self.y, self.z])):
            raise ValueError(f"coordinates must be finite, got {(self.x, self.y, self.z)}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class PlanarArray:
    """Uniform rectangular antenna array in a plane of constant z.

    ``rows`` runs along y and ``cols`` along x, both with pitch ``spacing``.
    The grid is centered on ``center``: the mean of the element positions
    equals the aperture center exactly.
    """

    rows: int
    cols: int
    spacing: float
    center: CartesianPoint

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"rows and cols must be positive, got {self.rows}x{self.cols}")
        if self.spacing <= 0:
            raise ValueError(f"element spacing must be > 0, got {self.spacing}")

    @property
    def size(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class RisPanel:
    """Rectangular grid of nx-by-ny transmissive elements.

    Element (a, b) has width ``element_width`` (x), length ``element_length``
    (y) and its center sits at (a*(element_width+gap_x), b*(element_length+gap_y), z),
    so element (0, 0) is centered on the z-axis. ``beta`` is the per-element
    unit-magnitude transmission profile in flattened order; ``None`` means
    all-ones. ``beta`` is excluded from equality/hash: two panels are equal
    when their geometry is.
    """

    nx: int
    ny: int
    element_width: float
    element_length: float
    gap_x: float
    gap_y: float
    z: float
    beta: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"element counts must be positive, got {self.nx}x{self.ny}")
        if self.element_width <= 0 or self.element_length <= 0:
            raise ValueError("element dimensions must be > 0")
        if self.gap_x < 0 or self.gap_y < 0:
            raise ValueError("element gaps must be >= 0")
        if self.beta is not None:
            beta = np.asarray(self.beta, dtype=complex)
            if beta.shape != (self.size,):
                raise ValueError(f"beta must have {self.size} entries, got shape {beta.shape}")
            if np.any(np.abs(np.abs(beta) - 1.0) > 1e-9):
                raise ValueError("beta entries must have unit magnitude")
            object.__setattr__(self, "beta", beta)

    @property
    def size(self) -> int:
        return self.nx * self.ny

    @property
    def pitch_x(self) -> float:
        return self.element_width + self.gap_x

    @property
    def pitch_y(self) -> float:
        return self.element_length + self.gap_y

    @property
    def aperture(self) -> float:
        """Largest physical side length of the panel."""
        side_x = self.nx * self.element_width + (self.nx - 1) * self.gap_x
        side_y = self.ny * self.element_length + (self.ny - 1) * self.gap_y
        return max(side_x, side_y)

    def phase_profile(self) -> np.ndarray:
        """Current transmission coefficients (all-ones when beta is unset)."""
        if self.beta is None:
            return np.ones(self.size, dtype=complex)
        return self.beta


def spherical_to_cartesian(point: SphericalPoint) -> CartesianPoint:
    """Convert a spherical point to Cartesian coordinates.

    Returns (D*cos(azimuth)*sin(polar), D*sin(azimuth)*sin(polar), D*cos(polar)).
    """
    d, th, ph = point.distance, point.polar, point.azimuth
    return CartesianPoint(
        d * np.cos(ph) * np.sin(th),
        d * np.sin(ph) * np.sin(th),
        d * np.cos(th),
    )


def array_element_positions(arr: PlanarArray) -> np.ndarray:
    """Positions of all antenna elements of a planar array.

    Returns an (rows*cols, 3) array in row-major order: element (i, j) maps
    to index i*cols + j, with x = center.x + (j - (cols-1)/2)*spacing and
    y = center.y + (i - (rows-1)/2)*spacing at the plane z = center.z.
    """
    xs = (np.arange(arr.cols) - (arr.cols - 1) / 2.0) * arr.spacing + arr.center.x
    ys = (np.arange(arr.rows) - (arr.rows - 1) / 2.0) * arr.spacing + arr.center.y
    gx, gy = np.meshgrid(xs, ys)  # gy varies along rows
    out = np.empty((arr.size, 3))
    out[:, 0] = gx.ravel()
    out[:, 1] = gy.ravel()
    out[:, 2] = arr.center.z
    return out


def ris_element_positions(panel: RisPanel) -> np.ndarray:
    """Center positions of all RIS elements.

    Returns a (panel.size, 3) array; element (a, b) sits at
    (a*pitch_x, b*pitch_y, panel.z) and maps to flat index w = a*ny + b.
    The same flattening order is used everywhere a phase profile appears.
    """
    a = np.repeat(np.arange(panel.nx), panel.ny)
    b = np.tile(np.arange(panel.ny), panel.nx)
    out = np.empty((panel.size, 3))
    out[:, 0] = a * panel.pitch_x
    out[:, 1] = b * panel.pitch_y
    out[:, 2] = panel.z
    return out


def ris_centroid(panel: RisPanel) -> np.ndarray:
    """Centroid of the element grid, ((nx-1)/2*pitch_x, (ny-1)/2*pitch_y, z)."""
    return np.array(
        [(panel.nx - 1) / 2.0 * panel.pitch_x, (panel.ny - 1) / 2.0 * panel.pitch_y, panel.z]
    )


def fresnel_bounds(panel: RisPanel, wavelength: float) -> tuple[float, float]:
    """Radiating near-field distance band of the panel.

    Returns (0.62*sqrt(L^3/wavelength), 2*L^2/wavelength) where L is the
    panel's largest physical side length.
    """
    if wavelength <= 0:
        raise ValueError(f"wavelength must be > 0, got {wavelength}")
    side = panel.aperture
    return 0.62 * np.sqrt(side**3 / wavelength), 2.0 * side**2 / wavelength


def _as_xyz(point) -> np.ndarray:
    if isinstance(point, CartesianPoint):
        return point.as_array()
    return np.asarray(point, dtype=float)


def in_fresnel_zone(panel: RisPanel, point, wavelength: float) -> bool:
    """Whether a point lies in the panel's radiating near field.

    Distance is measured from the panel centroid; the band is open at the
    lower bound and closed at the upper bound.
    """
    lower, upper = fresnel_bounds(panel, wavelength)
    distance = float(np.linalg.norm(_as_xyz(point) - ris_centroid(panel)))
    return lower < distance <= upper
