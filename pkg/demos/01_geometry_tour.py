"""Panels, antenna arrays, and the Fresnel zone of a transmissive surface."""

import numpy as np

from ris_placement import (
    CartesianPoint,
    PlanarArray,
    RisPanel,
    SphericalPoint,
    array_element_positions,
    fresnel_bounds,
    in_fresnel_zone,
    ris_centroid,
    ris_element_positions,
    spherical_to_cartesian,
)

wavelength = 299792458.0 / 300e9
print(f"wavelength at 300 GHz: {wavelength * 1e3:.4f} mm")

# A 4x4 panel of half-wavelength elements with small gaps, in the z=0 plane.
panel = RisPanel(nx=4, ny=4,
                 element_width=0.5 * wavelength, element_length=0.5 * wavelength,
                 gap_x=0.125 * wavelength, gap_y=0.125 * wavelength, z=0.0)
positions = ris_element_positions(panel)
print(f"\npanel: {panel.nx}x{panel.ny} elements, pitch "
      f"{panel.pitch_x / wavelength:.3f} wavelengths, aperture "
      f"{panel.aperture / wavelength:.3f} wavelengths")
print("first three element centers [m]:")
print(positions[:3])
print("centroid:", ris_centroid(panel))

# Element (a, b) sits at (a*pitch_x, b*pitch_y, z); flattened index is a*ny+b.
a, b = 2, 1
print(f"\nelement ({a}, {b}) -> flat index {a * panel.ny + b}, "
      f"position {positions[a * panel.ny + b]}")

# Antenna arrays are uniform rectangular grids centered on a point.
tx = PlanarArray(rows=2, cols=2, spacing=2.0 * wavelength,
                 center=CartesianPoint(0.0, 0.0, -0.05))
tx_pos = array_element_positions(tx)
print(f"\n2x2 tx array centered at z={tx.center.z}, spacing 2 wavelengths:")
print(tx_pos)
print("mean of element positions:", tx_pos.mean(axis=0))

# The radiating near field of the panel: distances in (lower, upper] measured
# from the panel centroid see spherical wavefronts worth modeling exactly.
# Note the centroid is not the origin: element (0, 0) is on the axis, the
# grid extends toward positive x and y.
lower, upper = fresnel_bounds(panel, wavelength)
centroid = ris_centroid(panel)
print(f"\nFresnel bounds for this panel: ({lower:.6f}, {upper:.6f}] m")
for dist in (0.5 * lower, 2.0 * lower, upper, 1.5 * upper):
    point = centroid + np.array([0.0, 0.0, dist])
    print(f"  point {dist:.6f} m from the centroid: "
          f"in zone = {in_fresnel_zone(panel, point, wavelength)}")

# Spherical coordinates round-trip.
sph = SphericalPoint(distance=0.1, polar=np.pi / 3, azimuth=np.pi / 4)
cart = spherical_to_cartesian(sph)
print(f"\nspherical (r={sph.distance}, theta={sph.polar:.4f}, phi={sph.azimuth:.4f})")
print(f"-> cartesian ({cart.x:.6f}, {cart.y:.6f}, {cart.z:.6f})")
print("distance recovered:", np.linalg.norm(cart.as_array()))
