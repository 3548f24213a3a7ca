"""Spherical-wavefront channel matrices for a transmissive-RIS MIMO link.

Three links are modeled, each entry built from the exact distance between an
antenna and an element center (no plane-wave approximation):

* transmitter -> panel: amplitude sqrt(G_tx * A * exp(-kappa*D) / (4*pi*D^2))
  with A the element area, phase exp(-1j*k*D);
* panel -> receiver: amplitude sqrt(G_rx * exp(-kappa*D)) * A / (lambda*D)
  times the Kirchhoff obliquity factor (1 + cos(theta))/2, with a 1/j factor
  and phase exp(+1j*k*D) (sign conventions kept as-is; capacity depends only
  on singular values, but the two links deliberately carry opposite phase
  signs and asymmetric spreading factors);
* transmitter -> receiver line-of-sight: amplitude
  sqrt(G_rx * G_tx * exp(-kappa*D)) * lambda / (4*pi*D), phase exp(-1j*k*D).

The obliquity angle theta is measured between an element-to-antenna ray and
the panel normal (the z-axis); the obliquity factor applies on the panel ->
receiver link only.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import RisPanel

__all__ = [
    "SPEED_OF_LIGHT",
    "PhysicalParams",
    "ChannelSet",
    "build_tx_ris",
    "build_ris_rx",
    "effective_channel",
    "build_direct_los",
    "build_channel_set",
]

SPEED_OF_LIGHT = 299792458.0  # m/s


@dataclass(frozen=True)
class PhysicalParams:
    """Carrier and link-budget constants, all in linear units.

    ``wavelength`` and ``wavenumber`` must be consistent with each other;
    use :meth:`from_frequency` to derive them. Gains are linear (not dBi)
    and ``absorption`` is the molecular power attenuation in 1/m.
    """

    frequency: float
    wavelength: float
    wavenumber: float
    absorption: float
    tx_gain: float
    rx_gain: float

    def __post_init__(self):
        if self.frequency <= 0 or self.wavelength <= 0:
            raise ValueError("frequency and wavelength must be > 0")
        if abs(self.wavenumber * self.wavelength - 2 * np.pi) > 1e-9:
            raise ValueError("wavenumber must equal 2*pi/wavelength")
        if self.absorption < 0:
            raise ValueError(f"absorption must be >= 0, got {self.absorption}")
        if self.tx_gain <= 0 or self.rx_gain <= 0:
            raise ValueError("antenna gains must be > 0 (linear)")

    @classmethod
    def from_frequency(cls, frequency: float, absorption: float = 0.0,
                       tx_gain: float = 1.0, rx_gain: float = 1.0) -> "PhysicalParams":
        wavelength = SPEED_OF_LIGHT / frequency
        return cls(frequency, wavelength, 2 * np.pi / wavelength, absorption, tx_gain, rx_gain)


@dataclass(frozen=True)
class ChannelSet:
    """The channel matrices of one placement.

    tx_to_ris is (W, N_t), ris_to_rx is (N_r, W), effective is (N_r, N_t)
    and equals ris_to_rx @ diag(beta) @ tx_to_ris for the panel's phase
    profile. ``direct`` is the line-of-sight matrix, present only on request
    (the panel is assumed to obstruct the direct path in assisted operation).
    """

    tx_to_ris: np.ndarray
    ris_to_rx: np.ndarray
    effective: np.ndarray
    direct: np.ndarray | None = None


def _pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance matrix (len(a), len(b)) between two (n, 3) position sets."""
    return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)


def _check_no_coincidence(dist: np.ndarray, rows: str, cols: str) -> None:
    hits = np.argwhere(dist == 0.0)
    if hits.size:
        i, j = hits[0]
        raise ValueError(f"{rows} {i} coincides with {cols} {j}; distances must be > 0")


def build_tx_ris(params: PhysicalParams, tx_positions: np.ndarray,
                 ris_positions: np.ndarray, panel: RisPanel) -> np.ndarray:
    """Channel from the transmit antennas to the panel elements.

    Parameters
    ----------
    tx_positions : (N_t, 3) antenna centers in meters.
    ris_positions : (W, 3) element centers, in the panel's flattening order.
    panel : supplies the element area for the captured-power term.

    Returns
    -------
    (W, N_t) complex matrix; entry (w, m) has magnitude
    sqrt(G_tx * A * exp(-kappa*D) / (4*pi*D^2)) and phase -k*D for the
    element-to-antenna distance D.
    """
    dist = _pairwise_distances(np.asarray(ris_positions, float), np.asarray(tx_positions, float))
    _check_no_coincidence(dist, "RIS element", "tx antenna")
    area = panel.element_width * panel.element_length
    path_gain = params.tx_gain * area * np.exp(-params.absorption * dist) / (4 * np.pi * dist**2)
    return np.sqrt(path_gain) * np.exp(-1j * params.wavenumber * dist)


def build_ris_rx(params: PhysicalParams, ris_positions: np.ndarray,
                 rx_positions: np.ndarray, panel: RisPanel) -> np.ndarray:
    """Channel from the panel elements to the receive antennas.

    Returns
    -------
    (N_r, W) complex matrix; entry (n, w) is
    sqrt(G_rx * exp(-kappa*D)) * A / (1j * lambda * D) * (1 + cos(theta))/2
    * exp(+1j*k*D), where theta is the angle between the element->antenna
    ray and the panel normal.
    """
    ris_positions = np.asarray(ris_positions, float)
    rx_positions = np.asarray(rx_positions, float)
    dist = _pairwise_distances(rx_positions, ris_positions)
    _check_no_coincidence(dist, "rx antenna", "RIS element")
    cos_theta = np.abs(rx_positions[:, None, 2] - ris_positions[None, :, 2]) / dist
    obliquity = (1.0 + cos_theta) / 2.0
    area = panel.element_width * panel.element_length
    amplitude = np.sqrt(params.rx_gain * np.exp(-params.absorption * dist))
    spreading = area / (1j * params.wavelength * dist)
    return amplitude * spreading * obliquity * np.exp(1j * params.wavenumber * dist)


def effective_channel(tx_to_ris: np.ndarray, ris_to_rx: np.ndarray,
                      beta: np.ndarray) -> np.ndarray:
    """Cascade the two links through the panel's phase profile.

    Computes ris_to_rx @ diag(beta) @ tx_to_ris as an (N_r, N_t) matrix.
    ``beta`` must be unit-magnitude with one entry per panel element.
    """
    beta = np.asarray(beta, dtype=complex)
    n_elements = tx_to_ris.shape[0]
    if ris_to_rx.shape[1] != n_elements or beta.shape != (n_elements,):
        raise ValueError(
            f"dimension mismatch: tx_to_ris {tx_to_ris.shape}, "
            f"ris_to_rx {ris_to_rx.shape}, beta {beta.shape}"
        )
    if np.any(np.abs(np.abs(beta) - 1.0) > 1e-9):
        raise ValueError("beta entries must have unit magnitude")
    return (ris_to_rx * beta) @ tx_to_ris


def build_direct_los(params: PhysicalParams, tx_positions: np.ndarray,
                     rx_positions: np.ndarray) -> np.ndarray:
    """Line-of-sight channel between the transmit and receive arrays.

    Returns
    -------
    (N_r, N_t) complex matrix; entry (n, m) is
    sqrt(G_rx * G_tx * exp(-kappa*D)) * lambda / (4*pi*D) * exp(-1j*k*D).
    """
    dist = _pairwise_distances(np.asarray(rx_positions, float), np.asarray(tx_positions, float))
    _check_no_coincidence(dist, "rx antenna", "tx antenna")
    amplitude = np.sqrt(params.rx_gain * params.tx_gain * np.exp(-params.absorption * dist))
    return amplitude * params.wavelength / (4 * np.pi * dist) * np.exp(-1j * params.wavenumber * dist)


def build_channel_set(params: PhysicalParams, tx_positions: np.ndarray,
                      rx_positions: np.ndarray, panel: RisPanel,
                      ris_positions: np.ndarray | None = None,
                      include_direct: bool = False) -> ChannelSet:
    """Build all channel matrices of one placement in one call.

    ``ris_positions`` defaults to the panel's own element grid; pass them
    explicitly to reuse positions already computed elsewhere.
    """
    from .geometry import ris_element_positions

    if ris_positions is None:
        ris_positions = ris_element_positions(panel)
    tx_to_ris = build_tx_ris(params, tx_positions, ris_positions, panel)
    ris_to_rx = build_ris_rx(params, ris_positions, rx_positions, panel)
    effective = effective_channel(tx_to_ris, ris_to_rx, panel.phase_profile())
    direct = build_direct_los(params, tx_positions, rx_positions) if include_direct else None
    return ChannelSet(tx_to_ris, ris_to_rx, effective, direct)
