import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ris_placement import PhysicalParams, RisPanel


@pytest.fixture
def params300():
    """300 GHz link constants with the study's absorption and 20 dBi gains."""
    return PhysicalParams.from_frequency(
        frequency=300.0e9, absorption=0.0033, tx_gain=100.0, rx_gain=100.0)


@pytest.fixture
def params_clean():
    """300 GHz, no absorption, unit gains; isolates the geometric factors."""
    return PhysicalParams.from_frequency(frequency=300.0e9)


@pytest.fixture
def half_wave_panel(params300):
    """4x4 panel with half-wavelength elements and lambda/8 gaps at z=0."""
    lam = params300.wavelength
    return RisPanel(nx=4, ny=4, element_width=lam / 2, element_length=lam / 2,
                    gap_x=lam / 8, gap_y=lam / 8, z=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
