import numpy as np
import pytest

from twrmec import ChannelRealization, SystemParams


@pytest.fixture
def params():
    """Reference operating point (1 MHz, -90 dBm noise, 180 kbit tasks)."""
    return SystemParams()


@pytest.fixture
def mean_chan():
    """All gains pinned to their Rayleigh means: |h|^2 = 1e-6 over 1e-9 W noise."""
    return ChannelRealization(1000.0, 1000.0, 1000.0, 1000.0)


def random_channel(rng: np.random.Generator) -> ChannelRealization:
    g = rng.exponential(1e-6, 4) / 1e-9
    return ChannelRealization(*g)
