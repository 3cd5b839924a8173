import pytest

from ptscarf.scarf_model import ScarfParams


@pytest.fixture
def hermitian():
    return ScarfParams.hermitian(2.0, 6.0, 2.0)


@pytest.fixture
def pt_real():
    """Presets fig4 and fig5, gamma0 > |2 delta_i|."""
    return ScarfParams.pt_symmetric(2.0, 6.0, 2.0)


@pytest.fixture
def pt_complex():
    """Preset fig6, gamma0 < |2 delta_i|."""
    return ScarfParams.pt_symmetric(2.0, 3.0, 2.0)


@pytest.fixture
def pt_ss():
    """Preset fig7, the classical singular case."""
    return ScarfParams.pt_symmetric(2.0, 4.0, 12.0)
