import pytest

from champcfe import cfe_extract, digits_up_to, hwm_convergent


@pytest.fixture(scope="session")
def truth_80k():
    return digits_up_to(80_000)


@pytest.fixture(scope="session")
def level8_terms(truth_80k):
    """Coefficients of the convergent before HWM #8 (indices 0..525)."""
    num, den = hwm_convergent(8, truth_80k)
    return cfe_extract(num, den, final_index_parity="odd")
