import pytest
from hypothesis import given, strategies as st

from plasmon_cascade.units import ATOMIC


def test_paper_values_round_trip():
    for value_ev in (7.9, 0.051, 2.8):
        back = ATOMIC.internal_to_ev(ATOMIC.ev_to_internal(value_ev))
        assert abs(back - value_ev) / value_ev < 1e-12


def test_length_round_trip():
    back = ATOMIC.internal_to_nm(ATOMIC.nm_to_internal(7.0))
    assert abs(back - 7.0) / 7.0 < 1e-12


def test_speed_of_light_is_fixed():
    assert ATOMIC.c == 137.036


def test_mev_consistency():
    assert ATOMIC.mev_to_internal(1000.0) == pytest.approx(
        ATOMIC.ev_to_internal(1.0), rel=1e-15)


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_energy_round_trip_property(value_ev):
    back = ATOMIC.internal_to_ev(ATOMIC.ev_to_internal(value_ev))
    assert abs(back - value_ev) <= 1e-12 * value_ev


@given(st.floats(min_value=1e-3, max_value=1e4))
def test_length_round_trip_property(value_nm):
    back = ATOMIC.internal_to_nm(ATOMIC.nm_to_internal(value_nm))
    assert abs(back - value_nm) <= 1e-12 * value_nm
