"""Tests for time-frequency misfits and seismogram files."""

import numpy as np
import pytest

from elastodg.analysis import (
    MisfitReport,
    accuracy_class,
    dominant_frequency,
    read_seismogram_csv,
    sample_interval,
    tf_misfit,
)
from elastodg.exceptions import ConfigurationError
from elastodg.solver import Ricker

DT = 0.005
BAND = (0.5, 8.0)


@pytest.fixture
def reference():
    t = DT * np.arange(2000)
    return Ricker(2.0, 3.0)(t)


@pytest.mark.parametrize(
    "factor, expected",
    [(1.0, "A"), (1.04, "A"), (1.08, "B"), (1.15, "C"), (1.3, None)],
)
def test_amplitude_errors_are_pure_envelope(reference, factor, expected):
    report = tf_misfit(factor * reference, reference, DT, BAND)
    assert report.em == pytest.approx(factor - 1.0, abs=1e-9)
    assert report.pm == pytest.approx(0.0, abs=1e-6)
    assert report.accuracy_class == expected


def test_polarity_flip_is_pure_phase(reference):
    report = tf_misfit(-reference, reference, DT, BAND)
    assert report.em == pytest.approx(0.0, abs=1e-9)
    assert report.pm == pytest.approx(1.0, rel=1e-6)


def test_time_shift_grows_phase_misfit(reference):
    small = tf_misfit(np.roll(reference, 4), reference, DT, BAND)
    large = tf_misfit(np.roll(reference, 16), reference, DT, BAND)
    assert 0.0 < small.pm < large.pm


def test_dominant_frequency_of_ricker(reference):
    assert dominant_frequency(reference, DT, BAND) == pytest.approx(2.0, abs=0.15)


def test_accuracy_classes():
    assert accuracy_class(0.05) == "A"
    assert accuracy_class(0.0500001) == "B"
    assert accuracy_class(0.2) == "C"
    assert accuracy_class(0.21) is None


def test_render_has_machine_readable_lines():
    text = MisfitReport(em=0.03, pm=0.12, band=(0.5, 8.0), dominant_frequency=2.0).render()
    assert "class=C" in text.splitlines()
    assert "em=3.000000e-02" in text


@pytest.mark.parametrize(
    "signal, dt, band",
    [
        (np.zeros(10), DT, BAND),
        (np.zeros(2000), DT, (8.0, 0.5)),
        (np.zeros(2000), DT, (0.5, 500.0)),
        (np.zeros(2000), 0.0, BAND),
    ],
)
def test_invalid_inputs(reference, signal, dt, band):
    with pytest.raises(ConfigurationError):
        tf_misfit(signal, reference, dt, band)


def test_read_seismogram_csv(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("t,v_x,v_y\n0,1,2\n0.5,3,4\n1.0,5,6\n", encoding="utf-8")
    columns = read_seismogram_csv(path)
    assert list(columns) == ["t", "v_x", "v_y"]
    assert columns["v_y"] == pytest.approx([2.0, 4.0, 6.0])
    assert sample_interval(columns["t"]) == pytest.approx(0.5)


def test_read_seismogram_csv_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        read_seismogram_csv(tmp_path / "missing.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("time,v_x\n0,1\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        read_seismogram_csv(bad)
    with pytest.raises(ConfigurationError):
        sample_interval(np.array([0.0, 0.1, 0.3]))
