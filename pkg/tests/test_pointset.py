import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from frolov.exceptions import PointSetFormatError, PointSetValidationError
from frolov.pointset import MAGIC, format_pointset, parse_pointset, read_pointset, write_pointset
from frolov.rules import frolov_rule, load_pointset


def test_round_trip_frolov(tmp_path):
    q = frolov_rule(3, 512)
    path = tmp_path / "f3.pts"
    write_pointset(path, q.points, 512, "improved_frolov")
    ps = read_pointset(path)
    assert (ps.d, ps.n, ps.N, ps.method) == (3, 512.0, q.N, "improved_frolov")
    np.testing.assert_array_equal(ps.points, q.points)
    # byte-identical re-serialization
    assert format_pointset(ps.points, ps.n, ps.method) == path.read_text()


def test_load_pointset_weights(tmp_path):
    q = frolov_rule(2, 256)
    path = tmp_path / "f.pts"
    write_pointset(path, q.points, 256, "improved_frolov")
    loaded = load_pointset(path)
    np.testing.assert_array_equal(loaded.weights, np.full(q.N, 1 / 256))
    write_pointset(path, q.points, 0, "external")
    np.testing.assert_array_equal(load_pointset(path).weights, np.full(q.N, 1 / q.N))
    w = np.linspace(0, 1, q.N)
    np.testing.assert_array_equal(load_pointset(path, weights=w).weights, w)


def test_empty_body(tmp_path):
    path = tmp_path / "e.pts"
    path.write_text(f"{MAGIC}\nd=2 n=0 N=0 method=none\n")
    q = load_pointset(path)
    assert q.N == 0 and q.d == 2


def test_header_line():
    text = format_pointset([[0.5, 0.25]], 1024, "m")
    assert text.splitlines()[:2] == [MAGIC, "d=2 n=1024 N=1 method=m"]
    assert "n=2.5 " in format_pointset([[0.5]], 2.5, "m")
    with pytest.raises(ValueError):
        format_pointset([[0.5]], 1, "two words")


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("frolovpts 2\nd=1 n=0 N=0 method=x\n", 1),
        (f"{MAGIC}\n", 2),
        (f"{MAGIC}\nd=1 n=0 method=x\n", 2),
        (f"{MAGIC}\nd=1 n=0 N=0 method=x extra=1\n", 2),
        (f"{MAGIC}\nd=one n=0 N=0 method=x\n", 2),
        (f"{MAGIC}\nd=1 n=0 N=2 method=x\n0.5\n", 4),
        (f"{MAGIC}\nd=2 n=0 N=2 method=x\n0.5 0.5\n0.5\n", 4),
        (f"{MAGIC}\nd=1 n=0 N=1 method=x\nabc\n", 3),
        (f"{MAGIC}\nd=1 n=0 N=1 method=x\n0.5\n0.5\n", 4),
    ],
)
def test_format_errors(text, line):
    with pytest.raises(PointSetFormatError) as info:
        parse_pointset(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("bad", ["1.5", "-0.1", "nan", "inf"])
def test_validation_errors(bad):
    with pytest.raises(PointSetValidationError) as info:
        parse_pointset(f"{MAGIC}\nd=2 n=0 N=2 method=x\n0.5 0.5\n0.5 {bad}\n")
    assert info.value.line == 4


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(0, 20), st.integers(1, 5)), elements=st.floats(0, 1)))
def test_round_trip_property(pts):
    ps = parse_pointset(format_pointset(pts, 7, "prop"))
    np.testing.assert_array_equal(ps.points, pts)
