import numpy as np
import pytest

from nas_trainer.schema import (
    CANONICAL_NAMES,
    evaluated_header_line,
    evaluated_row_line,
    read_design_csv,
    SchemaError,
)


def test_canonical_name_count():
    assert len(CANONICAL_NAMES) == 23


def test_design_roundtrip(row_values):
    text = ",".join(CANONICAL_NAMES) + "\n" + ",".join(repr(v) for v in row_values) + "\n"
    X = read_design_csv(text)
    assert X.shape == (1, 23)
    assert np.array_equal(X[0], np.array(row_values))


def test_design_header_enforced():
    with pytest.raises(SchemaError):
        read_design_csv("a,b,c\n1,2,3\n")
    with pytest.raises(SchemaError):
        read_design_csv("")


def test_design_non_numeric():
    text = ",".join(CANONICAL_NAMES) + "\n" + ",".join(["oops"] * 23) + "\n"
    with pytest.raises(SchemaError):
        read_design_csv(text)


def test_evaluated_lines(row_values):
    header = evaluated_header_line().strip().split(",")
    assert header[:23] == list(CANONICAL_NAMES)
    assert header[23:] == ["accuracy", "cpu_time", "dataset"]
    line = evaluated_row_line(np.array(row_values), 0.93, 12.5, "digits")
    fields = line.strip().split(",")
    assert len(fields) == 26
    assert float(fields[23]) == pytest.approx(0.93)
    assert fields[25] == "digits"
    # full repr precision survives a parse round trip
    assert [float(f) for f in fields[:23]] == row_values
