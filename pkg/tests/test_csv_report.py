from fractions import Fraction

import numpy as np
import pytest

from utils.csv_report import ReportError, format_value, parse_value, read_csv, write_csv


@pytest.mark.parametrize("value, text", [
    (0.1, "0.1"),
    (1 / 3, "0.3333333333333333"),
    (True, "true"),
    (np.bool_(False), "false"),
    (np.int64(7), "7"),
    (Fraction(1, 4), "0.25"),
    (float("nan"), "nan"),
    (np.float64(2.5), "2.5"),
    ("eq5", "eq5"),
])
def test_format_value(value, text):
    assert format_value(value) == text


def test_parse_value():
    assert parse_value("true") is True
    assert parse_value("12") == 12
    assert parse_value("0.1") == 0.1
    assert parse_value("eq12") == "eq12"


def test_written_report_reads_back(tmp_path):
    path = write_csv(tmp_path / "nested" / "report.csv", ["n", "k", "admissible"],
                     [(0, 0.0, True), (1, 1.0, False)])
    assert path.read_bytes() == b"n,k,admissible\n0,0.0,true\n1,1.0,false\n"
    header, rows = read_csv(path)
    assert header == ["n", "k", "admissible"]
    assert rows[1] == {"n": 1, "k": 1.0, "admissible": False}


def test_row_length_is_checked(tmp_path):
    with pytest.raises(ReportError):
        write_csv(tmp_path / "bad.csv", ["a", "b"], [(1,)])


def test_read_rejects_missing_and_short_rows(tmp_path):
    with pytest.raises(ReportError):
        read_csv(tmp_path / "absent.csv")
    short = tmp_path / "short.csv"
    short.write_text("a,b\n1\n")
    with pytest.raises(ReportError):
        read_csv(short)
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ReportError):
        read_csv(empty)


def test_header_only_report(tmp_path):
    path = tmp_path / "header.csv"
    path.write_text("n,eigenvalue\n")
    assert read_csv(path) == (["n", "eigenvalue"], [])
