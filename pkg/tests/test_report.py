import numpy as np

from src.report import Report, format_witness, plain


def test_plain_converts_numpy_scalars():
    value = plain((np.int64(1), (np.int64(2), np.bool_(True))))
    assert value == (1, (2, True))
    assert type(value[0]) is int


def test_format_witness_has_no_spaces():
    assert format_witness(("pmv_odot_product", (1, 1, 6))) == "('pmv_odot_product',(1,1,6))"
    assert format_witness(None) == ""


class TestReport:
    def test_lines_are_sorted_checks_then_notes(self):
        report = Report("r")
        report.add("b.check", True)
        report.add("a.check", False, (1, 2))
        report.note("c.note", False, (3,))
        assert report.to_lines() == [
            "CHECK a.check FAIL (1,2)",
            "CHECK b.check PASS",
            "NOTE c.note FAILS (3,)",
        ]

    def test_notes_do_not_affect_verdict(self):
        report = Report("r")
        report.add("x", True)
        report.note("y", False)
        assert report.passed
        assert report.failures == []

    def test_extend_and_get(self):
        left, right = Report("l"), Report("r")
        right.add("only.right", False, 7)
        right.facts['k'] = 1
        left.extend(right)
        assert left.get("only.right").witness == 7
        assert left.facts == {'k': 1}
        assert not left.passed

    def test_frame_columns(self):
        report = Report("r")
        report.add("x", False, (0,), "detail")
        frame = report.to_frame()
        assert list(frame.columns) == ['check', 'status', 'witness', 'detail']
        assert frame.iloc[0]['status'] == 'FAIL'

    def test_dict_counts(self):
        report = Report("r")
        report.add("x", True)
        report.add("y", False)
        data = report.to_dict()
        assert data['total_checks'] == 2
        assert data['failed_checks'] == 1
        assert 'report_generated' in data
