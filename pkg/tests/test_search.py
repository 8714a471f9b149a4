import csv
import io
import json
from math import comb

import pytest

from classtrans import NotHorizontal, parse_transposition
from classtrans.errors import InvalidArgument
from classtrans.search import (
    ALLOWED_ORDERS,
    CSV_HEADER,
    applicable_methods,
    compute_order,
    cross_checked_order,
    horizontal_transpositions,
    records_csv,
    result_json,
    search_horizontal,
    supports_disjoint,
    trace_order,
)
from oracles import horizontal_pair_order

P = parse_transposition


@pytest.fixture(scope="module")
def small():
    return search_horizontal(5)


class TestEnumeration:
    @pytest.mark.parametrize("M", [2, 3, 6, 12])
    def test_count(self, M):
        expected = sum(comb(n, 2) for n in range(2, M + 1))
        ts = horizontal_transpositions(M)
        assert len(ts) == expected == len(set(ts))
        assert all(t.is_horizontal for t in ts)

    def test_count_12(self):
        assert len(horizontal_transpositions(12)) == 286

    def test_supports_disjoint(self):
        assert supports_disjoint(P("0(4),1(4)"), P("2(4),3(4)"))
        assert not supports_disjoint(P("0(2),1(2)"), P("0(3),1(3)"))


class TestSearch:
    def test_four_realizes_everything(self):
        res = search_horizontal(4)
        assert res.realized == [1, 2, 3, 4, 6, 12]
        assert not res.violations

    def test_pair_count(self, small):
        assert len(small.records) == small.transpositions ** 2 == 20 ** 2

    def test_orders_match_oracle(self, small):
        for r in small.records:
            a, b = r.t1, r.t2
            assert r.order == horizontal_pair_order(
                a.cell_a.residue, a.cell_b.residue, a.cell_a.modulus,
                b.cell_a.residue, b.cell_b.residue, b.cell_a.modulus,
            )
            assert r.order in ALLOWED_ORDERS

    def test_witnesses(self, small):
        w = {o: (str(a), str(b)) for o, (a, b) in small.witnesses.items()}
        assert w[1] == ("0(2),1(2)", "0(2),1(2)")
        assert w[2] == ("0(4),1(4)", "2(4),3(4)")
        assert w[3] == ("0(3),1(3)", "0(3),2(3)")
        assert w[4] == ("0(2),1(2)", "0(3),1(3)")
        assert w[6] == ("0(2),1(2)", "0(3),2(3)")
        assert w[12] == ("0(3),1(3)", "0(4),2(4)")

    def test_discrepancy_reported(self, small):
        (d,) = small.discrepancies
        assert d["published_order"] == 2 and d["computed_order"] == 4

    def test_jobs_equivalent(self):
        one, two = search_horizontal(5), search_horizontal(5, jobs=2)
        assert one.records == two.records and one.witnesses == two.witnesses

    def test_rejects_small_bound(self):
        with pytest.raises(InvalidArgument):
            search_horizontal(1)


class TestOutput:
    def test_csv(self, small):
        text = records_csv(small.records)
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == CSV_HEADER
        assert len(rows) == len(small.records) + 1
        assert rows[1] == ["0(2),1(2)", "0(2),1(2)", "1", "exact", "finite"]
        assert text == records_csv(search_horizontal(5).records)

    def test_json(self, small):
        doc = json.loads(result_json(small))
        s = doc["summary"]
        assert s["realized_orders"] == [1, 2, 3, 4, 6, 12]
        assert s["pairs"] == 400 and s["violations"] == []
        assert s["witnesses"]["12"] == ["0(3),1(3)", "0(4),2(4)"]
        assert all(isinstance(r["order"], str) for r in doc["records"])


class TestMethods:
    def test_finite_needs_horizontal(self):
        with pytest.raises(NotHorizontal):
            compute_order(P("1(2),0(4)"), P("0(2),1(2)"), "finite")

    def test_unknown_method(self):
        with pytest.raises(InvalidArgument):
            compute_order(P("0(2),1(2)"), P("0(2),1(2)"), "magic")

    def test_applicable(self):
        assert applicable_methods(P("0(2),1(2)"), P("0(3),1(3)")) == ("finite", "graph", "trace")
        assert applicable_methods(P("1(2),0(4)"), P("0(3),1(3)")) == ("graph", "trace")

    def test_all_methods_agree_horizontal(self):
        for t1 in horizontal_transpositions(6):
            for t2 in horizontal_transpositions(6):
                cc = cross_checked_order(t1, t2)
                assert cc.agree and len(cc.certified) == 3

    def test_discrepancy_note_attached(self):
        report = compute_order(P("0(2),1(2)"), P("0(4),2(4)"), "finite")
        assert report.order == 4
        (note,) = report.notes
        assert json.loads(note)["published_order"] == 2

    def test_trace_window(self):
        report = trace_order(P("0(2),1(4)"), P("0(4),2(4)"), window=200)
        assert report.status == "window-exact" and report.order == 4
        cc = cross_checked_order(P("0(2),1(4)"), P("0(4),2(4)"), window=200)
        assert cc.agree and cc.primary.method == "graph"

    def test_trace_unknown(self):
        report = trace_order(P("1(2),0(4)"), P("0(2),1(2)"), budget=100, window=20)
        assert report.status == "unknown" and report.order is None
