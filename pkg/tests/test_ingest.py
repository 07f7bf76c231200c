from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordinalplane import (
    EmptyInputError,
    FormatError,
    IngestError,
    OrderingError,
    TimeSeries,
    parse_events_csv,
    parse_price_csv,
    price_csv,
)

TEMPLATE = Path(__file__).parents[1] / "data" / "events_template.csv"


class TestPrices:
    def test_minimal_file(self):
        parsed = parse_price_csv(b"date,price\n1983-01-10,31.20\n1983-01-11,31.15")
        assert parsed.series.values.tolist() == [31.20, 31.15]
        assert parsed.series.dates == (date(1983, 1, 10), date(1983, 1, 11))
        assert parsed.dropped_count == 0

    def test_blank_price_dropped(self):
        rows = [f"2000-01-{d:02d},{10 + d}.5" for d in range(1, 11)]
        rows[4] = "2000-01-05,"
        parsed = parse_price_csv(("date,price\n" + "\n".join(rows)).encode())
        assert len(parsed.series) == 9
        assert parsed.dropped_count == 1
        assert parsed.dropped_lines == (6,)

    def test_nan_price_dropped(self):
        parsed = parse_price_csv(b"date,price\n2000-01-01,NaN\n2000-01-02,3\n")
        assert parsed.dropped_count == 1 and parsed.series.values.tolist() == [3.0]

    def test_crlf_and_bom(self):
        parsed = parse_price_csv("\ufeffdate,price\r\n2000-01-01,1.5\r\n2000-01-02,2\r\n".encode())
        assert parsed.series.values.tolist() == [1.5, 2.0]

    def test_duplicate_date_names_line(self):
        with pytest.raises(OrderingError) as info:
            parse_price_csv(b"date,price\n2000-01-01,1\n2000-01-02,2\n2000-01-02,3\n")
        assert info.value.line == 4
        assert "line 4" in str(info.value)

    def test_decreasing_date(self):
        with pytest.raises(OrderingError):
            parse_price_csv(b"date,price\n2000-01-02,1\n2000-01-01,2\n")

    @pytest.mark.parametrize(
        "content",
        [b"day,price\n2000-01-01,1\n", b"", b"date\n2000-01-01\n", b"date,price,volume\n"],
    )
    def test_bad_header(self, content):
        with pytest.raises(FormatError) as info:
            parse_price_csv(content)
        assert info.value.line == 1

    @pytest.mark.parametrize(
        "row", ["2000-1-1,3", "2000-13-01,3", "2000-01-01,1e3", "2000-01-01,1,000",
                "2000-01-01,abc", "01/02/2000,3", "2000-01-01,0x10"]
    )
    def test_bad_rows(self, row):
        with pytest.raises(FormatError):
            parse_price_csv(f"date,price\n{row}\n".encode())

    def test_no_surviving_rows(self):
        with pytest.raises(EmptyInputError):
            parse_price_csv(b"date,price\n")
        with pytest.raises(EmptyInputError):
            parse_price_csv(b"date,price\n2000-01-01,\n")

    def test_invalid_utf8(self):
        with pytest.raises(FormatError):
            parse_price_csv(b"date,price\n2000-01-01,\xff\n")


class TestEvents:
    def test_single_event(self):
        (event,) = parse_events_csv(b"date,label\n1990-08-02,Iraq invades Kuwait")
        assert event.date == date(1990, 8, 2)
        assert event.label == "Iraq invades Kuwait"

    def test_header_only(self):
        assert parse_events_csv(b"date,label\n") == []

    def test_sorted_by_date(self):
        events = parse_events_csv(
            b"date,label\n2008-09-15,Global financial collapse\n2001-09-11,9-11 attacks\n"
        )
        assert [e.label for e in events] == ["9-11 attacks", "Global financial collapse"]

    def test_label_quoted_verbatim(self):
        (event,) = parse_events_csv(b'date,label\n1997-07-02,"Asian financial crisis, begins"\n')
        assert event.label == "Asian financial crisis, begins"

    def test_bad_date_names_line(self):
        with pytest.raises(FormatError) as info:
            parse_events_csv(b"date,label\n1990-08-02,a\n1990/08/03,b\n")
        assert info.value.line == 3

    def test_template_parses_to_nothing(self):
        content = TEMPLATE.read_bytes()
        assert content.decode().count("\n") == 9
        assert parse_events_csv(content) == []


dated_series = st.integers(1, 60).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(-1e12, 1e12, allow_nan=False, allow_infinity=False), min_size=n, max_size=n),
        st.lists(st.integers(1, 30), min_size=n, max_size=n),
    )
)


@settings(max_examples=200)
@given(dated_series)
def test_round_trip(data):
    values, gaps = data
    day = date(1983, 1, 10)
    dates = []
    for g in gaps:
        day += timedelta(days=g)
        dates.append(day)
    series = TimeSeries(np.array(values), tuple(dates))
    back = parse_price_csv(price_csv(series).encode()).series
    assert back.dates == series.dates
    assert back.values.tobytes() == series.values.tobytes()


@settings(max_examples=500)
@given(st.binary(max_size=300))
def test_arbitrary_bytes_never_crash(content):
    for parse in (parse_price_csv, parse_events_csv):
        try:
            parse(content)
        except IngestError:
            pass


csvish = st.text(alphabet="date,pricelab\n\r\"0123456789-.+ eN\x00", max_size=200)


@settings(max_examples=500)
@given(csvish)
def test_csv_like_text_never_crashes(text):
    for parse in (parse_price_csv, parse_events_csv):
        for prefix in ("", "date,price\n", "date,label\n"):
            try:
                parse((prefix + text).encode())
            except IngestError:
                pass
