"""Text forms for timestamps: log cells and worksheet dates.

Two cell forms appear in 16-column logs: plain integer epoch seconds, and
a civil form ``Mon DD YY[YY] [HH:MM:SS[.mmm]]`` (month names are English
three-letter abbreviations, never locale-dependent). Two-digit years are
pivoted onto 1970-2069, so "94" is 1994 and "05" is 2005; years outside
that window are written with four digits.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from .model import MS_PER_S, Timestamp

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_MS = timedelta(milliseconds=1)

MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")
_MONTH_INDEX = {name.lower(): i + 1 for i, name in enumerate(MONTHS)}

_PIVOT_LOW, _PIVOT_HIGH = 1970, 2069


def to_datetime(ts: Timestamp) -> datetime:
    return _EPOCH + timedelta(milliseconds=ts.epoch_ms)


def from_datetime(dt: datetime) -> Timestamp:
    return Timestamp((dt - _EPOCH) // _MS)


def _year_from_token(token: str) -> int:
    year = int(token)
    if year < 0:
        raise ValueError(f"negative year {token!r}")
    if len(token) <= 2:
        return 1900 + year if year >= 70 else 2000 + year
    return year


def _ms_from_fraction(token: str) -> int:
    if not 1 <= len(token) <= 3 or not token.isdigit():
        raise ValueError(f"bad millisecond fraction {token!r}")
    return int(token) * 10 ** (3 - len(token))


def parse_timestamp(token: str) -> Timestamp:
    """Parse one timestamp cell, either epoch seconds or the civil form.

    Raises ValueError when the token is neither.
    """
    token = token.strip()
    try:
        return Timestamp.from_epoch_s(int(token))
    except ValueError:
        pass

    parts = token.split()
    if len(parts) not in (3, 4):
        raise ValueError(f"bad timestamp {token!r}")
    month = _MONTH_INDEX.get(parts[0].lower())
    if month is None:
        raise ValueError(f"bad month in timestamp {token!r}")
    day = int(parts[1])
    year = _year_from_token(parts[2])
    hour = minute = second = ms = 0
    if len(parts) == 4:
        clock, _, fraction = parts[3].partition(".")
        hh, mm, ss = clock.split(":")
        hour, minute, second = int(hh), int(mm), int(ss)
        if fraction:
            ms = _ms_from_fraction(fraction)
    dt = datetime(year, month, day, hour, minute, second, ms * 1000, tzinfo=timezone.utc)
    return from_datetime(dt)


def format_timestamp(ts: Timestamp) -> str:
    """Canonical log cell: epoch seconds when second-aligned, civil form otherwise.

    The epoch-seconds value -1 would collide with the missing-value
    sentinel, so that one timestamp is written in the civil form instead.
    """
    if ts.second_aligned and ts.epoch_ms != -MS_PER_S:
        return str(ts.epoch_ms // MS_PER_S)
    dt = to_datetime(ts)
    year = _format_year(dt.year)
    return (f"{MONTHS[dt.month - 1]} {dt.day:02d} {year} "
            f"{dt.hour:02d}:{dt.minute:02d}:{dt.second:02d}.{dt.microsecond // 1000:03d}")


def format_day(ts: Timestamp) -> str:
    """Day-granularity worksheet date, e.g. "May 10 94"."""
    dt = to_datetime(ts)
    return f"{MONTHS[dt.month - 1]} {dt.day:02d} {dt.year % 100:02d}"


def _format_year(year: int) -> str:
    if _PIVOT_LOW <= year <= _PIVOT_HIGH:
        return f"{year % 100:02d}"
    return str(year)
