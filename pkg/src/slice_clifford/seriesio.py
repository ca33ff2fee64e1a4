"""Series JSON files and paravector literals.

Series schema::

    {"n": 3,
     "regular":   [{"m": 0, "blades": {"": 1.0, "13": -2.0}}, ...],
     "principal": [{"m": 1, "blades": {"2": 0.5}}, ...]}

A blade key lists the generator indices in ascending order (``""`` is the
scalar). For ``n >= 10`` the indices must be comma separated (``"1,10"``),
since digit strings would be ambiguous.
"""

from __future__ import annotations

import json
import math
import re

import numpy as np

from .clifford import MAX_GENERATORS, Multivector
from .errors import InvalidOperandsError, SeriesParseError
from .series import LaurentSeries, PowerSeries


def _reject_constant(name):
    raise SeriesParseError(f"non-finite number {name} is not allowed")


def _no_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise SeriesParseError(f"duplicate key {key!r}")
        seen[key] = value
    return seen


def parse_blade_key(key, n, where="blade key"):
    """Blade bitmask for a key such as ``"13"`` or ``"1,10"``."""
    if key == "":
        return 0
    if n >= 10 or "," in key:
        parts = key.split(",")
    else:
        parts = list(key)
    try:
        idx = [int(p) for p in parts]
    except ValueError:
        raise SeriesParseError(f"malformed blade key {key!r}", field=where) from None
    if any(i < 1 or i > n for i in idx):
        raise SeriesParseError(f"generator index out of range 1..{n} in {key!r}", field=where)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise SeriesParseError(f"blade key {key!r} is not strictly ascending", field=where)
    mask = 0
    for i in idx:
        mask |= 1 << (i - 1)
    return mask


def blade_key(mask, n):
    idx = [i + 1 for i in range(n) if mask >> i & 1]
    sep = "," if n >= 10 else ""
    return sep.join(str(i) for i in idx)


def _blade_order(mask, n):
    idx = [i for i in range(n) if mask >> i & 1]
    return (len(idx), idx)


def _read_terms(entries, n, section, min_m):
    if not isinstance(entries, list):
        raise SeriesParseError("expected a list of terms", field=section)
    terms = {}
    for k, entry in enumerate(entries):
        where = f"{section}[{k}]"
        if not isinstance(entry, dict):
            raise SeriesParseError("expected an object with 'm' and 'blades'", field=where)
        extra = set(entry) - {"m", "blades"}
        if extra:
            raise SeriesParseError(f"unknown field(s) {sorted(extra)}", field=where)
        m = entry.get("m")
        if isinstance(m, bool) or not isinstance(m, int) or m < min_m:
            raise SeriesParseError(f"degree must be an integer >= {min_m}", field=f"{where}.m")
        if m in terms:
            raise SeriesParseError(f"duplicate degree {m}", field=f"{where}.m")
        blades = entry.get("blades")
        if not isinstance(blades, dict):
            raise SeriesParseError("expected an object of blade coefficients", field=f"{where}.blades")
        coeff = np.zeros(1 << n)
        for key, value in blades.items():
            fld = f"{where}.blades[{key!r}]"
            mask = parse_blade_key(key, n, fld)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SeriesParseError("coefficient must be a number", field=fld)
            if not math.isfinite(value):
                raise SeriesParseError("coefficient must be finite", field=fld)
            coeff[mask] = float(value)
        terms[m] = coeff
    return terms


def _stack(terms, n, offset):
    if not terms:
        return np.zeros((0, 1 << n))
    out = np.zeros((max(terms) + 1 - offset, 1 << n))
    for m, c in terms.items():
        out[m - offset] = c
    return out


def loads_series(text):
    """Parse series JSON text into a :class:`PowerSeries` or :class:`LaurentSeries`."""
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SeriesParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise SeriesParseError("top level must be an object")
    extra = set(data) - {"n", "regular", "principal"}
    if extra:
        raise SeriesParseError(f"unknown field(s) {sorted(extra)}")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_GENERATORS:
        raise SeriesParseError(f"n must be an integer in 1..{MAX_GENERATORS}", field="n")
    if "regular" not in data:
        raise SeriesParseError("missing field", field="regular")
    regular = PowerSeries(n, _stack(_read_terms(data["regular"], n, "regular", 0), n, 0))
    if "principal" not in data:
        return regular
    principal = _stack(_read_terms(data["principal"], n, "principal", 1), n, 1)
    return LaurentSeries(regular, principal)


def parse_series(path):
    with open(path, encoding="utf-8") as fh:
        return loads_series(fh.read())


def _dump_terms(rows, n, offset):
    order = sorted(range(1 << n), key=lambda mask: _blade_order(mask, n))
    out = []
    for k, row in enumerate(rows):
        blades = {blade_key(mask, n): float(row[mask]) for mask in order if row[mask] != 0.0}
        if blades:
            out.append({"m": k + offset, "blades": blades})
    return out


def series_to_dict(series):
    if isinstance(series, LaurentSeries):
        return {
            "n": series.n,
            "regular": _dump_terms(series.regular.coeffs, series.n, 0),
            "principal": _dump_terms(series.principal, series.n, 1),
        }
    return {"n": series.n, "regular": _dump_terms(series.coeffs, series.n, 0)}


def dumps_series(series):
    """Canonical JSON text: nonzero terms only, blades ordered by grade then index."""
    return json.dumps(series_to_dict(series), indent=2) + "\n"


_TERM = re.compile(r"([+-])?(\d+(?:\.\d*)?|\.\d+)?(?:e(\d+))?")


def parse_paravector(text, n):
    """Parse a literal such as ``"1.5+2e1-0.5e3"`` into a paravector of R_n.

    ``eK`` is the generator ``e_K``; there is no exponent notation.
    """
    s = re.sub(r"\s*([+-])\s*", r"\1", text.strip())
    if not s:
        raise SeriesParseError("empty paravector literal")
    out = np.zeros(1 << n)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, unit = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (num is None and unit is None) or (pos > 0 and sign is None):
            raise SeriesParseError(f"cannot parse paravector literal {text!r} at offset {pos}")
        value = float(num) if num is not None else 1.0
        if sign == "-":
            value = -value
        if unit is None:
            out[0] += value
        else:
            i = int(unit)
            if i < 1:
                raise SeriesParseError(f"generator index must be >= 1 in {text!r}")
            if i > n:
                raise InvalidOperandsError(f"generator e{i} does not exist in R_{n}")
            out[1 << (i - 1)] += value
        pos = m.end()
    return Multivector(n, out)
