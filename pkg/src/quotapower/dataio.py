"""Weight tables in, reports out.

CSV dialect everywhere: comma separated, ``"`` quoting, ``\\n`` line endings,
UTF-8 without BOM.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from importlib import resources
from pathlib import Path

from .errors import WeightsParseError
from .game import CountryWeight, VotingBody
from .power import DecisivenessValue, PowerProfile, SwingProfile, render_fraction
from .sweep import OptimumReport, SweepRow

SCHEMA_VERSION = 1
SHARE_TOLERANCE_PP = Fraction(5, 1000)  # declared shares are rounded to 2 decimals
SWEEP_COLUMNS = ("quota", "d_euc", "d_man", "omega", "rho", "pta", "gini", "hhi")
POWER_COLUMNS = ("country", "votes", "weight", "eta", "beta")
OPTIMA_FIELDS = ("argmin_euc", "argmin_man", "argmin_omega", "argmax_rho", "closest_gini", "closest_hhi")


class ShareMismatchWarning(UserWarning):
    pass


@dataclass(frozen=True)
class WeightRow:
    name: str
    votes: int
    declared_share: Fraction | None = None  # percent, metadata only


@dataclass(frozen=True)
class WeightTable:
    rows: tuple[WeightRow, ...]
    source: str

    @property
    def total_votes(self) -> int:
        return sum(r.votes for r in self.rows)

    def __len__(self):
        return len(self.rows)

    def to_body(self) -> VotingBody:
        return VotingBody(tuple(CountryWeight(r.name, r.votes) for r in self.rows))


def parse_weights_csv(text: str, source: str = "<string>") -> WeightTable:
    if text.startswith("\ufeff"):
        text = text[1:]
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        raise WeightsParseError("empty input", line=1) from None
    if header not in (["country", "votes"], ["country", "votes", "share"]):
        raise WeightsParseError(f"expected header 'country,votes[,share]', got {','.join(header)!r}", line=1)
    has_share = len(header) == 3

    rows, seen = [], {}
    for fields in reader:
        line = reader.line_num
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != len(header):
            raise WeightsParseError(f"expected {len(header)} fields, got {len(fields)}", line=line)
        name = fields[0].strip()
        if not name:
            raise WeightsParseError("empty country name", line=line)
        if name in seen:
            raise WeightsParseError(f"duplicate country {name!r} (first on line {seen[name]})", line=line)
        try:
            votes = int(fields[1].strip())
        except ValueError:
            raise WeightsParseError(f"votes must be an integer, got {fields[1]!r}", line=line) from None
        if votes <= 0:
            raise WeightsParseError(f"votes must be positive, got {votes}", line=line)
        share = None
        if has_share and fields[2].strip():
            try:
                share = Fraction(fields[2].strip().rstrip("%"))
            except (ValueError, ZeroDivisionError):
                raise WeightsParseError(f"share must be a number, got {fields[2]!r}", line=line) from None
        seen[name] = line
        rows.append(WeightRow(name, votes, share))
    if not rows:
        raise WeightsParseError("no weight rows", line=reader.line_num)

    table = WeightTable(tuple(rows), source)
    W = table.total_votes
    for r in rows:
        if r.declared_share is not None and abs(Fraction(100 * r.votes, W) - r.declared_share) > SHARE_TOLERANCE_PP:
            warnings.warn(
                f"{r.name}: declared share {float(r.declared_share)}% differs from "
                f"{float(Fraction(100 * r.votes, W)):.4f}% computed from votes",
                ShareMismatchWarning,
                stacklevel=2,
            )
    return table


def load_weights(path) -> WeightTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise WeightsParseError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    return parse_weights_csv(text, source=str(path))


def embedded_imf_dataset() -> WeightTable:
    """Votes of the 191 IMF member countries (Board of Governors)."""
    text = resources.files("quotapower").joinpath("data/imf_votes.csv").read_text(encoding="utf-8")
    return parse_weights_csv(text, source="embedded")


# --- reports -------------------------------------------------------------


@dataclass(frozen=True)
class PowerReport:
    body: VotingBody
    swings: SwingProfile
    profile: PowerProfile
    pta: DecisivenessValue


def _num(x, decimals):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        x = Fraction(x)
    return render_fraction(x, decimals)


def _quota(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return render_fraction(q, 6).rstrip("0").rstrip(".")


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _json_num(s):
    # rendered decimal string -> JSON number, preserving the rendered digits
    if s in ("inf", "-inf", "nan"):
        return None
    f = float(s)
    return int(f) if f.is_integer() and "." not in s else f


def sweep_row_values(r: SweepRow, decimals: int) -> list[str]:
    return [
        _quota(r.quota_percent),
        _num(r.d_euc, decimals),
        _num(r.d_man, decimals),
        _num(r.omega.value, decimals),
        _num(r.rho, decimals),
        r.pta.decimal(decimals, percent=True),
        _num(r.gini_beta, decimals),
        _num(r.hhi_beta, decimals),
    ]


@singledispatch
def write_report(obj, fmt: str = "csv", decimals: int = 6) -> str:
    """Render a sweep (list of rows), an OptimumReport or a PowerReport."""
    raise TypeError(f"cannot write a report for {type(obj).__name__}")


@write_report.register(list)
@write_report.register(tuple)
def _(rows, fmt="csv", decimals=6):
    if any(not isinstance(r, SweepRow) for r in rows):
        raise TypeError("sweep reports take SweepRow items")
    values = [sweep_row_values(r, decimals) for r in rows]
    if fmt == "csv":
        return _csv_text(SWEEP_COLUMNS, values)
    if fmt != "json":
        raise ValueError(f"unknown format {fmt!r}")
    out = []
    for r, v in zip(rows, values):
        d = dict(zip(SWEEP_COLUMNS, map(_json_num, v)))
        d["threshold_votes"] = r.threshold_votes
        d["omega_player"] = r.omega_player
        d["omega_infinite"] = r.omega.infinite
        if r.beta is not None:
            d["beta"] = [_json_num(render_fraction(b, decimals)) for b in r.beta.beta]
        out.append(d)
    return _json_text({"schema_version": SCHEMA_VERSION, "kind": "sweep", "decimals": decimals,
                       "pta_unit": "percent", "rows": out})


@write_report.register(OptimumReport)
def _(opt, fmt="csv", decimals=6):
    items = [(k, None if getattr(opt, k) is None else _quota(getattr(opt, k))) for k in OPTIMA_FIELDS]
    items.append(("baseline_gini", _num(opt.baseline_gini, decimals)))
    items.append(("baseline_hhi", _num(opt.baseline_hhi, decimals)))
    if fmt == "csv":
        return _csv_text(("field", "value"), [(k, "" if v is None else v) for k, v in items])
    if fmt != "json":
        raise ValueError(f"unknown format {fmt!r}")
    d = {k: None if v is None else _json_num(v) for k, v in items}
    d["omega_excluded"] = [_quota(q) for q in opt.omega_excluded]
    return _json_text({"schema_version": SCHEMA_VERSION, "kind": "optima", "decimals": decimals, **d})


@write_report.register(PowerReport)
def _(rep, fmt="csv", decimals=6):
    body = rep.body
    W = body.total_votes
    order = sorted(range(body.n), key=lambda i: (-body.players[i].votes, i))
    rows = []
    for i in order:
        p = body.players[i]
        rows.append([
            p.name,
            str(p.votes),
            render_fraction(Fraction(100 * p.votes, W), decimals),
            str(rep.swings.eta[i]),
            render_fraction(100 * rep.profile.beta[i], decimals),
        ])
    if fmt == "csv":
        return _csv_text(POWER_COLUMNS, rows)
    if fmt != "json":
        raise ValueError(f"unknown format {fmt!r}")
    players = [
        {"country": r[0], "votes": int(r[1]), "weight": _json_num(r[2]), "eta": int(r[3]), "beta": _json_num(r[4])}
        for r in rows
    ]
    return _json_text({
        "schema_version": SCHEMA_VERSION,
        "kind": "power",
        "decimals": decimals,
        "unit": "percent",
        "quota": _quota(rep.profile.quota_percent) if rep.profile.quota_percent is not None else None,
        "threshold_votes": rep.swings.threshold_votes,
        "total_votes": W,
        "pta": _json_num(rep.pta.decimal(decimals)),
        "players": players,
    })


def parse_sweep_csv(text: str) -> list[dict]:
    """Read back a sweep CSV written by ``write_report``."""
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader)
    if tuple(header) != SWEEP_COLUMNS:
        raise WeightsParseError(f"not a sweep report header: {header!r}", line=1)
    out = []
    for fields in reader:
        row = {"quota": Fraction(fields[0])}
        for k, v in zip(SWEEP_COLUMNS[1:], fields[1:]):
            row[k] = math.inf if v == "inf" else math.nan if v == "nan" else Fraction(v)
        out.append(row)
    return out
