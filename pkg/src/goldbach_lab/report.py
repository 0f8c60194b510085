"""Report rows, grid specs and CSV/JSON emission."""
import csv
import datetime as _dt
import json
import math
from dataclasses import dataclass, field

import numpy as np

CSV_FIELDS = ("experiment", "N", "truth", "formula", "residual", "envelope", "constant", "pass")


@dataclass
class ReportRow:
    experiment: str
    N: float
    truth: float
    formula: float
    residual: float
    envelope: float
    constant: float
    passed: bool
    provenance: dict = field(default_factory=dict)

    @classmethod
    def from_record(cls, experiment, rec, tolerance=None, constant=None, **provenance):
        """Build a row from a ResidualRecord; passes iff |residual| <= tolerance * envelope."""
        if constant is None:
            constant = abs(rec.residual) / rec.envelope if rec.envelope else math.inf
        ok = True if tolerance is None else abs(rec.residual) <= tolerance * rec.envelope
        prov = dict(rec.extras)
        prov.update(provenance)
        return cls(experiment, rec.N, rec.truth, rec.formula, rec.residual, rec.envelope,
                   constant, ok, prov)


def fmt_float(v):
    """17 significant digits: enough to round-trip any double."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def fmt_provenance(prov):
    return ";".join(f"{k}={fmt_float(v) if isinstance(v, (int, float, np.number)) else v}"
                    for k, v in prov.items())


def parse_grid(spec, integer=True):
    """Grid spec: ``1000,10000``, ``a:b:logK`` (K points per decade) or ``a:b:step``.

    Points are rounded to integers unless ``integer`` is false.
    """
    conv = (lambda v: int(round(v))) if integer else float
    spec = spec.strip()
    if not spec:
        raise ValueError("empty grid spec")
    if ":" not in spec:
        vals = [conv(float(p)) for p in spec.split(",") if p.strip()]
    else:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec {spec!r} must be a:b:logK or a:b:step")
        a, b = float(parts[0]), float(parts[1])
        if not 0 < a <= b:
            raise ValueError(f"grid bounds must satisfy 0 < a <= b, got {a}, {b}")
        if parts[2].startswith("log"):
            k = int(parts[2][3:])
            if k < 1:
                raise ValueError("points per decade must be >= 1")
            la, lb = math.log10(a), math.log10(b)
            steps = int(math.floor((lb - la) * k + 1e-9))
            vals = [conv(10 ** (la + i / k)) for i in range(steps + 1)]
        else:
            step = float(parts[2])
            if step <= 0:
                raise ValueError("grid step must be positive")
            vals = [conv(float(v)) for v in np.arange(a, b + 0.5 * step, step)]
    out = sorted(set(vals))
    if not out:
        raise ValueError(f"grid spec {spec!r} is empty")
    return out


def write_report(rows, path, fmt="csv", command="", timestamp=True):
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            if timestamp:
                fh.write(f"# generated {_now()} {command}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_FIELDS + ("provenance",))
            for r in rows:
                w.writerow([r.experiment, fmt_float(r.N), fmt_float(r.truth), fmt_float(r.formula),
                            fmt_float(r.residual), fmt_float(r.envelope), fmt_float(r.constant),
                            fmt_float(bool(r.passed)), fmt_provenance(r.provenance)])
    elif fmt == "json":
        doc = {"command": command, "rows": [_row_json(r) for r in rows]}
        if timestamp:
            doc["generated"] = _now()
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, default=_json_default)
            fh.write("\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def read_csv_report(path):
    """Parse a CSV report back into dicts (comment lines skipped)."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def _row_json(r):
    return {
        "experiment": r.experiment, "N": r.N, "truth": r.truth, "formula": r.formula,
        "residual": r.residual, "envelope": r.envelope, "constant": r.constant,
        "pass": bool(r.passed), "provenance": r.provenance,
    }


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"not JSON serialisable: {type(o)}")


def _now():
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
