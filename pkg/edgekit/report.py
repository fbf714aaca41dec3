#
#     This file is part of edgekit.
#
#     edgekit -- Edgeworth corrections for weighted sums of random vectors
#
#     edgekit is free software; you can redistribute it and/or
#     modify it under the terms of the GNU Lesser General Public
#     License as published by the Free Software Foundation; either
#     version 3 of the License, or (at your option) any later version.
#
#     edgekit is distributed in the hope that it will be useful,
#     but WITHOUT ANY WARRANTY; without even the implied warranty of
#     MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#     Lesser General Public License for more details.
#
#     You should have received a copy of the GNU Lesser General Public
#     License along with edgekit; if not, write to the Free Software
#     Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301  USA
#
#

import json
import math
import os

import numpy as np

CSV_COLUMNS = ("n", "mode", "mean_delta", "stderr_delta", "q50", "q90")


def format_float(v):
    """17 significant digits; JSON null for non-finite values."""
    if v is None or not math.isfinite(v):
        return "null"
    return "%.17g" % v


def dump_json(obj, indent=0):
    """Deterministic JSON text with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ["%s%s: %s" % (pad, dump_json(str(k)), dump_json(v, indent + 1)) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dump_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError("Cannot serialize %r." % (obj,))


def fit_slope(ns, values):
    """Least-squares fit of log(values) against log(ns).

    Returns
    -------
    dict
        slope, intercept and residual (sum of squared log residuals); all
        None when a value is not strictly positive.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(ns) < 2 or np.any(values <= 0) or not np.all(np.isfinite(values)):
        return {"slope": None, "intercept": None, "residual": None}
    coeffs, residuals, _, _, _ = np.polyfit(np.log(ns), np.log(values), 1, full=True)
    residual = float(residuals[0]) if len(residuals) else 0.0
    return {"slope": float(coeffs[0]), "intercept": float(coeffs[1]), "residual": residual}


class RateReport:
    """Discrepancy table of a rate experiment.

    Parameters
    ----------
    rows : list of dict
        One row per (n, mode) with the CSV columns
    fits : dict
        mode -> fit dictionary (see :func:`fit_slope`) extended with ``implied_constants``
    metadata : dict
        Config echo, seed, version and checks
    """
    def __init__(self, rows, fits, metadata):
        self.rows = list(rows)
        self.fits = dict(fits)
        self.metadata = dict(metadata)

    @property
    def modes(self):
        ret = []
        for r in self.rows:
            if r["mode"] not in ret:
                ret.append(r["mode"])
        return ret

    @property
    def n_grid(self):
        return sorted(set(r["n"] for r in self.rows))

    def value(self, n, mode, column="mean_delta"):
        """Entry of the table, e.g. ``report.value(16, "plain")``."""
        for r in self.rows:
            if r["n"] == n and r["mode"] == mode:
                return r[column]
        raise KeyError("No row for n=%s, mode=%s." % (n, mode))

    def series(self, mode, column="mean_delta"):
        """(ns, values) of one mode, ns ascending."""
        ns = self.n_grid
        return np.array(ns), np.array([self.value(n, mode, column) for n in ns])

    def slope(self, mode, n_min=None):
        """Fitted log-log slope of one mode; refitted on n >= n_min when given."""
        if n_min is None:
            return self.fits[mode]["slope"]
        ns, values = self.series(mode)
        keep = ns >= n_min
        if np.count_nonzero(keep) < 2:
            raise ValueError("Need at least two grid points with n >= %s." % n_min)
        return fit_slope(ns[keep], values[keep])["slope"]

    def to_csv(self):
        lines = [",".join(CSV_COLUMNS)]
        for r in self.rows:
            lines.append(",".join([str(r["n"]), r["mode"]] +
                                  [format_float(r[c]) for c in CSV_COLUMNS[2:]]))
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {"metadata": self.metadata,
                "fits": self.fits,
                "rows": [{c: r[c] for c in CSV_COLUMNS} for r in self.rows]}

    def to_json(self):
        return dump_json(self.to_dict()) + "\n"

    def write(self, out_dir):
        """Write report.json and report.csv into out_dir; returns both paths."""
        os.makedirs(out_dir, exist_ok=True)
        json_path = os.path.join(out_dir, "report.json")
        csv_path = os.path.join(out_dir, "report.csv")
        with open(json_path, "w") as f:
            f.write(self.to_json())
        with open(csv_path, "w") as f:
            f.write(self.to_csv())
        return json_path, csv_path

    def __repr__(self):
        slopes = ", ".join("%s: %s" % (m, format_float(self.slope(m))) for m in self.modes)
        return "RateReport(n=%s, slopes={%s})" % (self.n_grid, slopes)
