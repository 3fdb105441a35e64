"""Parameter sweeps over the family ``g_{alpha1, alpha2}`` on S^3.

Every record carries the three Ricci eigenvalues (directions
``alpha1 e1, alpha2 e2, e3``), the sign class of the Ricci tensor and one
``int H`` value per requested string class.  Rows come out in row-major
order (``alpha1`` outer, ``alpha2`` inner) whatever the number of workers.

Float sweeps run through the vectorised pipeline in :mod:`.batch`; exact
sweeps run the scalar rational pipeline point by point and may fan out
over processes.

CSV files written here have a header row, comma separators, ``\\n`` line
ends and floats in shortest round-trip form (``repr``).  Exact values are
written as ``p/q``.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import csv
import io
import json
import math
import os
from typing import Dict, Tuple

import numpy as np
from scipy.optimize import brentq

from ._exact import is_exact, parse_rational
from .batch import family_batch
from .chern_simons import integral_H
from .geometry import (RicciRegion, family_ricci_eigenvalues, region_curves,
                       ricci_positivity)
from .metric import Chirality, g_alpha
from .string_class import Anchor, StringClass

__all__ = ["SweepSpecError", "GridRange", "SweepSpec", "SweepRecord", "sweep",
           "write_records", "RegionSummary", "classify_region", "classify_eigenvalues",
           "find_H_zero", "ricci_zero_set", "level_set", "emit_figures", "FIGURE_FILES",
           "berger_values"]

FIGURE_FILES = ("fig1a_region.csv", "fig1b_contours.csv", "fig2a_left_berger.csv",
                "fig2b_right_berger.csv")
CONTOUR_LEVELS = (-5.0, -3.0, -2.0, -1.5, -1.25, -1.1)
REGION_TOL = 1e-12


class SweepSpecError(ValueError):
    """Malformed sweep specification."""


@dataclass(frozen=True)
class GridRange:
    min: object
    max: object
    steps: int

    def __post_init__(self):
        try:
            lo, hi = float(parse_rational(self.min)), float(parse_rational(self.max))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SweepSpecError(f"bad range bounds {self.min!r}, {self.max!r}") from exc
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 1:
            raise SweepSpecError("steps must be a positive integer")
        if not (lo > 0 and hi > 0):
            raise SweepSpecError("ranges must be strictly positive")
        if self.steps >= 2 and not hi > lo:
            raise SweepSpecError("range max must exceed min")

    @classmethod
    def fixed(cls, value):
        return cls(value, value, 1)

    @classmethod
    def parse(cls, doc, name):
        if isinstance(doc, GridRange):
            return doc
        if isinstance(doc, (int, float, str)) and not isinstance(doc, bool):
            return cls.fixed(doc)
        if isinstance(doc, dict):
            try:
                return cls(doc["min"], doc["max"], doc["steps"])
            except KeyError as exc:
                raise SweepSpecError(f"{name} needs min, max and steps") from exc
        if isinstance(doc, (list, tuple)) and len(doc) == 3:
            return cls(doc[0], doc[1], doc[2])
        raise SweepSpecError(f"cannot read {name} range from {doc!r}")

    def values(self, exact=False):
        """Grid points ``min + k (max - min) / (steps - 1)``, computed exactly;
        float mode returns the nearest doubles, so both modes sample the
        same points (``0.6`` rather than ``0.6000000000000001``)."""
        lo, hi = parse_rational(self.min), parse_rational(self.max)
        if self.steps == 1:
            pts = [lo]
        else:
            step = (hi - lo) / (self.steps - 1)
            pts = [lo + k * step for k in range(self.steps)]
        return pts if exact else [float(x) for x in pts]

    def to_json(self):
        return {"min": _json_number(self.min), "max": _json_number(self.max),
                "steps": self.steps}


def _json_number(x):
    if isinstance(x, (int, float, str)):
        return x
    return str(x)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep.  ``alpha2`` may be a single value (the Berger line when 1)."""
    alpha1: GridRange
    alpha2: GridRange
    classes: Tuple[StringClass, ...] = (StringClass(Anchor.L),)
    chirality: Chirality = Chirality.LEFT
    format: str = "csv"
    mode: str = "float"
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alpha1", GridRange.parse(self.alpha1, "alpha1"))
        object.__setattr__(self, "alpha2", GridRange.parse(self.alpha2, "alpha2"))
        try:
            classes = tuple(StringClass.parse(c) for c in self.classes)
            chir = Chirality.parse(self.chirality)
        except ValueError as exc:
            raise SweepSpecError(str(exc)) from exc
        if not classes:
            raise SweepSpecError("at least one string class is required")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "chirality", chir)
        if self.format not in ("csv", "json"):
            raise SweepSpecError(f"format must be csv or json, not {self.format!r}")
        if self.mode not in ("float", "exact"):
            raise SweepSpecError(f"mode must be float or exact, not {self.mode!r}")
        if isinstance(self.workers, bool) or not isinstance(self.workers, int) \
                or self.workers < 1:
            raise SweepSpecError("workers must be a positive integer")

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise SweepSpecError("sweep spec must be a JSON object")
        known = {"alpha1", "alpha2", "classes", "chirality", "format", "mode", "workers"}
        extra = set(doc) - known
        if extra:
            raise SweepSpecError(f"unknown spec fields: {sorted(extra)}")
        if "alpha1" not in doc:
            raise SweepSpecError("spec needs alpha1")
        kw = dict(doc)
        kw.setdefault("alpha2", 1)
        if "classes" in kw:
            if isinstance(kw["classes"], str) or not isinstance(kw["classes"], list):
                raise SweepSpecError("classes must be a list of strings")
            kw["classes"] = tuple(kw["classes"])
        return cls(**kw)

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SweepSpecError(f"spec is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(fh.read())

    @property
    def exact(self):
        return self.mode == "exact"

    def to_json(self):
        return {"alpha1": self.alpha1.to_json(), "alpha2": self.alpha2.to_json(),
                "classes": [str(c) for c in self.classes], "chirality": self.chirality.value,
                "format": self.format, "mode": self.mode, "workers": self.workers}


@dataclass(frozen=True)
class SweepRecord:
    alpha1: object
    alpha2: object
    ric: Tuple[object, object, object]
    ric_class: RicciRegion
    values: Dict[str, object] = field(default_factory=dict)

    def row(self):
        return [self.alpha1, self.alpha2, *self.ric, self.ric_class.value,
                *self.values.values()]

    def to_json(self):
        d = {"alpha1": _fmt(self.alpha1), "alpha2": _fmt(self.alpha2),
             "ric1": _fmt(self.ric[0]), "ric2": _fmt(self.ric[1]), "ric3": _fmt(self.ric[2]),
             "ric_class": self.ric_class.value}
        d.update({f"H[{k}]": _fmt(v) for k, v in self.values.items()})
        return d


def _fmt(x):
    if isinstance(x, str):
        return x
    if is_exact(x):
        return str(x)
    return repr(float(x))


def header(classes):
    return ["alpha1", "alpha2", "ric1", "ric2", "ric3", "ric_class",
            *(f"H[{c}]" for c in classes)]


# ---------------------------------------------------------------------------
# region classification

def classify_eigenvalues(eigs, alpha1, alpha2, tol=REGION_TOL):
    """Vectorised sign classification of ``(..., 3)`` eigenvalue stacks.

    An eigenvalue within ``tol`` of zero, relative to the size of the
    connection terms, counts as zero.  Returns an array of region strings.
    """
    eigs = np.asarray(eigs, dtype=float)
    a1, a2 = np.asarray(alpha1, dtype=float), np.asarray(alpha2, dtype=float)
    scale = (a1 * a2 + a1 / a2 + a2 / a1) ** 2
    zero = np.abs(eigs) <= tol * scale[..., None]
    pos = (eigs > 0) & ~zero
    neg = (eigs < 0) & ~zero
    out = np.full(eigs.shape[:-1], RicciRegion.BOUNDARY.value, dtype=object)
    out[np.all(pos, axis=-1)] = RicciRegion.INTERIOR.value
    out[np.any(neg, axis=-1)] = RicciRegion.OUTSIDE.value
    return out


# ---------------------------------------------------------------------------
# sweeps

def _float_block(a1s, a2s, classes, chirality):
    A1, A2 = np.meshgrid(np.asarray(a1s, dtype=float), np.asarray(a2s, dtype=float),
                         indexing="ij")
    eigs, base = family_batch(A1, A2, chirality)
    regions = classify_eigenvalues(eigs, A1, A2)
    anchor = Anchor.L if chirality is Chirality.LEFT else Anchor.R
    offsets = [c.relative_to(anchor) for c in classes]
    records = []
    for i in range(A1.shape[0]):
        for j in range(A1.shape[1]):
            vals = {str(c): float(base[i, j] + off) for c, off in zip(classes, offsets)}
            records.append(SweepRecord(float(A1[i, j]), float(A2[i, j]),
                                       tuple(float(v) for v in eigs[i, j]),
                                       RicciRegion(regions[i, j]), vals))
    return records


def _exact_row(args):
    a1, a2s, classes, chirality = args
    rows = []
    for a2 in a2s:
        g = g_alpha(a1, a2, chirality, exact=True)
        eig = family_ricci_eigenvalues(a1, a2, chirality, exact=True)
        vals = {str(c): integral_H(c, g) for c in classes}
        rows.append(SweepRecord(a1, a2, tuple(eig), ricci_positivity(a1, a2), vals))
    return rows


def _chunks(seq, n):
    k = max(1, math.ceil(len(seq) / n))
    return [seq[i:i + k] for i in range(0, len(seq), k)]


def _float_chunk(args):
    return _float_block(*args)


def sweep(spec):
    """All records of ``spec`` in row-major order."""
    a1s = spec.alpha1.values(spec.exact)
    a2s = spec.alpha2.values(spec.exact)
    classes, chir = spec.classes, spec.chirality
    if spec.exact:
        jobs = [(a1, a2s, classes, chir) for a1 in a1s]
        if spec.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(spec.workers) as pool:
                parts = list(pool.map(_exact_row, jobs))
        else:
            parts = [_exact_row(j) for j in jobs]
    else:
        jobs = [(chunk, a2s, classes, chir) for chunk in _chunks(a1s, spec.workers)]
        if spec.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(spec.workers) as pool:
                parts = list(pool.map(_float_chunk, jobs))
        else:
            parts = [_float_chunk(j) for j in jobs]
    return [r for part in parts for r in part]


def _write_csv(fh, head, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(head)
    for r in rows:
        w.writerow([_fmt(x) for x in r])


def write_records(records, spec, out=None):
    """Serialise records as CSV or JSON; returns the text, and writes it to
    ``out`` (a path) when given."""
    buf = io.StringIO()
    if spec.format == "csv":
        _write_csv(buf, header(spec.classes), (r.row() for r in records))
    else:
        json.dump({"spec": spec.to_json(), "records": [r.to_json() for r in records]},
                  buf, indent=1)
        buf.write("\n")
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text


# ---------------------------------------------------------------------------
# region summary

@dataclass
class RegionSummary:
    alpha1: np.ndarray
    alpha2: np.ndarray
    eigenvalues: np.ndarray          # (n1, n2, 3)
    regions: np.ndarray              # (n1, n2) region strings
    curves: Tuple[np.ndarray, np.ndarray, np.ndarray]  # sampled at alpha1

    @property
    def interior(self):
        return self.regions == RicciRegion.INTERIOR.value

    def counts(self):
        vals, counts = np.unique(self.regions.astype(str), return_counts=True)
        return dict(zip(vals.tolist(), counts.tolist()))


def classify_region(spec):
    """Per-cell Ricci classification plus the three boundary curves sampled
    at the grid's ``alpha1`` values (cross-check layer only)."""
    a1 = np.asarray(spec.alpha1.values(False), dtype=float)
    a2 = np.asarray(spec.alpha2.values(False), dtype=float)
    A1, A2 = np.meshgrid(a1, a2, indexing="ij")
    eigs, _ = family_batch(A1, A2, spec.chirality)
    return RegionSummary(a1, a2, eigs, classify_eigenvalues(eigs, A1, A2), region_curves(a1))


# ---------------------------------------------------------------------------
# zero sets

def berger_values(alpha1, string_class, chirality="left", alpha2=1.0):
    """``int H`` along a line of fixed ``alpha2`` (complex input allowed)."""
    cls = StringClass.parse(string_class)
    chir = Chirality.parse(chirality)
    anchor = Anchor.L if chir is Chirality.LEFT else Anchor.R
    _, base = family_batch(alpha1, alpha2, chir)
    return base + cls.relative_to(anchor)


def _roots_1d(f, lo, hi, samples, tol, ztol):
    """All roots of ``f`` on ``[lo, hi]``: sign changes by Brent's method, plus
    touching roots found as zeros of the complex-step derivative."""
    xs = np.linspace(lo, hi, samples)
    ys = np.real(f(xs))
    h = 1e-30
    ds = np.imag(f(xs + 1j * h)) / h
    scale = np.maximum(1.0, np.abs(ys))
    roots = []
    for k, (x, y) in enumerate(zip(xs, ys)):
        if y == 0:
            roots.append(float(x))
    for k in range(samples - 1):
        y0, y1 = ys[k], ys[k + 1]
        if y0 * y1 < 0:
            roots.append(brentq(lambda x: float(np.real(f(x))), xs[k], xs[k + 1],
                                xtol=tol, rtol=4 * np.finfo(float).eps))
        elif ds[k] * ds[k + 1] < 0 and y0 * y1 > 0:
            fp = lambda x: float(np.imag(f(x + 1j * h)) / h)  # noqa: E731
            x = brentq(fp, xs[k], xs[k + 1], xtol=tol, rtol=4 * np.finfo(float).eps)
            if abs(float(np.real(f(x)))) <= ztol * max(scale[k], scale[k + 1]):
                roots.append(x)
    roots.sort()
    out = []
    for r in roots:
        if not out or abs(r - out[-1]) > 10 * tol:
            out.append(float(r))
    return out


def find_H_zero(string_class, chirality="left", family="berger", alpha1=(0.2, 3.0),
                alpha2=(0.2, 3.0), samples=561, tol=1e-12, ztol=1e-9, target=0.0):
    """Zeros of ``int H - target`` for one class.

    ``family="berger"``: roots ``alpha1`` on the line ``alpha2 = 1`` inside
    ``alpha1``.  ``family="full-grid"``: points ``(alpha1, alpha2)`` of the
    zero set, one search in ``alpha2`` per column of a ``samples``-point
    ``alpha1`` grid.  No sign change gives an empty list.  A nonzero
    ``target`` turns this into a level-value search.
    """
    cls = StringClass.parse(string_class)
    chir = Chirality.parse(chirality)
    lo, hi = (float(v) for v in alpha1)
    if not 0 < lo < hi:
        raise ValueError("alpha1 interval must be positive and increasing")
    if family == "berger":
        return _roots_1d(lambda x: berger_values(x, cls, chir) - target, lo, hi, samples,
                         tol, ztol)
    if family != "full-grid":
        raise ValueError(f"unknown family {family!r}; use 'berger' or 'full-grid'")
    lo2, hi2 = (float(v) for v in alpha2)
    if not 0 < lo2 < hi2:
        raise ValueError("alpha2 interval must be positive and increasing")
    points = []
    for a1 in np.linspace(lo, hi, samples):
        f = lambda y, a1=a1: berger_values(a1, cls, chir, alpha2=y) - target  # noqa: E731
        points.extend((float(a1), y) for y in _roots_1d(f, lo2, hi2, samples, tol, ztol))
    return points


def ricci_zero_set(alpha1_values, alpha2=(0.2, 3.0), samples=561, tol=1e-13,
                   chirality="left"):
    """Points where a Ricci eigenvalue of the pipeline changes sign, one
    search in ``alpha2`` per ``alpha1`` value.

    Each of the three boundary curves kills two eigenvalues at once, so
    ``det Ric`` only touches zero there; the search bisects on the single
    eigenvalues instead.  Returns sorted ``(alpha1, alpha2)`` pairs.
    """
    chir = Chirality.parse(chirality)
    points = []
    ys = np.linspace(alpha2[0], alpha2[1], samples)
    for a1 in alpha1_values:
        eigs, _ = family_batch(a1, ys, chir)
        found = []
        for m in range(3):
            f = lambda y, m=m: float(family_batch(a1, y, chir)[0][m])  # noqa: E731
            v = eigs[:, m]
            for k in range(samples - 1):
                if v[k] == 0:
                    found.append(float(ys[k]))
                elif v[k] * v[k + 1] < 0:
                    found.append(float(brentq(f, ys[k], ys[k + 1], xtol=tol,
                                              rtol=4 * np.finfo(float).eps)))
        found.sort()
        for y in found:
            if not points or points[-1][0] != float(a1) or abs(points[-1][1] - y) > 1e-9:
                points.append((float(a1), y))
    return points


def level_set(level, alpha1_values, alpha2=(0.2, 3.0), samples=561, tol=1e-12,
              string_class="L", chirality="left"):
    """Points of ``{int H = level}``, found column by column in ``alpha2``."""
    cls = StringClass.parse(string_class)
    chir = Chirality.parse(chirality)
    points = []
    for a1 in alpha1_values:
        f = lambda y, a1=a1: berger_values(a1, cls, chir, alpha2=y) - level  # noqa: E731
        ys = np.linspace(alpha2[0], alpha2[1], samples)
        vals = np.real(f(ys))
        for k in range(samples - 1):
            if vals[k] == 0:
                points.append((float(a1), float(ys[k])))
            elif vals[k] * vals[k + 1] < 0:
                points.append((float(a1), float(brentq(lambda y: float(np.real(f(y))),
                                                       ys[k], ys[k + 1], xtol=tol))))
    return points


# ---------------------------------------------------------------------------
# figure data

def _berger_alphas(lo, hi, steps):
    # the grid plus the two special points of the Berger line
    pts = set(np.linspace(lo, hi, steps).tolist()) | {1.0, 1 / math.sqrt(2)}
    return sorted(p for p in pts if lo <= p <= hi)


def emit_figures(outdir, steps=281, lo=0.2, hi=3.0, levels=CONTOUR_LEVELS):
    """Write the four figure tables into ``outdir``; returns their paths.

    fig1a_region.csv     alpha1,alpha2,ric1,ric2,ric3,ric_class
    fig1b_contours.csv   level,alpha1,alpha2            (points of {int H_L = level})
    fig2a_left_berger.csv   alpha1,H[L],H[dD4],H[R]     (left-invariant, alpha2 = 1)
    fig2b_right_berger.csv  alpha1,H[L],H[dD4],H[R]     (right-invariant, alpha2 = 1)

    Berger tables add the rows ``alpha1 = 1/sqrt(2)`` and ``1`` to the grid.
    """
    os.makedirs(outdir, exist_ok=True)
    spec = SweepSpec(GridRange(lo, hi, steps), GridRange(lo, hi, steps))
    summary = classify_region(spec)
    paths = [os.path.join(outdir, name) for name in FIGURE_FILES]

    rows = []
    for i, a1 in enumerate(summary.alpha1):
        for j, a2 in enumerate(summary.alpha2):
            e = summary.eigenvalues[i, j]
            rows.append([float(a1), float(a2), float(e[0]), float(e[1]), float(e[2]),
                         summary.regions[i, j]])
    with open(paths[0], "w", newline="") as fh:
        _write_csv(fh, ["alpha1", "alpha2", "ric1", "ric2", "ric3", "ric_class"], rows)

    rows = []
    for level in levels:
        rows.extend([level, a, b] for a, b in level_set(level, summary.alpha1, (lo, hi)))
    with open(paths[1], "w", newline="") as fh:
        _write_csv(fh, ["level", "alpha1", "alpha2"], rows)

    classes = ("L", "dD4", "R")
    alphas = np.asarray(_berger_alphas(lo, hi, steps))
    for path, chir in ((paths[2], "left"), (paths[3], "right")):
        cols = [berger_values(alphas, c, chir) for c in classes]
        rows = [[float(a), *(float(c[k]) for c in cols)] for k, a in enumerate(alphas)]
        with open(path, "w", newline="") as fh:
            _write_csv(fh, ["alpha1", *(f"H[{c}]" for c in classes)], rows)
    return paths
