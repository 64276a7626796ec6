"""Daily-profile CSV format (`day,h00..h23`) shared with the scheduling
pipeline, plus per-column scaling to the generator's tanh range."""

import csv

import numpy as np

SAMPLE_HEADER = ["day"] + [f"h{h:02d}" for h in range(24)]


def load_samples_csv(path):
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SAMPLE_HEADER:
            raise ValueError(f"{path}: expected header {','.join(SAMPLE_HEADER)}")
        for ln, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 25:
                raise ValueError(f"{path}: row {ln}: expected 25 fields")
            rows.append([float(v) for v in row[1:]])
    if not rows:
        raise ValueError(f"{path}: no sample rows")
    return np.asarray(rows, dtype=float)


def save_samples_csv(path, samples):
    samples = np.asarray(samples, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SAMPLE_HEADER)
        for i, row in enumerate(samples):
            writer.writerow([i] + [f"{v:.9f}" for v in row])


class ColumnScaler:
    """Per-column min-max map onto [-1, 1]; constant columns map to -1."""

    def __init__(self, data):
        data = np.asarray(data, dtype=float)
        self.lo = data.min(axis=0)
        self.hi = data.max(axis=0)
        self.span = np.maximum(self.hi - self.lo, 1e-12)

    def transform(self, data):
        return 2.0 * (np.asarray(data, dtype=float) - self.lo) / self.span - 1.0

    def inverse(self, scaled):
        out = (np.asarray(scaled, dtype=float) + 1.0) / 2.0 * self.span + self.lo
        return np.clip(out, 0.0, None)

    def state(self):
        return {"lo": self.lo.tolist(), "hi": self.hi.tolist()}

    @classmethod
    def from_state(cls, state):
        obj = cls.__new__(cls)
        obj.lo = np.asarray(state["lo"], dtype=float)
        obj.hi = np.asarray(state["hi"], dtype=float)
        obj.span = np.maximum(obj.hi - obj.lo, 1e-12)
        return obj


def make_bimodal_profiles(n=256, seed=0):
    """Small synthetic two-mode daily dataset for tests and demos."""
    rng = np.random.default_rng(seed)
    hours = np.arange(24.0)
    shape = np.clip(np.sin(np.pi * (hours - 6.0) / 13.0), 0.0, None)
    shape[:6] = 0.0
    shape[20:] = 0.0
    out = np.empty((n, 24))
    high = rng.random(n) < 0.5
    for i in range(n):
        peak = 100.0 if high[i] else 35.0
        out[i] = np.clip(peak * shape * (1 + 0.05 * rng.standard_normal())
                         + 1.5 * rng.standard_normal(24) * (shape > 0), 0, None)
    return out
