"""Plot a dispersion CSV written by `qwalk dispersion` or the dispersion example.

    qwalk dispersion --alpha 3.9269908169872414 --beta 0.5235987755982988 --out dispersion.csv
    python3 scripts/plot_dispersion.py dispersion.csv dispersion.png

Bulk bands are shaded, the edge curve is drawn as points (rows with an
empty theta_0 column are left out, so the jumps stay visible).
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as f:
        lines = [l for l in f if not l.startswith("#")]
    return list(csv.DictReader(lines))


def main():
    src = sys.argv[1] if len(sys.argv) > 1 else "dispersion.csv"
    out = sys.argv[2] if len(sys.argv) > 2 else "dispersion.png"
    rows = load(src)
    k = [float(r["k"]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for lo, hi in (("band_lo1", "band_hi1"), ("band_lo2", "band_hi2")):
        ax.fill_between(k, [float(r[lo]) for r in rows], [float(r[hi]) for r in rows], color="0.75", lw=0)
    edge = [(float(r["k"]), float(r["theta_0"])) for r in rows if r["theta_0"]]
    ax.plot([e[0] for e in edge], [e[1] for e in edge], ".", ms=1.5, color="C3", label="edge")
    ax.set_xlim(0, 6.283185307179586)
    ax.set_ylim(0, 6.283185307179586)
    ax.set_xlabel("k")
    ax.set_ylabel("theta")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
