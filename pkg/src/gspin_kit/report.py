"""Report rendering for the truncated Euler-product command: a delimited
per-factor ledger plus a convergence figure, written side by side into a
report directory."""
from __future__ import annotations

import csv
import os
from typing import Sequence


def render_lsum_report(
    outdir: str,
    rep: str,
    s: float,
    cutoff: int,
    value: float,
    ledger: Sequence[dict],
) -> dict:
    """Write terms.csv and partial_product.png into outdir; returns the
    paths.  The figure shows the running partial product against the
    residue cardinality cutoff."""
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, "terms.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "rep", "factor_value", "euler_poly_coeffs"])
        for entry in ledger:
            writer.writerow(
                [entry["q"], entry["rep"], repr(entry["value"]), ";".join(entry["poly"])]
            )

    png_path = os.path.join(outdir, "partial_product.png")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    qs, partial = [], []
    running = 1.0
    for entry in ledger:
        running *= entry["value"]
        qs.append(entry["q"])
        partial.append(running)

    fig, ax = plt.subplots(figsize=(6, 4))
    if qs:
        ax.plot(qs, partial, marker="o", drawstyle="steps-post")
        ax.axhline(value, linestyle="--", linewidth=0.8)
    else:
        ax.axhline(1.0, linestyle="--", linewidth=0.8)
    ax.set_xlabel("residue cardinality q")
    ax.set_ylabel("running partial product")
    ax.set_title(f"partial L-value, {rep}, s={s}, q <= {cutoff}")
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return {"csv": csv_path, "figure": png_path}
