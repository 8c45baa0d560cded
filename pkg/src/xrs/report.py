"""Report rendering: aligned text tables for the terminal, tab-separated
records for machines, and matplotlib figures saved next to them."""

from __future__ import annotations

from pathlib import Path


def format_table(headers: list[str], rows: list[list]) -> str:
    """Plain-text table with right-padded columns."""
    cells = [[str(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    out.append("  ".join("-" * w for w in widths))
    for row in cells:
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(out)


def write_tsv(path, headers: list[str], rows: list[list]):
    lines = ["\t".join(headers)]
    lines += ["\t".join(str(c) for c in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_key_size_figure(path, reports):
    """Key size against rate, one line per extension degree, with the
    computed and listed values overlaid."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for m, marker in ((3, "o"), (4, "s")):
        rows = [r for r in reports if r.m == m]
        if not rows:
            continue
        rates = [r.rate for r in rows]
        ax.plot(rates, [r.computed_bits / 1e6 for r in rows], marker=marker,
                label=f"m={m} (computed)")
        ax.scatter(rates, [r.listed_bits / 1e6 for r in rows], marker="x",
                   color="k", zorder=3, label=f"m={m} (listed)")
    ax.set_xlabel("rate k/n")
    ax.set_ylabel("public key size (Mbit)")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_isd_figure(path, grid: dict, best):
    """Heatmap of total attack bits over the (p, ell) search grid."""
    import numpy as np
    plt = _pyplot()
    ps = sorted({p for p, _ in grid})
    ells = sorted({e for _, e in grid})
    z = np.full((len(ps), len(ells)), np.nan)
    for (p, e), bits in grid.items():
        z[ps.index(p), ells.index(e)] = bits
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    im = ax.imshow(z, aspect="auto", origin="lower",
                   extent=(min(ells) - 0.5, max(ells) + 0.5,
                           min(ps) - 0.5, max(ps) + 0.5))
    ax.plot([best.ell], [best.p], "r*", markersize=12,
            label=f"optimum {best.total_bits:.1f} bits")
    ax.set_xlabel("ell (zero blocks)")
    ax.set_ylabel("p (per-half error blocks)")
    fig.colorbar(im, ax=ax, label="log2 total work")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_square_figure(path, reports):
    """Square-code dimension next to the generic ceiling, per experiment arm."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    labels = [r.label for r in reports]
    xs = range(len(reports))
    ax.bar([x - 0.2 for x in xs], [r.dim for r in reports], width=0.4,
           label="square dimension")
    ax.bar([x + 0.2 for x in xs], [r.max_possible for r in reports], width=0.4,
           label="generic ceiling")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("dimension")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
