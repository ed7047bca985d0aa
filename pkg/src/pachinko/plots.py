"""Figure rendering for the report-producing CLI paths.

Every function writes one figure to a file path and returns the path;
nothing is shown interactively (Agg backend, safe headless).
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def plot_distribution(dist, path: str, title: str = "") -> str:
    """Bar chart of pattern probabilities in enumeration order."""
    patterns = list(dist.amplitudes)
    probs = [dist.probability(p) for p in patterns]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(range(len(probs)), probs, color="#3465a4")
    if len(patterns) <= 36:
        ax.set_xticks(range(len(patterns)))
        ax.set_xticklabels(
            ["".join(map(str, p)) for p in patterns], rotation=90, fontsize=7
        )
        ax.set_xlabel("output pattern")
    else:
        ax.set_xlabel("output pattern index (lexicographic)")
    ax.set_ylabel("probability")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_bench(rows, path: str) -> str:
    """Semilog timing curves: permanent vs determinant."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for method, marker in (("ryser", "o"), ("determinant", "s")):
        pts = sorted((r.n, r.mean_seconds) for r in rows if r.method == method)
        if pts:
            ax.semilogy(*zip(*pts), marker=marker, label=method)
    ax.set_xlabel("matrix dimension n")
    ax.set_ylabel("mean seconds per call")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_complexity(rows, path: str) -> str:
    """Growth of the exact counts with depth, on a log10 axis."""
    Ls = [r.L for r in rows]
    series = (
        ("dim (bosonic, N=2L-1)", [math.log10(r.dim_bosonic) for r in rows]),
        ("dim (fermionic, N=L)", [math.log10(r.dim_fermionic) for r in rows]),
        ("paths 2^(LN)", [math.log10(r.path_count) for r in rows]),
        ("permanent ops 2^(2L) L^2", [math.log10(r.ryser_ops) for r in rows]),
    )
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, ys in series:
        ax.plot(Ls, ys, marker=".", label=label)
    ax.set_xlabel("depth L")
    ax.set_ylabel("log10(count)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_mean_photons(values, path: str, title: str = "") -> str:
    """Per-detector mean photon numbers."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(1, len(values) + 1), values, color="#73d216")
    ax.set_xlabel("detector (1-based device numbering)")
    ax.set_ylabel("mean photon number")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
