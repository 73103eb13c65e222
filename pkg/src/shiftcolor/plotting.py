"""Figures written next to the JSON reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .upseq import UPSeq  # noqa: E402

PALETTE = ["#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb"]


def _style(ax, title):
    ax.set_title(title, fontsize=10)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(labelsize=8)


def _bars(ax, counts: dict, title: str):
    keys = list(counts)
    ax.bar(range(len(keys)), [counts[k] for k in keys],
           color=[PALETTE[i % len(PALETTE)] for i in range(len(keys))])
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=35, ha="right")
    _style(ax, title)


def _numeric(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, bool):
            out[k] = int(v)
        elif isinstance(v, (int, float)):
            out[k] = v
        elif isinstance(v, dict):
            out.update({f"{k}:{kk}": vv for kk, vv in _numeric(v).items()})
    return out


def render_report(report, path) -> None:
    """Stats on the left, violations by property on the right."""
    by_prop: dict = {}
    for v in report.violations:
        by_prop[v["property"]] = by_prop.get(v["property"], 0) + 1
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    stats = _numeric(report.stats)
    if stats:
        _bars(ax1, stats, f"{report.suite}: {report.spec}")
    else:
        _style(ax1, f"{report.suite}: {report.spec} (no stats)")
    if by_prop:
        _bars(ax2, by_prop, "violations")
    else:
        ax2.text(0.5, 0.5, f"no violations\n{report.valid} valid samples",
                 ha="center", va="center", fontsize=11)
        ax2.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_derivation(chain: list, m: UPSeq, n: UPSeq, M: UPSeq, path,
                      horizon: int = None) -> None:
    """m_k, n_k and M_k over two cycles, plus head lengths down the chain."""
    horizon = horizon or (len(m.pre) + 2 * len(m.per) + 1)
    ks = list(range(horizon))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.step(ks, [m.at(k) for k in ks], where="mid", color=PALETTE[0], label="m_k")
    ax1.step(ks, [n.at(k) for k in ks], where="mid", color=PALETTE[1], label="n_k")
    ax1.step(ks, [M.at(k) for k in ks], where="mid", color=PALETTE[2], ls="--", label="M_k")
    ax1.set_xlabel("k", fontsize=9)
    ax1.legend(fontsize=8, frameon=False)
    _style(ax1, "derivative profile")
    heads = [len(Y.at(0)) for Y in chain]
    ax2.plot(range(len(heads)), heads, "o-", color=PALETTE[3])
    ax2.set_xlabel("derivation step", fontsize=9)
    ax2.set_ylabel("len of term 0", fontsize=9)
    ax2.set_xticks(range(len(heads)))
    _style(ax2, "derivation chain")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
