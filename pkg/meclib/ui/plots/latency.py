import matplotlib.pyplot as plt
import numpy as np

from meclib.data.containers.report import PolicyReportCollection


def plot_normalized_latency(reports, size=(6, 3), title=None):
    """
    Bar chart of the normalized latency of every policy, with a dashed line
    at the optimum (1.0).

    :param reports: a PolicyReportCollection
    :param size:    size of the figure
    :param title:   optional figure title
    :return:        the matplotlib.pyplot.Figure, for further modifications
    """
    assert isinstance(reports, PolicyReportCollection)

    fig, ax = plt.subplots(figsize=size)
    normalized_latency_subplot(ax, reports)
    if title is not None:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def normalized_latency_subplot(ax, reports):
    names = reports.names
    values = [reports[name].normalized_latency for name in names]
    x = np.arange(len(names))

    ax.bar(x, values, color='#4c72b0')
    ax.axhline(1.0, linestyle='--', color='#b5b5b3')
    for xi, value in zip(x, values):
        ax.text(xi, value, "%.3f" % value, ha='center', va='bottom', fontsize=8)

    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=30, ha='right')
    ax.set_ylabel('Normalized latency')
    return ax


def plot_delay_table(table, size=(6, 3)):
    """
    Bar chart of the per-decision delays normalized to the reference policy,
    on a log scale.

    :param table: pandas.DataFrame as returned by bench_policies
    """
    fig, ax = plt.subplots(figsize=size)

    x = np.arange(len(table))
    values = table["delay_normalized_to_greedy"].to_numpy()
    ax.bar(x, values, color='#55a868')
    ax.set_yscale('log')
    for xi, value in zip(x, values):
        ax.text(xi, value, "%.2f" % value, ha='center', va='bottom', fontsize=8)

    ax.set_xticks(x)
    ax.set_xticklabels(table["name"], rotation=30, ha='right')
    ax.set_ylabel('Inference delay (Greedy = 1)')
    fig.tight_layout()
    return fig
