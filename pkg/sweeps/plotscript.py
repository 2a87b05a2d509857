"""
Standalone matplotlib scripts that plot an emitted sweep CSV. Only the generated script imports matplotlib.
"""

from typing import List

__all__ = ("plot_script",)

_HEADER = '''"""Plots {csv_name}; generated by pbg."""
import csv
import pathlib

import matplotlib.pyplot as plt
import numpy as np

HERE = pathlib.Path(__file__).resolve().parent
PARAMETERS = {parameters!r}
OBSERVABLES = {observables!r}


def load():
    with open(HERE / {csv_name!r}, newline="") as f:
        rows = list(csv.DictReader(line for line in f if not line.startswith("#")))

    def column(name):
        return np.array([float(r[name]) if r[name] not in ("", "undefined") else np.nan for r in rows])

    return column
'''

_LINE = '''

def main():
    column = load()
    x = column(PARAMETERS[0])
    fig, ax = plt.subplots()
    for name in OBSERVABLES:
        ax.plot(x, column(name), label=name)
    ax.set_xlabel(PARAMETERS[0])
    ax.legend()
    fig.savefig(HERE / {png_name!r}, dpi=150)


if __name__ == "__main__":
    main()
'''

_MAP = '''

def main():
    column = load()
    x, y = column(PARAMETERS[0]), column(PARAMETERS[1])
    nx = len(np.unique(x))
    fig, axes = plt.subplots(1, len(OBSERVABLES), figsize=(5 * len(OBSERVABLES), 4), squeeze=False)
    for ax, name in zip(axes[0], OBSERVABLES):
        z = column(name).reshape(nx, -1)
        mesh = ax.pcolormesh(x.reshape(nx, -1), y.reshape(nx, -1), z, shading="auto")
        fig.colorbar(mesh, ax=ax)
        ax.set_title(name)
        ax.set_xlabel(PARAMETERS[0])
        ax.set_ylabel(PARAMETERS[1])
    fig.tight_layout()
    fig.savefig(HERE / {png_name!r}, dpi=150)


if __name__ == "__main__":
    main()
'''


def plot_script(csv_name: str, parameters: List[str], observables: List[str]) -> str:
    """Source of a script that reads *csv_name* from its own directory and saves a PNG next to it."""
    png_name = csv_name.rsplit(".", 1)[0] + ".png"
    body = _LINE if len(parameters) == 1 else _MAP
    return _HEADER.format(csv_name=csv_name, parameters=list(parameters), observables=list(observables)) + body.format(
        png_name=png_name
    )
