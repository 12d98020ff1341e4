"""Bundled example inputs: group files, action files and a small double complex."""

from __future__ import annotations

import json
from pathlib import Path

from cyclehom.groups import FiniteGroup, cyclic, inversion, mu, symmetric, trivial_group
from cyclehom.spectral import build_constant_row_grid


def group_file(g: FiniteGroup) -> dict:
    return g.to_json()


def action_file(group_name: str, generators) -> dict:
    return {"format_version": "1", "group": f"{group_name}.json", "generators": [list(p) for p in generators]}


def corpus() -> dict:
    """File name -> JSON object."""
    files = {"trivial.json": group_file(trivial_group())}
    for n in range(2, 7):
        files[f"Z{n}.json"] = group_file(cyclic(n))
    files["S3.json"] = group_file(symmetric(3))
    for n in range(2, 8):
        g = mu(n)
        files[f"mu{n}.json"] = group_file(g)
        files[f"mu{n}_conjugation.json"] = action_file(f"mu{n}", [inversion(g)])
        files[f"mu{n}_trivial.json"] = action_file(f"mu{n}", [])
    files["koszul_square.json"] = {
        "format_version": "1",
        "ranks": [[1, 1], [1, 1]],
        "d_h": [{"s": 1, "t": 0, "entries": [[0, 0, 1]]}, {"s": 1, "t": 1, "entries": [[0, 0, 1]]}],
        "d_v": [{"s": 0, "t": 1, "entries": [[0, 0, 1]]}, {"s": 1, "t": 1, "entries": [[0, 0, 1]]}],
    }
    grid = build_constant_row_grid(cyclic(2), 2, 2)
    files["Z2_constant_rows.json"] = dict(grid.to_json(), window=list(grid.window))
    return files


def write_corpus(outdir) -> list:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, obj in sorted(corpus().items()):
        path = out / name
        path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    return written
