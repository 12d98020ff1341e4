"""Time the compiled elimination kernel against the pure-Python one.

Example:
  python benchmarks/bench_kernel.py --groups 2,3,4,5,6 --degree 5 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import time

from cyclehom.bar import bar_complex
from cyclehom.groups import cyclic
from cyclehom.kernel import available_backends, eliminate


def time_backend(mat, backend, modulus, repeat):
    ip, ix, dv = mat.csc()
    best = float("inf")
    rank = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        e = eliminate(ip, ix, dv, mat.rows, modulus=modulus, record=True, backend=backend)
        best = min(best, time.perf_counter() - t0)
        rank = e.rank
    return best, rank


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", default="2,3,4,5,6", help="orders of cyclic groups")
    ap.add_argument("--degree", type=int, default=5, help="bar differential d_k to eliminate")
    ap.add_argument("--modulus", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = available_backends()
    rows = []
    for m in [int(x) for x in args.groups.split(",")]:
        mat = bar_complex(cyclic(m), args.degree).d(args.degree)
        row = {"group": f"Z/{m}", "shape": list(mat.shape), "nnz": mat.nnz}
        for b in backends:
            secs, rank = time_backend(mat, b, args.modulus, args.repeat)
            row[f"{b}_s"] = round(secs, 5)
            row["rank"] = rank
        if "compiled" in backends:
            row["speedup"] = round(row["python_s"] / max(row["compiled_s"], 1e-9), 1)
        rows.append(row)

    if args.json:
        print(json.dumps({"backends": backends, "degree": args.degree, "rows": rows}, indent=2, sort_keys=True))
        return 0
    print(f"backends: {', '.join(backends)}   d_{args.degree}, modulus {args.modulus}")
    for r in rows:
        line = f"{r['group']:>5}  {r['shape'][0]:>6}x{r['shape'][1]:<6} nnz={r['nnz']:<8} rank={r['rank']:<6}"
        line += "  " + "  ".join(f"{b}={r[b + '_s']:.4f}s" for b in backends)
        if "speedup" in r:
            line += f"  speedup x{r['speedup']}"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
