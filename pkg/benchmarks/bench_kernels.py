"""Time each numba kernel against its numpy fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

The first jit call is excluded (compilation or cache load); results from the
two implementations are compared before timing.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from superstring.bounds import _matching_dp_jit, _matching_dp_numpy
from superstring.exact_solver import _remaining_cost_jit, _remaining_cost_numpy
from superstring.partial_fpt import _colorful_jit, _colorful_numpy, _Prepared
from superstring.strings_core import (
    WeightedCollection,
    _overlap_table_jit,
    _overlap_table_numpy,
    pack,
)


def random_strings(rng, n, length, alphabet=b"01"):
    return [bytes(rng.choice(list(alphabet), size=length).tolist()) for _ in range(n)]


def cases(rng):
    cost = rng.integers(1, 8, size=(16, 16)).astype(np.int32)
    yield "held_karp n=16", _remaining_cost_jit, _remaining_cost_numpy, (cost,)

    S = WeightedCollection.from_strings(random_strings(rng, 40, 6, b"01"))
    prep = _Prepared(S)
    colors = rng.integers(0, 5, size=len(S)).astype(np.int64)
    args = (colors, prep.weights, prep.lengths, prep.ov, prep.sub, 5, 24)
    yield "colorful n=40 k=5 ell=24", _colorful_jit, _colorful_numpy, args

    w = np.triu(rng.integers(0, 20, size=(16, 16)), 1)
    yield "matching_dp n=16", _matching_dp_jit, _matching_dp_numpy, (w + w.T,)

    buf, off = pack(random_strings(rng, 200, 64, b"ab"))
    yield "overlap_table n=200 len=64", _overlap_table_jit, _overlap_table_numpy, (buf, off)


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the rows to this file")
    args = ap.parse_args(argv)

    rows = []
    print(f"{'kernel':30s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fast, slow, inputs in cases(np.random.default_rng(args.seed)):
        if not same(fast(*inputs), slow(*inputs)):
            raise SystemExit(f"{name}: numba and numpy results differ")
        tj = best_of(fast, inputs, args.repeat) * 1e3
        tn = best_of(slow, inputs, args.repeat) * 1e3
        rows.append({"kernel": name, "numba_ms": tj, "numpy_ms": tn, "speedup": tn / tj})
        print(f"{name:30s} {tj:10.2f} {tn:10.2f} {tn / tj:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
