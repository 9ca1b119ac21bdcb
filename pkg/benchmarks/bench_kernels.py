"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--verify-trials N]

Micro benchmarks call each backend module directly; the end-to-end rows run
``mfull verify`` in a subprocess with ``MFULL_BACKEND`` set.
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from mfull import kernels
from mfull.cli import random_graded_ideal
from mfull.field import Rng
from mfull.groebner import buchberger
from mfull.poly import PolyRing


def _workload(seed=0):
    ring = PolyRing(4)
    I = random_graded_ideal(Rng(seed), 4, 4, 2, 3)
    G = buchberger(I.gens)
    f = I.gens[0] * I.gens[1] * I.gens[2]
    return ring, G, f


def micro(repeat: int) -> list[tuple[str, dict[str, float]]]:
    ring, G, f = _workload()
    a, b = dict(f.terms), dict(G.elements[-1].terms)
    mat = np.random.default_rng(0).integers(0, 32003, size=(120, 160), dtype=np.int64)
    rows = []
    timings: dict[str, dict[str, float]] = {"reduce": {}, "mul_terms": {}, "rank 120x160": {}}
    for name, mod in kernels.backends().items():
        red = mod.Reducer(ring.p, ring._shift, ring._guard, ring.elim)
        for g in G.elements:
            red.add(dict(g.terms))
        timings["reduce"][name] = min(timeit.repeat(lambda: red.reduce(a), number=20, repeat=repeat)) / 20
        timings["mul_terms"][name] = min(timeit.repeat(lambda: mod.mul_terms(a, b, ring.p), number=20,
                                                       repeat=repeat)) / 20
        timings["rank 120x160"][name] = min(timeit.repeat(lambda: mod.rank_mod_p(mat, 32003), number=3,
                                                          repeat=repeat)) / 3
    rows.extend(timings.items())
    return rows


def end_to_end(trials: int) -> dict[str, float]:
    out = {}
    for name in kernels.backends():
        env = dict(os.environ, MFULL_BACKEND=name)
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "mfull", "verify", "--json", "--trials", str(trials)],
                       env=env, check=True, capture_output=True)
        out[name] = time.perf_counter() - t0
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--verify-trials", type=int, default=40)
    ns = ap.parse_args(argv)
    names = list(kernels.backends())
    print("default backend: %s" % kernels.BACKEND)
    print("%-22s" % "kernel" + "".join("%14s" % n for n in names) + "%10s" % "speedup")
    for label, t in micro(ns.repeat):
        speed = t["python"] / t["cython"] if "cython" in t else float("nan")
        print("%-22s" % label + "".join("%12.1fus" % (t[n] * 1e6) for n in names) + "%9.1fx" % speed)
    t = end_to_end(ns.verify_trials)
    speed = t["python"] / t["cython"] if "cython" in t else float("nan")
    print("%-22s" % ("verify x%d" % ns.verify_trials) + "".join("%13.2fs" % t[n] for n in names)
          + "%9.1fx" % speed)
    return 0


if __name__ == "__main__":
    sys.exit(main())
