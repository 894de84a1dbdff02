"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_rref.py [--repeat 3]

Times the raw kernel on random integer matrices and one end-to-end
workload (tensor-power check for the P^2 Beilinson algebra) with each
backend, in a fresh interpreter so the backend choice at import is honest.
"""
import argparse
import os
import subprocess
import sys
import time

KERNEL = r"""
import random, time
from quivergrad import _backend
rng = random.Random(7)
# sparse +-1 rows, the shape of relation and boundary matrices in practice
mats = [[[rng.choice((-1, 1)) if rng.random() < 0.08 else 0 for _ in range(120)]
         for _ in range(100)] for _ in range(20)]
t = time.perf_counter()
for m in mats:
    _backend.rref_int(m, 120)
print(_backend.BACKEND, time.perf_counter() - t)
"""

WORKLOAD = r"""
import time
from quivergrad import _backend, corpus
from quivergrad.bimodule import ext_bimodule
from quivergrad.preprojective import check_against_tensor_powers, higher_preprojective_presentation
t = time.perf_counter()
A = corpus.beilinson(2)
E = ext_bimodule(A, 2)
pp = higher_preprojective_presentation(A, 2)
check_against_tensor_powers(pp, E, 2, 6)
print(_backend.BACKEND, time.perf_counter() - t)
"""


def run(code, pure):
    env = dict(os.environ)
    env.pop("QUIVERGRAD_PURE", None)
    if pure:
        env["QUIVERGRAD_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    for label, code in (("kernel 20x(100x120)", KERNEL), ("P2 tensor check", WORKLOAD)):
        best = {}
        for _ in range(args.repeat):
            for pure in (False, True):
                name, secs = run(code, pure)
                best[name] = min(best.get(name, secs), secs)
        line = "  ".join(f"{k}={v:.3f}s" for k, v in sorted(best.items()))
        if "compiled" in best and "python" in best:
            line += f"  speedup={best['python'] / best['compiled']:.1f}x"
        print(f"{label:20s} {line}")


if __name__ == "__main__":
    main()
