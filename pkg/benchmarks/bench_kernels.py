"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times each kernel on algebras of increasing size, then the exhaustive
small-context run end to end with each backend forced via WEAKREL_PURE_PYTHON.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from weakrel import kernels
from weakrel.algebra import build_algebra, product_context
from weakrel.context import make_context


def workloads():
    s3 = make_context(["x", "y"], [], "full", {"x": "y", "y": "x"})
    anti3 = make_context(["a", "b", "c"], [], "full")
    yield "S3 (16)", build_algebra(s3)
    yield "antichain3 (512)", build_algebra(anti3)
    yield "anti3+pt (1024)", build_algebra(product_context([anti3, make_context(["p"])]))


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_rows(repeat):
    mods = {name: kernels.load_backend(name) for name in kernels.available_backends()}
    for label, alg in workloads():
        masks = np.array(alg.masks, dtype=np.uint64)
        leq = alg.subset_order()
        ctx = alg.context
        up = ctx.up_masks
        order = np.array(sorted(up, key=lambda p: (bin(up[p]).count("1"), p)), dtype=np.int64)
        above = np.zeros(ctx.n * ctx.n, dtype=np.uint64)
        for p, m in up.items():
            above[p] = m & ~(1 << p)
        jobs = {
            "compose_table": lambda m: m.compose_table(masks, masks, ctx.n),
            "assoc": lambda m: m.assoc_failures(alg.mul),
            "distrib": lambda m: m.distrib_failures(alg.meet, alg.join),
            "residuation": lambda m: m.residuation_failures(leq, alg.mul, alg.ldiv, alg.rdiv),
            "upsets": lambda m: m.enumerate_upsets(order, above, 10**7),
        }
        for job, fn in jobs.items():
            row = {name: best(lambda: fn(mod), repeat) for name, mod in mods.items()}
            yield label, job, row


def end_to_end(backend):
    env = dict(os.environ, WEAKREL_PURE_PYTHON="1" if backend == "python" else "0")
    code = ("import time; from weakrel.algebra import check_small_contexts as c; import weakrel;"
            "t=time.perf_counter(); r=[x[1].passed for x in c(3)];"
            "print(weakrel.BACKEND, time.perf_counter()-t, all(r))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, secs, ok = out.stdout.split()
    return name, float(secs), ok == "True"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    names = kernels.available_backends()
    print(f"{'workload':<18} {'kernel':<14} " + " ".join(f"{n:>10}" for n in names) + "   speedup")
    for label, job, row in kernel_rows(args.repeat):
        cells = " ".join(f"{row[n] * 1e3:>8.2f}ms" for n in names)
        speed = f"{row['python'] / row['cython']:>8.1f}x" if "cython" in row and row["cython"] > 0 else ""
        print(f"{label:<18} {job:<14} {cells} {speed}")
    if not args.skip_e2e:
        print()
        for backend in names:
            name, secs, ok = end_to_end(backend)
            print(f"exhaustive |X|<=3 with {name:<7}: {secs:6.2f}s  axioms {'pass' if ok else 'FAIL'}")


if __name__ == "__main__":
    main()
