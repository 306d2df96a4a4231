"""Compare the compiled and pure-Python partition-refinement kernels.

    python benchmarks/bench_refine.py [--states N] [--repeat R]

Inputs are random LTSs plus the LTS of a large parallel composition, so
both sparse and structured inputs are covered.  Both kernels must agree.
"""

import argparse
import random
import timeit

from ccs import parse
from ccs._kernel import refine_ext, refine_py
from ccs.equiv import _encode
from ccs.lts import LtsLimits, build_lts


def random_instance(rng, n, degree, actions):
    edges = [(rng.randrange(n), rng.randrange(actions), rng.randrange(n)) for _ in range(n * degree)]
    return n, edges


def ccs_instance():
    # a chain of one-place buffers linked by restricted channels
    cells = [f"(rec B{i}. c{i}.'c{i + 1}.B{i})" for i in range(8)]
    hidden = ", ".join(f"c{i}" for i in range(1, 8))
    lts = build_lts(parse(f"({' | '.join(cells)}) \\ {{{hidden}}}"), LtsLimits(max_states=100_000))
    return lts.num_states, _encode(lts.edges)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--states", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(0)
    cases = {
        f"random n={args.states} deg=3": random_instance(rng, args.states, 3, 3),
        f"random n={args.states // 4} deg=8": random_instance(rng, args.states // 4, 8, 2),
        "buffer chain (8 cells)": ccs_instance(),
    }
    kernels = {"python": refine_py}
    if refine_ext is not None:
        kernels["cython"] = refine_ext
    else:
        print("compiled kernel not built; timing the Python kernel only")

    print(f"{'case':28} {'states':>7} {'edges':>7} " + " ".join(f"{k:>10}" for k in kernels) + "   speedup")
    for label, (n, edges) in cases.items():
        results = {k: f(n, edges) for k, f in kernels.items()}
        assert len({tuple(r) for r in results.values()}) == 1, "kernels disagree"
        times = {k: min(timeit.repeat(lambda f=f: f(n, edges), number=1, repeat=args.repeat)) for k, f in kernels.items()}
        speedup = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "      n/a"
        cols = " ".join(f"{t * 1e3:8.2f}ms" for t in times.values())
        print(f"{label:28} {n:7d} {len(edges):7d} {cols} {speedup}")


if __name__ == "__main__":
    main()
