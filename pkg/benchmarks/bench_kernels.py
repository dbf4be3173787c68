"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times each kernel on fixed random inputs under both backends, then a
Cayley-ball enumeration and a delta-hat estimate end to end.  Prints one
line per benchmark: name, python seconds, compiled seconds, speedup.
"""
import argparse
import random
import sys
import timeit

import numpy as np

from hydra_ct import kernels
from hydra_ct.cayley import enumerate_ball, estimate_delta
from hydra_ct.free_by_cyclic import hydra_g


def reduced(rng, n, letters=4):
    out = []
    while len(out) < n:
        c = rng.randrange(2 * letters)
        if out and c == out[-1] ^ 1:
            continue
        out.append(c)
    return tuple(out)


def kernel_cases(rng):
    u, v = reduced(rng, 400), reduced(rng, 400)
    raw = tuple(rng.randrange(8) for _ in range(2000))
    table = [reduced(rng, 3) for _ in range(8)]
    pts = rng.sample(range(10_000), 50)
    dmat = np.array([[abs(a - b) % 17 for b in pts] for a in pts], dtype=np.int64)
    return {
        "reduce_codes": lambda k: k.reduce_codes(raw),
        "concat_reduce": lambda k: k.concat_reduce(u, tuple(reversed(v))),
        "invert_codes": lambda k: k.invert_codes(u),
        "substitute": lambda k: k.substitute(u, table, 10 ** 7),
        "common_prefix": lambda k: k.common_prefix(u, u[:399] + (u[399] ^ 1,)),
        "four_point_max": lambda k: k.four_point_max(dmat),
    }


def swap(mod):
    for name in kernels.KERNEL_NAMES:
        setattr(kernels, name, getattr(mod, name))


def end_to_end():
    G = hydra_g(2)
    ball = enumerate_ball(G, radius=7, track_parents=False)
    estimate_delta(ball)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    cases = kernel_cases(random.Random(0))
    backends = [("python", kernels.python_backend), ("compiled", kernels.compiled_backend)]
    print(f"{'benchmark':<16} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    rows = [(name, lambda k, f=f: f(k), args.repeat * 20) for name, f in cases.items()]
    rows.append(("ball+delta G_2", lambda k: end_to_end(), 1))
    for name, fn, number in rows:
        times = []
        for _, mod in backends:
            swap(mod)
            times.append(min(timeit.repeat(lambda: fn(kernels), number=number, repeat=3)))
        print(f"{name:<16} {times[0]:>10.4f} {times[1]:>11.4f} {times[0] / times[1]:>7.1f}x")
    swap(kernels.compiled_backend)
    return 0


if __name__ == "__main__":
    sys.exit(main())
