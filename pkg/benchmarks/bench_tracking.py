"""Compare the compiled path-tracking kernel with the pure-Python one.

Run with ``python3 benchmarks/bench_tracking.py``.  Each case tracks the
fiber roots once around a loop with both kernels, checks that the
permutations agree and prints the median wall time.
"""

from __future__ import annotations

import argparse
import statistics
import time
from fractions import Fraction

from arcsections.decide import setup_projection
from arcsections.monodromy import KERNEL, LoopSpec, crossing, tracking
from arcsections.monodromy import _kernel_py
from arcsections.polyarith import MPoly, parse_poly
from arcsections.resolve import resolve_embedded


def cases():
    s = MPoly.var("s")
    t = parse_poly("z^4 - 1/8*t^2*z + 3/64*t^2", ("z", "t"))
    yield "quartic family, |t|=1", t, LoopSpec.make({"t": s.with_vars(("s",))}, 0, 1, "s", "t")
    setup = setup_projection(parse_poly("z^4-4*x*z+3*y^2"), "z")
    tree = resolve_embedded(setup.delta)
    for x in tree.crossings:
        yield f"z^4-4xz+3y^2 crossing {x.id}", setup.F_adapted, crossing._chart_loop(
            tree.chart(x.chart_id), x, 2)
    quart = setup_projection(parse_poly("x^4+y^4+x^2*z^2+y*z^3+z^4"), (1, 2, 3))
    loop = crossing.arc_loop(MPoly.var("s") * Fraction(3, 7), MPoly.var("s") * Fraction(-2, 5),
                             quart.delta, "s")
    yield "plane quartic, generic arc", quart.F_adapted, loop


def timed(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    compiled = tracking._kernel if KERNEL == "compiled" else None
    print(f"compiled kernel available: {compiled is not None}")
    print(f"{'case':34s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for name, F, loop in cases():
        fam = tracking.FiberFamily.build(F, loop, "z")
        start = tracking._initial_roots(fam, loop.center + loop.radius, 30)

        def run(k):
            return k.track_arc(fam.A, complex(loop.center), float(loop.radius), 0.0, tracking.TWO_PI,
                               start, tracking.DEFAULT_H0, tracking.MAX_STEPS, False)

        py_out, py_t = timed(lambda: run(_kernel_py), args.repeat)
        if compiled is None:
            print(f"{name:34s} {1e3 * py_t:12.2f} {'-':>14s} {'-':>8s}")
            continue
        c_out, c_t = timed(lambda: run(compiled), args.repeat)
        same = tracking._match(list(py_out[0]), start) == tracking._match(list(c_out[0]), start)
        flag = "" if same else "  (permutations differ!)"
        print(f"{name:34s} {1e3 * py_t:12.2f} {1e3 * c_t:14.2f} {py_t / c_t:7.1f}x{flag}")


if __name__ == "__main__":
    main()
