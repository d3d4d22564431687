"""Compare the compiled exact-search kernel against the pure-Python fallback.

Each case times the whole oracle run: every k from 1 up to the optimum, so
the infeasible rounds (the expensive part) are included.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
from __future__ import annotations

import argparse
import random
import timeit

from cfcolor import _accel
from cfcolor.graph import (
    cycle_graph,
    generate_subdivided_clique,
    planar_lower_bound_graph,
    random_connected_graph,
    random_maximal_outerplanar,
)
from cfcolor.verify import _exact


def cases(quick: bool):
    yield "K*4 open", generate_subdivided_clique(4), False, False
    yield "K*5 open", generate_subdivided_clique(5), False, False
    yield "planar lower bound partial", planar_lower_bound_graph(), False, True
    yield "C11 open", cycle_graph(11), False, False
    rng = random.Random(1)
    yield "outerplanar 14 open", random_maximal_outerplanar(14, rng), False, False
    # dense graphs make the infeasible rounds expensive
    dense = [(14, 0.5), (16, 0.5), (18, 0.3)] if quick else [(14, 0.5), (16, 0.5), (18, 0.5), (20, 0.3)]
    for n, p in dense:
        g = random_connected_graph(n, p, random.Random(n))
        yield f"G({n}, {p}) open", g, False, False
        yield f"G({n}, {p}) closed", g, True, False
        yield f"G({n}, {p}) partial", g, False, True


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest instances")
    args = ap.parse_args()

    if _accel.BACKEND != "cython":
        print("compiled kernel not available; only the fallback would be timed")
        return
    print(f"{'case':32} {'n':>3} {'chi':>4} {'cython ms':>10} {'python ms':>10} {'speedup':>8}")
    for name, g, closed, partial in cases(args.quick):
        chi_fast = _exact(g, 20, closed, partial, search=_accel.search)[0]
        chi_slow = _exact(g, 20, closed, partial, search=_accel.python_search)[0]
        assert chi_fast == chi_slow, name
        fast = min(timeit.repeat(lambda: _exact(g, 20, closed, partial, search=_accel.search), number=1, repeat=args.repeat))
        slow = min(timeit.repeat(lambda: _exact(g, 20, closed, partial, search=_accel.python_search), number=1, repeat=args.repeat))
        print(f"{name:32} {g.n:>3} {chi_fast:>4} {fast * 1e3:>10.2f} {slow * 1e3:>10.2f} {slow / max(fast, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
