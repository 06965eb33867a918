"""Time the numba kernels against their numpy counterparts on sweep-sized inputs.

    python benchmarks/bench_kernels.py --upto 3000 --repeat 3
"""
import argparse
import time

import numpy as np

from qfposet import QFSequence
from qfposet import kernels as K
from qfposet.partitions import enumerate_masks


def _inputs(seq, upto):
    enum_args, edge_args, reaches = [], [], []
    for n in range(1, upto + 1):
        k = seq.largest_index_leq(n)
        t = np.array([seq.term(i) for i in range(1, k + 1)], dtype=np.int64)
        p = np.array([seq.gamma(i) for i in range(k + 1)], dtype=np.int64)
        enum_args.append((t, p, n))
        masks = np.array(enumerate_masks(seq, n), dtype=np.int64)
        width = max(int(masks[0]).bit_length() - seq.level, 0) if masks.size else 0
        edge_args.append((masks, seq.level, width))
        src, dst = K.np_local_move_edges(masks, seq.level, width)
        reaches.append((masks.size, src, dst))
    return enum_args, edge_args, reaches


def _time(fn, calls, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for args in calls:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def run(seq, upto, repeat):
    enum_args, edge_args, reach_args = _inputs(seq, upto)
    R = [K.np_reachability(*a) for a in reach_args]
    tables = [K.np_meet_join(r) for r in R]
    C = [K.np_transitive_reduction(r) for r in R]
    exps = np.array(seq.terms_upto(upto), dtype=np.int64)
    cases = [
        ("enumerate_masks", K.nb_enumerate_masks, K.np_enumerate_masks, enum_args),
        ("series_product", K.nb_series_product, K.np_series_product, [(exps, upto, -1)]),
        ("local_move_edges", K.nb_local_move_edges, K.np_local_move_edges, edge_args),
        ("reachability", K.nb_reachability, K.np_reachability, reach_args),
        ("transitive_reduction", K.nb_transitive_reduction, K.np_transitive_reduction, [(r,) for r in R]),
        ("meet_join", K.nb_meet_join, K.np_meet_join, [(r,) for r in R]),
        ("modular_violation", K.nb_modular_violation, K.np_modular_violation, [(r, *t) for r, t in zip(R, tables)]),
        ("cover_symmetry", K.nb_cover_symmetry_violation, K.np_cover_symmetry_violation, [(c, *t) for c, t in zip(C, tables)]),
    ]
    rows = []
    for name, nb, npy, calls in cases:
        nb(*calls[-1])  # compile outside the timed region
        t_nb = _time(nb, calls, repeat)
        t_np = _time(npy, calls, repeat)
        rows.append((name, len(calls), t_nb, t_np))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--seeds", default="1,2")
    ap.add_argument("--upto", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    seq = QFSequence(args.level, [int(s) for s in args.seeds.split(",")])
    print(f"# level={seq.level} seeds={args.seeds} upto={args.upto} best of {args.repeat}")
    print(f"{'kernel':<22}{'calls':>7}{'numba s':>11}{'numpy s':>11}{'speedup':>9}")
    for name, calls, t_nb, t_np in run(seq, args.upto, args.repeat):
        print(f"{name:<22}{calls:>7}{t_nb:>11.4f}{t_np:>11.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
