"""Exhaustive sweep of every structural and coefficient check over 1..upto."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import coeffs, kernels, poset
from .errors import QFError
from .partitions import enumerate_masks, partition_counts
from .qfseq import QFSequence

CHECKS = (
    "enum_count",
    "edge_soundness",
    "acyclic",
    "cover_is_reduction",
    "extremes",
    "skip_sum_implies_Ak",
    "duality",
    "recursion",
    "lattice",
    "modular",
    "coeff_agreement",
    "coeff_bound",
    "same_color",
)


def checks_for(seq: QFSequence) -> tuple[str, ...]:
    if seq.level % 2 == 0:
        return tuple(c for c in CHECKS if c != "same_color")
    return CHECKS


def _guard(fn):
    try:
        return fn()
    except QFError as exc:
        return False, f"{type(exc).__name__}: {exc}"


def _edge_soundness(p):
    bad = [(a, b) for a, b in p.edges if poset.local_move_window(a, b, p.level) is None]
    return not bad, f"non-local edges {bad[:3]}" if bad else ""


def _acyclic(p):
    R = p.reach
    ok = bool(np.array_equal(R & R.T, np.eye(len(p), dtype=bool)))
    return ok, "" if ok else "reachability not antisymmetric"


def _extremes(p):
    if p:
        poset.max_element(p)
        poset.min_element(p)
    return True, ""


def _skip_sum_implies(seq, n, nonempty):
    if not nonempty:
        return True, ""
    k = 1
    while seq.skip_sum(k) < n:
        if n < seq.term(k):
            return False, f"n = {n} exceeds the skip sum for k = {k} but A_{k} = {seq.term(k)}"
        k += 1
    return True, ""


def _report_result(rep):
    return rep.ok, "" if rep.ok else f"failed {rep.failed()} {rep.notes}"


def _recursion(seq, n, p):
    if n < seq.term(seq.level + 1):
        ok = len(p) <= 1
        return ok, "" if ok else f"base case has {len(p)} elements"
    return _report_result(poset.verify_recursion(seq, n))


def _lattice(p, U, D):
    bad = [name for name, q in (("P", p), ("U", U), ("D", D)) if not poset.is_lattice(q)]
    return not bad, f"not a lattice: {bad}" if bad else ""


def _modular(p, U, D):
    for name, q in (("P", p), ("U", U), ("D", D)):
        why = poset.modularity_witness(q)
        if why:
            return False, f"{name}: {why}"
    return True, ""


def _coeff_agreement(seq, n, h_series):
    e = coeffs.sign_sum(seq, n)
    r = coeffs.coeff_recursive(seq, n)
    ok = e == r and e.h == h_series
    return ok, "" if ok else f"enum {tuple(e)} recursive {tuple(r)} series {h_series}"


def _coeff_bound(seq, n):
    t = coeffs.sign_sum(seq, n)
    if seq.level % 2 == 0:
        ok = all(v in (-1, 0, 1) for v in t)
        return ok, "" if ok else f"{tuple(t)} outside {{-1, 0, 1}}"
    if n < seq.term(seq.level):
        return True, ""
    k = seq.largest_index_leq(n)
    ok = abs(t.h) <= 2 ** (k - seq.level)
    return ok, "" if ok else f"|h| = {abs(t.h)} > 2^{k - seq.level}"


def _same_color(seq, n, size):
    ok = coeffs.same_sign_check_odd(seq, n) and abs(coeffs.sign_sum(seq, n).h) == size
    return ok, "" if ok else "mixed signs on S_n"


def check_n(seq: QFSequence, n: int, count: int, h_series: int) -> dict[str, tuple[bool, str]]:
    """Run every check for a single n."""
    out = {}
    size = len(enumerate_masks(seq, n))
    out["enum_count"] = (size == count, "" if size == count else f"enumerated {size}, oracle {count}")
    p = poset.build_poset(seq, n)
    U, D = poset.split_UD(p)
    out["edge_soundness"] = _guard(lambda: _edge_soundness(p))
    out["acyclic"] = _guard(lambda: _acyclic(p))
    out["cover_is_reduction"] = _guard(
        lambda: (bool(np.array_equal(p.cover, p.edge_matrix)), "cover relation differs from edges")
    )
    out["extremes"] = _guard(lambda: _extremes(p))
    out["skip_sum_implies_Ak"] = _guard(lambda: _skip_sum_implies(seq, n, bool(p)))
    out["duality"] = _guard(lambda: _report_result(poset.dual_check(seq, n)))
    out["recursion"] = _guard(lambda: _recursion(seq, n, p))
    out["lattice"] = _guard(lambda: _lattice(p, U, D))
    out["modular"] = _guard(lambda: _modular(p, U, D))
    out["coeff_agreement"] = _guard(lambda: _coeff_agreement(seq, n, h_series))
    out["coeff_bound"] = _guard(lambda: _coeff_bound(seq, n))
    if seq.level % 2:
        out["same_color"] = _guard(lambda: _same_color(seq, n, size))
    return out


def _sweep_chunk(args):
    seq, lo, hi, upto = args
    counts = partition_counts(seq, upto)
    series = coeffs.series_oracle(seq, upto).values
    return [(n, check_n(seq, n, int(counts[n]), series[n])) for n in range(lo, hi)]


@dataclass
class CheckSummary:
    name: str
    executed: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class SweepResult:
    seq: QFSequence
    upto: int
    summaries: dict[str, CheckSummary]
    sharpness: dict[int, tuple[int, int, bool]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.summaries.values())

    def render(self, max_failures: int = 5) -> str:
        seq = self.seq
        seeds = ",".join(map(str, seq.seeds))
        lines = [
            f"# verify level={seq.level} seeds={seeds} upto={self.upto} backend={kernels.BACKEND}",
            f"# {'check':<22}{'executed':>9}{'failed':>8}  status",
        ]
        for s in self.summaries.values():
            status = "PASS" if s.passed else "FAIL"
            lines.append(f"{s.name:<24}{s.executed:>9}{len(s.failures):>8}  {status}")
        for s in self.summaries.values():
            for n, detail in s.failures[:max_failures]:
                lines.append(f"# fail {s.name} n={n}: {detail}")
        for k, (peak, bound, hit) in self.sharpness.items():
            lines.append(f"# sharpness k={k} max|h|={peak} bound={bound} attained={'yes' if hit else 'no'}")
        lines.append(f"# result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def run_sweep(seq: QFSequence, upto: int, jobs: int = 1, chunk: int = 250) -> SweepResult:
    """Check every n in 1..upto; results are merged in n order whatever ``jobs`` is."""
    summaries = {name: CheckSummary(name) for name in checks_for(seq)}
    if upto >= 1:
        tasks = [(seq, lo, min(lo + chunk, upto + 1), upto) for lo in range(1, upto + 1, chunk)]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunks = list(pool.map(_sweep_chunk, tasks))
        else:
            chunks = [_sweep_chunk(t) for t in tasks]
        for rows in chunks:
            for n, results in rows:
                for name, (ok, detail) in results.items():
                    s = summaries[name]
                    s.executed += 1
                    if not ok:
                        s.failures.append((n, detail))
    sharp = coeffs.bound_sharpness(seq, upto) if seq.level % 2 and upto >= 1 else {}
    return SweepResult(seq, upto, summaries, sharp)
