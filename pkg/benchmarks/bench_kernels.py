"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--records 200000] [--seeds 250]

Times the two kernels on their own and an end-to-end scan of a synthetic
corpus with each backend swapped in.
"""

from __future__ import annotations

import argparse
import random
import string
import sys
import tempfile
import time
from contextlib import contextmanager

from squatscope import kernels
from squatscope.classify import Scanner, TrademarkAutomaton
from squatscope.ingest import ingest_pdns, load_seeds
from squatscope.synth import CorpusSpec, build_corpus
from squatscope.typos import qwerty


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


@contextmanager
def backend(mod):
    saved = kernels.is_typo, kernels.ac_scan
    kernels.is_typo, kernels.ac_scan = mod.is_typo, mod.ac_scan
    try:
        yield
    finally:
        kernels.is_typo, kernels.ac_scan = saved


def bench_is_typo(mod, pairs, matrix):
    f = mod.is_typo
    return best_of(lambda: [f(c, t, matrix) for c, t in pairs])


def bench_ac_scan(mod, texts, ac):
    args = (ac._amap, ac._delta, ac._nc, ac._out_start, ac._out_ids, ac._plen)
    f = mod.ac_scan
    return best_of(lambda: [f(t, *args) for t in texts])


def bench_scan(mod, records, trademarks):
    with backend(mod):
        def run():
            for _ in Scanner(trademarks).scan(records):
                pass
        return best_of(run, repeat=2)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--records", type=int, default=200_000)
    ap.add_argument("--seeds", type=int, default=250)
    args = ap.parse_args(argv)

    if kernels.compiled is None:
        print("compiled extension not available; run `python3 setup.py build_ext --inplace`")
        return 1
    backends = {"compiled": kernels.compiled, "python": kernels.pure}
    rng = random.Random(0)
    letters = string.ascii_lowercase

    with tempfile.TemporaryDirectory() as tmp:
        spec = CorpusSpec(records=args.records, distinct=max(1000, args.records // 10),
                          seeds=2 * args.seeds)
        paths = build_corpus(tmp, spec)
        records = list(ingest_pdns(paths["pdns"]))
        trademarks = [s.trademark for s in load_seeds(paths["seeds_half"], english=())]

    ac = TrademarkAutomaton(trademarks)
    texts = [r.qname.split(".")[0] for r in records[:100_000]]
    pairs = [("".join(rng.choice(letters) for _ in range(rng.randint(4, 12))), rng.choice(trademarks))
             for _ in range(100_000)]
    matrix = qwerty().matrix

    rows = []
    for name, fn, unit in (
        ("is_typo x100k", lambda m: bench_is_typo(m, pairs, matrix), len(pairs)),
        ("ac_scan x100k", lambda m: bench_ac_scan(m, texts, ac), len(texts)),
        (f"scan {len(records)} records", lambda m: bench_scan(m, records, trademarks), len(records)),
    ):
        t = {b: fn(mod) for b, mod in backends.items()}
        rows.append((name, t["compiled"], t["python"], unit))

    print(f"{'benchmark':<24}{'compiled s':>12}{'python s':>12}{'speedup':>10}{'us/item (c)':>13}")
    for name, c, p, unit in rows:
        print(f"{name:<24}{c:>12.3f}{p:>12.3f}{p / c:>9.1f}x{c / unit * 1e6:>13.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
