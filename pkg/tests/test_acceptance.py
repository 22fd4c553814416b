"""Acceptance run: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or
``python3 tests/test_acceptance.py``.
"""

import filecmp
import gc
import ipaddress
import logging
import random
import string
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

import analytics_fixture as afx
import sets_fixture as sfx
from conftest import record_criterion
from oracles import exhaustive_best_score, linear_lpm, oracle_typos
from squatscope.analytics import (
    RoutingSnapshot, alexa_rank_histogram, build_timelines, concentration_report, detection_lag,
    detection_lags, lifetime_cdf,
)
from squatscope.classify import Scanner, SquatKind, classify, scan_stream
from squatscope.cli import main as cli_main
from squatscope.domain import DomainError, parse_domain
from squatscope.ingest import derive_sets, ingest_pdns, load_seeds
from squatscope.lexical import default_model, segment
from squatscope.synth import CorpusSpec, build_corpus
from squatscope.typos import generate_typos, qwerty

log = logging.getLogger("acceptance")
FIXTURES = Path(__file__).parent / "fixtures"


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# -- 1 ------------------------------------------------------------------------

def test_criterion_1_taxonomy():
    cases = [
        ("youtube-login.com", "youtube", SquatKind.COMBO),
        ("youtubee.com", "youtube", SquatKind.TYPO),
        ("wwwexample.com", "example", SquatKind.TYPO),
        ("examplee.com", "example", SquatKind.TYPO),
        ("myexample.com", "example", SquatKind.COMBO),
        ("secure-example.com", "example", SquatKind.COMBO),
        ("another-coolexample-here.com", "example", SquatKind.COMBO),
    ]
    with Clock() as c:
        got = [classify(parse_domain(name).e2ld, tm).kind for name, tm, _ in cases]
    wrong = [(n, g.value) for (n, _, want), g in zip(cases, got) if g is not want]
    ok = not wrong and c.seconds < 1
    record_criterion(1, ok, f"{len(cases) - len(wrong)}/{len(cases)} labels exact, {c.seconds:.3f}s")
    assert ok, wrong


# -- 2 ------------------------------------------------------------------------

def test_criterion_2_golden_corpus():
    rows = [l.rstrip("\n").split("\t") for l in (FIXTURES / "apt_domains.tsv").read_text().splitlines()
            if l and not l.startswith("#")]
    with Clock() as c:
        outcomes = []
        kb = qwerty()
        for tm, domain, _ in rows:
            v = classify(parse_domain(domain).e2ld, tm, kb)
            outcomes.append((tm, domain, v.kind))
    combos = sum(k is SquatKind.COMBO for _, _, k in outcomes)
    unexplained = []
    for tm, domain, kind in outcomes:
        if kind is not SquatKind.COMBO:
            e2ld = parse_domain(domain).e2ld
            explained = kind is SquatKind.TYPO and e2ld in generate_typos(tm, kb).variants
            log.warning("%s vs %s: %s (%s)", domain, tm, kind.value,
                        "typo-model exclusion" if explained else "unexplained")
            if not explained:
                unexplained.append(domain)
    ok = len(rows) == 65 and combos >= 60 and not unexplained and c.seconds < 1
    record_criterion(2, ok, f"{combos}/{len(rows)} Combosquatting, {len(unexplained)} unexplained, "
                            f"{c.seconds:.3f}s")
    assert ok


# -- 3 ------------------------------------------------------------------------

def test_criterion_3_typo_oracle():
    rng = random.Random(2017)
    alphabet = string.ascii_lowercase + string.digits + "-"
    kb = qwerty()
    adj = {ch: kb.adjacent(ch) for ch in kb.neighbors}
    with Clock() as c:
        mismatches = []
        for _ in range(50):
            t = "".join(rng.choice(alphabet) for _ in range(rng.randint(2, 8)))
            if generate_typos(t, kb).variants != oracle_typos(t, adj):
                mismatches.append(t)
    ok = not mismatches and c.seconds < 30
    record_criterion(3, ok, f"50 trademarks, {len(mismatches)} set mismatches, {c.seconds:.2f}s")
    assert ok, mismatches


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_segmentation(toy_model):
    model = default_model()
    rng = random.Random(4)
    ladder = ["activate", "activatemy", "activatemycredit", "activatemycreditcard",
              "activatemycreditcardnow"]
    with Clock() as c:
        bad = []
        texts = ["".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(1, 12)))
                 for _ in range(500)]
        for text in texts + ladder:
            if segment(text, model).score != exhaustive_best_score(text, model.logp):
                bad.append(text)
        for text in ladder:
            if segment(text, toy_model).score != exhaustive_best_score(text, toy_model.logp):
                bad.append("toy:" + text)
        ladder_ok = segment(ladder[3], toy_model).tokens == ("activate", "my", "credit", "card")
        broken = 0
        fuzz_alpha = string.ascii_lowercase + string.digits
        for _ in range(10_000):
            text = "".join(rng.choice(fuzz_alpha) for _ in range(rng.randint(0, 24)))
            if segment(text, model).text != text:
                broken += 1
    ok = not bad and ladder_ok and broken == 0 and c.seconds < 60
    record_criterion(4, ok, f"{len(texts) + 2 * len(ladder) - len(bad)}/{len(texts) + 2 * len(ladder)} "
                            f"optimal, ladder split {'ok' if ladder_ok else 'wrong'}, "
                            f"{broken} concatenation failures in 10000, {c.seconds:.1f}s")
    assert ok, bad[:5]


# -- shared 1M corpus ---------------------------------------------------------

@pytest.fixture(scope="module")
def big_corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus1m")
    return build_corpus(d, CorpusSpec(records=1_000_000, distinct=100_000, seeds=500))


def _naive_combos(records, trademarks):
    """Per-record loop classifying the e2LD against every trademark in turn.

    Results depend only on the e2LD, so each distinct e2LD is classified once.
    """
    kb = qwerty()
    per_e2ld = {}
    out = Counter()
    for rec in records:
        try:
            dn = parse_domain(rec.qname)
        except DomainError:
            continue
        hits = per_e2ld.get(dn.e2ld)
        if hits is None:
            hits = per_e2ld[dn.e2ld] = [t for t in trademarks
                                        if classify(dn.e2ld, t, kb).kind is SquatKind.COMBO]
        for t in hits:
            out[(rec, dn.registered, t)] += 1
    return out


def _time_scan(records, trademarks):
    scanner = Scanner(trademarks)
    gc.collect()
    t0 = time.perf_counter()
    n = 0
    for _ in scan_stream(records, scanner):
        n += 1
    return (time.perf_counter() - t0) / len(records), n


# -- 5 ------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_5_scan_equivalence_and_scaling(big_corpus):
    with Clock() as c:
        records = list(ingest_pdns(big_corpus["pdns"]))
        half = [s.trademark for s in load_seeds(big_corpus["seeds_half"], english=())]
        full = [s.trademark for s in load_seeds(big_corpus["seeds_full"], english=())]
        fast = Counter((m.observation, m.domain, m.trademark)
                       for m in scan_stream(records, Scanner(half)))
        naive = _naive_combos(records, half)
        equal = fast == naive
        timings = {250: [], 500: []}
        for _ in range(3):
            for tms in (half, full):
                timings[len(tms)].append(_time_scan(records, tms)[0])
        ratio = min(timings[500]) / min(timings[250])
    ok = len(records) == 1_000_000 and equal and ratio <= 1.25 and c.seconds < 300
    record_criterion(5, ok, f"multiset {'equal' if equal else 'DIFFERENT'} "
                            f"({sum(fast.values())} matches), 500/250 per-record time {ratio:.3f}x "
                            f"({min(timings[250]) * 1e6:.2f}us vs {min(timings[500]) * 1e6:.2f}us), "
                            f"{c.seconds:.0f}s")
    assert ok


# -- 6 ------------------------------------------------------------------------

def test_criterion_6_set_algebra():
    with Clock() as c:
        pdns, adns, events, scanner = sfx.build()
        ds = derive_sets(pdns, adns, events, sfx.SEEDS, scanner)
        members_ok = all(set(ds.sets[k]) == v for k, v in sfx.EXPECTED.items())
        keys = ("set", "cap_cp", "not_cp", "noc_cp", "cap_ca", "not_ca", "e2ld_count", "not", "noc")
        table_ok = [tuple(r[k] for k in keys) for r in ds.table()] == sfx.TABLE
        union_ok = ds.c_abuse == (ds.c_mal | ds.c_pbl | ds.c_apt | ds.c_spa)
    ok = members_ok and table_ok and union_ok and c.seconds < 1
    record_criterion(6, ok, f"memberships {members_ok}, intersections {table_ok}, "
                            f"abuse union {union_ok}, {c.seconds:.3f}s")
    assert ok


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_analytics():
    with Clock() as c:
        tl = build_timelines(afx.matches())
        checks = {
            "lifetime": lifetime_cdf(tl) == afx.LIFETIME_CDF,
            "lag": detection_lags(tl, afx.LABELS) == afx.LAGS
            and detection_lag(tl, afx.LABELS) == afx.LAG_CDF,
        }
        hist = alexa_rank_histogram(afx.RANKS, afx.ABUSIVE)
        checks["histogram"] = ({i: n for i, n in enumerate(hist["abusive"]) if n} == afx.HIST_ABUSIVE
                               and {i: n for i, n in enumerate(hist["other"]) if n} == afx.HIST_OTHER)
        rep = concentration_report(afx.matches(), RoutingSnapshot(afx.ROUTES))
        checks["concentration"] = (all(rep.top_share(d) == afx.TOP_SHARE[d] for d in afx.TOP_SHARE)
                                   and rep.to_dict()["ips_per_domain_cdf"] == afx.IPS_PER_DOMAIN_CDF)

        rng = random.Random(7)
        rows = []
        for _ in range(2000):
            net = ipaddress.ip_network((rng.getrandbits(32), rng.randint(8, 24)), strict=False)
            rows.append((str(net), f"AS{rng.randint(1, 9999)}", "US"))
        snap = RoutingSnapshot(rows)
        nets = [(ipaddress.ip_network(p), None) for p, _, _ in rows]
        # the linear oracle keeps the first network on duplicates, as the table does
        disagreements = 0
        for _ in range(10_000):
            ip = ipaddress.ip_address(rng.getrandbits(32))
            ref = linear_lpm(ip, nets)
            try:
                got = snap.lookup(ip).prefix
            except LookupError:
                got = None
            if got != (str(ref[0]) if ref else None):
                disagreements += 1
        checks["lpm"] = disagreements == 0

        planted, routes = afx.planted_matches()
        share = concentration_report(planted, RoutingSnapshot(routes)).top_share("cidr")
        checks["planted"] = share == 0.58
    ok = all(checks.values()) and c.seconds < 30
    record_criterion(7, ok, ", ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in checks.items())
                     + f", lpm disagreements {disagreements}/10000, planted top-1 share {share}, "
                       f"{c.seconds:.1f}s")
    assert ok


# -- 8 ------------------------------------------------------------------------

def _identical(a: Path, b: Path) -> list[str]:
    cmp = filecmp.dircmp(a, b)
    files = sorted(p.name for p in a.iterdir())
    _, mismatch, errors = filecmp.cmpfiles(a, b, files, shallow=False)
    return cmp.left_only + cmp.right_only + mismatch + errors


@pytest.mark.slow
def test_criterion_8_determinism(big_corpus, tmp_path):
    d = big_corpus["pdns"].parent
    rng = random.Random(8)
    with open(big_corpus["pdns"]) as fh:
        names = [next(fh).split("\t")[1] for _ in range(2000)]
    (d / "mal.tsv").write_text("".join(f"2017-0{rng.randint(1, 9)}-15\t{n}\n" for n in names[::3]))
    (d / "pbl.tsv").write_text("".join(f"2017-02-01\t{n}\n" for n in names[1::5]))
    (d / "routes.tsv").write_text("".join(f"{i}.0.0.0/8\tAS{i}\tC{i % 7}\n" for i in range(1, 224))
                                  + "".join(f"{i}.{i}.0.0/16\tAS{1000 + i}\tZZ\n" for i in range(1, 224)))
    seeds = str(big_corpus["seeds_half"])
    with Clock() as c:
        outs = {}
        for n in (1, 4):
            scan = tmp_path / f"scan{n}"
            rep = tmp_path / f"report{n}"
            codes = [cli_main(["scan", "--seeds", seeds, "--pdns", str(big_corpus["pdns"]),
                               "--out", str(scan), "--shards", str(n)])]
            for report in ("sets", "temporal", "infra", "lexical"):
                codes.append(cli_main(["report", report, "--seeds", seeds, "--matches", str(scan),
                                       "--labels", f"MAL={d / 'mal.tsv'}",
                                       "--labels", f"PBL={d / 'pbl.tsv'}",
                                       "--routing", str(d / "routes.tsv"),
                                       "--out", str(rep), "--shards", str(n)]))
            outs[n] = (scan, rep, codes)
        diffs = _identical(outs[1][0], outs[4][0]) + _identical(outs[1][1], outs[4][1])
        n_files = len(list(outs[1][0].iterdir())) + len(list(outs[1][1].iterdir()))
    codes_ok = all(code == 0 for n in outs for code in outs[n][2])
    ok = codes_ok and not diffs and c.seconds < 600
    record_criterion(8, ok, f"{n_files} files compared, {len(diffs)} differ, exit codes "
                            f"{'ok' if codes_ok else outs}, {c.seconds:.0f}s")
    assert ok, diffs


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
