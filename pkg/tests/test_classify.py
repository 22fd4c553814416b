from collections import Counter
from datetime import date

import pytest
from hypothesis import given, settings, strategies as st

from squatscope.classify import (
    ScanStats, Scanner, SquatKind, TrademarkAutomaton, classify, classify_multi, scan_stream,
)
from squatscope.records import DnsObservation

COMBO, TYPO, EXACT, UNREL = SquatKind.COMBO, SquatKind.TYPO, SquatKind.EXACT, SquatKind.UNRELATED


@pytest.mark.parametrize("cand,tm,kind", [
    ("youtube-login", "youtube", COMBO),
    ("youtubee", "youtube", TYPO),
    ("youtube", "youtube", EXACT),
    ("wwwexample", "example", TYPO),
    ("examplee", "example", TYPO),
    ("myexample", "example", COMBO),
    ("secure-example", "example", COMBO),
    ("another-coolexample-here", "example", COMBO),
    ("youtubeee", "youtube", COMBO),
    ("yuotube", "youtube", TYPO),
    ("google", "youtube", UNREL),
])
def test_single_labels(cand, tm, kind):
    assert classify(cand, tm).kind is kind


def test_span():
    v = classify("secure-example", "example")
    assert v.match_span == (7, 14)


def naive_find_all(text, patterns):
    return sorted((p, i) for p in patterns for i in range(len(text)) if text.startswith(p, i))


def test_automaton_overlaps():
    ac = TrademarkAutomaton(["he", "she", "his", "hers"])
    assert sorted(ac.find_all("ushers")) == [("he", 2), ("hers", 2), ("she", 1)]
    assert ac.first_offsets("hehe") == {"he": 0}
    assert len(ac) == 4


@settings(max_examples=300, deadline=None)
@given(st.lists(st.text(alphabet="abc", min_size=1, max_size=4), min_size=1, max_size=6),
       st.text(alphabet="abcd-", max_size=20))
def test_automaton_matches_naive(patterns, text):
    ac = TrademarkAutomaton(patterns)
    assert sorted(ac.find_all(text)) == naive_find_all(text, set(patterns))


@settings(max_examples=300, deadline=None)
@given(st.lists(st.text(alphabet="abqw", min_size=2, max_size=4), min_size=1, max_size=5, unique=True),
       st.text(alphabet="abqw-", min_size=1, max_size=10))
def test_multi_matches_loop(patterns, cand):
    ac = TrademarkAutomaton(patterns)
    expected = [classify(cand, t) for t in sorted(patterns)]
    expected = [v for v in expected if v.kind is not UNREL]
    assert classify_multi(cand, ac) == expected


def _obs(qname, day=1, count=1):
    return DnsObservation(date(2017, 1, day), qname, "A", frozenset({"1.2.3.4"}), count)


def test_scanner_registered_domain_identity():
    sc = Scanner(["yahoo"])
    recs = [_obs("login.yahooprotect.com"), _obs("yahooprotect.net"), _obs("yahoo.com"),
            _obs("bad..name"), _obs("yahooo.com")]
    stats = ScanStats()
    out = list(sc.scan(recs, stats))
    assert [m.domain for m in out] == ["yahooprotect.com", "yahooprotect.net"]
    assert stats.records_in == 5 and stats.records_skipped == 1
    assert stats.to_dict()["distinct_e2lds"] == 2
    kinds = Counter(m.kind for m in sc.scan(recs, kinds=(COMBO, TYPO, EXACT)))
    assert kinds == {COMBO: 2, TYPO: 1, EXACT: 1}


def test_subdomain_mode():
    recs = [_obs("paypal-login.example.com")]
    assert list(Scanner(["paypal"]).scan(recs)) == []
    out = list(Scanner(["paypal"], subdomains=True).scan(recs))
    assert [(m.domain, m.trademark) for m in out] == [("example.com", "paypal")]


def test_scan_stream_with_automaton():
    ac = TrademarkAutomaton(["apple"])
    out = list(scan_stream([_obs("apple-support.co.uk"), _obs("pineapple.com")], ac))
    assert [m.e2ld for m in out] == ["apple-support", "pineapple"]


def test_stats_merge():
    a, b = ScanStats(), ScanStats()
    sc = Scanner(["apple"])
    list(sc.scan([_obs("apple-id.com")], a))
    list(sc.scan([_obs("apple-id.com"), _obs("myapple.com")], b))
    m = a.merge(b)
    assert (m.records_in, m.matches, len(m.e2lds)) == (3, 3, 2)
    assert '"matches": 3' in m.to_json()
