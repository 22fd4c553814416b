"""Loaders for seeds and raw datasets, and derivation of the combosquatting sets.

File formats (all dates ISO-8601, ``#`` starts a comment line):

* seeds: CSV ``trademark,domain,category,rank,origin``
* passive/active DNS: TSV ``date qname rrtype rdata [lookup_count]``;
  ``rdata`` holds comma-separated addresses for A/AAAA records
* labels: TSV ``date domain [detail]``
* Alexa ranks: CSV ``date,rank,domain``
* certificates: JSON lines ``{"names": [...], "issuer": ..., "logged_at": ...}``
"""

from __future__ import annotations

import csv
import ipaddress
import json
import logging
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from datetime import date, timedelta

from squatscope._io import open_text
from squatscope.classify import Match, Scanner, SquatKind
from squatscope.domain import DomainError, is_valid_label, normalize
from squatscope.records import (
    ABUSE_SOURCES,
    CATEGORIES,
    CertRecord,
    DnsObservation,
    LabelEvent,
    LabelSource,
    Origin,
    TrademarkSeed,
)

log = logging.getLogger(__name__)


class IngestError(ValueError):
    pass


class UnreadableFile(IngestError):
    pass


class MalformedRow(IngestError):
    def __init__(self, path, lineno: int, reason: str):
        super().__init__(f"{path}:{lineno}: {reason}")
        self.path, self.lineno, self.reason = path, lineno, reason

    def __reduce__(self):
        return type(self), (self.path, self.lineno, self.reason)


class DuplicateTrademark(IngestError):
    pass


@dataclass
class IngestStats:
    """Soft-error tally for a streaming loader."""

    lines: int = 0
    records: int = 0
    skipped: int = 0
    reasons: Counter = field(default_factory=Counter)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.reasons[reason] += 1

    def merge(self, other: IngestStats) -> IngestStats:
        return IngestStats(self.lines + other.lines, self.records + other.records,
                           self.skipped + other.skipped, self.reasons + other.reasons)


def _data_lines(path) -> Iterator[tuple[int, str]]:
    try:
        fh = open_text(path)
    except OSError as exc:
        raise UnreadableFile(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


# -- seeds -----------------------------------------------------------------

SHORT_TRADEMARK = 4


def seed_flags(trademark: str, english: Iterable[str] | None = None) -> tuple[str, ...]:
    """Reasons a human should review a seed before keeping it."""
    flags = []
    if len(trademark) < SHORT_TRADEMARK:
        flags.append("short")
    if english is not None and trademark in english:
        flags.append("dictionary-word")
    return tuple(flags)


def load_seeds(path, english: Iterable[str] | None = None) -> list[TrademarkSeed]:
    """Load and validate the seed CSV.

    Rows are flagged, never dropped, when the trademark is shorter than four
    characters or is a dictionary word. ``english`` defaults to the bundled
    general-English list; pass an empty set to disable the word check.
    """
    if english is None:
        from squatscope.lexical import english_words
        english = english_words()
    seeds: list[TrademarkSeed] = []
    seen: dict[str, int] = {}
    for lineno, line in _data_lines(path):
        row = [c.strip() for c in next(csv.reader([line]))]
        if lineno == 1 and row and row[0].lower() == "trademark":
            continue
        if len(row) < 3 or len(row) > 5:
            raise MalformedRow(path, lineno, f"expected 3-5 fields, got {len(row)}")
        row += [""] * (5 - len(row))
        trademark, domain, category, rank, origin = row
        trademark = trademark.lower()
        if not is_valid_label(trademark) or len(trademark) < 2:
            raise MalformedRow(path, lineno, f"invalid trademark {trademark!r}")
        if category not in CATEGORIES:
            raise MalformedRow(path, lineno, f"unknown category {category!r}")
        try:
            alexa_rank = int(rank) if rank else None
            origin_v = Origin(origin) if origin else Origin.ALEXA_TOP500
        except ValueError as exc:
            raise MalformedRow(path, lineno, str(exc)) from None
        if alexa_rank is not None and alexa_rank < 1:
            raise MalformedRow(path, lineno, f"rank must be positive, got {alexa_rank}")
        if trademark in seen:
            raise DuplicateTrademark(f"{path}:{lineno}: {trademark!r} already on line {seen[trademark]}")
        seen[trademark] = lineno
        seeds.append(TrademarkSeed(trademark, normalize(domain), category, alexa_rank, origin_v,
                                   seed_flags(trademark, english)))
    return seeds


# -- DNS observations ------------------------------------------------------

_IP_TYPES = {"A", "AAAA"}


def ingest_dns(path, source: str = "pdns", stats: IngestStats | None = None,
               period: tuple[date, date] | None = None,
               shard: tuple[int, int] = (0, 1)) -> Iterator[DnsObservation]:
    """Stream DNS observations from a TSV file.

    ``source`` is ``"pdns"`` (lookup count required, >= 1) or ``"adns"``
    (lookup count ignored, always 0). Malformed lines are tallied in
    ``stats`` and skipped. ``shard=(i, n)`` keeps only every n-th data line
    starting at the i-th.
    """
    if source not in ("pdns", "adns"):
        raise ValueError(f"unknown DNS source {source!r}")
    if stats is None:
        stats = IngestStats()
    idx, count = shard
    k = -1
    for lineno, line in _data_lines(path):
        k += 1
        if k % count != idx:
            continue
        stats.lines += 1
        parts = line.split("\t")
        if len(parts) not in (4, 5):
            stats.skip("field count")
            continue
        try:
            day = date.fromisoformat(parts[0])
        except ValueError:
            stats.skip("date")
            continue
        if period and not (period[0] <= day <= period[1]):
            stats.skip("outside period")
            continue
        rrtype = parts[2].upper()
        ips: frozenset[str] = frozenset()
        if rrtype in _IP_TYPES:
            try:
                ips = frozenset(str(ipaddress.ip_address(x.strip()))
                                for x in parts[3].split(",") if x.strip())
            except ValueError:
                stats.skip("rdata")
                continue
        lookups = 0
        if source == "pdns":
            if len(parts) < 5:
                stats.skip("lookup count")
                continue
            try:
                lookups = int(parts[4])
            except ValueError:
                stats.skip("lookup count")
                continue
            if lookups < 1:
                stats.skip("lookup count")
                continue
        stats.records += 1
        yield DnsObservation(day, parts[1].strip(), rrtype, ips, lookups, source)


def ingest_pdns(path, stats: IngestStats | None = None, **kw) -> Iterator[DnsObservation]:
    return ingest_dns(path, "pdns", stats, **kw)


def ingest_adns(path, stats: IngestStats | None = None, **kw) -> Iterator[DnsObservation]:
    return ingest_dns(path, "adns", stats, **kw)


# -- label feeds -------------------------------------------------------------

def ingest_labels(path, source: LabelSource | str, stats: IngestStats | None = None) -> Iterator[LabelEvent]:
    """Stream de-duplicated label events from a TSV ``date domain [detail]`` file."""
    source = LabelSource(source)
    if stats is None:
        stats = IngestStats()
    seen: set[LabelEvent] = set()
    for _, line in _data_lines(path):
        stats.lines += 1
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            stats.skip("field count")
            continue
        try:
            day = date.fromisoformat(parts[0].strip())
        except ValueError:
            stats.skip("date")
            continue
        domain = normalize(parts[1])
        if not domain:
            stats.skip("domain")
            continue
        detail = parts[2].strip() if len(parts) == 3 and parts[2].strip() else None
        ev = LabelEvent(domain, source, day, detail)
        if ev in seen:
            continue
        seen.add(ev)
        stats.records += 1
        yield ev


def ingest_alexa(path, stats: IngestStats | None = None) -> Iterator[tuple[date, int, str]]:
    """Stream ``(date, rank, domain)`` rows of an Alexa rank CSV."""
    if stats is None:
        stats = IngestStats()
    for lineno, line in _data_lines(path):
        stats.lines += 1
        row = next(csv.reader([line]))
        if lineno == 1 and row and row[0].strip().lower() == "date":
            continue
        if len(row) != 3:
            stats.skip("field count")
            continue
        try:
            day = date.fromisoformat(row[0].strip())
            rank = int(row[1])
        except ValueError:
            stats.skip("value")
            continue
        stats.records += 1
        yield day, rank, normalize(row[2])


def alexa_whitelist(rows: Iterable[tuple[date, int, str]], top: int = 10_000,
                    more_than_days: int = 90) -> list[LabelEvent]:
    """ALE events for domains ranked within ``top`` for more than
    ``more_than_days`` consecutive days.

    The event is dated on the first day of the first qualifying run.
    """
    days: dict[str, set[date]] = defaultdict(set)
    for day, rank, domain in rows:
        if rank <= top:
            days[domain].add(day)
    events = []
    one = timedelta(days=1)
    for domain in sorted(days):
        run_start = prev = None
        run = 0
        for d in sorted(days[domain]):
            if prev is not None and d - prev == one:
                run += 1
            else:
                run_start, run = d, 1
            prev = d
            if run > more_than_days:
                events.append(LabelEvent(domain, LabelSource.ALE, run_start, f"top{top}"))
                break
    return events


def mean_ranks(rows: Iterable[tuple[date, int, str]]) -> dict[str, float]:
    total: dict[str, int] = defaultdict(int)
    n: dict[str, int] = defaultdict(int)
    for _, rank, domain in rows:
        total[domain] += rank
        n[domain] += 1
    return {d: total[d] / n[d] for d in total}


# -- certificates ------------------------------------------------------------

def ingest_certs(path, stats: IngestStats | None = None) -> Iterator[CertRecord]:
    if stats is None:
        stats = IngestStats()
    for _, line in _data_lines(path):
        stats.lines += 1
        try:
            obj = json.loads(line)
            names = frozenset(normalize(n) for n in obj["names"] if str(n).strip())
            rec = CertRecord(names, str(obj.get("issuer", "")), date.fromisoformat(obj["logged_at"]))
        except (ValueError, KeyError, TypeError):
            stats.skip("record")
            continue
        stats.records += 1
        yield rec


@dataclass
class CertStats:
    combo_certs: int = 0
    typo_certs: int = 0
    combo_names: set[str] = field(default_factory=set)
    typo_names: set[str] = field(default_factory=set)
    combo_issuers: Counter = field(default_factory=Counter)
    typo_issuers: Counter = field(default_factory=Counter)
    certs_in: int = 0
    names_skipped: int = 0

    def merge(self, other: CertStats) -> CertStats:
        return CertStats(
            self.combo_certs + other.combo_certs,
            self.typo_certs + other.typo_certs,
            self.combo_names | other.combo_names,
            self.typo_names | other.typo_names,
            self.combo_issuers + other.combo_issuers,
            self.typo_issuers + other.typo_issuers,
            self.certs_in + other.certs_in,
            self.names_skipped + other.names_skipped,
        )

    @staticmethod
    def _shares(counter: Counter) -> dict[str, float]:
        total = sum(counter.values())
        return {k: counter[k] / total for k in sorted(counter)} if total else {}

    def to_dict(self) -> dict:
        return {
            "certs_in": self.certs_in,
            "names_skipped": self.names_skipped,
            "combosquatting": {
                "certificates": self.combo_certs,
                "distinct_fqdns": len(self.combo_names),
                "issuer_counts": dict(sorted(self.combo_issuers.items())),
                "issuer_shares": self._shares(self.combo_issuers),
            },
            "typosquatting": {
                "certificates": self.typo_certs,
                "distinct_fqdns": len(self.typo_names),
                "issuer_counts": dict(sorted(self.typo_issuers.items())),
                "issuer_shares": self._shares(self.typo_issuers),
            },
        }


def cert_scan(certs: Iterable[CertRecord], scanner: Scanner) -> CertStats:
    """Count certificates covering combosquatting (and typosquatting) names.

    Wildcard names are checked without their ``*.`` prefix.
    """
    stats = CertStats()
    for cert in certs:
        stats.certs_in += 1
        combo, typo = set(), set()
        for name in cert.names:
            fqdn = name[2:] if name.startswith("*.") else name
            try:
                _, _, verdicts = scanner.verdicts(fqdn, include_typos=True)
            except DomainError:
                stats.names_skipped += 1
                continue
            kinds = {v.kind for v in verdicts}
            if SquatKind.COMBO in kinds:
                combo.add(fqdn)
            elif SquatKind.TYPO in kinds:
                typo.add(fqdn)
        if combo:
            stats.combo_certs += 1
            stats.combo_names |= combo
            stats.combo_issuers[cert.issuer] += 1
        if typo:
            stats.typo_certs += 1
            stats.typo_names |= typo
            stats.typo_issuers[cert.issuer] += 1
    return stats


# -- derived sets ------------------------------------------------------------

SET_NAMES = ("cp", "ca", "c_mal", "c_pbl", "c_apt", "c_spa", "c_abuse", "c_ale")
_SOURCE_SET = {
    LabelSource.MAL: "c_mal",
    LabelSource.PBL: "c_pbl",
    LabelSource.APT: "c_apt",
    LabelSource.SPA: "c_spa",
    LabelSource.ALE: "c_ale",
}


@dataclass
class DerivedSets:
    sets: dict[str, frozenset[str]]
    trademarks: Mapping[str, frozenset[str]]
    categories: Mapping[str, str]

    def __getattr__(self, name):
        sets = self.__dict__.get("sets", {})
        if name in sets:
            return sets[name]
        raise AttributeError(name)

    def no_t(self, domains: Iterable[str]) -> int:
        return len({t for d in domains for t in self.trademarks.get(d, ())})

    def no_c(self, domains: Iterable[str]) -> int:
        return len({self.categories[t] for d in domains for t in self.trademarks.get(d, ())
                    if t in self.categories})

    def table(self) -> list[dict]:
        """One row per set: intersections with CP and CA plus their NoT/NoC."""
        cp, ca = self.sets["cp"], self.sets["ca"]
        rows = []
        for name in SET_NAMES:
            members = self.sets[name]
            in_cp = members & cp
            in_ca = members & ca
            rows.append({
                "set": name,
                "cap_cp": len(in_cp),
                "not_cp": self.no_t(in_cp),
                "noc_cp": self.no_c(in_cp),
                "cap_ca": len(in_ca),
                "not_ca": self.no_t(in_ca),
                "e2ld_count": len(members),
                "not": self.no_t(members),
                "noc": self.no_c(members),
            })
        return rows


def derive_sets(pdns_matches: Iterable[Match], adns_matches: Iterable[Match],
                label_events: Iterable[LabelEvent], seeds: Iterable[TrademarkSeed],
                scanner: Scanner) -> DerivedSets:
    """Build CP and CA from DNS matches, then the label-derived combosquatting sets.

    Labels are collapsed to registrable domains; a labeled domain joins
    ``c_<source>`` when it is combosquatting for at least one seed.
    """
    trademarks: dict[str, set[str]] = defaultdict(set)
    cp, ca = set(), set()
    for target, stream in ((cp, pdns_matches), (ca, adns_matches)):
        for m in stream:
            if m.kind is SquatKind.COMBO:
                target.add(m.domain)
                trademarks[m.domain].add(m.trademark)

    labeled: dict[str, set[str]] = {name: set() for name in _SOURCE_SET.values()}
    for ev in label_events:
        try:
            domain, _, verdicts = scanner.verdicts(ev.domain)
        except DomainError:
            log.debug("unparsable labeled domain %r", ev.domain)
            continue
        combos = [v.trademark for v in verdicts if v.kind is SquatKind.COMBO]
        if combos:
            labeled[_SOURCE_SET[ev.source]].add(domain)
            trademarks[domain].update(combos)

    sets = {"cp": frozenset(cp), "ca": frozenset(ca)}
    sets.update({k: frozenset(v) for k, v in labeled.items()})
    sets["c_abuse"] = frozenset().union(*(sets[_SOURCE_SET[s]] for s in ABUSE_SOURCES))
    categories = {s.trademark: s.category for s in seeds}
    return DerivedSets(sets, {k: frozenset(v) for k, v in trademarks.items()}, categories)


def read_seed_trademarks(path) -> list[str]:
    return [s.trademark for s in load_seeds(path, english=frozenset())]
