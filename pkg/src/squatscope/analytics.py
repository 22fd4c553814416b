"""Temporal and hosting-infrastructure metrics over scanned matches.

All accumulators merge associatively, so shards can be processed
independently and combined before reporting.
"""

from __future__ import annotations

import bisect
import ipaddress
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from datetime import date

from squatscope._io import open_text
from squatscope._stats import ecdf
from squatscope.classify import Match, SquatKind
from squatscope.domain import DomainError, SuffixList, default_suffixes, parse_domain
from squatscope.records import LabelEvent, TrademarkSeed


# -- timelines ---------------------------------------------------------------

@dataclass
class DomainTimeline:
    domain: str
    first_seen: date
    last_seen: date
    daily_lookups: dict[date, int] = field(default_factory=dict)

    @property
    def lifetime(self) -> int:
        return (self.last_seen - self.first_seen).days

    def add(self, day: date, lookups: int) -> None:
        if day < self.first_seen:
            self.first_seen = day
        if day > self.last_seen:
            self.last_seen = day
        self.daily_lookups[day] = self.daily_lookups.get(day, 0) + lookups

    def merge(self, other: DomainTimeline) -> DomainTimeline:
        lookups = dict(self.daily_lookups)
        for d, n in other.daily_lookups.items():
            lookups[d] = lookups.get(d, 0) + n
        return DomainTimeline(self.domain, min(self.first_seen, other.first_seen),
                              max(self.last_seen, other.last_seen), lookups)


def build_timelines(matches: Iterable[Match]) -> dict[str, DomainTimeline]:
    """Per-domain first/last sighting and daily lookup volume.

    A record matching several trademarks still counts its lookups once.
    """
    timelines: dict[str, DomainTimeline] = {}
    seen: set[tuple] = set()
    for m in matches:
        obs = m.observation
        key = (m.domain, obs)
        if key in seen:
            continue
        seen.add(key)
        tl = timelines.get(m.domain)
        if tl is None:
            timelines[m.domain] = DomainTimeline(m.domain, obs.date, obs.date, {obs.date: obs.lookup_count})
        else:
            tl.add(obs.date, obs.lookup_count)
    return timelines


def merge_timelines(a: Mapping[str, DomainTimeline], b: Mapping[str, DomainTimeline]) -> dict[str, DomainTimeline]:
    out = dict(a)
    for k, tl in b.items():
        out[k] = out[k].merge(tl) if k in out else tl
    return out


def _restrict(timelines: Mapping[str, DomainTimeline], subset) -> list[DomainTimeline]:
    if subset is None:
        return list(timelines.values())
    return [tl for k, tl in timelines.items() if k in subset]


def lifetime_cdf(timelines: Mapping[str, DomainTimeline], subset=None) -> list[tuple[int, float]]:
    return ecdf(tl.lifetime for tl in _restrict(timelines, subset))


def _label_key(domain: str, suffixes: SuffixList) -> str | None:
    try:
        return parse_domain(domain, suffixes).registered
    except DomainError:
        return None


def detection_lags(timelines: Mapping[str, DomainTimeline], label_events: Iterable[LabelEvent],
                   suffixes: SuffixList | None = None) -> dict[str, dict[str, int]]:
    """Days from first DNS sighting to first label, per source and domain.

    Negative values mean the label came first.
    """
    suffixes = suffixes or default_suffixes()
    first_label: dict[tuple[str, str], date] = {}
    for ev in label_events:
        key = _label_key(ev.domain, suffixes)
        if key is None or key not in timelines:
            continue
        k = (ev.source.value, key)
        if k not in first_label or ev.date < first_label[k]:
            first_label[k] = ev.date
    lags: dict[str, dict[str, int]] = defaultdict(dict)
    for (source, domain), day in first_label.items():
        lags[source][domain] = (day - timelines[domain].first_seen).days
    return {s: dict(sorted(v.items())) for s, v in sorted(lags.items())}


def detection_lag(timelines: Mapping[str, DomainTimeline], label_events: Iterable[LabelEvent],
                  suffixes: SuffixList | None = None) -> dict[str, list[tuple[int, float]]]:
    """Per-source CDF of detection lag, normalised by that source's domain count."""
    return {s: ecdf(v.values()) for s, v in detection_lags(timelines, label_events, suffixes).items()}


# -- daily series ------------------------------------------------------------

@dataclass
class DailyActive:
    """Distinct domains seen per day, kept per verdict kind until finalised."""

    days: dict[tuple[str, date], set[str]] = field(default_factory=lambda: defaultdict(set))

    def add(self, m: Match) -> None:
        self.days[(m.kind.value, m.observation.date)].add(m.domain)

    def update(self, matches: Iterable[Match]) -> DailyActive:
        for m in matches:
            self.add(m)
        return self

    def merge(self, other: DailyActive) -> DailyActive:
        out = DailyActive()
        for src in (self, other):
            for k, v in src.days.items():
                out.days[k] |= v
        return out

    def counts(self, kind: SquatKind | str = SquatKind.COMBO) -> dict[date, int]:
        kind = SquatKind(kind).value
        return {d: len(v) for (k, d), v in sorted(self.days.items()) if k == kind}


def daily_active_counts(matches: Iterable[Match], kind: SquatKind | str = SquatKind.COMBO) -> dict[date, int]:
    return DailyActive().update(matches).counts(kind)


def lookup_volume_series(timelines: Mapping[str, DomainTimeline], subset=None) -> dict[date, int]:
    series: Counter = Counter()
    for tl in _restrict(timelines, subset):
        series.update(tl.daily_lookups)
    return dict(sorted(series.items()))


def normalize_series(series: Mapping[date, int]) -> dict[date, float]:
    """Scale a series by its maximum so it peaks at 1."""
    peak = max(series.values(), default=0)
    return {d: (v / peak if peak else 0.0) for d, v in series.items()}


# -- Alexa ranks -------------------------------------------------------------

class RankOutOfRange(ValueError):
    pass


ALEXA_BIN = 20_000
ALEXA_MAX = 1_000_000


def alexa_bin(rank: float, width: int = ALEXA_BIN) -> int:
    """1-based bin index; bin 1 covers ranks [1, width]."""
    if not 1 <= rank <= ALEXA_MAX:
        raise RankOutOfRange(f"rank {rank} outside [1, {ALEXA_MAX}]")
    return max(1, math.ceil(rank / width))


def alexa_rank_histogram(rank_series: Mapping[str, float], abuse_set,
                         width: int = ALEXA_BIN) -> dict[str, list[int]]:
    """Counts per rank bin for abusive domains and for all the others."""
    nbins = ALEXA_MAX // width
    hist = {"abusive": [0] * nbins, "other": [0] * nbins}
    for domain, rank in rank_series.items():
        b = alexa_bin(rank, width)
        hist["abusive" if domain in abuse_set else "other"][b - 1] += 1
    return hist


# -- routing -----------------------------------------------------------------

class NoRoute(LookupError):
    pass


@dataclass(frozen=True)
class Route:
    prefix: str
    asn: str
    country: str


class RoutingSnapshot:
    """Prefix table answering longest-prefix-match queries.

    Prefixes are bucketed by length; a lookup probes the buckets from the
    longest length down and stops at the first hit.
    """

    def __init__(self, entries: Iterable[tuple[str, str, str]]):
        self._tables: dict[int, dict[int, dict[int, Route]]] = {4: {}, 6: {}}
        self._lengths: dict[int, list[int]] = {4: [], 6: []}
        self.size = 0
        for prefix, asn, cc in entries:
            net = ipaddress.ip_network(prefix.strip(), strict=False)
            table = self._tables[net.version].setdefault(net.prefixlen, {})
            key = int(net.network_address) >> (net.max_prefixlen - net.prefixlen)
            if key not in table:
                table[key] = Route(str(net), str(asn).strip(), cc.strip().upper())
                self.size += 1
        for v, tables in self._tables.items():
            self._lengths[v] = sorted(tables, reverse=True)

    @classmethod
    def from_file(cls, path) -> RoutingSnapshot:
        """Read TSV ``prefix asn country_code`` lines (``#`` comments)."""
        def rows():
            with open_text(path) as fh:
                for line in fh:
                    if not line.strip() or line.lstrip().startswith("#"):
                        continue
                    parts = line.rstrip("\n").split("\t")
                    if len(parts) != 3:
                        raise ValueError(f"{path}: bad routing line {line!r}")
                    yield parts
        return cls(rows())

    def __len__(self) -> int:
        return self.size

    def lookup(self, ip) -> Route:
        addr = ipaddress.ip_address(ip)
        bits = addr.max_prefixlen
        value = int(addr)
        tables = self._tables[addr.version]
        for plen in self._lengths[addr.version]:
            hit = tables[plen].get(value >> (bits - plen))
            if hit is not None:
                return hit
        raise NoRoute(str(addr))


def lpm_lookup(ip, snapshot: RoutingSnapshot) -> tuple[str, str, str]:
    r = snapshot.lookup(ip)
    return r.prefix, r.asn, r.country


class SnapshotSet:
    """Several dated snapshots; each lookup uses the one closest in date."""

    def __init__(self, snapshots: Iterable[tuple[date, RoutingSnapshot]]):
        items = sorted(snapshots, key=lambda x: x[0])
        if not items:
            raise ValueError("no routing snapshots")
        self._dates = [d for d, _ in items]
        self._snaps = [s for _, s in items]

    def for_date(self, day: date | None) -> RoutingSnapshot:
        if day is None:
            return self._snaps[-1]
        i = bisect.bisect_left(self._dates, day)
        if i == 0:
            return self._snaps[0]
        if i == len(self._dates):
            return self._snaps[-1]
        before, after = self._dates[i - 1], self._dates[i]
        # ties go to the earlier snapshot
        return self._snaps[i] if (after - day) < (day - before) else self._snaps[i - 1]

    def lookup(self, ip, day: date | None = None) -> Route:
        return self.for_date(day).lookup(ip)


DIMENSIONS = ("cidr", "asn", "cc")


@dataclass
class InfraAccumulator:
    """Domain to IP/CIDR/ASN/country sets, mergeable across shards."""

    ips: dict[str, set[str]] = field(default_factory=lambda: defaultdict(set))
    keys: dict[str, dict[str, set[str]]] = field(
        default_factory=lambda: {d: defaultdict(set) for d in DIMENSIONS})
    no_route: int = 0

    def add(self, m: Match, snapshot) -> None:
        obs = m.observation
        for ip in obs.rdata_ips:
            if ip in self.ips[m.domain]:
                continue
            try:
                if isinstance(snapshot, SnapshotSet):
                    r = snapshot.lookup(ip, obs.date)
                else:
                    r = snapshot.lookup(ip)
            except NoRoute:
                self.no_route += 1
                continue
            self.ips[m.domain].add(ip)
            self.keys["cidr"][m.domain].add(r.prefix)
            self.keys["asn"][m.domain].add(r.asn)
            self.keys["cc"][m.domain].add(r.country)

    def merge(self, other: InfraAccumulator) -> InfraAccumulator:
        out = InfraAccumulator()
        for src in (self, other):
            for d, v in src.ips.items():
                out.ips[d] |= v
            for dim in DIMENSIONS:
                for d, v in src.keys[dim].items():
                    out.keys[dim][d] |= v
            out.no_route += src.no_route
        return out

    def report(self) -> ConcentrationReport:
        domains = sorted(d for d, v in self.ips.items() if v)
        per_key = {}
        per_domain = {}
        for dim in DIMENSIONS:
            c: Counter = Counter()
            for d in domains:
                c.update(self.keys[dim][d])
            per_key[dim] = sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))
            per_domain[dim] = Counter(len(self.keys[dim][d]) for d in domains)
        ip_counts = Counter(len(self.ips[d]) for d in domains)
        return ConcentrationReport(len(domains), per_key, per_domain, ip_counts, self.no_route)


@dataclass
class ConcentrationReport:
    domains: int
    per_key: dict[str, list[tuple[str, int]]]
    per_domain: dict[str, Counter]
    ip_counts: Counter
    no_route: int = 0

    def top_share(self, dim: str) -> float:
        rows = self.per_key.get(dim) or []
        return rows[0][1] / self.domains if rows and self.domains else 0.0

    def to_dict(self) -> dict:
        return {
            "domains": self.domains,
            "no_route": self.no_route,
            "top_share": {d: self.top_share(d) for d in DIMENSIONS},
            "domains_per_key": {d: self.per_key[d] for d in DIMENSIONS},
            "keys_per_domain_cdf": {d: ecdf(self.per_domain[d]) for d in DIMENSIONS},
            "ips_per_domain_cdf": ecdf(self.ip_counts),
        }


def concentration_report(matches: Iterable[Match], snapshot, subset=None) -> ConcentrationReport:
    acc = InfraAccumulator()
    for m in matches:
        if subset is None or m.domain in subset:
            acc.add(m, snapshot)
    return acc.report()


# -- categories --------------------------------------------------------------

def category_counts(matches: Iterable[Match], seeds: Iterable[TrademarkSeed]) -> dict[str, dict]:
    """Distinct combosquatting domains per category, absolute and per seed."""
    seeds = list(seeds)
    category_of = {s.trademark: s.category for s in seeds}
    n_seeds = Counter(s.category for s in seeds)
    domains: dict[str, set[str]] = {c: set() for c in n_seeds}
    for m in matches:
        if m.kind is SquatKind.COMBO and m.trademark in category_of:
            domains[category_of[m.trademark]].add(m.domain)
    return {
        c: {
            "trademarks": n_seeds[c],
            "absolute": len(domains[c]),
            "normalized": len(domains[c]) / n_seeds[c] if n_seeds[c] else 0.0,
        }
        for c in sorted(domains)
    }
