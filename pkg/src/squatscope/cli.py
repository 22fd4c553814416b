"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 data error
(malformed input or skip rate above ``--max-skip-rate``).

Defaults for any long flag can come from an INI file named by the
``SQUATSCOPE_CONFIG`` environment variable (section ``[squatscope]``, keys
spelled like the flags with ``_`` for ``-``); command-line flags win.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from squatscope import __version__
from squatscope.analytics import (
    DIMENSIONS,
    ALEXA_BIN,
    DailyActive,
    InfraAccumulator,
    RoutingSnapshot,
    SnapshotSet,
    alexa_rank_histogram,
    build_timelines,
    category_counts,
    detection_lag,
    lifetime_cdf,
    lookup_volume_series,
    merge_timelines,
    normalize_series,
)
from squatscope.classify import ScanStats, Scanner, SquatKind
from squatscope.domain import DomainError, SuffixList, default_suffixes
from squatscope.ingest import (
    IngestError,
    IngestStats,
    alexa_whitelist,
    cert_scan,
    derive_sets,
    ingest_alexa,
    ingest_certs,
    ingest_dns,
    ingest_labels,
    load_seeds,
    mean_ranks,
)
from squatscope.lexical import (
    DictionarySet,
    UnigramModel,
    default_dictionaries,
    default_model,
    lexical_report,
)
from squatscope.records import LabelSource
from squatscope.reports import (
    cdf_rows,
    format_match,
    read_matches,
    write_csv,
    write_json,
    write_match_lines,
)
from squatscope.typos import Keyboard, generate_typos, qwerty, typo_upper_bound

log = logging.getLogger("squatscope")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
DNS_SOURCES = ("pdns", "adns")


class ConfigError(Exception):
    pass


class DataError(Exception):
    pass


# -- configuration -----------------------------------------------------------

@dataclass
class RunConfig:
    seed_path: Path | None = None
    suffix_path: Path | None = None
    keyboard_path: Path | None = None
    dictionary_paths: dict[str, Path] = field(default_factory=dict)
    unigram_path: Path | None = None
    inputs: dict[str, list[Path]] = field(default_factory=dict)
    out_dir: Path = Path(".")
    subdomain_matching: bool = False
    shard_count: int = 1
    max_skip_rate: float = 0.01

    @classmethod
    def from_args(cls, args) -> RunConfig:
        dicts = {}
        for spec in getattr(args, "dictionary", None) or []:
            name, _, path = spec.rpartition("=")
            dicts[name or Path(path).stem] = Path(path)
        inputs = {k: [Path(p) for p in getattr(args, k, None) or []]
                  for k in ("pdns", "adns", "certs", "alexa", "routing")}
        for spec in getattr(args, "labels", None) or []:
            src, _, path = spec.partition("=")
            inputs.setdefault(f"labels:{src.upper()}", []).append(Path(path))
        cfg = cls(
            seed_path=_path(getattr(args, "seeds", None)),
            suffix_path=_path(getattr(args, "suffixes", None)),
            keyboard_path=_path(getattr(args, "keyboard", None)),
            dictionary_paths=dicts,
            unigram_path=_path(getattr(args, "unigrams", None)),
            inputs=inputs,
            out_dir=Path(getattr(args, "out", None) or "."),
            subdomain_matching=bool(getattr(args, "subdomains", False)),
            shard_count=int(getattr(args, "shards", 1) or 1),
            max_skip_rate=float(getattr(args, "max_skip_rate", 0.01)),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.shard_count < 1:
            raise ConfigError("--shards must be >= 1")
        paths = [self.seed_path, self.suffix_path, self.keyboard_path, self.unigram_path,
                 *self.dictionary_paths.values()]
        for key, ps in self.inputs.items():
            if key == "routing":
                ps = [Path(str(p).partition("=")[2] or str(p)) for p in ps]
            paths.extend(ps)
        for p in paths:
            if p is not None and not p.exists():
                raise ConfigError(f"no such file: {p}")
        for key in self.inputs:
            if key.startswith("labels:"):
                try:
                    LabelSource(key.split(":", 1)[1])
                except ValueError:
                    raise ConfigError(f"unknown label source {key.split(':', 1)[1]!r}") from None

    def suffixes(self) -> SuffixList:
        return SuffixList.from_file(self.suffix_path) if self.suffix_path else default_suffixes()

    def keyboard(self) -> Keyboard:
        return Keyboard.from_file(self.keyboard_path) if self.keyboard_path else qwerty()

    def model(self) -> UnigramModel:
        return UnigramModel.from_file(self.unigram_path) if self.unigram_path else default_model()

    def dictionaries(self) -> DictionarySet:
        if not self.dictionary_paths:
            return default_dictionaries()
        return DictionarySet.from_files(self.dictionary_paths)

    def english(self):
        for name in ("english", "general", "general-english"):
            if name in self.dictionary_paths:
                return self.dictionaries().lists[name]
        if self.dictionary_paths:
            return frozenset()
        return default_dictionaries().lists["english"]

    def seeds(self):
        if self.seed_path is None:
            raise ConfigError("--seeds is required")
        return load_seeds(self.seed_path, english=self.english())

    def scanner(self, seeds=None) -> Scanner:
        seeds = self.seeds() if seeds is None else seeds
        return Scanner([s.trademark for s in seeds], self.keyboard(), self.suffixes(),
                       self.subdomain_matching)


def _path(p) -> Path | None:
    return Path(p) if p else None


def _load_config_defaults() -> dict:
    path = os.environ.get("SQUATSCOPE_CONFIG")
    if not path:
        return {}
    cp = configparser.ConfigParser()
    if not cp.read(path, encoding="utf-8"):
        raise ConfigError(f"SQUATSCOPE_CONFIG points to unreadable file {path}")
    section = cp["squatscope"] if cp.has_section("squatscope") else cp[cp.default_section]
    out = {}
    for key, value in section.items():
        key = key.replace("-", "_")
        if key in ("pdns", "adns", "labels", "dictionary", "certs", "alexa", "routing"):
            out[key] = value.split()
        elif key == "subdomains":
            out[key] = section.getboolean(key)
        else:
            out[key] = value
    return out


# -- scan ----------------------------------------------------------------------

def _scan_shard(cfg: RunConfig, seeds, source: str, path: Path, shard: tuple[int, int]):
    scanner = cfg.scanner(seeds)
    ingest = IngestStats()
    stats = ScanStats()
    combos, typos = [], []
    records = ingest_dns(path, source, ingest, shard=shard)
    for m in scanner.scan(records, stats, kinds=(SquatKind.COMBO, SquatKind.TYPO)):
        (combos if m.kind is SquatKind.COMBO else typos).append(format_match(m))
    stats.matches = len(combos)
    stats.per_trademark.clear()
    for line in combos:
        stats.per_trademark[line.split("\t")[8]] += 1
    stats.e2lds = {line.split("\t")[2] for line in combos}
    return combos, typos, stats, ingest


def run_scan(cfg: RunConfig) -> tuple[ScanStats, IngestStats]:
    seeds = cfg.seeds()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [(src, p, (i, cfg.shard_count))
            for src in DNS_SOURCES for p in cfg.inputs.get(src, [])
            for i in range(cfg.shard_count)]
    if cfg.shard_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.shard_count) as pool:
            results = list(pool.map(_scan_shard, *zip(*[(cfg, seeds, *j) for j in jobs])))
    else:
        results = [_scan_shard(cfg, seeds, *j) for j in jobs]

    total, ingest = ScanStats(), IngestStats()
    per_source = {src: ([], []) for src in DNS_SOURCES}
    for (src, _, _), (combos, typos, stats, ist) in zip(jobs, results):
        per_source[src][0].extend(combos)
        per_source[src][1].extend(typos)
        total = total.merge(stats)
        ingest = ingest.merge(ist)
    for src, (combos, typos) in per_source.items():
        write_match_lines(cfg.out_dir / f"matches_{src}.tsv", combos)
        write_match_lines(cfg.out_dir / f"typos_{src}.tsv", typos)
    summary = total.to_dict()
    summary["records_in"] = ingest.lines
    summary["records_skipped"] = ingest.skipped + total.records_skipped
    summary["skip_reasons"] = dict(sorted(ingest.reasons.items()))
    if total.records_skipped:
        summary["skip_reasons"]["qname"] = total.records_skipped
    write_json(cfg.out_dir / "scan_stats.json", summary)
    return total, ingest


def cmd_scan(args) -> int:
    cfg = RunConfig.from_args(args)
    if not any(cfg.inputs.get(s) for s in DNS_SOURCES):
        raise ConfigError("scan needs at least one --pdns or --adns file")
    total, ingest = run_scan(cfg)
    lines = ingest.lines
    skipped = ingest.skipped + total.records_skipped
    rate = skipped / lines if lines else 0.0
    print(f"scanned {lines} records, {total.matches} combosquatting matches, "
          f"{len(total.e2lds)} domains, {skipped} skipped")
    if rate > cfg.max_skip_rate:
        print(f"error: skip rate {rate:.4f} exceeds --max-skip-rate {cfg.max_skip_rate}",
              file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


# -- seeds, typos, classify ---------------------------------------------------

def cmd_validate_seeds(args) -> int:
    cfg = RunConfig.from_args(args)
    seeds = cfg.seeds()
    flagged = [s for s in seeds if s.flags]
    for s in flagged:
        print(f"{s.trademark}\t{s.source_domain}\t{s.category}\t{','.join(s.flags)}")
    print(f"{len(seeds)} seeds, {len(flagged)} flagged for review", file=sys.stderr)
    if args.out:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        write_csv(cfg.out_dir / "seed_flags.csv", ("trademark", "domain", "category", "flags"),
                  [(s.trademark, s.source_domain, s.category, ";".join(s.flags)) for s in flagged])
    return EXIT_OK


def cmd_gen_typos(args) -> int:
    cfg = RunConfig.from_args(args)
    kb = cfg.keyboard()
    ts = generate_typos(args.trademark.lower(), kb)
    counts = dict(ts.per_model_counts, total=len(ts))
    if args.out:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        (cfg.out_dir / f"typos_{ts.trademark_e2ld}.txt").write_text(
            "".join(v + "\n" for v in sorted(ts.variants)), encoding="utf-8")
        write_json(cfg.out_dir / f"typos_{ts.trademark_e2ld}.json", counts)
    else:
        for v in sorted(ts.variants):
            print(v)
    for k, v in counts.items():
        print(f"{k}\t{v}", file=sys.stderr)
    if cfg.seed_path:
        per, total = typo_upper_bound(cfg.seeds(), kb)
        write_json(cfg.out_dir / "typo_upper_bound.json", {"per_trademark": per, "total": total})
    return EXIT_OK


def cmd_classify(args) -> int:
    cfg = RunConfig.from_args(args)
    scanner = cfg.scanner()
    status = EXIT_OK
    for name in args.domain:
        try:
            verdicts = scanner.classify_domain(name)
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = EXIT_DATA
            continue
        for v in verdicts:
            prefix = f"{name}\t" if len(args.domain) > 1 else ""
            print(f"{prefix}{v.trademark} {v.kind.value}")
    return status


# -- sets and reports -----------------------------------------------------------

def _matches(cfg: RunConfig, matches_dir: Path, kind: str = "matches"):
    out = {}
    for src in DNS_SOURCES:
        p = matches_dir / f"{kind}_{src}.tsv"
        out[src] = list(read_matches(p)) if p.exists() else []
    return out


def _label_events(cfg: RunConfig):
    events = []
    for key, paths in sorted(cfg.inputs.items()):
        if key.startswith("labels:"):
            for p in paths:
                events.extend(ingest_labels(p, key.split(":", 1)[1]))
    alexa_rows = [r for p in cfg.inputs.get("alexa", []) for r in ingest_alexa(p)]
    if alexa_rows:
        events.extend(alexa_whitelist(alexa_rows))
    return events, alexa_rows


def _derive(cfg, matches, seeds, events):
    return derive_sets(matches["pdns"], matches["adns"], events, seeds, cfg.scanner(seeds))


SET_HEADER = ("set", "cap_cp", "not_cp", "noc_cp", "cap_ca", "not_ca", "e2ld_count", "not", "noc")


def _write_sets(cfg: RunConfig, ds) -> None:
    rows = ds.table()
    write_csv(cfg.out_dir / "sets.csv", SET_HEADER, [[r[k] for k in SET_HEADER] for r in rows])
    write_csv(cfg.out_dir / "set_members.csv", ("set", "domain"),
              [(name, d) for name in sorted(ds.sets) for d in sorted(ds.sets[name])])
    write_json(cfg.out_dir / "sets.json", {"table": rows})


def cmd_derive_sets(args) -> int:
    cfg = RunConfig.from_args(args)
    seeds = cfg.seeds()
    events, _ = _label_events(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    _write_sets(cfg, _derive(cfg, _matches(cfg, Path(args.matches)), seeds, events))
    return EXIT_OK


def _shards(items, n, key=None):
    """Split ``items`` into ``n`` parts; items sharing ``key`` stay together."""
    if key is None:
        return [items[i::n] for i in range(n)]
    slot = {k: i % n for i, k in enumerate(sorted({key(x) for x in items}))}
    parts = [[] for _ in range(n)]
    for x in items:
        parts[slot[key(x)]].append(x)
    return parts


def _by_domain(m):
    return m.domain


def _report_lexical(cfg, args, seeds):
    matches = _matches(cfg, Path(args.matches))
    category = {s.trademark: s.category for s in seeds}
    triples = sorted({(m.e2ld, m.trademark, category.get(m.trademark, ""))
                      for src in DNS_SOURCES for m in matches[src]})
    stats = None
    model, dicts = cfg.model(), cfg.dictionaries()
    for part in _shards(triples, cfg.shard_count):
        s = lexical_report(part, model, dicts)
        stats = s if stats is None else stats.merge(s)
    data = stats.to_dict(k=args.top)
    rows = []
    for metric in ("length_cdf", "residual_length_cdf", "token_count_cdf", "word_count_cdf"):
        rows += cdf_rows(metric, data[metric])
    write_csv(cfg.out_dir / "lexical_cdf.csv", ("metric", "value", "fraction"), rows)
    radial = data["words_vs_segments"]
    write_csv(cfg.out_dir / "lexical_words_vs_segments.csv",
              ("tokens", "domains", "words", "segments", "words_pct", "segments_pct"),
              [[r[k] for k in ("tokens", "domains", "words", "segments", "words_pct", "segments_pct")]
               for r in radial])
    top = [("(all)", i, w, c) for i, (w, c) in enumerate(data["top_words"], 1)]
    for cat, words in data["top_words_by_category"].items():
        top += [(cat, i, w, c) for i, (w, c) in enumerate(words, 1)]
    write_csv(cfg.out_dir / "lexical_top_words.csv", ("category", "rank", "word", "count"), top)
    write_json(cfg.out_dir / "lexical.json", data)


def _datekeys(series):
    return {d.isoformat(): v for d, v in series.items()}


def _report_temporal(cfg, args, seeds):
    mdir = Path(args.matches)
    matches = _matches(cfg, mdir)
    typos = _matches(cfg, mdir, "typos")
    events, alexa_rows = _label_events(cfg)
    ds = _derive(cfg, matches, seeds, events)
    abuse = ds.sets["c_abuse"]
    n = cfg.shard_count

    daily_rows, timelines = [], {}
    for src in DNS_SOURCES:
        active = None
        for part in _shards(matches[src] + typos[src], n, _by_domain):
            a = DailyActive().update(part)
            active = a if active is None else active.merge(a)
        for kind in (SquatKind.COMBO, SquatKind.TYPO):
            daily_rows += [(d.isoformat(), kind.value, src, c) for d, c in active.counts(kind).items()]
    pdns_tl = {}
    for part in _shards(matches["pdns"], n, _by_domain):
        pdns_tl = merge_timelines(pdns_tl, build_timelines(part))
    timelines = pdns_tl
    write_csv(cfg.out_dir / "daily_active.csv", ("date", "kind", "source", "domains"), sorted(daily_rows))

    lifetime = {"cp": lifetime_cdf(timelines), "c_abuse": lifetime_cdf(timelines, abuse)}
    write_csv(cfg.out_dir / "lifetime_cdf.csv", ("subset", "days", "fraction"),
              [r for k, pts in lifetime.items() for r in cdf_rows(k, pts)])

    lags = detection_lag(timelines, events)
    write_csv(cfg.out_dir / "detection_lag.csv", ("source", "days", "fraction"),
              [r for k, pts in lags.items() for r in cdf_rows(k, pts)])

    volume = {"cp": lookup_volume_series(timelines), "c_abuse": lookup_volume_series(timelines, abuse)}
    vol_rows = []
    for k, series in volume.items():
        norm = normalize_series(series)
        vol_rows += [(d.isoformat(), k, v, norm[d]) for d, v in series.items()]
    write_csv(cfg.out_dir / "lookup_volume.csv", ("date", "subset", "lookups", "normalized"), vol_rows)

    combos = ds.sets["cp"] | ds.sets["ca"]
    ranks = {d: r for d, r in mean_ranks(alexa_rows).items() if d in combos}
    hist = alexa_rank_histogram(ranks, abuse)
    write_csv(cfg.out_dir / "alexa_histogram.csv", ("bin", "rank_lo", "rank_hi", "abusive", "other"),
              [(i + 1, i * ALEXA_BIN + 1, (i + 1) * ALEXA_BIN, hist["abusive"][i], hist["other"][i])
               for i in range(len(hist["abusive"]))])

    cats = {src: category_counts(matches[src], seeds) for src in DNS_SOURCES}
    write_csv(cfg.out_dir / "category_counts.csv",
              ("source", "category", "trademarks", "absolute", "normalized"),
              [(src, c, v["trademarks"], v["absolute"], v["normalized"])
               for src in DNS_SOURCES for c, v in cats[src].items()])

    write_json(cfg.out_dir / "temporal.json", {
        "domains": {"cp": len(timelines), "c_abuse": len(abuse & set(timelines))},
        "lifetime_cdf": lifetime,
        "detection_lag_cdf": lags,
        "lookup_volume": {k: _datekeys(v) for k, v in volume.items()},
        "alexa_histogram": hist,
        "category_counts": cats,
    })


def _routing(cfg):
    specs = [str(p) for p in cfg.inputs.get("routing", [])]
    if not specs:
        raise ConfigError("infra report needs --routing")
    dated = []
    for spec in specs:
        day, _, path = spec.rpartition("=")
        dated.append((date.fromisoformat(day) if day else date.min, RoutingSnapshot.from_file(path)))
    return dated[0][1] if len(dated) == 1 else SnapshotSet(dated)


def _report_infra(cfg, args, seeds):
    matches = _matches(cfg, Path(args.matches))
    events, _ = _label_events(cfg)
    ds = _derive(cfg, matches, seeds, events)
    snapshot = _routing(cfg)
    everything = matches["pdns"] + matches["adns"]
    subsets = {"all": None, "c_abuse": ds.sets["c_abuse"]}
    per_key, per_dom, ips, summary = [], [], [], {}
    for name, subset in subsets.items():
        acc = InfraAccumulator()
        for part in _shards(everything, cfg.shard_count, _by_domain):
            a = InfraAccumulator()
            for m in part:
                if subset is None or m.domain in subset:
                    a.add(m, snapshot)
            acc = acc.merge(a)
        rep = acc.report()
        data = rep.to_dict()
        summary[name] = data
        for dim in DIMENSIONS:
            per_key += [(name, dim, k, c) for k, c in rep.per_key[dim]]
            per_dom += [(name, dim, v, p) for v, p in data["keys_per_domain_cdf"][dim]]
        ips += [(name, v, p) for v, p in data["ips_per_domain_cdf"]]
    write_csv(cfg.out_dir / "infra_domains_per_key.csv", ("subset", "dimension", "key", "domains"), per_key)
    write_csv(cfg.out_dir / "infra_keys_per_domain_cdf.csv", ("subset", "dimension", "keys", "fraction"), per_dom)
    write_csv(cfg.out_dir / "infra_ips_per_domain_cdf.csv", ("subset", "ips", "fraction"), ips)
    write_json(cfg.out_dir / "infra.json", summary)


def _report_sets(cfg, args, seeds):
    events, _ = _label_events(cfg)
    _write_sets(cfg, _derive(cfg, _matches(cfg, Path(args.matches)), seeds, events))


def _write_certs(cfg, seeds):
    certs = cfg.inputs.get("certs", [])
    if not certs:
        raise ConfigError("cert scan needs --certs")
    scanner = cfg.scanner(seeds)
    stats = None
    for p in certs:
        s = cert_scan(ingest_certs(p), scanner)
        stats = s if stats is None else stats.merge(s)
    data = stats.to_dict()
    write_json(cfg.out_dir / "cert_stats.json", data)
    rows = []
    for kind in ("combosquatting", "typosquatting"):
        for issuer, count in data[kind]["issuer_counts"].items():
            rows.append((kind, issuer, count, data[kind]["issuer_shares"][issuer]))
    write_csv(cfg.out_dir / "cert_issuers.csv", ("kind", "issuer", "certificates", "share"), rows)
    return data


REPORTS = {
    "lexical": _report_lexical,
    "temporal": _report_temporal,
    "infra": _report_infra,
    "sets": _report_sets,
    "certs": lambda cfg, args, seeds: _write_certs(cfg, seeds),
}


def cmd_report(args) -> int:
    cfg = RunConfig.from_args(args)
    if args.report != "certs" and not args.matches:
        raise ConfigError("--matches is required")
    seeds = cfg.seeds()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    REPORTS[args.report](cfg, args, seeds)
    return EXIT_OK


def cmd_cert_scan(args) -> int:
    cfg = RunConfig.from_args(args)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    data = _write_certs(cfg, cfg.seeds())
    c = data["combosquatting"]
    print(f"{c['certificates']} certificates cover {c['distinct_fqdns']} combosquatting names")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seeds", help="seed CSV: trademark,domain,category,rank,origin")
    common.add_argument("--suffixes", help="public suffix rule file (default: bundled snapshot)")
    common.add_argument("--keyboard", help="keyboard adjacency file (default: QWERTY)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--subdomains", action="store_true", help="also match subdomain labels")
    common.add_argument("--shards", type=int, default=1, help="number of shards (default 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="squatscope", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate-seeds", parents=[common], help="flag short or dictionary-word seeds")
    s.add_argument("--dictionary", action="append", metavar="NAME=PATH",
                   help="general-English word list used for flagging")
    s.set_defaults(func=cmd_validate_seeds)

    s = sub.add_parser("gen-typos", parents=[common], help="enumerate typo variants of a trademark")
    s.add_argument("trademark")
    s.set_defaults(func=cmd_gen_typos)

    s = sub.add_parser("classify", parents=[common], help="classify domains against the seeds")
    s.add_argument("domain", nargs="+")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("scan", parents=[common], help="scan DNS corpora for squatting domains")
    s.add_argument("--pdns", action="append", help="passive DNS TSV (repeatable)")
    s.add_argument("--adns", action="append", help="active DNS TSV (repeatable)")
    s.add_argument("--max-skip-rate", type=float, default=0.01,
                   help="fail with exit 2 above this fraction of skipped records (default 0.01)")
    s.set_defaults(func=cmd_scan)

    feeds = argparse.ArgumentParser(add_help=False)
    feeds.add_argument("--matches", help="directory written by `scan`")
    feeds.add_argument("--labels", action="append", metavar="SOURCE=PATH",
                       help="label feed, SOURCE one of PBL, MAL, SPA, APT, ALE (repeatable)")
    feeds.add_argument("--alexa", action="append", help="Alexa rank CSV date,rank,domain")

    s = sub.add_parser("derive-sets", parents=[common, feeds], help="derive CP/CA and labeled sets")
    s.set_defaults(func=cmd_derive_sets)

    s = sub.add_parser("report", parents=[common, feeds], help="write CSV/JSON report artifacts")
    s.add_argument("report", choices=sorted(REPORTS))
    s.add_argument("--routing", action="append", metavar="[DATE=]PATH",
                   help="routing snapshot TSV prefix,asn,cc (repeatable, optionally dated)")
    s.add_argument("--certs", action="append", help="certificate JSON-lines file")
    s.add_argument("--unigrams", help="unigram model TSV token<TAB>count")
    s.add_argument("--dictionary", action="append", metavar="NAME=PATH")
    s.add_argument("--top", type=int, default=10, help="words per top list (default 10)")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("cert-scan", parents=[common], help="count certificates for squatting names")
    s.add_argument("--certs", action="append", help="certificate JSON-lines file")
    s.set_defaults(func=cmd_cert_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        defaults = _load_config_defaults()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if defaults:
        for action in parser._subparsers._group_actions:
            for sp in action.choices.values():
                known = {a.dest for a in sp._actions}
                sp.set_defaults(**{k: v for k, v in defaults.items() if k in known})
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IngestError, DataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
