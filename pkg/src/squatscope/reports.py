"""Match-file serialization and CSV/JSON report writers."""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Iterator
from datetime import date
from pathlib import Path

from squatscope._io import open_text
from squatscope.classify import Match, SquatKind, SquatVerdict
from squatscope.records import DnsObservation

MATCH_HEADER = ("date", "qname", "domain", "e2ld", "rrtype", "rdata", "lookup_count",
                "source", "trademark", "kind", "span_start", "span_end")


def format_match(m: Match) -> str:
    obs, v = m.observation, m.verdict
    start, end = v.match_span if v.match_span else ("", "")
    return "\t".join((
        obs.date.isoformat(), obs.qname, m.domain, m.e2ld, obs.rrtype,
        ",".join(sorted(obs.rdata_ips)), str(obs.lookup_count), obs.source,
        v.trademark, v.kind.value, str(start), str(end),
    ))


def parse_match(line: str) -> Match:
    f = line.rstrip("\n").split("\t")
    if len(f) != len(MATCH_HEADER):
        raise ValueError(f"bad match line: {line!r}")
    span = (int(f[10]), int(f[11])) if f[10] else None
    obs = DnsObservation(date.fromisoformat(f[0]), f[1], f[4],
                         frozenset(x for x in f[5].split(",") if x), int(f[6]), f[7])
    return Match(obs, f[2], f[3], SquatVerdict(f[8], SquatKind(f[9]), span))


def write_match_lines(path, lines: Iterable[str]) -> None:
    with open_text(path, "wt") as fh:
        fh.write("#" + "\t".join(MATCH_HEADER) + "\n")
        for line in sorted(lines):
            fh.write(line + "\n")


def read_matches(path) -> Iterator[Match]:
    with open_text(path) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            yield parse_match(line)


def write_csv(path, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    with open_text(path, "wt") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else v for v in row])


def _default(o):
    if isinstance(o, date):
        return o.isoformat()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n",
                          encoding="utf-8")


def cdf_rows(label: str, points) -> list[tuple]:
    return [(label, v.isoformat() if isinstance(v, date) else v, p) for v, p in points]
