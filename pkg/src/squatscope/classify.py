"""Combosquatting verdicts and single-pass corpus scanning.

A candidate e2LD is combosquatting for a trademark when it strictly
contains the trademark without being one of its single-edit typo variants. Typo exclusion takes precedence over containment, so
``examplee`` is typosquatting even though it contains ``example``.
"""

from __future__ import annotations

import enum
import json
from array import array
from collections import Counter, deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from squatscope import kernels
from squatscope.domain import DomainError, SuffixList, default_suffixes, parse_domain
from squatscope.records import DnsObservation
from squatscope.typos import Keyboard, is_typo, qwerty, typo_index


class SquatKind(str, enum.Enum):
    EXACT = "Exact"
    TYPO = "Typosquatting"
    COMBO = "Combosquatting"
    UNRELATED = "Unrelated"


@dataclass(frozen=True, order=True)
class SquatVerdict:
    trademark: str
    kind: SquatKind
    match_span: tuple[int, int] | None = None


def classify(candidate: str, trademark: str, keyboard: Keyboard | None = None) -> SquatVerdict:
    if candidate == trademark:
        return SquatVerdict(trademark, SquatKind.EXACT, (0, len(candidate)))
    if is_typo(candidate, trademark, keyboard):
        return SquatVerdict(trademark, SquatKind.TYPO)
    at = candidate.find(trademark)
    if at >= 0:
        return SquatVerdict(trademark, SquatKind.COMBO, (at, at + len(trademark)))
    return SquatVerdict(trademark, SquatKind.UNRELATED)


class TrademarkAutomaton:
    """Aho-Corasick automaton over a set of trademark strings.

    The goto/failure structure is compiled into a dense DFA over the
    characters that occur in any pattern; every other character maps to
    class 0, which always returns to the root.
    """

    def __init__(self, patterns: Iterable[str]):
        self.patterns: tuple[str, ...] = tuple(sorted({p for p in patterns if p}))
        self._typo_cache: dict[Keyboard, dict[str, tuple[str, ...]]] = {}
        self._build()

    def _build(self) -> None:
        alphabet = sorted({c for p in self.patterns for c in p})
        amap = bytearray(128)
        for i, c in enumerate(alphabet, 1):
            if ord(c) >= 128:
                raise ValueError(f"non-ASCII pattern character {c!r}")
            amap[ord(c)] = i
        nc = len(alphabet) + 1

        goto: list[dict[int, int]] = [{}]
        own: list[list[int]] = [[]]
        for pid, pat in enumerate(self.patterns):
            s = 0
            for c in pat:
                cls = amap[ord(c)]
                nxt = goto[s].get(cls)
                if nxt is None:
                    nxt = len(goto)
                    goto[s][cls] = nxt
                    goto.append({})
                    own.append([])
                s = nxt
            own[s].append(pid)

        n_states = len(goto)
        fail = [0] * n_states
        delta = array("i", bytes(4 * n_states * nc))
        outputs: list[list[int]] = [[] for _ in range(n_states)]
        order = deque()
        for cls in range(nc):
            t = goto[0].get(cls)
            if t is not None:
                delta[cls] = t
                order.append(t)
        while order:
            s = order.popleft()
            outputs[s] = own[s] + outputs[fail[s]]
            base = s * nc
            fbase = fail[s] * nc
            for cls in range(nc):
                t = goto[s].get(cls)
                if t is None:
                    delta[base + cls] = delta[fbase + cls]
                else:
                    delta[base + cls] = t
                    fail[t] = delta[fbase + cls]
                    order.append(t)

        out_start = array("i", [0])
        out_ids = array("i")
        for s in range(n_states):
            out_ids.extend(sorted(outputs[s]))
            out_start.append(len(out_ids))

        self._amap = bytes(amap)
        self._delta = delta
        self._nc = nc
        self._out_start = out_start
        self._out_ids = out_ids
        self._plen = array("i", [len(p) for p in self.patterns])
        self.n_states = n_states

    def __len__(self) -> int:
        return len(self.patterns)

    def find_all(self, text: str) -> list[tuple[str, int]]:
        """Every ``(pattern, start)`` occurrence in ``text``."""
        hits = kernels.ac_scan(
            text, self._amap, self._delta, self._nc, self._out_start, self._out_ids, self._plen
        )
        pats = self.patterns
        return [(pats[pid], start) for pid, start in hits]

    def first_offsets(self, text: str) -> dict[str, int]:
        found: dict[str, int] = {}
        for pid, start in kernels.ac_scan(
            text, self._amap, self._delta, self._nc, self._out_start, self._out_ids, self._plen
        ):
            pat = self.patterns[pid]
            if pat not in found or start < found[pat]:
                found[pat] = start
        return found

    def typo_index(self, keyboard: Keyboard) -> dict[str, tuple[str, ...]]:
        idx = self._typo_cache.get(keyboard)
        if idx is None:
            idx = self._typo_cache[keyboard] = typo_index(self.patterns, keyboard)
        return idx


def classify_multi(candidate: str, automaton: TrademarkAutomaton, keyboard: Keyboard | None = None,
                   include_typos: bool = True) -> list[SquatVerdict]:
    """Verdicts for every trademark the candidate relates to, sorted by trademark.

    With ``include_typos`` false, typo variants that do not contain their
    trademark are not looked up; contained trademarks are still checked
    for typo exclusion.
    """
    if keyboard is None:
        keyboard = qwerty()
    found = automaton.first_offsets(candidate)
    typo_of = automaton.typo_index(keyboard).get(candidate, ()) if include_typos else ()
    verdicts = []
    for t in sorted(found.keys() | set(typo_of)):
        at = found.get(t)
        if candidate == t:
            verdicts.append(SquatVerdict(t, SquatKind.EXACT, (0, len(t))))
        elif t in typo_of or kernels.is_typo(candidate, t, keyboard.matrix):
            verdicts.append(SquatVerdict(t, SquatKind.TYPO))
        else:
            verdicts.append(SquatVerdict(t, SquatKind.COMBO, (at, at + len(t))))
    return verdicts


@dataclass
class ScanStats:
    records_in: int = 0
    records_skipped: int = 0
    matches: int = 0
    e2lds: set[str] = field(default_factory=set)
    per_trademark: Counter = field(default_factory=Counter)

    def merge(self, other: ScanStats) -> ScanStats:
        return ScanStats(
            self.records_in + other.records_in,
            self.records_skipped + other.records_skipped,
            self.matches + other.matches,
            self.e2lds | other.e2lds,
            self.per_trademark + other.per_trademark,
        )

    @property
    def skip_rate(self) -> float:
        return self.records_skipped / self.records_in if self.records_in else 0.0

    def to_dict(self) -> dict:
        return {
            "records_in": self.records_in,
            "records_skipped": self.records_skipped,
            "matches": self.matches,
            "distinct_e2lds": len(self.e2lds),
            "per_trademark_counts": dict(sorted(self.per_trademark.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class Match(NamedTuple):
    """A scanned record together with one of its verdicts."""

    observation: DnsObservation
    domain: str
    e2ld: str
    verdict: SquatVerdict

    @property
    def trademark(self) -> str:
        return self.verdict.trademark

    @property
    def kind(self) -> SquatKind:
        return self.verdict.kind


class Scanner:
    """The trademark automaton plus the keyboard and suffix settings used when scanning."""

    def __init__(self, trademarks: Iterable[str], keyboard: Keyboard | None = None,
                 suffixes: SuffixList | None = None, subdomains: bool = False,
                 cache_size: int = 1 << 16):
        self.keyboard = keyboard or qwerty()
        self.suffixes = suffixes or default_suffixes()
        self.automaton = TrademarkAutomaton(trademarks)
        self.subdomains = subdomains
        self._parse = lru_cache(maxsize=cache_size)(self._parse_uncached)
        self._verdicts = lru_cache(maxsize=cache_size)(self._verdicts_uncached)

    def _parse_uncached(self, qname: str):
        dn = parse_domain(qname, self.suffixes)
        return dn.e2ld, dn.labels, dn.registered

    def _verdicts_uncached(self, e2ld: str, include_typos: bool) -> tuple[SquatVerdict, ...]:
        return tuple(classify_multi(e2ld, self.automaton, self.keyboard, include_typos))

    def verdicts(self, qname: str, include_typos: bool = False) -> tuple[str, str, list[SquatVerdict]]:
        """Parse ``qname`` and classify its e2LD (and subdomain labels when enabled).

        Returns ``(registered_domain, e2ld, verdicts)``; raises ``DomainError``
        for unparsable names.
        """
        e2ld, labels, registered = self._parse(qname)
        verdicts = list(self._verdicts(e2ld, include_typos))
        if self.subdomains and len(labels) > 1:
            seen = {v.trademark for v in verdicts}
            for label in labels[:-1]:
                for v in self._verdicts(label, False):
                    if v.kind is SquatKind.COMBO and v.trademark not in seen:
                        seen.add(v.trademark)
                        verdicts.append(v)
            verdicts.sort()
        return registered, e2ld, verdicts

    def classify_domain(self, qname: str) -> list[SquatVerdict]:
        return self.verdicts(qname, include_typos=True)[2]

    def scan(self, records: Iterable[DnsObservation], stats: ScanStats | None = None,
             kinds=(SquatKind.COMBO,)) -> Iterator[Match]:
        """Yield a ``Match`` per (record, verdict) whose kind is in ``kinds``.

        Unparsable names are tallied in ``stats.records_skipped``.
        """
        if stats is None:
            stats = ScanStats()
        kinds = frozenset(kinds)
        want_typos = SquatKind.TYPO in kinds
        for obs in records:
            stats.records_in += 1
            try:
                domain, e2ld, verdicts = self.verdicts(obs.qname, want_typos)
            except DomainError:
                stats.records_skipped += 1
                continue
            for v in verdicts:
                if v.kind in kinds:
                    stats.matches += 1
                    stats.e2lds.add(domain)
                    stats.per_trademark[v.trademark] += 1
                    yield Match(obs, domain, e2ld, v)


def scan_stream(records: Iterable[DnsObservation], automaton: TrademarkAutomaton | Scanner,
                keyboard: Keyboard | None = None, stats: ScanStats | None = None,
                suffixes: SuffixList | None = None, subdomains: bool = False) -> Iterator[Match]:
    """Emit every combosquatting (record, verdict) pair from ``records``."""
    if isinstance(automaton, Scanner):
        scanner = automaton
    else:
        scanner = Scanner((), keyboard, suffixes, subdomains)
        scanner.automaton = automaton
    return scanner.scan(records, stats)
