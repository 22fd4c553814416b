"""Word segmentation and lexical statistics of combosquatting names.

Residues (the e2LD with the trademark cut out) are split on hyphens and
digit runs, and each alphabetic run is segmented with a unigram model:
the split maximising the sum of token log-probabilities wins. Tokens found
in any dictionary count as words, the rest as segments.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from squatscope._io import data_path, open_text
from squatscope._stats import ecdf

_RUNS = re.compile(r"[a-z]+|[0-9]+|[^a-z0-9]+")


class NotContained(ValueError):
    pass


@dataclass(frozen=True)
class UnigramModel:
    counts: Mapping[str, int]
    total: int

    def __post_init__(self):
        if self.total <= 0:
            raise ValueError("unigram total must be positive")

    @classmethod
    def from_counts(cls, counts: Mapping[str, int], total: int | None = None) -> UnigramModel:
        counts = {k: int(v) for k, v in counts.items() if int(v) > 0}
        return cls(counts, total if total is not None else sum(counts.values()))

    @classmethod
    def from_file(cls, path) -> UnigramModel:
        """Read ``token<TAB>count`` lines."""
        counts: dict[str, int] = {}
        with open_text(path) as fh:
            for line in fh:
                tok, _, n = line.rstrip("\n").partition("\t")
                if tok and n:
                    counts[tok.lower()] = counts.get(tok.lower(), 0) + int(n)
        return cls.from_counts(counts)

    def probability(self, token: str) -> float:
        n = self.counts.get(token)
        if n:
            return n / self.total
        return 10.0 / (self.total * 10.0 ** len(token))

    def logp(self, token: str) -> float:
        n = self.counts.get(token)
        if n:
            return math.log10(n / self.total)
        # log10(10 / (total * 10**len)) without underflow for long tokens
        return 1.0 - math.log10(self.total) - len(token)


@lru_cache(maxsize=None)
def default_model() -> UnigramModel:
    return UnigramModel.from_file(data_path("unigrams.tsv.gz"))


@dataclass(frozen=True)
class Tokenization:
    tokens: tuple[str, ...]
    score: float
    word_flags: tuple[bool, ...] = ()

    @property
    def text(self) -> str:
        return "".join(self.tokens)


def segment(text: str, model: UnigramModel | None = None) -> Tokenization:
    """Most probable split of ``text`` into tokens.

    Ties on score go to the split with fewer tokens, then to the
    lexicographically smaller token list.
    """
    if model is None:
        model = default_model()
    n = len(text)
    if n == 0:
        return Tokenization((), 0.0)
    logp = model.logp
    # best[i] = (score, ntokens, tokens) for text[:i]
    best: list[tuple[float, int, tuple[str, ...]] | None] = [None] * (n + 1)
    best[0] = (0.0, 0, ())
    for i in range(1, n + 1):
        choice = None
        for j in range(i):
            score, count, toks = best[j]
            word = text[j:i]
            cand = (score + logp(word), count + 1, toks + (word,))
            if choice is None or _better(cand, choice):
                choice = cand
        best[i] = choice
    score, _, tokens = best[n]
    return Tokenization(tokens, score)


def _better(a, b) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]


def tokenize_label(label: str, model: UnigramModel | None = None) -> Tokenization:
    """Segment a DNS label: hyphens separate, digit runs stand alone."""
    if model is None:
        model = default_model()
    tokens: list[str] = []
    score = 0.0
    for run in _RUNS.findall(label):
        if run[0].isalpha():
            part = segment(run, model)
            tokens.extend(part.tokens)
            score += part.score
        elif run[0].isdigit():
            tokens.append(run)
            score += model.logp(run)
    return Tokenization(tuple(tokens), score)


@dataclass(frozen=True)
class DictionarySet:
    lists: Mapping[str, frozenset[str]]

    @classmethod
    def from_words(cls, **lists: Iterable[str]) -> DictionarySet:
        return cls({name: frozenset(w.strip().lower() for w in words if w.strip())
                    for name, words in lists.items()})

    @classmethod
    def from_files(cls, paths: Mapping[str, object]) -> DictionarySet:
        lists = {}
        for name, path in paths.items():
            with open_text(path) as fh:
                lists[name] = frozenset(line.strip().lower() for line in fh if line.strip())
        return cls(lists)

    def is_word(self, token: str) -> bool:
        token = token.lower()
        return any(token in words for words in self.lists.values())

    def __contains__(self, token: str) -> bool:
        return self.is_word(token)

    def with_word(self, name: str, word: str) -> DictionarySet:
        lists = dict(self.lists)
        lists[name] = lists.get(name, frozenset()) | {word.lower()}
        return DictionarySet(lists)


DEFAULT_DICTIONARIES = {
    "english": "english.txt.gz",
    "profanity": "profanity.txt",
    "scrabble": "scrabble.txt.gz",
    "slang": "slang.txt",
}


@lru_cache(maxsize=None)
def default_dictionaries() -> DictionarySet:
    return DictionarySet.from_files({k: data_path(v) for k, v in DEFAULT_DICTIONARIES.items()})


@lru_cache(maxsize=None)
def english_words() -> frozenset[str]:
    return default_dictionaries().lists["english"]


def classify_tokens(tokens, dicts: DictionarySet) -> tuple[int, int]:
    """``(words, segments)`` for a tokenization or a token sequence."""
    if isinstance(tokens, Tokenization):
        tokens = tokens.tokens
    words = sum(1 for t in tokens if dicts.is_word(t))
    return words, len(tokens) - words


def residual_length(candidate: str, trademark: str) -> int:
    if trademark not in candidate:
        raise NotContained(f"{trademark!r} not in {candidate!r}")
    return len(candidate) - len(trademark)


def residue(candidate: str, trademark: str) -> tuple[str, str]:
    """Text left and right of the first occurrence of ``trademark``."""
    at = candidate.find(trademark)
    if at < 0:
        raise NotContained(f"{trademark!r} not in {candidate!r}")
    return candidate[:at], candidate[at + len(trademark):]


@dataclass
class LexicalStats:
    length_counts: Counter = field(default_factory=Counter)
    residual_counts: Counter = field(default_factory=Counter)
    token_counts: Counter = field(default_factory=Counter)
    word_counts: Counter = field(default_factory=Counter)
    by_token_count: dict = field(default_factory=lambda: defaultdict(lambda: [0, 0]))
    words_overall: Counter = field(default_factory=Counter)
    words_by_category: dict = field(default_factory=lambda: defaultdict(Counter))
    domains: int = 0

    def merge(self, other: LexicalStats) -> LexicalStats:
        out = LexicalStats()
        for a in (self, other):
            out.length_counts += a.length_counts
            out.residual_counts += a.residual_counts
            out.token_counts += a.token_counts
            out.word_counts += a.word_counts
            out.words_overall += a.words_overall
            for k, (w, s) in a.by_token_count.items():
                out.by_token_count[k][0] += w
                out.by_token_count[k][1] += s
            for cat, c in a.words_by_category.items():
                out.words_by_category[cat] += c
            out.domains += a.domains
        return out

    def radial(self) -> list[dict]:
        rows = []
        for n in sorted(self.by_token_count):
            w, s = self.by_token_count[n]
            total = w + s
            rows.append({
                "tokens": n,
                "domains": self.token_counts[n],
                "words": w,
                "segments": s,
                "words_pct": 100.0 * w / total if total else 0.0,
                "segments_pct": 100.0 * s / total if total else 0.0,
            })
        return rows

    def top_words(self, k: int = 10, category: str | None = None) -> list[tuple[str, int]]:
        counter = self.words_overall if category is None else self.words_by_category.get(category, Counter())
        return sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))[:k]

    def to_dict(self, k: int = 10) -> dict:
        return {
            "domains": self.domains,
            "length_cdf": ecdf(self.length_counts),
            "residual_length_cdf": ecdf(self.residual_counts),
            "token_count_cdf": ecdf(self.token_counts),
            "word_count_cdf": ecdf(self.word_counts),
            "words_vs_segments": self.radial(),
            "top_words": self.top_words(k),
            "top_words_by_category": {c: self.top_words(k, c) for c in sorted(self.words_by_category)},
        }


def lexical_report(matches: Iterable[tuple[str, str, str]], model: UnigramModel | None = None,
                   dicts: DictionarySet | None = None) -> LexicalStats:
    """Lexical statistics over distinct ``(e2ld, trademark, category)`` triples.

    The trademark is cut out first; only the residue is segmented.
    """
    model = model or default_model()
    dicts = dicts or default_dictionaries()
    tokenize = lru_cache(maxsize=1 << 16)(lambda s: tokenize_label(s, model).tokens)
    stats = LexicalStats()
    for e2ld, trademark, category in sorted(set(matches)):
        left, right = residue(e2ld, trademark)
        tokens = tokenize(left) + tokenize(right)
        flags = [dicts.is_word(t) for t in tokens]
        words = sum(flags)
        stats.domains += 1
        stats.length_counts[len(e2ld)] += 1
        stats.residual_counts[len(e2ld) - len(trademark)] += 1
        stats.token_counts[len(tokens)] += 1
        stats.word_counts[words] += 1
        slot = stats.by_token_count[len(tokens)]
        slot[0] += words
        slot[1] += len(tokens) - words
        for tok, is_word in zip(tokens, flags):
            if is_word:
                stats.words_overall[tok] += 1
                stats.words_by_category[category][tok] += 1
    return stats
