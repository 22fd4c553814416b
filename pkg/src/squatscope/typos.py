"""The five single-edit typosquatting models.

Each model applies exactly one edit to a trademark e2LD:

* ``MissingDot``: the ``www`` prefix glued on (``wwwexample``).
* ``CharOmission``: one character deleted.
* ``CharPermutation``: two neighbouring characters swapped.
* ``CharReplacement``: one character replaced by a keyboard neighbour.
* ``CharInsertion``: a copy of a character, or one of its keyboard
  neighbours, inserted right before or after it (``examplee``).

The hyphen has no keyboard neighbours, so it only takes part in omission,
permutation and duplication.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from squatscope import kernels
from squatscope._io import data_path, open_text


class TypoModel(str, enum.Enum):
    MISSING_DOT = "MissingDot"
    CHAR_OMISSION = "CharOmission"
    CHAR_PERMUTATION = "CharPermutation"
    CHAR_REPLACEMENT = "CharReplacement"
    CHAR_INSERTION = "CharInsertion"


class KeyboardError(ValueError):
    pass


class TrademarkTooShort(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Keyboard:
    """Symmetric key adjacency map."""

    neighbors: Mapping[str, frozenset[str]]
    name: str = "custom"
    matrix: bytes = field(init=False, repr=False)

    def __post_init__(self):
        for a, adj in self.neighbors.items():
            for b in adj:
                if a not in self.neighbors.get(b, ()):
                    raise KeyboardError(f"adjacency not symmetric: {a!r} -> {b!r}")
                if ord(a) >= 128 or ord(b) >= 128:
                    raise KeyboardError(f"non-ASCII key in {a!r}: {b!r}")
        m = bytearray(128 * 128)
        for a, adj in self.neighbors.items():
            for b in adj:
                m[ord(a) * 128 + ord(b)] = 1
        object.__setattr__(self, "matrix", bytes(m))

    def adjacent(self, ch: str) -> frozenset[str]:
        return self.neighbors.get(ch, frozenset())

    def __eq__(self, other):
        return isinstance(other, Keyboard) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Iterable[str]], name: str = "custom",
                     symmetrize: bool = False) -> Keyboard:
        adj: dict[str, set[str]] = {}
        for a, bs in mapping.items():
            for b in bs:
                if b == a:
                    continue
                adj.setdefault(a, set()).add(b)
                if symmetrize:
                    adj.setdefault(b, set()).add(a)
        return cls({k: frozenset(v) for k, v in adj.items()}, name)

    @classmethod
    def from_file(cls, path, name: str | None = None) -> Keyboard:
        """Read ``char: neighbors`` lines; ``#`` starts a comment."""
        mapping: dict[str, str] = {}
        with open_text(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, rest = line.partition(":")
                key = key.strip()
                if not sep or len(key) != 1:
                    raise KeyboardError(f"{path}:{lineno}: expected 'char: neighbors'")
                mapping[key] = "".join(rest.split())
        return cls.from_mapping(mapping, name or str(path))


@lru_cache(maxsize=None)
def qwerty() -> Keyboard:
    return Keyboard.from_file(data_path("qwerty.txt"), name="qwerty")


@dataclass(frozen=True)
class TypoSet:
    trademark_e2ld: str
    variants: frozenset[str]
    by_model: Mapping[TypoModel, frozenset[str]]

    @property
    def per_model_counts(self) -> dict[str, int]:
        return {m.value: len(v) for m, v in self.by_model.items()}

    def __len__(self) -> int:
        return len(self.variants)

    def __contains__(self, item) -> bool:
        return item in self.variants


def _missing_dot(t: str, kb: Keyboard) -> set[str]:
    return {"www" + t}


def _omission(t: str, kb: Keyboard) -> set[str]:
    return {t[:i] + t[i + 1:] for i in range(len(t))}


def _permutation(t: str, kb: Keyboard) -> set[str]:
    return {
        t[:i] + t[i + 1] + t[i] + t[i + 2:]
        for i in range(len(t) - 1)
        if t[i] != t[i + 1]
    }


def _replacement(t: str, kb: Keyboard) -> set[str]:
    return {t[:i] + c + t[i + 1:] for i in range(len(t)) for c in kb.adjacent(t[i])}


def _insertion(t: str, kb: Keyboard) -> set[str]:
    out = set()
    for i, orig in enumerate(t):
        for c in kb.adjacent(orig) | {orig}:
            out.add(t[:i] + c + t[i:])
            out.add(t[:i + 1] + c + t[i + 1:])
    return out


_GENERATORS = {
    TypoModel.MISSING_DOT: _missing_dot,
    TypoModel.CHAR_OMISSION: _omission,
    TypoModel.CHAR_PERMUTATION: _permutation,
    TypoModel.CHAR_REPLACEMENT: _replacement,
    TypoModel.CHAR_INSERTION: _insertion,
}


def generate_typos(trademark: str, keyboard: Keyboard | None = None) -> TypoSet:
    if keyboard is None:
        keyboard = qwerty()
    if len(trademark) < 2:
        raise TrademarkTooShort(f"trademark {trademark!r} shorter than 2 characters")
    by_model = {}
    for model, gen in _GENERATORS.items():
        variants = gen(trademark, keyboard)
        variants.discard(trademark)
        by_model[model] = frozenset(variants)
    union = frozenset().union(*by_model.values())
    return TypoSet(trademark, union, by_model)


def is_typo(candidate: str, trademark: str, keyboard: Keyboard | None = None) -> bool:
    """Whether ``candidate`` is one model edit away from ``trademark``."""
    if keyboard is None:
        keyboard = qwerty()
    return kernels.is_typo(candidate, trademark, keyboard.matrix)


def typo_upper_bound(seeds, keyboard: Keyboard | None = None) -> tuple[dict[str, int], int]:
    """Per-trademark variant counts and the size of their union.

    ``seeds`` may hold trademark strings or objects with a ``trademark``
    attribute.
    """
    names = [getattr(s, "trademark", s) for s in seeds]
    if not names:
        raise ValueError("no seeds given")
    per: dict[str, int] = {}
    union: set[str] = set()
    for name in names:
        ts = generate_typos(name, keyboard)
        per[name] = len(ts)
        union |= ts.variants
    return per, len(union)


def typo_index(trademarks: Iterable[str], keyboard: Keyboard | None = None) -> dict[str, tuple[str, ...]]:
    """Map every typo variant to the trademarks that generate it."""
    index: dict[str, list[str]] = {}
    for t in sorted(set(trademarks)):
        if len(t) < 2:
            continue
        for v in generate_typos(t, keyboard).variants:
            index.setdefault(v, []).append(t)
    return {k: tuple(v) for k, v in index.items()}
