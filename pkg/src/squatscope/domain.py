"""Domain name parsing and public-suffix decomposition.

Every squatting check operates on the effective second-level domain (e2LD):
the label immediately left of the public suffix, so ``login.youtube.co.uk``
yields ``youtube``.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from squatscope._io import open_text, data_path

MAX_LABEL = 63
MAX_NAME = 253

_NAME_RE = re.compile(r"[a-z0-9_-]{1,63}(?:\.[a-z0-9_-]{1,63})*")
_LABEL_RE = re.compile(r"[a-z0-9_-]{1,63}")


class DomainError(ValueError):
    pass


class EmptyInput(DomainError):
    pass


class InvalidLabel(DomainError):
    pass


class NoRegistrableDomain(DomainError):
    pass


@dataclass(frozen=True)
class SuffixList:
    """Public suffix rules, split by rule kind.

    ``exact`` holds plain rules, ``wildcard`` holds the parent of ``*.``
    rules and ``exception`` the body of ``!`` rules.
    """

    exact: frozenset[str]
    wildcard: frozenset[str]
    exception: frozenset[str]
    version: str = ""

    @classmethod
    def from_rules(cls, rules, version: str = "") -> SuffixList:
        exact, wildcard, exception = set(), set(), set()
        for rule in rules:
            rule = rule.strip().lower().rstrip(".")
            if not rule:
                continue
            if rule.startswith("!"):
                exception.add(rule[1:])
            elif rule.startswith("*."):
                wildcard.add(rule[2:])
            else:
                exact.add(rule)
        return cls(frozenset(exact), frozenset(wildcard), frozenset(exception), version)

    @classmethod
    def from_file(cls, path, include_private: bool = False, version: str | None = None) -> SuffixList:
        """Load a rule file in public suffix list format.

        Lines starting with ``//`` or ``#`` are comments. Rules from the
        private section are skipped unless ``include_private`` is set.
        """
        rules = []
        digest = hashlib.sha1()
        with open_text(path) as fh:
            for line in fh:
                digest.update(line.encode("utf-8"))
                stripped = line.strip()
                if "===BEGIN PRIVATE DOMAINS===" in stripped and not include_private:
                    break
                if not stripped or stripped.startswith(("//", "#")):
                    continue
                rules.append(stripped.split()[0])
        if version is None:
            version = f"{Path(path).name}@{digest.hexdigest()[:12]}"
        return cls.from_rules(rules, version)

    @property
    def rules(self) -> frozenset[str]:
        return (
            self.exact
            | frozenset("*." + w for w in self.wildcard)
            | frozenset("!" + e for e in self.exception)
        )

    def __len__(self) -> int:
        return len(self.exact) + len(self.wildcard) + len(self.exception)


@lru_cache(maxsize=None)
def default_suffixes() -> SuffixList:
    """The bundled public suffix snapshot (ICANN section)."""
    return SuffixList.from_file(data_path("public_suffix_list.dat"))


def _suffix_index(labels: list[str], suffixes: SuffixList) -> int:
    """Index of the first label belonging to the public suffix."""
    n = len(labels)
    if suffixes.exception:
        for i in range(n):
            if ".".join(labels[i:]) in suffixes.exception:
                return i + 1
    exact, wildcard = suffixes.exact, suffixes.wildcard
    for i in range(n):
        if ".".join(labels[i:]) in exact:
            return i
        if i + 1 < n and ".".join(labels[i + 1:]) in wildcard:
            return i
    return n - 1


def suffix_lookup(fqdn: str, suffixes: SuffixList) -> str:
    """Longest applicable public suffix of a normalized name.

    Exception rules beat wildcards; unknown TLDs fall back to the rightmost
    label.
    """
    labels = fqdn.split(".")
    return ".".join(labels[_suffix_index(labels, suffixes):])


@dataclass(frozen=True)
class DomainName:
    raw: str = field(compare=False)
    labels: tuple[str, ...]
    public_suffix: str
    e2ld: str
    fqdn: str

    @property
    def subdomain(self) -> str:
        return ".".join(self.labels[:-1])

    @property
    def registered(self) -> str:
        """The registrable domain, ``e2ld.public_suffix``."""
        return f"{self.e2ld}.{self.public_suffix}"


def normalize(name: str) -> str:
    name = name.strip()
    if name.endswith("."):
        name = name[:-1]
    return name.lower()


def parse_domain(text: str, suffixes: SuffixList | None = None) -> DomainName:
    if suffixes is None:
        suffixes = default_suffixes()
    fqdn = normalize(text)
    if not fqdn:
        raise EmptyInput("empty domain name")
    if len(fqdn) > MAX_NAME or not _NAME_RE.fullmatch(fqdn):
        bad = next(
            (lab for lab in fqdn.split(".") if not _LABEL_RE.fullmatch(lab)), fqdn
        )
        raise InvalidLabel(f"invalid label {bad!r} in {text!r}")
    labels = fqdn.split(".")
    cut = _suffix_index(labels, suffixes)
    if cut == 0:
        raise NoRegistrableDomain(f"{text!r} is a public suffix")
    return DomainName(
        raw=text,
        labels=tuple(labels[:cut]),
        public_suffix=".".join(labels[cut:]),
        e2ld=labels[cut - 1],
        fqdn=fqdn,
    )


def is_valid_label(label: str) -> bool:
    return bool(_LABEL_RE.fullmatch(label))
