"""Record types shared across the pipeline."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import date

CATEGORIES = (
    "Adult Content",
    "Blogging",
    "Computers",
    "Couriers",
    "E-Learning",
    "E-Shop (Auctions)",
    "E-Shop (Online)",
    "E-Shop (Physical)",
    "Energy",
    "File Sharing",
    "Financial",
    "Lifestyle",
    "News",
    "Photography",
    "Politics",
    "Radio & TV",
    "Search Engines",
    "Social Networks",
    "Software & Web",
    "Streaming",
    "Telecom",
    "Travel",
)


class Origin(str, enum.Enum):
    ALEXA_TOP500 = "AlexaTop500"
    MANUAL_POLITICS = "ManualPolitics"
    MANUAL_ENERGY = "ManualEnergy"


class LabelSource(str, enum.Enum):
    PBL = "PBL"
    MAL = "MAL"
    SPA = "SPA"
    APT = "APT"
    ALE = "ALE"


ABUSE_SOURCES = (LabelSource.MAL, LabelSource.PBL, LabelSource.APT, LabelSource.SPA)


@dataclass(frozen=True)
class TrademarkSeed:
    trademark: str
    source_domain: str
    category: str
    alexa_rank: int | None = None
    origin: Origin = Origin.ALEXA_TOP500
    flags: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True, order=True)
class DnsObservation:
    """One dated resolution. ``lookup_count`` is 0 for active DNS."""

    date: date
    qname: str
    rrtype: str = "A"
    rdata_ips: frozenset[str] = frozenset()
    lookup_count: int = 0
    source: str = "pdns"

    def __post_init__(self):
        if self.lookup_count < 0:
            raise ValueError("negative lookup count")
        if self.lookup_count == 0 and self.source == "pdns":
            raise ValueError("passive DNS record without lookup volume")


@dataclass(frozen=True, order=True)
class LabelEvent:
    domain: str
    source: LabelSource
    date: date
    detail: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class CertRecord:
    names: frozenset[str]
    issuer: str
    logged_at: date

    def __post_init__(self):
        if not self.names:
            raise ValueError("certificate without names")
