"""Ten hand-built combosquatting domains with hand-computed expectations.

Every expected value below was worked out by hand from the table.
"""

from datetime import date

from squatscope.classify import Match, SquatKind, SquatVerdict
from squatscope.records import DnsObservation, LabelEvent, LabelSource

D = lambda m, d: date(2017, m, d)  # noqa: E731

# domain: list of (date, ips); every record carries 10 lookups
OBS = {
    "paypal-a.com": [(D(1, 1), ["10.1.2.3"]), (D(1, 11), ["10.1.2.3"])],
    "paypal-b.com": [(D(1, 1), ["10.1.9.9"])],
    "paypal-c.com": [(D(1, 2), ["10.1.2.4"]), (D(1, 5), ["10.1.2.4"])],
    "paypal-d.com": [(D(1, 3), ["10.200.0.1"])],
    "paypal-e.com": [(D(1, 1), ["10.1.2.5"]), (D(2, 1), ["192.168.1.1"])],
    "paypal-f.com": [(D(1, 5), ["10.1.2.6"]), (D(1, 6), ["10.1.2.6"])],
    "paypal-g.com": [(D(1, 10), ["172.16.0.1"]), (D(1, 20), [])],
    "paypal-h.com": [(D(1, 2), ["192.168.5.5"]), (D(1, 4), ["192.168.5.5"])],
    "paypal-i.com": [(D(1, 1), ["10.1.2.7"]), (D(1, 31), ["10.1.2.8"])],
    "paypal-j.com": [(D(1, 7), ["10.1.3.3"]), (D(1, 8), ["10.1.3.3"])],
}

ROUTES = [
    ("10.0.0.0/8", "AS1", "US"),
    ("10.1.0.0/16", "AS2", "US"),
    ("10.1.2.0/24", "AS3", "DE"),
    ("192.168.0.0/16", "AS4", "NL"),
]

LABELS = [
    LabelEvent("paypal-a.com", LabelSource.MAL, D(1, 4)),
    LabelEvent("paypal-c.com", LabelSource.MAL, D(1, 2)),
    LabelEvent("www.paypal-e.com", LabelSource.MAL, date(2016, 12, 31)),
    LabelEvent("paypal-a.com", LabelSource.PBL, D(1, 21)),
    LabelEvent("paypal-a.com", LabelSource.PBL, D(1, 25)),
    LabelEvent("paypal-g.com", LabelSource.PBL, D(1, 12)),
    LabelEvent("never-seen.com", LabelSource.PBL, D(1, 12)),
]

RANKS = {"paypal-a.com": 1, "paypal-b.com": 20000, "paypal-c.com": 20001,
         "paypal-d.com": 999999, "paypal-e.com": 1_000_000, "paypal-f.com": 40000}
ABUSIVE = {"paypal-a.com", "paypal-c.com", "paypal-e.com"}

# lifetimes: a 10, b 0, c 3, d 0, e 31, f 1, g 10, h 2, i 30, j 1
LIFETIME_CDF = [(0, 0.2), (1, 0.4), (2, 0.5), (3, 0.6), (10, 0.8), (30, 0.9), (31, 1.0)]
LAGS = {"MAL": {"paypal-a.com": 3, "paypal-c.com": 0, "paypal-e.com": -1},
        "PBL": {"paypal-a.com": 20, "paypal-g.com": 2}}
LAG_CDF = {"MAL": [(-1, 1 / 3), (0, 2 / 3), (3, 1.0)], "PBL": [(2, 0.5), (20, 1.0)]}
# bins are 1-based; list index = bin - 1
HIST_ABUSIVE = {0: 1, 1: 1, 49: 1}
HIST_OTHER = {0: 1, 1: 1, 49: 1}
# g has no routable address, so nine domains form the denominator
TOP_SHARE = {"cidr": 5 / 9, "asn": 5 / 9, "cc": 5 / 9}
TOP_KEY = {"cidr": ("10.1.2.0/24", 5), "asn": ("AS3", 5), "cc": ("DE", 5)}
IPS_PER_DOMAIN_CDF = [(1, 7 / 9), (2, 1.0)]
KEYS_PER_DOMAIN_CDF = [(1, 8 / 9), (2, 1.0)]
NO_ROUTE = 1
# volume on 1 Jan: a, b, e, i
VOLUME_JAN1 = 40
DAILY_ACTIVE_JAN1 = 4


def matches():
    out = []
    for domain, rows in OBS.items():
        e2ld = domain.split(".")[0]
        for day, ips in rows:
            rr = "A" if ips else "CNAME"
            obs = DnsObservation(day, domain, rr, frozenset(ips), 10)
            out.append(Match(obs, domain, e2ld, SquatVerdict("paypal", SquatKind.COMBO, (0, 6))))
    return out


def planted_matches(n=100, concentrated=58):
    """``concentrated`` of ``n`` domains resolve into 203.0.113.0/24."""
    out, routes = [], [("203.0.113.0/24", "AS64500", "US")]
    for i in range(n):
        if i < concentrated:
            ip = f"203.0.113.{i + 1}"
        else:
            ip = f"198.{i}.0.1"
            routes.append((f"198.{i}.0.0/24", f"AS{65000 + i}", "NL"))
        obs = DnsObservation(D(1, 1), f"bad{i}.com", "A", frozenset({ip}), 1)
        out.append(Match(obs, f"bad{i}.com", f"bad{i}", SquatVerdict("bad", SquatKind.COMBO, (0, 3))))
    return out, routes
