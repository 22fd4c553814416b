"""Deterministic synthetic corpora for tests and benchmarks.

Nothing here is used by the analysis itself; it only fabricates seed files
and DNS record files with a known mix of exact, typo, combosquatting and
unrelated names.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

from squatscope._io import open_text
from squatscope.records import CATEGORIES
from squatscope.typos import generate_typos

SUFFIXES = ("com", "com", "com", "net", "org", "info", "co.uk", "de", "com.br", "xyz")
SUBDOMAINS = ("www", "mail", "login", "secure", "m", "api", "cdn")
MALFORMED = ("bad..name", "-lead.com", "x" * 70 + ".com", "under score!.net", ".")


@dataclass
class CorpusSpec:
    records: int = 1_000_000
    distinct: int = 100_000
    seeds: int = 500
    start: date = date(2017, 1, 1)
    days: int = 180
    combo_share: float = 0.3
    typo_share: float = 0.05
    exact_share: float = 0.02
    subdomain_share: float = 0.3
    malformed_share: float = 0.001
    rng_seed: int = 1


def _words(rng: random.Random, n: int, lo: int, hi: int) -> list[str]:
    from squatscope.lexical import default_dictionaries

    pool = sorted(w for w in default_dictionaries().lists["scrabble"]
                  if lo <= len(w) <= hi and w.isalpha())
    return rng.sample(pool, n)


def synth_trademarks(n: int, rng_seed: int = 1) -> list[str]:
    """``n`` distinct lowercase words of length 5 to 10."""
    return _words(random.Random(rng_seed), n, 5, 10)


def write_seeds(path, trademarks: list[str], rng_seed: int = 1) -> None:
    rng = random.Random(rng_seed)
    with open_text(path, "wt") as fh:
        fh.write("trademark,domain,category,rank,origin\n")
        for i, t in enumerate(trademarks, 1):
            fh.write(f"{t},{t}.com,{rng.choice(CATEGORIES)},{i},AlexaTop500\n")


def synth_e2lds(spec: CorpusSpec, trademarks: list[str]) -> list[str]:
    rng = random.Random(spec.rng_seed + 1)
    fillers = _words(rng, 4000, 2, 8)
    out: set[str] = set()
    while len(out) < spec.distinct:
        r = rng.random()
        t = rng.choice(trademarks)
        if r < spec.exact_share:
            name = t
        elif r < spec.exact_share + spec.typo_share:
            name = rng.choice(sorted(generate_typos(t).variants))
        elif r < spec.exact_share + spec.typo_share + spec.combo_share:
            w = rng.choice(fillers)
            name = rng.choice((w + t, t + w, f"{t}-{w}", f"{w}-{t}", f"{w}{t}{rng.randint(0, 99)}"))
        else:
            k = rng.randint(1, 3)
            name = "".join(rng.choice(fillers) for _ in range(k))
            if rng.random() < 0.2:
                name += str(rng.randint(0, 999))
        if len(name) <= 63:
            out.add(f"{name}.{rng.choice(SUFFIXES)}")
    return sorted(out)


def write_dns(path, spec: CorpusSpec, e2lds: list[str], source: str = "pdns") -> None:
    """Write ``spec.records`` rows drawn with a heavy-tailed popularity."""
    rng = random.Random(spec.rng_seed + 2)
    weights = [1.0 / (i + 1) ** 0.6 for i in range(len(e2lds))]
    order = e2lds[:]
    rng.shuffle(order)
    picks = rng.choices(order, weights=weights, k=spec.records)
    with open_text(path, "wt") as fh:
        for name in picks:
            if rng.random() < spec.malformed_share:
                name = rng.choice(MALFORMED)
            elif rng.random() < spec.subdomain_share:
                name = f"{rng.choice(SUBDOMAINS)}.{name}"
            day = spec.start + timedelta(days=rng.randrange(spec.days))
            if rng.random() < 0.9:
                rr = "A"
                rdata = ",".join(f"{rng.randint(1, 223)}.{rng.randint(0, 255)}.{rng.randint(0, 255)}."
                                 f"{rng.randint(1, 254)}" for _ in range(rng.randint(1, 2)))
            else:
                rr, rdata = "CNAME", "edge.example.net"
            if source == "pdns":
                fh.write(f"{day}\t{name}\t{rr}\t{rdata}\t{rng.randint(1, 1000)}\n")
            else:
                fh.write(f"{day}\t{name}\t{rr}\t{rdata}\n")


def build_corpus(directory, spec: CorpusSpec | None = None) -> dict[str, Path]:
    """Write seeds_250.csv, seeds_500.csv and pdns.tsv under ``directory``."""
    spec = spec or CorpusSpec()
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    tms = synth_trademarks(spec.seeds, spec.rng_seed)
    half = tms[: spec.seeds // 2]
    paths = {"seeds_half": d / f"seeds_{len(half)}.csv", "seeds_full": d / f"seeds_{len(tms)}.csv",
             "pdns": d / "pdns.tsv"}
    write_seeds(paths["seeds_half"], half, spec.rng_seed)
    write_seeds(paths["seeds_full"], tms, spec.rng_seed)
    write_dns(paths["pdns"], spec, synth_e2lds(spec, tms))
    return paths
