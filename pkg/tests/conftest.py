import json
from pathlib import Path

import numpy as np
import pytest

from scholimetric import Corpus, Institution, JournalRecord, Publication

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "scholimetric" / "fixtures"
DEMO = FIXTURES / "demo"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def demo_dir() -> Path:
    return DEMO


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def demo_corpus():
    from scholimetric import ingest
    return ingest(DEMO / "publications.jsonl", DEMO / "citations.jsonl",
                  DEMO / "journals.csv", DEMO / "institutions.csv")


def make_corpus(pubs, edges=(), journals=(), institutions=()):
    """Compact corpus builder: pubs as (id, year, issn, insts, keywords) tuples."""
    records = []
    for spec in pubs:
        pid, year, issn = spec[0], spec[1], spec[2] if len(spec) > 2 else None
        insts = frozenset(spec[3]) if len(spec) > 3 else frozenset()
        kws = frozenset(spec[4]) if len(spec) > 4 else frozenset()
        records.append(Publication(pid, year, issn, insts, kws))
    return Corpus.from_records(records, edges, journals, institutions)


@pytest.fixture
def forest_journals():
    return [
        JournalRecord("10000001", "Forest Journal", ("0705",)),
        JournalRecord("10000002", "Forest and Climate", ("0401", "0705")),
        JournalRecord("10000003", "Agronomy Letters", ("0701",)),
        JournalRecord("10000004", "Omni Science", ("MD",)),
        JournalRecord("10000005", "Microbial World", ("0605",)),
    ]


@pytest.fixture
def two_institutions():
    return [Institution("A", "Alpha University", "AU", 25),
            Institution("B", "Beta Institute", "DE", 140)]


def random_corpus(rng: np.random.Generator, max_pubs=200, max_edges=2000,
                  with_institutions=True):
    """Random small corpus for oracle-equivalence sweeps."""
    n = int(rng.integers(1, max_pubs + 1))
    ids = [f"R{i:04d}" for i in range(n)]
    years = rng.integers(2000, 2013, size=n)
    inst_pool = ["IA", "IB", "IC", "ID", "IE", "IF"]
    pubs = []
    for i in range(n):
        insts = frozenset()
        if with_institutions and rng.random() < 0.7:
            k = int(rng.integers(1, 4))
            insts = frozenset(inst_pool[j] for j in rng.choice(6, size=k, replace=False))
        pubs.append(Publication(ids[i], int(years[i]), None, insts))
    m = int(rng.integers(0, max_edges + 1))
    edges = set()
    if n > 1:
        citing = rng.integers(0, n, size=m)
        cited = rng.integers(0, n, size=m)
        for c, d in zip(citing, cited):
            if c != d:
                edges.add((ids[c], ids[d]))
    institutions = [Institution(i, i) for i in inst_pool] if with_institutions else []
    return Corpus.from_records(pubs, edges, institutions=institutions)


def write_corpus_files(tmp_path: Path, pub_rows, cite_rows, journal_rows=None,
                       inst_rows=None):
    """Write raw source files; rows are dicts (pubs/cites) or CSV line lists."""
    pubs = tmp_path / "pubs.jsonl"
    pubs.write_text("\n".join(json.dumps(r) for r in pub_rows) + "\n", encoding="utf-8")
    cites = tmp_path / "cites.jsonl"
    cites.write_text("\n".join(json.dumps(r) for r in cite_rows) + ("\n" if cite_rows else ""),
                     encoding="utf-8")
    journals = tmp_path / "journals.csv"
    journal_rows = journal_rows if journal_rows is not None else ["10000001,Forest Journal,0705"]
    journals.write_text("issn,name,for_codes\n" + "\n".join(journal_rows) + "\n",
                        encoding="utf-8")
    insts = tmp_path / "institutions.csv"
    inst_rows = inst_rows if inst_rows is not None else ["A,Alpha University,AU,25"]
    insts.write_text("id,name,country,staff_count\n" + "\n".join(inst_rows) + "\n",
                     encoding="utf-8")
    return pubs, cites, journals, insts
