"""Citation corpus: publications, journals, institutions and the citation graph.

A corpus is an immutable snapshot. Ingestion reads four flat files
(publications and citations as JSON Lines, journals and institutions as CSV),
materializes dangling citation endpoints as bare external publications, and
builds adjacency indexes in both directions. Every analysis in the package
reads from such a snapshot, so results are reproducible even when the source
database drifts.

File formats:

* publications: one JSON object per line,
  ``{"id": str, "year": int, "issn": str|null, "institutions": [str], "keywords": [str]}``
* citations: one JSON object per line, ``{"citing": str, "cited": str}``
* journals: CSV with header ``issn,name,for_codes``; for_codes are 4-digit
  field codes (or the literal ``MD``) separated by semicolons
* institutions: CSV with header ``id,name,country,staff_count``
  (staff_count may be empty)
"""

from __future__ import annotations

import csv
import io
import json
import re
import zipfile
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    DuplicateIdError,
    IngestError,
    UnknownFieldError,
    UnknownInstitutionError,
    UnknownPublicationError,
    ValidationError,
)

YEAR_MIN = 1900
YEAR_MAX = 2100

_ISSN_RE = re.compile(r"^[0-9]{7}[0-9X]$")
_FOR_CODE_RE = re.compile(r"^[0-9]{4}$")

ELIGIBILITY_MODES = ("strict", "implicit", "all")


def normalize_issn(raw: str) -> str:
    """Canonical ISSN key: hyphens/spaces stripped, check digit uppercased."""
    return raw.replace("-", "").replace(" ", "").strip().upper()


@dataclass(frozen=True)
class Publication:
    """One indexed research output.

    ``declared`` distinguishes records read from a publications file from
    bare endpoints materialized out of the citations file; the latter carry
    no year, journal or institutions but still participate in the graph so
    second-tier citation counts stay computable.
    """

    pub_id: str
    year: int | None
    issn: str | None = None
    institution_ids: frozenset[str] = frozenset()
    keywords: frozenset[str] = frozenset()
    declared: bool = True


@dataclass(frozen=True)
class JournalRecord:
    """ISSN-keyed journal carrying one or more 4-digit field codes (or MD)."""

    issn: str
    name: str
    for_codes: tuple[str, ...]


@dataclass(frozen=True)
class Institution:
    inst_id: str
    name: str
    country: str | None = None
    staff_count: int | None = None


@dataclass(frozen=True)
class Window:
    """Inclusive publication-year bounds plus the citation census year.

    ``census_year`` is the last year whose publications may contribute
    citations; metric options derived from a window cap citing years there.
    """

    start_year: int
    end_year: int
    census_year: int

    def __post_init__(self):
        if not (self.start_year <= self.end_year <= self.census_year):
            raise ValidationError(
                f"window requires start <= end <= census, got "
                f"{self.start_year}:{self.end_year}:{self.census_year}"
            )

    @classmethod
    def from_string(cls, text: str) -> "Window":
        """Parse ``START:END:CENSUS`` (three colon-separated integers)."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"window must be START:END:CENSUS, got {text!r}")
        try:
            start, end, census = (int(p) for p in parts)
        except ValueError:
            raise ValidationError(f"window parts must be integers, got {text!r}") from None
        return cls(start, end, census)

    def years(self) -> range:
        return range(self.start_year, self.end_year + 1)

    def __str__(self) -> str:
        return f"{self.start_year}:{self.end_year}:{self.census_year}"


class Corpus:
    """Immutable citation-graph snapshot with adjacency indexes both ways.

    Construct through :func:`ingest`, :func:`load_archive` or
    :meth:`Corpus.from_records`. Publication ids are indexed in lexicographic
    order, which makes every derived array and export deterministic.
    """

    def __init__(self, publications: Mapping[str, Publication],
                 edges: Iterable[tuple[str, str]],
                 journals: Mapping[str, JournalRecord],
                 institutions: Mapping[str, Institution]):
        pubs = dict(publications)

        edge_list = []
        for citing, cited in edges:
            if citing == cited:
                raise ValidationError(f"self-citation edge on {citing!r}")
            edge_list.append((citing, cited))
            for endpoint in (citing, cited):
                if endpoint not in pubs:
                    pubs[endpoint] = Publication(endpoint, year=None, declared=False)

        self._pubs = pubs
        self._ids: tuple[str, ...] = tuple(sorted(pubs))
        self._idx = {pid: i for i, pid in enumerate(self._ids)}
        n = len(self._ids)

        self._years = np.full(n, -1, dtype=np.int32)
        for pid, pub in pubs.items():
            if pub.year is not None:
                self._years[self._idx[pid]] = pub.year

        if edge_list:
            citing_idx = np.fromiter((self._idx[c] for c, _ in edge_list),
                                     dtype=np.int64, count=len(edge_list))
            cited_idx = np.fromiter((self._idx[d] for _, d in edge_list),
                                    dtype=np.int64, count=len(edge_list))
            keys = np.unique(citing_idx * n + cited_idx)  # dedupe repeated edge lines
            citing_idx = (keys // n).astype(np.int32)
            cited_idx = (keys % n).astype(np.int32)
        else:
            citing_idx = np.empty(0, dtype=np.int32)
            cited_idx = np.empty(0, dtype=np.int32)
        self._edge_citing = citing_idx
        self._edge_cited = cited_idx

        # In-CSR: for each cited publication, its citing neighbours in id order.
        order = np.lexsort((citing_idx, cited_idx))
        self._in_indices = citing_idx[order]
        self._in_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(cited_idx, minlength=n), out=self._in_indptr[1:])

        # Out-CSR: edges are already sorted by (citing, cited).
        self._out_indices = cited_idx
        self._out_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(citing_idx, minlength=n), out=self._out_indptr[1:])

        self._journals = dict(sorted(journals.items()))
        self._institutions = dict(sorted(institutions.items()))

        referenced = set(self._institutions)
        for pub in pubs.values():
            referenced.update(pub.institution_ids)
        self._known_institutions = frozenset(referenced)
        inst_code = {iid: k for k, iid in enumerate(sorted(referenced))}
        self._inst_indptr = np.zeros(n + 1, dtype=np.int64)
        codes: list[int] = []
        for i, pid in enumerate(self._ids):
            members = sorted(inst_code[iid] for iid in pubs[pid].institution_ids)
            codes.extend(members)
            self._inst_indptr[i + 1] = len(codes)
        self._inst_codes = np.asarray(codes, dtype=np.int32)

        self._field_universe = frozenset(
            code for j in self._journals.values() for code in j.for_codes
        )
        self._cache: dict = {}

        for arr in (self._years, self._edge_citing, self._edge_cited,
                    self._in_indices, self._in_indptr, self._out_indices,
                    self._out_indptr, self._inst_indptr, self._inst_codes):
            arr.setflags(write=False)

    @classmethod
    def from_records(cls, publications: Iterable[Publication],
                     edges: Iterable[tuple[str, str]] = (),
                     journals: Iterable[JournalRecord] = (),
                     institutions: Iterable[Institution] = ()) -> "Corpus":
        """Build a corpus from in-memory records (test and synthesis support)."""
        pub_map: dict[str, Publication] = {}
        for pub in publications:
            if pub.pub_id in pub_map:
                raise ValidationError(f"duplicate publication id {pub.pub_id!r}")
            if pub.year is not None and not (YEAR_MIN <= pub.year <= YEAR_MAX):
                raise ValidationError(
                    f"publication {pub.pub_id!r} year {pub.year} outside "
                    f"[{YEAR_MIN}, {YEAR_MAX}]")
            pub_map[pub.pub_id] = pub
        journal_map = {}
        for j in journals:
            key = normalize_issn(j.issn)
            if key in journal_map:
                raise ValidationError(f"duplicate journal issn {key!r}")
            journal_map[key] = JournalRecord(key, j.name, tuple(j.for_codes))
        inst_map = {}
        for inst in institutions:
            if inst.inst_id in inst_map:
                raise ValidationError(f"duplicate institution id {inst.inst_id!r}")
            inst_map[inst.inst_id] = inst
        return cls(pub_map, edges, journal_map, inst_map)

    # -- basic access ------------------------------------------------------

    @property
    def n_pubs(self) -> int:
        return len(self._ids)

    @property
    def n_edges(self) -> int:
        return int(self._edge_citing.shape[0])

    @property
    def pub_ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def journals(self) -> Mapping[str, JournalRecord]:
        return MappingProxyType(self._journals)

    @property
    def institutions(self) -> Mapping[str, Institution]:
        return MappingProxyType(self._institutions)

    @property
    def field_codes(self) -> frozenset[str]:
        """Every field code carried by some journal in the registry."""
        return self._field_universe

    def __contains__(self, pub_id: str) -> bool:
        return pub_id in self._pubs

    def pub(self, pub_id: str) -> Publication:
        try:
            return self._pubs[pub_id]
        except KeyError:
            raise UnknownPublicationError(f"unknown publication {pub_id!r}") from None

    def index_of(self, pub_id: str) -> int:
        try:
            return self._idx[pub_id]
        except KeyError:
            raise UnknownPublicationError(f"unknown publication {pub_id!r}") from None

    def id_at(self, index: int) -> str:
        return self._ids[index]

    def declared_ids(self) -> tuple[str, ...]:
        return tuple(pid for pid in self._ids if self._pubs[pid].declared)

    def citers_of(self, pub_id: str) -> tuple[str, ...]:
        """Publications citing ``pub_id`` (distinct, id order)."""
        i = self.index_of(pub_id)
        lo, hi = self._in_indptr[i], self._in_indptr[i + 1]
        return tuple(self._ids[j] for j in self._in_indices[lo:hi])

    def references_of(self, pub_id: str) -> tuple[str, ...]:
        """Publications cited by ``pub_id`` (distinct, id order)."""
        i = self.index_of(pub_id)
        lo, hi = self._out_indptr[i], self._out_indptr[i + 1]
        return tuple(self._ids[j] for j in self._out_indices[lo:hi])

    def edge_pairs(self) -> Iterator[tuple[str, str]]:
        """All (citing, cited) pairs, sorted."""
        for c, d in zip(self._edge_citing, self._edge_cited):
            yield self._ids[c], self._ids[d]

    def journal_of(self, pub_id: str) -> JournalRecord | None:
        issn = self.pub(pub_id).issn
        if issn is None:
            return None
        return self._journals.get(issn)

    def known_institution(self, inst_id: str) -> bool:
        return inst_id in self._known_institutions


# -- eligibility ------------------------------------------------------------


def journal_matches_field(journal: JournalRecord | None, field_code: str,
                          eligibility: str) -> bool:
    """Whether a journal admits articles into ``field_code`` submissions.

    strict: the journal carries the code itself. implicit: strict, or the
    journal carries another code in the same 2-digit division, or the MD
    multidisciplinary marker. all: no journal restriction.
    """
    if eligibility == "all":
        return True
    if journal is None:
        return False
    if field_code in journal.for_codes:
        return True
    if eligibility == "strict":
        return False
    division = field_code[:2]
    return any(code == "MD" or code.startswith(division) for code in journal.for_codes)


def select(corpus: Corpus, window: Window, *,
           institutions: Iterable[str] | None = None,
           field_code: str | None = None,
           eligibility: str = "strict") -> frozenset[str]:
    """Publications matching every given predicate.

    Filters: publication year inside the window, at least one listed
    institution (when given), and journal/field eligibility (when a field
    code is given). Relaxing eligibility or widening the window can only
    grow the result.
    """
    if eligibility not in ELIGIBILITY_MODES:
        raise ValidationError(f"eligibility must be one of {ELIGIBILITY_MODES}, "
                              f"got {eligibility!r}")
    inst_filter: frozenset[str] | None = None
    if institutions is not None:
        inst_filter = frozenset(institutions)
        for iid in sorted(inst_filter):
            if not corpus.known_institution(iid):
                raise UnknownInstitutionError(f"unknown institution {iid!r}")
    if field_code is not None and field_code not in corpus.field_codes:
        raise UnknownFieldError(f"no journal carries field code {field_code!r}")

    picked = []
    for pid in corpus.pub_ids:
        pub = corpus.pub(pid)
        if pub.year is None or not (window.start_year <= pub.year <= window.end_year):
            continue
        if inst_filter is not None and not (pub.institution_ids & inst_filter):
            continue
        if field_code is not None and not journal_matches_field(
                corpus.journal_of(pid), field_code, eligibility):
            continue
        picked.append(pid)
    return frozenset(picked)


# -- ingestion ---------------------------------------------------------------


def _parse_publications(lines: Iterable[str], fname: str) -> dict[str, Publication]:
    pubs: dict[str, Publication] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"invalid JSON ({exc.msg})", file=fname, line=lineno) from None
        if not isinstance(rec, dict):
            raise IngestError("record must be a JSON object", file=fname, line=lineno)
        pid = rec.get("id")
        if not isinstance(pid, str) or not pid:
            raise IngestError("missing or non-string id", file=fname, line=lineno, field="id")
        if pid in pubs:
            raise DuplicateIdError(f"duplicate publication id {pid!r}",
                                   file=fname, line=lineno, field="id")
        year = rec.get("year")
        if isinstance(year, bool) or not isinstance(year, int):
            raise IngestError("year must be an integer", file=fname, line=lineno, field="year")
        if not (YEAR_MIN <= year <= YEAR_MAX):
            raise IngestError(f"year {year} outside [{YEAR_MIN}, {YEAR_MAX}]",
                              file=fname, line=lineno, field="year")
        issn = rec.get("issn")
        if issn is not None:
            if not isinstance(issn, str):
                raise IngestError("issn must be a string or null",
                                  file=fname, line=lineno, field="issn")
            issn = normalize_issn(issn)
        insts = rec.get("institutions", [])
        if not isinstance(insts, list) or not all(isinstance(x, str) for x in insts):
            raise IngestError("institutions must be a list of strings",
                              file=fname, line=lineno, field="institutions")
        kws = rec.get("keywords", [])
        if not isinstance(kws, list) or not all(isinstance(x, str) for x in kws):
            raise IngestError("keywords must be a list of strings",
                              file=fname, line=lineno, field="keywords")
        pubs[pid] = Publication(pid, year, issn, frozenset(insts),
                                frozenset(k.lower() for k in kws))
    return pubs


def _parse_citations(lines: Iterable[str], fname: str) -> list[tuple[str, str]]:
    edges = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"invalid JSON ({exc.msg})", file=fname, line=lineno) from None
        citing = rec.get("citing") if isinstance(rec, dict) else None
        cited = rec.get("cited") if isinstance(rec, dict) else None
        if not isinstance(citing, str) or not citing:
            raise IngestError("missing or non-string citing id",
                              file=fname, line=lineno, field="citing")
        if not isinstance(cited, str) or not cited:
            raise IngestError("missing or non-string cited id",
                              file=fname, line=lineno, field="cited")
        if citing == cited:
            raise IngestError(f"self-citation edge on {citing!r}",
                              file=fname, line=lineno, field="cited")
        edges.append((citing, cited))
    return edges


def _csv_rows(lines: Iterable[str], fname: str, header: tuple[str, ...]):
    reader = csv.reader(lines)
    try:
        first = next(reader)
    except StopIteration:
        raise IngestError("empty file, expected header "
                          + ",".join(header), file=fname, line=1) from None
    if tuple(h.strip() for h in first) != header:
        raise IngestError(f"expected header {','.join(header)}", file=fname, line=1)
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise IngestError(f"expected {len(header)} columns, got {len(row)}",
                              file=fname, line=lineno)
        yield lineno, row


def _parse_journals(lines: Iterable[str], fname: str) -> dict[str, JournalRecord]:
    journals: dict[str, JournalRecord] = {}
    for lineno, row in _csv_rows(lines, fname, ("issn", "name", "for_codes")):
        issn_raw, name, codes_raw = row
        issn = normalize_issn(issn_raw)
        if not _ISSN_RE.match(issn):
            raise IngestError(f"malformed issn {issn_raw!r}",
                              file=fname, line=lineno, field="issn")
        if issn in journals:
            raise DuplicateIdError(f"duplicate journal issn {issn_raw!r}",
                                   file=fname, line=lineno, field="issn")
        codes = []
        for code in codes_raw.split(";"):
            code = code.strip()
            if code and code not in codes:
                if code != "MD" and not _FOR_CODE_RE.match(code):
                    raise IngestError(f"field code must be 4 digits or MD, got {code!r}",
                                      file=fname, line=lineno, field="for_codes")
                codes.append(code)
        if not codes:
            raise IngestError("journal needs at least one field code",
                              file=fname, line=lineno, field="for_codes")
        journals[issn] = JournalRecord(issn, name.strip(), tuple(codes))
    return journals


def _parse_institutions(lines: Iterable[str], fname: str) -> dict[str, Institution]:
    insts: dict[str, Institution] = {}
    header = ("id", "name", "country", "staff_count")
    for lineno, row in _csv_rows(lines, fname, header):
        iid, name, country, staff_raw = row
        iid = iid.strip()
        if not iid:
            raise IngestError("empty institution id", file=fname, line=lineno, field="id")
        if iid in insts:
            raise DuplicateIdError(f"duplicate institution id {iid!r}",
                                   file=fname, line=lineno, field="id")
        staff = None
        if staff_raw.strip():
            try:
                staff = int(staff_raw)
            except ValueError:
                raise IngestError(f"staff_count must be an integer, got {staff_raw!r}",
                                  file=fname, line=lineno, field="staff_count") from None
            if staff < 1:
                raise IngestError("staff_count must be positive",
                                  file=fname, line=lineno, field="staff_count")
        insts[iid] = Institution(iid, name.strip(), country.strip() or None, staff)
    return insts


def _read_lines(path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def ingest(pubs_path, cites_path, journals_path, institutions_path) -> Corpus:
    """Read the four source files and return a fully indexed snapshot.

    Citation endpoints that never appear in the publications file are
    materialized as bare external publications, so the edge set always
    references corpus members.
    """
    pubs = _parse_publications(_read_lines(pubs_path), str(pubs_path))
    edges = _parse_citations(_read_lines(cites_path), str(cites_path))
    journals = _parse_journals(_read_lines(journals_path), str(journals_path))
    institutions = _parse_institutions(_read_lines(institutions_path), str(institutions_path))
    return Corpus(pubs, edges, journals, institutions)


# -- export ------------------------------------------------------------------


def publications_jsonl(corpus: Corpus) -> str:
    """Canonical publications file (declared records only, id order)."""
    out = []
    for pid in corpus.declared_ids():
        pub = corpus.pub(pid)
        out.append(json.dumps({
            "id": pub.pub_id,
            "year": pub.year,
            "issn": pub.issn,
            "institutions": sorted(pub.institution_ids),
            "keywords": sorted(pub.keywords),
        }))
    return "\n".join(out) + ("\n" if out else "")


def citations_jsonl(corpus: Corpus) -> str:
    out = [json.dumps({"citing": c, "cited": d}) for c, d in corpus.edge_pairs()]
    return "\n".join(out) + ("\n" if out else "")


def journals_csv(corpus: Corpus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["issn", "name", "for_codes"])
    for issn, journal in corpus.journals.items():
        writer.writerow([issn, journal.name, ";".join(journal.for_codes)])
    return buf.getvalue()


def institutions_csv(corpus: Corpus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "name", "country", "staff_count"])
    for iid, inst in corpus.institutions.items():
        writer.writerow([iid, inst.name, inst.country or "",
                         "" if inst.staff_count is None else inst.staff_count])
    return buf.getvalue()


_ARCHIVE_MEMBERS = ("publications.jsonl", "citations.jsonl",
                    "journals.csv", "institutions.csv")


def export_corpus(corpus: Corpus, out_dir) -> dict[str, Path]:
    """Write the four canonical source files into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    contents = {
        "publications.jsonl": publications_jsonl(corpus),
        "citations.jsonl": citations_jsonl(corpus),
        "journals.csv": journals_csv(corpus),
        "institutions.csv": institutions_csv(corpus),
    }
    paths = {}
    for name, text in contents.items():
        path = out_dir / name
        path.write_text(text, encoding="utf-8", newline="")
        paths[name] = path
    return paths


def save_archive(corpus: Corpus, path) -> Path:
    """Snapshot the corpus into a single zip archive (byte-deterministic)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    contents = {
        "publications.jsonl": publications_jsonl(corpus),
        "citations.jsonl": citations_jsonl(corpus),
        "journals.csv": journals_csv(corpus),
        "institutions.csv": institutions_csv(corpus),
    }
    with zipfile.ZipFile(path, "w") as zf:
        for name in _ARCHIVE_MEMBERS:
            # Stored (uncompressed) entries with a frozen timestamp keep the
            # archive byte-identical across runs and zlib versions.
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_STORED
            info.external_attr = 0o644 << 16
            zf.writestr(info, contents[name])
    return path


def load_archive(path) -> Corpus:
    """Rebuild a corpus from :func:`save_archive` output."""
    try:
        with zipfile.ZipFile(path) as zf:
            texts = {name: zf.read(name).decode("utf-8") for name in _ARCHIVE_MEMBERS}
    except (zipfile.BadZipFile, KeyError) as exc:
        raise IngestError(f"not a corpus archive ({exc})", file=str(path)) from None
    pubs = _parse_publications(texts["publications.jsonl"].splitlines(),
                               "publications.jsonl")
    edges = _parse_citations(texts["citations.jsonl"].splitlines(), "citations.jsonl")
    journals = _parse_journals(texts["journals.csv"].splitlines(), "journals.csv")
    institutions = _parse_institutions(texts["institutions.csv"].splitlines(),
                                       "institutions.csv")
    return Corpus(pubs, edges, journals, institutions)
