"""E-utilities client: paged PubMed id search plus abstract record fetch.

Outbound requests are serialized and throttled (3 requests/second by
default, the courtesy limit for keyless clients). The endpoint base URL
can be overridden via ``LITSCOPE_ENTREZ_URL`` or by injecting a transport,
which is how the recorded-response tests run without network access.
"""

from __future__ import annotations

import logging
import os
import re
import time
import urllib.error
import urllib.parse
import urllib.request
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Callable

from .corpus import CorpusRecord, WarnFn

log = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils"
ENV_BASE_URL = "LITSCOPE_ENTREZ_URL"

# transport(url, params) -> raw response bytes
Transport = Callable[[str, dict[str, str]], bytes]

_YEAR_RE = re.compile(r"\d{4}")


class EntrezError(Exception):
    """Transport failure that persisted across retries."""

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


def _urllib_transport(url: str, params: dict[str, str]) -> bytes:
    full = url + "?" + urllib.parse.urlencode(params)
    with urllib.request.urlopen(full, timeout=30) as resp:
        return resp.read()


@dataclass
class EntrezClient:
    """Minimal esearch/efetch client with rate limiting and retries."""

    base_url: str = ""
    rate_limit: float = 3.0  # requests per second
    page_size: int = 200
    max_attempts: int = 3
    transport: Transport = _urllib_transport
    clock: Callable[[], float] = time.monotonic
    sleep: Callable[[float], None] = time.sleep
    _last_request: float | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if not self.base_url:
            self.base_url = os.environ.get(ENV_BASE_URL, DEFAULT_BASE_URL)

    # -- plumbing ----------------------------------------------------------

    def _throttle(self) -> None:
        if self.rate_limit <= 0:
            return
        interval = 1.0 / self.rate_limit
        now = self.clock()
        if self._last_request is not None:
            wait = self._last_request + interval - now
            if wait > 0:
                self.sleep(wait)
                now = self.clock()
        self._last_request = now

    def _request(self, endpoint: str, params: dict[str, str]) -> bytes:
        url = f"{self.base_url.rstrip('/')}/{endpoint}"
        last_exc: Exception | None = None
        for attempt in range(1, self.max_attempts + 1):
            self._throttle()
            try:
                return self.transport(url, params)
            except (urllib.error.URLError, OSError, TimeoutError) as exc:
                last_exc = exc
                log.warning("request to %s failed (attempt %d/%d): %s", endpoint, attempt, self.max_attempts, exc)
        raise EntrezError(f"request to {endpoint} failed: {last_exc}", self.max_attempts) from last_exc

    # -- id search ---------------------------------------------------------

    def search_ids(self, term: str) -> list[str]:
        """All matching ids via paged esearch calls, in source order."""
        ids: list[str] = []
        retstart = 0
        total: int | None = None
        while total is None or retstart < total:
            raw = self._request(
                "esearch.fcgi",
                {
                    "db": "pubmed",
                    "term": term,
                    "retmode": "xml",
                    "retstart": str(retstart),
                    "retmax": str(self.page_size),
                },
            )
            root = ET.fromstring(raw)
            total = int(root.findtext("Count", default="0"))
            page = [el.text for el in root.findall("IdList/Id") if el.text]
            if not page:
                break
            ids.extend(page)
            retstart += len(page)
        return ids

    # -- record fetch ------------------------------------------------------

    def fetch_records(self, ids: list[str], warn: WarnFn | None = None) -> list[CorpusRecord]:
        """Fetch and parse abstract records for ``ids``, preserving order."""
        emit = warn or log.warning
        records: list[CorpusRecord] = []
        for start in range(0, len(ids), self.page_size):
            page = ids[start : start + self.page_size]
            raw = self._request(
                "efetch.fcgi",
                {
                    "db": "pubmed",
                    "id": ",".join(page),
                    "rettype": "abstract",
                    "retmode": "xml",
                },
            )
            records.extend(parse_pubmed_xml(raw, warn=emit))
        return records


def _text_of(el: ET.Element | None) -> str:
    if el is None:
        return ""
    return "".join(el.itertext()).strip()


def _parse_year(article: ET.Element) -> int | None:
    year_el = article.find(".//Journal/JournalIssue/PubDate/Year")
    text = year_el.text if year_el is not None else None
    if not text:
        medline = article.find(".//Journal/JournalIssue/PubDate/MedlineDate")
        text = medline.text if medline is not None else None
    if not text:
        return None
    m = _YEAR_RE.search(text)
    return int(m.group()) if m else None


def _parse_doi(article: ET.Element, pubmed_article: ET.Element) -> str | None:
    for eloc in article.findall("ELocationID"):
        if eloc.get("EIdType") == "doi" and eloc.text:
            return eloc.text.strip()
    for aid in pubmed_article.findall(".//PubmedData/ArticleIdList/ArticleId"):
        if aid.get("IdType") == "doi" and aid.text:
            return aid.text.strip()
    return None


def parse_pubmed_xml(raw: bytes | str, warn: WarnFn | None = None) -> list[CorpusRecord]:
    """Parse an efetch response into staging records.

    Records missing an abstract are kept with an empty abstract plus a
    warning; records missing a PMID are skipped with a warning.
    """
    emit = warn or log.warning
    root = ET.fromstring(raw)
    records: list[CorpusRecord] = []
    for pubmed_article in root.findall(".//PubmedArticle"):
        pmid = pubmed_article.findtext(".//MedlineCitation/PMID")
        if not pmid:
            emit("record without PMID skipped")
            continue
        article = pubmed_article.find(".//MedlineCitation/Article")
        if article is None:
            emit(f"record {pmid}: no Article element, skipped")
            continue
        title = _text_of(article.find("ArticleTitle"))
        abstract_parts = [_text_of(el) for el in article.findall("Abstract/AbstractText")]
        abstract = " ".join(p for p in abstract_parts if p)
        if not abstract:
            emit(f"record {pmid}: no abstract text")
        records.append(
            CorpusRecord(
                id=pmid.strip(),
                title=title,
                abstract=abstract,
                year=_parse_year(article),
                doi=_parse_doi(article, pubmed_article),
            )
        )
    return records


def fetch_entrez(
    term: str,
    rate_limit: float = 3.0,
    page_size: int = 200,
    client: EntrezClient | None = None,
    warn: WarnFn | None = None,
) -> list[CorpusRecord]:
    """Search PubMed for ``term`` and fetch all matching records."""
    if client is None:
        client = EntrezClient(rate_limit=rate_limit, page_size=page_size)
    ids = client.search_ids(term)
    if not ids:
        return []
    return client.fetch_records(ids, warn=warn)
