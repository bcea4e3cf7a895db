"""Streaming keyword-frequency scanner for text corpora.

Measures what fraction of a corpus's words contain keywords from a
vocabulary (sensory colors, textile names, or any list loaded from a
file). Words are maximal alphanumeric runs, lowercased; a word matches a
keyword when the keyword occurs inside it as a contiguous substring
("redder" contains "red"), with an exact whole-word mode behind a flag.
The scan is single-pass and chunk-oblivious: any split of the byte
stream yields identical counts.
"""

from __future__ import annotations

import codecs
import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Union

__all__ = [
    "KeywordList",
    "ScanResult",
    "CorpusDecodeError",
    "builtin_color_keywords",
    "textile_keywords_from",
    "load_keyword_file",
    "scan",
]

# [^\W_] is "word character minus underscore": exactly the characters
# str.isalnum() accepts.
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

COLOR_KEYWORDS = (
    "red",
    "orange",
    "yellow",
    "green",
    "blue",
    "purple",
    "pink",
    "brown",
    "black",
    "gray",
    "white",
)

MIN_NAME_TOKEN_LENGTH = 3


class CorpusDecodeError(ValueError):
    def __init__(self, byte_offset: int, message: str):
        super().__init__(f"undecodable byte at offset {byte_offset}: {message}")
        self.byte_offset = byte_offset


@dataclass(frozen=True)
class KeywordList:
    name: str
    keywords: frozenset[str]

    def __post_init__(self):
        for kw in self.keywords:
            if not kw or kw != kw.lower():
                raise ValueError(f"keywords must be nonempty and lowercase, got {kw!r}")


@dataclass(frozen=True)
class ScanResult:
    total_words: int
    matched_words: int
    per_keyword_hits: dict[str, int]

    @property
    def fraction(self) -> float:
        return self.matched_words / self.total_words if self.total_words else 0.0

    def to_dict(self, name: str) -> dict:
        return {
            "name": name,
            "total_words": self.total_words,
            "matched_words": self.matched_words,
            "fraction": self.fraction,
            "per_keyword_hits": dict(sorted(self.per_keyword_hits.items())),
        }


def builtin_color_keywords() -> KeywordList:
    """The eleven common color terms used for the baseline scan."""
    return KeywordList(name="colors", keywords=frozenset(COLOR_KEYWORDS))


def textile_keywords_from(catalog) -> KeywordList:
    """Keywords from sample names: lowercase whitespace tokens, length >= 3.

    The length floor keeps degenerate fragments ("pu") from matching half
    the corpus; short brand-style tokens carry no signal under substring
    matching.
    """
    tokens = set()
    for sample in catalog:
        for token in sample.name.lower().split():
            if len(token) >= MIN_NAME_TOKEN_LENGTH:
                tokens.add(token)
    return KeywordList(name="textiles", keywords=frozenset(tokens))


def load_keyword_file(path: str, name: str | None = None) -> KeywordList:
    """One keyword per line; blank lines ignored; forced lowercase."""
    keywords = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            token = line.strip().lower()
            if token:
                keywords.add(token)
    return KeywordList(name=name or path, keywords=frozenset(keywords))


Source = Union[bytes, str, IO[bytes], Iterable[bytes]]


def _byte_chunks(source: Source, chunk_size: int) -> Iterator[bytes]:
    if isinstance(source, bytes):
        yield source
        return
    if isinstance(source, str):
        yield source.encode("utf-8")
        return
    if hasattr(source, "read"):
        while True:
            chunk = source.read(chunk_size)
            if not chunk:
                return
            yield chunk
        return
    yield from source


def scan(
    source: Source,
    keyword_list: KeywordList,
    chunk_size: int = 65536,
    whole_word: bool = False,
) -> ScanResult:
    """Count corpus words and the ones containing any keyword.

    `source` may be bytes, a str, a binary file object, or an iterable of
    byte chunks; the stream never needs to fit in memory. Undecodable input
    raises CorpusDecodeError carrying the absolute byte offset.
    """
    keywords = sorted(keyword_list.keywords)
    total = 0
    matched = 0
    hits = {kw: 0 for kw in keywords}

    def count(raw_word: str) -> None:
        nonlocal total, matched
        word = raw_word.lower()
        total += 1
        any_hit = False
        for kw in keywords:
            if (kw == word) if whole_word else (kw in word):
                hits[kw] += 1
                any_hit = True
        if any_hit:
            matched += 1

    decoder = codecs.getincrementaldecoder("utf-8")()
    consumed = 0  # bytes handed to the decoder so far
    carry = ""  # trailing alphanumeric run that may continue in the next chunk

    def decode(chunk: bytes, final: bool) -> str:
        nonlocal consumed
        pending = len(decoder.getstate()[0])
        try:
            text = decoder.decode(chunk, final)
        except UnicodeDecodeError as exc:
            raise CorpusDecodeError(consumed - pending + exc.start, exc.reason) from exc
        consumed += len(chunk)
        return text

    for chunk in _byte_chunks(source, chunk_size):
        buf = carry + decode(chunk, final=False)
        carry = ""
        matches = list(_WORD_RE.finditer(buf))
        if matches and matches[-1].end() == len(buf):
            # The run touches the chunk edge and may continue; hold it back.
            carry = buf[matches[-1].start():]
            matches = matches[:-1]
        for m in matches:
            count(m.group())

    tail = carry + decode(b"", final=True)
    for m in _WORD_RE.finditer(tail):
        count(m.group())

    return ScanResult(total_words=total, matched_words=matched, per_keyword_hits=hits)
