"""Word splitting shared by the mock embedder, the corpus scanner and the
simulation strategies: maximal runs of alphanumeric characters, lowercased.

Splitting happens on the raw text and lowercasing on complete words, so the
result does not depend on where a streaming chunk boundary falls.
"""

from __future__ import annotations


def split_words(text: str) -> list[str]:
    words: list[str] = []
    current: list[str] = []
    for ch in text:
        if ch.isalnum():
            current.append(ch)
        elif current:
            words.append("".join(current).lower())
            current.clear()
    if current:
        words.append("".join(current).lower())
    return words
