"""Shared corpus builders and independent oracles.

The oracles here deliberately avoid the library's own span machinery:
word splitting goes through str.split so that label arithmetic is checked
against an implementation that cannot share bugs with the code under test.
"""

from __future__ import annotations

import itertools
import random
import string

from boundarykit import LabeledText, SegmentationMode


def oracle_words(text: str, mode: SegmentationMode) -> list[str]:
    """Independent word splitter: str.split, not span arithmetic."""
    if mode is SegmentationMode.SPACE_ONLY:
        return [w for w in text.split(" ") if w]
    return text.split()


_TERMINATORS = [".", "!", "?", "...", "?!"]
_WORD_GAPS = [" ", " ", " ", " ", "  ", "\t", "\n"]
_SENTENCE_GAPS = [" ", " ", "\n", "\n\n", " \n", "  "]


def _random_word(rng: random.Random) -> str:
    core = "".join(rng.choices(string.ascii_lowercase, k=rng.randint(1, 8)))
    if rng.random() < 0.15:
        core += rng.choice([",", ";", ":", "'s", "7"])
    if rng.random() < 0.1:
        core = core.capitalize()
    return core


def random_text(rng: random.Random, max_sentences: int = 6) -> str:
    """Text with random words, separators (spaces, tabs, newlines), and
    punctuation, covering terminator-then-newline joins and unterminated
    fragments."""
    sentences = []
    for _ in range(rng.randint(1, max_sentences)):
        words = [_random_word(rng) for _ in range(rng.randint(2, 6))]
        gaps = [rng.choice(_WORD_GAPS) for _ in range(len(words) - 1)]
        body = words[0] + "".join(g + w for g, w in zip(gaps, words[1:]))
        if rng.random() < 0.85:
            body += rng.choice(_TERMINATORS)
        sentences.append(body)
    text = sentences[0]
    for sentence in sentences[1:]:
        text += rng.choice(_SENTENCE_GAPS) + sentence
    return text


def random_labeled_text(
    rng: random.Random, record_id: str, max_sentences: int = 6
) -> LabeledText:
    """A record whose label is valid under SPACE_ONLY (and therefore under
    ALL_WHITESPACE too, which never splits into fewer words)."""
    while True:
        text = random_text(rng, max_sentences)
        count = len(oracle_words(text, SegmentationMode.SPACE_ONLY))
        if count >= 3:
            break
    return LabeledText(id=record_id, text=text, label=rng.randint(1, count - 1))


def discrepancy_corpus(rng: random.Random, size: int) -> list[LabeledText]:
    """Records exhibiting both mismatch kinds between sentence-level and
    text-level splits: a terminator followed by a newline-only gap (the
    joined-word case) and punctuation-joined words with no whitespace."""
    records = []
    for index in range(size):
        parts = []
        for s in range(rng.randint(2, 5)):
            words = [_random_word(rng) for _ in range(rng.randint(2, 5))]
            parts.append(" ".join(words) + rng.choice([".", "!", "?"]))
        kind = index % 3
        if kind == 0:
            joint = rng.randrange(len(parts) - 1)
            text = ""
            for i, part in enumerate(parts):
                if i == 0:
                    text = part
                elif i == joint + 1:
                    text += "\n" + part
                else:
                    text += " " + part
        elif kind == 1:
            glued = parts[0] + parts[1]
            text = " ".join([glued] + parts[2:])
        else:
            text = " ".join(parts)
        count = len(oracle_words(text, SegmentationMode.SPACE_ONLY))
        records.append(
            LabeledText(id=f"disc-{index}", text=text, label=rng.randint(1, count - 1))
        )
    return records


def _prose_vocabulary() -> list[str]:
    onsets = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"]
    vowels = ["a", "e", "i", "o", "u"]
    codas = ["n", "r", "l", "s", "m", "t", ""]
    vocab = [
        f"{o1}{v1}{c1}{o2}{v2}"
        for o1, v1, c1, o2, v2 in itertools.product(onsets, vowels, codas, onsets, vowels)
    ]
    return vocab


PROSE_VOCAB = _prose_vocabulary()


def plain_prose(rng: random.Random, words_per_text: int = 80) -> str:
    """Prose-like text with no repeated word anywhere (words sampled without
    replacement), no triple quotes, and no list or JSON structure."""
    words = rng.sample(PROSE_VOCAB, words_per_text)
    sentences = []
    i = 0
    while i < len(words):
        n = min(rng.randint(5, 12), len(words) - i)
        chunk = words[i : i + n]
        sentences.append(" ".join([chunk[0].capitalize()] + chunk[1:]) + ".")
        i += n
    joiner = "\n" if rng.random() < 0.3 else " "
    return joiner.join(sentences)


def brute_force_mae(pairs: list[tuple[int, int]]) -> float:
    """Naive reference MAE over (predicted, gold) pairs."""
    return sum(abs(p - g) for p, g in pairs) / len(pairs)
