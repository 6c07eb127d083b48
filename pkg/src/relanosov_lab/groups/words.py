# SPDX-License-Identifier: CC-BY-SA-4.0

"""Words over signed generator indices and their free reduction."""

from __future__ import annotations

import math
import string
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

Orders = Sequence[int | None] | None

IDENTITY_SYMBOL = "e"


@dataclass(frozen=True, order=True)
class Word:
    """A word in the generators: positive index = generator, negative = inverse.

    Generators are numbered from 1 and print as ``a, b, c, ...``; inverses print
    uppercase, so ``Word((1, -2))`` is ``"aB"``.
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(letter == 0 for letter in self.letters):
            raise ValueError("0 is not a generator index")

    @classmethod
    def parse(cls, text: str) -> Word:
        """Parse ``"aB"``-style text; ``""`` and ``"e"`` are the identity."""
        text = "".join(text.split())
        if text in ("", IDENTITY_SYMBOL):
            return cls()
        letters = []
        for char in text:
            if char not in string.ascii_letters or char.lower() == IDENTITY_SYMBOL:
                raise ValueError(f"Invalid letter {char!r} in word {text!r}")
            index = ord(char.lower()) - ord("a") + 1
            # the identity symbol is skipped in the generator alphabet
            if char.lower() > IDENTITY_SYMBOL:
                index -= 1
            letters.append(index if char.islower() else -index)
        return cls(tuple(letters))

    @classmethod
    def generator(cls, index: int) -> Word:
        return cls((index,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        """Concatenation, without reduction."""
        return Word(self.letters + other.letters)

    def __pow__(self, exponent: int) -> Word:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Word(self.letters * exponent)

    def inverse(self) -> Word:
        return Word(tuple(-letter for letter in reversed(self.letters)))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return IDENTITY_SYMBOL
        return "".join(letter_name(letter) for letter in self.letters)


def letter_name(letter: int) -> str:
    """Printable name of a signed generator index."""
    index = abs(letter)
    # no generator prints as "e"
    offset = index - 1 if index < 5 else index
    if offset >= 26:
        raise ValueError(f"Generator index {letter} has no letter name")
    char = string.ascii_lowercase[offset]
    return char if letter > 0 else char.upper()


def _order_of(orders: Orders, index: int) -> int | None:
    if orders is None:
        return None
    return orders[index - 1]


def _max_run(order: int | None, sign: int) -> float:
    """Longest run of one signed letter allowed in a normal form."""
    if order is None:
        return math.inf
    return order // 2 if sign > 0 else (order - 1) // 2


def _canonical_exponent(exponent: int, order: int | None) -> int:
    if order is None:
        return exponent
    residue = exponent % order
    return residue - order if residue > order // 2 else residue


def reduce_word(word: Word, orders: Orders = None) -> Word:
    """Free reduction; for generators of finite order, exponents are also
    taken to their canonical residue in (-m/2, m/2]."""
    runs: list[list[int]] = []  # [generator index, exponent]
    for letter in word.letters:
        index, sign = abs(letter), (1 if letter > 0 else -1)
        if runs and runs[-1][0] == index:
            runs[-1][1] += sign
        else:
            runs.append([index, sign])
        exponent = _canonical_exponent(runs[-1][1], _order_of(orders, index))
        if exponent == 0:
            runs.pop()
        else:
            runs[-1][1] = exponent
    letters: list[int] = []
    for index, exponent in runs:
        letters.extend([index if exponent > 0 else -index] * abs(exponent))
    return Word(tuple(letters))


def is_reduced(word: Word, orders: Orders = None) -> bool:
    return reduce_word(word, orders) == word


def multiply(left: Word, right: Word, orders: Orders = None) -> Word:
    """Group product of two words, reduced."""
    return reduce_word(left * right, orders)


def alphabet(rank: int) -> tuple[int, ...]:
    """Signed letters in lexicographic order."""
    return tuple(range(-rank, 0)) + tuple(range(1, rank + 1))


def allowed_letters(word: Word, rank: int, orders: Orders = None) -> list[int]:
    """Letters that extend a reduced word to a reduced word one letter longer."""
    allowed = []
    last = word.letters[-1] if word.letters else 0
    run = 0
    for letter in reversed(word.letters):
        if letter != last:
            break
        run += 1
    for letter in alphabet(rank):
        sign = 1 if letter > 0 else -1
        order = _order_of(orders, abs(letter))
        if letter == -last:
            continue
        length = run + 1 if letter == last else 1
        if length <= _max_run(order, sign):
            allowed.append(letter)
    return allowed


def iter_spheres(rank: int, orders: Orders = None) -> Iterator[list[Word]]:
    """Yield the spheres 0, 1, 2, ... of reduced words, each in lexicographic order."""
    shell = [Word()]
    while True:
        yield shell
        shell = [
            Word(word.letters + (letter,))
            for word in shell
            for letter in allowed_letters(word, rank, orders)
        ]
