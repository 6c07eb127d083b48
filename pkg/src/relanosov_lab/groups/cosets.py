# SPDX-License-Identifier: CC-BY-SA-4.0

"""Coset tables of finite-index subgroups and Reidemeister-Schreier rewriting.

Cosets are the left cosets ``alpha_i H`` numbered from 0, with coset 0 the
subgroup itself. A generator acts by left multiplication, so a word acts
letter by letter from its right end.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

from relanosov_lab.groups.marked import GroupError
from relanosov_lab.groups.words import Word, reduce_word


class InconsistentTable(GroupError):
    """Raised when permutations and coset representatives disagree."""


def _schreier_letters(rank: int) -> list[int]:
    """Letter order for transversals: a, A, b, B, ..."""
    return [letter for index in range(1, rank + 1) for letter in (index, -index)]


@dataclass(frozen=True)
class CosetTable:
    """Permutation action of the generators on the cosets of a subgroup.

    ``action[g][i]`` is the coset reached from coset ``i`` by generator ``g + 1``.
    ``representatives[i]`` maps coset 0 to coset ``i``.
    """

    action: tuple[tuple[int, ...], ...]
    representatives: tuple[Word, ...]
    _inverse_action: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _schreier: dict[tuple[int, int], int] = field(init=False, repr=False)
    _generators: tuple[Word, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.representatives)
        if n == 0:
            raise InconsistentTable("A coset table needs at least one coset")
        inverse_action = []
        for g, permutation in enumerate(self.action, start=1):
            if sorted(permutation) != list(range(n)):
                raise InconsistentTable(f"Generator {g} does not act as a permutation of {n}")
            inverse = [0] * n
            for i, j in enumerate(permutation):
                inverse[j] = i
            inverse_action.append(tuple(inverse))
        object.__setattr__(self, "_inverse_action", tuple(inverse_action))
        if not self.representatives[0].is_identity:
            raise InconsistentTable("The first representative must be the identity")
        for i, word in enumerate(self.representatives):
            if any(abs(letter) > self.rank for letter in word):
                raise InconsistentTable(f"Representative {word} uses an unknown generator")
            if self.act(word, 0) != i:
                raise InconsistentTable(
                    f"Representative {word} maps coset 0 to {self.act(word, 0)}, not {i}"
                )
        self._build_schreier_generators()

    @classmethod
    def from_permutations(cls, action: Sequence[Sequence[int]]) -> CosetTable:
        """Build representatives with a breadth-first Schreier tree."""
        frozen = tuple(tuple(permutation) for permutation in action)
        n = len(frozen[0]) if frozen else 1
        rank = len(frozen)
        if any(sorted(permutation) != list(range(n)) for permutation in frozen):
            raise InconsistentTable(f"Every generator must permute the {n} cosets")
        representatives: list[Word | None] = [None] * n
        representatives[0] = Word()
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for letter in _schreier_letters(rank):
                permutation = frozen[abs(letter) - 1]
                j = permutation[i] if letter > 0 else permutation.index(i)
                parent = representatives[i]
                if representatives[j] is None and parent is not None:
                    representatives[j] = Word((letter,)) * parent
                    queue.append(j)
        if any(word is None for word in representatives):
            raise InconsistentTable("The action on cosets is not transitive")
        return cls(frozen, tuple(word for word in representatives if word is not None))

    @classmethod
    def index_two(cls, rank: int, swapping: Sequence[int]) -> CosetTable:
        """Index-2 subgroup: the listed generators swap the two cosets."""
        action = [(1, 0) if g in swapping else (0, 1) for g in range(1, rank + 1)]
        return cls.from_permutations(action)

    @property
    def index(self) -> int:
        return len(self.representatives)

    @property
    def rank(self) -> int:
        return len(self.action)

    def act_letter(self, letter: int, coset: int) -> int:
        if letter > 0:
            return self.action[letter - 1][coset]
        return self._inverse_action[-letter - 1][coset]

    def act(self, word: Word, coset: int) -> int:
        for letter in reversed(word.letters):
            coset = self.act_letter(letter, coset)
        return coset

    def _build_schreier_generators(self) -> None:
        lookup: dict[tuple[int, int], int] = {}
        generators: list[Word] = []
        for i in range(self.index):
            for g in range(1, self.rank + 1):
                j = self.act_letter(g, i)
                element = reduce_word(
                    self.representatives[j].inverse() * Word((g,)) * self.representatives[i]
                )
                if element.is_identity:
                    lookup[(g, i)] = 0
                else:
                    generators.append(element)
                    lookup[(g, i)] = len(generators)
        object.__setattr__(self, "_schreier", lookup)
        object.__setattr__(self, "_generators", tuple(generators))

    def schreier_generators(self) -> tuple[Word, ...]:
        """Free generators of the subgroup, as words in the ambient generators."""
        return self._generators

    def rewrite(self, word: Word) -> Word:
        """Rewrite a subgroup element as a word in the Schreier generators."""
        if self.act(word, 0) != 0:
            raise GroupError(f"{word} is not in the subgroup")
        letters: list[int] = []
        coset = 0
        for letter in reversed(word.letters):
            if letter > 0:
                index = self._schreier[(letter, coset)]
            else:
                index = -self._schreier[(-letter, self.act_letter(letter, coset))]
            if index:
                letters.append(index)
            coset = self.act_letter(letter, coset)
        return reduce_word(Word(tuple(reversed(letters))))


def coset_normal_form(table: CosetTable, word: Word, coset: int = 0) -> tuple[int, Word]:
    """Return ``(j, eta)`` with ``word * alpha_coset = alpha_j * eta`` and eta in the subgroup."""
    if not 0 <= coset < table.index:
        raise InconsistentTable(f"Coset {coset} is outside the table of index {table.index}")
    target = table.act(word, coset)
    eta = reduce_word(
        table.representatives[target].inverse() * word * table.representatives[coset]
    )
    return target, eta
