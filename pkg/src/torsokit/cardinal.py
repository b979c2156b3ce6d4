"""Cardinal arithmetic over the three sizes the presentation language uses.

Only three kinds of cardinal ever appear: finite naturals, aleph0 (countably
infinite index families and multiplicities) and aleph1 (uncountable
replication). That is enough to count components per adhesion set and to
compare |V(K)| with |V(H)|.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

_FIN = 0
_AL0 = 1
_AL1 = 2

_TAG_NAMES = {_AL0: "aleph0", _AL1: "aleph1"}


@total_ordering
@dataclass(frozen=True)
class Cardinal:
    tag: int
    n: int = 0

    @staticmethod
    def finite(n: int) -> "Cardinal":
        if n < 0:
            raise ValueError("finite cardinal must be a natural number")
        return Cardinal(_FIN, n)

    @property
    def is_finite(self) -> bool:
        return self.tag == _FIN

    @property
    def is_infinite(self) -> bool:
        return self.tag != _FIN

    def __lt__(self, other: "Cardinal") -> bool:
        return (self.tag, self.n) < (other.tag, other.n)

    def __add__(self, other: "Cardinal") -> "Cardinal":
        # Any infinite summand absorbs; the larger tag wins.
        if self.tag == _FIN and other.tag == _FIN:
            return Cardinal(_FIN, self.n + other.n)
        return Cardinal(max(self.tag, other.tag))

    def __str__(self) -> str:
        if self.tag == _FIN:
            return str(self.n)
        return _TAG_NAMES[self.tag]


ALEPH0 = Cardinal(_AL0)
ALEPH1 = Cardinal(_AL1)
ZERO = Cardinal.finite(0)


def card_sum(cards: Iterable[Cardinal]) -> Cardinal:
    total = ZERO
    for c in cards:
        total = total + c
    return total


def card_max(a: Cardinal, b: Cardinal) -> Cardinal:
    return max(a, b)


def card_cmp(a: Cardinal, b: Cardinal) -> int:
    if a < b:
        return -1
    if b < a:
        return 1
    return 0


def parse_cardinal(text: str) -> Cardinal:
    text = text.strip().lower()
    if text == "aleph0":
        return ALEPH0
    if text == "aleph1":
        return ALEPH1
    if text.isdigit():
        return Cardinal.finite(int(text))
    raise ValueError(f"not a cardinal: {text!r}")
