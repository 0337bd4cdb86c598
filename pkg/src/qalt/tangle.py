"""Rational tangle arithmetic on tangle words.

``fraction`` evaluates the continued fraction ``a_n + 1/(a_{n-1} + ... + 1/a_1)``
in projective integer arithmetic.  ``slot_value`` is the fraction a word
contributes when it sits in a Montesinos slot: ordinary words end in a
vertical twist and contribute the reciprocal, words with a horizontal tail
contribute their fraction directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .conway import RationalTangleWord


@dataclass(frozen=True, order=True)
class TangleFraction:
    """Reduced projective fraction; ``1/0`` is the infinity tangle."""

    numerator: int
    denominator: int

    def __post_init__(self):
        p, q = self.numerator, self.denominator
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a tangle fraction")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "numerator", p)
        object.__setattr__(self, "denominator", q)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def reciprocal(self) -> "TangleFraction":
        return TangleFraction(self.denominator, self.numerator)

    def to_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ZeroDivisionError("infinite tangle fraction")
        return Fraction(self.numerator, self.denominator)

    @classmethod
    def of(cls, value: Fraction | int) -> "TangleFraction":
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


def continuant(entries) -> tuple[int, int]:
    """Unreduced ``(p, q)`` with ``p/q = a_n + 1/(... + 1/a_1)``."""
    p, q = 1, 0
    for a in entries:
        p, q = a * p + q, p
    return p, q


def fraction(w: RationalTangleWord) -> TangleFraction:
    return TangleFraction(*continuant(w.entries))


def slot_value(w: RationalTangleWord) -> TangleFraction:
    f = fraction(w)
    return f if w.horizontal_tail else f.reciprocal()


def slot_equivalent(w1: RationalTangleWord, w2: RationalTangleWord) -> bool:
    """True iff the two words give isotopic tangles in a Montesinos slot."""
    return slot_value(w1) == slot_value(w2)


def crossing_count(w: RationalTangleWord) -> int:
    return sum(abs(a) for a in w.entries)


def is_alternating_word(w: RationalTangleWord) -> bool:
    return all(a > 0 for a in w.entries) or all(a < 0 for a in w.entries)


def word_sign(w: RationalTangleWord) -> int:
    """+1 or -1 for sign-uniform words, 0 for mixed words."""
    if all(a > 0 for a in w.entries):
        return 1
    if all(a < 0 for a in w.entries):
        return -1
    return 0


def uniform_words(value: TangleFraction) -> list[RationalTangleWord]:
    """Sign-uniform words whose slot value is ``value``.

    There are exactly two (the continued-fraction ambiguity at the innermost
    entry), or one when the slot value is ``±1``.  Zero and infinity have none.
    """
    if value.numerator == 0 or value.is_infinite:
        return []
    sign = 1 if value.numerator > 0 else -1
    # slot value s = 1/f, so expand f = q/p as a regular continued fraction.
    x = Fraction(abs(value.denominator), abs(value.numerator))
    terms = []
    while True:
        a = x.numerator // x.denominator
        terms.append(a)
        rest = x - a
        if rest == 0:
            break
        x = 1 / rest
    # terms[0] is the outermost entry a_n; it may be zero when |f| < 1, in
    # which case no positive word exists with this slot value.
    if terms[0] == 0:
        return []
    short = list(reversed(terms))
    forms = [short]
    if short[0] > 1:
        forms.append([1, short[0] - 1] + short[1:])
    elif len(short) > 1:
        forms.append([short[1] + 1] + short[2:])
    seen, out = set(), []
    for form in forms:
        key = tuple(sign * a for a in form)
        if key not in seen:
            seen.add(key)
            out.append(RationalTangleWord(key))
    out.sort(key=len)
    return out


def normalize_word(w: RationalTangleWord) -> RationalTangleWord:
    """Shortest sign-uniform word with the same slot value, or ``w`` itself."""
    candidates = uniform_words(slot_value(w))
    return candidates[0] if candidates else w
