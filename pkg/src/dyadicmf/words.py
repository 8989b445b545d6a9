"""Words over {+1,-1} and the Walsh character system of the dyadic group.

The ambient space is the compact group of sign sequences under
coordinatewise multiplication, metrized by rho(x, y) = 2^-min{k: x_k != y_k}.
A finite word holds the first n coordinates of a point and doubles as the
identifier of the n-cylinder, a ball of diameter 2^-n.

Signs are stored as bits with x_i = 1 - 2*b_i (bit value 1 encodes -1), so
sign products become XOR parities and bulk kernels can operate on integer
bit patterns.  The public API is 1-indexed and speaks {+1,-1} throughout.

Character indices are capped at 64 bits (frequencies up to 64); every
enumeration in this library lives far below that.  Words themselves may be
arbitrarily long.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

MAX_CHARACTER_BITS = 64

_CHAR_TO_BIT = {"+": 0, "-": 1, "0": 0, "1": 1}


@dataclass(frozen=True)
class SignWord:
    """Immutable finite word over {+1,-1}.

    ``bits`` packs the coordinates little-endian: bit i-1 is 1 exactly when
    x_i = -1.  The empty word (length 0) identifies the whole space.
    """

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be >= 0")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bit pattern does not fit the stated length")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignWord":
        bits = 0
        n = 0
        for s in signs:
            if s == -1:
                bits |= 1 << n
            elif s != 1:
                raise ValueError(f"signs must be +1 or -1, got {s!r}")
            n += 1
        return cls(bits, n)

    @classmethod
    def from_string(cls, text: str) -> "SignWord":
        """Parse either the sign form "+-+" or the bit form "010".

        The two alphabets encode the same word (+ <-> 0, - <-> 1) but may
        not be mixed within one string.
        """
        chars = set(text)
        if not (chars <= {"+", "-"} or chars <= {"0", "1"}):
            raise ValueError(f"word string must use +/- or 0/1, got {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            bits |= _CHAR_TO_BIT[ch] << i
        return cls(bits, len(text))

    @classmethod
    def from_signs_array(cls, signs: np.ndarray) -> "SignWord":
        """Build from an int array of +1/-1 entries (e.g. sampler output)."""
        signs = np.asarray(signs)
        neg = signs == -1
        if not bool(np.all(neg | (signs == 1))):
            raise ValueError("array entries must be +1 or -1")
        packed = np.packbits(neg, bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"), int(signs.size))

    # ------------------------------------------------------------------
    # views

    def sign(self, i: int) -> int:
        """Coordinate x_i (1-indexed)."""
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} outside word of length {self.length}")
        return 1 - 2 * ((self.bits >> (i - 1)) & 1)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 - 2 * ((self.bits >> i) & 1) for i in range(self.length))

    def to_bit_array(self) -> np.ndarray:
        """uint8 array b with b[i-1] = (1 - x_i) / 2."""
        raw = self.bits.to_bytes((self.length + 7) // 8, "little")
        if not raw:
            return np.zeros(0, dtype=np.uint8)
        return np.unpackbits(
            np.frombuffer(raw, dtype=np.uint8), bitorder="little", count=self.length
        )

    def to_signs_array(self) -> np.ndarray:
        """int8 array of the coordinates, +1/-1."""
        return (np.int8(1) - np.int8(2) * self.to_bit_array().astype(np.int8))

    def to_string(self, alphabet: str = "+-") -> str:
        if alphabet not in ("+-", "01"):
            raise ValueError("alphabet must be '+-' or '01'")
        return "".join(alphabet[(self.bits >> i) & 1] for i in range(self.length))

    def extended(self, sign: int) -> "SignWord":
        """New word with ``sign`` appended; words are never mutated."""
        if sign == 1:
            return SignWord(self.bits, self.length + 1)
        if sign == -1:
            return SignWord(self.bits | (1 << self.length), self.length + 1)
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return iter(self.signs)

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class DyadicCharacter:
    """Walsh character w_n, given by the index whose set bits are its frequencies.

    Index 0 is the constant character.  The group law is XOR on indices.
    """

    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("character index must be >= 0")
        if self.index.bit_length() > MAX_CHARACTER_BITS:
            raise OverflowError(
                f"character index exceeds the {MAX_CHARACTER_BITS}-bit limit"
            )

    @classmethod
    def from_frequencies(cls, frequencies: Iterable[int]) -> "DyadicCharacter":
        index = 0
        prev = 0
        for f in frequencies:
            if f <= prev:
                raise ValueError("frequencies must be strictly increasing and >= 1")
            if f > MAX_CHARACTER_BITS:
                raise OverflowError(
                    f"frequency {f} exceeds the {MAX_CHARACTER_BITS}-bit limit"
                )
            index |= 1 << (f - 1)
            prev = f
        return cls(index)

    @property
    def frequencies(self) -> tuple[int, ...]:
        """The set-bit positions of the index, 1-indexed and increasing."""
        return tuple(
            i + 1 for i in range(self.index.bit_length()) if (self.index >> i) & 1
        )

    @property
    def max_frequency(self) -> int:
        """Largest frequency; 0 for the constant character."""
        return self.index.bit_length()

    def __mul__(self, other: "DyadicCharacter") -> "DyadicCharacter":
        return DyadicCharacter(self.index ^ other.index)


@dataclass(frozen=True)
class Cylinder:
    """The set of all points extending ``prefix``: a ball of diameter 2^-n."""

    prefix: SignWord

    @property
    def diameter(self) -> Fraction:
        return Fraction(1, 2 ** self.prefix.length)


def as_word(word) -> SignWord:
    """Coerce a word argument: SignWord passes through, strings parse in
    either alphabet ("+-+" or "010")."""
    if isinstance(word, SignWord):
        return word
    if isinstance(word, str):
        return SignWord.from_string(word)
    raise TypeError(f"expected a SignWord or word string, got {type(word).__name__}")


def _as_character(character) -> DyadicCharacter:
    if isinstance(character, DyadicCharacter):
        return character
    return DyadicCharacter(int(character))


def xi(word, k: int, ell: int) -> int:
    """The multiplicative observable x_k * x_{2k} * ... * x_{ell*k}.

    Raises ValueError when ell*k exceeds the word length: the caller must
    extend the word before the observable is defined.
    """
    word = as_word(word)
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be >= 1")
    if ell * k > word.length:
        raise ValueError(
            f"xi_{k} needs {ell * k} coordinates, word has {word.length}; "
            "extend the word"
        )
    mask = 0
    for j in range(1, ell + 1):
        mask |= 1 << (j * k - 1)
    return 1 - 2 * ((word.bits & mask).bit_count() & 1)


def xi_sequence(word, ell: int) -> np.ndarray:
    """All observables xi_1 .. xi_m for m = len(word) // ell, as an int8 array.

    Bulk companion of :func:`xi`; this is the path long words take.
    """
    word = as_word(word)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    m = word.length // ell
    if m == 0:
        return np.zeros(0, dtype=np.int8)
    bits = word.to_bit_array()
    ks = np.arange(1, m + 1)
    acc = bits[ks - 1].copy()
    for j in range(2, ell + 1):
        acc ^= bits[j * ks - 1]
    return np.int8(1) - np.int8(2) * acc.astype(np.int8)


def walsh(word, character) -> int:
    """Evaluate the Walsh character on a word: the product of the
    coordinates at the character's frequencies (+1 for index 0).

    ``word`` may be a :class:`SignWord` or a word string; ``character``
    may be a :class:`DyadicCharacter` or a bare index.
    """
    word = as_word(word)
    ch = _as_character(character)
    if ch.index == 0:
        return 1
    if ch.max_frequency > word.length:
        raise ValueError(
            f"character needs coordinate {ch.max_frequency}, "
            f"word has {word.length}"
        )
    return 1 - 2 * ((word.bits & ch.index).bit_count() & 1)


def xi_character_index(k: int, ell: int) -> int:
    """Index of the Walsh character that equals xi(., k, ell).

    The observable x_k x_{2k} ... x_{ell*k} is itself a character; its
    frequency set {k, 2k, ..., ell*k} corresponds to the index
    sum_j 2^(j*k - 1).  Raises OverflowError when ell*k exceeds the 64-bit
    character cap.
    """
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be >= 1")
    if ell * k > MAX_CHARACTER_BITS:
        raise OverflowError(
            f"xi({k}, {ell}) needs frequency {ell * k} > {MAX_CHARACTER_BITS}"
        )
    index = 0
    for j in range(1, ell + 1):
        index |= 1 << (j * k - 1)
    return index
