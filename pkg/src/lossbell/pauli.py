"""Pauli strings in the symplectic (x-bit, z-bit) representation.

Site k of an n-site string carries one of I, X, Y, Z encoded by bit k of two
integer masks, so commutation checks and site restriction are cheap bit
arithmetic even inside large sweeps.  A global phase ``i**phase_pow`` is
tracked through multiplication; strings derived from graphs are always real
with sign +1.

String rendering and ``from_letters`` read site 0 as the leftmost letter.
"""

from __future__ import annotations

import numpy as np

from .graphs import Graph

_LETTERS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTERS.items()}
_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class PauliString:
    __slots__ = ("_n", "_x", "_z", "_phase")

    def __init__(self, n: int, x_bits: int = 0, z_bits: int = 0, phase_pow: int = 0) -> None:
        if n < 1:
            raise ValueError("Pauli string needs at least one site")
        full = (1 << n) - 1
        if x_bits & ~full or z_bits & ~full:
            raise ValueError("mask bits outside the n sites")
        self._n = n
        self._x = x_bits
        self._z = z_bits
        self._phase = phase_pow % 4

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def from_letters(cls, letters: str) -> PauliString:
        phase = 0
        if letters and letters[0] in "+-":
            phase = 0 if letters[0] == "+" else 2
            letters = letters[1:]
        x = z = 0
        for k, letter in enumerate(letters):
            try:
                xb, zb = _BITS[letter]
            except KeyError:
                raise ValueError(f"unknown Pauli letter {letter!r}") from None
            x |= xb << k
            z |= zb << k
        return cls(len(letters), x, z, phase)

    # -- structure -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def x_bits(self) -> int:
        return self._x

    @property
    def z_bits(self) -> int:
        return self._z

    @property
    def phase_pow(self) -> int:
        """Exponent k in the global phase i**k."""
        return self._phase

    @property
    def sign(self) -> int:
        if self._phase % 2:
            raise ValueError("string has an imaginary phase, no real sign")
        return 1 if self._phase == 0 else -1

    @property
    def support(self) -> frozenset[int]:
        mask = self._x | self._z
        return frozenset(k for k in range(self._n) if (mask >> k) & 1)

    def letter(self, k: int) -> str:
        if not 0 <= k < self._n:
            raise IndexError(f"site {k} out of range")
        return _LETTERS[(self._x >> k) & 1, (self._z >> k) & 1]

    @property
    def letters(self) -> str:
        return "".join(self.letter(k) for k in range(self._n))

    # -- algebra --------------------------------------------------------------

    def commutes(self, other: PauliString) -> bool:
        if self._n != other._n:
            raise ValueError("length mismatch")
        anti = (self._x & other._z).bit_count() + (self._z & other._x).bit_count()
        return anti % 2 == 0

    def __mul__(self, other: PauliString) -> PauliString:
        if not isinstance(other, PauliString):
            return NotImplemented
        if self._n != other._n:
            raise ValueError("length mismatch")
        x = self._x ^ other._x
        z = self._z ^ other._z
        # i-power bookkeeping for E(x,z) = i^(x.z) X^x Z^z per site:
        # E1*E2 = i^(x1.z1 + x2.z2 - x3.z3 + 2*z1.x2) E3
        phase = (
            self._phase
            + other._phase
            + (self._x & self._z).bit_count()
            + (other._x & other._z).bit_count()
            - (x & z).bit_count()
            + 2 * (self._z & other._x).bit_count()
        )
        return PauliString(self._n, x, z, phase % 4)

    # -- site surgery -----------------------------------------------------------

    def restrict(self, drop: frozenset[int]) -> tuple[PauliString, dict[int, str]]:
        """Drop the given sites, returning the shorter string and a record of
        the letters that sat on them (needed to decide lossy expectations)."""
        drop = frozenset(drop)
        if not drop <= frozenset(range(self._n)):
            raise ValueError("drop set contains out-of-range sites")
        if len(drop) >= self._n:
            raise ValueError("cannot drop every site")
        x = z = 0
        new = 0
        for old in range(self._n):
            if old in drop:
                continue
            x |= ((self._x >> old) & 1) << new
            z |= ((self._z >> old) & 1) << new
            new += 1
        dropped = {k: self.letter(k) for k in sorted(drop)}
        return PauliString(self._n - len(drop), x, z, self._phase), dropped

    def embed(self, positions: tuple[int, ...], n_full: int) -> PauliString:
        """Place site k of this string at ``positions[k]`` of a larger register."""
        positions = tuple(positions)
        if len(positions) != self._n:
            raise ValueError("positions must match the string length")
        if sorted(set(positions)) != list(positions) or not (
            0 <= positions[0] and positions[-1] < n_full
        ):
            raise ValueError("positions must be strictly increasing and in range")
        x = z = 0
        for k, pos in enumerate(positions):
            x |= ((self._x >> k) & 1) << pos
            z |= ((self._z >> k) & 1) << pos
        return PauliString(n_full, x, z, self._phase)

    # -- dense form ----------------------------------------------------------

    def to_matrix(self) -> np.ndarray:
        """Dense 2**n matrix with qubit 0 as the least significant bit."""
        out = np.array([[1]], dtype=complex)
        for k in range(self._n - 1, -1, -1):
            out = np.kron(out, _MATRICES[self.letter(k)])
        return (1j ** self._phase) * out

    # -- identity ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self._n == other._n
            and self._x == other._x
            and self._z == other._z
            and self._phase == other._phase
        )

    def __hash__(self) -> int:
        return hash((self._n, self._x, self._z, self._phase))

    def __str__(self) -> str:
        return _PHASE_PREFIX[self._phase] + self.letters

    def __repr__(self) -> str:
        return f"PauliString.from_letters({str(self)!r})"


def stabilizer(g: Graph, i: int) -> PauliString:
    """Generator attached to vertex i: X there, Z on every neighbor."""
    z = 0
    for j in g.neighborhood(i):
        z |= 1 << j
    return PauliString(g.n, 1 << i, z)
