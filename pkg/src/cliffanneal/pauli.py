"""Pauli-string algebra over a packed symplectic representation.

An n-qubit Pauli operator is stored as two integer bit masks plus a
power of i:

    P = i**phase_exp * s_0 (x) s_1 (x) ... (x) s_{n-1}

where the letter on qubit j is selected by bit j of ``x_bits`` and
``z_bits``:

    (x, z) = (0, 0) -> I    (1, 0) -> X    (0, 1) -> Z    (1, 1) -> Y

Letters are the Hermitian Paulis (Y, not XZ); the i factors arising from
XZ reordering during products are accumulated in ``phase_exp``.  Parsed
strings and Hamiltonian terms are always phase-free (``phase_exp = 0``).

Bit masks make equality, commutation and multiplication word-parallel,
which matters because the annealer evaluates on the order of 10^4-10^6
energies per run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}


@dataclass(frozen=True)
class PauliString:
    """A Pauli operator ``i**phase_exp * (letter product)`` in bit-mask form."""

    n_qubits: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("PauliString needs at least one qubit")
        mask = (1 << self.n_qubits) - 1
        if not 0 <= self.x_bits <= mask:
            raise ValueError("x_bits outside the qubit range")
        if not 0 <= self.z_bits <= mask:
            raise ValueError("z_bits outside the qubit range")
        if self.phase_exp not in (0, 1, 2, 3):
            raise ValueError("phase_exp must be in {0, 1, 2, 3}")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 0)

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def weight(self) -> int:
        """Number of non-identity letters."""
        return (self.x_bits | self.z_bits).bit_count()

    @property
    def n_y(self) -> int:
        """Number of Y letters."""
        return (self.x_bits & self.z_bits).bit_count()

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[(self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1]

    def to_label(self) -> str:
        """Letter string with position j = qubit j (no phase prefix)."""
        return "".join(self.letter(j) for j in range(self.n_qubits))

    def __str__(self) -> str:
        prefix = ("+", "+i", "-", "-i")[self.phase_exp]
        return prefix + self.to_label()


def parse_pauli(text: str, n_qubits: int) -> PauliString:
    """Parse a letter string over {I, X, Y, Z} into a phase-free PauliString.

    Character position j addresses qubit j.  Y maps to (x, z) = (1, 1)
    with no stored phase.
    """
    if len(text) != n_qubits:
        raise ValueError(
            f"pauli string {text!r} has length {len(text)}, expected {n_qubits}"
        )
    x = z = 0
    for j, ch in enumerate(text):
        try:
            xb, zb = _LETTER_BITS[ch]
        except KeyError:
            raise ValueError(f"invalid pauli character {ch!r} at position {j}") from None
        x |= xb << j
        z |= zb << j
    return PauliString(n_qubits, x, z, 0)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic inner product of p and q vanishes mod 2."""
    if p.n_qubits != q.n_qubits:
        raise ValueError("size mismatch")
    return ((p.x_bits & q.z_bits).bit_count() + (p.z_bits & q.x_bits).bit_count()) % 2 == 0


def _product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """i-exponent (mod 4) picked up when multiplying two letter products.

    Per qubit the cyclic products X.Y, Y.Z, Z.X contribute +1 and the
    anticyclic ones -1; identity or equal letters contribute nothing.
    """
    cyclic = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2)
    anti = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2)
    return (cyclic.bit_count() - anti.bit_count()) % 4


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Operator product p*q with exact i bookkeeping."""
    if p.n_qubits != q.n_qubits:
        raise ValueError("size mismatch")
    phase = (p.phase_exp + q.phase_exp + _product_phase(p.x_bits, p.z_bits, q.x_bits, q.z_bits)) % 4
    return PauliString(p.n_qubits, p.x_bits ^ q.x_bits, p.z_bits ^ q.z_bits, phase)


@dataclass(frozen=True)
class Hamiltonian:
    """Weighted sum of phase-free Pauli strings sharing one qubit count.

    Terms are canonical: duplicates merged, exact zeros dropped, insertion
    order of first occurrence preserved.  Build instances through
    :meth:`from_terms` or :func:`parse_hamiltonian`.
    """

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("Hamiltonian needs at least one qubit")
        seen = set()
        for coeff, pauli in self.terms:
            if pauli.n_qubits != self.n_qubits:
                raise ValueError("term qubit count mismatch")
            if pauli.phase_exp != 0:
                raise ValueError("Hamiltonian terms must be phase-free")
            import math

            if not math.isfinite(coeff):
                raise ValueError("coefficients must be finite")
            if coeff == 0.0:
                raise ValueError("zero-coefficient terms must be dropped")
            key = (pauli.x_bits, pauli.z_bits)
            if key in seen:
                raise ValueError(f"duplicate term {pauli.to_label()}")
            seen.add(key)

    @classmethod
    def from_terms(
        cls, n_qubits: int, terms: Iterable[tuple[float, PauliString]]
    ) -> "Hamiltonian":
        """Merge duplicate strings, drop exact zeros, keep first-seen order."""
        acc: dict[tuple[int, int], float] = {}
        paulis: dict[tuple[int, int], PauliString] = {}
        for coeff, pauli in terms:
            key = (pauli.x_bits, pauli.z_bits)
            acc[key] = acc.get(key, 0.0) + float(coeff)
            paulis.setdefault(key, pauli)
        kept = tuple(
            (c, paulis[k]) for k, c in acc.items() if c != 0.0
        )
        return cls(n_qubits, kept)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[float, PauliString]]:
        return iter(self.terms)

    @property
    def n_terms(self) -> int:
        return len(self.terms)


def parse_hamiltonian(source: str | TextIO | Iterable[str]) -> Hamiltonian:
    """Parse the Hamiltonian text format into a canonical Hamiltonian.

    Format: one term per line, ``<coefficient><whitespace><pauli-letters>``;
    the coefficient is a decimal or scientific-notation real; lines starting
    with ``#`` and blank lines are ignored.  All Pauli strings must have
    equal length; the qubit count is inferred from the first term.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = list(source)
    raw: list[tuple[float, str, int]] = []
    n_qubits = None
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<coefficient> <pauli>'")
        coeff_text, pauli_text = parts
        try:
            coeff = float(coeff_text)
        except ValueError:
            raise ValueError(f"line {lineno}: unparsable coefficient {coeff_text!r}") from None
        if n_qubits is None:
            n_qubits = len(pauli_text)
        elif len(pauli_text) != n_qubits:
            raise ValueError(
                f"line {lineno}: pauli length {len(pauli_text)} inconsistent with {n_qubits}"
            )
        raw.append((coeff, pauli_text, lineno))
    if n_qubits is None:
        raise ValueError("empty Hamiltonian source")
    terms = []
    for coeff, pauli_text, lineno in raw:
        try:
            pauli = parse_pauli(pauli_text, n_qubits)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        terms.append((coeff, pauli))
    return Hamiltonian.from_terms(n_qubits, terms)


def format_hamiltonian(h: Hamiltonian, header: Iterable[str] = ()) -> str:
    """Render a Hamiltonian in the text format accepted by parse_hamiltonian."""
    lines = [f"# {line}" for line in header]
    for coeff, pauli in h.terms:
        lines.append(f"{coeff!r} {pauli.to_label()}")
    return "\n".join(lines) + "\n"
