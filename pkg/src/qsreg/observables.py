"""Weighted Pauli-string observables with dense-matrix diagnostics.

Pauli strings are written over the alphabet ``IXYZ`` with qubit 0 as the
*leftmost* character.  Qubit 0 is likewise the most significant bit of a
basis-state index, so ``"ZI"`` acts on the high bit of a two-qubit register.
This byte order is normative for the Hamiltonian JSON files shipped with the
package.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ObservableError",
    "PauliString",
    "ObservableSum",
    "Spectrum",
    "multiply_pauli_strings",
    "parse_observable",
    "load_observable",
    "shift_square",
    "exact_spectrum",
    "MERGE_PRUNE_TOLERANCE",
    "MAX_DENSE_QUBITS",
]

PAULI_LABELS = "IXYZ"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

# a * b = phase * c for single-qubit Paulis, phase in {1, -1, i, -i}
_PAULI_PRODUCT: dict[tuple[str, str], tuple[complex, str]] = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("Y", "I"): (1, "Y"), ("Z", "I"): (1, "Z"),
    ("X", "X"): (1, "I"), ("Y", "Y"): (1, "I"), ("Z", "Z"): (1, "I"),
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}

# weights below this magnitude are dropped after merging duplicate strings
MERGE_PRUNE_TOLERANCE = 1e-14

# largest system for which the dense 2^N x 2^N oracle is considered feasible
MAX_DENSE_QUBITS = 12

_HERMITICITY_TOLERANCE = 1e-12


class ObservableError(ValueError):
    """Raised for malformed Pauli strings, weights, or Hamiltonian documents."""


@dataclass(frozen=True)
class PauliString:
    """A single tensor product of single-qubit Pauli operators, e.g. ``"XXI"``."""

    ops: str

    def __post_init__(self) -> None:
        if not isinstance(self.ops, str) or len(self.ops) < 1:
            raise ObservableError("Pauli string must be a non-empty string")
        bad = set(self.ops) - set(PAULI_LABELS)
        if bad:
            raise ObservableError(f"invalid Pauli labels {sorted(bad)} in {self.ops!r}")

    @property
    def num_qubits(self) -> int:
        return len(self.ops)

    @property
    def is_identity(self) -> bool:
        return set(self.ops) == {"I"}

    def matrix(self) -> np.ndarray:
        """Dense 2^N x 2^N matrix; qubit 0 is the leading Kronecker factor."""
        m = np.array([[1.0 + 0.0j]])
        for label in self.ops:
            m = np.kron(m, PAULI_MATRICES[label])
        return m

    def __str__(self) -> str:
        return self.ops


def multiply_pauli_strings(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Product a·b as (phase, PauliString) with phase in {±1, ±i}."""
    if a.num_qubits != b.num_qubits:
        raise ObservableError("Pauli strings act on different numbers of qubits")
    phase = 1.0 + 0.0j
    ops = []
    for la, lb in zip(a.ops, b.ops):
        ph, lc = _PAULI_PRODUCT[(la, lb)]
        phase *= ph
        ops.append(lc)
    return phase, PauliString("".join(ops))


@dataclass(frozen=True)
class ObservableSum:
    """Weighted sum of Pauli strings sharing one register size.

    Duplicate strings are merged on construction (weights added, first
    appearance fixes the order) and merged weights with magnitude below
    ``MERGE_PRUNE_TOLERANCE`` are pruned.  Instances are immutable.
    """

    num_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __init__(self, num_qubits, terms):
        if not isinstance(num_qubits, int) or num_qubits < 1:
            raise ObservableError("num_qubits must be a positive integer")
        merged: dict[str, float] = {}
        for weight, pauli in terms:
            if isinstance(pauli, str):
                pauli = PauliString(pauli)
            if pauli.num_qubits != num_qubits:
                raise ObservableError(
                    f"Pauli string {pauli.ops!r} has length {pauli.num_qubits}, "
                    f"expected {num_qubits}"
                )
            w = float(weight)
            if not math.isfinite(w):
                raise ObservableError(f"non-finite weight for term {pauli.ops!r}")
            merged[pauli.ops] = merged.get(pauli.ops, 0.0) + w
        kept = tuple(
            (w, PauliString(ops)) for ops, w in merged.items() if abs(w) >= MERGE_PRUNE_TOLERANCE
        )
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "terms", kept)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    @property
    def one_norm(self) -> float:
        """Sum of |weight|, an a-priori bound on any expectation value."""
        return float(sum(abs(w) for w, _ in self.terms))

    def matrix(self) -> np.ndarray:
        dim = 2**self.num_qubits
        m = np.zeros((dim, dim), dtype=complex)
        for w, p in self.terms:
            m += w * p.matrix()
        return m

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{w:+g}*{p.ops}" for w, p in self.terms)


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues of an observable, sorted ascending."""

    eigenvalues: np.ndarray
    min_eigenvalue: float


def parse_observable(text: str) -> ObservableSum:
    """Parse the Hamiltonian JSON schema into an :class:`ObservableSum`.

    Schema::

        {"num_qubits": N,
         "terms": [{"pauli": "<string over IXYZ, length N>", "weight": <float>}, ...]}

    Qubit 0 is the leftmost character of every ``pauli`` entry.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ObservableError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ObservableError("Hamiltonian document must be a JSON object")
    unknown = set(doc) - {"num_qubits", "terms"}
    if unknown:
        raise ObservableError(f"unknown keys in Hamiltonian document: {sorted(unknown)}")
    if "num_qubits" not in doc or "terms" not in doc:
        raise ObservableError("Hamiltonian document needs 'num_qubits' and 'terms'")
    num_qubits = doc["num_qubits"]
    if not isinstance(num_qubits, int) or num_qubits < 1:
        raise ObservableError("'num_qubits' must be a positive integer")
    raw_terms = doc["terms"]
    if not isinstance(raw_terms, list):
        raise ObservableError("'terms' must be a list")
    terms = []
    for entry in raw_terms:
        if not isinstance(entry, dict) or set(entry) != {"pauli", "weight"}:
            raise ObservableError(f"term entries need exactly 'pauli' and 'weight': {entry!r}")
        if not isinstance(entry["weight"], (int, float)) or isinstance(entry["weight"], bool):
            raise ObservableError(f"weight must be a number: {entry!r}")
        terms.append((float(entry["weight"]), PauliString(str(entry["pauli"]))))
    return ObservableSum(num_qubits, terms)


def load_observable(path) -> ObservableSum:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_observable(fh.read())


def shift_square(obs: ObservableSum, gamma: float) -> ObservableSum:
    """Squared spectral shift: returns the observable (H - gamma*1)^2.

    The square is expanded back into Pauli-string form via single-qubit
    products with tracked phases.  For Hermitian (real-weight) input all
    imaginary contributions cancel pairwise; a residual imaginary weight above
    1e-12 is a hard error, smaller residues are dropped.

    Every eigenvalue lambda of ``obs`` maps to (lambda - gamma)^2, so
    minimizing the shifted observable targets the eigenvalue nearest gamma.
    """
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise ObservableError("gamma must be finite")
    identity = PauliString("I" * obs.num_qubits)
    shifted: dict[str, complex] = {}
    for w, p in obs.terms:
        shifted[p.ops] = shifted.get(p.ops, 0.0) + w
    shifted[identity.ops] = shifted.get(identity.ops, 0.0) - gamma

    acc: dict[str, complex] = {}
    items = [(PauliString(ops), w) for ops, w in shifted.items()]
    for pa, wa in items:
        for pb, wb in items:
            phase, prod = multiply_pauli_strings(pa, pb)
            acc[prod.ops] = acc.get(prod.ops, 0.0) + wa * wb * phase

    terms = []
    for ops, w in acc.items():
        if abs(w.imag) > 1e-12:
            raise ObservableError(
                f"non-Hermitian residue: term {ops!r} has imaginary weight {w.imag:g}"
            )
        terms.append((w.real, PauliString(ops)))
    return ObservableSum(obs.num_qubits, terms)


def exact_spectrum(obs: ObservableSum) -> Spectrum:
    """Dense-diagonalization oracle: all eigenvalues of the assembled matrix.

    Feasible for ``num_qubits <= MAX_DENSE_QUBITS`` only.
    """
    if obs.num_qubits > MAX_DENSE_QUBITS:
        raise ObservableError(
            f"dense oracle limited to {MAX_DENSE_QUBITS} qubits, got {obs.num_qubits}"
        )
    m = obs.matrix()
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.conj().T)) > _HERMITICITY_TOLERANCE * scale:
        raise ObservableError("assembled matrix is not Hermitian")
    eigenvalues = np.linalg.eigvalsh(m)
    return Spectrum(eigenvalues=eigenvalues, min_eigenvalue=float(eigenvalues[0]))
