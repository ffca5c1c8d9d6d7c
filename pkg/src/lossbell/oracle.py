"""Brute-force statevector ground truth.

Everything here is numeric (complex128) and independent of the closed-form
engine: the state is built by a circuit construction and then validated
against its defining eigenvalue equations, and expectations are computed
directly from amplitudes.

Conventions
-----------
* Qubit k is bit k of the basis-state index (qubit 0 = least significant).
* Lossy expectations use the product identity
  <P>_rho = <phi| P restricted to survivors |phi> * prod over lost sites of
  <s|P_site|s>, where |s> is the single-qubit replacement state.  The dense
  density-matrix path exists only as a second opinion and is capped lower.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bell import WeightedStabilizerSum
from .errors import SizeCapExceededError, VerificationError
from .graphs import Graph
from .pauli import PauliString, stabilizer

DEFAULT_STATE_CAP = 14
DENSE_RHO_CAP = 10
STATE_TOL = 1e-10
EXPECTATION_TOL = 1e-9

REPLACEMENTS = ("zero", "one", "mixed")


def _bit_parity(indices: np.ndarray, mask: int) -> np.ndarray:
    out = np.zeros(indices.shape, dtype=bool)
    while mask:
        k = (mask & -mask).bit_length() - 1
        out ^= ((indices >> k) & 1).astype(bool)
        mask &= mask - 1
    return out


@lru_cache(maxsize=64)
def graph_state(g: Graph, cap: int = DEFAULT_STATE_CAP) -> np.ndarray:
    """Common +1 eigenvector of all vertex generators, as dense amplitudes.

    Built as the uniform superposition with a controlled-Z sign per edge,
    then verified against every eigenvalue equation; the verification, not
    the circuit, is the contract.  Results are cached and returned read-only
    (copy before mutating).
    """
    if g.n > cap:
        raise SizeCapExceededError(f"n={g.n} exceeds statevector cap {cap}")
    dim = 1 << g.n
    idx = np.arange(dim)
    amps = np.full(dim, 2 ** (-g.n / 2), dtype=complex)
    for i, j in g.edges:
        both = ((idx >> i) & (idx >> j) & 1).astype(bool)
        amps[both] *= -1
    for i in range(g.n):
        if np.max(np.abs(apply_pauli(amps, stabilizer(g, i)) - amps)) > STATE_TOL:
            raise VerificationError(
                f"constructed state is not fixed by the generator of vertex {i}"
            )
    amps.flags.writeable = False
    return amps


def apply_pauli(state: np.ndarray, p: PauliString) -> np.ndarray:
    if len(state) != 1 << p.n:
        raise ValueError("state dimension does not match the Pauli string")
    idx = np.arange(len(state))
    src = idx ^ p.x_bits
    y_count = (p.x_bits & p.z_bits).bit_count()
    coeff = 1j ** ((p.phase_pow + y_count) % 4)
    out = state[src] * coeff
    flip = _bit_parity(src, p.z_bits)
    out[flip] = -out[flip]
    return out


def expectation(state: np.ndarray, p: PauliString) -> float:
    """<state|P|state>; the imaginary part (zero for Hermitian P) is dropped."""
    return float(np.vdot(state, apply_pauli(state, p)).real)


class LossyState:
    """A graph state with some qubits traced out and replaced.

    Semantically the density matrix is the survivors' marginal tensored with
    a fixed state on each lost site; the default replacement is |0><0|.
    """

    def __init__(
        self, graph: Graph, loss: frozenset[int], cap: int = DEFAULT_STATE_CAP
    ) -> None:
        loss = frozenset(loss)
        if not loss <= graph.vertices:
            raise ValueError("loss set contains out-of-range vertices")
        if len(loss) >= graph.n:
            raise ValueError("losing every qubit is not allowed")
        self.graph = graph
        self.loss = loss
        self.state = graph_state(graph, cap)
        self._loss_mask = 0
        for l in loss:
            self._loss_mask |= 1 << l

    def pauli_expectation(self, p: PauliString, replacement: str = "zero") -> float:
        if p.n != self.graph.n:
            raise ValueError("Pauli string does not cover every qubit")
        if replacement not in REPLACEMENTS:
            raise ValueError(f"unknown replacement {replacement!r}")
        if p.x_bits & self._loss_mask:
            return 0.0  # X or Y on a lost site has zero overlap in every convention
        z_lost = p.z_bits & self._loss_mask
        if replacement == "zero":
            factor = 1.0
        elif replacement == "one":
            factor = (-1.0) ** z_lost.bit_count()
        else:
            factor = 0.0 if z_lost else 1.0
        if factor == 0.0:
            return 0.0
        survivor_part = PauliString(
            p.n, p.x_bits, p.z_bits & ~self._loss_mask, p.phase_pow
        )
        return factor * expectation(self.state, survivor_part)

    def bell_expectation(
        self,
        op: WeightedStabilizerSum | np.ndarray,
        positions: tuple[int, ...] | None = None,
        replacement: str = "zero",
    ) -> float:
        """Expectation of a Bell operator on the lossy state.

        ``positions`` embeds an operator built on a smaller register (e.g.
        the subgraph of the survivors of a hypothesized loss) into this
        state's qubits.  Dense ndarray operators take the dense-rho path and
        must respect its lower cap.
        """
        if isinstance(op, np.ndarray):
            rho = dense_lossy_density_matrix(self.graph, self.loss, replacement)
            return dense_expectation(rho, op)
        total = 0.0
        for _, coeff, pauli in op.terms:
            if positions is not None:
                pauli = pauli.embed(positions, self.graph.n)
            total += float(coeff) * self.pauli_expectation(pauli, replacement)
        return total


def dense_lossy_density_matrix(
    g: Graph,
    loss: frozenset[int],
    replacement: str = "zero",
    cap: int = DENSE_RHO_CAP,
) -> np.ndarray:
    """Materialize the full post-loss density matrix (second-opinion path)."""
    if g.n > cap:
        raise SizeCapExceededError(f"n={g.n} exceeds dense-rho cap {cap}")
    if replacement not in REPLACEMENTS:
        raise ValueError(f"unknown replacement {replacement!r}")
    loss = frozenset(loss)
    psi = graph_state(g)
    kept = [i for i in range(g.n) if i not in loss]
    lost = sorted(loss)
    if not lost:
        return np.outer(psi, psi.conj())

    # permuted layout: kept sites at the low bits, lost sites above them
    dim = 1 << g.n
    perm = np.zeros(dim, dtype=np.int64)
    for new_pos, old_pos in enumerate(kept + lost):
        perm |= ((np.arange(dim) >> old_pos) & 1) << new_pos
    psi_perm = np.zeros(dim, dtype=complex)
    psi_perm[perm] = psi
    m = psi_perm.reshape(1 << len(lost), 1 << len(kept))
    sigma = m.T @ m.conj()

    if replacement == "zero":
        single = np.array([[1, 0], [0, 0]], dtype=complex)
    elif replacement == "one":
        single = np.array([[0, 0], [0, 1]], dtype=complex)
    else:
        single = np.eye(2, dtype=complex) / 2
    rep = np.array([[1]], dtype=complex)
    for _ in lost:
        rep = np.kron(rep, single)

    rho_perm = np.kron(rep, sigma)
    return rho_perm[np.ix_(perm, perm)]


def dense_expectation(rho: np.ndarray, op: np.ndarray) -> float:
    return float(np.trace(rho @ op).real)


def replacement_invariance(
    g: Graph,
    loss: frozenset[int],
    op: WeightedStabilizerSum,
    positions: tuple[int, ...] | None = None,
    tol: float = EXPECTATION_TOL,
) -> bool:
    """True iff |0>, |1> and maximally-mixed replacements agree on <op>."""
    lossy = LossyState(g, loss)
    values = [
        lossy.bell_expectation(op, positions, replacement=rep)
        for rep in REPLACEMENTS
    ]
    return max(values) - min(values) <= tol


def basis_block_weights(state: np.ndarray, sites: frozenset[int]) -> np.ndarray:
    """Norms of the amplitude blocks for each assignment of the given sites.

    Entry s is the norm of the state's component whose bits on ``sites``
    (in ascending site order) spell the integer s.
    """
    sites_sorted = sorted(sites)
    idx = np.arange(len(state))
    keys = np.zeros(len(state), dtype=np.int64)
    for pos, site in enumerate(sites_sorted):
        keys |= ((idx >> site) & 1) << pos
    weights = np.bincount(
        keys, weights=np.abs(state) ** 2, minlength=1 << len(sites_sorted)
    )
    return np.sqrt(weights)
