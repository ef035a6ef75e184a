"""Dense complex linear algebra over full tensor-product spaces.

This is the brute-force substrate every fast path is verified against:
states and density operators live over the full ``d^n``-dimensional
product basis with no symmetry compression.  Factor 0 is the leftmost
(most significant) position in the computational index, so a composite
built by :func:`tensor` keeps the left operand's factors in front.

All sizes are capped at :data:`ORACLE_CAP` amplitudes; requests beyond
that fail fast instead of exhausting memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Largest full-space state (in amplitudes) the oracle will build.
ORACLE_CAP = 4096

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = -1e-10
NORM_TOL = 1e-12


class OracleCapError(ValueError):
    """Raised when a full-tensor computation would exceed ORACLE_CAP."""


def check_cap(local_dim: int, factors: int) -> None:
    size = local_dim**factors
    if size > ORACLE_CAP:
        raise OracleCapError(
            f"{factors} factors of dimension {local_dim} need {size} amplitudes, "
            f"above the oracle cap of {ORACLE_CAP}"
        )


@dataclass(frozen=True)
class PureState:
    """Single-qudit pure state: complex amplitudes over levels |0>..|d-1>."""

    amplitudes: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size < 2:
            raise ValueError("qudit dimension must be >= 2")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise ValueError("pure state amplitudes are not normalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dim", amps.size)

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm)

    @classmethod
    def basis(cls, d: int, level: int) -> "PureState":
        amps = np.zeros(d, dtype=np.complex128)
        amps[level] = 1.0
        return cls(amps)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class FullState:
    """Pure state of ``factors`` qudits as a dense vector of d^factors amplitudes."""

    amplitudes: np.ndarray
    factors: int
    local_dim: int

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size != self.local_dim**self.factors:
            raise ValueError(
                f"{amps.size} amplitudes do not match "
                f"{self.local_dim}^{self.factors} factors"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FullState":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return FullState(self.amplitudes / n, self.factors, self.local_dim)

    def overlap(self, other: "FullState") -> complex:
        """<self|other>."""
        _check_same_space(self, other)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density(self) -> "FullDensity":
        return FullDensity(
            np.outer(self.amplitudes, self.amplitudes.conj()),
            self.factors,
            self.local_dim,
        )


@dataclass(frozen=True)
class FullDensity:
    """Density operator on ``factors`` qudits, validated on construction."""

    matrix: np.ndarray
    factors: int
    local_dim: int
    validate: bool = True

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        dim = self.local_dim**self.factors
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match dim {dim}")
        if self.validate:
            if np.abs(mat - mat.conj().T).max() > HERMITICITY_TOL:
                raise ValueError("density matrix is not Hermitian")
            if abs(np.trace(mat).real - 1.0) > TRACE_TOL:
                raise ValueError(f"density matrix trace {np.trace(mat)} != 1")
            if np.linalg.eigvalsh(mat).min() < PSD_TOL:
                raise ValueError("density matrix is not positive semidefinite")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def maximally_entangled(d: int) -> FullState:
    """The two-qudit state with amplitude 1/sqrt(d) on every |jj>."""
    if d < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {d}")
    amps = np.zeros(d * d, dtype=np.complex128)
    amps[np.arange(d) * d + np.arange(d)] = 1.0 / math.sqrt(d)
    return FullState(amps, factors=2, local_dim=d)


def tensor(a, b):
    """Kronecker composite; the left operand occupies the leading factors."""
    if isinstance(a, FullState) and isinstance(b, FullState):
        _check_same_dim(a, b)
        check_cap(a.local_dim, a.factors + b.factors)
        return FullState(
            np.kron(a.amplitudes, b.amplitudes), a.factors + b.factors, a.local_dim
        )
    if isinstance(a, FullDensity) and isinstance(b, FullDensity):
        _check_same_dim(a, b)
        check_cap(a.local_dim, a.factors + b.factors)
        return FullDensity(
            np.kron(a.matrix, b.matrix),
            a.factors + b.factors,
            a.local_dim,
            validate=False,
        )
    raise TypeError("tensor expects two FullState or two FullDensity operands")


def permute_factors(state: FullState, perm) -> FullState:
    """Reorder tensor factors: new factor i is old factor perm[i]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(state.factors)):
        raise ValueError(f"{perm} is not a permutation of 0..{state.factors - 1}")
    shaped = state.amplitudes.reshape((state.local_dim,) * state.factors)
    return FullState(
        np.ascontiguousarray(shaped.transpose(perm)).ravel(),
        state.factors,
        state.local_dim,
    )


def partial_trace(rho: FullDensity, keep) -> FullDensity:
    """Reduced density operator on the kept factors (ascending original order)."""
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= rho.factors:
        raise ValueError(f"keep indices {keep} outside 0..{rho.factors - 1}")
    n, d = rho.factors, rho.local_dim
    shaped = rho.matrix.reshape((d,) * (2 * n))
    row_labels = list(range(n))
    col_labels = [i if i not in keep else n + i for i in range(n)]
    out_labels = keep + [n + i for i in keep]
    reduced = np.einsum(shaped, row_labels + col_labels, out_labels)
    dim = d ** len(keep)
    return FullDensity(
        reduced.reshape(dim, dim), len(keep), d, validate=rho.validate
    )


def partial_trace_state(psi: FullState, keep) -> FullDensity:
    """Partial trace of |psi><psi| without forming the full outer product."""
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= psi.factors:
        raise ValueError(f"keep indices {keep} outside 0..{psi.factors - 1}")
    traced = [i for i in range(psi.factors) if i not in keep]
    moved = permute_factors(psi, keep + traced)
    d = psi.local_dim
    block = moved.amplitudes.reshape(d ** len(keep), d ** len(traced))
    return FullDensity(block @ block.conj().T, len(keep), d)


def fidelity_pure(rho: FullDensity, psi: FullState) -> float:
    """<psi|rho|psi> as a real number."""
    if rho.factors != psi.factors or rho.local_dim != psi.local_dim:
        raise ValueError("state and density operator live on different spaces")
    value = complex(psi.amplitudes.conj() @ rho.matrix @ psi.amplitudes)
    if abs(value.imag) > 1e-12:
        raise ValueError(f"fidelity came out non-real: {value}")
    return value.real


def trace_distance(a: FullDensity, b: FullDensity) -> float:
    """Half the sum of singular values of a - b."""
    _check_same_space(a, b)
    return 0.5 * float(np.linalg.svd(a.matrix - b.matrix, compute_uv=False).sum())


def trace_distance_matrices(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance between two raw Hermitian matrices of equal shape."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return 0.5 * float(np.linalg.svd(a - b, compute_uv=False).sum())


def as_generator(seed) -> np.random.Generator:
    """Accept an int seed or a Generator; global RNG state is never used."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed d x d unitary via QR of a complex Gaussian matrix."""
    rng = as_generator(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    # Fixing the phases of R's diagonal makes the distribution exactly Haar.
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_pure_state(d: int, seed) -> PureState:
    """Haar-random qudit state (first column of a Haar unitary)."""
    return PureState(random_unitary(d, seed)[:, 0])


@dataclass(frozen=True)
class GeneralizedPauli:
    """Shift-and-phase unitary U_{jl} with <a|U|b> = omega^{lb} delta(a, b+j mod d)."""

    d: int
    j: int
    l: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {self.d}")
        if not (0 <= self.j < self.d and 0 <= self.l < self.d):
            raise ValueError(f"indices ({self.j},{self.l}) outside 0..{self.d - 1}")

    def matrix(self) -> np.ndarray:
        omega = np.exp(2j * np.pi / self.d)
        mat = np.zeros((self.d, self.d), dtype=np.complex128)
        for b in range(self.d):
            mat[(b + self.j) % self.d, b] = omega ** (self.l * b)
        return mat

    def entangled_state(self) -> FullState:
        """(U_{jl} x I) applied to the maximally entangled pair."""
        pair = maximally_entangled(self.d)
        amps = (np.kron(self.matrix(), np.eye(self.d)) @ pair.amplitudes)
        return FullState(amps, factors=2, local_dim=self.d)


def _check_same_dim(a, b) -> None:
    if a.local_dim != b.local_dim:
        raise ValueError(f"local dimensions differ: {a.local_dim} vs {b.local_dim}")


def _check_same_space(a, b) -> None:
    if a.local_dim != b.local_dim or a.factors != b.factors:
        raise ValueError("operands live on different tensor spaces")
