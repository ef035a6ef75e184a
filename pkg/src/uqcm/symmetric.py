"""Occupation-number representation of the symmetric subspace.

A symmetric basis state |m> = |m_1,...,m_d> is the normalized sum of all
product strings with ``m_j`` factors in level |j> (slot j counts the
0-based computational level j, so at d=2 the vector (2,0) embeds to |00>).
The polynomial-size occupation representation is used for all production
paths; :func:`embed` and friends bridge to the exponential full tensor
space, which serves only as the verification oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .combinatorics import (
    OccupationVector,
    enumerate_occupations,
    splitting_coefficient,
    sym_dim,
)
from .hilbert import (
    FullDensity,
    FullState,
    PureState,
    check_cap,
)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = -1e-10


@dataclass(frozen=True)
class SymBasis:
    """Canonically ordered occupation basis of the symmetric subspace."""

    d: int
    total: int
    vectors: tuple[OccupationVector, ...]

    @classmethod
    def build(cls, d: int, total: int) -> "SymBasis":
        return _cached_basis(d, total)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def index(self, m: OccupationVector) -> int:
        try:
            return _cached_index(self.d, self.total)[m]
        except KeyError:
            raise ValueError(f"{m} is not a basis vector of ({self.d},{self.total})")


@lru_cache(maxsize=None)
def _cached_basis(d: int, total: int) -> SymBasis:
    return SymBasis(d=d, total=total, vectors=tuple(enumerate_occupations(d, total)))


@lru_cache(maxsize=None)
def _cached_index(d: int, total: int) -> dict[OccupationVector, int]:
    return {m: i for i, m in enumerate(_cached_basis(d, total).vectors)}


@dataclass(frozen=True)
class SymVector:
    """Complex coefficients over a symmetric basis."""

    basis: SymBasis
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size != self.basis.dim:
            raise ValueError(
                f"{amps.size} amplitudes for a basis of dimension {self.basis.dim}"
            )
        if self.normalized and abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            raise ValueError("amplitudes flagged normalized but norm != 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class SymDensity:
    """Density operator over a symmetric occupation basis."""

    basis: SymBasis
    matrix: np.ndarray
    validate: bool = True

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        dim = self.basis.dim
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match dim {dim}")
        if self.validate:
            if np.abs(mat - mat.conj().T).max() > HERMITICITY_TOL:
                raise ValueError("symmetric density is not Hermitian")
            if abs(np.trace(mat).real - 1.0) > TRACE_TOL:
                raise ValueError(f"symmetric density trace {np.trace(mat)} != 1")
            if np.linalg.eigvalsh(mat).min() < PSD_TOL:
                raise ValueError("symmetric density is not positive semidefinite")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def embed(m: OccupationVector) -> FullState:
    """Normalized permutation-invariant full-space state with occupation m."""
    d, total = m.d, m.total
    check_cap(d, total)
    column = _embed_isometry(d, total)[:, SymBasis.build(d, total).index(m)]
    return FullState(column.astype(np.complex128), factors=total, local_dim=d)


def embed_isometry(d: int, total: int) -> np.ndarray:
    """d^total x sym_dim matrix whose columns are the embedded basis states."""
    check_cap(d, total)
    return _embed_isometry(d, total)


@lru_cache(maxsize=None)
def _embed_isometry(d: int, total: int) -> np.ndarray:
    basis = _cached_basis(d, total)
    index = _cached_index(d, total)
    iso = np.zeros((d**total, basis.dim), dtype=np.float64)
    if total == 0:
        iso[0, 0] = 1.0
        iso.setflags(write=False)
        return iso
    # One pass over all product strings; multiplicity of occupation m is
    # total!/prod(m_j!), so each string contributes 1/sqrt(multiplicity).
    for row, string in enumerate(product(range(d), repeat=total)):
        counts = [0] * d
        for level in string:
            counts[level] += 1
        iso[row, index[OccupationVector(tuple(counts))]] = 1.0
    iso /= np.sqrt(iso.sum(axis=0))
    iso.setflags(write=False)
    return iso


def projector_full(d: int, total: int) -> np.ndarray:
    """Orthogonal projector onto the symmetric subspace, as a d^total matrix."""
    iso = embed_isometry(d, total)
    return iso @ iso.T


def sym_to_full_state(v: SymVector) -> FullState:
    iso = embed_isometry(v.basis.d, v.basis.total)
    return FullState(iso @ v.amplitudes, factors=v.basis.total, local_dim=v.basis.d)


def sym_to_full_density(rho: SymDensity) -> FullDensity:
    iso = embed_isometry(rho.basis.d, rho.basis.total)
    return FullDensity(
        iso @ rho.matrix @ iso.T,
        factors=rho.basis.total,
        local_dim=rho.basis.d,
        validate=rho.validate,
    )


def full_to_sym_density(rho: FullDensity, validate: bool = True) -> SymDensity:
    """Compress a full-space density with symmetric support into the occupation basis."""
    iso = embed_isometry(rho.local_dim, rho.factors)
    basis = SymBasis.build(rho.local_dim, rho.factors)
    return SymDensity(basis=basis, matrix=iso.T @ rho.matrix @ iso, validate=validate)


def sym_unitary(u: np.ndarray, total: int) -> np.ndarray:
    """Restriction of u^(x total) to the symmetric subspace (a dim x dim unitary)."""
    d = u.shape[0]
    iso = embed_isometry(d, total)
    power = np.eye(1, dtype=np.complex128)
    for _ in range(total):
        power = np.kron(power, u)
    return iso.T @ power @ iso


def expand_power(phi: PureState, copies: int) -> SymVector:
    """Occupation-basis coefficients of the tensor power |phi>^(x copies).

    The amplitude on |n> is sqrt(copies!) * prod_j x_j^{n_j} / sqrt(n_j!);
    the result is normalized because |phi>^(x copies) already lives in the
    symmetric subspace.
    """
    if copies < 1:
        raise ValueError(f"need at least one copy, got {copies}")
    basis = SymBasis.build(phi.dim, copies)
    amps = np.empty(basis.dim, dtype=np.complex128)
    root_cfac = math.sqrt(math.factorial(copies))
    for i, n in enumerate(basis.vectors):
        term = root_cfac
        for xj, nj in zip(phi.amplitudes, n):
            term = term * xj**nj / math.sqrt(math.factorial(nj))
        amps[i] = term
    return SymVector(basis=basis, amplitudes=amps, normalized=True)


@dataclass(frozen=True)
class PairProjection:
    """Symmetric projection of n maximally entangled pairs, Schmidt-diagonal.

    The projected state is proportional to sum_k |k>|k> over all
    occupations k of n particles: equal Schmidt weight on every |k>|k>.
    ``full_space_prefactor`` is the constant c in

        (s_n x I^(x n)) |Phi+>^(x n) = c * sum_k |k>|k>,

    namely d^(-n/2); ``norm`` is the length sqrt(dim) of the unnormalized
    sum itself.
    """

    basis: SymBasis
    schmidt_weights: np.ndarray
    full_space_prefactor: float
    norm: float


def project_entangled_pairs(d: int, n: int) -> PairProjection:
    """Schmidt form of n entangled pairs after projecting the front halves."""
    if n < 1:
        raise ValueError(f"need at least one pair, got {n}")
    basis = SymBasis.build(d, n)
    weights = np.ones(basis.dim)
    weights.setflags(write=False)
    return PairProjection(
        basis=basis,
        schmidt_weights=weights,
        full_space_prefactor=d ** (-n / 2),
        norm=math.sqrt(basis.dim),
    )


def reduce_symmetric(rho: SymDensity, kept: int) -> SymDensity:
    """Partial trace down to ``kept`` qudits, natively in the occupation basis.

    Entries follow the two-group splitting of each |m>:

        rho_L[a, b] = sum_k f(a+k, k) f(b+k, k) rho[a+k, b+k]

    with f the splitting coefficient for total qudits split as
    (kept, total - kept).  Agrees with the full-space partial trace over
    any choice of traced factors.
    """
    total, d = rho.basis.total, rho.basis.d
    if not 1 <= kept <= total:
        raise ValueError(f"kept count {kept} outside 1..{total}")
    if kept == total:
        return rho
    basis_l = SymBasis.build(d, kept)
    basis_k = SymBasis.build(d, total - kept)
    coeff = np.zeros((basis_l.dim, basis_k.dim))
    where = np.zeros((basis_l.dim, basis_k.dim), dtype=np.intp)
    for ai, a in enumerate(basis_l.vectors):
        for ki, k in enumerate(basis_k.vectors):
            m = a.add(k)
            coeff[ai, ki] = splitting_coefficient(m, k, total, kept)
            where[ai, ki] = rho.basis.index(m)
    out = np.zeros((basis_l.dim, basis_l.dim), dtype=np.complex128)
    for ki in range(basis_k.dim):
        f = coeff[:, ki]
        idx = where[:, ki]
        out += (f[:, None] * f[None, :]) * rho.matrix[np.ix_(idx, idx)]
    return SymDensity(basis=basis_l, matrix=out, validate=rho.validate)


def sym_dimension(d: int, total: int) -> int:
    """Convenience re-export of the symmetric-subspace dimension."""
    return sym_dim(d, total)
