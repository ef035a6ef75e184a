"""Universal qudit cloning machines and their asymmetric variants.

Three equivalent constructions of the optimal N -> M universal cloner are
implemented as independent code paths so they can be cross-checked:

* ``werner_output``  — projector form: rescaled symmetric projection of
  the input copies padded with maximally mixed blanks; the fast path
  evaluates the closed-form occupation-basis entries directly.
* ``fan_output``     — amplitude form: the explicit transformation on
  symmetric basis states, kept as a pure joint state with a
  symmetric-occupation ancilla, then traced.
* ``unified_output`` — entangled-pair form: symmetric projection of the
  inputs together with one half of M-N maximally entangled pairs, the
  other halves acting as the ancilla.

Each machine has a polynomial-size fast path in the occupation basis;
``*_oracle`` variants rebuild the same object in the full tensor space
(subject to the oracle cap) for verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .combinatorics import OccupationVector, binomial, splitting_coefficient, sym_dim
from .hilbert import (
    FullDensity,
    FullState,
    PureState,
    check_cap,
    maximally_entangled,
    partial_trace_state,
    fidelity_pure,
    permute_factors,
    tensor,
)
from .symmetric import (
    SymBasis,
    SymDensity,
    SymVector,
    expand_power,
    projector_full,
)


@dataclass(frozen=True)
class CloneSpec:
    """Cloning-problem parameters (d, n_in, m_out) and derived constants."""

    d: int
    n_in: int
    m_out: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {self.d}")
        if not 1 <= self.n_in <= self.m_out:
            raise ValueError(
                f"need 1 <= n_in <= m_out, got n_in={self.n_in}, m_out={self.m_out}"
            )

    @property
    def dim_in(self) -> int:
        return sym_dim(self.d, self.n_in)

    @property
    def dim_out(self) -> int:
        return sym_dim(self.d, self.m_out)

    @property
    def eta_sq(self) -> Fraction:
        """Exact square of the normalization constant of the amplitude form."""
        d, n, m = self.d, self.n_in, self.m_out
        return Fraction(
            math.factorial(m - n) * math.factorial(n + d - 1),
            math.factorial(m + d - 1),
        )

    @property
    def eta(self) -> float:
        sq = self.eta_sq
        return math.sqrt(sq.numerator / sq.denominator)


@dataclass(frozen=True)
class MachineOutput:
    """Result of a symmetric cloning machine.

    ``joint_sym``, when present, is the normalized pure joint state as a
    (dim_out x dim_ancilla) coefficient matrix over occupation bases;
    tracing its ancilla index reproduces ``density``.  ``lam`` is the
    normalization applied after projection (1.0 for machines whose
    construction is already norm-preserving).
    """

    density: SymDensity
    lam: float
    machine_tag: str
    joint_sym: np.ndarray | None = None
    joint_full: FullState | None = None


def werner_output(spec: CloneSpec, phi: PureState) -> SymDensity:
    """Projector-form cloner, evaluated entrywise in the occupation basis.

    Entry (m, m') carries n_in! * eta^2 times the sum over ancilla-sized
    occupations k <= m, m' of

        prod_j x_j^{m_j-k_j} conj(x_j)^{m'_j-k_j}
               * sqrt(m_j! m'_j!) / ((m_j-k_j)! (m'_j-k_j)! k_j!).
    """
    _check_phi(spec, phi)
    d, n, m_total = spec.d, spec.n_in, spec.m_out
    basis_out = SymBasis.build(d, m_total)
    basis_anc = SymBasis.build(d, m_total - n)
    x = phi.amplitudes
    prefactor = float(Fraction(math.factorial(n)) * spec.eta_sq)
    root_fac = [math.sqrt(math.factorial(t)) for t in range(m_total + 1)]
    fac = [math.factorial(t) for t in range(m_total + 1)]

    mat = np.zeros((basis_out.dim, basis_out.dim), dtype=np.complex128)
    for i, m in enumerate(basis_out.vectors):
        for ip, mp in enumerate(basis_out.vectors):
            acc = 0.0 + 0.0j
            for k in basis_anc.vectors:
                if not (m.contains(k) and mp.contains(k)):
                    continue
                term = 1.0 + 0.0j
                for j in range(d):
                    mj, mpj, kj = m[j], mp[j], k[j]
                    term *= x[j] ** (mj - kj) * np.conj(x[j]) ** (mpj - kj)
                    term *= root_fac[mj] * root_fac[mpj]
                    term /= fac[mj - kj] * fac[mpj - kj] * fac[kj]
                acc += term
            mat[i, ip] = prefactor * acc
    return SymDensity(basis=basis_out, matrix=mat)


def werner_output_oracle(spec: CloneSpec, phi: PureState) -> FullDensity:
    """Projector-form cloner built literally in the full tensor space."""
    _check_phi(spec, phi)
    d, n, m_total = spec.d, spec.n_in, spec.m_out
    check_cap(d, m_total)
    sigma = phi.density()
    block = np.eye(1, dtype=np.complex128)
    for _ in range(n):
        block = np.kron(block, sigma)
    block = np.kron(block, np.eye(d ** (m_total - n), dtype=np.complex128))
    proj = projector_full(d, m_total)
    out = (sym_dim(d, n) / sym_dim(d, m_total)) * (proj @ block @ proj)
    return FullDensity(out, factors=m_total, local_dim=d)


def fan_output(spec: CloneSpec, phi: PureState) -> MachineOutput:
    """Amplitude-form cloner: pure joint state with occupation ancilla, then traced."""
    _check_phi(spec, phi)
    d, n_total, m_total = spec.d, spec.n_in, spec.m_out
    basis_out = SymBasis.build(d, m_total)
    basis_anc = SymBasis.build(d, m_total - n_total)
    inputs = expand_power(phi, n_total)
    eta = spec.eta

    joint = np.zeros((basis_out.dim, basis_anc.dim), dtype=np.complex128)
    for n, c_n in zip(inputs.basis.vectors, inputs.amplitudes):
        for ki, k in enumerate(basis_anc.vectors):
            amp = 1.0
            for nj, kj in zip(n, k):
                amp *= math.factorial(nj + kj) / (
                    math.factorial(nj) * math.factorial(kj)
                )
            joint[basis_out.index(n.add(k)), ki] += eta * c_n * math.sqrt(amp)

    norm = np.linalg.norm(joint)
    if abs(norm - 1.0) > 1e-12:
        raise AssertionError(f"amplitude-form joint state has norm {norm}")
    density = SymDensity(basis=basis_out, matrix=joint @ joint.conj().T)
    return MachineOutput(density=density, lam=1.0, machine_tag="fan", joint_sym=joint)


@dataclass(frozen=True)
class PureJointExpansion:
    """Unnormalized joint expansion of the entangled-pair cloner on one |n>.

    ``coefficients[m, k]`` multiplies |m>|k>; the whole matrix is real.
    ``normalization`` is its Frobenius norm (equal to 1/eta for every
    input occupation).  ``oracle_prefactor`` is the global constant
    relating these coefficients to the literal full-space projection of
    |n> next to the entangled-pair halves.
    """

    basis_out: SymBasis
    basis_anc: SymBasis
    coefficients: np.ndarray
    normalization: float
    oracle_prefactor: float


def unified_pure_output(spec: CloneSpec, n: OccupationVector) -> PureJointExpansion:
    """Entangled-pair cloner acting on a single symmetric input |n>.

    Built from the two-group splitting relation: projecting |n>|k> into
    the symmetric subspace of all m_out qudits leaves |n+k> with the
    splitting coefficient of that division, so the joint output is
    sum_k sqrt(C(m_out, n_in)) * f(n+k, k) |n+k>|k>.
    """
    if n.total != spec.n_in or n.d != spec.d:
        raise ValueError(f"input occupation {n} does not match {spec}")
    d, n_total, m_total = spec.d, spec.n_in, spec.m_out
    basis_out = SymBasis.build(d, m_total)
    basis_anc = SymBasis.build(d, m_total - n_total)
    root_choose = math.sqrt(binomial(m_total, n_total))

    coeff = np.zeros((basis_out.dim, basis_anc.dim))
    for ki, k in enumerate(basis_anc.vectors):
        m = n.add(k)
        coeff[basis_out.index(m), ki] = root_choose * splitting_coefficient(
            m, k, m_total, n_total
        )
    return PureJointExpansion(
        basis_out=basis_out,
        basis_anc=basis_anc,
        coefficients=coeff,
        normalization=float(np.linalg.norm(coeff)),
        oracle_prefactor=d ** (-(m_total - n_total) / 2) / root_choose,
    )


def unified_output(spec: CloneSpec, phi: PureState) -> MachineOutput:
    """Entangled-pair cloner on identical pure inputs, fast path.

    Extends :func:`unified_pure_output` linearly over the expansion of
    |phi>^(x n_in), records the normalization ``lam`` removed after the
    projection, and traces the ancilla occupations.
    """
    _check_phi(spec, phi)
    inputs = expand_power(phi, spec.n_in)
    basis_out = SymBasis.build(spec.d, spec.m_out)
    basis_anc = SymBasis.build(spec.d, spec.m_out - spec.n_in)

    raw = np.zeros((basis_out.dim, basis_anc.dim), dtype=np.complex128)
    for n, c_n in zip(inputs.basis.vectors, inputs.amplitudes):
        expansion = unified_pure_output(spec, n)
        raw += c_n * expansion.oracle_prefactor * expansion.coefficients

    norm = np.linalg.norm(raw)
    lam = 1.0 / norm
    joint = lam * raw
    density = SymDensity(basis=basis_out, matrix=joint @ joint.conj().T)
    return MachineOutput(
        density=density, lam=lam, machine_tag="unified", joint_sym=joint
    )


@dataclass(frozen=True)
class UnifiedOracleResult:
    """Full-tensor-space evaluation of the entangled-pair cloner."""

    joint: FullState
    lam: float
    density: FullDensity


def unified_output_oracle(spec: CloneSpec, phi: PureState) -> UnifiedOracleResult:
    """Entangled-pair cloner built literally: project, normalize, trace.

    Factor layout of the joint state: the m_out copy slots first, then
    the m_out - n_in ancilla halves of the entangled pairs.
    """
    _check_phi(spec, phi)
    d, n_total, m_total = spec.d, spec.n_in, spec.m_out
    blanks = m_total - n_total
    check_cap(d, m_total + blanks)

    state = _pure_power(phi, n_total)
    for _ in range(blanks):
        state = tensor(state, maximally_entangled(d))
    # Pairs interleave as (half, ancilla); bring all copy halves forward.
    perm = list(range(n_total))
    perm += [n_total + 2 * t for t in range(blanks)]
    perm += [n_total + 2 * t + 1 for t in range(blanks)]
    state = permute_factors(state, perm)

    block = state.amplitudes.reshape(d**m_total, d**blanks)
    projected = projector_full(d, m_total) @ block
    norm = float(np.linalg.norm(projected))
    lam = 1.0 / norm
    joint = FullState(
        (lam * projected).ravel(), factors=m_total + blanks, local_dim=d
    )
    density = partial_trace_state(joint, range(m_total))
    return UnifiedOracleResult(joint=joint, lam=lam, density=density)


def explicit_1to2(d: int, phi: PureState) -> FullState:
    """Closed-form 1 -> 2 cloner as a pure state on (copy, copy, ancilla).

    On a basis input |l> the output is proportional to
    |ll>|l>_a + (1/2) sum_{j != l} (|lj> + |jl>) |j>_a, extended linearly;
    each basis image has squared norm (d+1)/2, so one global factor
    sqrt(2/(d+1)) normalizes the whole map.
    """
    if d != phi.dim:
        raise ValueError(f"state dimension {phi.dim} does not match d={d}")
    check_cap(d, 3)
    amps = np.zeros(d**3, dtype=np.complex128)
    for l, x_l in enumerate(phi.amplitudes):
        if x_l == 0:
            continue
        amps[(l * d + l) * d + l] += x_l
        for j in range(d):
            if j == l:
                continue
            amps[(l * d + j) * d + j] += 0.5 * x_l
            amps[(j * d + l) * d + j] += 0.5 * x_l
    amps *= math.sqrt(2.0 / (d + 1))
    state = FullState(amps, factors=3, local_dim=d)
    if abs(state.norm() - 1.0) > 1e-12:
        raise AssertionError(f"1->2 output has norm {state.norm()}")
    return state


@dataclass(frozen=True)
class AsymmetryWeights:
    """Nonnegative routing weights, one per n_in-subset of output slots.

    For the 1 -> 2 machine the two singleton subsets carry the familiar
    pair (alpha, beta).  Weights may be passed unnormalized; machines
    normalize internally and report the normalization they used.
    """

    weights: dict[tuple[int, ...], float]

    def __post_init__(self) -> None:
        cleaned: dict[tuple[int, ...], float] = {}
        for subset, w in self.weights.items():
            key = tuple(sorted(int(s) for s in subset))
            if len(set(key)) != len(key):
                raise ValueError(f"subset {subset} has repeated slots")
            if w < 0:
                raise ValueError(f"negative weight {w} for subset {subset}")
            cleaned[key] = float(w)
        if not cleaned or all(w == 0 for w in cleaned.values()):
            raise ValueError("at least one weight must be positive")
        object.__setattr__(self, "weights", cleaned)

    @classmethod
    def pair(cls, alpha: float, beta: float) -> "AsymmetryWeights":
        return cls({(0,): alpha, (1,): beta})

    @classmethod
    def equal(cls, n_in: int, m_out: int) -> "AsymmetryWeights":
        return cls({s: 1.0 for s in combinations(range(m_out), n_in)})

    @property
    def alpha(self) -> float:
        return self.weights.get((0,), 0.0)

    @property
    def beta(self) -> float:
        return self.weights.get((1,), 0.0)


@dataclass(frozen=True)
class AsymmetricPairResult:
    """1 -> 2 asymmetric cloner output: joint state, both clones, both fidelities."""

    joint: FullState
    clone_a: FullDensity
    clone_b: FullDensity
    fidelity_a: float
    fidelity_b: float
    normalization: float


def asymmetric_1to2(d: int, phi: PureState, w: AsymmetryWeights) -> AsymmetricPairResult:
    """Weighted superposition of routing the input into slot 1 or slot 2.

    The state alpha |phi>_1 |pair>_{2a} + beta |phi>_2 |pair>_{1a} is
    normalized accounting for the 2*alpha*beta/d overlap of the two
    (non-orthogonal) terms; clones are the single-slot reductions.
    """
    if d != phi.dim:
        raise ValueError(f"state dimension {phi.dim} does not match d={d}")
    check_cap(d, 3)
    alpha, beta = w.alpha, w.beta
    if alpha == 0 and beta == 0:
        raise ValueError("1->2 weights must include a positive alpha or beta")

    phi_state = FullState(phi.amplitudes, factors=1, local_dim=d)
    into_first = tensor(phi_state, maximally_entangled(d))
    into_second = permute_factors(tensor(maximally_entangled(d), phi_state), (0, 2, 1))

    raw = alpha * into_first.amplitudes + beta * into_second.amplitudes
    norm = float(np.linalg.norm(raw))
    joint = FullState(raw / norm, factors=3, local_dim=d)

    clone_a = partial_trace_state(joint, {0})
    clone_b = partial_trace_state(joint, {1})
    return AsymmetricPairResult(
        joint=joint,
        clone_a=clone_a,
        clone_b=clone_b,
        fidelity_a=fidelity_pure(clone_a, phi_state),
        fidelity_b=fidelity_pure(clone_b, phi_state),
        normalization=norm,
    )


@dataclass(frozen=True)
class WeightedCloneResult:
    """Exploratory general-asymmetry output; see :func:`weighted_clone`."""

    joint: FullState
    output: FullDensity
    slot_fidelities: tuple[float, ...]
    normalization: float
    machine_tag: str = field(default="weighted-exploratory")


def weighted_clone(
    spec: CloneSpec, phi: PureState, w: AsymmetryWeights
) -> WeightedCloneResult:
    """Exploratory: per-subset-weighted symmetrization of the pair construction.

    Every permutation of the output slots is applied to the base
    arrangement (inputs in the leading slots, pair halves behind) and
    weighted by w_S, where S is the slot subset that ends up holding the
    inputs; a subset's weight is shared uniformly by its whole
    permutation coset.  Equal weights reproduce the symmetric machine
    exactly, and (n_in=1, m_out=2) reduces to :func:`asymmetric_1to2`.
    No optimality is claimed for general weights; runs in full tensor
    space only.
    """
    _check_phi(spec, phi)
    d, n_total, m_total = spec.d, spec.n_in, spec.m_out
    blanks = m_total - n_total
    check_cap(d, m_total + blanks)

    expected = set(combinations(range(m_total), n_total))
    if set(w.weights) != expected:
        raise ValueError(
            f"weights must cover all {len(expected)} subsets of size "
            f"{n_total} from {m_total} slots"
        )

    base = _pure_power(phi, n_total)
    for _ in range(blanks):
        base = tensor(base, maximally_entangled(d))
    perm = list(range(n_total))
    perm += [n_total + 2 * t for t in range(blanks)]
    perm += [n_total + 2 * t + 1 for t in range(blanks)]
    base = permute_factors(base, perm)

    raw = np.zeros_like(base.amplitudes)
    anc = [m_total + t for t in range(blanks)]
    for copy_perm in permutations(range(m_total)):
        subset = tuple(sorted(i for i in range(m_total) if copy_perm[i] < n_total))
        weight = w.weights[subset]
        if weight == 0:
            continue
        raw = raw + weight * permute_factors(base, list(copy_perm) + anc).amplitudes

    norm = float(np.linalg.norm(raw))
    if norm == 0:
        raise ValueError("weighted combination vanished")
    joint = FullState(raw / norm, factors=m_total + blanks, local_dim=d)
    output = partial_trace_state(joint, range(m_total))
    phi_state = FullState(phi.amplitudes, factors=1, local_dim=d)
    fids = tuple(
        fidelity_pure(partial_trace_state(joint, {s}), phi_state)
        for s in range(m_total)
    )
    return WeightedCloneResult(
        joint=joint, output=output, slot_fidelities=fids, normalization=norm
    )


MACHINES = ("werner", "fan", "unified")


def run_machine(spec: CloneSpec, phi: PureState, which: str) -> SymDensity:
    """Fast-path output density of the named symmetric machine."""
    if which == "werner":
        return werner_output(spec, phi)
    if which == "fan":
        return fan_output(spec, phi).density
    if which == "unified":
        return unified_output(spec, phi).density
    raise ValueError(f"unknown machine {which!r}; expected one of {MACHINES}")


def _pure_power(phi: PureState, copies: int) -> FullState:
    amps = np.ones(1, dtype=np.complex128)
    for _ in range(copies):
        amps = np.kron(amps, phi.amplitudes)
    return FullState(amps, factors=copies, local_dim=phi.dim)


def _check_phi(spec: CloneSpec, phi: PureState) -> None:
    if phi.dim != spec.d:
        raise ValueError(
            f"input state dimension {phi.dim} does not match spec d={spec.d}"
        )
