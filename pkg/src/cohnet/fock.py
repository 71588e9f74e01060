"""Occupation-number bases and sparse multimode pure states.

States are sparse maps from occupation tuples to complex amplitudes.  A
beam-splitter chain fed with ``|n, 0, ..., 0>`` only ever populates the
fixed-total-photon sector, so a dense vector over per-mode cutoffs would be
mostly zeros.  All values are immutable after construction; operations
return new objects.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import InvalidBipartition, NumericalError, SectorMismatch, ShapeError

Occupation = tuple[int, ...]

# Amplitudes below this magnitude are dropped after operator applications;
# small enough not to disturb 1e-12 level assertions.
PRUNE_THRESHOLD = 1e-15

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_SLACK = 1e-10


def _sector_tuples(mode_count: int, total: int) -> Iterator[Occupation]:
    """Yield occupation tuples summing to ``total``, in descending lexicographic order."""
    if mode_count == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _sector_tuples(mode_count - 1, total - first):
            yield (first,) + rest


class SectorBasis:
    """Basis of all ``mode_count``-mode occupation tuples with a fixed photon total.

    Tuples are indexed in descending lexicographic order, which makes ranks,
    CSV rows, and test output deterministic.
    """

    def __init__(self, mode_count: int, total_photons: int):
        if mode_count < 1 or total_photons < 0:
            raise ShapeError(
                f"need mode_count >= 1 and total_photons >= 0, got {mode_count}, {total_photons}"
            )
        self.mode_count = mode_count
        self.total_photons = total_photons
        self.states: tuple[Occupation, ...] = tuple(_sector_tuples(mode_count, total_photons))
        self._index = {t: i for i, t in enumerate(self.states)}
        self.dim = len(self.states)
        assert self.dim == math.comb(total_photons + mode_count - 1, mode_count - 1)

    def rank(self, t: Occupation) -> int:
        t = tuple(t)
        idx = self._index.get(t)
        if idx is None:
            raise SectorMismatch(
                f"{t} is not a {self.mode_count}-mode tuple with total {self.total_photons}"
            )
        return idx

    def unrank(self, i: int) -> Occupation:
        if not 0 <= i < self.dim:
            raise SectorMismatch(f"index {i} outside sector of dimension {self.dim}")
        return self.states[i]

    def __len__(self) -> int:
        return self.dim

    def __iter__(self) -> Iterator[Occupation]:
        return iter(self.states)


def _validate_tuple(counts: Occupation, mode_count: int) -> Occupation:
    t = tuple(int(c) for c in counts)
    if len(t) != mode_count:
        raise ShapeError(f"tuple {t} has {len(t)} modes, state has {mode_count}")
    if any(c < 0 for c in t):
        raise ShapeError(f"negative occupation in {t}")
    return t


class PureState:
    """Sparse pure state: occupation tuple -> complex amplitude.

    Treated as immutable; ``normalize``/operators return new states.  The
    underscore flag lets internal operations skip per-tuple validation when
    the keys are known to be well formed (it dominates the cost of big
    tensor products otherwise).
    """

    __slots__ = ("mode_count", "amplitudes")

    def __init__(
        self,
        mode_count: int,
        amplitudes: Mapping[Occupation, complex] | None = None,
        _validate: bool = True,
    ):
        amplitudes = dict(amplitudes) if amplitudes else {}
        if _validate:
            for t in amplitudes:
                _validate_tuple(t, mode_count)
        self.mode_count = mode_count
        self.amplitudes = amplitudes

    def __repr__(self) -> str:
        return f"PureState(mode_count={self.mode_count}, terms={len(self.amplitudes)})"

    @classmethod
    def basis_state(cls, counts: Sequence[int]) -> "PureState":
        t = tuple(int(c) for c in counts)
        return cls(len(t), {t: 1.0 + 0.0j})

    def norm_sq(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def normalize(self) -> "PureState":
        n = math.sqrt(self.norm_sq())
        if n == 0.0:
            raise NumericalError("cannot normalize the zero state")
        return PureState(
            self.mode_count,
            {t: a / n for t, a in self.amplitudes.items()},
            _validate=False,
        )

    def scaled(self, factor: complex) -> "PureState":
        return PureState(
            self.mode_count,
            {t: a * factor for t, a in self.amplitudes.items()},
            _validate=False,
        )

    def pruned(self, threshold: float = PRUNE_THRESHOLD) -> "PureState":
        return PureState(
            self.mode_count,
            {t: a for t, a in self.amplitudes.items() if abs(a) >= threshold},
            _validate=False,
        )

    def amplitude(self, counts: Sequence[int]) -> complex:
        return self.amplitudes.get(tuple(int(c) for c in counts), 0.0 + 0.0j)

    def tuples_sorted(self) -> list[Occupation]:
        return sorted(self.amplitudes, reverse=True)


def add(a: PureState, b: PureState) -> PureState:
    """Unnormalized sum of two states on the same modes."""
    if a.mode_count != b.mode_count:
        raise ShapeError(f"mode counts differ: {a.mode_count} vs {b.mode_count}")
    out = dict(a.amplitudes)
    for t, amp in b.amplitudes.items():
        prev = out.get(t)
        out[t] = amp if prev is None else prev + amp
    return PureState(a.mode_count, out, _validate=False)


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.mode_count != b.mode_count:
        raise ShapeError(f"mode counts differ: {a.mode_count} vs {b.mode_count}")
    # iterate over the shorter map
    if len(a.amplitudes) <= len(b.amplitudes):
        big = b.amplitudes
        return complex(
            sum(complex(amp).conjugate() * big.get(t, 0.0) for t, amp in a.amplitudes.items())
        )
    big = a.amplitudes
    return complex(
        sum(complex(big.get(t, 0.0)).conjugate() * amp for t, amp in b.amplitudes.items())
    )


def tensor(a: PureState, b: PureState) -> PureState:
    """Tensor product; mode indices of ``b`` follow those of ``a``."""
    out: dict[Occupation, complex] = {}
    for ta, aa in a.amplitudes.items():
        for tb, ab in b.amplitudes.items():
            out[ta + tb] = aa * ab
    return PureState(a.mode_count + b.mode_count, out, _validate=False)


class DensityMatrix:
    """Small dense Hermitian PSD matrix with unit trace.

    ``basis`` records which occupation tuple each row/column index refers to
    (None for abstract bases such as logical-qubit ones).
    """

    def __init__(
        self,
        entries: np.ndarray,
        basis: tuple[Occupation, ...] | None = None,
        _validate: bool = True,
    ):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ShapeError(f"density matrix must be square, got shape {entries.shape}")
        self.entries = entries
        self.dim = entries.shape[0]
        self.basis = basis
        if basis is not None and len(basis) != self.dim:
            raise ShapeError("basis length does not match matrix dimension")
        if _validate:
            self._check_invariants()

    def _check_invariants(self):
        herm = np.max(np.abs(self.entries - self.entries.conj().T))
        if herm > HERMITIAN_TOL:
            raise NumericalError(f"not Hermitian: max asymmetry {herm:.3e}")
        tr = self.entries.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise NumericalError(f"trace {tr} differs from 1 beyond tolerance")
        evals = np.linalg.eigvalsh((self.entries + self.entries.conj().T) / 2.0)
        if evals.min() < -PSD_SLACK:
            raise NumericalError(f"negative eigenvalue {evals.min():.3e} beyond PSD slack")

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh((self.entries + self.entries.conj().T) / 2.0)

    def index_of(self, counts: Sequence[int]) -> int:
        if self.basis is None:
            raise SectorMismatch("density matrix carries no occupation basis")
        t = tuple(int(c) for c in counts)
        try:
            return self.basis.index(t)
        except ValueError:
            raise SectorMismatch(f"{t} not in the reduced basis") from None


def to_density_matrix(state: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi| over the state's own (sorted) support."""
    basis = tuple(state.tuples_sorted())
    vec = np.array([state.amplitudes[t] for t in basis], dtype=complex)
    return DensityMatrix(np.outer(vec, vec.conj()), basis=basis)


def partial_trace(
    state_or_dm: PureState | DensityMatrix,
    keep_modes: Iterable[int],
    basis_truncation: int | None = None,
) -> DensityMatrix:
    """Trace out every mode not in ``keep_modes``.

    The result is expressed over the induced basis of kept-mode tuples that
    actually appear, sorted descending lexicographically.  With
    ``basis_truncation`` set, kept tuples with any occupation above it are
    dropped and the matrix is renormalized to unit trace.
    """
    keep = sorted(set(int(m) for m in keep_modes))
    if isinstance(state_or_dm, PureState):
        mode_count = state_or_dm.mode_count
    else:
        if state_or_dm.basis is None:
            raise SectorMismatch("density matrix input needs an occupation basis")
        mode_count = len(state_or_dm.basis[0])
    if not keep or len(keep) >= mode_count:
        raise InvalidBipartition(
            f"keep set {keep} must be a nonempty strict subset of {mode_count} modes"
        )
    if any(m < 0 or m >= mode_count for m in keep):
        raise ShapeError(f"keep modes {keep} outside range 0..{mode_count - 1}")
    drop = [m for m in range(mode_count) if m not in keep]

    def split(t: Occupation) -> tuple[Occupation, Occupation]:
        return tuple(t[m] for m in keep), tuple(t[m] for m in drop)

    def admit(kept: Occupation) -> bool:
        return basis_truncation is None or max(kept) <= basis_truncation

    if isinstance(state_or_dm, PureState):
        # group amplitudes by the traced-out part; each group contributes a
        # rank-1 block on the kept part
        groups: dict[Occupation, list[tuple[Occupation, complex]]] = {}
        for t, amp in state_or_dm.amplitudes.items():
            kept, dropped = split(t)
            if admit(kept):
                groups.setdefault(dropped, []).append((kept, amp))
        kept_set = {kt for vecs in groups.values() for kt, _ in vecs}
        basis = tuple(sorted(kept_set, reverse=True))
        index = {t: i for i, t in enumerate(basis)}
        rho = np.zeros((len(basis), len(basis)), dtype=complex)
        for vecs in groups.values():
            for ti, ai in vecs:
                for tj, aj in vecs:
                    rho[index[ti], index[tj]] += ai * np.conj(aj)
    else:
        dm = state_or_dm
        kept_set = set()
        entries: dict[tuple[Occupation, Occupation], complex] = {}
        for i, ti in enumerate(dm.basis):
            ki, di = split(ti)
            if not admit(ki):
                continue
            for j, tj in enumerate(dm.basis):
                kj, dj = split(tj)
                if di != dj or not admit(kj):
                    continue
                entries[(ki, kj)] = entries.get((ki, kj), 0.0) + dm.entries[i, j]
                kept_set.add(ki)
                kept_set.add(kj)
        basis = tuple(sorted(kept_set, reverse=True))
        index = {t: i for i, t in enumerate(basis)}
        rho = np.zeros((len(basis), len(basis)), dtype=complex)
        for (ki, kj), val in entries.items():
            rho[index[ki], index[kj]] = val

    if rho.size == 0:
        raise NumericalError("partial trace produced an empty matrix")
    tr = float(np.real(rho.trace()))
    if tr <= 0.0:
        raise NumericalError("partial trace produced a non-positive trace")
    rho /= tr
    return DensityMatrix(rho, basis=basis)
