"""Dense complex linear algebra over the device's tensor-product Hilbert space.

The device is modeled as five subsystems in a fixed canonical order:

    [NVE1, TLR_a, SPQ, TLR_b, NVE2]

Each NV ensemble is reduced to a single collective qutrit with levels
(0 = shared auxiliary level ``U``, 1 = logical ``0``, 2 = logical ``1``);
the two transmission-line resonators are Fock spaces truncated at ``n_max``
photons; the phase-qubit coupler is a two-level system (0 = ground,
1 = excited).  All operators are dense ``numpy`` arrays: the default total
dimension is 3*3*2*3*3 = 162, where dense eigendecomposition beats any
sparse scheme.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-9

NVE_DIM = 3
SPQ_DIM = 2

# qutrit level indices
LVL_U = 0
LVL_L0 = 1
LVL_L1 = 2


class ShapeError(ValueError):
    """Operator/state dimensions do not match the layout."""


@dataclass(frozen=True)
class Subsystem:
    kind: str  # "nve" | "resonator" | "spq"
    dim: int


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered subsystem list; canonical order is [NVE1, TLR_a, SPQ, TLR_b, NVE2]."""

    subsystems: tuple[Subsystem, ...]

    def __post_init__(self):
        for s in self.subsystems:
            if s.kind == "nve" and s.dim != NVE_DIM:
                raise ShapeError(f"NVE subsystem must have dimension {NVE_DIM}, got {s.dim}")
            if s.kind == "spq" and s.dim != SPQ_DIM:
                raise ShapeError(f"SPQ subsystem must have dimension {SPQ_DIM}, got {s.dim}")
            if s.kind == "resonator" and s.dim < 2:
                raise ShapeError("resonator needs n_max >= 1, i.e. dimension >= 2")
            if s.kind not in ("nve", "resonator", "spq"):
                raise ShapeError(f"unknown subsystem kind {s.kind!r}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subsystems)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, *levels: int) -> int:
        """Flat index of the product basis state with the given per-subsystem levels."""
        if len(levels) != len(self.subsystems):
            raise ShapeError("need one level per subsystem")
        return int(np.ravel_multi_index(levels, self.dims))

    def basis_state(self, *levels: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(*levels)] = 1.0
        return v

    def occupations(self) -> tuple[np.ndarray, ...]:
        """Per-subsystem level index of every flat basis state (one array per subsystem)."""
        return tuple(np.indices(self.dims).reshape(len(self.dims), -1))


def device_layout(n_max: int = 2) -> SubsystemLayout:
    """Canonical five-subsystem layout with resonators truncated at n_max photons."""
    if n_max < 1:
        raise ShapeError("n_max must be >= 1")
    r = n_max + 1
    return SubsystemLayout((
        Subsystem("nve", NVE_DIM),
        Subsystem("resonator", r),
        Subsystem("spq", SPQ_DIM),
        Subsystem("resonator", r),
        Subsystem("nve", NVE_DIM),
    ))


@dataclass(frozen=True)
class Operator:
    """Square complex matrix on the full space, optionally flagged Hermitian."""

    matrix: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"operator must be square, got shape {m.shape}")
        if self.hermitian:
            dev = np.max(np.abs(m - m.conj().T))
            if dev >= HERMITICITY_TOL:
                raise ValueError(f"hermitian flag set but max |H - H^dag| = {dev:.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector plus the frame it is expressed in."""

    vector: np.ndarray
    frame: str = "lab"  # "lab" | "interaction"

    def __post_init__(self):
        if self.frame not in ("lab", "interaction"):
            raise ValueError(f"unknown frame {self.frame!r}")
        n = np.linalg.norm(self.vector)
        if abs(n - 1.0) >= NORM_TOL:
            raise ValueError(f"state norm {n} deviates from 1 beyond {NORM_TOL}")

    @property
    def dim(self) -> int:
        return self.vector.shape[0]


def destroy(dim: int) -> np.ndarray:
    """Truncated annihilation operator on a Fock space of the given dimension."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def ketbra(dim: int, i: int, j: int) -> np.ndarray:
    """|i><j| on a single subsystem."""
    m = np.zeros((dim, dim), dtype=complex)
    m[i, j] = 1.0
    return m


def lift_local(op: np.ndarray, slot: int, layout: SubsystemLayout) -> np.ndarray:
    """Embed a single-subsystem operator at the given slot: I x ... x op x ... x I."""
    dims = layout.dims
    if not (0 <= slot < len(dims)):
        raise ShapeError(f"slot {slot} out of range")
    if op.shape != (dims[slot], dims[slot]):
        raise ShapeError(f"operator shape {op.shape} does not match subsystem dim {dims[slot]}")
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[slot] = np.asarray(op, dtype=complex)
    return reduce(np.kron, factors)


@dataclass(frozen=True)
class Generators:
    """Ladder and collective-spin operators lifted to the full space.

    ``s{k}{t}_m`` lowers NVE k from logical level t back to the auxiliary
    level (``|U><t|``); ``_p`` is its adjoint.  Slot order follows the
    canonical layout.
    """

    layout: SubsystemLayout
    a: np.ndarray = field(repr=False, default=None)
    a_dag: np.ndarray = field(repr=False, default=None)
    b: np.ndarray = field(repr=False, default=None)
    b_dag: np.ndarray = field(repr=False, default=None)
    sigma_m: np.ndarray = field(repr=False, default=None)
    sigma_p: np.ndarray = field(repr=False, default=None)
    sigma_z: np.ndarray = field(repr=False, default=None)
    s10_m: np.ndarray = field(repr=False, default=None)
    s10_p: np.ndarray = field(repr=False, default=None)
    s11_m: np.ndarray = field(repr=False, default=None)
    s11_p: np.ndarray = field(repr=False, default=None)
    s20_m: np.ndarray = field(repr=False, default=None)
    s20_p: np.ndarray = field(repr=False, default=None)
    s21_m: np.ndarray = field(repr=False, default=None)
    s21_p: np.ndarray = field(repr=False, default=None)

    def raise_op(self, nve: int, transition: int) -> np.ndarray:
        """Collective raising operator |t><U| for NVE 1|2 and logical level 0|1."""
        return {
            (1, 0): self.s10_p, (1, 1): self.s11_p,
            (2, 0): self.s20_p, (2, 1): self.s21_p,
        }[(nve, transition)]


def local_generators(layout: SubsystemLayout) -> Generators:
    """All single-subsystem generators of the device, lifted to the full space."""
    rdim = layout.dims[1]
    a = lift_local(destroy(rdim), 1, layout)
    b = lift_local(destroy(layout.dims[3]), 3, layout)
    sigma_m = lift_local(ketbra(SPQ_DIM, 0, 1), 2, layout)
    sz = lift_local(np.diag([-1.0, 1.0]).astype(complex), 2, layout)
    s10_m = lift_local(ketbra(NVE_DIM, LVL_U, LVL_L0), 0, layout)
    s11_m = lift_local(ketbra(NVE_DIM, LVL_U, LVL_L1), 0, layout)
    s20_m = lift_local(ketbra(NVE_DIM, LVL_U, LVL_L0), 4, layout)
    s21_m = lift_local(ketbra(NVE_DIM, LVL_U, LVL_L1), 4, layout)
    return Generators(
        layout=layout,
        a=a, a_dag=a.conj().T,
        b=b, b_dag=b.conj().T,
        sigma_m=sigma_m, sigma_p=sigma_m.conj().T, sigma_z=sz,
        s10_m=s10_m, s10_p=s10_m.conj().T,
        s11_m=s11_m, s11_p=s11_m.conj().T,
        s20_m=s20_m, s20_p=s20_m.conj().T,
        s21_m=s21_m, s21_p=s21_m.conj().T,
    )


def eig_hermitian(op: Operator | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition H = V diag(w) V^dag of a Hermitian operator."""
    if isinstance(op, Operator):
        if not op.hermitian:
            raise ValueError("eig_hermitian requires the hermitian flag")
        m = op.matrix
    else:
        m = np.asarray(op)
        dev = np.max(np.abs(m - m.conj().T))
        if dev >= HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e}")
    w, v = np.linalg.eigh(m)
    return w, v
