"""Vector families and their frame-theoretic anatomy.

A family is an ordered finite list of complex vectors in a common
ambient space.  ``analyze`` classifies it (frame / frame sequence /
Parseval / Riesz / orthonormal basis) and reports bounds computed on the
span, matching the frame-sequence convention: the bounds are the extreme
nonzero eigenvalues of the frame operator.

Inner products are linear in the first argument and conjugate-linear in
the second.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptySpanError, FixtureParseError, ShapeMismatchError
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    frobenius,
    psd_inverse_sqrt,
)

__all__ = [
    "VectorFamily",
    "FrameAnalysis",
    "inner",
    "synthesis_matrix",
    "frame_operator",
    "gram_matrix",
    "span_projector",
    "analyze",
    "canonical_dual",
    "parseval_tighten",
    "project_onto_span",
    "load_family",
    "save_family",
    "family_from_json_dict",
    "family_to_json_dict",
    "random_frame",
    "random_parseval",
    "random_unitary",
    "standard_basis_family",
]


def inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Inner product, linear in the first argument."""
    return complex(np.vdot(y, x))


@dataclass(frozen=True)
class VectorFamily:
    """Ordered finite family of complex vectors in ``C^ambient_dim``.

    ``vectors`` has one member per row.  Zero members are permitted.
    """

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        v = np.asarray(self.vectors, dtype=np.complex128)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError(f"expected (count, dim) members, got shape {v.shape}")
        if not (np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag))):
            raise ValueError("family entries must be finite")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[1]

    def member(self, i: int) -> np.ndarray:
        return self.vectors[i]

    def __len__(self) -> int:
        return self.count

    def relabel(self, label: str) -> "VectorFamily":
        return VectorFamily(self.vectors, label=label)


@dataclass(frozen=True)
class FrameAnalysis:
    """Classification certificate for a vector family."""

    member_count: int
    ambient_dim: int
    span_dim: int
    deficit: int
    kernel_dim: int
    lower_bound: float
    upper_bound: float
    is_frame_for_ambient: bool
    is_frame_sequence: bool
    is_parseval_for_span: bool
    is_tight: bool
    is_riesz_sequence: bool
    is_riesz_basis: bool
    is_onb: bool
    parseval_residual: float
    gram_identity_residual: float

    def to_json_dict(self) -> dict:
        return {
            "member_count": self.member_count,
            "ambient_dim": self.ambient_dim,
            "span_dim": self.span_dim,
            "deficit": self.deficit,
            "kernel_dim": self.kernel_dim,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "is_frame_for_ambient": self.is_frame_for_ambient,
            "is_frame_sequence": self.is_frame_sequence,
            "is_parseval_for_span": self.is_parseval_for_span,
            "is_tight": self.is_tight,
            "is_riesz_sequence": self.is_riesz_sequence,
            "is_riesz_basis": self.is_riesz_basis,
            "is_onb": self.is_onb,
            "parseval_residual": self.parseval_residual,
            "gram_identity_residual": self.gram_identity_residual,
        }


def synthesis_matrix(fam: VectorFamily) -> np.ndarray:
    """``ambient_dim x count`` matrix with the members as columns."""
    return fam.vectors.T.copy()


def frame_operator(fam: VectorFamily) -> np.ndarray:
    """S = T T*, the Hermitian PSD operator x -> sum <x, f_i> f_i."""
    t = fam.vectors.T
    return t @ t.conj().T


def gram_matrix(fam: VectorFamily) -> np.ndarray:
    """Gram matrix with entries ``<f_i, f_j>``."""
    v = fam.vectors
    return v @ v.conj().T


def span_projector(fam: VectorFamily, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the span of the members."""
    from .numerics import orthonormal_span_basis

    q = orthonormal_span_basis(synthesis_matrix(fam), tol)
    if q.shape[1] == 0:
        n = fam.ambient_dim
        return np.zeros((n, n), dtype=np.complex128)
    return q @ q.conj().T


def _span_data(fam: VectorFamily, tol: Tolerance):
    """Shared SVD of the synthesis matrix: (U, singular values, rank)."""
    t = synthesis_matrix(fam)
    u, s, _ = np.linalg.svd(t, full_matrices=False)
    if s.size == 0 or s[0] < tol.abs_floor:
        rank = 0
    else:
        rank = int(np.sum(s > tol.threshold(float(s[0]))))
    return u, s, rank


def analyze(fam: VectorFamily, tol: Tolerance = DEFAULT_TOL) -> FrameAnalysis:
    """Classify a family and compute its frame-sequence bounds.

    Bounds are the extreme nonzero eigenvalues of the frame operator;
    raises ``EmptySpanError`` when every member is numerically zero.
    """
    m, n = fam.count, fam.ambient_dim
    u, s, rank = _span_data(fam, tol)
    if rank == 0:
        raise EmptySpanError("all members are numerically zero")
    sq = s[:rank] ** 2
    lower = float(sq[-1])
    upper = float(sq[0])

    proj = u[:, :rank] @ u[:, :rank].conj().T
    s_op = frame_operator(fam)
    parseval_residual = frobenius(s_op - proj)
    is_parseval = parseval_residual <= tol.threshold(max(1.0, frobenius(s_op)))

    gram = gram_matrix(fam)
    gram_residual = frobenius(gram - np.eye(m))
    is_riesz_seq = rank == m
    is_onb = is_parseval and rank == n and gram_residual <= tol.threshold(
        max(1.0, frobenius(gram))
    )

    return FrameAnalysis(
        member_count=m,
        ambient_dim=n,
        span_dim=rank,
        deficit=n - rank,
        kernel_dim=m - rank,
        lower_bound=lower,
        upper_bound=upper,
        is_frame_for_ambient=rank == n,
        is_frame_sequence=True,
        is_parseval_for_span=is_parseval,
        is_tight=(upper - lower) <= tol.threshold(upper),
        is_riesz_sequence=is_riesz_seq,
        is_riesz_basis=is_riesz_seq and rank == n,
        is_onb=is_onb,
        parseval_residual=parseval_residual,
        gram_identity_residual=gram_residual,
    )


def _pseudo_inverse_frame_operator(fam: VectorFamily, tol: Tolerance) -> np.ndarray:
    u, s, rank = _span_data(fam, tol)
    if rank == 0:
        raise EmptySpanError("all members are numerically zero")
    inv = 1.0 / (s[:rank] ** 2)
    return (u[:, :rank] * inv) @ u[:, :rank].conj().T


def canonical_dual(fam: VectorFamily, tol: Tolerance = DEFAULT_TOL) -> VectorFamily:
    """Canonical dual family: the pseudo-inverse of the frame operator
    applied member-wise (handles frame sequences, not just frames)."""
    s_pinv = _pseudo_inverse_frame_operator(fam, tol)
    return VectorFamily((s_pinv @ fam.vectors.T).T, label=f"dual({fam.label})")


def parseval_tighten(fam: VectorFamily, tol: Tolerance = DEFAULT_TOL) -> VectorFamily:
    """Apply the pseudo-inverse square root of the frame operator,
    producing a family Parseval for the span of the input."""
    u, s, rank = _span_data(fam, tol)
    if rank == 0:
        raise EmptySpanError("all members are numerically zero")
    half = psd_inverse_sqrt(frame_operator(fam), tol)
    return VectorFamily((half @ fam.vectors.T).T, label=f"tight({fam.label})")


def project_onto_span(
    fam: VectorFamily, x: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the span of the family."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (fam.ambient_dim,):
        raise ShapeMismatchError(
            f"vector has shape {x.shape}, expected ({fam.ambient_dim},)"
        )
    return span_projector(fam, tol) @ x


# ----------------------------------------------------------------------
# Fixture I/O
#
# Format: {"dim": n, "vectors": [[[re, im], ...], ...], "label": "..."}
# ----------------------------------------------------------------------


def family_to_json_dict(fam: VectorFamily) -> dict:
    return {
        "dim": fam.ambient_dim,
        "vectors": [
            [[float(z.real), float(z.imag)] for z in row] for row in fam.vectors
        ],
        "label": fam.label,
    }


def family_from_json_dict(data: dict) -> VectorFamily:
    if not isinstance(data, dict):
        raise FixtureParseError("fixture root must be a JSON object")
    try:
        dim = int(data["dim"])
        rows = data["vectors"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureParseError(f"missing or invalid field: {exc}") from exc
    if not isinstance(rows, list) or not rows:
        raise FixtureParseError("field 'vectors' must be a non-empty list")
    members = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise FixtureParseError(
                f"vector {i} has length {len(row) if isinstance(row, list) else '?'},"
                f" expected {dim}"
            )
        try:
            members.append([complex(re, im) for re, im in row])
        except (TypeError, ValueError) as exc:
            raise FixtureParseError(f"vector {i}: entries must be [re, im] pairs") from exc
    label = str(data.get("label", ""))
    try:
        return VectorFamily(np.array(members, dtype=np.complex128), label=label)
    except ValueError as exc:
        raise FixtureParseError(str(exc)) from exc


def load_family(path: str | Path) -> VectorFamily:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FixtureParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureParseError(
            f"invalid JSON in {path} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return family_from_json_dict(data)


def save_family(fam: VectorFamily, path: str | Path) -> None:
    Path(path).write_text(json.dumps(family_to_json_dict(fam), sort_keys=True) + "\n")


# ----------------------------------------------------------------------
# Seeded generators (shared by tests and the exploration harness)
# ----------------------------------------------------------------------


def random_frame(
    rng: np.random.Generator, count: int, dim: int, label: str = "random-frame"
) -> VectorFamily:
    """Random complex Gaussian family; a frame for the ambient space with
    probability one when ``count >= dim``."""
    v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return VectorFamily(v, label=label)


def random_parseval(
    rng: np.random.Generator, count: int, dim: int, label: str = "random-parseval"
) -> VectorFamily:
    """Random Parseval frame for the ambient space (requires count >= dim)."""
    if count < dim:
        raise ShapeMismatchError("a Parseval frame needs at least dim members")
    fam = random_frame(rng, count, dim)
    return parseval_tighten(fam).relabel(label)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def standard_basis_family(dim: int, count: int | None = None) -> VectorFamily:
    """First ``min(count, dim)`` standard basis vectors, zero-padded to
    ``count`` members when ``count > dim``."""
    if count is None:
        count = dim
    v = np.zeros((count, dim), dtype=np.complex128)
    for i in range(min(count, dim)):
        v[i, i] = 1.0
    return VectorFamily(v, label=f"standard-basis-{dim}x{count}")
