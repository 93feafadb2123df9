"""Gabor systems on the cyclic group Z_N and their adjoint systems.

The system for lattice steps (a, b) with a | N and b | N is

    g_{m,n}[t] = exp(2 pi i m b t / N) * window[(t - n a) mod N],
    m in [0, N/b), n in [0, N/a),  ordered by j = m * (N/a) + n.

The adjoint system lives on the adjoint lattice (time step N/b,
frequency step N/a) and carries the normalization kappa = sqrt(N/(a b)),
which is certified empirically by ``duality_check`` across the corpus:
the system is a frame iff the adjoint family is a Riesz sequence with
the same bounds.

Redundancy is N/(a b); the weak R-dual machinery pairs the system
(count N^2/(a b)) with the adjoint family (count a b).  The counts are
equalized by zero-padding the adjoint; the padded slots are recorded and
the certificate identities are evaluated on the unpadded slots, where
they provably hold.  The full padded dual-commutation residual is also
recorded: it is the finite-dimensional obstruction that keeps redundant
adjoint systems from being weak R-duals in the strict equal-index sense.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadLatticeError,
    CriticalDensityError,
    GateFailedError,
    HypothesisFailedError,
    NotParsevalError,
    NotPositiveDefiniteError,
    NotTightError,
    ShapeMismatchError,
    ZeroWindowError,
)
from .frames import (
    VectorFamily,
    analyze,
    frame_operator,
    parseval_tighten,
    random_parseval,
    span_projector,
    standard_basis_family,
    synthesis_matrix,
)
from .numerics import DEFAULT_TOL, Tolerance, frobenius, svd_rank_nullspace
from .rduality import (
    WeakRDualCertificate,
    _certificate,
    _cross_gram_matrix,
    build_orthonormal_v,
    characterizing_sequence,
    dual_commutation_residual,
    find_conjugate_witness,
)

__all__ = [
    "GaborLattice",
    "GaborSystem",
    "AdjointSystem",
    "DualityReport",
    "TightDualResult",
    "PromotionResult",
    "gabor_system",
    "adjoint_system",
    "canonical_tight_window",
    "duality_check",
    "tight_gabor_weak_r_dual",
    "promote_to_r_dual",
    "divisor_lattices",
    "evaluate_exploration_trial",
    "run_exploration",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GaborLattice:
    """Time step ``a`` and frequency step ``b`` on Z_N, both dividing N."""

    N: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise BadLatticeError(f"modulus must be positive, got {self.N}")
        for name, step in (("a", self.a), ("b", self.b)):
            if not 1 <= step <= self.N:
                raise BadLatticeError(f"step {name}={step} out of range [1, {self.N}]")
            if self.N % step != 0:
                raise BadLatticeError(f"step {name}={step} does not divide N={self.N}")

    @property
    def redundancy(self) -> float:
        return self.N / (self.a * self.b)

    @property
    def member_count(self) -> int:
        return (self.N // self.a) * (self.N // self.b)

    @property
    def adjoint_count(self) -> int:
        return self.a * self.b


@dataclass(frozen=True)
class GaborSystem:
    lattice: GaborLattice
    window: np.ndarray
    family: VectorFamily


@dataclass(frozen=True)
class AdjointSystem:
    base: GaborSystem
    kappa: float
    family: VectorFamily


def _modulated_translates(
    window: np.ndarray,
    N: int,
    time_step: int,
    freq_step: int,
    n_times: int,
    n_freqs: int,
    scale: float = 1.0,
) -> np.ndarray:
    t = np.arange(N)
    rows = np.empty((n_freqs * n_times, N), dtype=np.complex128)
    for m in range(n_freqs):
        phase = np.exp(2j * np.pi * m * freq_step * t / N)
        for n in range(n_times):
            rows[m * n_times + n] = scale * phase * np.roll(window, n * time_step)
    return rows


def gabor_system(lattice: GaborLattice, window: np.ndarray) -> GaborSystem:
    """Generate the full system for the lattice, modulation applied after
    translation, ordered frequency-major."""
    w = np.asarray(window, dtype=np.complex128)
    if w.shape != (lattice.N,):
        raise ShapeMismatchError(f"window must have length {lattice.N}, got {w.shape}")
    if not (np.all(np.isfinite(w.real)) and np.all(np.isfinite(w.imag))):
        raise ZeroWindowError("window entries must be finite")
    if np.linalg.norm(w) <= DEFAULT_TOL.abs_floor:
        raise ZeroWindowError("window is numerically zero")
    rows = _modulated_translates(
        w,
        lattice.N,
        time_step=lattice.a,
        freq_step=lattice.b,
        n_times=lattice.N // lattice.a,
        n_freqs=lattice.N // lattice.b,
    )
    fam = VectorFamily(rows, label=f"gabor(N={lattice.N},a={lattice.a},b={lattice.b})")
    return GaborSystem(lattice=lattice, window=w, family=fam)


def adjoint_system(sys: GaborSystem) -> AdjointSystem:
    """System on the adjoint lattice (time step N/b, frequency step N/a)
    scaled by kappa = sqrt(N/(a b))."""
    lat = sys.lattice
    kappa = float(np.sqrt(lat.N / (lat.a * lat.b)))
    rows = _modulated_translates(
        sys.window,
        lat.N,
        time_step=lat.N // lat.b,
        freq_step=lat.N // lat.a,
        n_times=lat.b,
        n_freqs=lat.a,
        scale=kappa,
    )
    fam = VectorFamily(
        rows, label=f"adjoint(N={lat.N},a={lat.a},b={lat.b})"
    )
    return AdjointSystem(base=sys, kappa=kappa, family=fam)


def canonical_tight_window(lattice: GaborLattice, window: np.ndarray) -> np.ndarray:
    """Apply the inverse square root of the system's frame operator to the
    window; re-analysis (not assumption) confirms the rebuilt system is
    tight."""
    sys = gabor_system(lattice, window)
    tightened = parseval_tighten(sys.family)
    half_count = 0  # window sits at index (m, n) = (0, 0)
    return np.asarray(tightened.vectors[half_count], dtype=np.complex128)


@dataclass(frozen=True)
class DualityReport:
    frame_bounds: tuple[float, float]
    riesz_bounds: tuple[float, float]
    system_is_frame: bool
    adjoint_is_riesz: bool
    bounds_agree: bool
    match: bool

    def to_json_dict(self) -> dict:
        return {
            "frame_bounds": list(self.frame_bounds),
            "riesz_bounds": list(self.riesz_bounds),
            "system_is_frame": self.system_is_frame,
            "adjoint_is_riesz": self.adjoint_is_riesz,
            "bounds_agree": self.bounds_agree,
            "match": self.match,
        }


def duality_check(sys: GaborSystem, tol: Tolerance = DEFAULT_TOL) -> DualityReport:
    """Frame bounds of the system versus Riesz bounds of the adjoint.

    Riesz bounds are the extreme eigenvalues of the adjoint Gram matrix
    (computed from singular values of the synthesis; an adjoint with more
    members than the dimension gets a zero lower bound).  ``match`` holds
    when frame-ness and Riesz-ness agree and, if both hold, the bounds
    coincide within tolerance.
    """
    sa = analyze(sys.family, tol)
    adj = adjoint_system(sys)
    a_syn = synthesis_matrix(adj.family)
    sigma = np.linalg.svd(a_syn, compute_uv=False)
    count = adj.family.count
    upper = float(sigma[0] ** 2)
    lower = float(sigma[-1] ** 2) if count <= sys.lattice.N else 0.0
    is_riesz = count <= sys.lattice.N and lower > tol.threshold(upper)
    is_frame = sa.is_frame_for_ambient
    fb = (sa.lower_bound, sa.upper_bound)
    rb = (lower, upper)
    if is_frame and is_riesz:
        scale = max(fb[1], rb[1])
        agree = (
            abs(fb[0] - rb[0]) <= tol.threshold(scale)
            and abs(fb[1] - rb[1]) <= tol.threshold(scale)
        )
    else:
        agree = False
    match = (is_frame == is_riesz) and (agree or not is_frame)
    return DualityReport(
        frame_bounds=fb,
        riesz_bounds=rb,
        system_is_frame=is_frame,
        adjoint_is_riesz=is_riesz,
        bounds_agree=agree,
        match=match,
    )


def _pad_family(fam: VectorFamily, count: int, label: str) -> VectorFamily:
    out = np.zeros((count, fam.ambient_dim), dtype=np.complex128)
    out[: fam.count] = fam.vectors
    return VectorFamily(out, label=label)


@dataclass(frozen=True)
class TightDualResult:
    v: VectorFamily
    certificate: WeakRDualCertificate
    padded_adjoint: VectorFamily
    padding_positions: list[int]
    padded_dual_commutation_residual: float

    def to_json_dict(self) -> dict:
        return {
            "certificate": self.certificate.to_json_dict(),
            "padding_positions": self.padding_positions,
            "padded_dual_commutation_residual": self.padded_dual_commutation_residual,
            "v_count": self.v.count,
        }


def tight_gabor_weak_r_dual(
    sys: GaborSystem,
    u: Optional[VectorFamily] = None,
    tol: Tolerance = DEFAULT_TOL,
) -> TightDualResult:
    """Weak R-dual pipeline for a tight, redundant system.

    The adjoint family (a Riesz sequence by duality) is zero-padded to
    the system count; the characterizing sequence computed through the
    padded machinery is Parseval for the adjoint span, the span deficit
    is strictly below the kernel dimension, and the isometric extension
    produces a Parseval, non-orthonormal ``v``.  The certificate
    identities are evaluated on the unpadded adjoint slots; the padded
    dual-commutation residual is recorded as the documented obstruction.

    ``u`` defaults to the standard basis padded with zeros to the system
    count; its members at the unpadded slots must be orthonormal for the
    characterizing sequence to come out Parseval.
    """
    lat = sys.lattice
    sa = analyze(sys.family, tol)
    if not (sa.is_frame_for_ambient and sa.is_tight):
        raise NotTightError("system is not a tight frame for the ambient space")
    if lat.redundancy <= 1.0:
        raise CriticalDensityError(
            "redundancy must exceed 1; at critical density only the"
            " orthonormal (R-dual) promotion applies"
        )
    m_count = lat.member_count
    k_count = lat.adjoint_count
    if u is None:
        u = standard_basis_family(lat.N, m_count)
    if u.count != m_count or u.ambient_dim != lat.N:
        raise ShapeMismatchError(
            f"u must have {m_count} members of dimension {lat.N}"
        )
    u_pars = frobenius(frame_operator(u) - np.eye(lat.N))
    if u_pars > tol.threshold(float(lat.N)):
        raise NotParsevalError(
            f"u must be Parseval for the ambient space (residual {u_pars:.3e})"
        )

    adj = adjoint_system(sys)
    w0 = adj.family
    w_pad = _pad_family(w0, m_count, label=f"padded-{w0.label}")
    u_slice = VectorFamily(u.vectors[:k_count], label=f"{u.label}[:{k_count}]")

    f = sys.family
    y = characterizing_sequence(w_pad, f, u, tol)
    y_syn = synthesis_matrix(y)
    p = span_projector(w0, tol)
    proj_parseval = frobenius(y_syn @ y_syn.conj().T - p)
    if proj_parseval > tol.threshold(max(1.0, frobenius(p))):
        raise HypothesisFailedError(
            "characterizing sequence is not Parseval for the adjoint span"
            f" (residual {proj_parseval:.3e}); the unpadded slots of u must"
            " be orthonormal"
        )
    rank_y, ker_basis = svd_rank_nullspace(y_syn, tol)
    rank_w0, _ = svd_rank_nullspace(synthesis_matrix(w0), tol)
    deficit = lat.N - rank_w0
    kernel = m_count - rank_y
    if not deficit < kernel:
        raise HypothesisFailedError(
            f"span deficit {deficit} must be strictly below kernel {kernel}"
        )
    _, comp_basis = svd_rank_nullspace(synthesis_matrix(w0).conj().T, tol)
    q_adj = comp_basis[:, :deficit] @ ker_basis[:, :deficit].conj().T
    v = VectorFamily((y_syn + q_adj).T, label=f"tight-v({sys.family.label})")

    cert = _certificate(w0, f, u_slice, v, tol)
    padded_res = dual_commutation_residual(w_pad, f, u, tol)
    return TightDualResult(
        v=v,
        certificate=cert,
        padded_adjoint=w_pad,
        padding_positions=list(range(k_count, m_count)),
        padded_dual_commutation_residual=padded_res,
    )


@dataclass(frozen=True)
class PromotionResult:
    v_prime: VectorFamily
    certificate: WeakRDualCertificate


def promote_to_r_dual(
    w: VectorFamily,
    f: VectorFamily,
    u: VectorFamily,
    tol: Tolerance = DEFAULT_TOL,
    v: Optional[VectorFamily] = None,
) -> PromotionResult:
    """Promote a weak R-dual with a Riesz-sequence ``w`` to an R-dual.

    Finite gate: the orthonormal ``v'`` needs member count equal to the
    ambient dimension, which for Gabor systems happens exactly at
    critical density; redundant systems report the gate as the
    documented finite-dimensional obstruction.  When ``v`` is supplied,
    its certificate must pass.
    """
    wa = analyze(w, tol)
    if not wa.is_riesz_sequence:
        raise HypothesisFailedError("w must be a Riesz sequence")
    if w.count != w.ambient_dim:
        raise GateFailedError(
            f"member count {w.count} differs from ambient dimension"
            f" {w.ambient_dim}: an orthonormal basis with this index set"
            " cannot exist (expected for every redundant system)"
        )
    if v is not None:
        base = _certificate(w, f, u, v, tol)
        if not base.passes():
            raise HypothesisFailedError(
                "the supplied v does not certify as a weak R-dual"
            )
    v_prime = build_orthonormal_v(w, f, u, tol)
    cert = _certificate(w, f, u, v_prime, tol)
    if cert.verdict != "RDual":
        raise HypothesisFailedError(
            f"promotion did not reach an R-dual verdict: {cert.verdict}"
        )
    return PromotionResult(v_prime=v_prime, certificate=cert)


# ----------------------------------------------------------------------
# Exploration harness
# ----------------------------------------------------------------------


def divisor_lattices(N: int, critical: Optional[bool] = None) -> list[GaborLattice]:
    """All divisor lattices of Z_N, optionally filtered by criticality."""
    divisors = [d for d in range(1, N + 1) if N % d == 0]
    out = []
    for a in divisors:
        for b in divisors:
            lat = GaborLattice(N, a, b)
            if critical is None or (lat.redundancy == 1.0) == critical:
                out.append(lat)
    return out


def _nonzero_spectrum(mat: np.ndarray, tol: Tolerance) -> list[float]:
    vals = np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)
    cut = tol.threshold(float(max(vals[-1], 0.0))) if vals.size else 0.0
    return [float(v) for v in vals if v > cut]


def _window_hash(window: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(window).tobytes()).hexdigest()[:16]


def _candidate_u_records(
    sys: GaborSystem,
    w_pad: VectorFamily,
    rng: np.random.Generator,
    tol: Tolerance,
) -> list[dict]:
    """Per-candidate residual records for the padded dual-commutation
    condition and the Parseval property of the characterizing sequence."""
    lat = sys.lattice
    n, m_count = lat.N, lat.member_count
    f = sys.family
    p = span_projector(w_pad, tol)

    candidates: list[tuple[str, Optional[VectorFamily], Optional[str]]] = []

    tight_w = parseval_tighten(w_pad, tol)
    conj_u = VectorFamily(np.conj(tight_w.vectors), label="conjugated-dual")
    candidates.append(("conjugated_dual", conj_u, None))

    rand_u = random_parseval(rng, m_count, n, label="randomized-parseval")
    candidates.append(("randomized_parseval", rand_u, None))

    wa = analyze(w_pad, tol)
    if wa.deficit == 0:
        tight_span = parseval_tighten(w_pad, tol)
        full_u = VectorFamily(np.conj(tight_span.vectors), label="dual-commuting")
        candidates.append(("dual_commuting", full_u, None))
    else:
        candidates.append(("dual_commuting", None, "adjoint span is proper"))

    records = []
    for name, u, gate_reason in candidates:
        if u is None:
            records.append({"name": name, "verdict": "Gated", "reason": gate_reason})
            continue
        dual_res = dual_commutation_residual(w_pad, f, u, tol)
        y = characterizing_sequence(w_pad, f, u, tol)
        y_syn = synthesis_matrix(y)
        proj_res = frobenius(y_syn @ y_syn.conj().T - p)
        u_pars = frobenius(frame_operator(u) - np.eye(n))
        scale = max(1.0, frobenius(_cross_gram_matrix(u, f)))
        ok = dual_res <= tol.threshold(scale) and proj_res <= tol.threshold(
            max(1.0, frobenius(p))
        )
        records.append(
            {
                "name": name,
                "verdict": "ConditionsHold" if ok else "ConditionsFail",
                "dual_commutation_residual": dual_res,
                "projected_parseval_residual": proj_res,
                "u_parseval_residual": u_pars,
            }
        )
    return records


def evaluate_exploration_trial(
    lattice: GaborLattice,
    window: np.ndarray,
    rng: np.random.Generator,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    """Evidence record for one (lattice, window) pair.

    The spectral witness test compares the ambient frame operator of the
    system with that of the padded adjoint; a proper adjoint span gates
    the test (recorded, not resolved).  Tight systems are tagged and
    skipped, since the tight pipeline settles them separately.
    """
    lat = lattice
    record: dict = {
        "N": lat.N,
        "a": lat.a,
        "b": lat.b,
        "redundancy": lat.redundancy,
        "window_hash": _window_hash(window),
        "schema_version": SCHEMA_VERSION,
    }
    sys = gabor_system(lat, window)
    sa = analyze(sys.family, tol)
    s_f = frame_operator(sys.family)
    record["system_spectrum"] = _nonzero_spectrum(s_f, tol)
    if not sa.is_frame_for_ambient:
        record["verdict"] = "NotFrame"
        return record
    if sa.is_tight:
        record["verdict"] = "Tight"
        return record

    adj = adjoint_system(sys)
    w_pad = _pad_family(adj.family, lat.member_count, label="padded-adjoint")
    s_w = frame_operator(w_pad)
    record["adjoint_spectrum"] = _nonzero_spectrum(s_w, tol)

    wa = analyze(w_pad, tol)
    if wa.deficit != 0:
        record["witness"] = {
            "verdict": "Gated",
            "reason": "adjoint span is proper in the ambient space",
        }
    else:
        try:
            witness = find_conjugate_witness(s_w, s_f, tol)
        except NotPositiveDefiniteError:
            witness = None
        record["witness"] = {
            "verdict": "WitnessFound" if witness is not None else "NoWitness"
        }
    record["candidates"] = _candidate_u_records(sys, w_pad, rng, tol)
    record["verdict"] = record["witness"]["verdict"]
    return record


def run_exploration(
    N_values: Sequence[int],
    seed: int = 0,
    trials: int = 100,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    """Randomized evidence gathering over non-critical divisor lattices.

    Each trial derives its randomness from ``(seed, trial index)``, so
    reports are byte-identical for a fixed configuration and independent
    of evaluation order.  No claim is made beyond the recorded evidence.
    """
    N_values = list(N_values)
    lattices = {N: divisor_lattices(N, critical=False) for N in N_values}
    manifest = [
        {"N": lat.N, "a": lat.a, "b": lat.b}
        for N in sorted(lattices)
        for lat in lattices[N]
    ]
    trial_records = []
    counts: dict[str, int] = {}
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        n_val = N_values[int(rng.integers(0, len(N_values)))]
        options = lattices[n_val]
        lat = options[int(rng.integers(0, len(options)))]
        window = rng.standard_normal(lat.N) + 1j * rng.standard_normal(lat.N)
        window /= np.linalg.norm(window)
        rec = evaluate_exploration_trial(lat, window, rng, tol)
        rec["trial"] = t
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
        trial_records.append(rec)
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "trials": trials,
        "N_values": list(N_values),
        "lattice_manifest": manifest,
        "verdict_counts": dict(sorted(counts.items())),
        "records": trial_records,
    }
