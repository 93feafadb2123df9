"""Shared builders for the test suite."""

from __future__ import annotations

import numpy as np

from framedual import VectorFamily
from framedual.frames import random_frame, random_parseval
from framedual.rduality import commuting_parseval_family, weak_r_dual


def unit(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.complex128)
    v[i] = 1.0
    return v


def fam(rows, label="fam") -> VectorFamily:
    return VectorFamily(np.array(rows, dtype=np.complex128), label=label)


def trio(n: int = 2) -> VectorFamily:
    """The repeated-first-direction frame {e1, e1, e2} in C^n."""
    rows = [unit(n, 0), unit(n, 0), unit(n, 1)]
    return VectorFamily(np.array(rows), label="trio")


def trio_parseval(n: int = 2) -> VectorFamily:
    r2 = np.sqrt(2.0)
    rows = [unit(n, 0) / r2, unit(n, 0) / r2, unit(n, 1)]
    return VectorFamily(np.array(rows), label="trio-parseval")


def weak_dual_instance(rng: np.random.Generator, dim: int, count: int):
    """Random instance built to satisfy the weak R-dual conditions: ``v``
    from the conjugate tightening (commutes with every u), random
    Parseval ``u``, ``w`` synthesized.  Returns (w, f, u, v, cert)."""
    f = random_frame(rng, count, dim, label="f")
    u = random_parseval(rng, count, dim, label="u")
    v = commuting_parseval_family(f).family
    w, cert = weak_r_dual(f, u, v)
    return w, f, u, v, cert


def perturb_member(
    rng: np.random.Generator, fam_in: VectorFamily, noise: float = 1e-3
) -> VectorFamily:
    """Add an in-span noise vector of the given norm to one member."""
    vecs = np.array(fam_in.vectors)
    d = rng.standard_normal(fam_in.ambient_dim) + 1j * rng.standard_normal(
        fam_in.ambient_dim
    )
    d = d / np.linalg.norm(d) * noise
    idx = int(rng.integers(0, fam_in.count))
    vecs[idx] = vecs[idx] + d
    return VectorFamily(vecs, label=f"{fam_in.label}-perturbed")
