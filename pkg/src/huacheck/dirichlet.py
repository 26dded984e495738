"""Dirichlet solvers on the unit ball and on the matrix domains.

Two constructions live here. For the modified ball Laplacian, boundary data
given as a finite sum of bidegree-(p,q) harmonics extends to the interior by
attaching the normalized radial hypergeometric profile h_{p,q}(|z|^4) to each
term. For the matrix domains the Poisson integral against the determinant
kernel is approximated by Monte-Carlo averaging over the distinguished
boundary. A pluriharmonicity tester rounds the module out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import kappa, sample_silov
from .fields import OpaqueField, PolyField, wirtinger_hessian
from .hypergeom import RadialProfile
from .kernels import v_matrix


def _mixed_laplacian(f):
    """Sum of d^2 f / dz_a dzbar_a over all entries, as a PolyField."""
    size = f.shape[0] * f.shape[1]
    out = PolyField(f.shape, {})
    for a in range(size):
        out = out + f.dz(a).dzbar(a)
    return out


def _norm_squared_field(shape):
    size = shape[0] * shape[1]
    out = PolyField(shape, {})
    for a in range(size):
        out = out + PolyField.coordinate(shape, a) * PolyField.coordinate(
            shape, a, conjugated=True
        )
    return out


def _random_bihomogeneous(shape, p, q, rng, n_terms):
    size = shape[0] * shape[1]
    terms = {}
    for _ in range(n_terms):
        ze = [0] * size
        we = [0] * size
        for _ in range(p):
            ze[int(rng.integers(0, size))] += 1
        for _ in range(q):
            we[int(rng.integers(0, size))] += 1
        c = complex(rng.standard_normal(), rng.standard_normal())
        key = (tuple(ze), tuple(we))
        terms[key] = terms.get(key, 0.0) + c
    return PolyField(shape, terms)


@dataclass(frozen=True)
class BidegreeHarmonic:
    """A bidegree-(p,q) polynomial with vanishing mixed Laplacian."""

    p: int
    q: int
    n: int
    field: PolyField

    def __post_init__(self):
        if not _mixed_laplacian(self.field).is_zero():
            raise ValueError("field is not harmonic")

    def bihomogeneity_residual(self, rng, trials=5):
        """max |f(lam z) - lam^p lambar^q f(z)| over random scalings."""
        worst = 0.0
        for _ in range(trials):
            z = rng.standard_normal(self.field.shape) + 1j * rng.standard_normal(
                self.field.shape
            )
            lam = complex(rng.standard_normal(), rng.standard_normal())
            lhs = self.field(lam * z)
            rhs = lam**self.p * np.conj(lam) ** self.q * self.field(z)
            worst = max(worst, abs(lhs - rhs))
        return worst


def harmonic_projection(f, p, q, n):
    """Top harmonic part of a bidegree-(p,q) bihomogeneous polynomial.

    Uses the expansion sum_i b_i |z|^(2i) L^i f with b_0 = 1 and
    b_i = -b_{i-1} / (i (n + p + q - i - 1)); the mixed Laplacian of the
    result telescopes to zero because L(|z|^(2i) g) =
    i (n + i - 1 + deg g) |z|^(2i-2) g + |z|^(2i) L g on bihomogeneous g.
    """
    shape = f.shape
    nsq = _norm_squared_field(shape)
    out = PolyField(shape, {})
    b = 1.0
    power = PolyField.constant(shape, 1.0)
    lf = f
    for i in range(min(p, q) + 1):
        if i > 0:
            b = -b / (i * (n + p + q - i - 1))
            power = power * nsq
            lf = _mixed_laplacian(lf)
        if lf.is_zero():
            break
        out = out + power * lf * b
    return out


def make_bidegree(p, q, n, seed, n_terms=4):
    """A nonzero random harmonic bidegree-(p,q) polynomial on C^n, n >= 2."""
    if n < 2:
        raise ValueError("ball dimension must be at least 2")
    if p < 0 or q < 0:
        raise ValueError("bidegrees must be non-negative")
    shape = (1, n)
    if p == 0 and q == 0:
        return BidegreeHarmonic(0, 0, n, PolyField.constant(shape, 1.0))
    rng = np.random.default_rng(seed)
    for _ in range(32):
        raw = _random_bihomogeneous(shape, p, q, rng, n_terms)
        h = harmonic_projection(raw, p, q, n)
        if not h.is_zero():
            return BidegreeHarmonic(p, q, n, h)
    raise RuntimeError("failed to draw a nonzero harmonic polynomial")


@dataclass(frozen=True)
class DirichletSolution:
    """u(z) = sum_k h_{p_k, q_k}(|z|^4) f_k(z); boundary trace sum_k f_k."""

    n: int
    parts: tuple[tuple[BidegreeHarmonic, RadialProfile], ...]

    @property
    def shape(self):
        return (1, self.n)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex).reshape(-1)
        t = float(np.vdot(z, z).real) ** 2
        total = 0.0 + 0.0j
        for f, h in self.parts:
            # the profile is normalized to 1 at the boundary; clamp roundoff
            ht = 1.0 if t >= 1.0 - 1e-12 else h.value(t)
            total += ht * f.field(z)
        return total

    def boundary_trace(self, z):
        return sum(f.field(z) for f, _ in self.parts)

    def as_field(self):
        return OpaqueField(self.shape, self.__call__)


def solve_tilde(fs, n):
    """Pair each bidegree harmonic with its radial profile on B_n."""
    parts = []
    for f in fs:
        if f.n != n:
            raise ValueError("boundary term lives on a different ball")
        parts.append((f, RadialProfile(f.p, f.q, n)))
    return DirichletSolution(n, tuple(parts))


def boundary_batch(spec, seed, samples):
    """Stacked array of distinguished-boundary draws for poisson_solve."""
    return np.stack([p.value for p in sample_silov(spec, seed, samples)])


def poisson_solve(spec, boundary_field, z, samples=100_000, seed=0, batch=None):
    """Monte-Carlo Poisson integral over the distinguished boundary.

    Averages P(z, w) phi(w) over Haar samples of the boundary; returns
    (mean, standard error). phi may be a PolyField (vectorized) or any
    callable on the boundary matrix. Pass a precomputed boundary_batch as
    ``batch`` to amortize sampling across evaluation points.
    """
    ws = boundary_batch(spec, seed, samples) if batch is None else batch
    samples = len(ws)
    z = np.asarray(z, dtype=complex).reshape(spec.shape)
    k = float(kappa(spec))
    detv = float(np.linalg.det(v_matrix(z)).real)
    dets = np.linalg.det(
        np.eye(spec.m) - np.einsum("ia,sja->sij", z, ws.conj())
    )
    weights = np.exp(k * np.log(detv)) / np.abs(dets) ** (2.0 * k)
    if isinstance(boundary_field, PolyField):
        phis = boundary_field.evaluate_many(ws)
    else:
        phis = np.array([complex(boundary_field(w)) for w in ws])
    vals = weights * phis
    mean = complex(np.mean(vals))
    var = float(np.mean(np.abs(vals - mean) ** 2))
    stderr = float(np.sqrt(var / samples))
    return mean, stderr


EXACT_PLURIHARMONIC_TOL = 1e-8
FD_PLURIHARMONIC_TOL = 1e-5


def pluriharmonicity_test(u, points, tol=None):
    """Whether the full mixed Hessian of u vanishes at every point.

    Returns (passed, max Frobenius norm). The default tolerance depends on
    the differentiation path: exact for polynomials, finite differences
    otherwise.
    """
    if tol is None:
        tol = (
            EXACT_PLURIHARMONIC_TOL
            if isinstance(u, PolyField)
            else FD_PLURIHARMONIC_TOL
        )
    worst = 0.0
    for pt in points:
        z = pt.value if hasattr(pt, "value") else np.asarray(pt, dtype=complex)
        H = wirtinger_hessian(u, z)
        worst = max(worst, float(np.linalg.norm(H)))
    return worst < tol, worst
