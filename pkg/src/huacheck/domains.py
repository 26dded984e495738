"""The four classical bounded symmetric domains: specs, membership,
sampling of interior and distinguished-boundary points, and the two explicit
biholomorphisms used by the counterexample demo.

Families:
  I(m,n)  : m x n complex matrices z with I - zz* > 0, m <= n
  II(n)   : symmetric n x n matrices in I(n,n)
  III(n)  : antisymmetric n x n matrices in I(n,n)
  IV(n)   : vectors z in C^n with 2|z|^2 - |zz^t|^2 - 1 < 0 and |zz^t|^2 < 1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

SYMMETRY_TOL = 1e-12


class UnsupportedDomainError(ValueError):
    """Requested quantity is not defined for this domain family."""


@dataclass(frozen=True)
class DomainSpec:
    family: str  # "I", "II", "III" or "IV"
    m: int
    n: int

    def __post_init__(self):
        if self.family not in ("I", "II", "III", "IV"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "I":
            if not (1 <= self.m <= self.n):
                raise ValueError("TypeI requires 1 <= m <= n")
        else:
            if self.m != self.n:
                raise ValueError("square families must have m == n")
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def shape(self):
        """Ambient matrix shape; TypeIV vectors are stored as 1 x n."""
        if self.family == "IV":
            return (1, self.n)
        return (self.m, self.n)

    @property
    def size(self):
        return self.shape[0] * self.shape[1]

    def label(self):
        if self.family == "I":
            return f"I({self.m},{self.n})"
        return f"{self.family}({self.n})"


def type_i(m, n):
    return DomainSpec("I", m, n)


def type_ii(n):
    return DomainSpec("II", n, n)


def type_iii(n):
    return DomainSpec("III", n, n)


def type_iv(n):
    return DomainSpec("IV", n, n)


def ball(n):
    """The unit ball B_n, realized as the rank-one domain I(1,n)."""
    return DomainSpec("I", 1, n)


def parse_spec(text):
    """Parse CLI-style domain strings like "I:2,3", "II:2", "IV:2"."""
    family, _, dims = text.partition(":")
    family = family.strip()
    if not dims:
        raise ValueError(f"missing dimensions in domain spec {text!r}")
    parts = [int(p) for p in dims.split(",")]
    if family == "I":
        if len(parts) != 2:
            raise ValueError("TypeI needs two dimensions, e.g. I:2,3")
        return type_i(*parts)
    if len(parts) != 1:
        raise ValueError(f"family {family} takes one dimension")
    if family == "II":
        return type_ii(parts[0])
    if family == "III":
        return type_iii(parts[0])
    if family == "IV":
        return type_iv(parts[0])
    raise ValueError(f"unknown family {family!r}")


def kappa(spec):
    """The determinant-power exponent of the Poisson kernel, as a rational."""
    if spec.family == "I":
        return Fraction(spec.n)
    if spec.family == "II":
        return Fraction(spec.n + 1, 2)
    if spec.family == "III":
        if spec.n % 2 == 0:
            return Fraction(spec.n - 1, 2)
        return Fraction(spec.n, 2)
    raise UnsupportedDomainError(
        "TypeIV has no determinant-kernel exponent; handle IV(2) via biholo_iv2"
    )


@dataclass(frozen=True)
class MatrixPoint:
    spec: DomainSpec
    value: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.value, dtype=complex).reshape(self.spec.shape)
        object.__setattr__(self, "value", v)
        if self.spec.family == "II":
            if np.max(np.abs(v - v.T)) > SYMMETRY_TOL:
                raise ValueError("TypeII point must be symmetric")
        elif self.spec.family == "III":
            if np.max(np.abs(v + v.T)) > SYMMETRY_TOL:
                raise ValueError("TypeIII point must be antisymmetric")


def membership_margin(spec, value):
    """Distance to the binding domain constraint; positive iff interior."""
    v = np.asarray(value, dtype=complex).reshape(spec.shape)
    if spec.family == "IV":
        z = v.reshape(-1)
        s2 = abs(z @ z) ** 2
        g1 = 1.0 - 2.0 * float(np.vdot(z, z).real) + s2
        g2 = 1.0 - s2
        return min(g1, g2)
    gram = np.eye(spec.m) - v @ v.conj().T
    return float(np.min(np.linalg.eigvalsh(gram)))


def contains(spec, value):
    margin = membership_margin(spec, value)
    return margin > 0.0, margin


def _shape_draw(spec, rng):
    v = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
    if spec.family == "II":
        v = (v + v.T) / 2.0
    elif spec.family == "III":
        v = (v - v.T) / 2.0
    return v


def sample_interior(spec, seed, count, target_norm=0.7, margin_floor=0.05):
    """Interior points built from norm-rescaled Gaussian draws.

    Each draw is symmetrized/antisymmetrized as the family requires, rescaled
    to the target operator norm (Euclidean norm for TypeIV), then shrunk until
    the membership margin clears the floor.
    """
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        v = _shape_draw(spec, rng)
        if spec.family == "IV":
            v = v * (target_norm / np.linalg.norm(v))
        else:
            v = v * (target_norm / np.linalg.norm(v, 2))
        while membership_margin(spec, v) < margin_floor:
            v = 0.9 * v
        points.append(MatrixPoint(spec, v))
    return points


def haar_unitary(rng, n):
    """Haar-distributed n x n unitary via phase-corrected QR."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _antisym_block_j(n):
    """Block-diagonal antisymmetric unitary of 2x2 blocks [[0,1],[-1,0]]."""
    if n % 2 != 0:
        raise ValueError("needs even n")
    J = np.zeros((n, n))
    for i in range(0, n, 2):
        J[i, i + 1] = 1.0
        J[i + 1, i] = -1.0
    return J


def sample_silov(spec, seed, count):
    """Points of the distinguished (minimal) boundary: w with ww* = I_m.

    TypeI uses Haar-orthonormal rows, TypeII symmetric unitaries U U^t, and
    TypeIII with even n antisymmetric unitaries U J U^t. TypeIII with odd n
    and TypeIV have no such parametrization here.
    """
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        if spec.family == "I":
            g = rng.standard_normal((spec.n, spec.m)) + 1j * rng.standard_normal(
                (spec.n, spec.m)
            )
            q, r = np.linalg.qr(g)
            d = np.diagonal(r)
            q = q * (d / np.abs(d))
            w = q.T
        elif spec.family == "II":
            u = haar_unitary(rng, spec.n)
            w = u @ u.T
        elif spec.family == "III" and spec.n % 2 == 0:
            u = haar_unitary(rng, spec.n)
            w = u @ _antisym_block_j(spec.n) @ u.T
        else:
            raise UnsupportedDomainError(
                f"no distinguished-boundary sampler for {spec.label()}"
            )
        points.append(MatrixPoint(spec, w))
    return points


def rank_deficient_pseudo_boundary(n, seed):
    """An antisymmetric boundary point of III(n), n odd, with w*w != I.

    Built as U diag(J_{n-1}, 0) U^t; serves as the negative control where the
    residual kernel tensor does not vanish.
    """
    if n % 2 == 0:
        raise ValueError("pseudo-boundary construction targets odd n")
    rng = np.random.default_rng(seed)
    u = haar_unitary(rng, n)
    block = np.zeros((n, n))
    block[: n - 1, : n - 1] = _antisym_block_j(n - 1)
    w = u @ block @ u.T
    return MatrixPoint(type_iii(n), w)


# -- explicit biholomorphisms ------------------------------------------------


def biholo_iii3(z):
    """Embed a point of B_3 as the antisymmetric 3x3 matrix of III(3)."""
    z = np.asarray(z, dtype=complex).reshape(3)
    if np.linalg.norm(z) >= 1.0:
        raise ValueError("input must lie in the open unit ball B_3")
    w = np.array(
        [
            [0.0, z[0], z[1]],
            [-z[0], 0.0, z[2]],
            [-z[1], -z[2], 0.0],
        ],
        dtype=complex,
    )
    return MatrixPoint(type_iii(3), w)


def biholo_iv2(z1, z2):
    """Map the bidisc onto IV(2): (z1, z2) -> ((z1+z2)/2, (z1-z2)/(2i)).

    Membership follows from the identity
    1 + |w w^t|^2 - 2|w|^2 = (1 - |z1|^2)(1 - |z2|^2) > 0 with
    |w w^t| = |z1 z2| < 1.
    """
    if abs(z1) >= 1.0 or abs(z2) >= 1.0:
        raise ValueError("input must lie in the open unit bidisc")
    return ((z1 + z2) / 2.0, (z1 - z2) / 2j)


def biholo_iv2_inverse(w1, w2):
    """Inverse of biholo_iv2: z1 = w1 + i w2, z2 = w1 - i w2."""
    return (w1 + 1j * w2, w1 - 1j * w2)


# -- JSON fixtures -------------------------------------------------------


def matrix_to_json(value):
    v = np.atleast_2d(np.asarray(value, dtype=complex))
    return [[[float(e.real), float(e.imag)] for e in row] for row in v]


def matrix_from_json(data):
    return np.array([[complex(re, im) for re, im in row] for row in data])


def points_to_json(points):
    return [matrix_to_json(p.value) for p in points]


def points_from_json(spec, data):
    return [MatrixPoint(spec, matrix_from_json(d)) for d in data]
