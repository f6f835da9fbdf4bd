"""Brute-force truncated-Fock oracle.

States are plain amplitude vectors over |0> .. |dim-1>.  All quantities are
computed numerically — moments by ladder application, quadrature powers by
repeated matrix-free application of X - <X> to the state — so the results are
exact up to truncation and rounding and serve as ground truth for the closed
forms in :mod:`hcslab.moments`.  Nothing here evaluates a closed-form moment.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .moments import HcsParams
from .witnesses import QuadratureSpec

DEFAULT_TAIL_TOL = 1e-12

#: Probability mass allowed in the top `order` slots before a powered
#: quadrature is considered truncation-unsafe (each application of X spreads
#: support up by one level).
QUADRATURE_EDGE_TOL = 1e-10

NORMALIZATION_TOL = 1e-6


class TruncationError(RuntimeError):
    """The truncated basis is too small for the requested construction."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Maximum acceptable truncated probability mass and the dimension floor."""

    tail_tol: float = DEFAULT_TAIL_TOL
    min_dim: int = 16

    def __post_init__(self):
        if not (math.isfinite(self.tail_tol) and self.tail_tol > 0.0):
            raise ValueError(f"tail_tol must be positive, got {self.tail_tol!r}")
        if self.min_dim < 16:
            raise ValueError(f"min_dim must be at least 16, got {self.min_dim!r}")


@dataclass(frozen=True)
class FockVector:
    """Immutable amplitude vector over the truncated Fock basis."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amps must be a non-empty 1-d array")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amps must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def _poisson_tail(mean: float, k: int) -> float:
    """P(N > k) for N ~ Poisson(mean)."""
    if mean == 0.0:
        return 0.0
    # Poisson survival function through the regularized lower incomplete gamma
    return float(gammainc(k + 1, mean))


def choose_truncation(alpha, policy: TruncationPolicy | None = None, headroom: int = 0) -> int:
    """Pick a basis dimension adequate for a coherent amplitude alpha.

    Starts from dim = |alpha|^2 + 10 sqrt(|alpha|^2 + 1) plus caller headroom
    (largest ladder power used + 2 protects powered-quadrature spreading) and
    grows until the Poisson tail beyond dim - 2 is below the policy tolerance.
    Monotone nondecreasing in |alpha|.
    """
    if policy is None:
        policy = TruncationPolicy()
    if headroom < 0:
        raise ValueError("headroom must be non-negative")
    mu = abs(complex(alpha)) ** 2
    dim = max(policy.min_dim, math.ceil(mu + 10.0 * math.sqrt(mu + 1.0)) + headroom)
    while _poisson_tail(mu, dim - 2) >= policy.tail_tol:
        dim += 1
    return dim


def _coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Raw amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) of |alpha>.

    The factorial square roots are accumulated one level at a time: n!
    overflows doubles at n = 171 even though the amplitude ratios stay tame.
    """
    ratios = alpha / np.sqrt(np.arange(1, dim))
    amps = np.empty(dim, dtype=np.complex128)
    amps[0] = 1.0
    np.cumprod(ratios, out=amps[1:])
    return math.exp(-0.5 * abs(alpha) ** 2) * amps


def _normalized_or_flag(raw: np.ndarray, tail_tol: float, what: str) -> FockVector:
    total = float(np.sum(np.abs(raw) ** 2))
    if total <= 0.0:
        raise ValueError(f"{what}: zero-norm construction")
    if abs(raw[-1]) ** 2 / total >= tail_tol:
        raise TruncationError(
            f"{what}: truncation inadequate, top-level mass "
            f"{abs(raw[-1]) ** 2 / total:.3e} exceeds the tolerance {tail_tol:.3e}"
        )
    return FockVector(raw / math.sqrt(total))


def build_coherent(alpha, dim: int, tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Coherent state |alpha> in a dim-dimensional basis, renormalized within it."""
    alpha = complex(alpha)
    return _normalized_or_flag(_coherent_amplitudes(alpha, dim), tail_tol, f"coherent alpha={alpha}")


def _hcs_raw(params: HcsParams, dim: int) -> np.ndarray:
    """Unnormalized sqrt(eps)|alpha> + sqrt(1-eps) e^{i phi} a^dag |alpha> amplitudes."""
    coherent = _coherent_amplitudes(params.alpha, dim)
    added = np.zeros(dim, dtype=np.complex128)
    added[1:] = np.sqrt(np.arange(1, dim)) * coherent[:-1]
    eps = params.epsilon
    return math.sqrt(eps) * coherent + math.sqrt(1.0 - eps) * cmath.exp(1j * params.phi) * added


def build_hcs(params: HcsParams, dim: int, tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Hybrid coherent state built amplitude-wise and normalized numerically."""
    return _normalized_or_flag(_hcs_raw(params, dim), tail_tol, f"hcs {params}")


def _annihilated(amps: np.ndarray, times: int) -> np.ndarray:
    """a^times applied to an amplitude vector; shrinks by one slot per power."""
    v = amps
    for _ in range(times):
        v = np.sqrt(np.arange(1.0, v.size)) * v[1:]
    return v


def numeric_moment(state: FockVector, n: int, m: int) -> complex:
    """<a^dag^n a^m> = <a^n psi | a^m psi>, exact for the stored vector."""
    if n < 0 or m < 0:
        raise ValueError(f"moment orders must be non-negative, got ({n}, {m})")
    if max(n, m) >= state.dim:
        raise ValueError(
            f"ladder power {max(n, m)} exhausts the truncated basis (dim {state.dim})"
        )
    left = _annihilated(state.amps, n)
    right = _annihilated(state.amps, m)
    size = min(left.size, right.size)
    return complex(np.vdot(left[:size], right[:size]))


def _apply_quadrature(v: np.ndarray, scale: float, phase: complex) -> np.ndarray:
    """One application of X = scale * (a^dag e^{i psi} + a e^{-i psi})."""
    out = np.zeros_like(v)
    roots = np.sqrt(np.arange(1.0, v.size))
    out[:-1] = phase.conjugate() * (roots * v[1:])
    out[1:] += phase * (roots * v[:-1])
    return scale * out


def quadrature_central_moment(state: FockVector, quad: QuadratureSpec, order: int) -> float:
    """<(dX_psi)^order> by repeated application of X - <X> to the state.

    Every application spreads support up by one level, so the top `order`
    slots of the state must be essentially empty for the result to be trusted.
    """
    if order not in (2, 4, 6, 8, 10):
        raise ValueError(f"order must be one of 2, 4, 6, 8, 10, got {order}")
    edge = state.amps[max(0, state.dim - order) :]
    edge_mass = float(np.sum(np.abs(edge) ** 2))
    if edge_mass >= QUADRATURE_EDGE_TOL:
        raise TruncationError(
            f"quadrature power {order}: probability mass {edge_mass:.3e} in the top "
            f"{order} levels would spread past the truncation"
        )
    scale = math.sqrt(quad.commutator_c / 2.0)
    phase = cmath.exp(1j * quad.psi)
    mean_a_num = numeric_moment(state, 0, 1)
    x_mean = 2.0 * scale * (mean_a_num * phase.conjugate()).real
    v = state.amps
    for _ in range(order):
        v = _apply_quadrature(v, scale, phase) - x_mean * v
    value = complex(np.vdot(state.amps, v))
    if abs(value.imag) > 1e-10:
        raise ValueError(f"<(dX)^{order}> should be real, got imaginary residue {value.imag:.3e}")
    return value.real


def fidelity(u: FockVector, v: FockVector) -> float:
    """|<u|v>|^2 for unit-normalized inputs; the shorter vector is zero-padded."""
    for name, state in (("u", u), ("v", v)):
        if abs(state.norm() - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"fidelity expects normalized states, |{name}| = {state.norm()!r}")
    size = min(u.dim, v.dim)
    overlap = np.vdot(u.amps[:size], v.amps[:size])
    return min(1.0, float(abs(overlap) ** 2))


class FockMoments:
    """Moment provider backed by :func:`numeric_moment` over one state."""

    def __init__(self, state: FockVector):
        self.state = state
        self._cache: dict[tuple[int, int], complex] = {}

    def moment(self, n: int, m: int) -> complex:
        key = (n, m)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._cache[key] = numeric_moment(self.state, n, m)
        return cached

    def mean_a(self) -> complex:
        return self.moment(0, 1)
