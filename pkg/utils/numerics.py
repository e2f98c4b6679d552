# Dense linear-algebra kernel: spectra, matrix powers, partial traces and entropies

import logging
from functools import reduce

import numpy as np
from scipy import linalg
from scipy.special import entr

from utils.general import DomainError, NumericalError, PreconditionError

logger = logging.getLogger(__name__)

LN2 = np.log(2)  # entropies are in bits, decay exponents in nats
HERMITIAN_TOL = 1e-10  # max |M - M^dagger| entry accepted by eigen routines
DENSITY_TOL = 1e-12  # trace and Hermiticity tolerance of density matrices
UNITARY_TOL = 1e-10  # max |U^dagger U - I| entry
CLIP_TOL = 1e-12  # eigenvalues within this of zero are zero; below -CLIP_TOL is an error


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.abs(m - m.conj().T).max(initial=0) <= tol


def check_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, tol):
        raise PreconditionError(f'matrix of shape {m.shape} is not Hermitian within {tol:g}')
    return m


def check_density(rho, tol=DENSITY_TOL):
    # Validate a density matrix: square, Hermitian, unit trace, no eigenvalue below -CLIP_TOL
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho, tol):
        raise PreconditionError(f'density matrix of shape {rho.shape} is not Hermitian within {tol:g}')
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise PreconditionError(f'density matrix trace {tr:.15g} differs from 1 by more than {tol:g}')
    w = linalg.eigvalsh(rho)
    if w[0] < -CLIP_TOL:
        raise PreconditionError(f'density matrix has eigenvalue {w[0]:.3g} below -{CLIP_TOL:g}')
    return rho


def check_unitary(u, tol=UNITARY_TOL):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise PreconditionError(f'propagator of shape {u.shape} is not square')
    err = np.abs(u.conj().T @ u - np.eye(len(u))).max()
    if err > tol:
        raise PreconditionError(f'propagator is not unitary, |U^dagger U - I| = {err:.3g}')
    return u


def check_pure(psi, tol=UNITARY_TOL):
    psi = np.asarray(psi, dtype=complex).ravel()
    n = np.linalg.norm(psi)
    if abs(n - 1) > tol:
        raise PreconditionError(f'state vector norm {n:.15g} is not 1')
    return psi


def ket_to_dm(psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def kron_all(mats):
    # Kronecker product of a sequence, [[1]] for an empty sequence
    return reduce(np.kron, mats, np.ones((1, 1), dtype=complex))


def hermitian_eig(m):
    """Eigen-decomposition of a Hermitian matrix.

    Returns real eigenvalues in ascending order and orthonormal eigenvectors as columns.
    """
    m = check_hermitian(m)
    return linalg.eigh((m + m.conj().T) / 2)


def clipped_spectrum(rho):
    # Spectrum of a PSD matrix with |w| <= CLIP_TOL set to 0, ascending
    w, v = hermitian_eig(rho)
    if w[0] < -CLIP_TOL:
        raise NumericalError(f'eigenvalue {w[0]:.3g} below -{CLIP_TOL:g}')
    w = np.where(np.abs(w) <= CLIP_TOL, 0.0, w)
    return w, v


def psd_power(rho, c):
    """rho**c for a positive semidefinite matrix and c in [0, 1], with 0**0 = 0 on the kernel."""
    if not 0 <= c <= 1:
        raise DomainError(f'exponent c={c} must lie in [0, 1]')
    w, v = clipped_spectrum(rho)
    wc = np.where(w > 0, np.where(w > 0, w, 1.0) ** c, 0.0)
    return (v * wc) @ v.conj().T


def partial_trace(rho, factor_dims, keep):
    """Trace out every tensor factor not listed in keep.

    factor_dims: dimensions of the tensor factors, in order
    keep: indices of the factors to keep; the result orders them ascending
    """
    dims = [int(d) for d in factor_dims]
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise DomainError(f'keep indices {keep} out of range for {n} factors')
    rho = np.asarray(rho)
    d = int(np.prod(dims))
    if rho.shape != (d, d):
        raise DomainError(f'matrix shape {rho.shape} does not match factor dimensions {dims}')
    t = rho.reshape(dims + dims)
    m = n  # current number of row indices
    for i in reversed(range(n)):
        if i not in keep:
            t = np.trace(t, axis1=i, axis2=i + m)
            m -= 1
    dk = int(np.prod([dims[k] for k in keep]))
    return t.reshape(dk, dk)


def reduce_pure(psi, factor_dims, keep):
    # Reduced density matrix of a pure state vector, kept factors in ascending order
    dims = [int(d) for d in factor_dims]
    keep = sorted(set(int(k) for k in keep))
    rest = [i for i in range(len(dims)) if i not in keep]
    t = np.asarray(psi).reshape(dims).transpose(keep + rest)
    dk = int(np.prod([dims[k] for k in keep]))
    m = t.reshape(dk, -1)
    return m @ m.conj().T


def von_neumann_entropy(rho):
    """Von Neumann entropy in bits, summed over the clipped spectrum in ascending order."""
    w, _ = clipped_spectrum(rho)
    s = np.sum(entr(w)) / LN2
    return float(np.clip(s, 0.0, np.log2(len(w))))


def shannon_entropy(p):
    # Shannon entropy in bits of a probability vector
    p = np.asarray(p, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1) > DENSITY_TOL * max(1, p.size):
        raise DomainError(f'{p} is not a probability vector')
    return float(np.sum(entr(np.sort(p))) / LN2)


def binary_entropy(x):
    """h(x) = -x log2 x - (1-x) log2(1-x), 0 log 0 = 0.

    Evaluated on the sorted pair (x, 1-x) so h(x) and h(1-x) share one evaluation order.
    Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)) or np.any(x < 0) or np.any(x > 1):
        raise DomainError(f'binary entropy argument outside [0, 1]: {x}')
    y = 1.0 - x
    lo, hi = np.minimum(x, y), np.maximum(x, y)
    h = (entr(lo) + entr(hi)) / LN2
    return float(h) if h.ndim == 0 else h


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    w = linalg.eigvalsh(check_hermitian(m))
    return float(np.sum(np.abs(w)))
