"""Complex linear-algebra kernels shared by the simulator.

Everything here operates on small dense problems (a handful of antennas),
so plain LAPACK-backed numpy routines are used throughout: SVD null
spaces, orthogonal projectors, Hermitian eigenvalues, determinants,
correlation coefficients, and Jain's fairness index.
"""

import warnings

import numpy as np

# Singular values below RANK_RTOL * sigma_max count as zero when deciding
# rank. I.i.d. complex Gaussian channels are full rank almost surely; the
# tolerance only guards degenerate hand-built inputs.
RANK_RTOL = 1e-10

# Condition-number ceiling for the Gram matrix in `projectors`.
COND_LIMIT = 1e12


def _as_matrix(a, name="matrix"):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def _as_vector(a, name="vector"):
    a = np.asarray(a, dtype=complex).ravel()
    if a.size < 2:
        raise ValueError(f"{name} must have at least 2 entries")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def null_space_basis(a, rtol=RANK_RTOL):
    """Orthonormal basis of the orthogonal complement of span(a).

    For an Nt x m matrix `a` (m < Nt) returns an Nt x eps matrix V whose
    columns satisfy a^H v = 0; beamforming along any of them produces no
    signal on the channels stacked in `a`.
    """
    a = _as_matrix(a)
    n, m = a.shape
    if m >= n:
        raise ValueError(
            f"need fewer columns than rows for a nonempty complement ({n}x{m})"
        )
    u, s, _ = np.linalg.svd(a, full_matrices=True)
    cutoff = rtol * s[0] if s.size else 0.0
    if np.any((s > 0.0) & (s <= cutoff)):
        warnings.warn(
            "singular value inside the rank tolerance band; "
            "using the smallest-rank interpretation",
            RuntimeWarning,
            stacklevel=2,
        )
    rank = int(np.count_nonzero(s > cutoff))
    return u[:, rank:]


def projectors(a):
    """Orthogonal projectors (P, Q) onto span(a) and its complement.

    P = a (a^H a)^-1 a^H and Q = I - P. `a` must have full column rank;
    a Gram condition number above COND_LIMIT is rejected.
    """
    a = _as_matrix(a)
    n, m = a.shape
    if m > n:
        raise ValueError(f"more columns than rows ({n}x{m}); cannot be full rank")
    gram = a.conj().T @ a
    if np.linalg.cond(gram) > COND_LIMIT:
        raise ValueError("rank-deficient interference matrix")
    p = a @ np.linalg.solve(gram, a.conj().T)
    p = 0.5 * (p + p.conj().T)
    q = np.eye(n, dtype=complex) - p
    return p, q


def jain_index(x):
    """Jain's fairness index (sum x)^2 / (n sum x^2), in [1/n, 1]."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empty vector")
    if np.any(x < 0.0):
        raise ValueError("entries must be nonnegative")
    denom = float(np.dot(x, x))
    if denom == 0.0:
        raise ValueError("undefined fairness for an all-zero vector")
    return float(x.sum()) ** 2 / (x.size * denom)


def correlation_coeff(a, b):
    """|<a, b>| / (||a|| ||b||), the cosine of the angle between a and b."""
    a = _as_vector(a, "a")
    b = _as_vector(b, "b")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("correlation undefined for a zero vector")
    return min(float(np.abs(np.vdot(a, b))) / (na * nb), 1.0)


def hermitian_eigvals(a, tol=1e-10):
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    a = _as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {n}x{m}")
    if np.max(np.abs(a - a.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(a)[::-1]


def abs_det(a):
    """|det(a)| for a square matrix."""
    a = _as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {n}x{m}")
    return float(np.abs(np.linalg.det(a)))
