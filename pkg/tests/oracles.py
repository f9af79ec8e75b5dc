"""Independent reference computations used by the tests.

Everything here is built from first principles (explicit loops over matrix
units, determinants, closed forms) and shares no code with the package.
"""
import itertools

import numpy as np


def unit(n, i, j):
    X = np.zeros((n, n), dtype=complex)
    X[i, j] = 1
    return X


def apply_pairs(pairs, X):
    return sum(E @ X @ F for E, F in pairs)


def gram_of_map(f, n):
    """G[(i,j),(k,l)] = trace(E_ij^* f(E_kl)) over matrix units."""
    idx = list(itertools.product(range(n), range(n)))
    G = np.zeros((n * n, n * n), dtype=complex)
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            G[a, b] = f(unit(n, k, l))[i, j]
    return G


def supermat_by_columns(f, n):
    """Matrix of f in column-stacking coordinates, one column per unit."""
    M = np.zeros((n * n, n * n), dtype=complex)
    for j in range(n):
        for i in range(n):
            M[:, j * n + i] = f(unit(n, i, j)).reshape(-1, order="F")
    return M


def tensor_rank(pairs, tol=1e-9):
    """Rank of sum_i E_i (x) F_i as a bilinear tensor."""
    T = sum(np.outer(E.ravel(), F.ravel()) for E, F in pairs)
    s = np.linalg.svd(T, compute_uv=False)
    return int(np.sum(s > tol * s[0])) if s[0] > 0 else 0


def min_eig_2x2(H):
    a, d = H[0, 0].real, H[1, 1].real
    b = abs(H[0, 1])
    return (a + d) / 2 - np.sqrt(((a - d) / 2) ** 2 + b * b)


def pencil_roots_2x2(P, Q):
    """Roots of det(P - t Q) for 2x2 matrices, ascending."""
    # det(P - tQ) = det(Q) t^2 - (p00 q11 + p11 q00 - p01 q10 - p10 q01) t + det(P)
    lin = P[0, 0] * Q[1, 1] + P[1, 1] * Q[0, 0] - P[0, 1] * Q[1, 0] - P[1, 0] * Q[0, 1]
    r = np.roots([np.linalg.det(Q), -lin, np.linalg.det(P)])
    return np.sort(r.real)


def hilbert_schmidt(X, Y):
    return sum(X[i, j] * np.conj(Y[i, j]) for i in range(X.shape[0]) for j in range(X.shape[1]))


def quadratic_min(f, n):
    """Smallest eigenvalue of the Hermitian Gram matrix of X -> <f(X), X>."""
    G = gram_of_map(f, n)
    return float(np.linalg.eigvalsh((G + G.conj().T) / 2)[0])


def epsilon_map(eps, X):
    (x, y), (w, z) = X
    return np.array([[x + (1 - eps) * z, eps * y], [eps * w, z + (1 - eps) * x]])
