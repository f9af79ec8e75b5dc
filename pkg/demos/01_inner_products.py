# %% [markdown]
# # Inner products on M_n(C) as linear maps
#
# Every inner product on n x n complex matrices has the form
# <X, Y> = trace(Y^* A(X)) for a linear map A that is self-adjoint and
# positive definite under the trace pairing.  In column-stacking
# coordinates A is an n^2 x n^2 matrix, so both properties reduce to
# ordinary Hermitian linear algebra.

# %%
import numpy as np

from ipfactor.matspace import hs_inner
from ipfactor.pipeline import validate
from ipfactor.superop import OpSum, apply, quadratic_value, to_supermat, violating_matrix

rng = np.random.default_rng(0)
X = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))

# %% The trace pairing itself (A = identity)
print("<X, X> =", hs_inner(X, X).real, " sum |x_ij|^2 =", np.sum(np.abs(X) ** 2))

# %% A map given by a single term X -> E X F
E = np.array([[2.0, 1.0], [1.0, 3.0]])
F = np.array([[1.0, 0.5j], [-0.5j, 1.0]])
S = OpSum.from_pairs([(E, F)])
M = to_supermat(S)
print("representing matrix equals kron(F^T, E):", np.allclose(M, np.kron(F.T, E)))
print("A(X) two ways agree:", np.allclose(apply(S, X), E @ X @ F))

v = validate(S)
print(f"self-adjoint defect {v.defect:.1e}, min eigenvalue {v.min_eig:.4f}, inner product: {v.inner_product}")

# %% An indefinite pair fails, and the certificate is a concrete X
bad = OpSum.from_pairs([(np.diag([1.0, -1.0]), np.eye(2))])
v = validate(bad)
Xbad = violating_matrix(bad)
print("inner product:", v.inner_product)
print("violating X:\n", np.round(Xbad, 6), "\n<A X, X> =", quadratic_value(bad, Xbad).real)
