# %% [markdown]
# # Hermitian pairs without extra terms
#
# For a self-adjoint map in minimal form, the adjoints E_k^* lie in the
# span of the E_j.  The coefficient matrix C satisfies C conj(C) = I, and a
# square root D with D conj(D) = I mixes the terms into Hermitian pairs.

# %%
import numpy as np

from ipfactor.hermitize import compute_c, conj_sqrt, hermitian_form, hermitize, hermitize_doubling
from ipfactor.matspace import hermitian_defect
from ipfactor.sampling import random_self_adjoint_opsum
from ipfactor.superop import max_unit_deviation, reduce

rng = np.random.default_rng(2)
S = reduce(random_self_adjoint_opsum(3, 4, rng))
print("terms:", S.m, " worst Hermitian defect of the E's:", f"{max(hermitian_defect(E) for E in S.E):.2f}")

# %% The conjugate involution and its square root
C = compute_c(S)
D = conj_sqrt(C)
print(f"|C conj(C) - I| = {C.defect:.1e}")
print(f"|D^2 - C| = {D.square_defect:.1e}, |D conj(D) - I| = {D.unit_defect:.1e}")

# %% Mixing the terms
H = hermitize(S)
print("terms after mixing:", H.m)
print("worst Hermitian defect:", max(hermitian_defect(M) for M in np.concatenate([H.E, H.F])))
print(f"same map: {max_unit_deviation(H, S):.1e}")

# %% The cheap alternative splits every term, then re-reduces
H2 = hermitize_doubling(S)
print("doubling route terms:", H2.m, f" deviation {max_unit_deviation(H2, S):.1e}")

# %% The hard case for the logarithm: C = [[0, 1], [1, 0]] has eigenvalues +-1
swap = np.array([[0, 1], [1, 0]], dtype=complex)
D = conj_sqrt(swap)
print("sqrt of swap:\n", np.round(D.d, 6))

_, route = hermitian_form(S)
print("hermitian_form route:", route)
