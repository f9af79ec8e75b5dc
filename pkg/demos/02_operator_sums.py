# %% [markdown]
# # Minimal operator sums via realignment
#
# Reshuffling the indices of the representing matrix turns
# X -> sum_i E_i X F_i into the rank-m matrix sum_i vec(E_i) vec(F_i^T)^T,
# so an SVD gives an operator sum with the fewest possible terms.

# %%
import numpy as np

from ipfactor.superop import OpSum, from_supermat, max_unit_deviation, realign, realignment_rank, reduce, to_supermat

rng = np.random.default_rng(1)


def cmat(n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


# %% Three terms that secretly span only two
E1, E2, F1, F2 = cmat(3), cmat(3), cmat(3), cmat(3)
S = OpSum.from_pairs([(E1, F1), (E2, F2), (E1 + 2 * E2, F1 + F2)])
print("terms given:", S.m, " realignment rank:", realignment_rank(S))

R = reduce(S)
print("terms after reduce:", R.m, " max deviation on matrix units:", f"{max_unit_deviation(R, S):.1e}")

# %% Singular values of the realigned matrix
s = np.linalg.svd(realign(to_supermat(S)), compute_uv=False)
print("singular values:", np.round(s, 6))

# %% Any n^2 x n^2 matrix is some operator sum with at most n^2 terms
M = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
T = from_supermat(M)
print("generic 9x9 matrix ->", T.m, "terms, round trip error", f"{np.abs(to_supermat(T) - M).max():.1e}")
