# %% [markdown]
# # Positive factors
#
# One or two terms: a positive-definite map can always be written with
# every factor positive.  Any number of terms: all factors positive and
# exactly one minus sign.  Removing that last sign is tried with a simple
# sufficient test.

# %%
import numpy as np

from ipfactor.positivize import minus_one_form, positivize_single, positivize_two, try_all_positive
from ipfactor.sampling import random_pd_hermitian_opsum, random_pd_two_term
from ipfactor.superop import OpSum

rng = np.random.default_rng(3)


def describe(cert):
    signs = "".join("+" if s > 0 else "-" for s in cert.signs)
    print(f"  form {cert.form}, signs {signs}, residual {cert.residual:.1e}, smallest margin {cert.margins.min():.3g}")


# %% One term, both factors negative definite
P = np.array([[2.0, 1.0], [1.0, 2.0]])
print("single term (-P) X (-P):")
describe(positivize_single(OpSum.from_pairs([(-P, -P)])))

# %% Two Hermitian pairs, each factor indefinite
S = random_pd_two_term(3, rng)
print("two terms, eigenvalues of the first A:", np.round(np.linalg.eigvalsh(S.E[0]), 3))
cert = positivize_two(S)
describe(cert)
print("  ledger t0 =", f"{cert.ledger.t0:.4g}", " eps =", f"{cert.ledger.eps_backoff:.4g}")

# %% Five Hermitian pairs
S = random_pd_hermitian_opsum(3, 5, rng)
cert = minus_one_form(S)
print("five terms:")
describe(cert)
print("  steps:", [s["step"] for s in cert.ledger.steps])

# %% Trying to drop the sign
out = try_all_positive(cert, S)
if hasattr(out, "form"):
    print("sign removed:")
    describe(out)
else:
    print("condition not met:", out.reason)
