# %% [markdown]
# # A positive-definite map with no all-positive form
#
# A([[x, y], [w, z]]) = [[x + (1-e) z, e y], [e w, z + (1-e) x]]
#
# defines an inner product for 0 < e < 1, but for e < 1/2 it cannot be
# written as sum A_i X B_i with all A_i, B_i positive.  For e > 1/2 such a
# form does exist (shown below with shifted Pauli matrices).

# %%
import numpy as np

from ipfactor.pipeline import decompose
from ipfactor.superop import realignment_rank
from ipfactor.witness import (
    E11,
    E22,
    counterexample_map,
    obstruction_audit,
    obstruction_lines,
    explicit_decompositions,
    positive_form_above_half,
)

A = counterexample_map(0.25)
print("A(E11) =", A(E11).real.tolist(), " A(E22) =", A(E22).real.tolist())
print("spectrum:", np.round(np.linalg.eigvalsh(A.supermat), 6), " realignment rank:", realignment_rank(A.supermat))

# %% Explicit decompositions for e = 1/4
herm, cert = explicit_decompositions(0.25)
print("Hermitian form terms:", herm.m)
print("minus-one certificate: signs", list(cert.signs), f"residual {cert.residual:.1e}, margins", np.round(cert.margins, 4))

# %% The pipeline finds its own minus-one form and cannot remove the sign
out = decompose(A.supermat, "positive")
print("requested positive, achieved:", out.achieved, "->", out.certificate.form, list(out.certificate.signs))
print("reason:", out.report.reason)

# %% Why: the entry bookkeeping of any positive candidate
for line in obstruction_lines(0.25):
    print(" ", line)

# %% Above one half the chain gives no contradiction, and a positive form exists
for e in (0.6, 0.9):
    S = positive_form_above_half(e)
    report = obstruction_audit(S, e)
    print(f"e = {e}: {S.m} positive terms, audit passed: {report.passed}")
    for line in report.lines():
        print("   ", line)

# %% The same construction is useless below one half
S = positive_form_above_half(0.6)
print("e = 0.6 pairs audited against e = 0.4:", obstruction_audit(S, 0.4).lines()[-1])
