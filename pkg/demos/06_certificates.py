# %% [markdown]
# # Certificates on disk and the command line
#
# Problems and certificates are canonical JSON.  A certificate stores the
# hash of its problem and enough data to re-check every claim from scratch.

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from ipfactor.io import certificate_doc, load_problem, supermat_doc, write_json
from ipfactor.pipeline import decompose
from ipfactor.witness import counterexample_map

work = Path(tempfile.mkdtemp())
spec = work / "eps.json"
write_json(supermat_doc(counterexample_map(0.25).supermat), spec)
problem = load_problem(spec)
print("problem hash:", problem.hash[:16], "...")

# %% Library route
cert = decompose(problem.target, "minus-one").certificate
doc = certificate_doc(cert, problem.hash).to_dict()
write_json(doc, work / "cert.json")
print("certificate keys:", sorted(doc))


# %% Command line route
def ipfactor(*args):
    proc = subprocess.run([sys.executable, "-m", "ipfactor", *map(str, args)], capture_output=True, text=True)
    print(f"$ ipfactor {' '.join(map(str, args))}  -> exit {proc.returncode}")
    print(proc.stdout.rstrip())
    return proc.returncode


ipfactor("validate", spec)
ipfactor("verify", work / "cert.json", spec)
ipfactor("decompose", spec, "--form", "positive", "--out", work / "pos.json")

# %% Tampering is caught
doc["pairs"][0]["A"][0][0][0] += 1e-3
write_json(doc, work / "tampered.json")
ipfactor("verify", work / "tampered.json", spec)

# %% Random specs are deterministic per seed
ipfactor("random", "--n", 2, "--m", 3, "--seed", 11, "--out", work / "r.json")
print(json.loads((work / "r.json").read_text())["seed"])
