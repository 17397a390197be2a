"""The pure-Python fallback must give the same answers as the compiled kernels."""
import json
import os
import subprocess
import sys

from twocounters import _accel

SCRIPT = """
import json
from twocounters import _accel
from twocounters.generator import generate_two_counters
from twocounters.oracle import oracle_solve
from twocounters.randomgames import random_corpus
from twocounters.solvers import SOLVER_IDS, solve
out = {"backend": _accel.backend_name()}
g = generate_two_counters(3).game
for sid in SOLVER_IDS:
    r = solve(g, sid)
    out[sid] = [r.value, r.solution.winner.tolist(), r.solution.strategy.tolist()]
out["oracle"] = [oracle_solve(x).winner.tolist() for x in random_corpus(5, 10)]
print(json.dumps(out))
"""


def run_with(disable):
    env = dict(os.environ)
    env.pop("TWOCOUNTERS_NO_NUMBA", None)
    if disable:
        env["TWOCOUNTERS_NO_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_backends_agree():
    fast, slow = run_with(False), run_with(True)
    assert slow["backend"] != fast["backend"]
    for key in fast:
        if key != "backend":
            assert fast[key] == slow[key], key


def test_backend_name():
    assert _accel.backend_name() in ("numba", "numpy")
