"""The library gives the same answers with the pure-Python kernels forced on."""

import os
import subprocess
import sys

SCRIPT = r"""
import random
from fdsring import kernels
from fdsring.fds import Fds, product, canonical_code
from fdsring.division import divide_by_cancellative
assert kernels.BACKEND == "python"
rng = random.Random(4)
for _ in range(50):
    a = Fds([0] + [rng.randrange(i + 1) for i in range(rng.randint(0, 6))])
    b = Fds([rng.randrange(n) for n in [rng.randint(1, 8)] for _ in range(n)])
    assert divide_by_cancellative(product(a, b), a).quotient == b
print(canonical_code(product(Fds([1, 2, 0, 0, 0, 2, 7, 6, 7]), Fds([1, 2, 3, 4, 5, 0, 1]))))
"""


def run(pure):
    env = dict(os.environ)
    env.pop("FDSRING_PURE", None)
    if pure:
        env["FDSRING_PURE"] = "1"
    script = SCRIPT if pure else SCRIPT.replace('"python"', '"cython"')
    return subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True)


def test_backends_match():
    p, c = run(True), run(False)
    assert p.returncode == 0, p.stderr
    assert c.returncode == 0, c.stderr
    assert p.stdout == c.stdout
