import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from fdsring import _purekernels as pure
from fdsring import kernels

compiled = pytest.importorskip("fdsring._kernels")

maps = st.integers(0, 40).flatmap(
    lambda n: st.lists(st.integers(0, max(n - 1, 0)), min_size=n, max_size=n)
)


@given(maps)
def test_classify_agrees(succ):
    assert compiled.classify(succ) == pure.classify(succ)


@given(maps)
def test_height_agrees(succ):
    depth = pure.classify(succ)[0]
    assert compiled.height_and_preds(succ, depth) == pure.height_and_preds(succ, depth)


@given(maps, maps)
def test_product_agrees(a, b):
    assert compiled.product_succ(a, b) == pure.product_succ(a, b)


def test_large_inputs_agree():
    rng = random.Random(0)
    succ = [rng.randrange(50_000) for _ in range(50_000)]
    assert compiled.classify(succ) == pure.classify(succ)
    depth = pure.classify(succ)[0]
    assert compiled.height_and_preds(succ, depth) == pure.height_and_preds(succ, depth)


def test_selected_backend():
    assert kernels.BACKEND == "cython"


def test_pure_override():
    code = "import fdsring.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, FDSRING_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
