"""Compiled and pure kernels must agree bit for bit.

The pure backend runs in a subprocess with COLORFIBER_PURE=1 so the two
implementations are never mixed inside one interpreter.
"""

import hashlib
import json
import os
import subprocess
import sys

import numpy as np

from colorfiber import _backend, active_backend

# shared fixture script: builds deterministic inputs, runs every kernel,
# prints a digest per kernel
FIXTURE_SCRIPT = r"""
import hashlib, json
import numpy as np
from colorfiber import (
    CDegSequence, ColorAssignment, cdeg, default_moves, realize,
)
from colorfiber import _backend
from colorfiber.reduction import _pidx_table
from colorfiber.ordering import weight_table
from colorfiber.graphs import _pair_endpoints

def digest(arr):
    return hashlib.sha256(np.ascontiguousarray(arr).tobytes()).hexdigest()

out = {"backend": _backend.active_backend()}

out["splitmix"] = digest(_backend.splitmix64_sequence(20240817, 512))

z = ColorAssignment.from_sequence((1, 1, 2, 2, 1, 1, 2, 2))
label = CDegSequence(degrees=(1, 6, 1, 6, 4, 3, 4, 3), cells=(3, 8, 3), k=2)
start = realize(label, z)
moves = default_moves(8, z)
midx, mval, mlen = moves.packed()
for name, lazy, simple in (
    ("chain", False, False),
    ("chain_lazy", True, False),
    ("chain_simple", False, True),
):
    samples, acc, rej, final = _backend.chain_run(
        start.entries, midx, mval, mlen, 3000, 100, 7, 424242, lazy, simple
    )
    out[name] = [digest(samples), int(acc), int(rej), digest(final)]

# the rewrite kernels require a non-decreasing coloring
zs = ColorAssignment.from_sequence((1, 1, 1, 1, 2, 2, 2, 2))
us, vs = _pair_endpoints(8)
colors = np.array(zs.colors, dtype=np.int64)
weights = weight_table(8)
pidx = _pidx_table(8)
rng = np.random.default_rng(99)
monos = rng.integers(0, 3, size=(200, 28)).astype(np.int64)
work = monos.copy()
counts = _backend.reduce_batch(work, us, vs, colors, weights, pidx)
out["reduce"] = [digest(work), digest(counts)]
out["witness"] = digest(_backend.side_witness_flags(monos, us, vs, colors))

cells = z.pair_cells()
d = np.array(label.degrees, dtype=np.int64)
c = np.array(label.cells, dtype=np.int64)
rows = _backend.fiber_backtrack(us, vs, cells, d, c, True, False)
out["backtrack"] = digest(rows)

print(json.dumps(out))
"""


def run_fixture(pure):
    env = dict(os.environ)
    if pure:
        env["COLORFIBER_PURE"] = "1"
    else:
        env.pop("COLORFIBER_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", FIXTURE_SCRIPT],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout)


def test_backend_outputs_identical():
    compiled = run_fixture(pure=False)
    pure = run_fixture(pure=True)
    assert pure["backend"] == "python"
    keys = set(compiled) | set(pure)
    for key in sorted(keys - {"backend"}):
        assert compiled[key] == pure[key], key


def test_default_backend_is_compiled_when_available():
    if os.environ.get("COLORFIBER_PURE") == "1":
        assert active_backend() == "python"
    else:
        assert active_backend() == "compiled"


def test_pure_override_env():
    out = run_fixture(pure=True)
    assert out["backend"] == "python"


def test_backend_module_surface():
    for name in (
        "splitmix64_sequence",
        "chain_run",
        "reduce_monomial",
        "reduce_batch",
        "side_witness_flags",
        "fiber_backtrack",
    ):
        assert hasattr(_backend, name)


def test_splitmix_dtype_and_range():
    words = _backend.splitmix64_sequence(1, 64)
    assert words.dtype == np.uint64
    assert len(set(words.tolist())) == 64
