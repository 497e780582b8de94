import random

import pytest

from classcover import _kernels_py, kernels


def _case(rng, nb, nr, size):
    bx = [rng.randint(0, size) for _ in range(nb)]
    by = [rng.randint(0, size) for _ in range(nb)]
    taken = set(zip(bx, by))
    free = [(x, y) for x in range(size + 1) for y in range(size + 1) if (x, y) not in taken]
    reds = rng.sample(free, min(nr, len(free)))
    return bx, by, [p[0] for p in reds], [p[1] for p in reds]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
def test_compiled_matches_fallback():
    from classcover import _kernels

    rng = random.Random(7)
    for _ in range(300):
        case = _case(rng, rng.randint(0, 90), rng.randint(0, 25), rng.choice([4, 12, 60]))
        a = _kernels.slab_runs(*case)
        b = _kernels_py.slab_runs(*case)
        assert sorted(a) == sorted(b)
        assert _kernels.maximal_masks(list(a)) == _kernels_py.maximal_masks(list(b))


def test_maximal_masks_drops_subsets_and_duplicates():
    got = _kernels_py.maximal_masks([0b011, 0b001, 0b110, 0b011, 0b100])
    assert sorted(got) == [0b011, 0b110]


def test_slab_runs_no_red_is_everything():
    runs = _kernels_py.slab_runs([0, 1, 2], [5, 1, 3], [], [])
    assert (1 << 3) - 1 in runs


def test_wrapper_handles_huge_coordinates():
    big = 10**30
    out = kernels.slab_runs([0, big], [0, big], [big // 2], [big // 2])
    assert 0b11 not in out


def test_pure_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    code = (
        "from classcover import kernels; from classcover.formula import Formula;"
        "from classcover.reduction import build_bcc; from classcover.solver import exact_cover;"
        "print(kernels.BACKEND, exact_cover(build_bcc(Formula(2)))[1].optimum)"
    )
    env = dict(os.environ, CLASSCOVER_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "4"]
