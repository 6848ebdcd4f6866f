import random

import pytest

from ghpaths import _pykernels, kernels

from oracles import random_space


def int_tables(rng, m, n, hi=9):
    def table(k):
        t = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                t[i][j] = t[j][i] = rng.randint(1, hi)
        return t
    return table(m), table(n)


needs_compiled = pytest.mark.skipif(kernels.compiled is None,
                                    reason="compiled kernels not built")


@needs_compiled
@pytest.mark.parametrize("mode", [kernels.EXHAUSTIVE, kernels.BNB, kernels.BELOW])
def test_backends_agree(mode):
    rng = random.Random(mode)
    for _ in range(60):
        dx, dy = int_tables(rng, rng.randint(1, 4), rng.randint(1, 4))
        kw = {"bound": rng.randint(1, 9)} if mode == kernels.BELOW else {
            "seed": 10, "lower_bound": 0}
        for want_all in (False, True):
            p = kernels.correspondence_search(dx, dy, mode, want_all, backend="python", **kw)
            c = kernels.correspondence_search(dx, dy, mode, want_all, backend="compiled", **kw)
            assert p == c


@needs_compiled
def test_bijection_backends_agree():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(1, 6)
        dx, dy = int_tables(rng, n, n, hi=4)
        for excl in (False, True):
            assert (kernels.bijection_search(dx, dy, excl, backend="python")
                    == kernels.bijection_search(dx, dy, excl, backend="compiled"))


def test_huge_values_fall_back_to_python():
    big = 1 << 70
    dx = [[0, big], [big, 0]]
    best, _ = kernels.correspondence_search(dx, dx, kernels.EXHAUSTIVE)
    assert best == 0
    if kernels.compiled is not None:
        with pytest.raises(OverflowError):
            kernels.correspondence_search(dx, dx, kernels.EXHAUSTIVE, backend="compiled")


def test_single_point_bijection_without_identity():
    assert _pykernels.bijection_search([[0]], [[0]], exclude_identity=True) is None


def test_backend_flag():
    assert kernels.BACKEND in ("python", "compiled")
