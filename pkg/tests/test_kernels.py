"""Backend interchangeability: the compiled core and the numpy fallback
must agree bit for bit, and the dependency-level scheduler must respect
the sequential order."""

import subprocess
import sys

import numpy as np
import pytest

from dyadicmf._kernels import BACKEND, available_backends
from dyadicmf._kernels._fallback import _dependency_levels
from dyadicmf.rng import substream

BACKENDS = available_backends()
needs_both = pytest.mark.skipif(
    len(BACKENDS) < 2, reason="compiled core not built"
)


class TestDependencyLevels:
    @pytest.mark.parametrize("ell", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("n", [1, 2, 5, 17, 64, 100, 1023])
    def test_levels_cover_multiples_in_dependency_order(self, n, ell):
        levels = _dependency_levels(n, ell)
        seen = set()
        settled = set(i for i in range(1, n + 1) if i % ell)
        for level in levels:
            for i in level.tolist():
                assert i % ell == 0
                assert i not in seen
                k = i // ell
                for j in range(1, ell):
                    assert j * k in settled, (n, ell, i)
                seen.add(i)
            settled.update(level.tolist())
        assert seen == {i for i in range(ell, n + 1) if i % ell == 0}

    def test_ell_one_has_no_levels(self):
        assert _dependency_levels(17, 1) == ()


@needs_both
class TestBackendEquivalence:
    @pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("theta", [0.0, 0.5, -0.5, 0.9, -1.0, 1.0, 1 / 3])
    def test_sample_signs_identical(self, ell, theta):
        u = substream(17, ell).random((5, 401))
        results = [mod.sample_signs(u, ell, theta) for mod in BACKENDS.values()]
        assert np.array_equal(results[0], results[1])

    @pytest.mark.parametrize("n,ell,theta", [
        (0, 1, 0.5), (1, 1, 0.5), (10, 2, 0.5), (12, 3, -0.9),
        (8, 1, 1.0), (14, 4, 0.25), (11, 5, -1.0),
    ])
    def test_mass_tables_identical(self, n, ell, theta):
        results = [mod.cylinder_mass_table(n, ell, theta) for mod in BACKENDS.values()]
        assert np.array_equal(results[0], results[1])

    @pytest.mark.parametrize("n", list(range(1, 19)))
    def test_counts_identical(self, n):
        results = [mod.count_constrained(n) for mod in BACKENDS.values()]
        assert results[0] == results[1]

    @pytest.mark.parametrize("n,ell", [(10, 1), (12, 2), (14, 3), (9, 9)])
    def test_histograms_identical(self, n, ell):
        results = [mod.xi_sum_histogram(n, ell) for mod in BACKENDS.values()]
        assert np.array_equal(results[0], results[1])


class TestSampleSignsRule:
    def test_hand_walked_small_case(self):
        # ell=2: position 1 free, position 2 uses t = x_1
        theta = 0.6
        u = np.array([[0.49, 0.79, 0.51, 0.81]])
        mod = BACKENDS[BACKEND]
        out = mod.sample_signs(u, 2, theta)[0]
        assert out[0] == 1                      # 0.49 < 0.5
        p2 = 0.5 + 0.5 * theta * out[0]         # 0.8
        assert out[1] == (1 if u[0, 1] < p2 else -1) == 1
        assert out[2] == -1                     # 0.51 >= 0.5
        p4 = 0.5 + 0.5 * theta * out[1]         # t = x_2
        assert out[3] == (1 if u[0, 3] < p4 else -1) == -1

    def test_forced_signs_at_degenerate_theta(self):
        mod = BACKENDS[BACKEND]
        u = substream(3, 0).random((1, 60))
        out = mod.sample_signs(u, 1, 1.0)[0]
        assert np.all(out == 1)
        out = mod.sample_signs(u, 1, -1.0)[0]
        assert np.all(out == -1)


class TestEnvironmentOverride:
    def test_forced_numpy_backend(self):
        code = (
            "import dyadicmf._kernels as k; "
            "print(k.BACKEND)"
        )
        proc = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True, text=True,
            env={"PATH": "/usr/bin:/bin", "DYADICMF_KERNELS": "numpy"},
        )
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == "numpy"

    @needs_both
    def test_sampled_words_identical_across_backends(self):
        # end-to-end determinism: sample() under the forced numpy backend
        # must reproduce this process's words bit for bit
        code = (
            "from dyadicmf import RieszParams, sample; "
            "print(sample(RieszParams(3, -0.7), 5000, 12321).to_string())"
        )
        proc = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True, text=True,
            env={"PATH": "/usr/bin:/bin", "DYADICMF_KERNELS": "numpy"},
        )
        assert proc.returncode == 0, proc.stderr
        from dyadicmf import RieszParams, sample

        local = sample(RieszParams(3, -0.7), 5000, 12321).to_string()
        assert proc.stdout.strip() == local

    def test_rejects_unknown_backend(self):
        code = "import dyadicmf._kernels"
        proc = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True, text=True,
            env={"PATH": "/usr/bin:/bin", "DYADICMF_KERNELS": "fortran"},
        )
        assert proc.returncode != 0
