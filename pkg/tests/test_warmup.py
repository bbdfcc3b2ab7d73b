import warnings
from unittest.mock import MagicMock, patch

import numpy as np
import pytest

from ratbound.simulator import KERNEL_VECTORS, _iterate_float
from ratbound.warmup import warmup_jit


class TestWarmup:
    def test_warmup_runs(self) -> None:
        """Warmup calls the kernel compilation helper once."""
        with patch("ratbound.warmup._warmup_kernel") as mock_kernel:
            assert warmup_jit() is True
            mock_kernel.assert_called_once()

    @patch("ratbound.warmup._warmup_kernel")
    def test_warmup_failure_survived(self, mock_kernel: MagicMock) -> None:
        """An exception during compilation becomes a RuntimeWarning."""
        mock_kernel.side_effect = RuntimeError("Something exploded")
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            assert warmup_jit() is False
        runtime_warnings = [x for x in w if issubclass(x.category, RuntimeWarning)]
        assert len(runtime_warnings) == 1
        assert "Ratbound JIT warmup failed" in str(runtime_warnings[0].message)
        assert "Something exploded" in str(runtime_warnings[0].message)

    def test_warmup_compiles_kernel(self) -> None:
        """The real kernel compiles and runs on the dummy input."""
        with warnings.catch_warnings():
            warnings.simplefilter("error", RuntimeWarning)
            assert warmup_jit() is True

    def test_warmup_is_idempotent(self) -> None:
        """A second call reuses the compiled kernel."""
        assert warmup_jit() is True
        assert warmup_jit() is True


@pytest.mark.parametrize("steps", [1, 3])
def test_kernel_fills_history(steps: int) -> None:
    """The compiled kernel writes one value per step after the k initial slots."""
    k = 1
    hx = np.ones(k + steps)
    hy = np.ones(k + steps)
    consts = np.ones(4)
    vecs = np.zeros((len(KERNEL_VECTORS), k))
    generated, code = _iterate_float(hx, hy, consts, vecs, k, steps, 1e-300, 1e300)
    assert (generated, code) == (steps, 0)
    np.testing.assert_array_equal(hx, np.ones(k + steps))
