import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bnsegre import _kernels  # noqa: E402


@pytest.fixture(params=["python", "numba"])
def search(request):
    """Both builds of the single-cell search kernel."""
    if request.param == "numba" and not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    return _kernels.search_composition_py if request.param == "python" else _kernels.search_composition_jit


@pytest.fixture(params=["python", "numba"])
def kernel_backend(request, monkeypatch):
    """Route the oracle through one backend for the duration of a test."""
    if request.param == "python":
        monkeypatch.setattr(_kernels, "search_composition", _kernels.search_composition_py)
        monkeypatch.setattr(_kernels, "search_batch", _kernels.search_batch_py)
    elif not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    else:
        monkeypatch.setattr(_kernels, "search_composition", _kernels.search_composition_jit)
        monkeypatch.setattr(_kernels, "search_batch", _kernels.search_batch_jit)
    return request.param
