import pytest

from hydra_ct import kernels

BACKENDS = [pytest.param(kernels.python_backend, id="python"),
            pytest.param(kernels.compiled_backend, id="compiled",
                         marks=pytest.mark.skipif(kernels.compiled_backend is None,
                                                  reason="compiled kernels not built"))]


@pytest.fixture(scope="module", params=BACKENDS)
def backend(request):
    """Swap the active kernels for the whole module, then restore them."""
    mod = request.param
    saved = {name: getattr(kernels, name) for name in kernels.KERNEL_NAMES}
    for name in kernels.KERNEL_NAMES:
        setattr(kernels, name, getattr(mod, name))
    yield mod
    for name, fn in saved.items():
        setattr(kernels, name, fn)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
