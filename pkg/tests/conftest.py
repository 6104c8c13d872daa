import sys

import hypothesis
import pytest

from huffkit import kernels

hypothesis.settings.register_profile("package", deadline=None)
hypothesis.settings.load_profile("package")


# session scope: backends are stateless modules, and it keeps the fixture
# out of hypothesis's function-scoped-fixture health check
@pytest.fixture(params=sorted(kernels.available_backends()), scope="session")
def backend(request):
    """Each importable packing backend in turn; 'python' is always one."""
    return kernels.available_backends()[request.param]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    acceptance = sys.modules.get("test_acceptance")
    verdicts = getattr(acceptance, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance verdicts")
        for line in verdicts:
            terminalreporter.write_line(line)
