import sys
from pathlib import Path

# the oracle helpers live next to the tests
sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    # importlib mode gives test modules synthetic names, so find it by path
    for mod in list(sys.modules.values()):
        if getattr(mod, "__file__", "") and mod.__file__.endswith("test_acceptance.py"):
            lines = mod.summary_lines()
            if lines:
                terminalreporter.section("acceptance criteria")
                for line in lines:
                    terminalreporter.write_line(line)
