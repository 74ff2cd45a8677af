import os

from fixtures.env import *  # noqa


def pytest_configure(config):
    """Set up environment variables before any modules are imported."""
    os.environ["TWISTED_DPD_DEFAULT_SEED"] = "20240601"
    os.environ["TWISTED_DPD_B_SAMPLE_CAP"] = "64"
    os.environ.setdefault("TWISTED_DPD_LOG_LEVEL", "WARNING")
    os.environ.setdefault("TWISTED_DPD_DEBUG", "false")

    # loguru reads this once, when first imported
    os.environ.setdefault("LOGURU_LEVEL", "WARNING")


pytest_configure(None)

from fixtures.algebra import *  # noqa
