"""This module contains diagforge, exact constructions of rational points on diagonal quartic and sextic surfaces."""

import importlib.util
import sys

__version__ = "0.1.0"

REQUIRED_PACKAGES = ("sympy", "numpy")


def check_dependencies() -> None:
    """Raises ImportError naming the first required package that is not installed."""
    for pkg_dependency in REQUIRED_PACKAGES:
        if pkg_dependency in sys.modules or importlib.util.find_spec(pkg_dependency) is not None:
            continue

        raise ImportError(
            f"The dependency {pkg_dependency} for diagforge is not installed. "
            "Install the dependencies using: "
            '"python -m pip install -r requirements.txt"'
        )


check_dependencies()
