import pytest

from minforge.model import Circuit, Component, STANDARD_KINDS, Wire


def build_tiny3() -> Circuit:
    """source -> 2x2 switch -> dest, two straight wires."""
    return Circuit(
        (
            Component(0, STANDARD_KINDS["source_terminal"], (100, 100), 40, 40),
            Component(1, STANDARD_KINDS["switch_2x2"], (300, 100), 40, 60),
            Component(2, STANDARD_KINDS["dest_terminal"], (500, 100), 40, 40),
        ),
        (Wire(0, 0, 0, 1, 0), Wire(1, 1, 2, 2, 0)),
        "tiny3",
    )


@pytest.fixture
def tiny3() -> Circuit:
    return build_tiny3()
