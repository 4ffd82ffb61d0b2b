import pytest

from scrollnet.rules import DerivationStep, replay
from scrollnet.structure import parse_text


@pytest.fixture
def mp():
    """Modus ponens statement `a [a ; b]`: ids n0=a, n1=outloop, n2=a,
    n3=inloop, n4=b."""
    return parse_text("a [a ; b]")


FIG1B_STEPS = (
    DerivationStep("Deiterate", source="n0", target="n2"),
    DerivationStep("ClosePos", target="n1"),
    DerivationStep("Delete", target="n0"),
)


@pytest.fixture
def fig1b(mp):
    """The modus ponens proof object: one justification, one
    self-justification, one collapse."""
    return replay(mp, FIG1B_STEPS)
