import numpy as np
import pytest
from hypothesis import settings

import fracdual as fd

# numeric property tests can be slow on shared CI boxes
settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_reference(delta: float = 0.5) -> fd.FractionalProgram:
    """1-D instance with every constant hand-checkable.

    quad term x^2, well term 0.5*(x^2/2 - 1)^2, margin 2x - x^2,
    margin peak 1 at x=1, parameter interval [1, 1/delta].
    """
    return fd.validate(
        Q=np.array([[2.0]]),
        f_vec=np.array([0.0]),
        B=np.array([[1.0]]),
        lam=1.0,
        H=np.array([[-2.0]]),
        b_vec=np.array([-2.0]),
        delta=delta,
    )


def make_gap_case() -> fd.FractionalProgram:
    """2-D instance built so the dual maximizer escapes the cone.

    With no coupling rows and lam=0 the ratio term vanishes and the task
    reduces to minimizing an indefinite quadratic over a disk; past a
    threshold parameter value the dual supremum sits on the definiteness
    boundary, so no Perfect certificate exists there.
    """
    return fd.validate(
        Q=np.array([[-4.0, 0.0], [0.0, 1.0]]),
        f_vec=np.array([0.0, 0.3]),
        B=np.zeros((0, 2)),
        lam=0.0,
        H=-np.eye(2),
        b_vec=np.array([0.0, 1.0]),
        delta=0.25,
    )


# frozen by the exhaustive grid reference (resolution 1e-5, then polished),
# cross-checked against a root of the closed-form derivative
REFERENCE_P0 = 0.7541442500731802
REFERENCE_X = 0.54899342130402
REFERENCE_MU = 1.2553461017910128

# value of the delta-boundary point 1 - sqrt(1/2): the minimum of the
# hardest subproblem (mu = 2), strictly above the global minimum
REFERENCE_EDGE_X = 0.2928932188134524
REFERENCE_EDGE_P0 = 1.0018398282201788

# gap-case truth: minimize 0.5 x'Qx - f'x over the disk |x - (0,-1)|^2 <= 1,
# closed form via boundary parameterization
GAP_CASE_MIN = -0.369
GAP_CASE_ARGMIN_X2 = -0.74


@pytest.fixture
def reference():
    return make_reference()


@pytest.fixture
def gap_case():
    return make_gap_case()
