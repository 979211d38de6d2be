import sys
from pathlib import Path

import pytest
import sympy
from hypothesis import HealthCheck, settings

from twistlab import reps
from twistlab.scalars import PARAMS, Scalar, unpack

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile(
    "twistlab", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("twistlab")

SYMS = sympy.symbols(" ".join(PARAMS))
SYM = dict(zip(PARAMS, SYMS))


def _poly_to_sympy(p):
    out = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(SYMS, unpack(mono)):
            if e:
                term *= s ** e
        out += term
    return out


def to_sympy(a: Scalar):
    """Independent oracle view of a Scalar."""
    return _poly_to_sympy(a.num) / _poly_to_sympy(a.den)


def sympy_equal(a: Scalar, expr) -> bool:
    return sympy.simplify(to_sympy(a) - expr) == 0


@pytest.fixture(scope="session")
def fund():
    return reps.rep_by_name("fund")


@pytest.fixture(scope="session")
def dual():
    return reps.rep_by_name("dual")
