import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from operadgb import builtins as B
from operadgb.groebner import buchberger


@pytest.fixture(scope="session")
def gb_ncrb():
    return buchberger(B.ncrb(), arity_bound=5, weight_bound=11)


@pytest.fixture(scope="session")
def gb_rb():
    return buchberger(B.rb(), arity_bound=4, weight_bound=9)


@pytest.fixture(scope="session")
def gb_bv():
    return buchberger(B.bv(), arity_bound=4, weight_bound=8)


@pytest.fixture(scope="session")
def gb_grav5():
    return buchberger(B.grav(5), arity_bound=5)


@pytest.fixture(scope="session")
def gb_odd_assoc():
    return buchberger(B.odd_assoc(1), arity_bound=7)
