import pytest

from mspecial.transforms import fuzz_parameter_sets

SETS = dict(fuzz_parameter_sets())


def rel_err(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


@pytest.fixture(params=sorted(SETS))
def param_set(request):
    return request.param, SETS[request.param]
