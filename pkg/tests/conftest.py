import pytest

from qjordan import construct_sjb

_BASIS_CACHE = {}


@pytest.fixture(scope="session")
def basis_for():
    """Session-cached construction: basis_for(q, n) -> SJB."""

    def get(q, n):
        key = (q, n)
        if key not in _BASIS_CACHE:
            _BASIS_CACHE[key] = construct_sjb(n, q)
        return _BASIS_CACHE[key]

    return get
