import pytest

from nefbig import catalog


@pytest.fixture(scope="session")
def catalog_fans():
    return catalog.standard_fans()


@pytest.fixture(scope="session")
def smooth_projective_names(catalog_fans):
    from nefbig import divisors, fans

    return [
        name
        for name, fan in catalog_fans.items()
        if fans.is_smooth(fan) and fans.is_complete(fan) and divisors.is_projective(fan)
    ]
