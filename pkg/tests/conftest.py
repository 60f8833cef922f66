import pytest

from pihall.catalog import parse_descriptor
from pihall.constructions import build_group

_GROUPS = {}


@pytest.fixture(scope="session")
def built():
    """Build-and-memoize permutation models by descriptor text.

    Reusing one PermGroup instance per descriptor lets the oracle's
    closure memo accumulate across tests, which keeps repeated searches
    on the same group cheap.
    """

    def get(text):
        if text not in _GROUPS:
            d = parse_descriptor(text)
            _GROUPS[text] = (d, build_group(d))
        return _GROUPS[text]

    return get
