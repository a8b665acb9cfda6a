import doctest

import pytest

import betamix.bounds
import betamix.histogram


@pytest.mark.parametrize("module", [betamix.histogram, betamix.bounds])
def test_docstring_examples(module):
    result = doctest.testmod(module)
    assert result.attempted > 0 and result.failed == 0
