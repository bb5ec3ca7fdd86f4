"""Error taxonomy: one catchable base for every structured failure."""

import pytest

from levelcross.errors import (
    BracketingError,
    BranchFailure,
    DegenerateGeometry,
    LevelCrossError,
    MissingColumn,
    NonConvergence,
    NonSimpleZero,
    ToleranceFailure,
)

ALL = [
    BranchFailure,
    DegenerateGeometry,
    BracketingError,
    NonConvergence,
    ToleranceFailure,
    NonSimpleZero,
    MissingColumn,
]


@pytest.mark.parametrize("exc", ALL)
def test_subclasses_base(exc):
    assert issubclass(exc, LevelCrossError)
    assert issubclass(exc, Exception)


def test_base_catches_all():
    for exc in ALL:
        with pytest.raises(LevelCrossError):
            raise exc("boom")


def test_distinct_classes():
    assert len(set(ALL)) == len(ALL)
