import sys
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from wapkit.graphic import DiscrepancyProfile  # noqa: E402

PROFILES_CHECKED = Counter()


def assert_pigeonhole(d: DiscrepancyProfile) -> None:
    """Some level of D_1..D_N has at least ceil(N/(W+1)) hits, W the width."""
    vals = d.values[1:].tolist()
    if not vals:
        return
    best = max(Counter(vals).values())
    bound = oracles.pigeonhole_bound(d.values.tolist())
    assert best >= bound, f"pigeonhole violated: {best} < {bound} at slope {d.slope}"
    PROFILES_CHECKED["profiles"] += 1


@pytest.fixture(autouse=True, scope="session")
def pigeonhole_on_every_profile():
    original = DiscrepancyProfile.__init__

    def checked_init(self, *args, **kwargs):
        original(self, *args, **kwargs)
        assert_pigeonhole(self)

    DiscrepancyProfile.__init__ = checked_init
    yield PROFILES_CHECKED
    DiscrepancyProfile.__init__ = original
