import pytest

from hlhitters.core import HLHitters
from hlhitters.verify import MUTANTS, differential_run, shrink_prefix, verify_workload
from hlhitters.workload import WorkloadSpec, generate


def test_constant_q1_passes():
    result = verify_workload(WorkloadSpec("constant", length=100), 1)
    assert result.passed and result.ops == 100


def test_uniform_q64_passes():
    result = verify_workload(WorkloadSpec("uniform", flows=16, length=20_000, seed=42), 64)
    assert result.passed


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_mutants_fail_with_counterexample(name):
    spec = WorkloadSpec("uniform", flows=16, length=2000, seed=42)
    result = verify_workload(spec, 7, hitters_factory=MUTANTS[name])
    assert not result.passed
    mm = result.mismatch
    assert 1 <= len(mm.prefix) <= 10
    # the reported prefix reproduces on its own
    assert differential_run(mm.prefix, 7, hitters_factory=MUTANTS[name]) is not None
    assert differential_run(mm.prefix, 7) is None
    assert "failing prefix" in mm.describe()


class OffByOneLightest(HLHitters):
    """Subtly wrong: lightest query skips the head node."""

    def query_lightest(self, k):
        return super().query_lightest(k + 1)[1:]


def test_detects_query_bug_and_shrinks():
    stream = generate(WorkloadSpec("uniform", flows=5, length=3000, seed=1)).tolist()
    found = differential_run(stream, 10, hitters_factory=OffByOneLightest)
    assert found is not None and found.check.startswith("lightest")
    small = shrink_prefix(found.prefix, 10, hitters_factory=OffByOneLightest)
    assert len(small) <= len(found.prefix)
    assert differential_run(small, 10, hitters_factory=OffByOneLightest) is not None


class DropsEvictions(HLHitters):
    def expire(self, item_set):
        if item_set == 3:
            self._occupancy -= 1
            return
        super().expire(item_set)


def test_detects_count_drift():
    stream = generate(WorkloadSpec("round-robin", flows=5, length=50)).tolist()
    found = differential_run(stream, 4, hitters_factory=DropsEvictions)
    assert found is not None
    assert found.check in {"counts", "exception"}
