"""Box enumeration and fiber bucketing."""

import itertools
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denumerant import (
    BoxTooLargeError,
    build_fiber_index,
    fiber,
    fiber_index_from_json,
    fiber_index_to_json,
    make_instance,
)
from denumerant.congruence import iter_box_sums

weights = st.lists(st.integers(min_value=1, max_value=8), min_size=1, max_size=3).map(tuple)


class TestMakeInstance:
    def test_lcm_and_product(self):
        assert make_instance((2, 3), "lcm").D == 6
        assert make_instance((2, 3), "product").D == 6
        inst = make_instance((4, 6), "lcm")
        assert (inst.D, inst.g) == (12, 2)
        assert make_instance((4, 6), "product").D == 24

    def test_explicit(self):
        assert make_instance((2, 3), 12).D == 12
        with pytest.raises(ValueError):
            make_instance((2, 3), 8)

    @pytest.mark.parametrize("bad", [(), (0,), (-1, 2), (2.5, 3), ("3", 5)])
    def test_rejects_bad_weights(self, bad):
        with pytest.raises(ValueError):
            make_instance(bad)

    def test_rejects_bad_choice(self):
        with pytest.raises(ValueError):
            make_instance((2, 3), "smallest")

    def test_box_size(self):
        assert make_instance((2, 3)).box_size == 6  # 3 * 2
        assert make_instance((1, 1)).box_size == 1


class TestBuildFiberIndex:
    def test_2_3_is_six_singletons(self):
        index = build_fiber_index(make_instance((2, 3)))
        assert index.residues() == (0, 1, 2, 3, 4, 5)
        assert all(len(index.fiber(v)) == 1 for v in range(6))
        assert {v: index.fiber(v).sums[0] for v in range(6)} == {
            0: 0, 1: 7, 2: 2, 3: 3, 4: 4, 5: 5,
        }

    def test_point_box(self):
        index = build_fiber_index(make_instance((1, 1)))
        assert index.residues() == (0,)
        assert index.fiber(0).tuples == ((0, 0),)

    def test_3_5_residue_7(self):
        index = build_fiber_index(make_instance((3, 5)))
        assert index.total_tuples == 15
        assert all(len(f) == 1 for f in index.fibers.values())
        assert index.fiber(7).sums == (22,)

    def test_guard_reports_cardinality(self):
        inst = make_instance((2, 3))
        with pytest.raises(BoxTooLargeError) as err:
            build_fiber_index(inst, max_box=5)
        assert err.value.box_size == 6
        assert "6" in str(err.value)

    def test_worker_count_does_not_change_result(self):
        inst = make_instance((4, 6, 9))
        one = build_fiber_index(inst, workers=1)
        for workers in (2, 3, 7):
            other = build_fiber_index(inst, workers=workers)
            assert other.instance == one.instance
            assert dict(other.fibers) == dict(one.fibers)

    @settings(max_examples=40, deadline=None)
    @given(weights)
    def test_cardinality_law(self, a):
        inst = make_instance(a)
        index = build_fiber_index(inst)
        expect = inst.g * inst.D ** (inst.r - 1) // prod(inst.a)
        for v in range(inst.D):
            want = expect if v % inst.g == 0 else 0
            assert len(index.fiber(v)) == want

    @settings(max_examples=40, deadline=None)
    @given(weights)
    def test_partition_law(self, a):
        inst = make_instance(a)
        index = build_fiber_index(inst)
        seen = sorted(t for f in index.fibers.values() for t in f.tuples)
        box = sorted(itertools.product(*[range(n) for n in inst.axis_lengths]))
        assert seen == box

    @settings(max_examples=40, deadline=None)
    @given(weights)
    def test_fiber_invariants(self, a):
        inst = make_instance(a)
        index = build_fiber_index(inst)
        bound = inst.r * inst.D
        for v, f in index.fibers.items():
            assert list(f.tuples) == sorted(f.tuples)
            for t, s in zip(f.tuples, f.sums):
                assert s == sum(ai * ji for ai, ji in zip(inst.a, t))
                assert s % inst.D == v
                assert s < bound


class TestSingleFiber:
    def test_examples(self):
        f = fiber(make_instance((2, 3)), 12)
        assert (f.residue, f.tuples, f.sums) == (0, ((0, 0),), (0,))
        assert fiber(make_instance((4, 6)), 5).is_empty
        f = fiber(make_instance((3, 5)), 8)
        assert (f.tuples, f.sums) == (((1, 1),), (8,))

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            fiber(make_instance((2, 3)), -1)

    def test_guard(self):
        with pytest.raises(BoxTooLargeError):
            fiber(make_instance((2, 3)), 1, max_box=5)

    @settings(max_examples=40, deadline=None)
    @given(weights, st.integers(min_value=0, max_value=60))
    def test_matches_full_index(self, a, n):
        # the solved-coordinate shortcut must agree with full-scan bucketing
        inst = make_instance(a)
        assert fiber(inst, n) == build_fiber_index(inst).fiber(n)


class TestBoxSumStream:
    @settings(max_examples=30, deadline=None)
    @given(weights)
    def test_matches_product_enumeration(self, a):
        inst = make_instance(a)
        want = [
            sum(ai * ji for ai, ji in zip(inst.a, j))
            for j in itertools.product(*[range(n) for n in inst.axis_lengths])
        ]
        assert list(iter_box_sums(inst)) == want


class TestImmutability:
    def test_fibers_mapping_rejects_writes(self):
        index = build_fiber_index(make_instance((2, 3)))
        with pytest.raises(TypeError):
            index.fibers[0] = None

    def test_dataclasses_are_frozen(self):
        inst = make_instance((2, 3))
        with pytest.raises(AttributeError):
            inst.D = 12
        f = fiber(inst, 0)
        with pytest.raises(AttributeError):
            f.sums = ()


class TestSerialization:
    def test_round_trip(self):
        index = build_fiber_index(make_instance((4, 6, 9)))
        blob = fiber_index_to_json(index)
        back = fiber_index_from_json(blob)
        assert back.instance == index.instance
        assert dict(back.fibers) == dict(index.fibers)

    def test_all_strings(self):
        blob = fiber_index_to_json(build_fiber_index(make_instance((3, 5))))
        assert all(isinstance(x, str) for x in blob["instance"]["a"])
        assert isinstance(blob["instance"]["D"], str)
        some_fiber = next(iter(blob["fibers"].values()))
        assert all(isinstance(j, str) for t in some_fiber for j in t)

    def test_rejects_corrupt_tuples(self):
        blob = fiber_index_to_json(build_fiber_index(make_instance((3, 5))))
        blob["fibers"]["0"] = [["1", "1"]]  # sum 8 does not lie in residue 0
        with pytest.raises(ValueError):
            fiber_index_from_json(blob)
