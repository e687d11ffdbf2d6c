import warnings

import pytest

from cumulift.errors import InconsistentCounts, MalformedInput, NegativeValue
from cumulift.fixtures import FIXTURE_JSON, FIXTURE_RCP, FIXTURE_SCH, FIXTURE_SM
from cumulift.instance import InstanceKind, encode_canonical, to_demand_system
from cumulift.parsers import InstanceFormat, detect_format, parse_instance


class TestPsplibSm:
    def test_fixture_shape(self):
        instance = parse_instance(FIXTURE_SM, InstanceFormat.PSPLIB_SM, name="fixture")
        assert instance.n_tasks == 6  # incl. two dummies
        assert instance.n_resources == 1
        assert instance.kind is InstanceKind.RCPSP
        assert [t.duration for t in instance.tasks] == [0, 1, 1, 1, 2, 0]
        assert [t.demands[0] for t in instance.tasks] == [0, 5, 3, 2, 4, 0]
        assert instance.resources[0].capacity == 7
        assert instance.horizon == 12

    def test_rcpsp_offsets_equal_source_durations(self):
        instance = parse_instance(FIXTURE_SM, InstanceFormat.PSPLIB_SM)
        durations = [t.duration for t in instance.tasks]
        for arc in instance.precedences:
            assert arc.offset == durations[arc.from_task]

    def test_projection_matches_knapsack(self):
        instance = parse_instance(FIXTURE_SM, InstanceFormat.PSPLIB_SM)
        system = to_demand_system(instance)
        assert system.matrix.tolist() == [[5, 3, 2, 4]]
        assert system.rhs.tolist() == [7]

    def test_inconsistent_counts(self):
        broken = FIXTURE_SM.replace("jobs (incl. supersource/sink ):  6",
                                    "jobs (incl. supersource/sink ):  7")
        with pytest.raises(InconsistentCounts):
            parse_instance(broken, InstanceFormat.PSPLIB_SM)

    def test_negative_duration(self):
        broken = FIXTURE_SM.replace("  5      1     2       4", "  5      1    -2       4")
        with pytest.raises(NegativeValue):
            parse_instance(broken, InstanceFormat.PSPLIB_SM)

    def test_trailing_section_warns(self):
        extended = FIXTURE_SM + "RESOURCE COSTS:\n  1  2  3\n"
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            instance = parse_instance(extended, InstanceFormat.PSPLIB_SM)
        assert instance.n_tasks == 6
        assert any("trailing" in str(w.message) for w in caught)

    def test_multi_mode_rejected(self):
        broken = FIXTURE_SM.replace("   2        1          1           6",
                                    "   2        3          1           6")
        with pytest.raises(MalformedInput):
            parse_instance(broken, InstanceFormat.PSPLIB_SM)


class TestProgenSch:
    def test_fixture_shape(self):
        instance = parse_instance(FIXTURE_SCH, InstanceFormat.PROGEN_MAX_SCH, name="sch")
        assert instance.kind is InstanceKind.RCPSP_MAX
        assert instance.n_tasks == 4  # 2 real + dummies
        assert [t.duration for t in instance.tasks] == [0, 2, 3, 0]
        assert instance.resources[0].capacity == 7

    def test_negative_offset_preserved(self):
        instance = parse_instance(FIXTURE_SCH, InstanceFormat.PROGEN_MAX_SCH)
        offsets = {(a.from_task, a.to_task): a.offset for a in instance.precedences}
        assert offsets[(1, 2)] == -2

    def test_truncated_file(self):
        truncated = "\n".join(FIXTURE_SCH.splitlines()[:4])
        with pytest.raises(MalformedInput):
            parse_instance(truncated, InstanceFormat.PROGEN_MAX_SCH)

    def test_non_integer_token(self):
        with pytest.raises(MalformedInput):
            parse_instance("2 1 0 zero\n", InstanceFormat.PROGEN_MAX_SCH)


class TestPattersonRcp:
    def test_fixture_shape(self):
        instance = parse_instance(FIXTURE_RCP, InstanceFormat.PATTERSON_RCP, name="rcp")
        assert instance.kind is InstanceKind.RCPSP
        assert instance.n_tasks == 6
        assert [t.duration for t in instance.tasks] == [0, 1, 1, 1, 2, 0]
        system = to_demand_system(instance)
        assert system.matrix.tolist() == [[5, 3, 2, 4]]

    def test_successors_one_based(self):
        instance = parse_instance(FIXTURE_RCP, InstanceFormat.PATTERSON_RCP)
        first = [a.to_task for a in instance.precedences if a.from_task == 0]
        assert sorted(first) == [1, 2, 3, 4]

    def test_out_of_range_successor(self):
        broken = FIXTURE_RCP.replace("1 5 1 6", "1 5 1 9")
        with pytest.raises(InconsistentCounts):
            parse_instance(broken, InstanceFormat.PATTERSON_RCP)


class TestFormatPlumbing:
    def test_detect_format(self):
        assert detect_format("x/j3010_1.sm") is InstanceFormat.PSPLIB_SM
        assert detect_format("PSP1.SCH".lower()) is InstanceFormat.PROGEN_MAX_SCH
        assert detect_format("pat1.rcp") is InstanceFormat.PATTERSON_RCP
        assert detect_format("inst.json") is InstanceFormat.CANONICAL_JSON
        assert detect_format("README.md") is None

    def test_canonical_json_dispatch(self):
        instance = parse_instance(FIXTURE_JSON, InstanceFormat.CANONICAL_JSON)
        assert instance.name == "fixture-json"
        assert instance.n_tasks == 6

    @pytest.mark.parametrize(
        "text,fmt",
        [
            (FIXTURE_SM, InstanceFormat.PSPLIB_SM),
            (FIXTURE_SCH, InstanceFormat.PROGEN_MAX_SCH),
            (FIXTURE_RCP, InstanceFormat.PATTERSON_RCP),
        ],
    )
    def test_benchmark_formats_roundtrip_through_canonical(self, text, fmt):
        from cumulift.instance import parse_canonical

        instance = parse_instance(text, fmt, name="x")
        assert parse_canonical(encode_canonical(instance)) == instance
