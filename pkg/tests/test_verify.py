import json

import pytest

from hitomezashi.trace import OrientedEdge, enumerate_loops, trace_from
from hitomezashi.verify import (
    CampaignReport,
    check_parity_direction,
    check_vertical_direction,
    exhaustive_verify,
    random_verify,
    report_to_dict,
    serialize_report,
    trial_specs,
)

from .conftest import seeded_pattern


class TestLemmaChecks:
    def test_unit_square_parity(self, zero_pattern):
        comp = trace_from(zero_pattern, OrientedEdge((0, 0), 0), 100)
        assert check_parity_direction(comp)

    def test_two_edge_corner(self, zero_pattern):
        comp = trace_from(zero_pattern, OrientedEdge((0, 0), 0), 2)
        assert check_parity_direction(comp)

    def test_vertical_direction_single_edge(self, zero_pattern):
        comp = trace_from(zero_pattern, OrientedEdge((0, 0), 0), 100)
        assert check_vertical_direction(comp, 0)

    def test_vertical_direction_vacuous(self, zero_pattern):
        comp = trace_from(zero_pattern, OrientedEdge((0, 0), 0), 100)
        assert check_vertical_direction(comp, 99)

    def test_seeded_components_satisfy_both(self):
        checked = 0
        for t in range(12):
            p = seeded_pattern(*[s.extension.seed for s in trial_specs(3, t)])
            for comp in enumerate_loops(p, (0, 0, 9, 9), 2000):
                assert check_parity_direction(comp)
                columns = {e.start[0] for e in comp.edges}
                for a in columns:
                    assert check_vertical_direction(comp, a)
                checked += 1
        assert checked >= 12


class TestReports:
    def test_merge_accumulates(self):
        a = CampaignReport(patterns_examined=1, loops_found=2, loops_by_residue={4: 2})
        b = CampaignReport(patterns_examined=3, loops_found=1, loops_by_residue={4: 1}, unresolved=5)
        a.merge(b)
        assert a.patterns_examined == 4
        assert a.loops_by_residue == {4: 3}
        assert a.unresolved == 5

    def test_ok_semantics(self):
        assert CampaignReport(loops_by_residue={4: 10}).ok
        assert not CampaignReport(loops_by_residue={4: 9, 6: 1}).ok
        assert not CampaignReport(lemma_violations=[{"kind": "residue"}]).ok

    def test_serialization_omits_duration(self):
        r = CampaignReport(patterns_examined=1, duration=1.23)
        d = json.loads(serialize_report(r))
        assert "duration" not in d
        assert d["patterns_examined"] == 1

    def test_report_dict_key_order(self):
        r = CampaignReport(loops_by_residue={4: 1})
        assert list(report_to_dict(r)) == [
            "patterns_examined",
            "loops_found",
            "loops_by_residue",
            "unresolved",
            "lemma_violations",
        ]


class TestExhaustive:
    def test_constant_patterns_tile_unit_squares(self):
        r = exhaustive_verify(1, 1, (0, 0, 3, 3), budget=10**6)
        assert r.patterns_examined == 4
        assert r.ok
        assert set(r.loops_by_residue) == {4}
        assert r.loops_found == sum(r.loops_by_residue.values())

    def test_small_sweep_clean(self):
        r = exhaustive_verify(3, 3, (0, 0, 9, 9), budget=10**6)
        assert r.patterns_examined == 64
        assert r.ok
        assert r.loops_found == sum(r.loops_by_residue.values())

    def test_rejects_bad_bit_counts(self):
        with pytest.raises(ValueError):
            exhaustive_verify(0, 3, (0, 0, 3, 3))
        with pytest.raises(ValueError):
            exhaustive_verify(3, 17, (0, 0, 3, 3))


class TestRandom:
    def test_single_trial_deterministic(self):
        a = serialize_report(random_verify(42, 1, 16, budget=2000))
        b = serialize_report(random_verify(42, 1, 16, budget=2000))
        assert a == b

    def test_trial_specs_distinct(self):
        seen = set()
        for t in range(50):
            eps, eta = trial_specs(42, t)
            seen.add(eps.extension.seed)
            seen.add(eta.extension.seed)
        assert len(seen) == 100

    def test_small_campaign_clean(self):
        r = random_verify(42, 30, 32, budget=2000)
        assert r.patterns_examined == 30
        assert r.ok
        assert set(r.loops_by_residue) <= {4}
        assert r.loops_found > 30  # dozens of loops per seeded pattern

    def test_worker_count_does_not_change_report(self):
        a = serialize_report(random_verify(7, 20, 16, budget=1000, workers=1))
        b = serialize_report(random_verify(7, 20, 16, budget=1000, workers=2))
        assert a == b

    def test_exhaustive_workers_match_too(self):
        a = serialize_report(exhaustive_verify(3, 2, (0, 0, 5, 5), 10**5, workers=1))
        b = serialize_report(exhaustive_verify(3, 2, (0, 0, 5, 5), 10**5, workers=3))
        assert a == b

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError):
            random_verify(1, 0, 8)
