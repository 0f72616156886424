import math

import pytest

from funnelgroup import mobius, schottky, words
from funnelgroup.errors import (
    DegenerateRankOneError,
    InvalidConfigError,
    UseBaseBuilderError,
)
from funnelgroup.mobius import BoundaryInterval, IsometryClass
from funnelgroup.schottky import (
    SchottkyConfig,
    SchottkyGroup,
    build_extended_group,
    build_group,
    is_fuchsian_schottky,
    nielsen_boundary,
    orientation_subgroup_sample,
    verify_schottky_condition,
)

GAMMA2 = (mobius.normalize(1, 2, 0, 1), mobius.normalize(1, 0, 2, 1))


class TestConfig:
    def test_overlap_rejected(self):
        with pytest.raises(InvalidConfigError):
            SchottkyConfig.from_pairs([(2, 8), (7, 9)])

    def test_must_start_positive(self):
        with pytest.raises(InvalidConfigError):
            SchottkyConfig.from_pairs([(0, 3)])
        with pytest.raises(InvalidConfigError):
            SchottkyConfig.from_pairs([(-2, 3)])

    def test_degenerate_interval_rejected(self):
        with pytest.raises(InvalidConfigError):
            SchottkyConfig.from_pairs([(3, 3)])

    def test_mirrors_and_targets(self):
        cfg = SchottkyConfig.from_pairs([(2, 8), (10, 12)])
        assert cfg.rank == 2
        assert cfg.target_interval(1) == BoundaryInterval(2, 8)
        assert cfg.target_interval(-2) == BoundaryInterval(-12, -10)
        assert cfg.hull_span == BoundaryInterval(-12, 12)

    def test_touching_but_positive_gap_allowed(self):
        # sub-tolerance gaps construct fine; verification flags them
        cfg = SchottkyConfig.from_pairs([(1, 2), (2.0000000001, 3)])
        assert cfg.rank == 2


class TestBuildGroup:
    def test_worked_generator_record(self, rank1_group):
        g = rank1_group.generators[0]
        for got, expected in zip(g.coefficients(), (5 / 3, 16 / 3, 1 / 3, 5 / 3)):
            assert got == pytest.approx(expected, abs=1e-12)

    def test_fixed_points_and_length(self, rank1_group):
        data = rank1_group.generator_axis(1)
        assert data.attracting == pytest.approx(4.0, abs=1e-9)
        assert data.repelling == pytest.approx(-4.0, abs=1e-9)
        assert data.translation_length == pytest.approx(2 * math.log(3), abs=1e-9)

    def test_endpoint_pairing(self, rank1_group):
        # oracle: endpoint evaluation of (5x+16)/(x+5)
        g = rank1_group.generators[0]
        assert mobius.apply_boundary(g, -8.0) == pytest.approx(8.0, abs=1e-9)
        assert mobius.apply_boundary(g, -2.0) == pytest.approx(2.0, abs=1e-9)

    def test_every_generator_hyperbolic(self, worked_group):
        for g in worked_group.generators:
            assert mobius.classify(g) is IsometryClass.HYPERBOLIC

    def test_fixed_points_are_geometric_means(self):
        cfg = SchottkyConfig.from_pairs([(1, 3), (5, 6), (8, 11)])
        group = build_group(cfg)
        for k, iv in enumerate(cfg.positive_intervals, start=1):
            data = group.generator_axis(k)
            expected = math.sqrt(iv.lo * iv.hi)
            assert data.attracting == pytest.approx(expected, abs=1e-9)
            assert data.repelling == pytest.approx(-expected, abs=1e-9)


class TestVerify:
    def test_worked_config_passes(self, worked_group):
        report = verify_schottky_condition(worked_group)
        assert report.passed
        assert report.min_gap == pytest.approx(2.0, abs=1e-12)

    def test_nesting_image_values(self, worked_group):
        g1 = worked_group.generators[0]
        image = mobius.image_interval(g1, BoundaryInterval(10, 12))
        target = worked_group.config.target_interval(1)
        assert target.contains_interval(image)
        assert image.lo == pytest.approx(4.4, abs=1e-9)
        assert image.hi == pytest.approx(76 / 17, abs=1e-9)

    def test_rank1_passes(self, rank1_group):
        assert verify_schottky_condition(rank1_group).passed

    def test_tangency_margin_failure(self):
        group = build_group(SchottkyConfig.from_pairs([(1, 2), (2.0000000001, 3)]))
        report = verify_schottky_condition(group)
        assert report.disjoint
        assert not report.non_tangency
        assert report.min_gap == pytest.approx(1e-10, rel=1e-3)
        assert not report.passed

    def test_all_pairwise_images_nest(self, worked_group):
        report = verify_schottky_condition(worked_group)
        assert report.nesting_ok
        assert report.nesting_failures == ()

    def test_mispaired_group_recorded_not_raised(self, worked_group):
        # swapping the generators breaks nesting; verify must record, not throw
        broken = SchottkyGroup(
            config=worked_group.config,
            generators=(worked_group.generators[1], worked_group.generators[0]),
        )
        report = verify_schottky_condition(broken)
        assert not report.nesting_ok
        assert not report.passed
        assert len(report.nesting_failures) > 0


class TestExtendedGroup:
    def test_reversing_generator_is_glide(self):
        cfg = SchottkyConfig.from_pairs([(2, 8)])
        ext = build_extended_group(cfg, [True])
        g = ext.generators[0]
        assert g.orientation == -1
        assert mobius.classify(g) is IsometryClass.GLIDE_REFLECTION
        # axis endpoints ±4: both are boundary fixed points of the glide
        for x in (4.0, -4.0):
            assert mobius.apply_boundary(g, x) == pytest.approx(x, abs=1e-9)

    def test_square_translates_twice_the_length(self):
        cfg = SchottkyConfig.from_pairs([(2, 8)])
        ext = build_extended_group(cfg, [True])
        square = mobius.compose(ext.generators[0], ext.generators[0])
        assert mobius.classify(square) is IsometryClass.HYPERBOLIC
        assert mobius.axis(square).translation_length == pytest.approx(
            4 * math.log(3), abs=1e-9
        )

    def test_all_flags_false_rejected(self):
        cfg = SchottkyConfig.from_pairs([(2, 8)])
        with pytest.raises(UseBaseBuilderError):
            build_extended_group(cfg, [False])

    def test_flag_count_mismatch(self):
        cfg = SchottkyConfig.from_pairs([(2, 8)])
        with pytest.raises(InvalidConfigError):
            build_extended_group(cfg, [True, False])

    def test_word_orientation_equals_reversing_parity(self):
        cfg = SchottkyConfig.from_pairs([(2, 8), (10, 12)])
        ext = build_extended_group(cfg, [True, False])
        for length in (1, 2, 3):
            for word in words.enumerate_layer(2, length).words:
                parity = sum(1 for s in word if ext.reversing[abs(s) - 1]) % 2
                m = words.evaluate(word, ext)
                assert m.orientation == (-1 if parity else 1)

    def test_subgroup_sample_rank1_depth1_empty(self):
        cfg = SchottkyConfig.from_pairs([(2, 8)])
        ext = build_extended_group(cfg, [True])
        assert orientation_subgroup_sample(ext, 1) == []

    def test_subgroup_sample_contains_square(self):
        cfg = SchottkyConfig.from_pairs([(2, 8)])
        ext = build_extended_group(cfg, [True])
        square = mobius.compose(ext.generators[0], ext.generators[0])
        sample = orientation_subgroup_sample(ext, 2)
        assert any(mobius.approx_equal(m, square, 1e-9) for m in sample)
        assert all(m.orientation == 1 for m in sample)

    def test_subgroup_sample_matches_bruteforce_parity(self):
        cfg = SchottkyConfig.from_pairs([(2, 8), (10, 12)])
        ext = build_extended_group(cfg, [True, False])
        sample = orientation_subgroup_sample(ext, 2)
        expected = 0
        for length in (1, 2):
            for word in words.enumerate_layer(2, length).words:
                if sum(1 for s in word if ext.reversing[abs(s) - 1]) % 2 == 0:
                    expected += 1
        assert len(sample) == expected

    def test_descriptor(self):
        cfg = SchottkyConfig.from_pairs([(2, 8), (10, 12)])
        ext = build_extended_group(cfg, [False, True])
        info = ext.orientation_subgroup
        assert info.index == 2
        assert info.reversing_generators == (2,)


class TestNielsenBoundary:
    def test_rank1_degenerate(self, rank1_group):
        with pytest.raises(DegenerateRankOneError) as excinfo:
            nielsen_boundary(rank1_group, 0)
        lo, hi = excinfo.value.axis_endpoints
        assert lo == pytest.approx(-4.0, abs=1e-9)
        assert hi == pytest.approx(4.0, abs=1e-9)

    def test_rank2_depth0_three_interior_gaps(self, worked_group):
        nb = nielsen_boundary(worked_group, 0)
        assert nb.interior_gap_count == 3
        assert len(nb.gaps) == 3
        assert len(nb.geodesics) == 3
        gaps = [(g.lo, g.hi) for g in nb.gaps]
        assert gaps == [(-10.0, -8.0), (-2.0, 2.0), (8.0, 10.0)]
        middle = nb.geodesics[1]
        assert middle.center == pytest.approx(0.0, abs=1e-12)
        assert middle.radius == pytest.approx(2.0, abs=1e-12)

    def test_deeper_gaps_cover_shallower(self, worked_group):
        shallow = nielsen_boundary(worked_group, 0)
        deep = nielsen_boundary(worked_group, 2)
        for gap in shallow.gaps:
            assert any(
                cover.lo <= gap.lo and gap.hi <= cover.hi for cover in deep.gaps
            ), gap

    def test_hull_span(self, worked_group):
        nb = nielsen_boundary(worked_group, 1)
        assert nb.hull_span == BoundaryInterval(-12, 12)


class TestClassification:
    def test_gamma2_not_fuchsian_schottky(self):
        report = is_fuchsian_schottky(GAMMA2, depth=1)
        assert report.verdict is False
        assert not report.purely_hyperbolic_sample
        assert report.offending_word.letters == (1,)
        assert report.disjoint_semicircles is None

    def test_worked_group_verdict_true(self, worked_group):
        report = is_fuchsian_schottky(worked_group, depth=6)
        assert report.verdict is True
        assert report.purely_hyperbolic_sample
        assert report.disjoint_semicircles is True

    def test_rank1_trivial_case(self, rank1_group):
        report = is_fuchsian_schottky(rank1_group, depth=4)
        assert report.verdict is True
        assert "rank 1" in report.note

    def test_dimension_flag_reported(self, worked_group):
        from funnelgroup.limitset import estimate_dimension_pressure

        est = estimate_dimension_pressure(worked_group)
        report = is_fuchsian_schottky(worked_group, depth=4, dimension_estimate=est)
        assert report.dimension_value == est.value
        assert report.dimension_at_most_half is True

    def test_raw_hyperbolic_list_is_undetermined(self, worked_group):
        report = is_fuchsian_schottky(tuple(worked_group.generators), depth=3)
        assert report.purely_hyperbolic_sample
        assert report.verdict is None


class TestFreenessDeskCheck:
    def test_no_short_word_is_identity(self, worked_group):
        res = words.freeness_sample(worked_group, 8)
        assert res.passed

    def test_rank3_sample(self):
        group = build_group(SchottkyConfig.from_pairs([(1, 3), (5, 6), (8, 11)]))
        assert words.freeness_sample(group, 5).passed
        assert words.purely_hyperbolic_sample(group, 5).all_hyperbolic
