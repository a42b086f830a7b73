import pytest

from hitomezashi.pattern import ContractViolation, Edge, has_edge
from hitomezashi.render import RenderStyle, _window_edges, render_ascii, render_svg
from hitomezashi.trace import enumerate_loops

from .conftest import seeded_pattern


class TestSvg:
    def test_unit_square_line_count(self, zero_pattern):
        svg = render_svg(zero_pattern, (0, 0, 1, 1))
        assert svg.count("<line") == 4
        assert svg.startswith("<svg")
        assert svg.rstrip().endswith("</svg>")

    def test_deterministic(self):
        p = seeded_pattern(5, 6)
        assert render_svg(p, (0, 0, 9, 9)) == render_svg(p, (0, 0, 9, 9))

    def test_line_count_matches_has_edge_sweep(self):
        p = seeded_pattern(13, 14)
        window = (0, 0, 9, 9)
        svg = render_svg(p, window)
        count = 0
        for x in range(0, 10):
            for y in range(0, 10):
                if x < 9 and has_edge(p, Edge((x, y), (x + 1, y))):
                    count += 1
                if y < 9 and has_edge(p, Edge((x, y), (x, y + 1))):
                    count += 1
        assert svg.count("<line") == count

    def test_highlights_add_colored_lines(self, zero_pattern):
        loops = [c for c in enumerate_loops(zero_pattern, (0, 0, 1, 1), 100) if c.is_loop]
        plain = render_svg(zero_pattern, (0, 0, 1, 1))
        lit = render_svg(zero_pattern, (0, 0, 1, 1), highlights=loops)
        assert lit.count("<line") == plain.count("<line") + 4
        assert 'stroke="red"' in lit

    def test_labels(self, zero_pattern):
        svg = render_svg(zero_pattern, (0, 0, 2, 2), style=RenderStyle(show_labels=True))
        assert svg.count("<text") == 6

    def test_rejects_bad_window(self, zero_pattern):
        with pytest.raises(ContractViolation):
            render_svg(zero_pattern, (1, 0, 0, 1))

    def test_rejects_bad_cell_size(self):
        with pytest.raises(ValueError):
            RenderStyle(cell_size=0)


class TestAscii:
    def test_unit_square_glyph(self, zero_pattern):
        art = render_ascii(zero_pattern, (0, 0, 1, 1))
        assert art == " _ \n| |\n _ \n"

    def test_dimensions(self):
        p = seeded_pattern(1, 2)
        art = render_ascii(p, (0, 0, 4, 3))
        lines = art.rstrip("\n").split("\n")
        assert len(lines) == 2 * 3 + 1
        assert all(len(line) == 2 * 4 + 1 for line in lines)

    def test_character_count_matches_edges(self):
        p = seeded_pattern(3, 4)
        window = (-2, -2, 5, 5)
        art = render_ascii(p, window)
        edges = _window_edges(p, window)
        assert art.count("_") + art.count("|") == len(edges)

    def test_deterministic(self):
        p = seeded_pattern(8, 9)
        assert render_ascii(p, (0, 0, 7, 7)) == render_ascii(p, (0, 0, 7, 7))

    def test_edgeless_region_is_whitespace(self, zero_pattern):
        # A single vertex spans no edges; the block still has full dimensions.
        art = render_ascii(zero_pattern, (3, 3, 3, 3))
        assert art == " \n"
