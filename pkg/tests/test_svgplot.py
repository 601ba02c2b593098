import numpy as np

from finchaos.svgplot import PANEL_H, PANEL_W, panels, polylines, scatter


class TestScatter:
    def test_well_formed_document(self):
        svg = scatter([0.0, 1.0, 2.0], [1.0, 4.0, 9.0], xlabel="a", ylabel="b")
        assert svg.startswith("<svg")
        assert svg.rstrip().endswith("</svg>")
        assert svg.count("<circle") == 3
        assert ">a</text>" in svg and ">b</text>" in svg

    def test_non_finite_points_skipped(self):
        svg = scatter([0.0, np.nan, 2.0, 3.0], [1.0, 1.0, np.inf, 2.0])
        assert svg.count("<circle") == 2

    def test_degenerate_range_still_renders(self):
        svg = scatter([1.0, 1.0, 1.0], [2.0, 2.0, 2.0])
        assert svg.count("<circle") == 3
        assert "nan" not in svg

    def test_points_inside_panel(self):
        svg = scatter(np.linspace(0, 1, 7), np.linspace(-3, 3, 7))
        for part in svg.split("<circle")[1:]:
            cx = float(part.split('cx="')[1].split('"')[0])
            cy = float(part.split('cy="')[1].split('"')[0])
            assert 0.0 <= cx <= PANEL_W
            assert 0.0 <= cy <= PANEL_H


class TestPolylines:
    def test_one_polyline_per_series(self):
        x = np.linspace(0, 1, 20)
        svg = polylines(x, [x, x ** 2, -x])
        assert svg.count("<polyline") == 3

    def test_non_finite_values_split_segments(self):
        x = np.arange(7.0)
        y = np.array([0.0, 1.0, np.nan, 3.0, 4.0, np.nan, 6.0])
        svg = polylines(x, [y])
        # two NaN gaps carve the curve into three visible segments
        assert svg.count("<polyline") == 3

    def test_all_nan_series_renders_empty(self):
        x = np.arange(4.0)
        svg = polylines(x, [np.full(4, np.nan)])
        assert "<polyline" not in svg
        assert svg.startswith("<svg")


class TestPanels:
    def test_three_panel_layout(self):
        x = np.linspace(0, 1, 10)
        svg = panels([(x, x, "x", "y"), (x, -x, "x", "z"), (x, x ** 2, "y", "z")])
        assert f'width="{3 * PANEL_W}"' in svg
        assert svg.count("<circle") == 30
        # each panel draws its own pair of axis lines
        assert svg.count("<line") == 6
