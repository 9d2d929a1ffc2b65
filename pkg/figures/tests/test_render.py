"""Renderer behavior on synthetic schema-conformant inputs."""

from pathlib import Path

import matplotlib.image as mpimg
import numpy as np
import pytest

from gpefigures import FigureSpec, SchemaMismatch, render


def blue_pixel_columns(png_path: Path) -> np.ndarray:
    """Column indices of marker-colored (pure blue) pixels."""
    img = mpimg.imread(png_path)
    blue = (img[:, :, 2] > 0.6) & (img[:, :, 0] < 0.4) & (img[:, :, 1] < 0.4)
    return np.nonzero(blue)[1]


class TestHeatmap:
    def test_cell_count_matches_rows(self, synthetic_map_csv, tmp_path):
        out = tmp_path / "map.png"
        info = render(FigureSpec("heatmap", (synthetic_map_csv,), out))
        assert out.exists()
        n_rows = len(synthetic_map_csv.read_text().splitlines()) - 1
        assert info.cells == n_rows == 20

    def test_rejects_missing_column(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("V1,W1,max_im\n1,0,1e-5\n")
        with pytest.raises(SchemaMismatch, match="log10_max_im"):
            render(FigureSpec("heatmap", (bad,), tmp_path / "o.png"))

    def test_rejects_ragged_sweep(self, tmp_path):
        ragged = tmp_path / "ragged.csv"
        ragged.write_text(
            "V1,W1,max_im,log10_max_im,status\n"
            "1,0,1e-5,-5,ok\n1,1,1e-5,-5,ok\n2,0,1e-5,-5,ok\n"
        )
        with pytest.raises(SchemaMismatch, match="rectangular"):
            render(FigureSpec("heatmap", (ragged,), tmp_path / "o.png"))


class TestEigscatter:
    def test_scatter_symmetric_about_imaginary_axis(self, synthetic_eig_csv, tmp_path):
        out = tmp_path / "eigs.png"
        info = render(FigureSpec("eigscatter", (synthetic_eig_csv,), out))
        cols = blue_pixel_columns(out)
        x0 = info.extras["x_zero_px"]
        left = int(np.sum(cols < x0 - 0.5))
        right = int(np.sum(cols > x0 + 0.5))
        assert left > 0 and right > 0
        assert abs(left - right) / max(left, right) < 0.05

    def test_point_count(self, synthetic_eig_csv, tmp_path):
        info = render(FigureSpec("eigscatter", (synthetic_eig_csv,), tmp_path / "e.png"))
        assert info.points == 300

    def test_rejects_missing_column(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("re_eig\n1\n")
        with pytest.raises(SchemaMismatch, match="im_eig"):
            render(FigureSpec("eigscatter", (bad,), tmp_path / "o.png"))


class TestOtherKinds:
    def test_profile_smoke(self, synthetic_profile_csv, tmp_path):
        out = tmp_path / "profile.png"
        info = render(FigureSpec("profile", (synthetic_profile_csv,), out))
        assert out.exists() and info.points == 128

    def test_timeseries_smoke(self, synthetic_trace_csv, tmp_path):
        out = tmp_path / "trace.png"
        info = render(FigureSpec("timeseries", (synthetic_trace_csv,), out))
        assert out.exists() and info.points == 201

    def test_spacetime_assembles_snapshots(self, synthetic_snapshots, tmp_path):
        out = tmp_path / "spacetime.png"
        info = render(FigureSpec("spacetime", tuple(synthetic_snapshots), out))
        assert out.exists()
        assert info.points == 3
        assert info.cells == 3 * 64

    def test_spacetime_needs_time_in_filename(self, tmp_path):
        anon = tmp_path / "fields.csv"
        anon.write_text("x,re_psi1,im_psi1,re_psi2,im_psi2\n0,1,0,1,0\n")
        with pytest.raises(SchemaMismatch, match="snapshot_t"):
            render(FigureSpec("spacetime", (anon,), tmp_path / "o.png"))

    def test_spacetime_rejects_mixed_grids(self, synthetic_snapshots, tmp_path):
        other = tmp_path / "snapshot_t99.000000.csv"
        other.write_text(
            "x,re_psi1,im_psi1,re_psi2,im_psi2\n0,1,0,1,0\n1,1,0,1,0\n"
        )
        with pytest.raises(SchemaMismatch, match="different spatial grid"):
            render(
                FigureSpec(
                    "spacetime", tuple(synthetic_snapshots) + (other,), tmp_path / "o.png"
                )
            )


class TestDeterminism:
    def test_rendering_is_byte_stable(self, synthetic_map_csv, tmp_path):
        a = tmp_path / "a.png"
        b = tmp_path / "b.png"
        render(FigureSpec("heatmap", (synthetic_map_csv,), a))
        render(FigureSpec("heatmap", (synthetic_map_csv,), b))
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_kind_rejected(self, synthetic_map_csv, tmp_path):
        with pytest.raises(SchemaMismatch, match="unknown figure kind"):
            render(FigureSpec("sparkline", (synthetic_map_csv,), tmp_path / "o.png"))


class TestCli:
    def test_cli_end_to_end(self, synthetic_trace_csv, tmp_path, capsys):
        from gpefigures.cli import main

        out = tmp_path / "trace.png"
        assert main(["timeseries", str(synthetic_trace_csv), "-o", str(out)]) == 0
        assert out.exists()
        assert "wrote" in capsys.readouterr().out

    def test_cli_schema_error_exit_code(self, tmp_path, capsys):
        from gpefigures.cli import main

        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n1\n")
        assert main(["timeseries", str(bad), "-o", str(tmp_path / "o.png")]) == 2
        assert "schema error" in capsys.readouterr().err
