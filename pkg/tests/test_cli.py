"""Tests for the pytukey command line."""
import json, os, random, tempfile
from pathlib import Path
from unittest.mock import patch
import pytest
from pytukey.cli import EXIT_DEGENERATE, EXIT_MISMATCH, EXIT_PARSE, main
from pytukey.convex import Empty
from pytukey.errors import InvariantViolation
from pytukey.exact import Pt2, Pt3
from pytukey.formats import PointFile, load_region, save_points
from pytukey.runner import random_instance

SEED=int(os.getenv("TUKEY_SEED", "0"))

TRI=PointFile(2, [Pt2(0,0), Pt2(2,1), Pt2(1,3)], [1, 2, 3])

def _file(td, pf, name="pts.json"):
    return str(save_points(pf, Path(td)/name))

def test_depth_command(capsys):
    """Test depth at a point inside and outside a triangle."""
    with tempfile.TemporaryDirectory() as td:
        path=_file(td, TRI)
        assert main(["depth", path, "--at", "1,4/3"])==0
        assert capsys.readouterr().out.strip()=="depth: 1"
        assert main(["depth", path, "--at", "5/2,0"])==0
        assert capsys.readouterr().out.strip()=="depth: 0"

def test_colorful_depth_command(capsys):
    """Test colorful depth uses the color column."""
    with tempfile.TemporaryDirectory() as td:
        assert main(["depth", _file(td, TRI), "--at", "1,4/3", "--colorful"])==0
        assert capsys.readouterr().out.strip()=="colorful depth: 1"

def test_depth_bad_query(capsys):
    """Test a query with the wrong arity is a parse error."""
    with tempfile.TemporaryDirectory() as td:
        assert main(["depth", _file(td, TRI), "--at", "1,1,1"])==EXIT_PARSE
        assert "query has 3 coordinates" in capsys.readouterr().err

def test_region_to_stdout(capsys):
    """Test a region printed as a RegionFile."""
    with tempfile.TemporaryDirectory() as td:
        assert main(["region", _file(td, TRI), "--level", "1", "--both"])==0
        d=json.loads(capsys.readouterr().out)
        assert d['kind']=="polygon" and len(d['vertices'])==3
        assert d['metadata']['level']==1

def test_region_to_file_in_space(capsys):
    """Test the dimension is taken from the file and the region is written."""
    with tempfile.TemporaryDirectory() as td:
        pf=random_instance(random.Random(SEED), 6, 3)
        out=Path(td)/"region.json"
        code=main(["region", _file(td, pf), "--level", "1", "--kj-path", "subdivision",
                   "--sample-size", "3", "--leaf-size", "3", "-o", str(out)])
        assert code==0
        assert f"✓ wrote {out}" in capsys.readouterr().out
        assert load_region(out).kind=="polytope"

def test_colorful_region_command(capsys):
    """Test colorful-region implies colorful depth."""
    with tempfile.TemporaryDirectory() as td:
        pf=random_instance(random.Random(SEED+1), 10, 2, 3)
        assert main(["colorful-region", _file(td, pf), "--both"])==0
        assert json.loads(capsys.readouterr().out)['metadata']['colorful'] is True

def test_region_dry_run(capsys):
    """Test --dry-run only prints the plan."""
    with tempfile.TemporaryDirectory() as td:
        assert main(["region", _file(td, TRI), "--dry-run"])==0
        assert "Region Plan for" in capsys.readouterr().out

def test_region_degenerate_input(capsys):
    """Test collinear input exits with the degenerate code and a violation report."""
    with tempfile.TemporaryDirectory() as td:
        bad=_file(td, PointFile(2, [Pt2(0,0), Pt2(1,1), Pt2(2,2), Pt2(3,0)]))
        assert main(["region", bad])==EXIT_DEGENERATE
        assert "violation:" in capsys.readouterr().err

def test_region_missing_file(capsys):
    """Test a missing input file is a parse error."""
    assert main(["region", "/nonexistent/pts.json", "--dim", "2"])==EXIT_PARSE
    assert "Point file not found" in capsys.readouterr().err

def test_region_mismatch_exit_code(capsys):
    """Test a disagreement with the oracle exits with the mismatch code."""
    with tempfile.TemporaryDirectory() as td:
        with patch("pytukey.runner.algorithm_region", return_value=Empty(2)):
            assert main(["region", _file(td, TRI), "--level", "1", "--both"])==EXIT_MISMATCH
        assert "first difference: kind empty != polygon" in capsys.readouterr().err

def test_median_bound_check(capsys):
    """Test the median reaches the bound for a random planar set."""
    with tempfile.TemporaryDirectory() as td:
        pf=random_instance(random.Random(SEED+2), 9, 2)
        assert main(["median-bound-check", _file(td, pf)])==0
        out=capsys.readouterr().out
        assert "(bound ceil(9/3) = 3)" in out and "✓ bound holds" in out

def test_median_bound_failure(capsys):
    """Test a median below the bound exits with the mismatch code."""
    with tempfile.TemporaryDirectory() as td:
        with patch("pytukey.cli.median_region", return_value=(1, Empty(2))):
            assert main(["median-bound-check", _file(td, random_instance(random.Random(SEED), 9, 2))])==EXIT_MISMATCH
        assert "✗ median depth 1 is below the bound 3" in capsys.readouterr().out

def test_fixtures_then_verify(capsys):
    """Test generated fixtures verify cleanly."""
    with tempfile.TemporaryDirectory() as td:
        assert main(["fixtures", td, "--count", "3", "--seed", str(SEED)])==0
        assert len(list(Path(td).glob("instance_*.json")))==3
        assert main(["verify", td, "--workers", "2"])==0
        assert "✓ 3 instances" in capsys.readouterr().out

def test_verify_reports_algorithm_errors(capsys):
    """Test verify exits with the mismatch code when an instance raises."""
    with tempfile.TemporaryDirectory() as td:
        _file(td, TRI)
        with patch("pytukey.runner.algorithm_region", side_effect=InvariantViolation("lost hull points")):
            assert main(["verify", td])==EXIT_MISMATCH
        assert "InvariantViolation: lost hull points" in capsys.readouterr().out

def test_verify_mismatch(capsys):
    """Test verify reports the first mismatch."""
    with tempfile.TemporaryDirectory() as td:
        _file(td, TRI)
        with patch("pytukey.runner.algorithm_region", return_value=Empty(2)):
            assert main(["verify", td])==EXIT_MISMATCH
        assert "first:" in capsys.readouterr().out

def test_bench_command(capsys):
    """Test bench writes CSV and a slope."""
    with tempfile.TemporaryDirectory() as td:
        out=Path(td)/"bench.csv"
        assert main(["bench", "--sizes", "8,16", "--output", str(out)])==0
        assert out.read_text().startswith("n,k,path,seconds\n8,1,dual2d,")
        assert "log-log slope:" in capsys.readouterr().out

def test_render_commands(capsys):
    """Test SVG output in the plane, dual pictures and OFF in space."""
    with tempfile.TemporaryDirectory() as td:
        path=_file(td, TRI)
        assert main(["render", path, "--level", "1"])==0
        assert "<svg" in capsys.readouterr().out
        svg=Path(td)/"dual.svg"
        assert main(["render", path, "--dual", "-o", str(svg)])==0
        assert svg.read_text().count("envelope-")==3
        tet=_file(td, PointFile(3, [Pt3(0,0,0), Pt3(4,1,0), Pt3(1,4,0), Pt3(1,2,4)]), "tet.json")
        capsys.readouterr()
        assert main(["render", tet, "--level", "1", "--kj-path", "reference"])==0
        assert capsys.readouterr().out.startswith("OFF\n4 4 6\n")

def test_config_file_option(capsys):
    """Test settings come from a config file."""
    with tempfile.TemporaryDirectory() as td:
        cfg=Path(td)/"pytukey.toml"
        cfg.write_text("[run]\nlevel = 1\nboth = true\n")
        assert main(["region", _file(td, TRI), "--config", str(cfg)])==0
        assert json.loads(capsys.readouterr().out)['metadata']['level']==1

def test_invalid_config_key(capsys):
    """Test an unknown config key is a parse error."""
    with tempfile.TemporaryDirectory() as td:
        cfg=Path(td)/"pytukey.toml"
        cfg.write_text("[run]\nbogus = 1\n")
        assert main(["region", _file(td, TRI), "--config", str(cfg)])==EXIT_PARSE
        assert "Invalid config keys: bogus" in capsys.readouterr().err

if __name__=="__main__":
    pytest.main([__file__,"-v"])
