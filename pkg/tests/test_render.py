"""Tests for SVG and OFF output."""
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path
import pytest
from pytukey.convex import Empty, Halfplane, halfplane_intersection, hull2, hull3
from pytukey.dual import ColoredPointSet, color_envelopes
from pytukey.exact import Pt2, Pt3
from pytukey.render import Viewport, render_dual_svg, render_off, render_svg, svgwrite

PTS=[Pt2(0,0), Pt2(4,1), Pt2(1,5), Pt2(2,2)]

def test_render_svg_points_and_region():
    """Test one circle per point and a closed region path with exact vertices."""
    svg=render_svg(PTS, hull2(PTS), [1, 2, 1, 2], title="level 1")
    text=ET.tostring(svg, encoding="unicode")
    assert text.count("<circle")==4
    assert 'id="region"' in text and "z\"" in text
    assert "exact vertices: (0/1, 0/1)" in text

def test_render_svg_unbounded_region_is_clipped():
    """Test an unbounded region is drawn clipped to the view."""
    quad=halfplane_intersection([Halfplane(-1,0,0), Halfplane(0,-1,0)])
    text=ET.tostring(render_svg(PTS, quad), encoding="unicode")
    assert 'id="region"' in text

def test_render_svg_empty_region():
    """Test an empty region draws points only."""
    text=ET.tostring(render_svg(PTS, Empty(2)), encoding="unicode")
    assert 'id="region"' not in text and text.count("<circle")==4

def test_viewport_flips_y():
    """Test larger y maps higher on the picture."""
    view=Viewport(PTS)
    assert view(Pt2(0,5))[1]<view(Pt2(0,0))[1]
    assert view(Pt2(4,0))[0]>view(Pt2(0,0))[0]

def test_render_dual_svg():
    """Test one envelope group per color."""
    envs=color_envelopes(ColoredPointSet.from_lists(PTS, [1, 2, 3, 1]))
    text=ET.tostring(render_dual_svg(envs), encoding="unicode")
    assert all(f'id="envelope-{c}"' in text for c in (1, 2, 3))

def test_svgwrite():
    """Test writing an SVG file."""
    with tempfile.TemporaryDirectory() as td:
        path=svgwrite(render_svg(PTS), Path(td)/"out.svg")
        assert path.read_text().startswith("<?xml")

def test_render_off_tetrahedron():
    """Test OFF counts and exact coordinates."""
    off=render_off(hull3([Pt3(0,0,0), Pt3(4,1,0), Pt3(1,4,0), Pt3(1,2,4)]))
    lines=off.splitlines()
    assert lines[0]=="OFF" and lines[1]=="4 4 6"
    assert lines[2]=="0/1 0/1 0/1"
    assert all(l.startswith("3 ") for l in lines[6:])

def test_render_off_empty_and_invalid():
    """Test Empty gives an empty OFF and planar regions are refused."""
    assert render_off(Empty(3))=="OFF\n0 0 0\n"
    with pytest.raises(ValueError, match="Invalid region for OFF output: polygon"):
        render_off(hull2(PTS))

if __name__=="__main__":
    pytest.main([__file__,"-v"])
