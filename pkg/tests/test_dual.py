"""Tests for duality, envelopes, levels and the standard 2D depth region."""
import os, random
import pytest
from fractions import Fraction
from pytukey.convex import ConvexPoly2, DownwardHull, Empty, hull2
from pytukey.dual import (ColoredPointSet, Envelope, OrientedLine, center_region_2d, colorful_level_at,
                          color_envelopes, depth_2d, dual_inverse, dual_map, hull_of_level_lines,
                          lower_envelope, open_count, reflect, tukey_median_2d)
from pytukey.errors import DegenerateInput
from pytukey.exact import Line2, Pt2, Pt3, Side, side_of
from pytukey.oracle import depth_oracle, region_oracle
from pytukey.runner import random_instance

SEED=int(os.getenv("TUKEY_SEED", "0"))

def test_dual_map_known_cases():
    """Test the origin maps to y = 0 and the map inverts."""
    assert dual_map(Pt2(0,0))==Line2.from_slope(0, 0)
    assert dual_inverse(dual_map(Pt2(3,-2)))==Pt2(3,-2)
    assert dual_inverse(dual_map(Pt3(1,2,3)))==Pt3(1,2,3)

def test_duality_preserves_above_below():
    """Test p above q* exactly when q above p*."""
    p,q=Pt2(1,2), Pt2(0,0)
    assert side_of(dual_map(q), p)==Side.ABOVE
    assert side_of(dual_map(p), q)==Side.ABOVE
    rng=random.Random(SEED)
    for _ in range(100):
        a=Pt2(rng.randint(-20,20), rng.randint(-20,20)); b=Pt2(rng.randint(-20,20), rng.randint(-20,20))
        assert side_of(dual_map(b), a)==side_of(dual_map(a), b)

def test_reflect_swaps_sides():
    """Test reflected duals swap above and below."""
    a,b=Pt2(2,5), Pt2(-1,1)
    s=side_of(dual_map(b), a)
    assert side_of(dual_map(reflect(b)), reflect(a))!=s

def test_lower_envelope_single_line():
    """Test one line gives one unbounded piece."""
    e=lower_envelope([Line2.from_slope(0, 0)])
    assert len(e.pieces)==1 and e.pieces[0].lo is None and e.pieces[0].hi is None

def test_lower_envelope_v_shape():
    """Test y = x and y = -x meet at the origin, left piece y = x."""
    e=lower_envelope([Line2.from_slope(-1, 0), Line2.from_slope(1, 0)])
    assert e.breakpoints==[Pt2(0,0)]
    assert e.pieces[0].line==Line2.from_slope(1, 0)
    assert e.pieces[1].line==Line2.from_slope(-1, 0)

def test_lower_envelope_pointwise_min():
    """Test the envelope equals the pointwise minimum at sampled abscissae."""
    rng=random.Random(SEED+1)
    slopes=rng.sample(range(-200, 200), 30)
    lines=[Line2.from_slope(s, rng.randint(-100, 100)) for s in slopes]
    e=lower_envelope(lines)
    for _ in range(1000):
        x=Fraction(rng.randint(-4000, 4000), rng.randint(1, 7))
        assert e.at(x)==min(l.at(x) for l in lines)
    assert all(a.line.slope>b.line.slope for a,b in zip(e.pieces, e.pieces[1:]))

def test_lower_envelope_rejects_parallel():
    """Test parallel input is degenerate."""
    with pytest.raises(DegenerateInput, match="parallel"):
        lower_envelope([Line2.from_slope(1, 0), Line2.from_slope(1, 2)])

def test_colorful_level_at_known_cases():
    """Test counts against two single-line colors y = 0 and y = 1."""
    envs=[lower_envelope([Line2.from_slope(0, 0)], 1), lower_envelope([Line2.from_slope(0, 1)], 2)]
    assert colorful_level_at(Pt2(5, "1/2"), envs)==1
    assert colorful_level_at(Pt2(5, 2), envs)==2
    assert colorful_level_at(Pt2(5, -1), envs)==0

def test_colorful_level_counts_breakpoint():
    """Test a point on a breakpoint counts the envelope through it."""
    envs=[lower_envelope([Line2.from_slope(1, 0), Line2.from_slope(-1, 0)], 1)]
    assert colorful_level_at(Pt2(0, 0), envs)==1

def test_hull_of_level_single_line():
    """Test level 0 of y = 0 is the closed halfplane y <= 0."""
    h=hull_of_level_lines([OrientedLine(Line2.from_slope(0, 0))], 0)
    assert isinstance(h, DownwardHull)
    assert h.contains(Pt2(7, 0)) and not h.contains(Pt2(7, "1/100"))

def test_hull_of_level_v_shape():
    """Test level 0 of y = x and y = -x is the region below their minimum."""
    h=hull_of_level_lines([OrientedLine(Line2.from_slope(1, 0)), OrientedLine(Line2.from_slope(-1, 0))], 0)
    assert h.vertices==(Pt2(0,0),)
    assert h.left_slope==1 and h.right_slope==-1

def test_hull_of_level_matches_vertex_enumeration():
    """Test the hull against every arrangement vertex of level at most u."""
    rng=random.Random(SEED+2)
    slopes=rng.sample(range(-30, 30), 12)
    lines=[OrientedLine(Line2.from_slope(s, rng.randint(-40, 40))) for s in slopes]
    u=3
    h=hull_of_level_lines(lines, u)
    verts=[]
    for i in range(len(lines)):
        for j in range(i+1, len(lines)):
            a,b=lines[i].line, lines[j].line
            x=(b.intercept-a.intercept)/(a.slope-b.slope)
            p=Pt2(x, a.at(x))
            if open_count(lines, p)<=u: verts.append(p)
    assert all(h.contains(p) for p in verts)
    assert all(v in verts for v in h.vertices)

def test_hull_of_level_window():
    """Test a windowed hull stays inside its slab."""
    lines=[OrientedLine(Line2.from_slope(1, 0)), OrientedLine(Line2.from_slope(-1, 0))]
    h=hull_of_level_lines(lines, 0, (Fraction(1), Fraction(3)))
    assert h.lo==1 and h.hi==3
    assert h.contains(Pt2(2, -2)) and not h.contains(Pt2(4, -10))

def test_open_count_orientation():
    """Test a line counting above counts points strictly under it."""
    up=OrientedLine(Line2.from_slope(0, 0), counts_below=False)
    assert open_count([up], Pt2(0, -1))==1 and open_count([up], Pt2(0, 0))==0

def test_center_region_triangle_level_one():
    """Test depth at least 1 is the triangle itself."""
    tri=[Pt2(0,0), Pt2(2,1), Pt2(1,3)]
    assert center_region_2d(tri, 1)==hull2(tri)

def test_center_region_triangle_level_two():
    """Test no point of a triangle has depth 2."""
    tri=[Pt2(0,0), Pt2(2,1), Pt2(1,3)]
    assert center_region_2d(tri, 2)==Empty(2)

def test_center_region_nine_points_helly():
    """Test nine points always have a nonempty level-3 region."""
    rng=random.Random(SEED+3)
    for _ in range(5):
        pf=random_instance(rng, 9, 2)
        r=center_region_2d(pf.points, 3)
        assert isinstance(r, ConvexPoly2) and not r.is_empty

def test_center_region_matches_oracle():
    """Test every level of small random instances against the oracle."""
    rng=random.Random(SEED+4)
    for _ in range(8):
        pf=random_instance(rng, rng.randint(4, 10), 2)
        for level in range(1, len(pf.points)+1):
            assert center_region_2d(pf.points, level)==region_oracle(pf.points, level)

def test_center_region_rejects_degenerate():
    """Test collinear input is refused."""
    with pytest.raises(DegenerateInput):
        center_region_2d([Pt2(0,0), Pt2(1,1), Pt2(2,2), Pt2(3,0)], 1)

def test_center_region_invalid_level():
    """Test levels outside 1..n are refused."""
    with pytest.raises(ValueError, match="Invalid level"):
        center_region_2d([Pt2(0,0), Pt2(2,1), Pt2(1,3)], 4)

def test_depth_2d_matches_oracle():
    """Test the dual depth against the primal oracle at random queries."""
    rng=random.Random(SEED+5)
    pf=random_instance(rng, 10, 2)
    for _ in range(30):
        x=Pt2(Fraction(rng.randint(-120, 120), 3), Fraction(rng.randint(-120, 120), 5))
        assert depth_2d(x, pf.points)==depth_oracle(x, pf.points)

def test_region_nesting():
    """Test regions shrink as the level grows."""
    rng=random.Random(SEED+6)
    pf=random_instance(rng, 9, 2)
    prev=None
    for level in range(1, 5):
        r=center_region_2d(pf.points, level)
        if prev is not None and not isinstance(r, Empty):
            assert all(prev.contains(v) for v in r.vertices)
        prev=r

def test_tukey_median_2d():
    """Test the median depth reaches the centerpoint bound and the next level is empty."""
    rng=random.Random(SEED+7)
    pf=random_instance(rng, 8, 2)
    level,region=tukey_median_2d(pf.points)
    assert level>=3 and not isinstance(region, Empty)
    if level<8: assert center_region_2d(pf.points, level+1)==Empty(2)

def test_color_envelopes_one_per_color():
    """Test one envelope per color class, in color order."""
    ps=ColoredPointSet.from_lists([Pt2(0,0), Pt2(1,2), Pt2(2,-1)], [7, 3, 7])
    envs=color_envelopes(ps)
    assert [e.color for e in envs]==[1, 2]
    assert len(envs[0].pieces)==1
    assert isinstance(envs[1], Envelope) and len(envs[1].pieces)==2

if __name__=="__main__":
    pytest.main([__file__,"-v"])
