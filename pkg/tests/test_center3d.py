"""Tests for the per-plane pipeline of depth regions in space."""
import os, random
from unittest.mock import patch
import pytest
from fractions import Fraction
from pytukey.center3d import (InPlaneInstance, SubdivisionStats, TriangleFront, bounding_triangle,
                              center_region_3d, colorful_center_region_3d, compute_Kj, crossing_count, front_search,
                              level_dirs, level_hull_generators, level_region_hull_in_plane, order_planes, ordering_shear,
                              primal_constraints, refine_triangles, region_on_line, split_triangle,
                              subdivision_hull_in_plane, triangle_side, tukey_median_3d, _area2,
                              _chart_vertices, _in_triangle)
from pytukey.convex import ConvexPoly3, Empty, clip_polygon, hull2, hull3, reduce_generators2, region_halfplanes
from pytukey.dual import ColoredPointSet, OrientedLine, dual_map
from pytukey.errors import DegenerateInput, InvariantViolation
from pytukey.exact import Line2, Plane3, Pt2, Pt3
from pytukey.oracle import colorful_depth_oracle, depth_oracle, region_oracle
from pytukey.runner import random_instance

SEED=int(os.getenv("TUKEY_SEED", "0"))

TET=[Pt3(0,0,0), Pt3(4,1,0), Pt3(1,4,0), Pt3(1,2,4)]
# pairs sharing a y coordinate, so the dual planes are ordered after a shear
SHARED_Y=[Pt3(0,0,0), Pt3(1,0,0), Pt3(0,1,0), Pt3(1,1,1)]

def _seq(rng, n, k=None):
    pf=random_instance(rng, n, 3, k)
    return pf, order_planes([dual_map(p) for p in pf.points], pf.colors)

def test_order_planes_sorts_by_y_coefficient():
    """Test planes come out sorted by beta with the permutation kept."""
    planes=[Plane3.from_coeffs(0, 3, 0), Plane3.from_coeffs(1, -2, 0), Plane3.from_coeffs(2, 1, 5)]
    seq=order_planes(planes)
    assert [h.beta for h in seq.planes]==[-2, 1, 3]
    assert seq.order==(1, 2, 0)

def test_order_planes_rejects_ties_and_vertical():
    """Test equal y coefficients and vertical planes cannot be ordered."""
    with pytest.raises(DegenerateInput, match="share the y coefficient"):
        order_planes([Plane3.from_coeffs(0, 1, 0), Plane3.from_coeffs(2, 1, 3)])
    with pytest.raises(DegenerateInput, match="vertical"):
        order_planes([Plane3(1, 0, 0, 2)])

def test_single_plane_counts_itself():
    """Test a point on the only plane has closed level 1 and open level 0."""
    seq=order_planes([Plane3.from_coeffs(1, 2, 3)])
    p=seq.lift(0, Pt2(5, -1))
    assert seq.level(p)==1 and seq.open_level(p)==0

def test_chart_counting_certified():
    """Test chart counts equal direct plane counts at samples and vertices."""
    rng=random.Random(SEED)
    for n in (3, 6, 10):
        _,seq=_seq(rng, n)
        seq.certify(samples=100, rng=random.Random(SEED))

def test_chart_orientation_rule():
    """Test plane i counts below in chart j exactly when i comes first."""
    rng=random.Random(SEED+1)
    _,seq=_seq(rng, 5)
    for j in range(seq.n):
        lines,cols=seq.chart(j)
        assert cols==[i for i in range(seq.n) if i!=j]
        assert [l.counts_below for l in lines]==[i<j for i in range(seq.n) if i!=j]

def test_in_plane_hull_all_below_reduces():
    """Test the last plane's chart counts below everywhere and its hull holds every low vertex."""
    rng=random.Random(SEED+2)
    _,seq=_seq(rng, 7)
    j=seq.n-1
    lines,_=seq.chart(j)
    assert all(l.counts_below for l in lines)
    got=level_region_hull_in_plane(InPlaneInstance(seq, j, 2))
    low=[v for v in _chart_vertices(lines) if sum(1 for l in lines if l.counts(v))<=2]
    assert low and all(got.contains(v) for v in low)
    assert all(sum(1 for l in lines if l.counts(v))<=2 for v in got.vertices)

def test_in_plane_hull_single_counting_above_line():
    """Test one line counting above at level 0 leaves the closed halfplane on or above it."""
    seq=order_planes([Plane3.from_coeffs(0, 0, 0), Plane3.from_coeffs(0, 1, 0)])
    lines,_=seq.chart(0)
    assert lines[0].line==Line2.from_slope(0, 0) and not lines[0].counts_below
    r=level_region_hull_in_plane(InPlaneInstance(seq, 0, 0))
    assert r.contains(Pt2(0, 0)) and r.contains(Pt2(-40, 7))
    assert not r.contains(Pt2(3, -1))

def test_subdivision_matches_reference():
    """Test the subdivision hull equals the reference hull on every plane and level."""
    rng=random.Random(SEED+3)
    for n in (6, 9, 12):
        _,seq=_seq(rng, n)
        for j in range(seq.n):
            for level in (0, 1, n//3):
                inst=InPlaneInstance(seq, j, level)
                stats=SubdivisionStats()
                fast=subdivision_hull_in_plane(inst, random.Random(SEED), stats, sample_size=3, leaf_size=3)
                assert fast==level_region_hull_in_plane(inst)
                assert stats.nodes>=1

def test_subdivision_matches_reference_colorful():
    """Test the subdivision hull with colored planes."""
    rng=random.Random(SEED+4)
    _,seq=_seq(rng, 9, 3)
    for j in range(seq.n):
        for level in (0, 1):
            inst=InPlaneInstance(seq, j, level)
            fast=subdivision_hull_in_plane(inst, random.Random(SEED), sample_size=3, leaf_size=3)
            assert fast==level_region_hull_in_plane(inst)

def test_front_search_recovers_level_hull():
    """Test the refined-front search alone finds the vertices of the level hull."""
    rng=random.Random(SEED+5)
    _,seq=_seq(rng, 10)
    checked=0
    for j in range(seq.n):
        for level in (1, 3):
            inst=InPlaneInstance(seq, j, level)
            lines,cols=inst.lines()
            ref=level_region_hull_in_plane(inst)
            if ref==Empty(2): continue
            root=bounding_triangle(lines)
            boundary=hull2(clip_polygon(list(root), region_halfplanes(ref)))
            if len(boundary.vertices)<3: continue
            stats=SubdivisionStats()
            outer=tuple(p.scale(2) for p in root)
            pts=front_search(boundary, outer, lines, cols, level, random.Random(SEED), stats, sample_size=3, leaf_size=3)
            assert reduce_generators2(pts, level_dirs(lines, cols, level))==ref
            assert stats.refine_calls>=1 and stats.max_front_crossings<=4
            checked+=1
    assert checked>0

def test_subdivision_front_crossing_bound():
    """Test every front refined while computing regions in space meets the four-crossing bound."""
    fronts=[]
    def record(front):
        out=refine_triangles(front)
        fronts.append(out)
        return out
    rng=random.Random(SEED+6)
    with patch("pytukey.center3d.refine_triangles", side_effect=record):
        for n in (6, 8, 10):
            pf=random_instance(rng, n, 3)
            stats=SubdivisionStats()
            for level in (1, 2):
                center_region_3d(pf.points, level, method="both", seed=SEED, stats=stats, sample_size=3, leaf_size=3)
            assert stats.refine_calls>=1 and stats.max_front_crossings<=4
    assert fronts
    for front in fronts:
        corners=[p for t in front.refined for p in t]
        for _ in range(50):
            p,q=rng.choice(corners), rng.choice(corners)
            if p.x==q.x: continue
            assert crossing_count(front.refined, Line2.through(p, q))<=4

def test_compute_Kj_first_plane_is_level_hull():
    """Test K_1 is the hull of the level set of the first chart."""
    rng=random.Random(SEED+5)
    _,seq=_seq(rng, 8)
    K=compute_Kj(seq, 0, [], 2, "both", random.Random(SEED))
    assert K==level_region_hull_in_plane(InPlaneInstance(seq, 0, 2))

def test_compute_Kj_needs_prior_hulls():
    """Test compute_Kj refuses a wrong number of earlier hulls and unknown methods."""
    rng=random.Random(SEED+6)
    _,seq=_seq(rng, 5)
    with pytest.raises(ValueError, match="earlier hulls"):
        compute_Kj(seq, 2, [], 1)
    with pytest.raises(ValueError, match="Invalid method"):
        compute_Kj(seq, 0, [], 1, method="fast")

def test_compute_Kj_empty_level():
    """Test a negative level with no inherited constraints gives Empty."""
    rng=random.Random(SEED+7)
    _,seq=_seq(rng, 5)
    assert compute_Kj(seq, 0, [], -1, "reference")==Empty(2)

def test_level_hull_generators_cover_own_hulls():
    """Test every K_j holds its plane's own level hull and a downward direction is always present."""
    rng=random.Random(SEED+8)
    _,seq=_seq(rng, 7)
    pts,dirs,Ks=level_hull_generators(seq, 1, "reference")
    assert len(Ks)==seq.n
    for j,K in enumerate(Ks):
        own=level_region_hull_in_plane(InPlaneInstance(seq, j, 1))
        assert all(K.contains(v) for v in getattr(own, 'vertices', ()))
    assert Pt3(0,0,-1) in dirs and pts

def test_bounding_triangle_holds_vertices():
    """Test the root triangle holds every chart vertex."""
    rng=random.Random(SEED+9)
    _,seq=_seq(rng, 8)
    lines,_=seq.chart(3)
    tri=bounding_triangle(lines)
    assert _area2(tri)>0
    assert all(_in_triangle(v, tri) for v in _chart_vertices(lines))

def test_split_triangle_partitions_area():
    """Test the children of a split cover the parent exactly."""
    tri=(Pt2(-10,-10), Pt2(10,-10), Pt2(0,10))
    sample=[Line2.from_slope(1, 0), Line2.from_slope(-2, 1), Line2.from_slope(0, 3)]
    kids=split_triangle(tri, sample)
    assert len(kids)>=4
    assert sum(_area2(t) for t in kids)==_area2(tri)
    assert all(_area2(t)>0 for t in kids)

def test_triangle_side():
    """Test a line counting below against triangles above, below and across it."""
    l=OrientedLine(Line2.from_slope(0, 0))
    assert triangle_side(l, (Pt2(0,1), Pt2(1,1), Pt2(0,2)))=='count'
    assert triangle_side(l, (Pt2(0,-1), Pt2(1,-1), Pt2(0,-2)))=='clear'
    assert triangle_side(l, (Pt2(0,-1), Pt2(1,1), Pt2(0,2)))=='touch'

def _halves():
    return (Pt2(-10,-10), Pt2(0,-10), Pt2(0,10)), (Pt2(0,-10), Pt2(10,-10), Pt2(0,10))

def test_refine_front_inside_one_triangle():
    """Test a boundary inside a single triangle keeps that triangle."""
    left,right=_halves()
    box=hull2([Pt2(2,-1), Pt2(3,-1), Pt2(3,1), Pt2(2,1)])
    out=refine_triangles(TriangleFront((left, right), box))
    assert out.refined==(right,)

def test_refine_front_apex_inside():
    """Test consecutive edges meeting inside their triangle give the triangle with that apex."""
    left,right=_halves()
    boundary=hull2([Pt2(-1,-1), Pt2(2,0), Pt2(-1,1)])
    out=refine_triangles(TriangleFront((left, right), boundary))
    apex={Pt2(0,Fraction(-2,3)), Pt2(2,0), Pt2(0,Fraction(2,3))}
    assert any(set(t)==apex for t in out.refined)
    assert len(out.refined)==3

def test_refine_front_parallel_edges():
    """Test a square cut by the middle gives two pieces per side between the crossings."""
    left,right=_halves()
    sq=hull2([Pt2(-1,-1), Pt2(1,-1), Pt2(1,1), Pt2(-1,1)])
    out=refine_triangles(TriangleFront((left, right), sq))
    assert len(out.refined)==4
    assert sum(_area2(t) for t in out.refined)==40
    assert out.edges==((Pt2(-1,-1), Pt2(1,-1)), (Pt2(1,1), Pt2(-1,1)))
    assert all(any(_in_triangle(v, t) for t in out.refined) for v in sq.vertices)

def test_refined_front_line_crossings():
    """Test random lines cross at most four refined triangles."""
    left,right=_halves()
    sq=hull2([Pt2(-1,-1), Pt2(1,-1), Pt2(1,1), Pt2(-1,1)])
    out=refine_triangles(TriangleFront((left, right), sq))
    rng=random.Random(SEED+10)
    for _ in range(1000):
        l=Line2.from_slope(Fraction(rng.randint(-50, 50), rng.randint(1, 9)), Fraction(rng.randint(-30, 30), rng.randint(1, 5)))
        assert crossing_count(out.refined, l)<=4

def test_refine_front_uncovered_boundary():
    """Test a boundary outside every triangle is a malformed front."""
    far=((Pt2(100,100), Pt2(101,100), Pt2(100,101)),)
    with pytest.raises(InvariantViolation):
        refine_triangles(TriangleFront(far, hull2([Pt2(0,0), Pt2(1,0), Pt2(0,1)])))

def test_region_on_line():
    """Test the trace of a triangle on a line through it is a segment."""
    tri=hull2([Pt2(0,0), Pt2(4,0), Pt2(0,4)])
    pts,dirs=region_on_line(tri, Line2.from_slope(0, 1))
    assert sorted(pts)==[Pt2(0,1), Pt2(3,1)] and dirs==[]
    assert region_on_line(tri, Line2.from_slope(0, 9))==([], [])

def test_primal_constraints_upward_direction():
    """Test an upward recession direction leaves no plane above the hull."""
    assert primal_constraints([Pt3(0,0,0)], [Pt3(0,0,1)]) is None
    hs=primal_constraints([Pt3(0,0,0)], [Pt3(0,0,-1)])
    assert len(hs)==1

def test_center_region_tetrahedron():
    """Test level 1 of a tetrahedron is the tetrahedron and level 2 is empty."""
    assert center_region_3d(TET, 1)==hull3(TET)
    assert center_region_3d(TET, 2, method="reference")==Empty(3)

def test_ordering_shear():
    """Test the shear making y coefficients distinct, and parallel dual planes."""
    assert ordering_shear(TET)==0
    assert ordering_shear(SHARED_Y)==2
    with pytest.raises(DegenerateInput, match="parallel dual planes"):
        ordering_shear([Pt3(0,0,0), Pt3(0,0,1)])

def test_center_region_shared_y_coordinates():
    """Test inputs sharing y coordinates give the tetrahedron at level 1 and match the oracle."""
    assert center_region_3d(SHARED_Y, 1)==hull3(SHARED_Y)
    assert center_region_3d(SHARED_Y, 2, method="reference")==Empty(3)
    pts=[Pt3(0,0,0), Pt3(5,0,1), Pt3(1,3,7), Pt3(2,-4,3), Pt3(-3,6,-2)]
    for level in range(1, 6):
        assert center_region_3d(pts, level, method="both", seed=SEED)==region_oracle(pts, level)

def test_center_region_rejects_parallel_dual_planes():
    """Test points over the same (x, y) are refused."""
    with pytest.raises(DegenerateInput, match="shared dual-slope coordinate"):
        center_region_3d([Pt3(0,0,0), Pt3(1,0,0), Pt3(0,1,0), Pt3(0,0,1)], 1)

def test_center_region_helly_bound():
    """Test the region at ceil(n/4) is nonempty."""
    rng=random.Random(SEED+11)
    for n in (5, 8):
        pf=random_instance(rng, n, 3)
        r=center_region_3d(pf.points, -(-n//4), method="reference")
        assert isinstance(r, ConvexPoly3) and not r.is_empty

def test_center_region_matches_oracle():
    """Test every level of small instances against the oracle with both per-plane paths."""
    rng=random.Random(SEED+12)
    for _ in range(3):
        pf=random_instance(rng, rng.randint(4, 7), 3)
        for level in range(1, len(pf.points)+1):
            got=center_region_3d(pf.points, level, method="both", seed=SEED)
            assert got==region_oracle(pf.points, level)

def test_center_region_stats_recorded():
    """Test subdivision statistics are filled in."""
    rng=random.Random(SEED+13)
    pf=random_instance(rng, 8, 3)
    stats=SubdivisionStats()
    center_region_3d(pf.points, 2, method="subdivision", stats=stats, sample_size=3, leaf_size=3)
    d=stats.to_dict()
    assert d['nodes']>0 and d['leaves']>0 and d['refine_calls']>0
    assert set(d)=={'nodes', 'leaves', 'pruned_level', 'pruned_hull', 'max_depth', 'max_front_crossings', 'refine_calls'}

def test_center_region_rejects_degenerate():
    """Test coplanar input is refused."""
    pts=[Pt3(0,0,0), Pt3(1,1,0), Pt3(2,3,0), Pt3(5,2,0)]
    with pytest.raises(DegenerateInput):
        center_region_3d(pts, 1)

def test_colorful_region_one_color_is_hull():
    """Test with one color, colorful depth 1 is the hull."""
    r=colorful_center_region_3d(ColoredPointSet.monochrome(TET), 1, method="reference")
    assert r==hull3(TET)

def test_colorful_region_matches_oracle():
    """Test colored instances against the oracle."""
    rng=random.Random(SEED+14)
    for _ in range(2):
        pf=random_instance(rng, rng.randint(4, 7), 3, rng.randint(2, 3))
        ps=pf.point_set()
        for level in range(1, ps.k+1):
            got=colorful_center_region_3d(ps, level, method="both", seed=SEED)
            assert got==region_oracle(pf.points, level, pf.colors)

def test_colorful_four_colors_nonempty():
    """Test four colors in space leave a nonempty level-1 region."""
    rng=random.Random(SEED+15)
    pf=random_instance(rng, 8, 3, 4)
    r=colorful_center_region_3d(pf.point_set(), 1, method="reference")
    assert not isinstance(r, Empty)
    for v in r.vertices:
        assert colorful_depth_oracle(v, pf.points, pf.colors)>=1

def test_tukey_median_3d():
    """Test the median depth reaches ceil(n/4) and its vertices have that depth."""
    rng=random.Random(SEED+16)
    pf=random_instance(rng, 8, 3)
    level,region=tukey_median_3d(pf.points)
    assert level>=2
    for v in region.vertices:
        assert depth_oracle(v, pf.points)>=level

if __name__=="__main__":
    pytest.main([__file__,"-v"])
