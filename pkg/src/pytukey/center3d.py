"""Depth regions in space through per-plane level hulls of the dual arrangement.

Every dual plane h_j is handled in its own chart, the (x, y) projection. The other planes
cross h_j in lines, and a plane counts at a point of h_j when it passes strictly below it.
Ordering the planes by their y coefficient makes each such line count on a fixed side,
so the cross-section of the level set is the level set of an oriented-line arrangement.
Inputs whose dual planes share a y coefficient are first sheared in the (x, y) plane;
the resulting constraints are mapped back before the final intersection.

The hull of the level set is the hull of all per-plane hulls K_j. Each K_j is computed
either directly over every line of the chart (the reference path) or by recursive
subdivision of a bounding triangle into the arrangement of a random line sample, carrying
only the lines that cross each triangle with the level lowered for lines known to count.
"""
import logging, math, random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple
from .convex import (ConvexPoly2, DownwardHull, Empty, Halfspace, Region2, Region3,
                     UnboundedRegion, _edge_halfplane, clip_polygon, halfspace_intersection3, hull2,
                     hull3, reduce_generators2, region_halfplanes)
from .dual import ColoredPointSet, OrientedLine, dual_map, hull_of_level_lines, reflect
from .errors import DegenerateInput, InvariantViolation
from .exact import Line2, Plane3, Pt2, Pt3, orientation, require_general_position

logger=logging.getLogger(__name__)

Generators=Tuple[List[Pt2], List[Pt2]]
Triangle=Tuple[Pt2, Pt2, Pt2]

DEFAULT_SEED=0
SAMPLE_SIZE=6
LEAF_SIZE=8
CERTIFY_SAMPLES=100

@dataclass(frozen=True)
class PlaneSeq:
    """Dual planes sorted by their y coefficient, with optional colors.

    Within plane j the line of plane i counts points above it when i comes first and
    points below it otherwise.
    """
    planes: Tuple[Plane3, ...]
    order: Tuple[int, ...]
    colors: Optional[Tuple[int, ...]]=None

    @property
    def n(self) -> int: return len(self.planes)

    def chart_line(self, i: int, j: int) -> OrientedLine:
        hi,hj=self.planes[i],self.planes[j]
        db=hj.beta-hi.beta
        line=Line2.from_slope((hi.alpha-hj.alpha)/db, (hi.gamma-hj.gamma)/db)
        return OrientedLine(line, counts_below=i<j)

    def chart(self, j: int) -> Tuple[List[OrientedLine], List[int]]:
        """Oriented lines of plane j's chart and their colors (distinct when uncolored)."""
        idx=[i for i in range(self.n) if i!=j]
        cols=[self.colors[i] for i in idx] if self.colors is not None else idx
        return [self.chart_line(i, j) for i in idx], cols

    def level(self, p: Pt3) -> int:
        """Planes passing below or through p."""
        return sum(1 for h in self.planes if h.at(p.x, p.y)<=p.z)

    def open_level(self, p: Pt3) -> int:
        return sum(1 for h in self.planes if h.at(p.x, p.y)<p.z)

    def lift(self, j: int, q: Pt2) -> Pt3:
        return Pt3(q.x, q.y, self.planes[j].at(q.x, q.y))

    def lift_dir(self, j: int, d: Pt2) -> Pt3:
        h=self.planes[j]
        return Pt3(d.x, d.y, h.alpha*d.x+h.beta*d.y)

    def certify(self, samples: int=CERTIFY_SAMPLES, rng: Optional[random.Random]=None) -> None:
        """Check the per-chart counting against a direct count over all planes.

        Samples are the chart's arrangement vertices plus random points; raises
        InvariantViolation on the first mismatch.
        """
        rng=rng or random.Random(DEFAULT_SEED)
        for j in range(self.n):
            lines,_=self.chart(j)
            qs=[Pt2(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(samples)]
            qs+=[v for v in _chart_vertices(lines)][:samples]
            for q in qs:
                p=self.lift(j, q)
                got=sum(1 for l in lines if l.counts(q))
                if got!=self.open_level(p):
                    raise InvariantViolation(f"plane {j}: chart count {got} != open level {self.open_level(p)} at {p}")

def order_planes(planes: Sequence[Plane3], colors: Optional[Sequence[int]]=None) -> PlaneSeq:
    """Sort planes by y coefficient; equal coefficients cannot be ordered."""
    planes=list(planes)
    if any(h.is_vertical for h in planes): raise DegenerateInput("vertical dual plane")
    order=sorted(range(len(planes)), key=lambda i: planes[i].beta)
    for a,b in zip(order, order[1:]):
        if planes[a].beta==planes[b].beta:
            raise DegenerateInput(f"planes {a} and {b} share the y coefficient {planes[a].beta}")
    cols=tuple(colors[i] for i in order) if colors is not None else None
    return PlaneSeq(tuple(planes[i] for i in order), tuple(order), cols)

def _chart_vertices(lines: Sequence[OrientedLine]) -> List[Pt2]:
    out=[]
    for l,m in combinations(lines, 2):
        if l.line.slope==m.line.slope: continue
        x=(m.line.intercept-l.line.intercept)/(l.line.slope-m.line.slope)
        out.append(Pt2(x, l.line.at(x)))
    return out

def colorful_count(lines: Sequence[OrientedLine], colors: Sequence[int], p: Pt2) -> int:
    """Distinct colors with a line counting at p."""
    return len({c for l,c in zip(lines, colors) if l.counts(p)})

def _direction_counts(l: OrientedLine, d: Pt2) -> Optional[bool]:
    """Whether l counts far along d; None when d is parallel to l."""
    if d.x==0: return l.counts_below==(d.y>0)
    s=d.y/d.x; sl=l.line.slope
    if s==sl: return None
    above=(s>sl)==(d.x>0)
    return above if l.counts_below else not above

def colorful_direction_count(lines: Sequence[OrientedLine], colors: Sequence[int], d: Pt2) -> int:
    """Colorful count far along d, minimized over offsets parallel to d."""
    far=set(); family=[]
    for l,c in zip(lines, colors):
        r=_direction_counts(l, d)
        if r is None: family.append((l, c))
        elif r: far.add(c)
    if not family: return len(far)
    best=None
    for t in {l.line.intercept for l,_ in family}:
        cs=set(far)
        cs.update(c for l,c in family if (l.line.intercept<t if l.counts_below else l.line.intercept>t))
        best=len(cs) if best is None else min(best, len(cs))
    return best

def _direction_candidates(lines: Sequence[OrientedLine]) -> List[Pt2]:
    cands={Pt2(0,1), Pt2(0,-1)}
    for l in lines:
        s=l.line.slope
        cands.update((Pt2(1,s), Pt2(-1,-s)))
    return sorted(cands)

def level_dirs(lines: Sequence[OrientedLine], colors: Sequence[int], u: int) -> List[Pt2]:
    return [d for d in _direction_candidates(lines) if colorful_direction_count(lines, colors, d)<=u]

def region_generators(region) -> Generators:
    """Points and directions generating a plane region (DownwardHull included)."""
    if isinstance(region, Empty): return [], []
    if isinstance(region, DownwardHull):
        if region.full: return [Pt2(0,0)], [Pt2(1,0), Pt2(-1,0), Pt2(0,1), Pt2(0,-1)]
        if region.line is not None:
            s=region.line.slope
            return [region.line.point()], [Pt2(1,s), Pt2(-1,-s), Pt2(0,-1)]
        dirs=[Pt2(0,-1)]
        if region.left_slope is not None: dirs.append(Pt2(-1, -region.left_slope))
        if region.right_slope is not None: dirs.append(Pt2(1, region.right_slope))
        return list(region.vertices), dirs
    if isinstance(region, ConvexPoly2): return list(region.vertices), []
    if region.is_whole: return [Pt2(0,0)], [Pt2(1,0), Pt2(-1,0), Pt2(0,1), Pt2(0,-1)]
    pts=list(region.vertices)
    dirs=list(region.rays)+[d for w in region.lines for d in (w, -w)]
    if not pts:
        # a strip or a halfplane: one point on each bounding line
        for h in region.halfplanes:
            n=h.normal
            pts.append(n.scale(h.c/n.dot(n)))
    return pts, dirs

def as_region2(region) -> Region2:
    """Canonical form of a plane region, converting DownwardHull."""
    if isinstance(region, DownwardHull):
        pts,dirs=region_generators(region)
        return reduce_generators2(pts, dirs)
    return region

def _chart_hull_colorful(lines: Sequence[OrientedLine], colors: Sequence[int], u: int) -> Region2:
    """Hull of {colorful count <= u} by enumerating every arrangement vertex."""
    if u<0: return Empty(2)
    if not lines: return UnboundedRegion(2, lines=(Pt2(1,0), Pt2(0,1)))
    pts=[v for v in _chart_vertices(lines) if colorful_count(lines, colors, v)<=u]
    for l in lines:
        p=l.line.point()
        if colorful_count(lines, colors, p)<=u: pts.append(p)
    if not pts: return Empty(2)
    return reduce_generators2(pts, level_dirs(lines, colors, u))

@dataclass
class InPlaneInstance:
    """Plane j of a sequence with its target level and the constraint generators inherited
    from the hulls of earlier planes."""
    seq: PlaneSeq
    j: int
    level: int
    gamma: List[Generators]=field(default_factory=list)

    @property
    def colorful(self) -> bool: return self.seq.colors is not None

    def lines(self) -> Tuple[List[OrientedLine], List[int]]:
        return self.seq.chart(self.j)

def level_region_hull_in_plane(inst: InPlaneInstance) -> Region2:
    """Hull of the level set's cross-section with the host plane, in its chart."""
    lines,cols=inst.lines()
    if inst.colorful: return _chart_hull_colorful(lines, cols, inst.level)
    return as_region2(hull_of_level_lines(lines, inst.level))

@dataclass
class SubdivisionStats:
    nodes: int=0
    leaves: int=0
    pruned_level: int=0
    pruned_hull: int=0
    max_depth: int=0
    max_front_crossings: int=0
    refine_calls: int=0

    def to_dict(self) -> Dict[str, int]: return dict(self.__dict__)

def _area2(t: Sequence[Pt2]) -> Fraction:
    return (t[1]-t[0]).cross(t[2]-t[0])

def bounding_triangle(lines: Sequence[OrientedLine]) -> Triangle:
    """Counterclockwise triangle holding every arrangement vertex and y-intercept in its interior."""
    pts=_chart_vertices(lines)+[l.line.point() for l in lines]
    B=1+max((max(abs(p.x), abs(p.y)) for p in pts), default=Fraction(0))
    return (Pt2(-4*B, -2*B), Pt2(4*B, -2*B), Pt2(0, 4*B))

def _signed(l: OrientedLine, p: Pt2) -> Fraction:
    """Positive exactly where l counts."""
    s=p.y-l.line.at(p.x)
    return s if l.counts_below else -s

def triangle_side(l: OrientedLine, tri: Sequence[Pt2]) -> str:
    """'count' if l counts on the whole closed triangle, 'clear' if nowhere, else 'touch'."""
    v=[_signed(l, p) for p in tri]
    if all(s>0 for s in v): return 'count'
    if all(s<0 for s in v): return 'clear'
    return 'touch'

def restrict_to_triangle(tri: Sequence[Pt2], G: Sequence[int], lines: Sequence[OrientedLine],
                         colors: Sequence[int], u: int) -> Tuple[List[int], int]:
    """Lines still relevant inside tri and the level left once colors counting throughout are removed."""
    counted=set(); keep=[]
    for i in G:
        k=triangle_side(lines[i], tri)
        if k=='count': counted.add(colors[i])
        elif k=='touch': keep.append(i)
    return [i for i in keep if colors[i] not in counted], u-len(counted)

def _in_triangle(p: Pt2, tri: Sequence[Pt2]) -> bool:
    return all(orientation(tri[i], tri[(i+1)%3], p)>=0 for i in range(3))

def _line_on_segment(l: Line2, a: Pt2, b: Pt2) -> List[Pt2]:
    fa=a.y-l.at(a.x); fb=b.y-l.at(b.x)
    out=[q for q,f in ((a, fa), (b, fb)) if f==0]
    if fa*fb<0: out.append(a+(b-a).scale(fa/(fa-fb)))
    return out

def leaf_candidates(tri: Triangle, G: Sequence[int], lines: Sequence[OrientedLine],
                    colors: Sequence[int], u: int) -> List[Pt2]:
    """Points of the level set inside tri that can be hull vertices."""
    sub=[lines[i] for i in G]; cols=[colors[i] for i in G]
    cands=list(tri)
    for l in sub:
        for k in range(3): cands+=_line_on_segment(l.line, tri[k], tri[(k+1)%3])
    cands+=[v for v in _chart_vertices(sub) if _in_triangle(v, tri)]
    return [p for p in set(cands) if colorful_count(sub, cols, p)<=u]

def split_triangle(tri: Sequence[Pt2], sample: Sequence[Line2]) -> List[Triangle]:
    """Triangles of the arrangement of the sample lines inside tri, fan-triangulated per cell."""
    pieces=[list(tri)]
    for l in sample:
        below=_edge_halfplane(Pt2(0, l.intercept), Pt2(1, l.slope).scale(-1))
        above=_edge_halfplane(Pt2(0, l.intercept), Pt2(1, l.slope))
        nxt=[]
        for poly in pieces:
            for h in (below, above):
                part=clip_polygon(poly, [h])
                if len(part)>=3: nxt.append(part)
        pieces=nxt
    out=[]
    for poly in pieces:
        for k in range(1, len(poly)-1):
            t=(poly[0], poly[k], poly[k+1])
            if _area2(t)>0: out.append(t)
    return out

def subdivision_hull_in_plane(inst: InPlaneInstance, rng: Optional[random.Random]=None,
                              stats: Optional[SubdivisionStats]=None, sample_size: int=SAMPLE_SIZE,
                              leaf_size: int=LEAF_SIZE, max_depth: int=32) -> Region2:
    """Same hull as level_region_hull_in_plane, found by recursive triangle subdivision.

    A first pass subdivides the bounding triangle and prunes triangles inside the hull of the
    points found so far, giving an estimate of K_j. The result is then searched again through
    refined fronts around the boundary of that estimate (see front_search), and the two must agree.
    """
    rng=rng or random.Random(DEFAULT_SEED)
    stats=stats if stats is not None else SubdivisionStats()
    lines,cols=inst.lines()
    u=inst.level
    if u<0: return Empty(2)
    if not lines: return UnboundedRegion(2, lines=(Pt2(1,0), Pt2(0,1)))
    root=bounding_triangle(lines)
    found: List[Pt2]=[]; hull_cache=None
    stack=[(root, list(range(len(lines))), u, 0, False)]
    while stack:
        tri,G,lev,depth,leaf=stack.pop()
        stats.nodes+=1; stats.max_depth=max(stats.max_depth, depth)
        if len(found)>=3:
            if hull_cache is None: hull_cache=hull2(found)
            if len(hull_cache.vertices)>=3 and all(hull_cache.contains(p) for p in tri):
                stats.pruned_hull+=1
                continue
        if leaf or len(G)<=leaf_size or depth>=max_depth:
            stats.leaves+=1
            pts=leaf_candidates(tri, G, lines, cols, lev)
            if pts: found+=pts; hull_cache=None
            continue
        sample=rng.sample(G, min(sample_size, len(G)))
        for child in split_triangle(tri, [lines[i].line for i in sample]):
            G2,lev2=restrict_to_triangle(child, G, lines, cols, lev)
            if lev2<0:
                stats.pruned_level+=1
                continue
            stack.append((child, G2, lev2, depth+1, len(G2)>=len(G)))
    if not found: return Empty(2)
    dirs=level_dirs(lines, cols, u)
    estimate=reduce_generators2(found, dirs)
    bounded=clip_polygon(list(root), region_halfplanes(estimate))
    if len(hull2(bounded).vertices)<3: return estimate
    outer=(root[0].scale(2), root[1].scale(2), root[2].scale(2))
    pts=front_search(hull2(bounded), outer, lines, cols, u, rng, stats, sample_size, leaf_size, max_depth)
    region=reduce_generators2(pts, dirs) if pts else Empty(2)
    if region!=estimate:
        raise InvariantViolation(f"front search on plane {inst.j} disagrees with the subdivision estimate")
    return region

def _meets_boundary(tri: Sequence[Pt2], boundary: ConvexPoly2) -> bool:
    v=boundary.vertices; m=len(v)
    if any(_in_triangle(p, tri) for p in v): return True
    return any(_segment_hits(v[e], v[(e+1)%m], tri[k], tri[(k+1)%3]) is not None
               for e in range(m) for k in range(3))

def front_search(boundary: ConvexPoly2, root: Triangle, lines: Sequence[OrientedLine], colors: Sequence[int],
                 u: int, rng: random.Random, stats: SubdivisionStats, sample_size: int=SAMPLE_SIZE,
                 leaf_size: int=LEAF_SIZE, max_depth: int=32) -> List[Pt2]:
    """Level-set points near the boundary of a convex polygon, searched through refined fronts.

    The front starts as the root triangle, which must hold the polygon in its interior. Each
    round refines the front against the boundary with refine_triangles and splits every live
    refined triangle into the arrangement of a line sample, lowering the level for the lines
    that count on it. A front triangle holding a boundary vertex that no refined triangle
    holds, or meeting the boundary without hosting a refined triangle, is searched whole in
    place of its pieces. Settled triangles stay in the front, marked dead, so that the front
    keeps covering the boundary.
    """
    found: List[Pt2]=[]
    # entries: triangle, lines to restrict from, level, size of the parent line set, live
    front=[(root, list(range(len(lines))), u, len(lines)+1, True)]
    for depth in range(max_depth+1):
        if not any(e[4] for e in front): break
        fr=refine_triangles(TriangleFront(tuple(e[0] for e in front), boundary))
        stats.refine_calls+=1; stats.max_depth=max(stats.max_depth, depth)
        stats.max_front_crossings=max(stats.max_front_crossings,
                                      max((crossing_count(fr.refined, l.line) for l in lines), default=0))
        hosts=[]
        for r in fr.refined:
            i=next((i for i,e in enumerate(front) if all(_in_triangle(p, e[0]) for p in r)), None)
            if i is None: raise InvariantViolation(f"refined triangle {r} lies in no front triangle")
            hosts.append(i)
        loose=[p for p in boundary.vertices if not any(_in_triangle(p, r) for r in fr.refined)]
        used=set(hosts)
        whole={i for i,e in enumerate(front)
               if any(_in_triangle(p, e[0]) for p in loose) or (i not in used and _meets_boundary(e[0], boundary))}
        work=[(r, front[i]) for r,i in zip(fr.refined, hosts) if i not in whole]
        work+=[(front[i][0], front[i]) for i in sorted(whole)]
        front=[]
        for r,(_,G,lev,size,live) in work:
            if not live:
                front.append((r, G, lev, size, False))
                continue
            stats.nodes+=1
            G2,lev2=restrict_to_triangle(r, G, lines, colors, lev)
            if lev2<0:
                stats.pruned_level+=1
                front.append((r, G2, lev2, size, False))
                continue
            if len(G2)<=leaf_size or len(G2)>=size or depth==max_depth:
                stats.leaves+=1
                found+=leaf_candidates(r, G2, lines, colors, lev2)
                front.append((r, G2, lev2, size, False))
                continue
            sample=rng.sample(G2, min(sample_size, len(G2)))
            front+=[(c, G2, lev2, len(G2), True) for c in split_triangle(r, [lines[i].line for i in sample])]
    return found

@dataclass(frozen=True)
class TriangleFront:
    """Triangles near the boundary of a convex polygon and their refinement.

    `edges` lists the boundary edges that cross a side of some triangle, counterclockwise;
    `refined` holds the triangles built for each pair of consecutive crossings.
    """
    triangles: Tuple[Triangle, ...]
    boundary: ConvexPoly2
    edges: Tuple[Tuple[Pt2, Pt2], ...]=()
    refined: Tuple[Triangle, ...]=()

def _segment_hits(a: Pt2, b: Pt2, c: Pt2, d: Pt2) -> Optional[Fraction]:
    """Parameter t on ab where it meets segment cd, or None (collinear overlaps ignored)."""
    r=b-a; s=d-c
    den=r.cross(s)
    if den==0: return None
    t=(c-a).cross(s)/den; w=(c-a).cross(r)/den
    return t if 0<=t<=1 and 0<=w<=1 else None

def _crossing_events(front: TriangleFront) -> List[Tuple[int, Fraction, Pt2]]:
    v=front.boundary.vertices; m=len(v)
    events=set()
    for e in range(m):
        a,b=v[e],v[(e+1)%m]
        for tri in front.triangles:
            for k in range(3):
                t=_segment_hits(a, b, tri[k], tri[(k+1)%3])
                if t is None: continue
                events.add(((e+1)%m, Fraction(0)) if t==1 else (e, t))
    return sorted((e, t, v[e]+(v[(e+1)%m]-v[e]).scale(t)) for e,t in events)

def refine_triangles(front: TriangleFront) -> TriangleFront:
    """Replace the triangles along the boundary by the finer ones between consecutive crossings.

    Between two consecutive crossings q1 and q2 the boundary stays inside one triangle T.
    The finer piece is T cut by the carrier lines of the edge leaving q1 and the edge
    reaching q2 and by the chord q1q2: the triangle (x, q1, q2) when the carriers meet at
    a point x of T, otherwise the polygon through q1, x1, x2 and q2, split from q2.
    """
    v=front.boundary.vertices; m=len(v)
    if m<3: raise InvariantViolation("front boundary must be a proper polygon")
    events=_crossing_events(front)
    if len(events)<2:
        host=next((t for t in front.triangles if all(_in_triangle(p, t) for p in v)), None)
        if host is None: raise InvariantViolation("boundary is not covered by the front triangles")
        return TriangleFront(front.triangles, front.boundary, (), (host,))
    used=set(); refined=[]
    for k,(e1,t1,q1) in enumerate(events):
        e2,t2,q2=events[(k+1)%len(events)]
        arrive=e2 if t2>0 else (e2-1)%m
        arc=[]; i=(e1+1)%m
        if not (e1==arrive and (t2==0 or t2>t1)):
            while True:
                arc.append(v[i])
                if i==arrive: break
                i=(i+1)%m
        host=next((t for t in front.triangles if all(_in_triangle(p, t) for p in [q1, q2]+arc)), None)
        if host is None:
            raise InvariantViolation(f"no front triangle holds the boundary between {q1} and {q2}")
        used.update((e1, arrive))
        if e1==arrive and not arc: continue
        cuts=[_edge_halfplane(v[e1], v[(e1+1)%m]-v[e1]), _edge_halfplane(v[arrive], v[(arrive+1)%m]-v[arrive]),
              _edge_halfplane(q2, q1-q2)]
        poly=clip_polygon(list(host), cuts)
        if len(poly)<3: continue
        s=poly.index(q2) if q2 in poly else 0
        poly=poly[s:]+poly[:s]
        for j in range(1, len(poly)-1):
            t=(poly[0], poly[j], poly[j+1])
            if _area2(t)>0: refined.append(t)
    edges=tuple((v[e], v[(e+1)%m]) for e in sorted(used))
    return TriangleFront(front.triangles, front.boundary, edges, tuple(refined))

def crossing_count(triangles: Sequence[Triangle], line: Line2) -> int:
    """Triangles whose interior the line passes through."""
    out=0
    for t in triangles:
        vals=[p.y-line.at(p.x) for p in t]
        if min(vals)<0<max(vals): out+=1
    return out

def region_on_line(region: Region2, line: Line2) -> Generators:
    """The part of a plane region on a line, as generators (segment, ray, line or nothing)."""
    if isinstance(region, Empty): return [], []
    p0=line.point(); d=Pt2(1, line.slope)
    if isinstance(region, UnboundedRegion) and region.is_whole: return [p0], [d, -d]
    lo=hi=None
    for h in region_halfplanes(region):
        k=h.normal.dot(d); r=h.c-h.normal.dot(p0)
        if k==0:
            if r<0: return [], []
            continue
        t=r/k
        if k>0: hi=t if hi is None else min(hi, t)
        else: lo=t if lo is None else max(lo, t)
    if lo is not None and hi is not None and lo>hi: return [], []
    pts=[p0+d.scale(t) for t in dict.fromkeys((lo, hi)) if t is not None]
    dirs=([-d] if lo is None else [])+([d] if hi is None else [])
    return (pts or [p0]), dirs

METHODS=("reference", "subdivision", "both")

def compute_Kj(seq: PlaneSeq, j: int, prior: Sequence[Region2], level: int, method: str="both",
               rng: Optional[random.Random]=None, stats: Optional[SubdivisionStats]=None,
               sample_size: int=SAMPLE_SIZE, leaf_size: int=LEAF_SIZE) -> Region2:
    """Hull of the level set's cross-section with plane j joined with the traces of the
    earlier hulls on it.

    The result lies between the hull of the cross-section and the cross-section of the
    hull. With method "both" the two in-plane computations must agree exactly.
    """
    if method not in METHODS: raise ValueError(f"Invalid method '{method}': expected one of {', '.join(METHODS)}")
    if len(prior)!=j: raise ValueError(f"compute_Kj({j}) needs the {j} earlier hulls, got {len(prior)}")
    inst=InPlaneInstance(seq, j, level, [region_on_line(K, seq.chart_line(i, j).line) for i,K in enumerate(prior)])
    own=None
    if method in ("reference", "both"): own=level_region_hull_in_plane(inst)
    if method in ("subdivision", "both"):
        fast=subdivision_hull_in_plane(inst, rng, stats, sample_size, leaf_size)
        if own is not None and fast!=own:
            raise InvariantViolation(f"plane {j}: subdivision hull {fast} != reference hull {own}")
        own=fast
    pts,dirs=region_generators(own)
    for gp,gd in inst.gamma: pts+=gp; dirs+=gd
    if not pts: return Empty(2)
    return reduce_generators2(pts, dirs)

def level_hull_generators(seq: PlaneSeq, level: int, method: str="both", rng: Optional[random.Random]=None,
                          stats: Optional[SubdivisionStats]=None, **subdivision) -> Tuple[List[Pt3], List[Pt3], List[Region2]]:
    """Points and directions spanning the hull of the level set, with every K_j."""
    Ks: List[Region2]=[]
    pts=set(); dirs=set()
    for j in range(seq.n):
        K=compute_Kj(seq, j, Ks, level, method, rng, stats, **subdivision)
        Ks.append(K)
        gp,gd=region_generators(K)
        pts.update(seq.lift(j, q) for q in gp)
        dirs.update(seq.lift_dir(j, d) for d in gd)
    dirs.add(Pt3(0,0,-1))
    logger.debug("level %d over %d planes: %d lifted points, %d directions", level, seq.n, len(pts), len(dirs))
    return sorted(pts), sorted(dirs), Ks

def primal_constraints(pts: Sequence[Pt3], dirs: Sequence[Pt3], reflected: bool=False) -> Optional[List[Halfspace]]:
    """Halfspaces in primal space for the planes z = a*x + b*y - c lying above the generated hull.

    None when no plane can (the hull is unbounded upward).
    """
    sb=-1 if reflected else 1
    if len(pts)>=4: pts=hull3(pts).vertices
    out=[Halfspace(-V.x, -V.y, sb, -V.z) for V in pts]
    for d in dirs:
        if d.x==0 and d.y==0:
            if d.z>0: return None
            continue
        out.append(Halfspace(-d.x, -d.y, 0, -d.z))
    return out

def ordering_shear(points: Sequence[Pt3]) -> Fraction:
    """Smallest integer t >= 0 making y + t*x distinct over the points.

    Shearing (x, y, z) to (x, y + t*x, z) gives every dual plane its own y coefficient, so
    the planes can be ordered; depth is unchanged by the shear.
    """
    ties=set()
    for p,q in combinations(points, 2):
        if p.x!=q.x: ties.add((q.y-p.y)/(p.x-q.x))
        elif p.y==q.y: raise DegenerateInput(f"points {p} and {q} have parallel dual planes")
    t=0
    while t in ties: t+=1
    return Fraction(t)

def _region_3d(points: Sequence[Pt3], colors: Optional[Sequence[int]], level: int, method: str,
               seed: int, certify: bool, stats: Optional[SubdivisionStats], subdivision: Dict[str, int]) -> Region3:
    t=ordering_shear(points)
    if t: logger.debug("ordering dual planes after the shear y -> y + %s*x", t)
    pts=[Pt3(p.x, p.y+t*p.x, p.z) for p in points]
    rng=random.Random(seed)
    hs=[]
    for side,reflected in ((pts, False), ([reflect(p) for p in pts], True)):
        seq=order_planes([dual_map(p) for p in side], colors)
        if certify: seq.certify(rng=random.Random(seed))
        gp,gd,_=level_hull_generators(seq, level-1, method, rng, stats, **subdivision)
        cons=primal_constraints(gp, gd, reflected)
        if cons is None: return Empty(3)
        hs+=cons
    # constraints on the sheared point pulled back to the input coordinates
    return halfspace_intersection3([Halfspace(h.a+t*h.b, h.b, h.c, h.d) for h in hs])

def center_region_3d(points: Sequence[Pt3], level: int, method: str="both", seed: int=DEFAULT_SEED,
                     certify: bool=True, stats: Optional[SubdivisionStats]=None, **subdivision) -> Region3:
    """Exact set of points of Tukey depth at least `level` in space."""
    pts=[Pt3(p.x, p.y, p.z) for p in points]
    require_general_position(pts)
    n=len(pts)
    if not 1<=level<=n: raise ValueError(f"Invalid level {level}: expected 1 <= level <= {n}")
    return _region_3d(pts, None, level, method, seed, certify, stats, subdivision)

def colorful_center_region_3d(ps: ColoredPointSet, level: int, method: str="both", seed: int=DEFAULT_SEED,
                              certify: bool=True, stats: Optional[SubdivisionStats]=None, **subdivision) -> Region3:
    """Exact set of points of colorful depth at least `level` in space."""
    if ps.dim!=3: raise ValueError("colorful_center_region_3d needs points in space")
    require_general_position(list(ps.points), list(ps.colors))
    if not 1<=level<=ps.k: raise ValueError(f"Invalid level {level}: expected 1 <= level <= {ps.k}")
    return _region_3d(list(ps.points), list(ps.colors), level, method, seed, certify, stats, subdivision)

def tukey_median_3d(points: Sequence[Pt3], method: str="reference", seed: int=DEFAULT_SEED) -> Tuple[int, Region3]:
    """Maximum depth and its region, searching upward from ceil(n/4)."""
    n=len(points)
    level=max(1, math.ceil(n/4))
    best=center_region_3d(points, level, method, seed)
    if isinstance(best, Empty):
        raise InvariantViolation(f"centerpoint region at level {level} is empty for n = {n}")
    while level<n:
        nxt=center_region_3d(points, level+1, method, seed)
        if isinstance(nxt, Empty): break
        level,best=level+1,nxt
    return level, best
