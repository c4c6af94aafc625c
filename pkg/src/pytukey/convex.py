"""Convex hulls, halfplane/halfspace intersection and downward-closed hulls.

All regions are closed. Bounded results are `ConvexPoly2`/`ConvexPoly3`, unbounded ones
`UnboundedRegion` (vertices + extreme rays + lineality + an irredundant H-representation),
empty ones `Empty`. Vertex order is canonical so `==` is geometric equality.
"""
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import ClassVar, Dict, Iterable, List, Optional, Sequence, Tuple, Union
from .errors import NoIntersection
from .exact import Line2, Plane3, Pt2, Pt3, Q, Ray2, Side, angle_sorted, orientation

def norm_dir2(d: Pt2) -> Pt2:
    m=max(abs(d.x), abs(d.y))
    if m==0: raise ValueError("zero direction")
    return Pt2(d.x/m, d.y/m)

def norm_dir3(d: Pt3) -> Pt3:
    m=max(abs(d.x), abs(d.y), abs(d.z))
    if m==0: raise ValueError("zero direction")
    return Pt3(d.x/m, d.y/m, d.z/m)

def _int_row(values: Sequence[Fraction]) -> List[int]:
    """Scale a rational row to integers without changing its sign pattern."""
    den=lcm(*(Q(v).denominator for v in values))
    return [int(Q(v)*den) for v in values]

class _InsideType:
    def __repr__(self): return "INSIDE"
    def __reduce__(self): return "INSIDE"

INSIDE=_InsideType()

@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane a*x + b*y <= c, scaled so max(|a|, |b|) == 1."""
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a,b,c=Q(self.a),Q(self.b),Q(self.c)
        m=max(abs(a), abs(b))
        if m==0: raise ValueError("Halfplane needs a nonzero normal")
        object.__setattr__(self,'a',a/m); object.__setattr__(self,'b',b/m); object.__setattr__(self,'c',c/m)

    @classmethod
    def from_line(cls, line: Line2, side: Side) -> "Halfplane":
        """The closed side of `line` (BELOW means a*x + b*y <= c for the normalized line)."""
        if side==Side.ON: raise ValueError("a halfplane needs side BELOW or ABOVE")
        s=1 if side==Side.BELOW else -1
        return cls(s*line.a, s*line.b, s*line.c)

    @property
    def carrier(self) -> Line2: return Line2(self.a, self.b, self.c)

    @property
    def side(self) -> Side:
        # vertical carriers: BELOW is the side x <= c
        lead=self.b if self.b!=0 else self.a
        return Side.BELOW if lead>0 else Side.ABOVE

    @property
    def normal(self) -> Pt2: return Pt2(self.a, self.b)

    def value(self, p: Pt2) -> Fraction: return self.a*p.x+self.b*p.y-self.c

    def contains(self, p: Pt2) -> bool: return self.value(p)<=0

@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace a*x + b*y + c*z <= d, scaled so the largest |normal entry| is 1."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        a,b,c,d=Q(self.a),Q(self.b),Q(self.c),Q(self.d)
        m=max(abs(a), abs(b), abs(c))
        if m==0: raise ValueError("Halfspace needs a nonzero normal")
        for f,v in (('a',a),('b',b),('c',c),('d',d)): object.__setattr__(self,f,v/m)

    @classmethod
    def from_plane(cls, plane: Plane3, side: Side) -> "Halfspace":
        if side==Side.ON: raise ValueError("a halfspace needs side BELOW or ABOVE")
        s=1 if side==Side.BELOW else -1
        return cls(s*plane.a, s*plane.b, s*plane.c, s*plane.d)

    @property
    def carrier(self) -> Plane3: return Plane3(self.a, self.b, self.c, self.d)

    @property
    def normal(self) -> Pt3: return Pt3(self.a, self.b, self.c)

    def value(self, p: Pt3) -> Fraction: return self.a*p.x+self.b*p.y+self.c*p.z-self.d

    def contains(self, p: Pt3) -> bool: return self.value(p)<=0

def _edge_halfplane(q: Pt2, e: Pt2) -> Halfplane:
    """Closed halfplane to the left of the directed line through q with direction e."""
    return Halfplane(e.y, -e.x, e.y*q.x-e.x*q.y)

@dataclass(frozen=True)
class Empty:
    dim: int=2
    kind: ClassVar[str]="empty"

    def contains(self, p) -> bool: return False

@dataclass(frozen=True)
class ConvexPoly2:
    """Counterclockwise, strictly convex, starting at the lexicographically smallest vertex."""
    vertices: Tuple[Pt2, ...]=()
    kind: ClassVar[str]="polygon"
    dim: ClassVar[int]=2

    @property
    def is_empty(self) -> bool: return not self.vertices

    def contains(self, p: Pt2) -> bool:
        v=self.vertices
        if not v: return False
        if len(v)==1: return p==v[0]
        if len(v)==2:
            d=v[1]-v[0]; w=p-v[0]
            return d.cross(w)==0 and 0<=d.dot(w)<=d.dot(d)
        return all((v[(i+1)%len(v)]-v[i]).cross(p-v[i])>=0 for i in range(len(v)))

    def halfplanes(self) -> List[Halfplane]:
        v=self.vertices
        if not v: raise ValueError("empty polygon has no H-representation")
        if len(v)==1:
            p=v[0]
            return [Halfplane(1,0,p.x), Halfplane(-1,0,-p.x), Halfplane(0,1,p.y), Halfplane(0,-1,-p.y)]
        if len(v)==2:
            p,q=v; d=q-p
            return [_edge_halfplane(p, d), _edge_halfplane(q, -d),
                    Halfplane(-d.x, -d.y, -d.dot(p)), Halfplane(d.x, d.y, d.dot(q))]
        return [_edge_halfplane(v[i], v[(i+1)%len(v)]-v[i]) for i in range(len(v))]

def hull2(points: Iterable[Pt2]) -> ConvexPoly2:
    """Exact convex hull (monotone chain, collinear points dropped)."""
    pts=sorted(set(points))
    if len(pts)<=2: return ConvexPoly2(tuple(pts))
    def half(seq):
        out=[]
        for p in seq:
            while len(out)>=2 and (out[-1]-out[-2]).cross(p-out[-2])<=0: out.pop()
            out.append(p)
        return out
    lower=half(pts); upper=half(reversed(pts))
    return ConvexPoly2(tuple(lower[:-1]+upper[:-1]))

def upper_chain(points: Iterable[Pt2]) -> List[Pt2]:
    """Strict upper hull, left to right (one point per abscissa, the highest)."""
    best: Dict[Fraction, Pt2]={}
    for p in points:
        if p.x not in best or p.y>best[p.x].y: best[p.x]=p
    out: List[Pt2]=[]
    for p in (best[x] for x in sorted(best)):
        while len(out)>=2 and (out[-1]-out[-2]).cross(p-out[-2])>=0: out.pop()
        out.append(p)
    return out

def _slope(p: Pt2, q: Pt2) -> Fraction: return (q.y-p.y)/(q.x-p.x)

@dataclass(frozen=True)
class DownwardHull:
    """Closed convex region unbounded downward: everything on or below a concave chain.

    `vertices` have strictly increasing x. On an unbounded side the chain continues with
    slope `left_slope`/`right_slope`; on a windowed side (`lo`/`hi` set) the region stops at
    that abscissa and the corresponding vertex sits on it. A chain without vertices is the
    single line `line`. `full` marks the whole (windowed) plane.
    """
    vertices: Tuple[Pt2, ...]=()
    left_slope: Optional[Fraction]=None
    right_slope: Optional[Fraction]=None
    line: Optional[Line2]=None
    full: bool=False
    lo: Optional[Fraction]=None
    hi: Optional[Fraction]=None
    kind: ClassVar[str]="downward"

    @classmethod
    def from_points(cls, points: Iterable[Pt2], left_slope: Optional[Fraction], right_slope: Optional[Fraction],
                    lo: Optional[Fraction]=None, hi: Optional[Fraction]=None) -> "DownwardHull":
        """Hull of points plus the downward direction and the given asymptotic slopes.

        A side with a window bound ignores its slope; an unbounded side requires one.
        """
        if lo is None and hi is None and left_slope is not None and right_slope is not None and left_slope<right_slope:
            return cls(full=True)
        chain=upper_chain(p for p in points if (lo is None or p.x>=lo) and (hi is None or p.x<=hi))
        if not chain:
            raise ValueError("DownwardHull.from_points needs at least one point inside the window")
        if lo is None:
            i=0
            while i+1<len(chain) and _slope(chain[i], chain[i+1])>=left_slope: i+=1
            chain=chain[i:]
        if hi is None:
            k=len(chain)-1
            while k>0 and _slope(chain[k-1], chain[k])<=right_slope: k-=1
            chain=chain[:k+1]
        if lo is None and hi is None and left_slope==right_slope:
            return cls(left_slope=left_slope, right_slope=right_slope, line=Line2.from_slope(left_slope, chain[0].y-left_slope*chain[0].x))
        return cls(tuple(chain), None if lo is not None else left_slope, None if hi is not None else right_slope, lo=lo, hi=hi)

    def _in_window(self, x) -> bool:
        return (self.lo is None or x>=self.lo) and (self.hi is None or x<=self.hi)

    def top(self, x) -> Fraction:
        """Height of the boundary at abscissa x."""
        x=Q(x)
        if self.full: raise ValueError("the full plane has no boundary")
        if not self._in_window(x): raise NoIntersection(f"x = {x} lies outside the window [{self.lo}, {self.hi}]")
        if self.line is not None: return self.line.at(x)
        v=self.vertices
        if x<=v[0].x: return v[0].y+self.left_slope*(x-v[0].x) if x<v[0].x else v[0].y
        if x>=v[-1].x: return v[-1].y+self.right_slope*(x-v[-1].x) if x>v[-1].x else v[-1].y
        i=bisect_left([p.x for p in v], x)
        p,q=v[i-1],v[i]
        return p.y+_slope(p, q)*(x-p.x)

    def contains(self, p: Pt2) -> bool:
        if self.full: return self._in_window(p.x)
        return self._in_window(p.x) and p.y<=self.top(p.x)

    def edge_slope_left_of(self, x) -> Fraction:
        """Slope of the boundary edge through abscissa x; the left edge when x is a vertex."""
        x=Q(x)
        if self.line is not None: return self.line.slope
        v=self.vertices
        if x<=v[0].x:
            if self.left_slope is None: raise NoIntersection(f"no edge left of the window at x = {x}")
            return self.left_slope
        if x>v[-1].x:
            if self.right_slope is None: raise NoIntersection(f"no edge right of the window at x = {x}")
            return self.right_slope
        i=bisect_left([p.x for p in v], x)
        return _slope(v[i-1], v[i])

    def slopes(self) -> List[Fraction]:
        """Edge slopes left to right, unbounded edges included."""
        out=[] if self.left_slope is None or self.line is not None else [self.left_slope]
        out+=[_slope(p, q) for p,q in zip(self.vertices, self.vertices[1:])]
        if self.right_slope is not None and self.line is None: out.append(self.right_slope)
        return out

    def boundary_lines(self) -> List[Line2]:
        if self.full: return []
        if self.line is not None: return [self.line]
        v=self.vertices; out=[]
        if self.left_slope is not None: out.append(Line2.from_slope(self.left_slope, v[0].y-self.left_slope*v[0].x))
        out+=[Line2.through(p, q) for p,q in zip(v, v[1:])]
        if self.right_slope is not None: out.append(Line2.from_slope(self.right_slope, v[-1].y-self.right_slope*v[-1].x))
        return out

@dataclass(frozen=True)
class ConvexPoly3:
    """Vertices sorted lexicographically; faces are index tuples, counterclockwise seen from
    outside, rotated to start at their smallest index, sorted. Flat polygons carry both
    orientations of their single face; segments and points have no faces."""
    vertices: Tuple[Pt3, ...]=()
    faces: Tuple[Tuple[int, ...], ...]=()
    kind: ClassVar[str]="polytope"
    dim: ClassVar[int]=3

    @property
    def is_empty(self) -> bool: return not self.vertices

    def edges(self) -> List[Tuple[int, int]]:
        es=set()
        for f in self.faces:
            for i in range(len(f)):
                a,b=f[i],f[(i+1)%len(f)]
                es.add((min(a,b), max(a,b)))
        if not es and len(self.vertices)==2: es.add((0,1))
        return sorted(es)

    def euler_characteristic(self) -> int:
        return len(self.vertices)-len(self.edges())+len(self.faces)

    def face_normal(self, f: Tuple[int, ...]) -> Pt3:
        v=self.vertices
        return (v[f[1]]-v[f[0]]).cross(v[f[2]]-v[f[0]])

    def halfspaces(self) -> List[Halfspace]:
        out=[]
        for f in self.faces:
            n=self.face_normal(f)
            out.append(Halfspace(n.x, n.y, n.z, n.dot(self.vertices[f[0]])))
        return out

    def contains(self, p: Pt3) -> bool:
        v=self.vertices
        if not v: return False
        if len(v)==1: return p==v[0]
        if len(v)==2:
            d=v[1]-v[0]; w=p-v[0]
            return d.cross(w).is_zero() and 0<=d.dot(w)<=d.dot(d)
        if len(self.faces)==2 and len(self.faces[0])==len(v):
            f=self.faces[0]; n=self.face_normal(f)
            if n.dot(p-v[f[0]])!=0: return False
            return all(n.dot((v[f[(i+1)%len(f)]]-v[f[i]]).cross(p-v[f[i]]))>=0 for i in range(len(f)))
        return all(h.contains(p) for h in self.halfspaces())

def _face_polygon(points: Sequence[Pt3], normal: Pt3) -> List[Pt3]:
    """Strict convex polygon of coplanar points, counterclockwise seen from `normal`."""
    comps=[abs(normal.x), abs(normal.y), abs(normal.z)]
    k=comps.index(max(comps))
    # cyclic coordinate order keeps orientation when the dropped component is positive
    proj={0:(lambda p: Pt2(p.y, p.z)), 1:(lambda p: Pt2(p.z, p.x)), 2:(lambda p: Pt2(p.x, p.y))}[k]
    back={proj(p): p for p in points}
    poly=[back[q] for q in hull2(back).vertices]
    if (normal.x, normal.y, normal.z)[k]<0: poly.reverse()
    return poly

def _canonical_poly3(face_lists: List[List[Pt3]], extra: Sequence[Pt3]=()) -> ConvexPoly3:
    verts=sorted({p for f in face_lists for p in f} | set(extra))
    index={p:i for i,p in enumerate(verts)}
    faces=[]
    for f in face_lists:
        idx=[index[p] for p in f]
        m=idx.index(min(idx))
        faces.append(tuple(idx[m:]+idx[:m]))
    return ConvexPoly3(tuple(verts), tuple(sorted(faces)))

def hull3(points: Iterable[Pt3]) -> ConvexPoly3:
    """Exact 3D convex hull (incremental, coplanar triangles merged into polygons)."""
    pts=sorted(set(points))
    if not pts: return ConvexPoly3()
    p0=pts[0]
    i1=next((i for i,p in enumerate(pts) if p!=p0), None)
    if i1 is None: return ConvexPoly3((p0,))
    d=pts[i1]-p0
    i2=next((i for i,p in enumerate(pts) if not d.cross(p-p0).is_zero()), None)
    if i2 is None: return ConvexPoly3((pts[0], pts[-1]))
    n=d.cross(pts[i2]-p0)
    i3=next((i for i,p in enumerate(pts) if n.dot(p-p0)!=0), None)
    if i3 is None:
        poly=_face_polygon(pts, n)
        return _canonical_poly3([poly, list(reversed(poly))])
    V=[p0, pts[i1], pts[i2], pts[i3]]
    inner=Pt3(sum(p.x for p in V)/4, sum(p.y for p in V)/4, sum(p.z for p in V)/4)
    faces=[]
    for a,b,c in combinations(range(4), 3):
        faces.append((a,c,b) if orientation(V[a],V[b],V[c],inner)>0 else (a,b,c))
    used={0:p0}
    for idx,p in enumerate(pts):
        if idx in (0,i1,i2,i3): continue
        visible=[f for f in faces if orientation(V[f[0]],V[f[1]],V[f[2]],p)>0]
        if not visible: continue
        directed=set()
        for f in visible:
            directed.update(((f[0],f[1]),(f[1],f[2]),(f[2],f[0])))
        V.append(p); k=len(V)-1
        horizon=[(u,v) for (u,v) in directed if (v,u) not in directed]
        vis=set(visible)
        faces=[f for f in faces if f not in vis]+[(u,v,k) for (u,v) in horizon]
    groups: Dict[Tuple, List[Pt3]]={}
    normals: Dict[Tuple, Pt3]={}
    for f in faces:
        nn=(V[f[1]]-V[f[0]]).cross(V[f[2]]-V[f[0]])
        u=norm_dir3(nn)
        key=(u, u.dot(V[f[0]]))
        groups.setdefault(key, []).extend(V[i] for i in f)
        normals[key]=nn
    return _canonical_poly3([_face_polygon(g, normals[key]) for key,g in groups.items()])

@dataclass(frozen=True)
class UnboundedRegion:
    """Unbounded closed convex region: conv(vertices) + cone(rays) + span(lines).

    `halfplanes` (2D) / `halfspaces` (3D) hold an H-representation; for regions with
    lineality the H-representation is the canonical identity.
    """
    dim: int
    vertices: Tuple=()
    rays: Tuple=()
    lines: Tuple=()
    halfplanes: Tuple[Halfplane, ...]=()
    halfspaces: Tuple[Halfspace, ...]=()
    kind: ClassVar[str]="unbounded"

    @property
    def is_whole(self) -> bool:
        return not self.halfplanes and not self.halfspaces and len(self.lines)==self.dim

    def contains(self, p) -> bool:
        hs=self.halfplanes if self.dim==2 else self.halfspaces
        if hs: return all(h.contains(p) for h in hs)
        if len(self.lines)==self.dim: return True
        return _contains_generators(self, p)

Region2=Union[ConvexPoly2, UnboundedRegion, Empty]
Region3=Union[ConvexPoly3, UnboundedRegion, Empty]

def _contains_generators(region: UnboundedRegion, p: Pt3) -> bool:
    # p is inside iff it satisfies every exact facet halfspace of conv(vertices) + cone(rays) + span(lines)
    if region.dim!=3: raise NotImplementedError("generator membership is only needed in 3D")
    hs=_halfspaces_from_generators3(region.vertices, region.rays, region.lines)
    return all(h.contains(p) for h in hs)

def _halfspaces_from_generators3(vertices, rays, lines) -> List[Halfspace]:
    """Facet halfspaces of conv(vertices) + cone(rays) + span(lines), by candidate normals."""
    gens=list(vertices)
    dirs=list(rays)+list(lines)+[-l for l in lines]
    vecs=[q-p for p,q in combinations(gens, 2)]+dirs
    cands=set()
    for u,w in combinations(vecs, 2):
        n=u.cross(w)
        if not n.is_zero(): cands.add(norm_dir3(n)); cands.add(norm_dir3(-n))
    out=[]
    for n in sorted(cands):
        if any(n.dot(d)>0 for d in dirs): continue
        c=max(n.dot(p) for p in gens)
        tight=[p for p in gens if n.dot(p)==c]
        span=[q-tight[0] for q in tight[1:]]+[d for d in dirs if n.dot(d)==0]
        if _rank3(span)==2: out.append(Halfspace(n.x, n.y, n.z, c))
    return sorted(set(out), key=lambda h: (h.a, h.b, h.c, h.d))

def _rank3(vecs: Sequence[Pt3]) -> int:
    vecs=[v for v in vecs if not v.is_zero()]
    if not vecs: return 0
    v0=vecs[0]
    w=next((v for v in vecs if not v0.cross(v).is_zero()), None)
    if w is None: return 1
    n=v0.cross(w)
    return 3 if any(n.dot(v)!=0 for v in vecs) else 2

def reduce_generators2(points: Iterable[Pt2], dirs: Iterable[Pt2]) -> Region2:
    """Canonical region conv(points) + cone(dirs)."""
    pts=sorted(set(points))
    if not pts: return Empty(2)
    ds=angle_sorted({norm_dir2(d) for d in dirs if not d.is_zero()})
    if not ds: return hull2(pts)
    m=len(ds)
    over=[]; straight=[]
    for i in range(m):
        u,v=ds[i],ds[(i+1)%m]
        c=u.cross(v)
        if m==1 or c<0: over.append(i)
        elif c==0: straight.append(i)
    if len(over)==1:
        i=over[0]
        d2,d1=ds[i],ds[(i+1)%m]
        return _pointed_region(pts, d1, d2)
    if len(straight)==2:
        w=ds[0] if (ds[0].y>0 or (ds[0].y==0 and ds[0].x>0)) else -ds[0]
        nrm=w.perp()
        vals=[nrm.dot(p) for p in pts]
        lo,hi=min(vals),max(vals)
        return UnboundedRegion(2, lines=(w,), halfplanes=(Halfplane(nrm.x, nrm.y, hi), Halfplane(-nrm.x, -nrm.y, -lo)))
    if len(straight)==1:
        i=straight[0]
        v=ds[(i+1)%m]
        mvec=v.perp()
        w=v if (v.y>0 or (v.y==0 and v.x>0)) else -v
        lo=min(mvec.dot(p) for p in pts)
        return UnboundedRegion(2, rays=(norm_dir2(mvec),), lines=(w,), halfplanes=(Halfplane(-mvec.x, -mvec.y, -lo),))
    return UnboundedRegion(2, lines=(Pt2(1,0), Pt2(0,1)))

def _pointed_region(pts: List[Pt2], d1: Pt2, d2: Pt2) -> UnboundedRegion:
    """conv(pts) + cone(d1, d2) with d1 clockwise-most and d2 counterclockwise-most."""
    hv=list(hull2(pts).vertices)
    a=min(hv, key=lambda x: (d1.cross(x), d1.dot(x)))
    b=min(hv, key=lambda x: (-d2.cross(x), d2.dot(x)))
    ib,ia=hv.index(b),hv.index(a)
    chain=[hv[(ib+t)%len(hv)] for t in range(((ia-ib)%len(hv))+1)]
    hs=[_edge_halfplane(b, -d2)]
    hs+=[_edge_halfplane(p, q-p) for p,q in zip(chain, chain[1:])]
    hs.append(_edge_halfplane(a, d1))
    if d1==d2 and len(chain)==1:
        hs.append(Halfplane(-d1.x, -d1.y, -d1.dot(a)))
    rays=(d2, d1) if d1!=d2 else (d1,)
    return UnboundedRegion(2, vertices=tuple(chain), rays=rays, halfplanes=tuple(hs))

def region_halfplanes(region: Region2) -> List[Halfplane]:
    if isinstance(region, ConvexPoly2): return region.halfplanes()
    if isinstance(region, UnboundedRegion): return list(region.halfplanes)
    raise ValueError("empty region has no H-representation")

def _box_bound(rows: Sequence[Sequence[Fraction]], dim: int) -> Fraction:
    ints=[_int_row(r) for r in rows]
    amax=max(max(abs(v) for v in r[:-1]) for r in ints)
    cmax=max(max(abs(r[-1]) for r in ints), 1)
    return Fraction(2*cmax*amax+1) if dim==2 else Fraction(6*cmax*amax*amax+1)

def _clip2(poly: List[Pt2], h: Halfplane) -> List[Pt2]:
    out: List[Pt2]=[]
    n=len(poly)
    for i in range(n):
        p,q=poly[i],poly[(i+1)%n]
        vp,vq=h.value(p),h.value(q)
        if vp<=0: out.append(p)
        if (vp<0<vq) or (vq<0<vp):
            out.append(p+(q-p).scale(vp/(vp-vq)))
    dedup=[]
    for p in out:
        if not dedup or dedup[-1]!=p: dedup.append(p)
    while len(dedup)>1 and dedup[0]==dedup[-1]: dedup.pop()
    return dedup

def clip_polygon(poly: Sequence[Pt2], hs: Iterable[Halfplane]) -> List[Pt2]:
    """Vertices of a convex polygon cut by closed halfplanes, in the original orientation."""
    out=list(poly)
    for h in hs:
        if not out: break
        out=_clip2(out, h)
    return out

def halfplane_intersection(hs: Iterable[Halfplane]) -> Region2:
    """Exact intersection of closed halfplanes.

    Bounded parts are found by clipping a box that strictly contains every vertex of the
    constraint arrangement; the recession cone is read off the constraint normals.
    """
    hs=list(dict.fromkeys(hs))
    if not hs: return UnboundedRegion(2, lines=(Pt2(1,0), Pt2(0,1)))
    n0=hs[0].normal
    if all(h.normal.cross(n0)==0 for h in hs):
        lo=hi=None
        for h in hs:
            lam=h.normal.dot(n0)/n0.dot(n0)
            bound=h.c/lam
            if lam>0: hi=bound if hi is None else min(hi, bound)
            else: lo=bound if lo is None else max(lo, bound)
        if lo is not None and hi is not None and lo>hi: return Empty(2)
        unit=n0.scale(1/n0.dot(n0))
        w=n0.perp()
        pts=[unit.scale(b) for b in (lo, hi) if b is not None]
        dirs=[w, -w]+([n0] if hi is None else [])+([-n0] if lo is None else [])
        return reduce_generators2(pts, dirs)
    B=_box_bound([(h.a, h.b, h.c) for h in hs], 2)
    poly=[Pt2(-B,-B), Pt2(B,-B), Pt2(B,B), Pt2(-B,B)]
    for h in hs:
        poly=_clip2(poly, h)
        if not poly: return Empty(2)
    cands={d for h in hs for d in (h.normal.perp(), -h.normal.perp())}
    rec=[d for d in cands if all(h.normal.dot(d)<=0 for h in hs)]
    if not rec: return hull2(poly)
    true=[p for p in poly if abs(p.x)!=B and abs(p.y)!=B]
    return reduce_generators2(true, rec)

def _clip3(poly: ConvexPoly3, h: Halfspace) -> ConvexPoly3:
    vals=[h.value(v) for v in poly.vertices]
    if all(v<=0 for v in vals): return poly
    if all(v>0 for v in vals): return ConvexPoly3()
    keep=[p for p,v in zip(poly.vertices, vals) if v<=0]
    for i,j in poly.edges():
        vi,vj=vals[i],vals[j]
        if (vi<0<vj) or (vj<0<vi):
            p,q=poly.vertices[i],poly.vertices[j]
            keep.append(p+(q-p).scale(vi/(vi-vj)))
    return hull3(keep)

def _rank_normals(normals: Sequence[Pt3]) -> int:
    return _rank3(list(normals))

def halfspace_intersection3(hs: Iterable[Halfspace]) -> Region3:
    """Exact intersection of closed halfspaces in space."""
    hs=list(dict.fromkeys(hs))
    axes=(Pt3(1,0,0), Pt3(0,1,0), Pt3(0,0,1))
    if not hs: return UnboundedRegion(3, lines=axes)
    normals=[h.normal for h in hs]
    r=_rank_normals(normals)
    if r==1:
        n0=normals[0]; lo=hi=None
        for h in hs:
            lam=h.normal.dot(n0)/n0.dot(n0); bound=h.d/lam
            if lam>0: hi=bound if hi is None else min(hi, bound)
            else: lo=bound if lo is None else max(lo, bound)
        if lo is not None and hi is not None and lo>hi: return Empty(3)
        out=[]
        if hi is not None: out.append(Halfspace(n0.x, n0.y, n0.z, hi*1))
        if lo is not None: out.append(Halfspace(-n0.x, -n0.y, -n0.z, -lo))
        a=next(e for e in axes if not n0.cross(e).is_zero())
        l1=norm_dir3(n0.cross(a)); l2=norm_dir3(n0.cross(l1))
        return UnboundedRegion(3, lines=(l1, l2), halfspaces=tuple(out))
    if r==2:
        na=normals[0]
        nb=next(n for n in normals if not na.cross(n).is_zero())
        L=norm_dir3(na.cross(nb))
        sub=halfplane_intersection([Halfplane(h.normal.dot(na), h.normal.dot(nb), h.d) for h in hs])
        if isinstance(sub, Empty): return Empty(3)
        lift=lambda q: na.scale(q.x)+nb.scale(q.y)
        if isinstance(sub, ConvexPoly2):
            verts=tuple(lift(q) for q in sub.vertices); rays=(); lines=(L,)
        else:
            verts=tuple(lift(q) for q in sub.vertices)
            rays=tuple(norm_dir3(lift(q)) for q in sub.rays)
            lines=(L,)+tuple(norm_dir3(lift(q)) for q in sub.lines)
        return UnboundedRegion(3, vertices=verts, rays=rays, lines=lines, halfspaces=tuple(hs))
    B=_box_bound([(h.a, h.b, h.c, h.d) for h in hs], 3)
    cube=hull3(Pt3(x,y,z) for x in (-B,B) for y in (-B,B) for z in (-B,B))
    poly=cube
    for h in hs:
        poly=_clip3(poly, h)
        if poly.is_empty: return Empty(3)
    rec=set()
    for h1,h2 in combinations(hs, 2):
        d=h1.normal.cross(h2.normal)
        if d.is_zero(): continue
        for cand in (d, -d):
            if all(h.normal.dot(cand)<=0 for h in hs): rec.add(norm_dir3(cand))
    if not rec: return poly
    true=tuple(p for p in poly.vertices if B not in (abs(p.x), abs(p.y), abs(p.z)))
    return UnboundedRegion(3, vertices=tuple(sorted(true)), rays=tuple(sorted(rec)))

@dataclass(frozen=True)
class Tangent:
    """Supporting ray from an exterior point; `touch` is the contact vertex, or the vertex
    that starts the parallel unbounded edge when the contact is at infinity."""
    ray: Ray2
    touch: Optional[Pt2]
    at_infinity: bool

def tangents_from_point(h: DownwardHull, p: Pt2):
    """Left and right supporting rays from p to h, or INSIDE when p is in the closed hull."""
    if h.full or h.contains(p): return INSIDE
    if h.line is not None:
        s=h.line.slope
        return (Tangent(Ray2(p, Pt2(-1, -s)), None, True), Tangent(Ray2(p, Pt2(1, s)), None, True))
    v=h.vertices
    left=[q for q in v if q.x<p.x]
    right=[q for q in v if q.x>p.x]
    lt=_tangent_side(p, left, h.left_slope, v[0], -1)
    rt=_tangent_side(p, right, h.right_slope, v[-1], 1)
    return (lt, rt)

def _tangent_side(p: Pt2, cands: List[Pt2], asym: Optional[Fraction], end: Pt2, direction: int) -> Tangent:
    # left side: smallest slope(q, p); right side: largest slope(p, q)
    best=None; touch=None
    for q in cands:
        s=_slope(q, p) if direction<0 else _slope(p, q)
        better=best is None or (s<best if direction<0 else s>best) or (s==best and abs(q.x-p.x)<abs(touch.x-p.x))
        if better: best,touch=s,q
    at_inf=False
    if asym is not None and (best is None or (asym<best if direction<0 else asym>best)):
        best,touch,at_inf=asym,end,True
    if best is None:
        raise NoIntersection(f"no supporting ray from {p} on the windowed side")
    d=Pt2(direction, direction*best)
    return Tangent(Ray2(p, d), touch, at_inf)
