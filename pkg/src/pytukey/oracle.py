"""Brute-force ground truth for depths and depth regions.

Everything here works in primal space by enumerating directions; nothing is shared with
the dual-space algorithms, so agreement between the two is evidence. Degenerate inputs
are accepted.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union
from .convex import Empty, Halfplane, Halfspace, UnboundedRegion, halfplane_intersection, halfspace_intersection3
from .exact import Pt2, Pt3, angle_sorted

Point=Union[Pt2, Pt3]

def _axes(dim: int) -> List[Point]:
    if dim==2: return [Pt2(1,0), Pt2(-1,0), Pt2(0,1), Pt2(0,-1)]
    return [Pt3(1,0,0), Pt3(-1,0,0), Pt3(0,1,0), Pt3(0,-1,0), Pt3(0,0,1), Pt3(0,0,-1)]

def _bisectors(dirs: Sequence[Pt2]) -> List[Pt2]:
    """One direction strictly inside each angular gap of a counterclockwise-sorted list."""
    out=[]
    m=len(dirs)
    for i in range(m):
        u,v=dirs[i],dirs[(i+1)%m]
        if m==1: out.append(-u); continue
        c=u.cross(v)
        if c>0: out.append(u+v)
        elif c<0: out.append(-(u+v))
        else: out.append(u.perp())
    return out

def _nudge(v: Pt3, w: Pt3, diffs: Sequence[Pt3]) -> Pt3:
    """v + delta*w with delta small enough that no nonzero sign <d, v> flips."""
    ratios=[abs(d.dot(v))/abs(d.dot(w)) for d in diffs if d.dot(v)!=0 and d.dot(w)!=0]
    delta=min(ratios)/2 if ratios else 1
    return v+w.scale(delta)

def _tangent_basis(v: Pt3) -> Tuple[Pt3, Pt3]:
    a=next(e for e in (Pt3(1,0,0), Pt3(0,1,0), Pt3(0,0,1)) if not v.cross(e).is_zero())
    e1=v.cross(a)
    return e1, v.cross(e1)

@dataclass(frozen=True)
class DirectionSet:
    """Directions on which a minimum over all halfspace normals is attained."""
    directions: Tuple[Point, ...]

    @classmethod
    def around(cls, x: Point, points: Sequence[Point]) -> "DirectionSet":
        """One normal inside every open cell of the arrangement of critical normals at x."""
        diffs=[p-x for p in points if p!=x]
        if not diffs: return cls(())
        if isinstance(x, Pt2):
            crit=angle_sorted({d for q in diffs for d in (q.perp(), -q.perp())})
            return cls(tuple(_bisectors(_dedup_dirs(crit))))
        verts=set()
        for d1,d2 in combinations(diffs, 2):
            v=d1.cross(d2)
            if not v.is_zero(): verts.update((v, -v))
        if not verts:
            d=diffs[0]
            return cls((d, -d))
        out=set()
        for v in verts:
            e1,e2=_tangent_basis(v)
            tang=[v.cross(d) for d in diffs if d.dot(v)==0]
            flat=angle_sorted({Pt2(t.dot(e1), t.dot(e2)) for s in tang for t in (s, -s)})
            for b in _bisectors(_dedup_dirs(flat)):
                w=e1.scale(b.x)+e2.scale(b.y)
                out.add(_nudge(v, w, diffs))
        return cls(tuple(sorted(out)))

    @classmethod
    def for_region(cls, points: Sequence[Point]) -> "DirectionSet":
        """Pair normals (plane) or triple normals (space), both signs, plus the axes."""
        pts=sorted(set(points))
        if not pts: return cls(())
        if isinstance(pts[0], Pt2):
            crit={d for p,q in combinations(pts, 2) for d in ((q-p).perp(), (p-q).perp())}
            crit|=set(_axes(2))
            srt=_dedup_dirs(angle_sorted(crit))
            return cls(tuple(srt+_bisectors(srt)))
        dirs=set(_axes(3))
        for p,q,r in combinations(pts, 3):
            n=(q-p).cross(r-p)
            if not n.is_zero(): dirs.update((n, -n))
        for p,q in combinations(pts, 2):
            for e in _axes(3)[::2]:
                n=(q-p).cross(e)
                if not n.is_zero(): dirs.update((n, -n))
        return cls(tuple(sorted(dirs)))

def _dedup_dirs(sorted_dirs: Sequence[Pt2]) -> List[Pt2]:
    out: List[Pt2]=[]
    for d in sorted_dirs:
        if out and out[-1].cross(d)==0 and out[-1].dot(d)>0: continue
        out.append(d)
    if len(out)>1 and out[0].cross(out[-1])==0 and out[0].dot(out[-1])>0: out.pop()
    return out

def depth_oracle(x: Point, points: Sequence[Point]) -> int:
    """Tukey depth: fewest points in a closed halfspace whose boundary passes through x."""
    dirs=DirectionSet.around(x, points).directions
    if not dirs: return len(points)
    return min(sum(1 for p in points if (p-x).dot(u)>=0) for u in dirs)

def colorful_depth_oracle(x: Point, points: Sequence[Point], colors: Sequence[int]) -> int:
    """Fewest distinct colors in a closed halfspace whose boundary passes through x."""
    dirs=DirectionSet.around(x, points).directions
    if not dirs: return len(set(colors))
    return min(len({c for p,c in zip(points, colors) if (p-x).dot(u)>=0}) for u in dirs)

def _threshold(values: List, level: int):
    return sorted(values, reverse=True)[level-1]

def region_oracle(points: Sequence[Point], level: int, colors: Optional[Sequence[int]]=None):
    """Exact region of depth (or colorful depth) at least `level` as a halfspace intersection.

    Each direction u contributes <y, u> <= the level-th largest projection (of points, or of
    per-color maxima).
    """
    pts=list(points)
    if not pts: raise ValueError("region_oracle needs at least one point")
    dim=2 if isinstance(pts[0], Pt2) else 3
    bound=len(set(colors)) if colors is not None else len(pts)
    if level<1: return UnboundedRegion(dim, lines=tuple(_axes(dim)[::2]))
    if level>bound: return Empty(dim)
    hs=[]
    for u in DirectionSet.for_region(pts).directions:
        if colors is None:
            t=_threshold([p.dot(u) for p in pts], level)
        else:
            best={}
            for p,c in zip(pts, colors):
                v=p.dot(u)
                if c not in best or v>best[c]: best[c]=v
            t=_threshold(list(best.values()), level)
        hs.append(Halfplane(u.x, u.y, t) if dim==2 else Halfspace(u.x, u.y, u.z, t))
    return halfplane_intersection(hs) if dim==2 else halfspace_intersection3(hs)

def region_depths_ok(region, points: Sequence[Point], level: int) -> bool:
    """Every vertex of a bounded region has depth at least `level`."""
    verts=getattr(region, 'vertices', ())
    return all(depth_oracle(v, points)>=level for v in verts)
