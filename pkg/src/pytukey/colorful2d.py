"""Hull of a colorful level by vertical-slab subdivision, and the colorful 2D depth region.

A node of the recursion is a `SlabState`: an x-interval, the envelope pieces routed to it,
an adjusted level and the hull points on its two bounding vertical lines. Its level set is
the closure of the points with at most `level` colors having a node piece strictly below.

Extremal queries against a level set (support in a direction, the top of the hull above an
abscissa, tangents from a point) are answered exactly by enumerating the finitely many
heights or slopes at which the answer can change and binary searching over them.
"""
import logging, math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple
from .convex import INSIDE, DownwardHull, Empty, Region2, halfplane_intersection
from .dual import (ColoredPointSet, Envelope, EnvelopePiece, OrientedLine, color_envelopes,
                   hull_of_level_lines, lines_above_constraints)
from .errors import InvariantViolation, NoIntersection, SlabElementary
from .exact import Pt2, Ray2, require_general_position

logger=logging.getLogger(__name__)

def colorful_open_count(x: Pt2, envs: Sequence[Envelope]) -> int:
    """Colors whose envelope passes strictly below x."""
    return sum(1 for e in envs if e.at(x.x)<x.y)

def asymptotic_slopes(envs: Sequence[Envelope], level: int) -> Tuple[Fraction, Fraction]:
    """Slopes of the two unbounded hull edges of the level set (requires level < k).

    When the left slope is below the right one the hull is the whole plane.
    """
    lefts=sorted((e.pieces[0].line.slope for e in envs), reverse=True)
    rights=sorted(e.pieces[-1].line.slope for e in envs)
    return lefts[level], rights[level]

def _pick(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    """A value strictly between lo and hi (None is infinite)."""
    if lo is None and hi is None: return Fraction(0)
    if lo is None: return hi-1
    if hi is None: return lo+1
    return (lo+hi)/2

def _last_true(cands: Sequence[Fraction], pred: Callable[[Fraction], bool]) -> int:
    """Index of the last candidate satisfying a predicate that is true then false; -1 if none."""
    lo,hi=0,len(cands)
    while lo<hi:
        mid=(lo+hi)//2
        if pred(cands[mid]): lo=mid+1
        else: hi=mid
    return lo-1

def _slope(p: Pt2, q: Pt2) -> Fraction: return (q.y-p.y)/(q.x-p.x)

@dataclass(frozen=True)
class SlabState:
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    pieces: Tuple[EnvelopePiece, ...]
    level: int
    x_left: Optional[Pt2]=None
    x_right: Optional[Pt2]=None

    @classmethod
    def root(cls, envs: Sequence[Envelope], level: int) -> "SlabState":
        return cls(None, None, tuple(p for e in envs for p in e.pieces), level)

    def span(self, p: EnvelopePiece) -> Tuple[Optional[Fraction], Optional[Fraction]]:
        a=self.lo if p.lo is None else (p.lo if self.lo is None else max(p.lo, self.lo))
        b=self.hi if p.hi is None else (p.hi if self.hi is None else min(p.hi, self.hi))
        return a,b

    def interior_endpoints(self) -> List[Fraction]:
        out=set()
        for p in self.pieces:
            for v in (p.lo, p.hi):
                if v is not None and (self.lo is None or v>self.lo) and (self.hi is None or v<self.hi): out.add(v)
        return sorted(out)

    @property
    def is_elementary(self) -> bool: return not self.interior_endpoints()

    def count(self, q: Pt2) -> int:
        """Colors with a node piece over q.x passing strictly below q."""
        return len({p.color for p in self.pieces if p.covers(q.x) and p.line.at(q.x)<q.y})

@dataclass(frozen=True)
class Support:
    """Max of y - s*x over a level set; `x_lo`/`x_hi` bound the maximizers (None is infinite)."""
    value: Fraction
    x_lo: Optional[Fraction]
    x_hi: Optional[Fraction]

def _below_interval(state: SlabState, p: EnvelopePiece, s: Fraction, Y: Fraction):
    """(a, a_closed, b, b_closed) where piece p is strictly below sheared height Y, or None."""
    a,b=state.span(p)
    if a is not None and b is not None and a>b: return None
    g=p.line.slope-s; c=p.line.intercept
    if g==0: return (a, True, b, True) if c<Y else None
    x0=(Y-c)/g
    if g>0:
        if a is not None and x0<=a: return None
        return (a, True, x0, False) if b is None or x0<=b else (a, True, b, True)
    if b is not None and x0>=b: return None
    return (x0, False, b, True) if a is None or x0>=a else (a, True, b, True)

def _coverage(state: SlabState, s: Fraction, Y: Fraction):
    """Test abscissae covering every cell of the count profile at sheared height Y.

    Returns (kinds, values, gaps, counts); kind is 'point', 'gap', 'left', 'right' or 'free'.
    """
    by_color: Dict[int, list]={}
    ends=set(v for v in (state.lo, state.hi) if v is not None)
    for p in state.pieces:
        iv=_below_interval(state, p, s, Y)
        if iv is None: continue
        by_color.setdefault(p.color, []).append(iv)
        ends.update(v for v in (iv[0], iv[2]) if v is not None)
    E=sorted(ends)
    kinds=[]; values=[]; gaps=[]
    if not E:
        kinds,values,gaps=['free'],[Fraction(0)],[(None, None)]
    else:
        if state.lo is None: kinds.append('left'); values.append(E[0]-1); gaps.append((None, E[0]))
        for i,e in enumerate(E):
            kinds.append('point'); values.append(e); gaps.append((e, e))
            if i+1<len(E): kinds.append('gap'); values.append((e+E[i+1])/2); gaps.append((e, E[i+1]))
        if state.hi is None: kinds.append('right'); values.append(E[-1]+1); gaps.append((E[-1], None))
    diff=[0]*(len(values)+1)
    for ivs in by_color.values():
        ranges=[]
        for a,ac,b,bc in ivs:
            i0=0 if a is None else (bisect_left(values, a) if ac else bisect_right(values, a))
            i1=len(values)-1 if b is None else (bisect_right(values, b) if bc else bisect_left(values, b))-1
            if i0<=i1: ranges.append((i0, i1))
        ranges.sort()
        merged=[]
        for r in ranges:
            if merged and r[0]<=merged[-1][1]+1: merged[-1]=(merged[-1][0], max(merged[-1][1], r[1]))
            else: merged.append(r)
        for i0,i1 in merged: diff[i0]+=1; diff[i1+1]-=1
    counts=[]; run=0
    for i in range(len(values)):
        run+=diff[i]; counts.append(run)
    return kinds, values, gaps, counts

def _sheared_range(state: SlabState, p: EnvelopePiece, s: Fraction):
    """Lowest and highest sheared height of piece p over the slab (None is infinite)."""
    a,b=state.span(p)
    g=p.line.slope-s; c=p.line.intercept
    va=None if a is None else c+g*a
    vb=None if b is None else c+g*b
    if g==0: return c,c
    if g>0: return va, vb
    return vb, va

def level_support(state: SlabState, s: Fraction) -> Optional[Support]:
    """Exact support of the node's level set in direction (-s, 1); None when the set is empty.

    Raises InvariantViolation when the level set is unbounded in that direction.
    """
    if state.level<0: return None
    def ok(Y): return any(c<=state.level for c in _coverage(state, s, Y)[3])
    stage1=set()
    for p in state.pieces:
        a,b=state.span(p)
        g=p.line.slope-s
        for v in (a, b):
            if v is not None: stage1.add(p.line.intercept+g*v)
        if g==0: stage1.add(p.line.intercept)
    c1=sorted(stage1)
    j=_last_true(c1, ok)
    lo_c=c1[j] if j>=0 else None
    hi_c=c1[j+1] if j+1<len(c1) else None
    test=_pick(lo_c, hi_c)
    crossed=[]
    for p in state.pieces:
        r0,r1=_sheared_range(state, p, s)
        if (r0 is None or r0<test) and (r1 is None or r1>test): crossed.append(p)
    stage2={v for v in (lo_c, hi_c) if v is not None}
    for p,q in combinations(crossed, 2):
        if p.line.slope==q.line.slope: continue
        X=(q.line.intercept-p.line.intercept)/(p.line.slope-q.line.slope)
        if not (p.covers(X) and q.covers(X)) or (state.lo is not None and X<state.lo) or (state.hi is not None and X>state.hi): continue
        h=p.line.at(X)-s*X
        if (lo_c is None or h>lo_c) and (hi_c is None or h<hi_c): stage2.add(h)
    c2=sorted(stage2)
    j2=_last_true(c2, ok)
    base=c2[j2] if j2>=0 else None
    nxt=c2[j2+1] if j2+1<len(c2) else None
    if ok(_pick(base, nxt)):
        if nxt is None: raise InvariantViolation(f"level set unbounded above in direction slope {s}")
        logger.debug("support at slope %s not attained; using its limit %s", s, nxt)
        M=nxt
        kinds,values,gaps,counts=_coverage(state, s, _pick(base, nxt))
    else:
        if base is None: raise InvariantViolation(f"empty support search at slope {s}")
        M=base
        kinds,values,gaps,counts=_coverage(state, s, M)
    okidx=[i for i,c in enumerate(counts) if c<=state.level]
    first,last=okidx[0],okidx[-1]
    x_lo=None if kinds[first] in ('left', 'free') else gaps[first][0]
    x_hi=None if kinds[last] in ('right', 'free') else gaps[last][1]
    return Support(M, x_lo, x_hi)

def _support_with_anchors(state: SlabState, s: Fraction) -> Support:
    parts=[]
    sup=level_support(state, s)
    if sup is not None: parts.append(sup)
    for a in (state.x_left, state.x_right):
        if a is not None: parts.append(Support(a.y-s*a.x, a.x, a.x))
    if not parts: raise InvariantViolation(f"slab [{state.lo}, {state.hi}] has neither level points nor anchors")
    M=max(p.value for p in parts)
    top=[p for p in parts if p.value==M]
    x_lo=None if any(p.x_lo is None for p in top) else min(p.x_lo for p in top)
    x_hi=None if any(p.x_hi is None for p in top) else max(p.x_hi for p in top)
    return Support(M, x_lo, x_hi)

def _left_edge_slope(state: SlabState, vertex: Pt2, P: Optional[Pt2], left_slope: Fraction) -> Fraction:
    """Slope of the hull edge arriving at `vertex` from the left."""
    while True:
        s=_slope(P, vertex) if P is not None else left_slope
        sup=_support_with_anchors(state, s)
        if sup.value==vertex.y-s*vertex.x: return s
        P=Pt2(sup.x_hi, sup.value+s*sup.x_hi)

def top_of_hull(state: SlabState, m: Fraction, left_slope: Fraction, right_slope: Fraction) -> Tuple[Pt2, Fraction]:
    """Topmost point of the node hull (level set plus anchors) above x = m, and the slope of
    the hull edge through it (the left edge when it is a vertex)."""
    if (state.lo is not None and m<=state.lo) or (state.hi is not None and m>=state.hi):
        raise NoIntersection(f"x = {m} is not strictly inside the slab [{state.lo}, {state.hi}]")
    P=state.x_left if state.lo is not None else None
    R=state.x_right if state.hi is not None else None
    while True:
        if P is not None and R is not None: s=_slope(P, R)
        elif R is not None: s=left_slope
        elif P is not None: s=right_slope
        else: s=(left_slope+right_slope)/2
        sup=_support_with_anchors(state, s)
        ref=P if P is not None else R
        if ref is not None and sup.value==ref.y-s*ref.x:
            return Pt2(m, sup.value+s*m), s
        if (sup.x_lo is None or sup.x_lo<=m) and (sup.x_hi is None or m<=sup.x_hi):
            pt=Pt2(m, sup.value+s*m)
            if sup.x_lo is None or sup.x_lo<m: return pt, s
            return pt, _left_edge_slope(state, pt, P, left_slope)
        if sup.x_hi is not None and sup.x_hi<m: P=Pt2(sup.x_hi, sup.value+s*sup.x_hi)
        else: R=Pt2(sup.x_lo, sup.value+s*sup.x_lo)

def hull_vline_intersection(m, envs: Sequence[Envelope], level: int) -> Tuple[Pt2, Fraction]:
    """Top of the hull of the colorful level set on the vertical line x = m, with the edge slope there."""
    if not 0<=level<len(envs): raise NoIntersection(f"level {level} has an unbounded hull for k = {len(envs)}")
    sl,sr=asymptotic_slopes(envs, level)
    if sl<sr: raise NoIntersection(f"level {level} has the whole plane as its hull")
    return top_of_hull(SlabState.root(envs, level), Fraction(m), sl, sr)

@dataclass
class SplitTrace:
    """What one split did; collected when a trace list is passed to the hull computation."""
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    median: Fraction
    x: Pt2
    tau: Fraction
    pieces: int
    left_pieces: int
    right_pieces: int
    max_multiplicity: int
    left_level: int
    right_level: int
    observation_ok: Optional[bool]=None

def _spans_left(state: SlabState, p: EnvelopePiece) -> bool:
    if state.lo is None: return p.lo is None
    return p.lo is None or p.lo<=state.lo

def _spans_right(state: SlabState, p: EnvelopePiece) -> bool:
    if state.hi is None: return p.hi is None
    return p.hi is None or p.hi>=state.hi

def split_slab(state: SlabState, left_slope: Fraction, right_slope: Fraction,
               trace: Optional[List[SplitTrace]]=None) -> Tuple[SlabState, SlabState, Pt2]:
    """Split at the median interior endpoint and route every piece to the sides whose hull it can affect.

    A piece crossing the median line strictly above the hull top x only matters on the side
    its slope points to (compared with the hull edge slope at x); a piece on or below x that
    spans a whole side under the hull chord of that side lowers that side's level instead of
    being kept.

    The envelopes enter only through `state.pieces` and the root's asymptotic hull slopes
    `left_slope`/`right_slope` (see `asymptotic_slopes`), which every node of one recursion shares.
    """
    ends=state.interior_endpoints()
    if not ends: raise SlabElementary(f"slab [{state.lo}, {state.hi}] has no interior endpoint to split at")
    h=ends[len(ends)//2]
    x,tau=top_of_hull(state, h, left_slope, right_slope)
    q1=[]; q2=[]; l1=l2=state.level
    for p in state.pieces:
        if p.hi is not None and p.hi<=h: q1.append(p); continue
        if p.lo is not None and p.lo>=h: q2.append(p); continue
        yh=p.line.at(h)
        if yh>x.y:
            (q1 if p.line.slope>tau else q2).append(p)
            continue
        if _spans_left(state, p) and (p.line.slope>=left_slope if state.lo is None else p.line.at(state.lo)<=state.x_left.y):
            l1-=1
        else: q1.append(p)
        if _spans_right(state, p) and (p.line.slope<=right_slope if state.hi is None else p.line.at(state.hi)<=state.x_right.y):
            l2-=1
        else: q2.append(p)
    left=SlabState(state.lo, h, tuple(q1), l1, state.x_left, x)
    right=SlabState(h, state.hi, tuple(q2), l2, x, state.x_right)
    logger.debug("split [%s, %s] at %s: x=%s tau=%s, %d -> %d/%d pieces, levels %d/%d",
                 state.lo, state.hi, h, x, tau, len(state.pieces), len(q1), len(q2), l1, l2)
    if trace is not None:
        ids1={id(p) for p in q1}; ids2={id(p) for p in q2}
        mult=max((int(id(p) in ids1)+int(id(p) in ids2) for p in state.pieces), default=0)
        trace.append(SplitTrace(state.lo, state.hi, h, x, tau, len(state.pieces), len(q1), len(q2), mult, l1, l2))
    return left, right, x

def _leaf_points(state: SlabState) -> List[Pt2]:
    """Hull vertices of an elementary slab from the carriers spanning it."""
    if state.level<0: return []
    lines=[]
    for p in state.pieces:
        a,b=state.span(p)
        if a==state.lo and b==state.hi and (a is None or b is None or a<b):
            lines.append(OrientedLine(p.line))
    h=hull_of_level_lines(lines, state.level, (state.lo, state.hi))
    if isinstance(h, Empty): return []
    if h.full:
        raise InvariantViolation(f"elementary slab [{state.lo}, {state.hi}] has an upward-unbounded level set")
    if h.line is not None: return [h.line.point()]
    return list(h.vertices)

def node_hull_direct(state: SlabState, left_slope: Fraction, right_slope: Fraction) -> DownwardHull:
    """Windowed hull of a node by enumerating every candidate vertex; the reference for splits."""
    cands=[a for a in (state.x_left, state.x_right) if a is not None]
    if state.level>=0:
        pts=[]
        for p in state.pieces:
            a,b=state.span(p)
            pts+=[Pt2(v, p.line.at(v)) for v in (a, b) if v is not None]
            if a is None and b is None: pts.append(Pt2(0, p.line.at(0)))
        for p,q in combinations(state.pieces, 2):
            if p.line.slope==q.line.slope: continue
            X=(q.line.intercept-p.line.intercept)/(p.line.slope-q.line.slope)
            if p.covers(X) and q.covers(X) and (state.lo is None or X>=state.lo) and (state.hi is None or X<=state.hi):
                pts.append(Pt2(X, p.line.at(X)))
        cands+=[q for q in pts if state.count(q)<=state.level]
    return DownwardHull.from_points(cands, None if state.lo is not None else left_slope,
                                    None if state.hi is not None else right_slope, state.lo, state.hi)

def _solve(state: SlabState, sl: Fraction, sr: Fraction, trace: Optional[List[SplitTrace]], check: bool) -> List[Pt2]:
    anchors=[a for a in (state.x_left, state.x_right) if a is not None]
    if state.level<0: return anchors
    if state.is_elementary: return anchors+_leaf_points(state)
    left,right,x=split_slab(state, sl, sr, trace)
    rec=trace[-1] if trace is not None else None
    pts=_solve(left, sl, sr, trace, check)+_solve(right, sl, sr, trace, check)+[x]
    if check and rec is not None:
        mine=DownwardHull.from_points(anchors+pts, None if state.lo is not None else sl,
                                      None if state.hi is not None else sr, state.lo, state.hi)
        rec.observation_ok=mine==node_hull_direct(state, sl, sr)
        if not rec.observation_ok:
            raise InvariantViolation(f"split of [{state.lo}, {state.hi}] at {rec.median} lost hull points")
    return pts

def hull_of_colorful_level(envs: Sequence[Envelope], level: int, trace: Optional[List[SplitTrace]]=None,
                           check: bool=False) -> DownwardHull:
    """Closed hull of the points with colorful level at most `level`.

    With `check`, every split is compared against the directly enumerated hull of its node
    and the outcome is stored in the trace.
    """
    k=len(envs)
    if level<0: raise ValueError(f"Invalid level {level}: must be >= 0")
    if level>=k: return DownwardHull(full=True)
    sl,sr=asymptotic_slopes(envs, level)
    if sl<sr: return DownwardHull(full=True)
    root=SlabState.root(envs, level)
    if root.is_elementary:
        return hull_of_level_lines([OrientedLine(p.line) for p in root.pieces], level)
    pts=_solve(root, sl, sr, trace, check)
    logger.debug("colorful level %d of %d envelopes: %d hull points collected", level, k, len(pts))
    return DownwardHull.from_points(pts, sl, sr)

@dataclass(frozen=True)
class RayTest:
    intersects: bool
    witness: Optional[Pt2]
    crossings: Tuple[Tuple[int, Pt2], ...]

def _ray_crossings(ray: Ray2, envs: Sequence[Envelope]) -> List[Tuple[Fraction, EnvelopePiece, Pt2]]:
    o,d=ray.origin, ray.direction
    out=[]
    for e in envs:
        for p in e.pieces:
            L=p.line
            den=L.a*d.x+L.b*d.y
            if den==0: continue
            t=-L.value(o)/den
            if t<0: continue
            q=ray.point_at(t)
            if p.covers(q.x): out.append((t, p, q))
    out.sort(key=lambda c: c[0])
    return out

def ray_above_test(ray: Ray2, envs: Sequence[Envelope], level: int) -> RayTest:
    """Walk the envelope crossings along a ray; it meets the level set iff some point has
    at most `level` colors strictly below it."""
    cr=_ray_crossings(ray, envs)
    ts=sorted({c[0] for c in cr})
    params=[Fraction(0)]+[t for t in ts if t>0]
    params=sorted(set(params+[(a+b)/2 for a,b in zip(params, params[1:])]+[params[-1]+1]))
    crossings=tuple((c[1].color, c[2]) for c in cr)
    for t in params:
        q=ray.point_at(t)
        if colorful_open_count(q, envs)<=level: return RayTest(True, q, crossings)
    return RayTest(False, None, crossings)

@dataclass(frozen=True)
class TangentCertificate:
    """One supporting ray from `query` to the hull of the level set.

    `slope` is the supporting slope, `interval` the innermost candidate-slope interval the
    search settled in, `crossings` the (color, point) order along the ray inside that
    interval, `touch` the contact point or None when the contact is at infinity.
    """
    query: Pt2
    side: str
    slope: Fraction
    interval: Tuple[Optional[Fraction], Optional[Fraction]]
    crossings: Tuple[Tuple[int, Pt2], ...]
    touch: Optional[Pt2]

    def mirrored(self) -> "TangentCertificate":
        m=lambda q: Pt2(-q.x, q.y)
        lo,hi=self.interval
        return TangentCertificate(m(self.query), 'right' if self.side=='left' else 'left', -self.slope,
                                  (None if hi is None else -hi, None if lo is None else -lo),
                                  tuple((c, m(q)) for c,q in self.crossings), None if self.touch is None else m(self.touch))

def _left_threshold(x: Pt2, envs: Sequence[Envelope], level: int) -> Tuple[Optional[Fraction], Optional[TangentCertificate]]:
    """Smallest slope s whose leftward ray from x (direction (-1, -s)) meets the level set."""
    def ray(s): return Ray2(x, Pt2(-1, -s))
    def meets(s): return ray_above_test(ray(s), envs, level).intersects
    misses=lambda s: not meets(s)
    stage1={(x.y-b.y)/(x.x-b.x) for e in envs for b in e.breakpoints if b.x<x.x}
    stage1|={e.pieces[0].line.slope for e in envs}
    c1=sorted(stage1)
    j=_last_true(c1, misses)
    lo_c=c1[j] if j>=0 else None
    hi_c=c1[j+1] if j+1<len(c1) else None
    crossed=[c[1] for c in _ray_crossings(ray(_pick(lo_c, hi_c)), envs)]
    stage2={v for v in (lo_c, hi_c) if v is not None}
    for p,q in combinations(crossed, 2):
        if p.line.slope==q.line.slope: continue
        X=(q.line.intercept-p.line.intercept)/(p.line.slope-q.line.slope)
        if X>=x.x or not (p.covers(X) and q.covers(X)): continue
        s=(x.y-p.line.at(X))/(x.x-X)
        if (lo_c is None or s>lo_c) and (hi_c is None or s<hi_c): stage2.add(s)
    c2=sorted(stage2)
    j2=_last_true(c2, misses)
    base=c2[j2] if j2>=0 else None
    nxt=c2[j2+1] if j2+1<len(c2) else None
    between=_pick(base, nxt)
    if meets(between):
        if base is None: return None, None
        a=base
    else:
        if nxt is None: raise InvariantViolation(f"no leftward ray from {x} meets level {level}")
        a=nxt
    at_a=ray_above_test(ray(a), envs, level)
    order=ray_above_test(ray(between), envs, level).crossings
    return a, TangentCertificate(x, 'left', a, (base, nxt), order, at_a.witness if at_a.intersects else None)

def point_above_hull(x: Pt2, envs: Sequence[Envelope], level: int):
    """INSIDE when x lies in the closed hull of the level set, else (left, right) certificates."""
    if colorful_open_count(x, envs)<=level: return INSIDE
    if level>=len(envs): return INSIDE
    sl,sr=asymptotic_slopes(envs, level)
    if sl<sr: return INSIDE
    a,left=_left_threshold(x, envs, level)
    if a is None: return INSIDE
    a2,right=_left_threshold(Pt2(-x.x, x.y), [e.mirrored() for e in envs], level)
    if a2 is None: return INSIDE
    b=-a2
    if a<b: return INSIDE
    # equal thresholds: x is on a chord only if both supporting rays touch
    if a==b and left.touch is not None and right.touch is not None: return INSIDE
    return left, right.mirrored()

def colorful_center_region_2d(ps: ColoredPointSet, level: int) -> Region2:
    """Exact set of points of colorful depth at least `level`."""
    require_general_position(list(ps.points), list(ps.colors))
    if not 1<=level<=ps.k: raise ValueError(f"Invalid level {level}: expected 1 <= level <= {ps.k}")
    hs=[]
    for side,reflected in ((ps, False), (ps.reflected(), True)):
        h=hull_of_colorful_level(color_envelopes(side), level-1)
        cons=lines_above_constraints(h, reflected)
        if cons is None: return Empty(2)
        hs+=cons
    return halfplane_intersection(hs)

def colorful_median_2d(ps: ColoredPointSet) -> Tuple[int, Region2]:
    """Largest colorful depth reached and its region, searching upward from ceil(k/3)."""
    level=max(1, math.ceil(ps.k/3))
    best=colorful_center_region_2d(ps, level)
    if isinstance(best, Empty):
        raise InvariantViolation(f"colorful region at level {level} is empty for k = {ps.k}")
    while level<ps.k:
        nxt=colorful_center_region_2d(ps, level+1)
        if isinstance(nxt, Empty): break
        level,best=level+1,nxt
    return level, best
