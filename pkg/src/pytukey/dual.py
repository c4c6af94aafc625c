"""Point/line duality, lower envelopes, levels and hulls of levels of line arrangements.

Duality: (a, b) <-> y = a*x - b in the plane and (a, b, c) <-> z = a*x + b*y - c in space.
It preserves above/below: p lies above q* exactly when q lies above p*.

Level sets are closed: a point belongs to the closure of the level-u set when at most u
carriers lie strictly on their counting side of it.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
from .convex import (DownwardHull, Empty, Halfplane, Region2,
                     halfplane_intersection, reduce_generators2)
from .errors import DegenerateInput
from .exact import Line2, Plane3, Pt2, Pt3, Q, require_general_position

Window=Tuple[Optional[Fraction], Optional[Fraction]]

def dual_map(p: Union[Pt2, Pt3]) -> Union[Line2, Plane3]:
    if isinstance(p, Pt2): return Line2.from_slope(p.x, -p.y)
    return Plane3.from_coeffs(p.x, p.y, -p.z)

def dual_inverse(c: Union[Line2, Plane3]) -> Union[Pt2, Pt3]:
    if isinstance(c, Line2): return Pt2(c.slope, -c.intercept)
    if c.is_vertical: raise DegenerateInput(f"vertical plane {c!r} has no dual point")
    return Pt3(c.alpha, c.beta, -c.gamma)

def reflect(p: Union[Pt2, Pt3]) -> Union[Pt2, Pt3]:
    """Negate the last coordinate; duals of reflected points swap above and below."""
    return Pt2(p.x, -p.y) if isinstance(p, Pt2) else Pt3(p.x, p.y, -p.z)

@dataclass(frozen=True)
class EnvelopePiece:
    """One line of an envelope on the x-interval [lo, hi] (None is infinite)."""
    line: Line2
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    color: int=0

    def covers(self, x) -> bool:
        return (self.lo is None or self.lo<=x) and (self.hi is None or x<=self.hi)

    def clipped(self, lo: Optional[Fraction], hi: Optional[Fraction]) -> Optional["EnvelopePiece"]:
        a=self.lo if lo is None else (lo if self.lo is None else max(lo, self.lo))
        b=self.hi if hi is None else (hi if self.hi is None else min(hi, self.hi))
        if a is not None and b is not None and a>b: return None
        return EnvelopePiece(self.line, a, b, self.color)

    def mirrored(self) -> "EnvelopePiece":
        return EnvelopePiece(Line2.from_slope(-self.line.slope, self.line.intercept),
                             None if self.hi is None else -self.hi, None if self.lo is None else -self.lo, self.color)

@dataclass(frozen=True)
class Envelope:
    """Lower envelope of one color class: concave chain, slopes strictly decreasing."""
    pieces: Tuple[EnvelopePiece, ...]
    color: int=0

    @property
    def breakpoints(self) -> List[Pt2]:
        return [Pt2(p.hi, p.line.at(p.hi)) for p in self.pieces[:-1]]

    @property
    def lines(self) -> List[Line2]: return [p.line for p in self.pieces]

    def at(self, x) -> Fraction:
        x=Q(x)
        return min(p.line.at(x) for p in self.pieces)

    def mirrored(self) -> "Envelope":
        """The envelope under x -> -x."""
        return Envelope(tuple(p.mirrored() for p in reversed(self.pieces)), self.color)

def lower_envelope(lines: Iterable[Line2], color: int=0) -> Envelope:
    ls=list(lines)
    if not ls: raise ValueError("lower_envelope needs at least one line")
    for l in ls:
        if l.is_vertical: raise DegenerateInput(f"vertical line {l!r} in envelope input")
    ls.sort(key=lambda l: -l.slope)
    for a,b in zip(ls, ls[1:]):
        if a.slope==b.slope: raise DegenerateInput(f"parallel lines {a!r} and {b!r} in envelope input")
    def cross_x(l1, l2): return (l2.intercept-l1.intercept)/(l1.slope-l2.slope)
    stack: List[Line2]=[]
    for l in ls:
        while len(stack)>=2 and cross_x(stack[-2], l)<=cross_x(stack[-2], stack[-1]): stack.pop()
        stack.append(l)
    xs=[cross_x(a, b) for a,b in zip(stack, stack[1:])]
    bounds=[None]+xs+[None]
    return Envelope(tuple(EnvelopePiece(l, bounds[i], bounds[i+1], color) for i,l in enumerate(stack)), color)

def colorful_level_at(x: Pt2, envs: Sequence[Envelope]) -> int:
    """Number of envelopes lying below x or through it."""
    return sum(1 for e in envs if e.at(x.x)<=x.y)

@dataclass(frozen=True)
class ColoredPointSet:
    points: Tuple[Union[Pt2, Pt3], ...]
    colors: Tuple[int, ...]

    def __post_init__(self):
        if len(self.points)!=len(self.colors):
            raise ValueError(f"Invalid colored set: {len(self.points)} points but {len(self.colors)} colors")
        if self.colors and sorted(set(self.colors))!=list(range(1, max(self.colors)+1)):
            raise ValueError(f"Invalid colors {sorted(set(self.colors))}: expected every id in 1..k")

    @classmethod
    def from_lists(cls, points: Sequence, colors: Sequence[int]) -> "ColoredPointSet":
        """Renumber arbitrary color ids to 1..k in sorted order."""
        ids={c:i+1 for i,c in enumerate(sorted(set(colors)))}
        return cls(tuple(points), tuple(ids[c] for c in colors))

    @classmethod
    def monochrome(cls, points: Sequence) -> "ColoredPointSet":
        return cls(tuple(points), tuple(1 for _ in points))

    @classmethod
    def rainbow(cls, points: Sequence) -> "ColoredPointSet":
        return cls(tuple(points), tuple(range(1, len(points)+1)))

    @property
    def n(self) -> int: return len(self.points)

    @property
    def k(self) -> int: return max(self.colors, default=0)

    @property
    def dim(self) -> int: return 2 if self.points and isinstance(self.points[0], Pt2) else 3

    def by_color(self) -> Dict[int, List]:
        out: Dict[int, List]={}
        for p,c in zip(self.points, self.colors): out.setdefault(c, []).append(p)
        return out

    def reflected(self) -> "ColoredPointSet":
        return ColoredPointSet(tuple(reflect(p) for p in self.points), self.colors)

def color_envelopes(ps: ColoredPointSet) -> List[Envelope]:
    return [lower_envelope((dual_map(p) for p in pts), c) for c,pts in sorted(ps.by_color().items())]

@dataclass(frozen=True)
class OrientedLine:
    """A non-vertical line counting the points strictly above it (counts_below) or strictly below."""
    line: Line2
    counts_below: bool=True

    def __post_init__(self):
        if self.line.is_vertical: raise DegenerateInput(f"vertical line {self.line!r} cannot be oriented")

    def counts(self, p: Pt2) -> bool:
        v=self.line.at(p.x)
        return v<p.y if self.counts_below else v>p.y

def open_count(lines: Sequence[OrientedLine], p: Pt2) -> int:
    return sum(1 for l in lines if l.counts(p))

def _counted_before(li: OrientedLine, lj: OrientedLine) -> bool:
    """Whether lj counts at points of li left of their crossing."""
    si,sj=li.line.slope, lj.line.slope
    return si<sj if lj.counts_below else si>sj

def _in_window(x, lo, hi) -> bool:
    return (lo is None or x>=lo) and (hi is None or x<=hi)

def line_vertices(lines: Sequence[OrientedLine], i: int, window: Window=(None, None)) -> List[Tuple[Pt2, int]]:
    """Arrangement vertices on line i inside the window, each with its open count (left to right)."""
    lo,hi=window
    li=lines[i]
    base=0
    events: Dict[Fraction, List[bool]]={}
    for j,lj in enumerate(lines):
        if j==i: continue
        if lj.line.slope==li.line.slope:
            base+=lj.counts(li.line.point())
            continue
        x=(lj.line.intercept-li.line.intercept)/(li.line.slope-lj.line.slope)
        before=_counted_before(li, lj)
        base+=before
        events.setdefault(x, []).append(before)
    out=[]; cur=base
    for x in sorted(events):
        flags=events[x]
        at=cur-sum(flags)
        if _in_window(x, lo, hi): out.append((Pt2(x, li.line.at(x)), at))
        cur=at+sum(1 for f in flags if not f)
    return out

def direction_count(lines: Sequence[OrientedLine], d: Pt2) -> int:
    """Open count far along direction d, minimized over offsets within a parallel family."""
    if d.x==0: return sum(1 for l in lines if l.counts_below==(d.y>0))
    s=d.y/d.x; right=d.x>0
    total=0; family=[]
    for l in lines:
        sl=l.line.slope
        if sl==s: family.append(l); continue
        if l.counts_below: total+=(s>sl) if right else (s<sl)
        else: total+=(s<sl) if right else (s>sl)
    if family:
        offsets={m.line.intercept for m in family}
        total+=min(sum(1 for m in family if (m.line.intercept<t if m.counts_below else m.line.intercept>t)) for t in offsets)
    return total

def level_candidates(lines: Sequence[OrientedLine], u: int, window: Window=(None, None)) -> List[Pt2]:
    """Every point of the closed level-u set that can be a vertex of its hull."""
    lo,hi=window
    pts=[]
    for i,l in enumerate(lines):
        vs=line_vertices(lines, i, window)
        pts+=[p for p,c in vs if c<=u]
        if not vs and lo is None and hi is None:
            p=Pt2(0, l.line.at(0))
            if open_count(lines, p)<=u: pts.append(p)
    for b in (lo, hi):
        if b is None: continue
        for l in lines:
            p=Pt2(b, l.line.at(b))
            if open_count(lines, p)<=u: pts.append(p)
    return pts

def level_directions(lines: Sequence[OrientedLine], u: int, window: Window=(None, None)) -> List[Pt2]:
    lo,hi=window
    cands={Pt2(0,1), Pt2(0,-1)}
    for l in lines:
        s=l.line.slope
        cands.update((Pt2(1,s), Pt2(-1,-s)))
    return sorted(d for d in cands
                  if not (lo is not None and d.x<0) and not (hi is not None and d.x>0) and direction_count(lines, d)<=u)

def hull_of_level_lines(lines: Sequence[OrientedLine], u: int, window: Optional[Window]=None) -> Union[DownwardHull, Region2]:
    """Closed convex hull of the level-u set of oriented lines, optionally inside a vertical slab.

    When every line counts below, the hull is a DownwardHull; mixed orientations give a
    general region. An empty level set gives Empty.
    """
    lines=list(lines)
    lo,hi=window or (None, None)
    if lo is not None and hi is not None and lo>hi: raise ValueError(f"Invalid window [{lo}, {hi}]")
    if u<0: return Empty(2)
    if not lines:
        return DownwardHull(full=True, lo=lo, hi=hi)
    pts=level_candidates(lines, u, (lo, hi))
    if not pts: return Empty(2)
    dirs=level_directions(lines, u, (lo, hi))
    if all(l.counts_below for l in lines):
        if Pt2(0,1) in dirs: return DownwardHull(full=True, lo=lo, hi=hi)
        left=[d.y/d.x for d in dirs if d.x<0]
        right=[d.y/d.x for d in dirs if d.x>0]
        return DownwardHull.from_points(pts, min(left) if lo is None else None, max(right) if hi is None else None, lo, hi)
    return reduce_generators2(pts, dirs)

def lines_above_constraints(h: DownwardHull, reflected: bool=False) -> Optional[List[Halfplane]]:
    """Halfplanes in (a, b) for the lines Y = a*X - b lying on or above h.

    With `reflected`, the constraints are stated for the mirrored coordinate -b. Returns
    None when no line lies above h.
    """
    if h.full: return None
    sb=-1 if reflected else 1
    if h.line is not None:
        s=h.line.slope; p=h.line.point()
        return [Halfplane(1, 0, s), Halfplane(-1, 0, -s), Halfplane(-p.x, sb, -p.y)]
    out=[Halfplane(-v.x, sb, -v.y) for v in h.vertices]
    if h.left_slope is not None: out.append(Halfplane(1, 0, h.left_slope))
    if h.right_slope is not None: out.append(Halfplane(-1, 0, -h.right_slope))
    return out

def lower_level_hull_2d(points: Sequence[Pt2], u: int) -> Union[DownwardHull, Region2]:
    return hull_of_level_lines([OrientedLine(dual_map(p)) for p in points], u)

def center_region_2d(points: Sequence[Pt2], level: int) -> Region2:
    """Exact set of points of Tukey depth at least `level`."""
    pts=[Pt2(p.x, p.y) for p in points]
    require_general_position(pts)
    n=len(pts)
    if not 1<=level<=n: raise ValueError(f"Invalid level {level}: expected 1 <= level <= {n}")
    hs=[]
    for side,reflected in ((pts, False), ([reflect(p) for p in pts], True)):
        h=lower_level_hull_2d(side, level-1)
        cons=lines_above_constraints(h, reflected)
        if cons is None: return Empty(2)
        hs+=cons
    return halfplane_intersection(hs)

def depth_2d(x: Pt2, points: Sequence[Pt2]) -> int:
    """Tukey depth of x read off the dual line x*: the smaller closed level count along it."""
    star=dual_map(x)
    duals=[dual_map(p) for p in points]
    xs=sorted({(d.intercept-star.intercept)/(star.slope-d.slope) for d in duals if d.slope!=star.slope})
    ts=list(xs)+[(a+b)/2 for a,b in zip(xs, xs[1:])]
    if not xs: ts=[Fraction(0)]
    best=len(points)
    for t in ts:
        y=star.at(t)
        below=sum(1 for d in duals if d.at(t)<=y)
        above=sum(1 for d in duals if d.at(t)>=y)
        best=min(best, below, above)
    for far in (1, -1):
        # asymptotic counts; lines parallel to x* touch the vertical halfplane boundary
        below=above=0
        for d in duals:
            if d.slope==star.slope: below+=1; above+=1
            elif (d.slope<star.slope)==(far>0): below+=1
            else: above+=1
        best=min(best, below, above)
    return best

def tukey_median_2d(points: Sequence[Pt2]) -> Tuple[int, Region2]:
    """Maximum depth and its region, searching upward from the centerpoint bound."""
    n=len(points)
    level=max(1, math.ceil(n/3))
    best=center_region_2d(points, level)
    if isinstance(best, Empty):
        raise DegenerateInput(f"centerpoint region at level {level} is empty")
    while level<n:
        nxt=center_region_2d(points, level+1)
        if isinstance(nxt, Empty): break
        level,best=level+1,nxt
    return level, best
