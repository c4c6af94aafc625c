"""Exact rational scalars, points, carriers and predicates.

Every coordinate is a `fractions.Fraction`; no predicate ever touches a float.
"""
import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple, Union
from .errors import DegenerateInput, VerticalCarrier

Scalar=Fraction
Number=Union[int, str, Fraction]

def Q(value: Number) -> Fraction:
    """Coerce an int, a Fraction or a rational/decimal string to an exact Fraction."""
    if isinstance(value, Fraction): return value
    if isinstance(value, bool): raise TypeError("booleans are not coordinates")
    if isinstance(value, float):
        raise TypeError(f"float {value!r} is not exact; pass a string or Fraction")
    return Fraction(value)

def sign(v) -> int:
    return (v>0)-(v<0)

@dataclass(frozen=True, order=True)
class Pt2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self,'x',Q(self.x)); object.__setattr__(self,'y',Q(self.y))

    def __add__(self, o: "Pt2") -> "Pt2": return Pt2(self.x+o.x, self.y+o.y)
    def __sub__(self, o: "Pt2") -> "Pt2": return Pt2(self.x-o.x, self.y-o.y)
    def __neg__(self) -> "Pt2": return Pt2(-self.x, -self.y)
    def scale(self, t) -> "Pt2": return Pt2(self.x*t, self.y*t)
    def dot(self, o: "Pt2") -> Fraction: return self.x*o.x+self.y*o.y
    def cross(self, o: "Pt2") -> Fraction: return self.x*o.y-self.y*o.x
    def is_zero(self) -> bool: return self.x==0 and self.y==0
    def perp(self) -> "Pt2":
        """Counterclockwise quarter turn."""
        return Pt2(-self.y, self.x)

    def __repr__(self): return f"Pt2({self.x}, {self.y})"

@dataclass(frozen=True, order=True)
class Pt3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for f in ('x','y','z'): object.__setattr__(self,f,Q(getattr(self,f)))

    def __add__(self, o: "Pt3") -> "Pt3": return Pt3(self.x+o.x, self.y+o.y, self.z+o.z)
    def __sub__(self, o: "Pt3") -> "Pt3": return Pt3(self.x-o.x, self.y-o.y, self.z-o.z)
    def __neg__(self) -> "Pt3": return Pt3(-self.x, -self.y, -self.z)
    def scale(self, t) -> "Pt3": return Pt3(self.x*t, self.y*t, self.z*t)
    def dot(self, o: "Pt3") -> Fraction: return self.x*o.x+self.y*o.y+self.z*o.z
    def cross(self, o: "Pt3") -> "Pt3":
        return Pt3(self.y*o.z-self.z*o.y, self.z*o.x-self.x*o.z, self.x*o.y-self.y*o.x)
    def is_zero(self) -> bool: return self.x==0 and self.y==0 and self.z==0
    def xy(self) -> Pt2: return Pt2(self.x, self.y)

    def __repr__(self): return f"Pt3({self.x}, {self.y}, {self.z})"

Point=Union[Pt2, Pt3]

def as_point(coords: Sequence[Number]) -> Point:
    if len(coords)==2: return Pt2(*coords)
    if len(coords)==3: return Pt3(*coords)
    raise ValueError(f"Expected 2 or 3 coordinates, got {len(coords)}")

def coords(p: Point) -> Tuple[Fraction, ...]:
    return (p.x,p.y) if isinstance(p, Pt2) else (p.x,p.y,p.z)

@dataclass(frozen=True)
class Line2:
    """The line a*x + b*y = c, normalized so b == 1 (or a == 1 when vertical)."""
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a,b,c=Q(self.a),Q(self.b),Q(self.c)
        if a==0 and b==0: raise ValueError("Line2 needs (a, b) != (0, 0)")
        d=b if b!=0 else a
        object.__setattr__(self,'a',a/d); object.__setattr__(self,'b',b/d); object.__setattr__(self,'c',c/d)

    @classmethod
    def from_slope(cls, slope: Number, intercept: Number) -> "Line2":
        """y = slope*x + intercept."""
        return cls(-Q(slope), 1, Q(intercept))

    @classmethod
    def through(cls, p: Pt2, q: Pt2) -> "Line2":
        if p==q: raise ValueError(f"Line2.through needs distinct points, got {p} twice")
        d=q-p
        return cls(-d.y, d.x, d.x*p.y-d.y*p.x)

    @property
    def is_vertical(self) -> bool: return self.b==0

    @property
    def slope(self) -> Fraction:
        if self.b==0: raise VerticalCarrier(f"vertical line x = {self.c} has no slope")
        return -self.a

    @property
    def intercept(self) -> Fraction:
        if self.b==0: raise VerticalCarrier(f"vertical line x = {self.c} has no intercept")
        return self.c

    def at(self, x) -> Fraction:
        """y-value at abscissa x."""
        if self.b==0: raise VerticalCarrier(f"vertical line x = {self.c} is not a function of x")
        return self.c-self.a*x

    def value(self, p: Pt2) -> Fraction:
        """Affine form a*x + b*y - c at p."""
        return self.a*p.x+self.b*p.y-self.c

    def direction(self) -> Pt2:
        return Pt2(self.b, -self.a)

    def point(self) -> Pt2:
        """A canonical point on the line (x = 0, or y = 0 for vertical lines)."""
        return Pt2(self.c, 0) if self.b==0 else Pt2(0, self.c)

    def __repr__(self):
        if self.b==0: return f"Line2(x = {self.c})"
        return f"Line2(y = {-self.a}*x + {self.c})"

@dataclass(frozen=True)
class Plane3:
    """The plane a*x + b*y + c*z = d, normalized so c == 1 when non-vertical."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        a,b,c,d=Q(self.a),Q(self.b),Q(self.c),Q(self.d)
        if a==0 and b==0 and c==0: raise ValueError("Plane3 needs (a, b, c) != (0, 0, 0)")
        n=c if c!=0 else (b if b!=0 else a)
        for f,v in (('a',a),('b',b),('c',c),('d',d)): object.__setattr__(self,f,v/n)

    @classmethod
    def from_coeffs(cls, alpha: Number, beta: Number, gamma: Number) -> "Plane3":
        """z = alpha*x + beta*y + gamma."""
        return cls(-Q(alpha), -Q(beta), 1, Q(gamma))

    @classmethod
    def through(cls, p: Pt3, q: Pt3, r: Pt3) -> "Plane3":
        n=(q-p).cross(r-p)
        if n.is_zero(): raise ValueError(f"Plane3.through needs affinely independent points: {p}, {q}, {r}")
        return cls(n.x, n.y, n.z, n.dot(p))

    @property
    def is_vertical(self) -> bool: return self.c==0

    @property
    def alpha(self) -> Fraction: return -self.a
    @property
    def beta(self) -> Fraction: return -self.b
    @property
    def gamma(self) -> Fraction: return self.d

    def normal(self) -> Pt3: return Pt3(self.a, self.b, self.c)

    def at(self, x, y) -> Fraction:
        if self.c==0: raise VerticalCarrier(f"vertical plane {self!r} is not a function of (x, y)")
        return self.d-self.a*x-self.b*y

    def value(self, p: Pt3) -> Fraction:
        return self.a*p.x+self.b*p.y+self.c*p.z-self.d

    def __repr__(self):
        if self.c==0: return f"Plane3({self.a}*x + {self.b}*y = {self.d})"
        return f"Plane3(z = {self.alpha}*x + {self.beta}*y + {self.gamma})"

Carrier=Union[Line2, Plane3]

@dataclass(frozen=True)
class Segment2:
    p: Pt2
    q: Pt2

    def __post_init__(self):
        if self.p==self.q: raise ValueError(f"degenerate segment at {self.p}")

    def line(self) -> Line2: return Line2.through(self.p, self.q)

@dataclass(frozen=True)
class Ray2:
    origin: Pt2
    direction: Pt2

    def __post_init__(self):
        if self.direction.is_zero(): raise ValueError(f"ray from {self.origin} has zero direction")

    def point_at(self, t) -> Pt2: return self.origin+self.direction.scale(t)

    def line(self) -> Line2: return Line2.through(self.origin, self.origin+self.direction)

class Side(Enum):
    BELOW=-1
    ON=0
    ABOVE=1

class Incidence(Enum):
    PARALLEL="parallel"
    IDENTICAL="identical"

def orientation(*points: Point) -> int:
    """Sign of the orientation determinant of 3 planar or 4 spatial points."""
    if len(points)==3 and all(isinstance(p, Pt2) for p in points):
        p,q,r=points
        return sign((q-p).cross(r-p))
    if len(points)==4 and all(isinstance(p, Pt3) for p in points):
        p,q,r,s=points
        return sign((q-p).cross(r-p).dot(s-p))
    raise ValueError("orientation takes 3 Pt2 or 4 Pt3")

def side_of(carrier: Carrier, p: Point) -> Side:
    """Above/below test against a non-vertical line or plane."""
    if carrier.is_vertical:
        raise VerticalCarrier(f"above/below is undefined for vertical carrier {carrier!r}")
    if isinstance(carrier, Line2):
        v=p.y-carrier.at(p.x)
    else:
        v=p.z-carrier.at(p.x, p.y)
    return Side(sign(v))

def intersect(l1: Line2, l2: Line2) -> Union[Pt2, Incidence]:
    det=l1.a*l2.b-l2.a*l1.b
    if det==0:
        return Incidence.IDENTICAL if l1==l2 else Incidence.PARALLEL
    return Pt2((l1.c*l2.b-l2.c*l1.b)/det, (l1.a*l2.c-l2.a*l1.c)/det)

@dataclass(frozen=True)
class ViolationReport:
    kind: str
    indices: Tuple[int, ...]
    points: Tuple[Point, ...]

    def __str__(self):
        pts=", ".join(repr(p) for p in self.points)
        return f"{self.kind} at indices {list(self.indices)}: {pts}"

EXHAUSTIVE_LIMIT_2D=2000
EXHAUSTIVE_LIMIT_3D=60

def _collinear_triple(points: Sequence[Pt2]) -> Optional[Tuple[int, int, int]]:
    for i,p in enumerate(points):
        seen={}
        for j,q in enumerate(points):
            if j==i: continue
            d=q-p
            key=d.y/d.x if d.x!=0 else None
            if key in seen: return tuple(sorted((i, seen[key], j)))
            seen[key]=j
    return None

def validate_general_position(points: Sequence[Point], colors: Optional[Sequence[int]]=None,
                              polar: bool=False, exhaustive: Optional[bool]=None) -> Optional[ViolationReport]:
    """Return None when the points are in general position, else the first violation.

    `exhaustive=None` runs the collinearity/coplanarity scans only below a size limit;
    distinctness and the dual-slope checks always run.
    """
    pts=list(points)
    if colors is not None and len(colors)!=len(pts):
        return ViolationReport("color count mismatch", (), ())
    if not pts: return None
    dim=2 if isinstance(pts[0], Pt2) else 3
    if any((2 if isinstance(p, Pt2) else 3)!=dim for p in pts):
        return ViolationReport("mixed dimensions", (), ())
    first={}
    for i,p in enumerate(pts):
        if p in first: return ViolationReport("duplicate point", (first[p], i), (p, p))
        first[p]=i
    if polar:
        for i,p in enumerate(pts):
            if all(c==0 for c in coords(p)): return ViolationReport("point at the origin", (i,), (p,))
    # dual-slope coordinates: x in the plane, (x, y) in space; equal ones give parallel duals
    slope_of=(lambda p: p.x) if dim==2 else (lambda p: (p.x, p.y))
    seen={}
    for i,p in enumerate(pts):
        s=slope_of(p)
        if s in seen: return ViolationReport("shared dual-slope coordinate", (seen[s], i), (pts[seen[s]], p))
        seen[s]=i
    if exhaustive is None:
        exhaustive=len(pts)<=(EXHAUSTIVE_LIMIT_2D if dim==2 else EXHAUSTIVE_LIMIT_3D)
    if not exhaustive: return None
    if dim==2:
        t=_collinear_triple(pts)
        if t: return ViolationReport("collinear triple", t, tuple(pts[i] for i in t))
        return None
    for i,j,k in combinations(range(len(pts)), 3):
        if (pts[j]-pts[i]).cross(pts[k]-pts[i]).is_zero():
            return ViolationReport("collinear triple", (i,j,k), (pts[i],pts[j],pts[k]))
    for q in combinations(range(len(pts)), 4):
        if orientation(*(pts[i] for i in q))==0:
            return ViolationReport("coplanar quadruple", q, tuple(pts[i] for i in q))
    return None

def require_general_position(points: Sequence[Point], colors: Optional[Sequence[int]]=None,
                             exhaustive: Optional[bool]=None) -> None:
    report=validate_general_position(points, colors, exhaustive=exhaustive)
    if report is not None:
        raise DegenerateInput(f"input is not in general position: {report}", report)

def half_plane(d: Pt2) -> int:
    """0 for directions with angle in [0, pi), 1 for [pi, 2*pi)."""
    return 0 if (d.y>0 or (d.y==0 and d.x>0)) else 1

def angle_sorted(dirs: Iterable[Pt2]) -> List[Pt2]:
    """Directions sorted counterclockwise by angle in [0, 2*pi), exact."""
    def cmp(u: Pt2, v: Pt2) -> int:
        hu,hv=half_plane(u),half_plane(v)
        if hu!=hv: return hu-hv
        c=u.cross(v)
        return -1 if c>0 else (1 if c<0 else 0)
    return sorted(dirs, key=functools.cmp_to_key(cmp))
