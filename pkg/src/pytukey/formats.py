"""Point files and region files with exact rational values."""
import csv, io, json, re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple
from .convex import ConvexPoly2, ConvexPoly3, Empty, Halfplane, Halfspace, UnboundedRegion
from .dual import ColoredPointSet
from .errors import ParseError
from .exact import as_point, coords

_RATIONAL=re.compile(r'^[+-]?(\d+(/\d+)?|\d+\.\d*|\.\d+)$')

def parse_rational(text, source: Optional[str]=None) -> Fraction:
    """'p/q', an integer or a finite decimal, without rounding."""
    if isinstance(text, int) and not isinstance(text, bool): return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise ParseError(f"Invalid rational {text!r}", source)
    try: return Fraction(text.strip())
    except ZeroDivisionError: raise ParseError(f"Invalid rational {text!r}: zero denominator", source)

def format_rational(q) -> str:
    q=Fraction(q)
    return f"{q.numerator}/{q.denominator}"

def normalize_colors(colors: Sequence) -> List[int]:
    """Renumber color ids to 1..k in the order of their sorted values."""
    ids={c: i+1 for i,c in enumerate(sorted(set(colors)))}
    return [ids[c] for c in colors]

@dataclass
class PointFile:
    dim: int
    points: List
    colors: Optional[List[int]]=None

    def point_set(self) -> ColoredPointSet:
        if self.colors is None: return ColoredPointSet.monochrome(self.points)
        return ColoredPointSet.from_lists(self.points, self.colors)

    def to_dict(self) -> Dict[str, Any]:
        d={'dim': self.dim, 'points': [[format_rational(c) for c in coords(p)] for p in self.points]}
        if self.colors is not None: d['colors']=list(self.colors)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def canonical_text(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))

def _make_points(rows: List[List], dim: Optional[int], source: str) -> List:
    pts=[]
    for i,row in enumerate(rows):
        if dim is not None and len(row)!=dim:
            raise ParseError(f"row {i} has {len(row)} coordinates, expected {dim}", source)
        if len(row) not in (2, 3): raise ParseError(f"row {i} has {len(row)} coordinates", source)
        pts.append(as_point([parse_rational(v, source) for v in row]))
    return pts

def parse_points_json(text: str, source: str="<json>") -> PointFile:
    try: data=json.loads(text)
    except json.JSONDecodeError as e: raise ParseError(f"Invalid JSON: {e}", source)
    if not isinstance(data, dict) or 'points' not in data: raise ParseError("missing 'points'", source)
    dim=data.get('dim')
    if dim not in (2, 3): raise ParseError(f"Invalid dim {dim!r}: expected 2 or 3", source)
    pts=_make_points(data['points'], dim, source)
    colors=data.get('colors')
    if colors is not None:
        if len(colors)!=len(pts): raise ParseError(f"{len(colors)} colors for {len(pts)} points", source)
        colors=normalize_colors(colors)
    return PointFile(dim, pts, colors)

def parse_points_csv(text: str, source: str="<csv>") -> PointFile:
    reader=csv.reader(io.StringIO(text))
    rows=[r for r in reader if r and any(c.strip() for c in r)]
    if not rows: raise ParseError("empty CSV", source)
    header=[h.strip().lower() for h in rows[0]]
    axes=[h for h in header if h in ('x', 'y', 'z')]
    if axes not in (['x', 'y'], ['x', 'y', 'z']): raise ParseError(f"Invalid header {rows[0]}", source)
    has_color='color' in header
    idx=[header.index(a) for a in axes]
    pts=_make_points([[r[i].strip() for i in idx] for r in rows[1:]], len(axes), source)
    colors=None
    if has_color:
        ci=header.index('color')
        try: colors=normalize_colors([int(r[ci]) for r in rows[1:]])
        except ValueError as e: raise ParseError(f"Invalid color: {e}", source)
    return PointFile(len(axes), pts, colors)

def load_points(path) -> PointFile:
    path=Path(path)
    if not path.exists(): raise FileNotFoundError(f"Point file not found: {path}")
    text=path.read_text()
    if path.suffix.lower()=='.csv': return parse_points_csv(text, str(path))
    return parse_points_json(text, str(path))

def save_points(pf: PointFile, path) -> Path:
    path=Path(path)
    path.write_text(pf.to_json())
    return path

def _vec(p) -> List[str]: return [format_rational(c) for c in coords(p)]

def region_to_dict(region, metadata: Optional[Dict[str, Any]]=None) -> Dict[str, Any]:
    """RegionFile contents; vertices keep the region's canonical order."""
    d: Dict[str, Any]={'kind': region.kind, 'dim': region.dim}
    if isinstance(region, (ConvexPoly2, ConvexPoly3, UnboundedRegion)):
        d['vertices']=[_vec(v) for v in region.vertices]
    if isinstance(region, ConvexPoly3): d['faces']=[list(f) for f in region.faces]
    if isinstance(region, UnboundedRegion):
        d['rays']=[_vec(r) for r in region.rays]
        d['lines']=[_vec(l) for l in region.lines]
        rows=region.halfplanes if region.dim==2 else region.halfspaces
        d['halfspaces']=[[format_rational(c) for c in _row(h)] for h in rows]
    d['metadata']=dict(metadata or {})
    return d

def _row(h) -> Tuple:
    return (h.a, h.b, h.c) if isinstance(h, Halfplane) else (h.a, h.b, h.c, h.d)

def region_from_dict(d: Dict[str, Any], source: str="<region>"):
    kind=d.get('kind'); dim=d.get('dim')
    if dim not in (2, 3): raise ParseError(f"Invalid dim {dim!r}", source)
    vec=lambda row: as_point([parse_rational(v, source) for v in row])
    verts=tuple(vec(r) for r in d.get('vertices', []))
    if kind=='empty': return Empty(dim)
    if kind=='polygon': return ConvexPoly2(verts)
    if kind=='polytope': return ConvexPoly3(verts, tuple(tuple(f) for f in d.get('faces', [])))
    if kind=='unbounded':
        rows=[[parse_rational(v, source) for v in r] for r in d.get('halfspaces', [])]
        hs=tuple(Halfplane(*r) for r in rows) if dim==2 else ()
        hs3=tuple(Halfspace(*r) for r in rows) if dim==3 else ()
        return UnboundedRegion(dim, verts, tuple(vec(r) for r in d.get('rays', [])),
                               tuple(vec(r) for r in d.get('lines', [])), hs, hs3)
    raise ParseError(f"Invalid region kind {kind!r}", source)

def save_region(region, path, metadata: Optional[Dict[str, Any]]=None) -> Path:
    path=Path(path)
    path.write_text(json.dumps(region_to_dict(region, metadata), indent=2))
    return path

def load_region(path):
    path=Path(path)
    try: data=json.loads(path.read_text())
    except json.JSONDecodeError as e: raise ParseError(f"Invalid JSON: {e}", str(path))
    return region_from_dict(data, str(path))

def first_difference(a, b) -> Optional[str]:
    """Human-readable first difference between two regions, or None when equal."""
    if a==b: return None
    da,db=region_to_dict(a), region_to_dict(b)
    if da['kind']!=db['kind']: return f"kind {da['kind']} != {db['kind']}"
    for key in ('vertices', 'rays', 'lines', 'faces', 'halfspaces'):
        va,vb=da.get(key, []), db.get(key, [])
        for i,(x,y) in enumerate(zip(va, vb)):
            if x!=y: return f"{key}[{i}]: {x} != {y}"
        if len(va)!=len(vb): return f"{key}: {len(va)} entries != {len(vb)}"
    return "regions differ"
