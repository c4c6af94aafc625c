"""SVG pictures of planar inputs and regions, OFF files for polytopes.

Floats are used for drawing only; the exact vertices ride along in an XML comment.
"""
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Optional, Sequence, Tuple
from .convex import ConvexPoly2, ConvexPoly3, Empty, UnboundedRegion, clip_polygon, region_halfplanes
from .dual import Envelope
from .exact import Pt2
from .formats import format_rational

PALETTE=("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
SIZE=480
MARGIN=24

def svgroot(w: int, h: int) -> ET.Element:
    return ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width=f"{w}px", height=f"{h}px", viewBox=f"0 0 {w} {h}")

def svggroup(parent: ET.Element, **attrs) -> ET.Element:
    return ET.SubElement(parent, "g", **attrs)

def svglinelist(parent: ET.Element, pts: List[Tuple[float, float]], closed: bool=False, **attrs) -> Optional[ET.Element]:
    if not pts: return None
    d="M{:.3f} {:.3f}".format(*pts[0])+"".join("L{:.3f} {:.3f}".format(*p) for p in pts[1:])
    return ET.SubElement(parent, "path", d=d+("z" if closed else ""), **attrs)

class Viewport:
    """Maps a data box onto the picture, y pointing up."""
    def __init__(self, points: Sequence[Pt2], size: int=SIZE):
        xs=[p.x for p in points] or [0]; ys=[p.y for p in points] or [0]
        pad=max(max(xs)-min(xs), max(ys)-min(ys), 1)/8
        self.lo=Pt2(min(xs)-pad, min(ys)-pad); self.hi=Pt2(max(xs)+pad, max(ys)+pad)
        self.size=size
        self.scale=float((size-2*MARGIN)/max(self.hi.x-self.lo.x, self.hi.y-self.lo.y))

    def box(self) -> List[Pt2]:
        lo,hi=self.lo,self.hi
        return [lo, Pt2(hi.x, lo.y), hi, Pt2(lo.x, hi.y)]

    def __call__(self, p: Pt2) -> Tuple[float, float]:
        return (MARGIN+float(p.x-self.lo.x)*self.scale, self.size-MARGIN-float(p.y-self.lo.y)*self.scale)

def _visible(region, view: Viewport) -> List[Pt2]:
    if isinstance(region, Empty): return []
    if isinstance(region, UnboundedRegion) and region.is_whole: return view.box()
    if isinstance(region, ConvexPoly2) and len(region.vertices)<3: return list(region.vertices)
    return clip_polygon(view.box(), region_halfplanes(region))

def render_svg(points: Sequence[Pt2], region=None, colors: Optional[Sequence[int]]=None,
               title: str="") -> ET.Element:
    """Points (colored when colors are given) and the visible part of a planar region."""
    anchor=list(points)+list(getattr(region, 'vertices', ()))
    view=Viewport(anchor)
    svg=svgroot(view.size, view.size)
    if title: ET.SubElement(svg, "title").text=title
    if region is not None and not isinstance(region, Empty):
        verts=getattr(region, 'vertices', ())
        svg.append(ET.Comment(" exact vertices: "+"; ".join(f"({format_rational(v.x)}, {format_rational(v.y)})" for v in verts)+" "))
        g=svggroup(svg, id="region")
        svglinelist(g, [view(p) for p in _visible(region, view)], closed=True, fill="#c6dbef", stroke="#08519c")
    g=svggroup(svg, id="points")
    for i,p in enumerate(points):
        x,y=view(p)
        c=PALETTE[(colors[i]-1)%len(PALETTE)] if colors else "black"
        ET.SubElement(g, "circle", cx=f"{x:.3f}", cy=f"{y:.3f}", r="3", fill=c)
    return svg

def render_dual_svg(envs: Sequence[Envelope], title: str="") -> ET.Element:
    """Lower envelopes of the color classes over the range of their breakpoints."""
    bps=[b for e in envs for b in e.breakpoints]
    xs=[b.x for b in bps] or [-1, 1]
    lo,hi=min(xs)-1, max(xs)+1
    samples=[Pt2(x, e.at(x)) for e in envs for x in (lo, hi)]+bps
    view=Viewport(samples)
    svg=svgroot(view.size, view.size)
    if title: ET.SubElement(svg, "title").text=title
    for e in envs:
        g=svggroup(svg, id=f"envelope-{e.color}")
        chain=[Pt2(lo, e.at(lo))]+[b for b in e.breakpoints if lo<b.x<hi]+[Pt2(hi, e.at(hi))]
        svglinelist(g, [view(p) for p in chain], fill="none", stroke=PALETTE[(e.color-1)%len(PALETTE)])
    return svg

def svgwrite(svg: ET.Element, path) -> Path:
    path=Path(path)
    ET.ElementTree(svg).write(path, encoding="unicode", xml_declaration=True)
    return path

def render_off(poly) -> str:
    """OFF text with exact rational coordinates."""
    if isinstance(poly, Empty): return "OFF\n0 0 0\n"
    if not isinstance(poly, ConvexPoly3): raise ValueError(f"Invalid region for OFF output: {poly.kind}")
    lines=["OFF", f"{len(poly.vertices)} {len(poly.faces)} {len(poly.edges())}"]
    lines+=[" ".join(format_rational(c) for c in (v.x, v.y, v.z)) for v in poly.vertices]
    lines+=[f"{len(f)} "+" ".join(str(i) for i in f) for f in poly.faces]
    return "\n".join(lines)+"\n"
