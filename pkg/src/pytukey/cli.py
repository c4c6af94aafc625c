import argparse, json, logging, sys
import xml.etree.ElementTree as ET
from pathlib import Path
from .config_loader import build_config, config_from_file
from .convex import Empty
from .dual import color_envelopes, depth_2d
from .errors import DegenerateInput, InvariantViolation, ParseError, RegionMismatch
from .exact import as_point
from .formats import load_points, parse_rational, region_to_dict
from .oracle import colorful_depth_oracle, depth_oracle
from .render import render_dual_svg, render_off, render_svg, svgwrite
from .runner import (RegionRunner, VerifySuite, algorithm_region, bench, generate_fixtures,
                     helly_level, level_bound, median_region, oracle_region)

logger=logging.getLogger(__name__)

EXIT_PARSE=1
EXIT_DEGENERATE=2
EXIT_MISMATCH=3

def _common(p: argparse.ArgumentParser):
    p.add_argument("--config","-c",help="Path to pytukey.toml config file")
    p.add_argument("--verbose","-v",action="store_true",help="Verbose output with detailed logging")
    p.add_argument("--seed",type=int,help="RNG seed (TUKEY_SEED overrides)")
    p.add_argument("--kj-path",choices=["reference","subdivision","both"],help="How per-plane hulls are computed in 3D")
    p.add_argument("--cache-dir",help="Cache oracle regions in this directory")
    p.add_argument("--no-cache",action="store_true",help="Disable the oracle region cache")

def _parser() -> argparse.ArgumentParser:
    parser=argparse.ArgumentParser(prog="pytukey",description="Exact Tukey depth and (colorful) center regions in 2D and 3D")
    sub=parser.add_subparsers(dest="cmd",required=True)

    d=sub.add_parser("depth",help="Exact depth of a query point")
    d.add_argument("input")
    d.add_argument("--at",required=True,help="Query point, comma separated rationals (e.g. 1/2,3)")
    d.add_argument("--colorful",action="store_true",help="Colorful depth")
    _common(d)

    for name in ("region","colorful-region"):
        r=sub.add_parser(name,help="Depth region at a level")
        r.add_argument("input")
        r.add_argument("--dim",type=int,choices=[2,3])
        r.add_argument("--level",type=int,help="Depth level (default: the Helly bound)")
        if name=="region": r.add_argument("--colorful",action="store_true")
        r.add_argument("--oracle",action="store_true",help="Use the brute-force oracle")
        r.add_argument("--both",action="store_true",help="Cross-check the algorithm against the oracle")
        r.add_argument("--output","-o",help="RegionFile to write (default: stdout)")
        r.add_argument("--sample-size",type=int,help="Lines sampled per subdivision step")
        r.add_argument("--leaf-size",type=int,help="Lines at which subdivision stops")
        r.add_argument("--dry-run",action="store_true",help="Show the plan without computing")
        _common(r)

    m=sub.add_parser("median-bound-check",help="Depth of the median region against the Helly bound")
    m.add_argument("input")
    m.add_argument("--colorful",action="store_true")
    _common(m)

    v=sub.add_parser("verify",help="Algorithm against oracle on every fixture in a directory")
    v.add_argument("directory")
    v.add_argument("--colorful",action="store_true")
    v.add_argument("--workers",type=int)
    _common(v)

    b=sub.add_parser("bench",help="Runtime sweep as CSV")
    b.add_argument("--dim",type=int,choices=[2,3])
    b.add_argument("--sizes",help="Comma separated sizes")
    b.add_argument("--colors",type=int,help="Colors per instance for colorful runs")
    b.add_argument("--repeats",type=int)
    b.add_argument("--colorful",action="store_true")
    b.add_argument("--output","-o",help="CSV file to write (default: stdout)")
    _common(b)

    g=sub.add_parser("render",help="SVG of a planar instance or OFF of a 3D region")
    g.add_argument("input")
    g.add_argument("--level",type=int)
    g.add_argument("--colorful",action="store_true")
    g.add_argument("--oracle",action="store_true")
    g.add_argument("--dual",action="store_true",help="Draw the color envelopes in the dual plane")
    g.add_argument("--output","-o",help="File to write (default: stdout)")
    _common(g)

    f=sub.add_parser("fixtures",help="Write random general-position instances")
    f.add_argument("directory")
    f.add_argument("--count",type=int,default=200)
    f.add_argument("--dim",type=int,choices=[2,3],default=2)
    f.add_argument("--colorful",action="store_true")
    _common(f)
    return parser

def _config(args):
    colorful=getattr(args,'colorful',False) or args.cmd=="colorful-region"
    sizes=getattr(args,'sizes',None)
    cli_overrides={
        'dim': getattr(args,'dim',None),
        'level': getattr(args,'level',None),
        'colorful': colorful or None,
        'use_oracle': getattr(args,'oracle',False) or None,
        'both': getattr(args,'both',False) or None,
        'dual': getattr(args,'dual',False) or None,
        'seed': args.seed,
        'workers': getattr(args,'workers',None),
        'cache_dir': args.cache_dir,
        'use_cache': False if args.no_cache else None,
        'kj_path': args.kj_path,
        'sample_size': getattr(args,'sample_size',None),
        'leaf_size': getattr(args,'leaf_size',None),
        'bench_sizes': [int(s) for s in sizes.split(',')] if sizes else None,
        'bench_colors': getattr(args,'colors',None),
        'bench_repeats': getattr(args,'repeats',None),
        'verbose': args.verbose or None,
        'dry_run': getattr(args,'dry_run',False) or None,
        'output': getattr(args,'output',None),
    }
    cli_overrides={k:v for k,v in cli_overrides.items() if v is not None}
    if args.config: return config_from_file(Path(args.config), cli_overrides)
    return build_config({}, cli_overrides)

def _emit(text: str, output):
    if output:
        Path(output).write_text(text)
        print(f"✓ wrote {output}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text+"\n")

def cmd_depth(args, cfg) -> int:
    pf=load_points(args.input)
    vals=[parse_rational(v.strip(), "--at") for v in args.at.split(',')]
    if len(vals)!=pf.dim: raise ParseError(f"query has {len(vals)} coordinates, points have {pf.dim}", "--at")
    x=as_point(vals)
    if cfg.colorful:
        if pf.colors is None: raise ParseError("colorful depth needs a color per point", args.input)
        print(f"colorful depth: {colorful_depth_oracle(x, pf.points, pf.colors)}")
        return 0
    depth=depth_oracle(x, pf.points)
    if pf.dim==2:
        dual=depth_2d(x, pf.points)
        if dual!=depth: raise InvariantViolation(f"dual depth {dual} != oracle depth {depth} at {x}")
        logger.debug("dual level count agrees: %d", dual)
    print(f"depth: {depth}")
    return 0

def cmd_region(args, cfg) -> int:
    if args.dim is None and not args.config:
        cfg.dim=load_points(args.input).dim
    result=RegionRunner(cfg, args.input).run()
    if result is None: return 0
    r=result.region
    size=len(getattr(r,'vertices',()))
    logger.info("level %d region: %s with %d vertices (%.3fs)", result.metadata["level"], r.kind, size, result.metadata["runtime"])
    if result.output is None: print(json.dumps(region_to_dict(r, result.metadata), indent=2))
    else: print(f"✓ wrote {result.output}")
    return 0

def cmd_median(args, cfg) -> int:
    pf=load_points(args.input)
    colorful=cfg.colorful
    if colorful and pf.colors is None: raise ParseError("colorful check needs a color per point", args.input)
    cfg.dim=pf.dim
    level,region=median_region(pf, colorful, cfg)
    count=level_bound(pf, colorful)
    bound=helly_level(count, pf.dim)
    what="colorful depth" if colorful else "depth"
    print(f"median {what}: {level} (bound ceil({count}/{pf.dim+1}) = {bound}), region: {region.kind}")
    if level<bound or isinstance(region, Empty):
        print(f"✗ median {what} {level} is below the bound {bound}")
        return EXIT_MISMATCH
    print("✓ bound holds")
    return 0

def cmd_verify(args, cfg) -> int:
    report=VerifySuite(cfg, args.directory).run()
    for name in report.skipped: logger.warning("skipped %s: not in general position", name)
    if not report.ok:
        name,level,diff=report.mismatches[0]
        print(f"✗ {len(report.mismatches)} mismatches; first: {name} level {level}: {diff}")
        return EXIT_MISMATCH
    print(f"✓ {report.instances} instances, {report.checks} levels match the oracle")
    return 0

def cmd_bench(args, cfg) -> int:
    report=bench(cfg)
    _emit(report.to_csv(), cfg.output)
    if report.slope is not None: print(f"log-log slope: {report.slope:.3f}")
    return 0

def cmd_render(args, cfg) -> int:
    pf=load_points(args.input)
    cfg.dim=pf.dim
    colorful=cfg.colorful and pf.colors is not None
    if cfg.dual:
        if pf.dim!=2: raise ParseError("dual rendering needs planar points", args.input)
        svg=render_dual_svg(color_envelopes(pf.point_set()), title=Path(args.input).stem)
        return _write_svg(svg, cfg.output)
    level=cfg.level if cfg.level is not None else helly_level(level_bound(pf, colorful), pf.dim)
    cfg.colorful=colorful
    region=oracle_region(pf, level, colorful) if cfg.use_oracle else algorithm_region(pf, level, cfg)
    if pf.dim==3:
        _emit(render_off(region), cfg.output)
        return 0
    svg=render_svg(pf.points, region, pf.colors if colorful else None, title=f"{Path(args.input).stem} level {level}")
    return _write_svg(svg, cfg.output)

def _write_svg(svg, output) -> int:
    if output:
        svgwrite(svg, output)
        print(f"✓ wrote {output}")
    else:
        print(ET.tostring(svg, encoding="unicode"))
    return 0

def cmd_fixtures(args, cfg) -> int:
    generate_fixtures(args.directory, args.count, cfg.dim, cfg.colorful, cfg.seed)
    return 0

COMMANDS={
    "depth": cmd_depth,
    "region": cmd_region,
    "colorful-region": cmd_region,
    "median-bound-check": cmd_median,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "render": cmd_render,
    "fixtures": cmd_fixtures,
}

def main(argv=None) -> int:
    args=_parser().parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format='%(levelname)s: %(message)s')
    else:
        logging.basicConfig(level=logging.INFO, format='%(message)s')

    try:
        cfg=_config(args)
        return COMMANDS[args.cmd](args, cfg)
    except DegenerateInput as e:
        print(f"error: {e}", file=sys.stderr)
        if e.report is not None: print(f"violation: {e.report}", file=sys.stderr)
        return EXIT_DEGENERATE
    except RegionMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        if e.detail: print(f"first difference: {e.detail}", file=sys.stderr)
        return EXIT_MISMATCH
    except InvariantViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ParseError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE

if __name__=="__main__":
    sys.exit(main())
