"""Region runs, oracle verification over fixture directories, benchmarks and fixtures."""
import csv, io, logging, math, random, time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple
from .cache import RegionCache, region_key
from .center3d import SubdivisionStats, center_region_3d, colorful_center_region_3d, tukey_median_3d
from .colorful2d import colorful_center_region_2d, colorful_median_2d, hull_of_colorful_level
from .config import RunConfig
from .convex import Empty
from .dual import center_region_2d, color_envelopes, tukey_median_2d
from .errors import DegenerateInput, ParseError, RegionMismatch, TukeyError
from .exact import as_point, validate_general_position
from .formats import PointFile, first_difference, load_points, save_points, save_region
from .fs_utils import ensure_dir, iter_point_files
from .oracle import region_oracle

logger=logging.getLogger(__name__)

def helly_level(count: int, dim: int) -> int:
    return max(1, math.ceil(count/(dim+1)))

def level_bound(pf: PointFile, colorful: bool) -> int:
    return max(pf.colors) if colorful else len(pf.points)

def algorithm_region(pf: PointFile, level: int, config: RunConfig, stats: Optional[SubdivisionStats]=None):
    """Region from the dual-space algorithms for the configured dimension and coloring."""
    sub={"sample_size": config.sample_size, "leaf_size": config.leaf_size}
    if config.colorful:
        ps=pf.point_set()
        if pf.dim==2: return colorful_center_region_2d(ps, level)
        return colorful_center_region_3d(ps, level, config.kj_path, config.seed, stats=stats, **sub)
    if pf.dim==2: return center_region_2d(pf.points, level)
    return center_region_3d(pf.points, level, config.kj_path, config.seed, stats=stats, **sub)

def oracle_region(pf: PointFile, level: int, colorful: bool, cache: Optional[RegionCache]=None):
    key=region_key(pf.canonical_text(), level, pf.dim, colorful)
    if cache is not None:
        hit=cache.get(key)
        if hit is not None: return hit
    region=region_oracle(pf.points, level, pf.colors if colorful else None)
    if cache is not None: cache.put(key, region)
    return region

def _make_cache(config: RunConfig) -> Optional[RegionCache]:
    if not config.use_cache or not config.cache_dir: return None
    return RegionCache(Path(config.cache_dir), config.max_cache_entries)

@dataclass
class RunResult:
    region: Any
    metadata: Dict[str, Any]
    output: Optional[Path]=None

class RegionRunner:
    def __init__(self, config: RunConfig, input_path):
        self.config=config
        self.input_path=Path(input_path)
        self.cache=_make_cache(config)

    def _show_plan(self):
        print(f"Region Plan for {self.input_path}:")
        print(f"  Dimension: {self.config.dim}")
        print(f"  Level: {self.config.level if self.config.level is not None else '<helly bound>'}")
        print(f"  Colorful: {self.config.colorful}")
        mode='oracle' if self.config.use_oracle else ('algorithm + oracle cross-check' if self.config.both else 'algorithm')
        print(f"  Mode: {mode}")
        if self.config.dim==3: print(f"  K_j path: {self.config.kj_path}")
        print(f"  Output: {self.config.output or '<stdout>'}")

    def load(self) -> PointFile:
        pf=load_points(self.input_path)
        if pf.dim!=self.config.dim:
            raise ParseError(f"file holds {pf.dim}D points but --dim is {self.config.dim}", str(self.input_path))
        if self.config.colorful and pf.colors is None:
            raise ParseError("colorful run needs a color per point", str(self.input_path))
        return pf

    def run(self) -> Optional[RunResult]:
        if self.config.dry_run:
            logger.info("DRY RUN: Would compute the depth region of %s", self.input_path)
            self._show_plan()
            return None
        pf=self.load()
        report=validate_general_position(pf.points, pf.colors if self.config.colorful else None)
        if report is not None:
            raise DegenerateInput(f"input is not in general position: {report}", report)
        bound=level_bound(pf, self.config.colorful)
        level=self.config.level if self.config.level is not None else helly_level(bound, pf.dim)
        if not 1<=level<=bound: raise ValueError(f"Invalid level {level}: expected 1 <= level <= {bound}")
        stats=SubdivisionStats() if pf.dim==3 else None
        start=time.perf_counter()
        if self.config.use_oracle:
            region=oracle_region(pf, level, self.config.colorful, self.cache); algo='oracle'
        else:
            region=algorithm_region(pf, level, self.config, stats); algo='algorithm'
        elapsed=time.perf_counter()-start
        if self.config.both and not self.config.use_oracle:
            ref=oracle_region(pf, level, self.config.colorful, self.cache)
            diff=first_difference(region, ref)
            if diff is not None:
                raise RegionMismatch(f"algorithm and oracle disagree at level {level}: {diff}", diff)
            logger.info("✓ algorithm matches oracle at level %d", level)
        meta={'n': len(pf.points), 'k': max(pf.colors) if pf.colors else 1, 'level': level, 'dim': pf.dim,
              'colorful': self.config.colorful, 'algorithm': algo, 'runtime': round(elapsed, 6)}
        if stats is not None: meta['subdivision']=stats.to_dict()
        out=save_region(region, self.config.output, meta) if self.config.output else None
        return RunResult(region, meta, out)

@dataclass
class VerifyReport:
    instances: int=0
    checks: int=0
    skipped: List[str]=field(default_factory=list)
    mismatches: List[Tuple[str, int, str]]=field(default_factory=list)

    @property
    def ok(self) -> bool: return not self.mismatches

class VerifySuite:
    """Algorithm against oracle at every level of every fixture under a directory."""
    def __init__(self, config: RunConfig, directory):
        self.config=config
        self.directory=Path(directory)
        self.cache=_make_cache(config)

    def _check_file(self, path: Path) -> Tuple[str, int, List[Tuple[str, int, str]], bool]:
        pf=load_points(path)
        colorful=self.config.colorful and pf.colors is not None
        if validate_general_position(pf.points, pf.colors if colorful else None) is not None:
            return str(path), 0, [], False
        cfg=RunConfig(**{**self.config.__dict__, 'colorful': colorful, 'dim': pf.dim})
        bad=[]; checks=0
        for level in range(1, level_bound(pf, colorful)+1):
            try:
                got=algorithm_region(pf, level, cfg)
            except TukeyError as exc:
                logger.warning("%s level %d: %s", path, level, exc)
                checks+=1; bad.append((str(path), level, f"{type(exc).__name__}: {exc}"))
                continue
            ref=oracle_region(pf, level, colorful, self.cache)
            checks+=1
            diff=first_difference(got, ref)
            if diff is not None: bad.append((str(path), level, diff))
            if isinstance(ref, Empty) and isinstance(got, Empty): break
        return str(path), checks, bad, True

    def run(self) -> VerifyReport:
        files=list(iter_point_files(self.directory))
        if not files: raise FileNotFoundError(f"No point files under {self.directory}")
        report=VerifyReport()
        with ThreadPoolExecutor(max_workers=max(1, self.config.workers)) as pool:
            for name,checks,bad,used in pool.map(self._check_file, files):
                if not used:
                    report.skipped.append(name); continue
                report.instances+=1; report.checks+=checks; report.mismatches+=bad
                logger.debug("%s: %d levels checked, %d mismatches", name, checks, len(bad))
        return report

def random_instance(rng: random.Random, n: int, dim: int, k: Optional[int]=None, box: Optional[int]=None) -> PointFile:
    """Integer points in general position by rejection, colored 1..k when k is given."""
    box=box or 10*n
    while True:
        pts=[as_point([rng.randint(-box, box) for _ in range(dim)]) for _ in range(n)]
        colors=None
        if k is not None:
            colors=list(range(1, k+1))+[rng.randint(1, k) for _ in range(n-k)]
            rng.shuffle(colors)
        if validate_general_position(pts, colors) is None: return PointFile(dim, pts, colors)

def generate_fixtures(directory, count: int, dim: int, colorful: bool, seed: int,
                      sizes: Optional[Tuple[int, int]]=None, colors: Optional[Tuple[int, int]]=None) -> List[Path]:
    out=ensure_dir(directory)
    rng=random.Random(seed)
    lo,hi=sizes or ((4, 25) if dim==2 else (4, 12))
    klo,khi=colors or ((1, 6) if dim==2 else (1, 4))
    paths=[]
    for i in range(count):
        n=rng.randint(lo, hi)
        k=rng.randint(klo, min(khi, n)) if colorful else None
        pf=random_instance(rng, n, dim, k)
        paths.append(save_points(pf, out/f"instance_{i:04d}.json"))
    logger.info("✓ wrote %d fixtures to %s", len(paths), out)
    return paths

@dataclass
class BenchReport:
    rows: List[Tuple[int, int, str, float]]
    slope: Optional[float]

    def to_csv(self) -> str:
        buf=io.StringIO()
        w=csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "path", "seconds"])
        for r in self.rows: w.writerow([r[0], r[1], r[2], f"{r[3]:.6f}"])
        return buf.getvalue()

def loglog_slope(rows: List[Tuple[int, float]]) -> Optional[float]:
    pts=[(math.log(n), math.log(t)) for n,t in rows if n>0 and t>0]
    if len(pts)<2: return None
    mx=sum(x for x,_ in pts)/len(pts); my=sum(y for _,y in pts)/len(pts)
    den=sum((x-mx)**2 for x,_ in pts)
    return sum((x-mx)*(y-my) for x,y in pts)/den if den else None

def bench(config: RunConfig) -> BenchReport:
    """Time the configured pipeline over the size sweep; best of the repeats per size."""
    rng=random.Random(config.seed)
    rows=[]
    for n in config.bench_sizes:
        k=min(config.bench_colors, n) if config.colorful else None
        pf=random_instance(rng, n, config.dim, k, box=max(10*n, 1000))
        best=None
        for _ in range(max(1, config.bench_repeats)):
            start=time.perf_counter()
            if config.dim==2 and config.colorful:
                kk=max(pf.colors)
                hull_of_colorful_level(color_envelopes(pf.point_set()), helly_level(kk, 2)-1)
                path='colorful2d'
            else:
                algorithm_region(pf, helly_level(level_bound(pf, config.colorful), config.dim), config)
                path=config.kj_path if config.dim==3 else 'dual2d'
            t=time.perf_counter()-start
            best=t if best is None else min(best, t)
        rows.append((n, k or 1, path, best))
        logger.info("n=%d k=%d %s: %.4fs", n, k or 1, path, best)
    return BenchReport(rows, loglog_slope([(r[0], r[3]) for r in rows]))

def median_region(pf: PointFile, colorful: bool, config: RunConfig) -> Tuple[int, Any]:
    """Largest depth (colorful depth) with a nonempty region, and that region."""
    if pf.dim==2:
        return colorful_median_2d(pf.point_set()) if colorful else tukey_median_2d(pf.points)
    if not colorful: return tukey_median_3d(pf.points, config.kj_path, config.seed)
    ps=pf.point_set()
    level=helly_level(ps.k, 3)
    best=colorful_center_region_3d(ps, level, config.kj_path, config.seed)
    while level<ps.k and not isinstance(best, Empty):
        nxt=colorful_center_region_3d(ps, level+1, config.kj_path, config.seed)
        if isinstance(nxt, Empty): break
        level,best=level+1,nxt
    return level, best
