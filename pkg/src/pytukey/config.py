from dataclasses import dataclass, field
from typing import List, Optional

@dataclass
class RunConfig:
    dim: int = 2
    level: Optional[int] = None
    colorful: bool = False
    use_oracle: bool = False
    both: bool = False
    dual: bool = False
    seed: int = 0
    workers: int = 4
    cache_dir: Optional[str] = None
    use_cache: bool = True
    max_cache_entries: int = 2000
    kj_path: str = "both"
    sample_size: int = 6
    leaf_size: int = 8
    bench_sizes: List[int] = field(default_factory=lambda: [64, 128, 256, 512])
    bench_colors: int = 16
    bench_repeats: int = 1
    verbose: bool = False
    dry_run: bool = False
    output: Optional[str] = None
