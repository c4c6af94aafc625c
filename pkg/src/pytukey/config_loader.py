"""Configuration file loading and validation."""
import os, tomllib
from dataclasses import fields
from pathlib import Path
from typing import Dict, Any, Optional
from .config import RunConfig

SEED_ENV="TUKEY_SEED"

def load_config_file(path: Path) -> Dict[str, Any]:
    """Load the [run] table of a pytukey.toml file."""
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    with open(path, 'rb') as f:
        data=tomllib.load(f)
    return data.get('run', {})

def merge_configs(file_config: Dict[str, Any], cli_args: Dict[str, Any]) -> Dict[str, Any]:
    """Merge file config with CLI args (CLI takes precedence)."""
    merged=file_config.copy()
    for key, value in cli_args.items():
        if value is not None:
            merged[key]=value
    return merged

def env_seed(default: int) -> int:
    raw=os.getenv(SEED_ENV)
    if raw is None or raw.strip()=="": return default
    try: return int(raw)
    except ValueError: raise ValueError(f"Invalid {SEED_ENV} value: {raw!r}")

def build_config(file_cfg: Dict[str, Any], cli_overrides: Optional[Dict]=None) -> RunConfig:
    """RunConfig from file values and CLI overrides; TUKEY_SEED wins over both for the seed."""
    cfg=merge_configs(file_cfg, cli_overrides or {})
    cfg={k.replace('-', '_'): v for k, v in cfg.items()}
    known={f.name for f in fields(RunConfig)}
    unknown=sorted(set(cfg)-known)
    if unknown: raise ValueError(f"Invalid config keys: {', '.join(unknown)}")
    rc=RunConfig(**cfg)
    rc.seed=env_seed(rc.seed)
    if rc.dim not in (2, 3): raise ValueError(f"Invalid dim {rc.dim}: expected 2 or 3")
    if rc.kj_path not in ("reference", "subdivision", "both"):
        raise ValueError(f"Invalid kj_path '{rc.kj_path}': expected reference, subdivision or both")
    return rc

def config_from_file(path: Path, cli_overrides: Optional[Dict]=None) -> RunConfig:
    """Create RunConfig from file with optional CLI overrides."""
    return build_config(load_config_file(path), cli_overrides)
