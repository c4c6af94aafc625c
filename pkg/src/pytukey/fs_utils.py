from pathlib import Path

def ensure_dir(path):
    p=Path(path); p.mkdir(parents=True, exist_ok=True); return p

def iter_point_files(base):
    """Point files (JSON or CSV) directly under base, sorted by name."""
    base=Path(base)
    if base.is_file():
        yield base
        return
    for child in sorted(base.iterdir()):
        if child.is_file() and child.suffix.lower() in ('.json', '.csv'):
            yield child
