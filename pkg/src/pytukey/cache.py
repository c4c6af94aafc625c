"""Content-addressed cache of oracle regions."""
import hashlib, json, logging, shutil, threading, time
from pathlib import Path
from typing import Optional, Dict, List
from dataclasses import dataclass, asdict
from .formats import region_from_dict, region_to_dict

logger=logging.getLogger(__name__)

@dataclass
class CacheEntry:
    digest: str
    size: int
    created: float
    last_used: float
    source: str

    def touch(self):
        """Update last used timestamp."""
        self.last_used=time.time()

def region_key(point_text: str, level: int, dim: int, colorful: bool) -> str:
    h=hashlib.sha256()
    h.update(point_text.encode())
    h.update(f"|level={level}|dim={dim}|colorful={int(bool(colorful))}".encode())
    return f"sha256:{h.hexdigest()}"

class RegionCache:
    def __init__(self, cache_dir: Optional[Path]=None, max_entries: int=2000):
        if cache_dir is None:
            self.enabled=False
            self.cache_dir=None
            self.regions_dir=None
            self.index_file=None
            self.max_entries=0
            self.index={}
            return

        self.enabled=True
        self._lock=threading.Lock()
        self.cache_dir=cache_dir if isinstance(cache_dir, Path) else Path(cache_dir)
        self.regions_dir=self.cache_dir/'regions'
        self.index_file=self.cache_dir/'index.json'
        self.max_entries=max_entries
        self._ensure_structure()
        self.index=self._load_index()

    def _ensure_structure(self):
        self.regions_dir.mkdir(parents=True, exist_ok=True)

    def _load_index(self) -> Dict[str, CacheEntry]:
        if not self.index_file.exists():
            return {}
        try:
            data=json.loads(self.index_file.read_text())
            return {k: CacheEntry(**v) for k, v in data.items()}
        except (ValueError, TypeError) as e:
            logger.warning("ignoring unreadable cache index %s: %s", self.index_file, e)
            return {}

    def _save_index(self):
        data={k: asdict(v) for k, v in self.index.items()}
        self.index_file.write_text(json.dumps(data, indent=2))

    def _blob(self, key: str) -> Path:
        return self.regions_dir/f"{key.split(':',1)[1]}.json"

    def get(self, key: str):
        """Cached region for key, or None."""
        if not self.enabled:
            return None
        with self._lock:
            return self._get(key)

    def _get(self, key: str):
        if key not in self.index:
            return None
        blob=self._blob(key)
        if not blob.exists():
            del self.index[key]
            self._save_index()
            return None
        self.index[key].touch()
        self._save_index()
        logger.debug("cache hit %s", key[:19])
        return region_from_dict(json.loads(blob.read_text()), str(blob))

    def put(self, key: str, region, source: str="") -> Optional[Path]:
        if not self.enabled:
            return None
        with self._lock:
            return self._put(key, region, source)

    def _put(self, key: str, region, source: str) -> Path:
        blob=self._blob(key)
        blob.write_text(json.dumps(region_to_dict(region)))
        now=time.time()
        self.index[key]=CacheEntry(digest=key, size=blob.stat().st_size, created=now, last_used=now, source=source)
        self._save_index()
        self._evict_if_needed()
        return blob

    def _evict_if_needed(self):
        """Drop least recently used entries beyond the entry limit."""
        if len(self.index)<=self.max_entries:
            return
        entries=sorted(self.index.items(), key=lambda x: x[1].last_used)
        for key, _ in entries[:len(self.index)-self.max_entries]:
            blob=self._blob(key)
            if blob.exists():
                blob.unlink()
            del self.index[key]
        self._save_index()

    def clear(self):
        if self.regions_dir.exists():
            shutil.rmtree(self.regions_dir)
        if self.index_file.exists():
            self.index_file.unlink()
        self._ensure_structure()
        self.index={}

    def get_stats(self) -> Dict:
        total_size=sum(e.size for e in self.index.values())
        return {
            'entries': len(self.index),
            'total_size_kb': total_size/1024,
            'max_entries': self.max_entries,
            'usage_percent': (len(self.index)/self.max_entries*100) if self.max_entries>0 else 0
        }

    def keys(self) -> List[str]:
        return sorted(self.index)
