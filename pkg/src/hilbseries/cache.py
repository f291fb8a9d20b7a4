"""Content-addressed disk cache for CLI runs.

A run is keyed by the sha256 of its canonical JSON config (plus a cache
format version); the stored value is the full JSON-able report, so a
cache hit re-emits byte-identical output.  There is no partial reuse:
either the exact run is cached or it is recomputed.
"""

import hashlib
import json
import os
import tempfile

CACHE_VERSION = 1
ENV_VAR = "HILBSERIES_CACHE_DIR"


def default_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "hilbseries")


class DiskCache:
    def __init__(self, directory=None):
        self.directory = directory if directory is not None else default_dir()

    def key(self, config):
        payload = json.dumps(
            {"version": CACHE_VERSION, "config": config},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def _path(self, key):
        return os.path.join(self.directory, key + ".json")

    def get(self, config):
        try:
            with open(self._path(self.key(config)), "r", encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def put(self, config, report):
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(self.key(config))
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(report, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return report
