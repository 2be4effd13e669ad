# config.py
# Run settings: defaults < key=value file < PG_CAP < command-line flags

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping

from groups import DEFAULT_CACHE_BYTES, DEFAULT_CAP

log = logging.getLogger(__name__)

DEFAULT_CONFIG = Path("pg.conf")


@dataclass(frozen=True)
class Settings:
    cap: int = DEFAULT_CAP
    threads: int = 1
    cache_bytes: int = DEFAULT_CACHE_BYTES

    def __post_init__(self) -> None:
        if self.cap < 1:
            raise ValueError("cap must be positive")
        if self.threads < 1:
            raise ValueError("threads must be positive")
        if self.cache_bytes < 0:
            raise ValueError("cache_bytes must be nonnegative")


_KEYS = {f.name for f in fields(Settings)}


def _int(key: str, text: str) -> int:
    try:
        return int(text.strip().replace("_", ""))
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {text!r}") from None


def read_config(path: Path) -> dict[str, int]:
    values: dict[str, int] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        if key not in _KEYS:
            raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
        values[key] = _int(key, value)
    return values


def load_settings(
    path: Path | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, int | None] | None = None,
) -> Settings:
    env = os.environ if env is None else env
    settings = Settings()
    source = path if path is not None else DEFAULT_CONFIG
    if path is not None or source.exists():
        settings = replace(settings, **read_config(source))
        log.info("config file=%s", source)
    if env.get("PG_CAP"):
        settings = replace(settings, cap=_int("PG_CAP", env["PG_CAP"]))
    given = {k: v for k, v in (overrides or {}).items() if v is not None}
    settings = replace(settings, **given)
    log.debug("settings cap=%d threads=%d cache_bytes=%d", settings.cap, settings.threads, settings.cache_bytes)
    return settings
