"""Plain key=value config files with CLI-flag override.

Lines look like `elo_min = 1500`; `#` starts a comment.  Values are kept as
strings and coerced by the argparse types they feed, so a config key is
exactly a long flag name with dashes replaced by underscores.  Flags win.
"""

from __future__ import annotations

from pathlib import Path


class ConfigError(ValueError):
    pass


def load_config(path: str | Path) -> dict[str, str]:
    out: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if not key.isidentifier():
            raise ConfigError(f"{path}:{lineno}: bad key {key!r}")
        out[key] = value.strip().strip('"')
    return out
