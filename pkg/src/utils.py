"""Configuration loading and logging setup shared by the command line and worker processes."""
import logging
import os
import re
from pathlib import Path

import yaml

REPO_ROOT = Path(__file__).resolve().parent.parent
_ENV_REFERENCE = re.compile(r"\$\{([^:}]+):?([^}]*)\}")


def ensure_dirs(*paths):
    for p in paths:
        Path(p).mkdir(parents=True, exist_ok=True)


def substitute_env_vars(value):
    """Expand ``${NAME:default}`` references in a string config value; other values pass through."""
    if not isinstance(value, str):
        return value
    return _ENV_REFERENCE.sub(lambda m: os.getenv(m.group(1), m.group(2)), value)


def _expand(node):
    if isinstance(node, dict):
        return {key: _expand(value) for key, value in node.items()}
    if isinstance(node, list):
        return [_expand(item) for item in node]
    return substitute_env_vars(node)


def load_config(path="config.yaml"):
    """Read ``path`` (falling back to the repository root) with environment references expanded."""
    if not os.path.exists(path):
        path = REPO_ROOT / path
    with open(path, "r") as f:
        return _expand(yaml.safe_load(f) or {})


def setup_logging(cfg, level=None):
    """Configure root logging once from the ``logging`` section of the config."""
    log_cfg = cfg.get("logging", {})
    level_name = (level or log_cfg.get("level") or "INFO").upper()
    handlers = [logging.StreamHandler()]
    log_file = log_cfg.get("file")
    if log_file:
        ensure_dirs(os.path.dirname(os.path.abspath(log_file)))
        handlers.insert(0, logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format=log_cfg.get("format", '%(asctime)s - %(name)s - %(levelname)s - %(message)s'),
        handlers=handlers,
        force=True,
    )
