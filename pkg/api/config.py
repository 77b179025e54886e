"""
coxnorm/api/config.py
Configuration loading and logging setup for the command line.

Precedence: built-in defaults < settings file < environment < flags.
"""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Dict, Optional

# Optional YAML support
try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False

logger = logging.getLogger(__name__)

ORDER_CAP_ENV = 'COXNORM_ORDER_CAP'

DEFAULT_CONFIG = {
    'defaults': {
        'seed': 0,
        'trials': 100,
        'jobs': 1,
    },
    'limits': {
        'order_cap': 10 ** 6,
        'work_cap': 10 ** 8,
    },
    'tolerances': {
        'root_match': 1e-9,
        'inequality': 1e-12,
    },
    'logging': {
        'level': 'WARNING',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    },
    'version': '0.1.0',
}

DEFAULT_SETTINGS_PATH = Path(__file__).parent.parent / 'config' / 'settings.yaml'


def _merge(base: Dict, override: Dict) -> Dict:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read(path: Path) -> Optional[Dict]:
    if path.suffix in ('.yaml', '.yml'):
        if not YAML_AVAILABLE:
            logger.warning("PyYAML not installed; ignoring %s", path)
            return None
        with open(path, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f) or {}
    if path.suffix == '.json':
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    raise ValueError(f"Unsupported configuration format: {path}")


def load_config(config_path: Optional[str] = None, environ: Optional[Dict[str, str]] = None) -> Dict:
    """Load configuration from a YAML or JSON file over the defaults, then apply the environment."""
    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise ValueError(f"Configuration file not found: {config_path}")
        loaded = _read(path)
    elif DEFAULT_SETTINGS_PATH.exists():
        loaded = _read(DEFAULT_SETTINGS_PATH)
    else:
        loaded = None
    config = _merge(DEFAULT_CONFIG, loaded or {})
    return apply_environment(config, os.environ if environ is None else environ)


def apply_environment(config: Dict, environ: Dict[str, str]) -> Dict:
    raw = environ.get(ORDER_CAP_ENV)
    if raw:
        try:
            config['limits']['order_cap'] = int(raw)
        except ValueError as exc:
            raise ValueError(f"{ORDER_CAP_ENV} must be an integer, got {raw!r}") from exc
    return config


def setup_logging(config: Dict, level: Optional[str] = None):
    """Configure the root logger from the logging section."""
    section = config.get('logging', DEFAULT_CONFIG['logging'])
    logging.basicConfig(
        level=getattr(logging, str(level or section.get('level', 'WARNING')).upper(), logging.WARNING),
        format=section.get('format', DEFAULT_CONFIG['logging']['format']),
        force=True,
    )
