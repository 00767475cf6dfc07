"""
Configuration handling: plain dictionaries with JSON file overrides
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

logger = logging.getLogger(__name__)


def default_config() -> Dict[str, Any]:
    """Get default configuration"""
    return {
        'lefschetz_cap': 60,  # Largest iterate printed by default
        'lefschetz_periods': 2,  # Default range is periods * lcm(m_i)
        'floer_mmax': None,  # None = lcm of the m_i
        'family_workers': 1,  # >1 evaluates family samples in a process pool
        'max_standard_basis_pairs': 20000,
        'cz_samples': 256,  # Minimum samples per segment when scanning det(A - I)
        'cz_root_tol': 1e-10,
        'cz_symplectic_tol': 1e-9,
        'cz_degenerate_tol': 1e-8,
        'cz_kernel_tol': 1e-6,
        'json_indent': 2,
    }


def load_config(path: Optional[Union[str, Path]] = None,
                overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Build a configuration dictionary

    Args:
        path: Optional JSON file whose keys override the defaults
        overrides: Optional dictionary applied last (e.g. CLI flags)

    Returns:
        Merged configuration dictionary
    """
    config = default_config()
    if path:
        with open(path, 'r', encoding='utf-8') as f:
            file_config = json.load(f)
        if not isinstance(file_config, dict):
            raise ValueError(f"Configuration file {path} must contain a JSON object")
        for key in file_config:
            if key not in config:
                logger.warning("Unknown configuration key %r in %s", key, path)
        config.update(file_config)
    if overrides:
        config.update({k: v for k, v in overrides.items() if v is not None})
    return config
