"""Utilities Package.

Helpers used across the toolkit, organized by functionality.

Utility Modules:
- logging_config: Logging setup, run context and diagnostics
- error_handlers: Exception hierarchy and error formatting
- decorators: Command-line error handling and input validation
- service_helpers: Argument validation and atomic file writes

Usage:
    from fingerreq.utils import derive_seed
    from fingerreq.utils.error_handlers import ConfigError
"""

import json
from typing import Any, Optional

import numpy as np

from fingerreq.utils.logging_config import get_logger

logger = get_logger(__name__)


def derive_seed(seed: int, counter: int) -> int:
    """Derive an independent child seed from a run seed and a counter.

    The derivation is counter based, so the seed of task ``i`` does not
    depend on how many other tasks exist or in which order they run.

    Args:
        seed: Run-level seed
        counter: Task index (or any stable integer key)

    Returns:
        32-bit child seed
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(counter),))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Create a numpy Generator for a seed.

    Args:
        seed: Integer seed (None draws OS entropy)

    Returns:
        numpy random Generator
    """
    return np.random.default_rng(seed)


def canonical_json(data: Any) -> str:
    """Serialize data to JSON with sorted keys and a trailing newline.

    Args:
        data: JSON-serializable data

    Returns:
        Deterministic JSON text
    """
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


__all__ = ["derive_seed", "make_rng", "canonical_json"]
