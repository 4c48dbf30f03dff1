"""Input validation helpers, in the spirit of ``sklearn.utils.validation``."""

import numbers

import numpy as np

from .exceptions import DimensionMismatch, UnknownVariant

VARIANTS = ("abc", "meabc", "ioabc")


def check_position(x, dimension=None):
    """Return ``x`` as a 1-d float array, checking its length against ``dimension``."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if dimension is not None and arr.shape[0] != dimension:
        raise DimensionMismatch(
            f"expected a position of length {dimension}, got {arr.shape[0]}"
        )
    return arr


def check_bounds(lower, upper, granularity=None):
    lower = np.atleast_1d(np.asarray(lower, dtype=float))
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
        raise DimensionMismatch(
            f"lower/upper must be non-empty vectors of equal length, got {lower.shape} and {upper.shape}"
        )
    if not np.all(np.isfinite(lower)) or not np.all(np.isfinite(upper)):
        raise ValueError("bounds must be finite")
    if not np.all(lower < upper):
        raise ValueError("every lower bound must be strictly below its upper bound")
    if granularity is None:
        granularity = np.zeros_like(lower)
    else:
        granularity = np.broadcast_to(
            np.asarray(granularity, dtype=float), lower.shape
        ).copy()
        if np.any(granularity < 0) or not np.all(np.isfinite(granularity)):
            raise ValueError("granularity must be finite and non-negative")
    return lower, upper, granularity


def check_variant(name):
    """Normalise a variant name (case-insensitive) or raise :class:`UnknownVariant`."""
    key = str(name).strip().lower()
    if key not in VARIANTS:
        raise UnknownVariant(f"unknown variant {name!r}; expected one of {', '.join(VARIANTS)}")
    return key


def check_scalar(value, name, target_type, *, min_val=None, max_val=None, include_min=True):
    if not isinstance(value, target_type) or isinstance(value, bool):
        raise TypeError(f"{name} must be {target_type}, got {type(value).__name__}")
    if min_val is not None:
        if value < min_val or (not include_min and value == min_val):
            op = ">=" if include_min else ">"
            raise ValueError(f"{name} must be {op} {min_val}, got {value}")
    if max_val is not None and value > max_val:
        raise ValueError(f"{name} must be <= {max_val}, got {value}")
    return value


def check_seed(seed):
    """Coerce ``seed`` to an unsigned 64-bit integer; ``None`` draws fresh OS entropy."""
    if seed is None:
        return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    if not isinstance(seed, numbers.Integral) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    return int(seed) % (1 << 64)
