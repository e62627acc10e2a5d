"""Python interface to the polysim garden simulator.

The compiled core is preferred from the installed package; a bare module on
sys.path (the in-tree CMake build) is the fallback.
"""

try:
    from ._polysim import (
        ConfigError,
        DomainError,
        compare,
        config_echo,
        diversity_index,
        duration_to_volume_ml,
        max_water_bound_ml,
        quantize,
        run_file,
        run_text,
        stagger,
    )
except ImportError:
    from _polysim import (
        ConfigError,
        DomainError,
        compare,
        config_echo,
        diversity_index,
        duration_to_volume_ml,
        max_water_bound_ml,
        quantize,
        run_file,
        run_text,
        stagger,
    )

__all__ = [
    "ConfigError",
    "DomainError",
    "compare",
    "config_echo",
    "diversity_index",
    "duration_to_volume_ml",
    "max_water_bound_ml",
    "quantize",
    "run_file",
    "run_text",
    "stagger",
]

__version__ = "0.1.0"
