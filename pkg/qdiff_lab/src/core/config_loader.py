"""
Configuration loader for qdiff-lab.
Loads and validates config.json with fallback to default values.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from sympy import Rational

from core import console


class QDiffConfig:
    """
    Configuration container for qdiff-lab parameters.
    Loads from config.json and provides easy access to all parameters.
    """

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration from JSON file.

        Args:
            config_path: Path to config.json file. If None, looks in the project directory.
        """
        if config_path is None:
            # Default: config.json next to src/ (two levels up from src/core/)
            config_path = Path(__file__).parent.parent.parent / "config.json"
        else:
            config_path = Path(config_path)

        self.config_path = config_path
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from JSON file with fallback to defaults."""
        try:
            with open(self.config_path, 'r') as f:
                config = json.load(f)
            console.info(f"Loaded configuration from: {self.config_path}")
            return config
        except FileNotFoundError:
            console.warn(f"Config file not found at {self.config_path}, using default values")
            return self._get_default_config()
        except json.JSONDecodeError as e:
            console.warn(f"Invalid JSON in config file: {e}, using default values")
            return self._get_default_config()

    def _get_default_config(self) -> Dict[str, Any]:
        """Return default configuration if config.json is missing."""
        return {
            "scalar_field": {
                "field_root": {"value": 1}
            },
            "series": {
                "default_truncation": {"value": 20}
            },
            "horizons": {
                "estimator_horizon": {"value": 30},
                "nilpotence_horizon": {"value": 8}
            },
            "annihilator_search": {
                "max_order": {"value": 2},
                "max_degree": {"value": 6},
                "guard": {"value": 8},
                "specialization_point": {"value": "7/3"}
            },
            "gevrey": {
                "detection_horizon": {"value": 60},
                "window_start_fraction": {"value": "1/2"},
                "slope_threshold": {"value": "1/10"},
                "s1_numerators": {"value": [-2, -1, 0, 1, 2]},
                "s2_range": {"value": [-3, 3]}
            },
            "approx": {
                "degree_budget": {"value": 8},
                "tau": {"value": "1/2"}
            },
            "catalog": {
                "verify_prefix": {"value": 40},
                "verify_horizon": {"value": 30}
            },
            "cyclotomic": {
                "order_bound_floor": {"value": 30},
                "order_bound_factor": {"value": 8}
            },
            "output": {
                "output_dir": {"value": "output"},
                "schema": {"value": "qdiff-lab/1"}
            },
            "logging": {
                "verbose": {"value": False}
            }
        }

    def _get_value(self, *path: str, default=None) -> Any:
        """
        Navigate nested config and extract value field.

        Args:
            *path: Path through nested dictionaries
            default: Default value if path not found

        Returns:
            The value at the specified path, or default if not found
        """
        obj = self.config
        for key in path:
            if isinstance(obj, dict) and key in obj:
                obj = obj[key]
            else:
                return default

        # Extract 'value' field if it exists
        if isinstance(obj, dict) and 'value' in obj:
            return obj['value']
        return obj if obj is not None else default

    def _get_rational(self, *path: str, default: str) -> Rational:
        """Read an exact rational stored as a string such as "1/2"."""
        return Rational(str(self._get_value(*path, default=default)))

    # Scalar Field
    @property
    def field_root(self) -> int:
        """Radical index r with q = qt^r."""
        return int(self._get_value("scalar_field", "field_root", default=1))

    # Series
    @property
    def default_truncation(self) -> int:
        """Default number of series terms."""
        return int(self._get_value("series", "default_truncation", default=20))

    # Horizons
    @property
    def estimator_horizon(self) -> int:
        """Largest n for size and Galochkin partial sums."""
        return int(self._get_value("horizons", "estimator_horizon", default=30))

    @property
    def nilpotence_horizon(self) -> int:
        """Largest multiple of kappa scanned by the nilpotence report."""
        return int(self._get_value("horizons", "nilpotence_horizon", default=8))

    # Annihilator Search
    @property
    def max_order(self) -> int:
        """Largest operator order tried by the annihilator search."""
        return int(self._get_value("annihilator_search", "max_order", default=2))

    @property
    def max_degree(self) -> int:
        """Largest coefficient x-degree tried by the annihilator search."""
        return int(self._get_value("annihilator_search", "max_degree", default=6))

    @property
    def guard(self) -> int:
        """Number of extra equations in the annihilator search."""
        return int(self._get_value("annihilator_search", "guard", default=8))

    @property
    def specialization_point(self) -> Rational:
        """Rational value of qt used for rank certificates."""
        return self._get_rational("annihilator_search", "specialization_point", default="7/3")

    # Gevrey Detection
    @property
    def detection_horizon(self) -> int:
        """Number of coefficients used by q-Gevrey detection."""
        return int(self._get_value("gevrey", "detection_horizon", default=60))

    @property
    def window_start_fraction(self) -> Rational:
        """Start of the growth window as a fraction of the horizon."""
        return self._get_rational("gevrey", "window_start_fraction", default="1/2")

    @property
    def slope_threshold(self) -> Rational:
        """Largest window growth reported as bounded."""
        return self._get_rational("gevrey", "slope_threshold", default="1/10")

    @property
    def s1_numerators(self) -> List[int]:
        """Numerators k of the s1 = k/r grid."""
        return [int(k) for k in self._get_value("gevrey", "s1_numerators", default=[-2, -1, 0, 1, 2])]

    @property
    def s2_range(self) -> Tuple[int, int]:
        """Inclusive range of s2 candidates."""
        low, high = self._get_value("gevrey", "s2_range", default=[-3, 3])
        return int(low), int(high)

    # Hermite-Pade
    @property
    def degree_budget(self) -> int:
        """Degree N of the auxiliary polynomial."""
        return int(self._get_value("approx", "degree_budget", default=8))

    @property
    def tau(self) -> Rational:
        """Rational tau in (0, 1)."""
        return self._get_rational("approx", "tau", default="1/2")

    # Catalog
    @property
    def verify_prefix(self) -> int:
        """Prefix length on which catalog operators are checked."""
        return int(self._get_value("catalog", "verify_prefix", default=40))

    @property
    def verify_horizon(self) -> int:
        """Detection horizon used when verifying catalog orders."""
        return int(self._get_value("catalog", "verify_horizon", default=30))

    # Cyclotomic trial division
    @property
    def order_bound_floor(self) -> int:
        """Cyclotomic orders always tried."""
        return int(self._get_value("cyclotomic", "order_bound_floor", default=30))

    @property
    def order_bound_factor(self) -> int:
        """Cyclotomic orders tried per unit of degree."""
        return int(self._get_value("cyclotomic", "order_bound_factor", default=8))

    # Output
    @property
    def output_dir(self) -> str:
        """Directory for generated SVG files."""
        return self._get_value("output", "output_dir", default="output")

    @property
    def schema(self) -> str:
        """Schema identifier of JSON reports."""
        return self._get_value("output", "schema", default="qdiff-lab/1")

    @property
    def verbose(self) -> bool:
        """Whether progress lines are printed to stderr."""
        return bool(self._get_value("logging", "verbose", default=False))

    def print_summary(self):
        """Print a summary of loaded configuration (stderr)."""
        console.banner("qdiff-lab Configuration")
        console.info("\nScalar field:")
        console.info(f"  r (field root):       {self.field_root}")
        console.info(f"  Default truncation:   {self.default_truncation}")
        console.info("\nHorizons:")
        console.info(f"  Estimator horizon:    {self.estimator_horizon}")
        console.info(f"  Nilpotence horizon:   {self.nilpotence_horizon}")
        console.info("\nAnnihilator search:")
        console.info(f"  Max order / degree:   {self.max_order} / {self.max_degree}")
        console.info(f"  Guard equations:      {self.guard}")
        console.info(f"  Specialization qt =   {self.specialization_point}")
        console.info("\nGevrey detection:")
        console.info(f"  Horizon:              {self.detection_horizon}")
        console.info(f"  Window start:         {self.window_start_fraction}")
        console.info(f"  Slope threshold:      {self.slope_threshold}")
        console.info("\nHermite-Pade:")
        console.info(f"  N, tau:               {self.degree_budget}, {self.tau}")
        console.info("=" * 60 + "\n")


# Module-level function for convenience
def load_config(config_path: Optional[str] = None) -> QDiffConfig:
    """
    Load qdiff-lab configuration from JSON file.

    Args:
        config_path: Optional path to config.json. If None, uses default location.

    Returns:
        QDiffConfig object with all parameters loaded
    """
    return QDiffConfig(config_path)


_default_config = None


def get_config() -> QDiffConfig:
    """Get the default configuration instance (singleton pattern)."""
    global _default_config
    if _default_config is None:
        _default_config = load_config()
    return _default_config


def set_config(config: QDiffConfig) -> None:
    """Replace the default configuration instance (used by the CLI --config flag)."""
    global _default_config
    _default_config = config
