"""
Console output helpers.

Progress lines, banners and warnings go to stderr; stdout is reserved for
machine-readable reports.
"""

import sys

_verbose = False


def set_verbose(enabled: bool) -> None:
    """Enable or disable informational output."""
    global _verbose
    _verbose = bool(enabled)


def is_verbose() -> bool:
    """Whether informational output is enabled."""
    return _verbose


def info(message: str) -> None:
    """Print an informational line when verbose."""
    if _verbose:
        print(message, file=sys.stderr)


def warn(message: str) -> None:
    """Print a warning line unconditionally."""
    print(f"Warning: {message}", file=sys.stderr)


def banner(title: str) -> None:
    """Print a section banner when verbose."""
    if _verbose:
        print("\n" + "=" * 60, file=sys.stderr)
        print(title, file=sys.stderr)
        print("=" * 60, file=sys.stderr)
