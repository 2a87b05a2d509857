"""
Pydantic validation error rendering.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List

from pydantic import ValidationError


def parse_validation_error(the_error: ValidationError) -> str:
    """
    Generates a human-readable, plain-text summary of a validation error, one line per failing field path.

    :param the_error: The raised error.
    """
    # group errors by the top-level field
    error_dict: Dict[str, List[str]] = defaultdict(list)
    errors = the_error.errors()

    for error in errors:
        loc = [str(key).replace("__root__", "root") for key in error["loc"]]
        cur_key = loc[0] if loc else the_error.model.__name__
        error_location = " -> ".join(loc) or "root"
        error_dict[cur_key].append(f"{error_location}: {error['msg']}")

    title = f"{len(errors)} validation error{'s' if len(errors) != 1 else ''} in {the_error.model.__name__}"
    lines = [title]
    for name in sorted(error_dict):
        lines.extend(f"  {loc}" for loc in error_dict[name])
    return "\n".join(lines)
