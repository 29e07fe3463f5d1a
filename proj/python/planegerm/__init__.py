from ._planegerm import (
    GermError,
    analyze_json,
    deform_check_json,
    equivalent,
    milnor,
    tree_dot,
    tree_encoding,
)

__all__ = [
    "GermError",
    "analyze_json",
    "deform_check_json",
    "equivalent",
    "milnor",
    "tree_dot",
    "tree_encoding",
]
