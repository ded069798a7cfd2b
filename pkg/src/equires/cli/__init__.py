"""Batch front end and the JSON space format."""

from .main import MAX_PARAM, build_parser, format_records, main, run
from .serialize import FORMAT, dump_space, load_space, parse_space, space_from_dict, space_to_dict

__all__ = [
    "MAX_PARAM",
    "build_parser",
    "format_records",
    "main",
    "run",
    "FORMAT",
    "dump_space",
    "load_space",
    "parse_space",
    "space_from_dict",
    "space_to_dict",
]
