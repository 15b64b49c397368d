"""Command line surface and record files."""

from .main import build_parser, main
from .records import load_record, record_from_dict, record_to_dict, save_record

__all__ = [
    "build_parser",
    "load_record",
    "main",
    "record_from_dict",
    "record_to_dict",
    "save_record",
]
