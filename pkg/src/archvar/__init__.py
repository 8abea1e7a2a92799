"""Parse, check, flatten and enumerate hierarchical variable component models."""

from .checks import check, check_model_set
from .diagnostics import Diagnostic, Location
from .export import from_json, to_dot, to_json
from .model import ModelSet, QualifiedName, resolve
from .parser import load_paths, load_texts, parse_text
from .resolution import FlatArchitecture, apply_variant, flatten, merge_configs, substitute_parameters
from .symbols import build_symbol_table
from .varspace import SelectionSet, check_constraints, enumerate_configs, is_complete

__all__ = [
    "Diagnostic", "FlatArchitecture", "Location", "ModelSet", "QualifiedName", "SelectionSet",
    "apply_variant", "build_symbol_table", "check", "check_constraints", "check_model_set",
    "enumerate_configs", "flatten", "from_json", "is_complete", "load_paths", "load_texts",
    "merge_configs", "parse_text", "resolve", "substitute_parameters", "to_dot", "to_json",
]
