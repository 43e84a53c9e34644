"""Configuration file parsing with line-numbered, aggregated diagnostics."""

import difflib
import json
import logging
import re
import tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ValidationError

from ..exceptions import ConfigurationError
from .presets import PRESETS, merge_tables, preset_table
from .schema import RunConfig

logger = logging.getLogger("elastodg")

_HEADER_RE = re.compile(r"^\s*(\[\[?)\s*([A-Za-z0-9_.\-]+)\s*\]\]?")
_KEY_RE = re.compile(r"^\s*([A-Za-z0-9_\-\"']+(?:\s*\.\s*[A-Za-z0-9_\-\"']+)*)\s*=")
_TOML_LINE_RE = re.compile(r"line (\d+)")

Issue = Tuple[Optional[int], str]


def key_lines(text: str) -> Dict[str, int]:
    """Map dotted keys ("mesh.nx", "sources.0.location") to their source line."""
    lines: Dict[str, int] = {}
    table: List[str] = []
    array_counts: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        header = _HEADER_RE.match(line)
        if header:
            name = header.group(2)
            if header.group(1) == "[[":
                index = array_counts.get(name, -1) + 1
                array_counts[name] = index
                table = name.split(".") + [str(index)]
            else:
                table = name.split(".")
            lines.setdefault(".".join(table), lineno)
            lines.setdefault(name, lineno)
            continue
        key = _KEY_RE.match(line)
        if key:
            parts = [p.strip().strip("\"'") for p in key.group(1).split(".")]
            lines.setdefault(".".join(table + parts), lineno)
    return lines


def _model_keys(model: type, prefix: str = "") -> List[str]:
    keys = []
    for name, info in model.model_fields.items():
        dotted = f"{prefix}{name}"
        keys.append(dotted)
        for sub in _nested_models(info.annotation):
            keys.extend(_model_keys(sub, dotted + "."))
    return keys


def _nested_models(annotation) -> List[type]:
    if isinstance(annotation, type) and issubclass(annotation, BaseModel):
        return [annotation]
    found = []
    for arg in getattr(annotation, "__args__", ()) or ():
        found.extend(_nested_models(arg))
    return found


VALID_KEYS = sorted(set(_model_keys(RunConfig)))


def suggest_key(dotted: str) -> Optional[str]:
    """Closest valid dotted key, ignoring list indices."""
    plain = ".".join(p for p in dotted.split(".") if not p.isdigit())
    matches = difflib.get_close_matches(plain, VALID_KEYS, n=1, cutoff=0.6)
    return matches[0] if matches else None


def _line_for(loc: Tuple[Any, ...], lines: Dict[str, int]) -> Optional[int]:
    parts = [str(p) for p in loc]
    while parts:
        dotted = ".".join(parts)
        if dotted in lines:
            return lines[dotted]
        parts.pop()
    return None


def _leaf_path(loc: Tuple[Any, ...], data: Dict[str, Any]) -> str:
    """Dotted path of an unknown key, descending into it when it is a table."""
    node: Any = data
    for part in loc:
        try:
            node = node[part]
        except (KeyError, IndexError, TypeError):
            node = None
            break
    dotted = ".".join(str(p) for p in loc)
    if isinstance(node, dict) and node:
        return f"{dotted}.{next(iter(node))}"
    return dotted


def validation_issues(
    error: ValidationError, lines: Dict[str, int], data: Dict[str, Any]
) -> List[Issue]:
    issues: List[Issue] = []
    for err in error.errors():
        loc = tuple(p for p in err["loc"] if not str(p).startswith("function-"))
        dotted = ".".join(str(p) for p in loc) or "<root>"
        if err["type"] == "extra_forbidden":
            leaf = _leaf_path(loc, data)
            hint = suggest_key(leaf)
            message = f"unknown key '{dotted}'"
            if hint:
                message += f"; did you mean '{hint}'?"
        else:
            message = f"{dotted}: {err['msg']}"
        issues.append((_line_for(loc, lines), message))
    return issues


def _load(path: Path) -> Tuple[Dict[str, Any], Dict[str, int]]:
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Cannot parse {path}", [(e.lineno, e.msg)])
        if isinstance(data, dict) and isinstance(data.get("config"), dict):
            data = data["config"]
        return data, {}
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        match = _TOML_LINE_RE.search(str(e))
        raise ConfigurationError(
            f"Cannot parse {path}", [(int(match.group(1)) if match else None, str(e))]
        )
    return data, key_lines(text)


def _resolve_paths(data: Dict[str, Any], base: Path) -> None:
    mesh = data.get("mesh")
    if isinstance(mesh, dict) and isinstance(mesh.get("topography_file"), str):
        mesh["topography_file"] = str((base / mesh["topography_file"]).resolve())
    output = data.get("output")
    if isinstance(output, dict) and isinstance(output.get("directory"), str):
        output["directory"] = str((base / output["directory"]).resolve())


def expand_preset(data: Dict[str, Any], lines: Dict[str, int]) -> Dict[str, Any]:
    name = data.get("preset")
    if name is None:
        return data
    if name not in PRESETS:
        close = difflib.get_close_matches(str(name), PRESETS, n=1)
        hint = f"; did you mean '{close[0]}'?" if close else ""
        raise ConfigurationError(
            "Invalid configuration",
            [(lines.get("preset"), f"unknown preset '{name}'{hint}")],
        )
    return merge_tables(preset_table(name), data)


def parse_config(path: Union[str, Path]) -> RunConfig:
    """Read, expand and validate a TOML configuration (or a JSON manifest echo).

    Raises:
        ConfigurationError: every problem found, with line numbers where known
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Configuration file not found: {path}")
    data, lines = _load(path)
    if not isinstance(data, dict):
        raise ConfigurationError(f"Configuration {path} must be a table")
    data = expand_preset(data, lines)
    _resolve_paths(data, path.parent.resolve())

    try:
        config = RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(
            f"Invalid configuration {path}", validation_issues(e, lines, data)
        )

    topo = config.mesh.topography_file
    if topo is not None and not Path(topo).is_file():
        raise ConfigurationError(
            f"Invalid configuration {path}",
            [(lines.get("mesh.topography_file"), f"topography file not found: {topo}")],
        )
    logger.info(f"Loaded configuration {path}" + (f" (preset {config.preset})" if config.preset else ""))
    return config
