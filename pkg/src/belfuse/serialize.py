"""JSON file helpers shared by the CLI and callers that want identical output."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional, Union

from .mass import MASS_TOL, MassFunction


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_json(obj, path: Optional[Union[str, Path]] = None) -> None:
    """Write ``obj`` to ``path`` (UTF-8), or to stdout when ``path`` is None."""
    text = dumps(obj)
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def read_json(path: Union[str, Path]):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_mass(path: Union[str, Path], tol: float = MASS_TOL) -> MassFunction:
    return MassFunction.from_json(read_json(path), tol=tol)


def save_mass(m: MassFunction, path: Optional[Union[str, Path]] = None) -> None:
    write_json(m.to_json(), path)
