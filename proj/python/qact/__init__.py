"""Quaternion group actions on Riemann surfaces and their Jacobians."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

_bundled = Path(__file__).with_name("fixtures")
if _bundled.is_dir():
    os.environ.setdefault("QACT_FIXTURES", str(_bundled))

from . import _core  # noqa: E402
from ._core import (  # noqa: E402,F401
    QactError,
    act,
    fixed_locus_dimension,
    fixed_point_residual,
    fixture_dir,
    genus,
    in_siegel_space,
    is_symplectic,
    load_fixture,
    symplectic_form,
)

__version__ = "0.1.0"


@dataclass
class Report:
    ok: bool
    results: dict[str, Any]


def run(command: str, **options: Any) -> Report:
    """Same reports as the command-line tool, e.g. run("chars", n=4)."""
    ok, text = _core.run_report(command, options)
    return Report(ok, json.loads(text))


def _csv(values) -> str:
    return values if isinstance(values, str) else ",".join(str(v) for v in values)


def groups(n: int = 4, group: str = "") -> Report:
    return run("groups", n=n, group=group)


def chars(n: int) -> Report:
    return run("chars", n=n)


def decompose(n: int, a=(0, 0, 0, 0), b=()) -> Report:
    return run("decompose", n=n, a=_csv(a), b=_csv(b))


def classify(signature: str, n: int = 4, group: str = "") -> Report:
    return run("classify", n=n, signature=signature, group=group)


def families(n: int, count_orbits: bool = True) -> Report:
    return run("families", n=n, count_orbits=count_orbits)


def genus_zero(n: int, max_b: int = 4, census: int = 0) -> Report:
    return run("genus-zero", n=n, max_b=max_b, max_periods=census)


def quotient(n: int, family: str, param: int = 0, subgroup: str = "") -> Report:
    return run("quotient", n=n, family=family, param=param, subgroup=subgroup)


def extend(n: int) -> Report:
    return run("extend", n=n)


def siegel(fixture: str, check: str = "verify", starts: int = 16, seed: int = 1) -> Report:
    return run("siegel " + check, fixture=fixture, starts=starts, seed=seed)


def curve(n: int, t: str = "-1", verify: bool = False, samples: int = 200, seed: int = 1) -> Report:
    return run("curve", n=n, t=str(t), verify=verify, samples=samples, seed=seed)
