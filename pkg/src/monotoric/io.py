"""Reading workspace files and writing reports."""
from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from .division import MonomialDivision
from .errors import InputError
from .fan import Fan, ToricDivisor, as_divisor

OUTPUT_ENV = "MONOTORIC_OUTPUT_DIR"


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


class Workspace:
    """A fan file together with its named divisors and divisions."""

    def __init__(self, fan_path, output_dir=None):
        self.fan_path = Path(fan_path)
        data = load_json(fan_path)
        self.fan = Fan.from_dict(data)
        self.divisors = {}
        for name, coeffs in (data.get("divisors") or {}).items():
            self.divisors[name] = as_divisor(self.fan, coeffs)
        self.divisions = {}
        for name, d in (data.get("divisions") or {}).items():
            self.divisions[name] = MonomialDivision.from_dict(d, rays=self.fan.rays)
        self.output_dir = Path(output_dir or os.environ.get(OUTPUT_ENV) or ".")

    def divisor(self, ref: str) -> ToricDivisor:
        """A named divisor, or an inline coefficient list such as "1,0,-1"."""
        if ref in self.divisors:
            return self.divisors[ref]
        try:
            return as_divisor(self.fan, parse_int_list(ref))
        except InputError:
            raise InputError(f"unknown divisor {ref!r}") from None

    def division(self, ref: str) -> MonomialDivision:
        if ref in self.divisions:
            return self.divisions[ref]
        return MonomialDivision.from_dict(load_json(ref), rays=self.fan.rays)

    def output_path(self, out) -> Path:
        p = Path(out)
        if not p.is_absolute():
            p = self.output_dir / p
        p.parent.mkdir(parents=True, exist_ok=True)
        return p


def parse_int_list(text: str) -> list[int]:
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise InputError(f"expected a comma separated integer list, got {text!r}") from None


def jsonable(x):
    """Convert exact values to JSON-native data; rationals become "p/q" strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [jsonable(v) for v in sorted(x)]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "item"):
        return x.item()
    return x


def dump_report(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
