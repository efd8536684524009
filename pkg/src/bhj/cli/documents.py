"""JSON configuration documents.

Rationals travel as "num/den" strings and torsion values as
"num/den mod 1", never as floats.  ``emit`` produces the canonical form
and ``parse(emit(x)) == x`` for every local config and chain surface.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from ..brauer import (
    Ambient,
    BranchGerm,
    ForkData,
    LocalConfig,
    RamifiedCover,
    UnramifiedCover,
)
from ..errors import ValidationError
from ..lattice import LatticeVector, TorsionHomomorphism, TorsionValue
from ..mmp.chain import RAMIFIED, ChainCurve, ChainSurface, Germ

SCHEMA_VERSION = "1"


class DocumentError(ValidationError):
    pass


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


_RATIONAL = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(f"rational must be a 'num/den' string, got {text!r}")
    if not _RATIONAL.fullmatch(text):
        raise DocumentError(f"rational must be an integer or 'num/den', got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"malformed rational {text!r}") from None


def parse_torsion(text: str) -> TorsionValue:
    if not isinstance(text, str):
        raise DocumentError(f"torsion value must be a 'num/den mod 1' string, got {text!r}")
    try:
        return TorsionValue.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise DocumentError(f"malformed torsion value {text!r}") from None


def _vector(raw: Any, what: str) -> LatticeVector:
    if not (isinstance(raw, list) and len(raw) == 2 and all(type(x) is int for x in raw)):
        raise DocumentError(f"{what} must be a pair of integers, got {raw!r}")
    return LatticeVector(*raw)


def _int(raw: Any, what: str) -> int:
    if type(raw) is not int:
        raise DocumentError(f"{what} must be an integer, got {raw!r}")
    return raw


def _get(obj: dict, key: str, what: str):
    if not isinstance(obj, dict):
        raise DocumentError(f"{what} must be an object")
    if key not in obj:
        raise DocumentError(f"{what} is missing '{key}'")
    return obj[key]


# local configurations


def config_to_json(cfg: LocalConfig) -> dict:
    if cfg.ambient.is_regular:
        ambient = {"kind": "regular"}
    else:
        ambient = {"kind": "hj", "m": cfg.ambient.m, "k": cfg.ambient.k}
    branches = []
    for b in cfg.branches:
        if isinstance(b.cover, RamifiedCover):
            cover = {"kind": "ramified", "local_values": [str(t) for t in b.cover.local_values]}
        else:
            cover = {"kind": "unramified", "zeta": str(b.cover.zeta)}
        branches.append({"ray": list(b.ray), "e": b.e, "g": b.g, "cover": cover})
    fork = None
    if cfg.fork is not None:
        fork = {
            "kind": cfg.fork.kind,
            "chain_weights": list(cfg.fork.chain_weights),
            "end_weight": cfg.fork.end_weight,
        }
    return {
        "p": cfg.p,
        "ambient": ambient,
        "branches": branches,
        "zbar": [str(cfg.zbar.value_e1), str(cfg.zbar.value_e2)],
        "tangency_d": cfg.tangency_d,
        "fork": fork,
    }


def config_from_json(obj: dict) -> LocalConfig:
    p = _int(_get(obj, "p", "local_config"), "p")
    amb = obj.get("ambient", {"kind": "regular"})
    kind = _get(amb, "kind", "ambient")
    if kind == "regular":
        ambient = Ambient.regular()
    elif kind == "hj":
        ambient = Ambient.hj(_int(_get(amb, "m", "ambient"), "m"), _int(_get(amb, "k", "ambient"), "k"))
    else:
        raise DocumentError(f"unknown ambient kind {kind!r}")
    branches = []
    for i, raw in enumerate(obj.get("branches", [])):
        what = f"branches[{i}]"
        ray = _vector(_get(raw, "ray", what), f"{what}.ray")
        e = _int(raw.get("e", 1), f"{what}.e")
        g = _int(raw.get("g", 1), f"{what}.g")
        cover = None
        if raw.get("cover") is not None:
            c = raw["cover"]
            ckind = _get(c, "kind", f"{what}.cover")
            if ckind == "unramified":
                cover = UnramifiedCover(parse_torsion(_get(c, "zeta", f"{what}.cover")))
            elif ckind == "ramified":
                vals = _get(c, "local_values", f"{what}.cover")
                cover = RamifiedCover(tuple(parse_torsion(t) for t in vals))
            else:
                raise DocumentError(f"unknown cover kind {ckind!r}")
        branches.append(BranchGerm(ray, e, g, cover))
    z = obj.get("zbar", ["0/1 mod 1", "0/1 mod 1"])
    if not (isinstance(z, list) and len(z) == 2):
        raise DocumentError("zbar must be a list of two torsion values")
    zbar = TorsionHomomorphism(parse_torsion(z[0]), parse_torsion(z[1]))
    d = obj.get("tangency_d")
    if d is not None:
        d = _int(d, "tangency_d")
    fork = None
    if obj.get("fork") is not None:
        f = obj["fork"]
        weights = _get(f, "chain_weights", "fork")
        if not isinstance(weights, list):
            raise DocumentError("fork.chain_weights must be a list")
        end = f.get("end_weight")
        fork = ForkData(
            _get(f, "kind", "fork"),
            tuple(_int(w, "fork.chain_weights") for w in weights),
            None if end is None else _int(end, "fork.end_weight"),
        )
    return LocalConfig(p, ambient, tuple(branches), zbar, d, fork)


# chain surfaces


def _ram_str(ram) -> str:
    return RAMIFIED if ram == RAMIFIED else str(ram)


def _parse_ram(text):
    return RAMIFIED if text == RAMIFIED else parse_torsion(text)


def _germ_to_json(g: Germ | None):
    if g is None:
        return None
    return {"label": g.label, "n": g.n, "ram": _ram_str(g.ram)}


def _germ_from_json(raw, what: str) -> Germ | None:
    if raw is None:
        return None
    return Germ(
        str(_get(raw, "label", what)),
        _int(raw.get("n", 1), f"{what}.n"),
        _parse_ram(raw.get("ram", "0/1 mod 1")),
    )


def chain_to_json(chain: ChainSurface) -> dict:
    curves = []
    for c in chain.curves:
        curves.append(
            {
                "label": c.label,
                "selfint": c.selfint,
                "n": c.n,
                "ram": _ram_str(c.ram),
                "ray": None if c.ray is None else list(c.ray),
            }
        )
    return {
        "p": chain.p,
        "curves": curves,
        "left": _germ_to_json(chain.left),
        "right": _germ_to_json(chain.right),
        "contracted": sorted(chain.contracted, key=chain.index),
    }


def chain_from_json(obj: dict) -> ChainSurface:
    p = _int(_get(obj, "p", "chain_surface"), "p")
    curves = []
    raw_curves = _get(obj, "curves", "chain_surface")
    if not isinstance(raw_curves, list):
        raise DocumentError("chain_surface.curves must be a list")
    for i, raw in enumerate(raw_curves):
        what = f"curves[{i}]"
        ray = raw.get("ray") if isinstance(raw, dict) else None
        curves.append(
            ChainCurve(
                str(_get(raw, "label", what)),
                _int(_get(raw, "selfint", what), f"{what}.selfint"),
                _int(raw.get("n", 1), f"{what}.n"),
                _parse_ram(raw.get("ram", "0/1 mod 1")),
                None if ray is None else _vector(ray, f"{what}.ray"),
            )
        )
    contracted = obj.get("contracted", [])
    if not isinstance(contracted, list):
        raise DocumentError("chain_surface.contracted must be a list of labels")
    return ChainSurface(
        p,
        tuple(curves),
        _germ_from_json(obj.get("left"), "left"),
        _germ_from_json(obj.get("right"), "right"),
        frozenset(str(x) for x in contracted),
    )


# documents


def emit(payload: LocalConfig | ChainSurface) -> str:
    if isinstance(payload, LocalConfig):
        doc = {"schema_version": SCHEMA_VERSION, "local_config": config_to_json(payload)}
    elif isinstance(payload, ChainSurface):
        doc = {"schema_version": SCHEMA_VERSION, "chain_surface": chain_to_json(payload)}
    else:
        raise TypeError(f"cannot serialize {type(payload).__name__}")
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> LocalConfig | ChainSurface:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION!r})")
    payloads = [k for k in ("local_config", "chain_surface") if k in doc]
    if len(payloads) != 1:
        raise DocumentError("document needs exactly one of local_config or chain_surface")
    try:
        if payloads[0] == "local_config":
            return config_from_json(doc["local_config"])
        return chain_from_json(doc["chain_surface"])
    except (TypeError, AttributeError) as exc:
        raise DocumentError(f"malformed {payloads[0]}: {exc}") from None


def load(path: str) -> LocalConfig | ChainSurface:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
