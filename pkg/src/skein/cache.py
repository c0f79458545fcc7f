"""JSON serialization and on-disk caching of category tables."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict
from pathlib import Path

from .category import (
    CategoryData,
    Color,
    Params,
    TwistConvention,
    build_category,
)
from .exact import ExactValue, make_field

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_ENV = "SKEIN_CACHE_DIR"


def category_to_json(cat: CategoryData) -> dict:
    n = cat.size
    fusion = [
        [x, y, z, m]
        for x in range(n)
        for y in range(x, n)
        for z, m in sorted(cat.fusion[x][y].items())
    ]
    return {
        "format": FORMAT_VERSION,
        "params": asdict(cat.params),
        "convention": {"family": cat.convention.family, "mu_exp": cat.convention.mu_exp},
        "eta_inverse_squared": cat.ctx.eta_squared_inverse.to_json(),
        "delta": cat.delta.to_json(),
        "colors": [
            {
                "index": x,
                "label": str(c),
                "cols": c.cols,
                "rows": list(c.rows),
                "grading": cat.grading[x],
                "dual": cat.dual[x],
                "qdim": cat.qdim[x].to_json(),
                "twist_exponent": cat.twist_exp[x],
            }
            for x, c in enumerate(cat.colors)
        ],
        "fusion": fusion,
        "hopf": [[cat.hopf[x][y].to_json() for y in range(n)] for x in range(n)],
        "calibration": cat.calibration,
    }


def category_from_json(data: dict) -> CategoryData:
    if data.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported cache format {data.get('format')!r}")
    p = Params(**data["params"])
    ctx = make_field(p.M)
    ctx.set_eta_squared_inverse(ExactValue.from_json(ctx, data["eta_inverse_squared"]))
    colors = [Color(c["cols"], tuple(c["rows"])) for c in data["colors"]]
    n = len(colors)
    fusion = [[{} for _ in range(n)] for _ in range(n)]
    for x, y, z, m in data["fusion"]:
        fusion[x][y][z] = m
        if x != y:
            fusion[y][x][z] = m
    twist_exp = [c["twist_exponent"] for c in data["colors"]]
    conv = TwistConvention(data["convention"]["family"], data["convention"]["mu_exp"])
    return CategoryData(
        params=p,
        ctx=ctx,
        colors=colors,
        index={c: k for k, c in enumerate(colors)},
        grading=[c["grading"] for c in data["colors"]],
        qdim=[ExactValue.from_json(ctx, c["qdim"]) for c in data["colors"]],
        dual=[c["dual"] for c in data["colors"]],
        fusion=fusion,
        twist_exp=twist_exp,
        twist=[ctx.zeta(e) for e in twist_exp],
        hopf=[[ExactValue.from_json(ctx, h) for h in row] for row in data["hopf"]],
        eta=ctx.eta(),
        delta=ExactValue.from_json(ctx, data["delta"]),
        convention=conv,
        calibration=data["calibration"],
    )


def dumps(cat: CategoryData) -> str:
    return json.dumps(category_to_json(cat), sort_keys=True, indent=1) + "\n"


def cache_path(cache_dir, p: Params) -> Path:
    name = f"su{p.N}_{p.K}_{p.mode}_alpha{p.alpha}_M{p.M}_a{p.a_exp}_v{FORMAT_VERSION}.json"
    return Path(cache_dir) / name


def default_cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV) or None


def load_or_build(p: Params, cache_dir=None, **build_kwargs) -> CategoryData:
    """Read the category from ``cache_dir`` when present, else build and store it.

    Non-default calibration options bypass the cache entirely.
    """
    if cache_dir is None or build_kwargs:
        return build_category(p, **build_kwargs)
    path = cache_path(cache_dir, p)
    if path.exists():
        log.info("loading category from %s", path)
        return category_from_json(json.loads(path.read_text(encoding="utf-8")))
    cat = build_category(p)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(dumps(cat), encoding="utf-8")
    tmp.replace(path)
    return cat
