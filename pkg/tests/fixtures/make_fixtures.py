"""Regenerate the frozen oracle values.

Run from the repository root: ``python3 tests/fixtures/make_fixtures.py``.
Values come from the oracles only (Temperley-Lieb closed forms with a
brute-force state sum, or exhaustive enumeration over the category tables).
"""

import json
from math import gcd
from pathlib import Path

from skein.category import build
from skein.invariants import refined_structures
from skein.manifolds import chain, e8_sphere, lens_space, s1_x_s2
from skein.oracles import brute_tau, search_convention_maps, tl_tau

HERE = Path(__file__).parent


def frozen(v):
    data = v.normalized().to_json()
    return {"eta_power": data["eta_power"], "coeffs": data["coeffs"]}


def lens_list(pmax):
    return [(p, q) for p in range(2, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


def forests_for(N, K):
    out = {f"L({p},{q})": lens_space(p, q) for p, q in lens_list(7 if N == 2 else 5)}
    out["S1xS2"] = s1_x_s2()
    out["chain(1,2,-3)"] = chain(1, 2, -3)
    if N == 2 and K == 2:
        out["E8"] = e8_sphere()
    return out


def main():
    maps = {}
    values = {}
    for N, K, mode in [(2, 2, "spin"), (2, 6, "spin"), (2, 4, "coh"), (4, 4, "spin")]:
        cat = build(N, K, mode)
        key = f"{N},{K},{mode}"
        entry = {}
        if N == 2:
            exact = [m for m in search_convention_maps(cat) if m.exact]
            assert len(exact) == 1, exact
            cmap = exact[0]
            maps[key] = cmap.to_json()
        for name, F in forests_for(N, K).items():
            if cat.size ** len(F) > 20_000:
                continue
            if N == 2:
                r = cat.params.refinement_grading
                total = tl_tau(cat.ctx, K, cmap.a_exponent, F, refinement_grading=r)
                refined = [
                    {"s": list(s.values),
                     "value": frozen(tl_tau(cat.ctx, K, cmap.a_exponent, F, s.as_dict(), r))}
                    for s in refined_structures(cat, F)
                ]
            else:
                total = brute_tau(cat, F)
                refined = [{"s": list(s.values), "value": frozen(brute_tau(cat, F, s.as_dict()))}
                           for s in refined_structures(cat, F)]
            entry[name] = {"forest": F.to_json(), "tau": frozen(total), "refined": refined}
        values[key] = entry
    (HERE / "tl_convention_map.json").write_text(json.dumps(maps, indent=1, sort_keys=True) + "\n")
    (HERE / "oracle_values.json").write_text(json.dumps(values, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
