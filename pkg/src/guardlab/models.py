"""Named model families used by the suites and the command line."""

from __future__ import annotations

from .citm import Signature, TreeCategory
from .cms import UltrametricCategory
from .cpolift import LiftCategory, PointedIdCategory
from .finset import ConstantDelaySets
from .laws import Model
from .posets import antichain, chain, default_stage_posets, diamond

MODEL_NAMES = ("presheaf", "cpolift", "citm", "cms")
CITM_DEPTHS = (4, 8, 12)

CITM_SIGNATURES = (
    Signature((("*", 2), ("c", 0))),
    Signature((("s", 1), ("c", 0), ("d", 0))),
    Signature((("*", 2), ("s", 1), ("c", 0))),
)

DEFAULT_SIZES = {
    "presheaf": {"poset": "default", "set": 3},
    "cpolift": {"poset": 3},
    "cms": {"alphabet": 2, "depth": 4},
    "citm": {"vars": 3, "height": 3},
}


def stage_posets(name: str):
    if name == "default":
        return default_stage_posets()
    if name == "diamond":
        return [diamond()]
    if name.startswith("chain"):
        return [chain(int(name[5:]))]
    if name.startswith("antichain"):
        return [antichain(int(name[9:]))]
    raise ValueError(f"unknown stage poset {name!r}")


def parse_sizes(text: str | None) -> dict:
    """``"key=value,key=value"`` to a dict; integer values are converted."""
    out = {}
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"size entry {item!r} is not key=value")
        out[key.strip()] = int(val) if val.strip().isdigit() else val.strip()
    return out


def build_models(name: str, sizes: dict | None = None, depth: int | None = None) -> list:
    """Model families for ``name``; CITM yields one per depth."""
    s = dict(DEFAULT_SIZES.get(name, {}))
    unknown = set(sizes or {}) - set(s)
    if unknown:
        raise ValueError(f"unknown size keys for {name}: {', '.join(sorted(unknown))}")
    s.update(sizes or {})
    if name == "presheaf":
        from .presheaf import PresheafCategory
        return [Model("presheaf", [PresheafCategory(p, max_set=int(s["set"]))
                                   for p in stage_posets(str(s["poset"]))])]
    if name == "cpolift":
        return [Model("cpolift", [LiftCategory(max_poset=int(s["poset"]))])]
    if name == "cms":
        return [Model("cms", [UltrametricCategory(max_alphabet=int(s["alphabet"]),
                                                  max_depth=int(s["depth"]))])]
    if name == "citm":
        depths = (depth,) if depth else CITM_DEPTHS
        return [Model(f"citm@{k}", [TreeCategory(sig, k, max_vars=int(s["vars"]),
                                                 tree_height=int(s["height"]))
                                    for sig in CITM_SIGNATURES])
                for k in depths]
    if name == "cpo-id":
        return [Model("cpo-id", [PointedIdCategory()])]
    if name == "const-delay":
        return [Model("const-delay", [ConstantDelaySets()])]
    raise ValueError(f"unknown model {name!r}")
