"""Run configuration: enumeration budgets and per-check default parameters.

A config is a plain versioned dict.  Checks record its hash so that a
pass/fail/inconclusive verdict can be traced to the exact bounds used.
"""

import hashlib
import json

DEFAULTS = {
    "version": 1,
    "functor_budget": 2000000,
    "checks": {
        "square-colimit": {},
        "quotient-prop": {"sizes": [[1, 1], [2, 1], [1, 2]]},
        "funny-equation": {"params": [1, 1, 1]},
        "crush-product": {"sizes": [[1, 1, 1], [2, 1, 1]]},
        "step2": {"params": [1, 1, 1]},
        "step3": {"params": [1, 1, 1, 0]},
        "duality": {"pairs": [["[1]", "[1]"], ["[2]", "[1]"], ["[1;1]", "[1]"]]},
        "rigidity": {"subsite": ["[0]", "[1]", "[1;1]"], "expected": 1},
        "triple-gaunt": {"max_nm": 3},
        "adjunction-counts": {
            "factors": ["[0]", "[1]"],
            "targets": ["[1]", "[2]", "[1;1]", "T(1,1)"],
        },
        "uni-prop-vertical": {"C": "[1]", "targets": ["V([1])", "Sq([1])", "Sq([1;1])"]},
        "uni-prop-horizontal": {"C": "[1]", "targets": ["Sq([1])"]},
        "comp-core-complete": {"names": ["[1]", "[2]", "[1;1]"]},
        "cech-equals-sq": {"names": ["[1]", "[2]", "[1;1]"], "max_level": 2},
    },
}


def _merge(base, over):
    out = dict(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


class Config:
    def __init__(self, data=None):
        self.data = _merge(DEFAULTS, data or {})

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls(json.load(fh))

    def check_params(self, check_id):
        return dict(self.data["checks"].get(check_id, {}))

    def budget(self):
        return self.data["functor_budget"]

    def hash(self):
        blob = json.dumps(self.data, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]
