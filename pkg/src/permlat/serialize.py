"""JSON forms of groups, matrices, lattices and results.

Groups use 1-based cycle notation on the wire and 0-based points inside.
Matrix entries that do not fit in a signed 64-bit integer are written as
decimal strings.
"""
from __future__ import annotations

import json
import re

import numpy as np

from . import permgrp
from .errors import BadParams
from .glat import FinModule, GLattice, as_array, to_list
from .permgrp import Perm, PermGroup

_INT64 = 1 << 63


def group_to_json(g: PermGroup):
    return {"degree": g.degree, "name": g.name,
            "generators": [[list(c) for c in s.to_cycles(one_based=True)] for s in g.generators]}


def group_from_json(d):
    n = d["degree"]
    gens = [Perm.from_cycles(n, [tuple(c) for c in cycles], one_based=True) for cycles in d["generators"]]
    return PermGroup(n, gens, name=d.get("name"))


def _entry(x):
    x = int(x)
    return x if -_INT64 <= x < _INT64 else str(x)


def matrix_to_json(a):
    rows = to_list(a) if isinstance(a, np.ndarray) else [list(r) for r in a]
    cols = len(rows[0]) if rows else 0
    return {"rows": len(rows), "cols": cols, "entries": [[_entry(x) for x in r] for r in rows]}


def matrix_from_json(d):
    out = [[int(x) for x in row] for row in d["entries"]]
    if len(out) != d["rows"] or any(len(r) != d["cols"] for r in out):
        raise BadParams("matrix JSON shape does not match its entries")
    return out


def lattice_to_json(m: GLattice):
    d = {"group": group_to_json(m.group), "rank": m.rank, "name": m.name,
         "generators": [matrix_to_json(a) for a in m.gens],
         "labels": [_label(x) for x in m.labels] if m.labels is not None else None}
    if m.modulus:
        d["modulus"] = m.modulus
    return d


def _label(x):
    return list(_label(y) for y in x) if isinstance(x, tuple) else x


def lattice_from_json(d, group=None):
    g = group or group_from_json(d["group"])
    mats = [as_array(matrix_from_json(a)) for a in d["generators"]]
    if d.get("modulus"):
        return FinModule(g, mats, d["modulus"], labels=d.get("labels"), name=d.get("name"), rank=d["rank"])
    return GLattice(g, mats, labels=d.get("labels"), name=d.get("name"), rank=d["rank"])


def sequence_to_json(seq):
    return {"name": seq.name, "terms": [lattice_to_json(t) for t in seq.terms],
            "maps": [matrix_to_json(f) if f and f[0] is not None else {"rows": len(f), "cols": 0, "entries": f}
                     for f in seq.maps],
            "verified": seq.verified}


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return to_list(o)
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if hasattr(o, "to_list"):
        return o.to_list()
    raise TypeError(f"cannot serialize {type(o).__name__}")


# -- named groups ------------------------------------------------------------

_NAMED = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*?)\s*(?:\(([^)]*)\))?\s*$")


def parse_group(text):
    """A group from JSON text or a name: S4, A5, C3, V4, trivial(n), stab(n),
    alpha_beta(n,p), sigma_pi(p), even_pairs(n), sylow2_alt(n), sylow2_sym(n)."""
    text = text.strip()
    if text.startswith("{"):
        return group_from_json(json.loads(text))
    short = re.fullmatch(r"([SAC])(\d+)", text)
    if short:
        kind, n = short.group(1), int(short.group(2))
        return {"S": permgrp.symmetric, "A": permgrp.alternating, "C": permgrp.cyclic}[kind](n)
    if text == "V4":
        return permgrp.klein_four()
    m = _NAMED.match(text)
    if not m:
        raise BadParams(f"cannot parse group {text!r}")
    name = m.group(1)
    args = [int(x) for x in m.group(2).split(",")] if m.group(2) else []
    table = {
        "trivial": permgrp.trivial,
        "stab": lambda n: permgrp.point_stabilizer(n, n - 1),
        "alpha_beta": permgrp.alpha_beta,
        "sigma_pi": permgrp.sigma_pi,
        "even_pairs": permgrp.even_pairs,
        "sylow2_alt": permgrp.sylow2_alt,
        "sylow2_sym": permgrp.sylow2_symmetric,
        "smallest_prime": permgrp.smallest_prime_subgroup,
    }
    if name not in table:
        raise BadParams(f"unknown group name {name!r}")
    try:
        return table[name](*args)
    except TypeError as e:
        raise BadParams(f"bad arguments for {name}: {e}") from None


def parse_lattice(text, group=None):
    """A named fixture such as ``A(4)`` or ``Sym2A(5)``, over ``group`` if given."""
    from .glat import FIXTURES, fixture
    m = _NAMED.match(text)
    if not m or m.group(1) not in FIXTURES or not m.group(2):
        raise BadParams(f"cannot parse lattice {text!r}; use e.g. A(4), Sym2A(5)")
    n = int(m.group(2))
    if group is not None and group.degree != n:
        raise BadParams(f"lattice {text} needs a group of degree {n}")
    return fixture(m.group(1), group if group is not None else n)
