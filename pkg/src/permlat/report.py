"""The verification report: every claim in the bundled manifest, computed and compared."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from . import cohom, flasque, glat, permgrp, seqcert
from .errors import CapExceeded
from .intlin import AbelianInvariants

MANIFEST = "claims.json"
_GATES = ("gate.h1_dual_fast", "gate.sha1_aug_fast")


def load_manifest():
    text = resources.files("permlat").joinpath("data", MANIFEST).read_text()
    return json.loads(text)["claims"]


@dataclass
class ReportConfig:
    n: set = None  # restrict to rows touching these n
    caps: dict = None  # bar-complex caps by degree
    jobs: int = 1
    only: tuple = ()  # claim-id prefixes

    def to_dict(self):
        return {"n": sorted(self.n) if self.n else None, "caps": self.caps, "jobs": self.jobs,
                "only": list(self.only)}


@dataclass
class ReportRow:
    claim_id: str
    criterion: int
    statement: str
    computed: object
    expected: object
    path: str
    status: str  # pass | fail | skipped
    runtime_ms: int = 0
    reason: str = None

    def to_dict(self):
        return asdict(self)


def _inv(a: AbelianInvariants):
    return a.to_list()


# -- claim implementations ---------------------------------------------------
# each returns (computed, expected_or_None, path); None means "use the manifest"

_CLAIMS = {}


def claim(prefix):
    def deco(fn):
        _CLAIMS[prefix] = fn
        return fn
    return deco


def _catalog(n):
    return permgrp.subgroups_up_to_conjugacy(permgrp.symmetric(n))


@claim("h1.aug_formula")
def _h1_formula(cid, caps):
    n = int(cid.rsplit("s", 1)[1])
    g = permgrp.symmetric(n)
    a = glat.fixture("A", g)
    cat = _catalog(n)
    computed = [_inv(cohom.h_bar(1, h, a, caps).invariants) for h in cat]
    expected = [_inv(cohom.h1_aug_formula(h)) for h in cat]
    return computed, expected, "bar"


@claim("h1.transitive")
def _h1_transitive(cid, caps):
    n = int(cid.rsplit("n", 1)[1])
    g = permgrp.symmetric(n)
    if n <= 5:
        return _inv(cohom.h_bar(1, g, glat.fixture("A", g), caps).invariants), None, "bar"
    return _inv(cohom.h1_aug_formula(g)), None, "formula"


_SHA1_GROUPS = {
    "sha1.sigma_pi.n4": lambda: permgrp.sigma_pi(2),
    "sha1.alpha_beta.n6": lambda: permgrp.alpha_beta(6, 2),
    "sha1.alpha_beta.n8": lambda: permgrp.alpha_beta(8, 2),
    "sha1.sigma_pi.n9": lambda: permgrp.sigma_pi(3),
}


@claim("sha1.sigma_pi")
@claim("sha1.alpha_beta")
def _sha1_named(cid, caps):
    h = _SHA1_GROUPS[cid]()
    return _inv(cohom.sha(1, h, glat.fixture("A", h.degree), caps).invariants), None, "bar"


@claim("sha1.alternating")
def _sha1_alt(cid, caps):
    n = int(cid.rsplit("n", 1)[1])
    g = permgrp.alternating(n)
    out = {"fast": _inv(cohom.sha1_aug_fast(g))}
    if n <= 4:
        out["bar"] = _inv(cohom.sha(1, g, glat.fixture("A", g), caps).invariants)
    return out, None, "formula" if n > 4 else "formula+bar"


@claim("sha1.sylow2_alt")
def _sha1_sylow(cid, caps):
    n = int(cid.rsplit("n", 1)[1])
    h = permgrp.sylow2_alt(n)
    out = {"fast": _inv(cohom.sha1_aug_fast(h)),
           "bar": _inv(cohom.sha(1, h, glat.fixture("A", n), caps).invariants)}
    return out, None, "formula+bar"


@claim("coflasque.sym2a")
def _coflasque(cid, caps):
    n = int(cid.rsplit("n", 1)[1])
    g = permgrp.symmetric(n)
    v = flasque.is_coflasque(glat.fixture("Sym2A", g), _catalog(n), caps=caps)
    return v.value, None, "bar"


@claim("split.newexact")
def _split(cid, caps):
    n = int(cid.rsplit("n", 1)[1])
    seq = seqcert.build_named("newexact", n)
    witness, section = seqcert.stable_perm_from_newexact(seq)
    out = {"section": section is not None, "stable_permutation": False, "equivalence": False}
    if witness is not None:
        out["stable_permutation"] = witness.verify()
        cert = seqcert.cert_from_quotient(seqcert.build_named("square", n), witness)
        out["equivalence"] = cert.verify()
    return out, None, "solver"


@claim("iso.wedge2a2")
def _iso2(cid, caps):
    g = permgrp.symmetric(3)
    w = glat.fixture("Wedge2A", g)
    z = glat.sign_lattice(g)
    f = glat.find_iso(w, z)
    return _iso_ok(f, w, z), None, "solver"


@claim("iso.wedge2a3")
def _iso3(cid, caps):
    g = permgrp.symmetric(4)
    w = glat.fixture("Wedge2A", g)
    t = glat.tensor(glat.dual(glat.fixture("A", g)), glat.sign_lattice(g))
    f = glat.find_iso(w, t)
    return _iso_ok(f, w, t), None, "solver"


def _iso_ok(f, m, n):
    from .intlin import is_unimodular
    return f is not None and is_unimodular(f) and glat.is_equivariant(glat.as_array(f), m, n)


@claim("sha2.tensor.s4")
def _sha2_s4(cid, caps):
    g = permgrp.symmetric(4)
    a = glat.fixture("A", g)
    a2 = glat.fixture("A2", g)
    members = [h for h in _catalog(4) if h.order() <= 12]
    computed = [_inv(cohom.sha(2, h, a2, caps).invariants) for h in members]
    expected = [_inv(cohom.sha(1, h, a, caps).invariants) for h in members]
    return computed, expected, "bar"


@claim("sha2.tensor.alpha_beta")
def _sha2_ab(cid, caps):
    h = permgrp.alpha_beta(6, 2)
    seq = seqcert.build_named("gn", 6)
    out = {"sha2": _inv(cohom.sha(2, h, glat.fixture("A2", 6), caps).invariants),
           "sha1": _inv(cohom.sha(1, h, glat.fixture("A", 6), caps).invariants),
           "via_sequence": _inv(cohom.sha2_via_sequence(h, seq, caps).invariants)}
    return out, None, "bar+sequence"


@claim("rho_h1.s4")
def _rho(cid, caps):
    fx = cid.rsplit(".", 1)[1]
    g = permgrp.symmetric(4)
    m = glat.fixture(fx, g)
    cat = _catalog(4)
    computed = [_inv(flasque.rho_h1(h, m, cat)) for h in cat]
    expected = [_inv(cohom.sha(2, h, m, caps).invariants) for h in cat]
    return computed, expected, "tate+bar"


@claim("monomial.wedge2u")
def _monomial(cid, caps):
    n = int(cid.rsplit("n", 1)[1])
    g = permgrp.symmetric(n)
    m = glat.fixture("Wedge2U", g)
    out = {"h1": _inv(cohom.h_bar(1, g, m, caps).invariants),
           "sha1": _inv(cohom.sha(1, g, m, caps).invariants),
           "sha2_rho": _inv(flasque.rho_h1(g, m, _catalog(n)))}
    return out, None, "bar+tate"


@claim("even.n6")
def _even(cid, caps):
    h = permgrp.even_pairs(6)
    a = glat.fixture("A", 6)
    seq = seqcert.build_named("sym2seq", 6)
    out = {"sha1_mod2": _inv(cohom.sha(1, h, glat.mod_m(a, 2), caps).invariants),
           "sha2_sym2_via_sequence": _inv(cohom.sha2_via_sequence(h, seq, caps).invariants),
           "sha2_sym2_direct": _inv(cohom.sha(2, h, glat.fixture("Sym2A", 6), caps).invariants),
           "sha2_wedge2": _inv(cohom.sha(2, h, glat.fixture("Wedge2A", 6), caps).invariants),
           "sha2_tensor": _inv(cohom.sha(2, h, glat.fixture("A2", 6), caps).invariants)}
    # equivalent lattices have isomorphic Sha^2 for every subgroup
    out["equivalent"] = False if out["sha2_wedge2"] != out["sha2_tensor"] else None
    return out, None, "bar+sequence"


GATE_FIXTURES = ("A", "A2", "Sym2A", "Wedge2A", "U", "sign", "Wedge2U")


@claim("gate.h1_dual_fast")
def _gate_dual(cid, caps):
    g = permgrp.symmetric(4)
    cat = _catalog(4)
    bad = []
    pairs = 0
    for fx in GATE_FIXTURES:
        m = glat.fixture(fx, g)
        for k, h in enumerate(cat):
            pairs += 1
            if cohom.h1_dual_fast(h, m) != cohom.h_bar(1, h, m, caps).invariants:
                bad.append(f"{fx}/{k}")
    return {"pairs": pairs, "disagreements": bad}, {"pairs": pairs, "disagreements": []}, "dual-fast vs bar"


def gate_groups():
    groups = []
    for n in (3, 4, 5):
        groups.extend(_catalog(n).members)
    groups += [permgrp.alternating(4), permgrp.sylow2_alt(4), permgrp.alpha_beta(6, 2),
               permgrp.alpha_beta(8, 2), permgrp.sigma_pi(3), permgrp.even_pairs(6)]
    return groups


@claim("gate.sha1_aug_fast")
def _gate_sha(cid, caps):
    bad = []
    groups = gate_groups()
    for k, h in enumerate(groups):
        fast = cohom.sha1_aug_fast(h)
        slow = cohom.sha(1, h, glat.fixture("A", h.degree), caps).invariants
        if fast != slow:
            bad.append(f"{h.degree}/{k}")
    return ({"pairs": len(groups), "disagreements": bad}, {"pairs": len(groups), "disagreements": []},
            "formula vs bar")


def _impl(cid):
    best = max((p for p in _CLAIMS if cid == p or cid.startswith(p + ".")), key=len, default=None)
    if best is None:
        raise KeyError(f"no implementation for claim {cid!r}")
    return _CLAIMS[best]


# -- running -----------------------------------------------------------------

def run_row(entry, caps=None):
    cid = entry["claim_id"]
    t0 = time.perf_counter()
    try:
        computed, expected, path = _impl(cid)(cid, caps)
    except CapExceeded as e:
        return ReportRow(cid, entry["criterion"], entry["statement"], None, entry.get("expected"), "-",
                         "skipped", int((time.perf_counter() - t0) * 1000), f"cap exceeded: {e}")
    if expected is None:
        expected = entry.get("expected")
    status = "pass" if computed == expected else "fail"
    return ReportRow(cid, entry["criterion"], entry["statement"], computed, expected, path, status,
                     int((time.perf_counter() - t0) * 1000))


def _run_entry(args):
    entry, caps = args
    return run_row(entry, caps)


def select(manifest, config: ReportConfig):
    out = []
    for e in manifest:
        if config.only and not any(e["claim_id"].startswith(p) for p in config.only):
            continue
        if config.n and e["claim_id"] not in _GATES and not set(e["n"]) & set(config.n):
            continue
        out.append(e)
    return out


@dataclass
class Report:
    rows: list
    config: ReportConfig
    aborted: bool = False
    total_ms: int = 0
    catalogs: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        if self.aborted or any(r.status == "fail" for r in self.rows):
            return 1
        if any(r.status == "skipped" for r in self.rows):
            return 3
        return 0

    def to_dict(self, runtimes=True):
        rows = []
        for r in self.rows:
            d = r.to_dict()
            if not runtimes:
                d.pop("runtime_ms")
            rows.append(d)
        out = {"config": self.config.to_dict(), "aborted": self.aborted, "rows": rows,
               "catalogs": self.catalogs, "exit_code": self.exit_code,
               "summary": {s: sum(r.status == s for r in self.rows) for s in ("pass", "fail", "skipped")}}
        if runtimes:
            out["total_ms"] = self.total_ms
        return out

    def table(self):
        lines = [f"{'claim':34} {'status':8} {'path':16} {'ms':>7}  computed"]
        for r in self.rows:
            comp = json.dumps(r.computed, sort_keys=True)
            if len(comp) > 70:
                comp = comp[:67] + "..."
            lines.append(f"{r.claim_id:34} {r.status:8} {r.path:16} {r.runtime_ms:7d}  {comp}")
            if r.reason:
                lines.append(f"{'':34} reason: {r.reason}")
        s = self.to_dict()["summary"]
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped"
                     + (" (aborted: an oracle gate failed)" if self.aborted else ""))
        return "\n".join(lines)


def run_report(config: ReportConfig = None):
    """Run the gates, then every selected claim; rows come back ordered by claim id."""
    config = config or ReportConfig()
    t0 = time.perf_counter()
    manifest = load_manifest()
    chosen = select(manifest, config)
    gates = [e for e in chosen if e["claim_id"] in _GATES]
    rest = [e for e in chosen if e["claim_id"] not in _GATES]
    rows = [run_row(e, config.caps) for e in gates]
    aborted = any(r.status == "fail" for r in rows)
    if aborted:
        for e in rest:
            rows.append(ReportRow(e["claim_id"], e["criterion"], e["statement"], None, e.get("expected"), "-",
                                  "fail", 0, "aborted: an oracle gate failed"))
    elif config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows.extend(pool.map(_run_entry, [(e, config.caps) for e in rest]))
    else:
        rows.extend(run_row(e, config.caps) for e in rest)
    rows.sort(key=lambda r: r.claim_id)
    catalogs = {}
    if config.n is None or set(config.n) & {3, 4, 5}:
        catalogs = {f"S{n}": _catalog(n).digest() for n in (3, 4, 5)}
    return Report(rows, config, aborted, int((time.perf_counter() - t0) * 1000), catalogs)
