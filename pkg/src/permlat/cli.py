"""Command-line front end.

Exit codes: 0 success, 1 a claim failed, 2 bad configuration, 3 a required
computation hit a size cap.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import cohom, flasque, glat, permgrp, report, seqcert, serialize
from .errors import BadParams, CapExceeded, NotSubgroup, PermlatError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3


def _caps(text):
    if not text:
        return None
    out = {}
    for part in text.split(","):
        k, _, v = part.partition("=")
        try:
            out[int(k)] = int(v)
        except ValueError:
            raise BadParams(f"bad --caps entry {part!r}; use e.g. 1=192,2=24") from None
    return out


def _lattice_and_group(args):
    group = serialize.parse_group(args.group) if args.group else None
    if not args.lattice:
        raise BadParams("--lattice is required, e.g. --lattice 'A(4)'")
    lat = serialize.parse_lattice(args.lattice, group)
    return lat, group or lat.group


def _catalog(args, g):
    choice = getattr(args, "catalog", None) or "full"
    if choice == "full":
        return permgrp.subgroups_up_to_conjugacy(g)
    if choice == "cyclic":
        return permgrp.user_catalog(g, permgrp.cyclic_subgroup_reps(g))
    with open(choice) as fh:
        data = json.load(fh)
    return permgrp.user_catalog(g, [serialize.group_from_json(d) for d in data])


def _emit(args, payload, text):
    if args.json:
        print(serialize.dumps(payload))
    else:
        print(text)


def cmd_report(args):
    config = report.ReportConfig(n=set(args.n) if args.n else None, caps=_caps(args.caps), jobs=args.jobs,
                                 only=tuple(args.only or ()))
    rep = report.run_report(config)
    if args.json:
        print(serialize.dumps(rep.to_dict(runtimes=not args.no_runtimes)))
    else:
        print(rep.table())
    return rep.exit_code


def cmd_h1(args):
    lat, g = _lattice_and_group(args)
    if args.path == "dual-fast":
        inv = cohom.h1_dual_fast(g, lat)
    elif args.path == "formula":
        if args.lattice.split("(")[0] != "A":
            raise BadParams("the orbit formula only applies to the augmentation kernel A(n)")
        inv = cohom.h1_aug_formula(g)
    else:
        inv = cohom.h_bar(1, g, lat, _caps(args.caps)).invariants
    _emit(args, {"group": g.name, "coefficients": lat.name, "degree": 1, "invariants": inv.to_list(),
                 "path": args.path}, f"H^1({g.name or 'G'}, {lat.name}) = {inv}")
    return EXIT_OK


def cmd_sha1(args):
    lat, g = _lattice_and_group(args)
    if args.mod:
        lat = glat.mod_m(lat, args.mod)
    if args.fast:
        inv, path = cohom.sha1_aug_fast(g), "formula"
    else:
        inv, path = cohom.sha(1, g, lat, _caps(args.caps)).invariants, "bar"
    _emit(args, {"group": g.name, "coefficients": lat.name, "degree": 1, "invariants": inv.to_list(),
                 "path": path}, f"Sha^1({g.name or 'G'}, {lat.name}) = {inv}")
    return EXIT_OK


def cmd_sha2(args):
    lat, g = _lattice_and_group(args)
    if args.via == "rho":
        top = lat.group
        inv = flasque.rho_h1(g, lat, _catalog(args, top))
        path = "tate"
    else:
        inv = cohom.sha(2, g, lat, _caps(args.caps)).invariants
        path = "bar"
    _emit(args, {"group": g.name, "coefficients": lat.name, "degree": 2, "invariants": inv.to_list(),
                 "path": path}, f"Sha^2({g.name or 'G'}, {lat.name}) = {inv}")
    return EXIT_OK


def cmd_coflasque(args):
    lat, g = _lattice_and_group(args)
    v = flasque.is_coflasque(lat, _catalog(args, g), path=args.path, caps=_caps(args.caps))
    _emit(args, v.to_dict(), f"coflasque({lat.name}): {v.value} (catalog {v.catalog_digest}, "
                             f"{'complete' if v.catalog_complete else 'user-supplied'})")
    return EXIT_OK


def cmd_flasque_res(args):
    lat, g = _lattice_and_group(args)
    cat = _catalog(args, g)
    res = flasque.flasque_resolution(lat, cat)
    seq = res.sequence()
    seqcert.verify_exact(seq)
    payload = serialize.sequence_to_json(seq)
    payload["catalog"] = cat.digest()
    _emit(args, payload, f"0 -> {lat.name} -> P (rank {res.p.rank}) -> F (rank {res.f.rank}) -> 0, "
                         f"verified, catalog {cat.digest()}")
    return EXIT_OK


def cmd_cert(args):
    n = args.n_value
    witness = seqcert.sym2a_witness(n)
    if witness is None:
        _emit(args, {"n": n, "certificate": None}, f"n = {n}: no witness found")
        return EXIT_FAIL
    cert = seqcert.cert_from_quotient(seqcert.build_named("square", n), witness)
    payload = {"n": n, "stable_permutation": {"p": witness.p.name, "q": witness.q.name,
                                              "iso": serialize.matrix_to_json(witness.iso)},
               "certificate": cert.to_dict()}
    _emit(args, payload, f"n = {n}: Sym^2 A + {witness.p.name} = {witness.q.name} verified; "
                         f"wedge^2 A ~ A (x) A through a middle term of rank {cert.middle.rank}")
    return EXIT_OK


def cmd_iso(args):
    group = serialize.parse_group(args.group) if args.group else None
    m = serialize.parse_lattice(args.lattice, group)
    n = _parse_target(args.target, group or m.group)
    f = glat.find_iso(m, n, bound=args.bound, expand_to=max(args.bound, args.expand_to))
    payload = {"found": f is not None, "witness": serialize.matrix_to_json(f) if f is not None else None}
    text = f"{m.name} = {n.name}: witness {f}" if f is not None else \
        f"no unimodular map found with coefficients up to {max(args.bound, args.expand_to)}"
    _emit(args, payload, text)
    return EXIT_OK


def _parse_target(text, group):
    """A fixture, optionally as dual(...) and/or tensored with sign: 'dual(A(4))*sign'."""
    text = text.strip()
    twist = text.endswith("*sign")
    if twist:
        text = text[:-5]
    dual = text.startswith("dual(") and text.endswith(")")
    if dual:
        text = text[5:-1]
    lat = serialize.parse_lattice(text, group)
    if dual:
        lat = glat.dual(lat)
    if twist:
        lat = glat.tensor(lat, glat.sign_lattice(lat.group))
    return lat


def cmd_seq(args):
    group = serialize.parse_group(args.group) if args.group else None
    seq = seqcert.build_named(args.name, args.n_value, group)
    _emit(args, serialize.sequence_to_json(seq),
          f"{args.name}(n={args.n_value}): ranks {seq.ranks}, verified={seq.verified}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="permlat", description="Computations with permutation lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, lattice=True):
        sp.add_argument("--group", help="named group (S4, A5, alpha_beta(6,2), ...) or JSON")
        if lattice:
            sp.add_argument("--lattice", help="named fixture, e.g. A(4), Sym2A(5), W(6)")
        sp.add_argument("--caps", help="bar-complex caps, e.g. 1=192,2=24")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    r = sub.add_parser("report", help="run every claim in the bundled manifest")
    r.add_argument("--n", type=int, action="append", help="only rows involving this n (repeatable)")
    r.add_argument("--only", action="append", help="only claim ids with this prefix (repeatable)")
    r.add_argument("--caps")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--json", action="store_true")
    r.add_argument("--no-runtimes", action="store_true", help="omit timing fields from JSON")
    r.set_defaults(func=cmd_report)

    h = sub.add_parser("h1", help="first cohomology")
    common(h)
    h.add_argument("--path", choices=("bar", "dual-fast", "formula"), default="bar")
    h.set_defaults(func=cmd_h1)

    s1 = sub.add_parser("sha1", help="Sha^1")
    common(s1)
    s1.add_argument("--mod", type=int, help="reduce coefficients mod m")
    s1.add_argument("--fast", action="store_true", help="orbit formula (augmentation kernel only)")
    s1.set_defaults(func=cmd_sha1)

    s2 = sub.add_parser("sha2", help="Sha^2")
    common(s2)
    s2.add_argument("--via", choices=("bar", "rho"), default="bar")
    s2.add_argument("--catalog", help="full | cyclic | path to JSON list of groups")
    s2.set_defaults(func=cmd_sha2)

    c = sub.add_parser("coflasque", help="test H^1(H, M) = 0 over a subgroup catalog")
    common(c)
    c.add_argument("--catalog", help="full | cyclic | path to JSON list of groups")
    c.add_argument("--path", choices=("bar", "dual-fast"), default="bar")
    c.set_defaults(func=cmd_coflasque)

    f = sub.add_parser("flasque-res", help="build a flasque resolution")
    common(f)
    f.add_argument("--catalog", help="full | cyclic | path to JSON list of groups")
    f.set_defaults(func=cmd_flasque_res)

    ce = sub.add_parser("cert", help="stable-permutation and equivalence certificates (odd n, or n = 4)")
    ce.add_argument("--n", dest="n_value", type=int, required=True)
    ce.add_argument("--json", action="store_true")
    ce.set_defaults(func=cmd_cert)

    i = sub.add_parser("iso", help="bounded search for an equivariant isomorphism")
    common(i)
    i.add_argument("--target", required=True, help="fixture, optionally dual(...) and/or ...*sign")
    i.add_argument("--bound", type=int, default=3)
    i.add_argument("--expand-to", type=int, default=5)
    i.set_defaults(func=cmd_iso)

    q = sub.add_parser("seq", help="build and verify a named exact sequence")
    q.add_argument("--name", required=True, choices=seqcert.SEQUENCES)
    q.add_argument("--n", dest="n_value", type=int, required=True)
    q.add_argument("--group")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_seq)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (BadParams, NotSubgroup, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except PermlatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
