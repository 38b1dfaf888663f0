"""Command-line interface: ``eqtri <command> ...``.

Every command builds one report dictionary; ``--json`` prints it as JSON,
otherwise a text rendering of the same object is printed.  Exit status is 0
when every check passes or is flagged, 1 when a check fails or is
indeterminate, and 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .algebra import betti_gf2
from .catalog import (
    FIXTURE_IDS,
    load_fixture,
    read_action,
    read_complex,
    read_positions,
    serialize_action,
    serialize_complex,
    serialize_positions,
    write_complex,
    z2_3_action,
)
from .core.complex import Complex, euler_characteristic, f_vector, g_vector, link
from .core.manifold import (
    is_closed_pseudomanifold,
    is_connected,
    verify_3sphere,
    verify_closed_3manifold,
    verify_closed_surface,
)
from .errors import EqtriError, ParseError
from .group import (
    GroupAction,
    automorphism_group,
    facet_orbits,
    fixed_vertices,
    is_equivariant,
    nonfixed_parity_check,
    vertex_orbits,
)

log = logging.getLogger("eqtri")

STATUSES = ("pass", "fail", "indeterminate", "flagged")


class UsageError(Exception):
    pass


# --- report -------------------------------------------------------------------


class Report:
    def __init__(self, command: str, args: dict):
        self.data: dict = {"command": command, "args": args, "checks": [], "invariants": {}, "warnings": []}
        self._t0 = time.perf_counter()

    def check(self, name: str, status: str | bool | None, details: str = "") -> str:
        if status is True:
            status = "pass"
        elif status is False:
            status = "fail"
        elif status is None:
            status = "indeterminate"
        assert status in STATUSES
        self.data["checks"].append({"name": name, "status": status, "details": details})
        if status == "flagged":
            self.data["warnings"].append(f"{name}: {details}")
        return status

    def finding(self, f) -> None:
        if f is not None:
            self.check(f.name, f.status, f.details)

    def inv(self, key: str, value) -> None:
        self.data["invariants"][key] = value

    @property
    def status(self) -> str:
        st = {c["status"] for c in self.data["checks"]}
        for s in ("fail", "indeterminate", "flagged"):
            if s in st:
                return s
        return "pass"

    def finish(self, timing: bool) -> dict:
        self.data["status"] = self.status
        if timing:
            self.data["timing_seconds"] = round(time.perf_counter() - self._t0, 4)
        return self.data


def render_text(data: dict) -> str:
    lines = [f"eqtri {data['command']}: {data['status'].upper()}"]
    for c in data["checks"]:
        d = f"  {c['details']}" if c["details"] else ""
        lines.append(f"  [{c['status']:>13}] {c['name']}{d}")
    for k, v in data["invariants"].items():
        lines.append(f"  {k}: {_fmt(v)}")
    for w in data["warnings"]:
        lines.append(f"  warning: {w}")
    if "timing_seconds" in data:
        lines.append(f"  time: {data['timing_seconds']} s")
    return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)) and v and all(isinstance(x, (int, str)) for x in v):
        return "(" + ", ".join(str(x) for x in v) + ")"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=False)
    return str(v)


# --- inputs -------------------------------------------------------------------


def _fixture_id(spec: str) -> str | None:
    if spec.startswith("fixture:"):
        return spec[len("fixture:"):]
    return None


def load_complex(spec: str) -> Complex:
    fid = _fixture_id(spec)
    if fid is not None:
        try:
            return load_fixture(fid).complex
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    p = Path(spec)
    if not p.exists():
        raise UsageError(f"no such file: {spec} (fixtures: {', '.join('fixture:' + i for i in FIXTURE_IDS)})")
    return read_complex(p)


def load_action(spec: str, X: Complex | None = None) -> GroupAction:
    fid = _fixture_id(spec)
    if fid is not None:
        if fid == "z2_3":
            a = z2_3_action()
        else:
            try:
                a = load_fixture(fid).action
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from exc
            if a is None:
                raise UsageError(f"fixture {fid} has no action")
    else:
        p = Path(spec)
        if not p.exists():
            raise UsageError(f"no such file: {spec}")
        a = read_action(p)
    return a.restrict(X.vertices) if X is not None else a


def _f(X: Complex) -> list[int]:
    return list(f_vector(X)[1:])


def _basic_invariants(rep: Report, X: Complex) -> None:
    rep.inv("f_vector", _f(X))
    if X.is_pure() and X.dim >= 1:
        rep.inv("g_vector", list(g_vector(X)))
    rep.inv("betti_gf2", list(betti_gf2(X)))
    rep.inv("euler_characteristic", euler_characteristic(X))


def _manifold_checks(rep: Report, X: Complex, budget: int | None = None) -> None:
    pure = X.is_pure()
    rep.check("purity", pure, f"dimension {X.dim}")
    rep.check("connected", is_connected(X))
    if not pure or X.dim < 1:
        return
    rep.check("closed_pseudomanifold", is_closed_pseudomanifold(X))
    if X.dim == 2:
        rep.check("closed_surface", verify_closed_surface(X))
    elif X.dim == 3:
        ok = verify_closed_3manifold(X)
        rep.check("closed_3manifold", ok)
        if budget and ok and tuple(betti_gf2(X)) == (1, 0, 0, 1):
            rep.check("sphere", verify_3sphere(X, budget), "bistellar reduction")


def _equivariance_block(rep: Report, X: Complex, a: GroupAction) -> tuple[str, ...] | None:
    chk = is_equivariant(X, a)
    det = "" if chk else f"{chk.generator} maps {' '.join(chk.facet)} outside"
    rep.check("involutions_commute", True, f"group order {a.order}")
    if rep.check("equivariant", bool(chk), det) != "pass":
        return None
    orb = vertex_orbits(X, a)
    fixed = fixed_vertices(X, a)
    rep.inv("group_order", a.order)
    rep.inv("vertex_orbits", [list(c) for c in orb.classes])
    rep.inv("stabilizer_ranks", list(orb.stabilizer_ranks))
    rep.inv("fixed_vertices", list(fixed))
    rep.inv("fixed_vertex_degrees", {v: len(link(X, v).vertices) for v in fixed})
    rep.inv("facet_orbit_sizes", sorted(len(o) for o in facet_orbits(X, a)))
    rep.check("nonfixed_parity", nonfixed_parity_check(X, a),
              f"{len(X.vertices) - len(fixed)} non-fixed vertices")
    return fixed


def _known_flags(rep: Report, X: Complex, fixed: tuple[str, ...] | None) -> None:
    from .catalog import checksum
    from .catalog import _CHECKSUMS
    from .reference import k14_fixed_finding, rp3_g2_finding, sum17_finding

    if X.dim == 3 and tuple(betti_gf2(X)) == (1, 1, 1, 1) and verify_closed_3manifold(X):
        rep.finding(rp3_g2_finding(X))
    rep.finding(sum17_finding(X))
    if fixed is not None and checksum(X) == _CHECKSUMS["K14"]:
        rep.finding(k14_fixed_finding(fixed))


def _expect(rep: Report, X: Complex, expect: str | None) -> None:
    if expect:
        Y = load_complex(expect)
        same = X == Y
        detail = "facet sets equal" if same else f"{len(set(X.facets) ^ set(Y.facets))} facets differ"
        rep.check("expect", same, detail)


# --- commands -------------------------------------------------------------------


def cmd_check(a) -> Report:
    rep = Report("check", {"complex": a.complex, "action": a.action})
    X = load_complex(a.complex)
    rep.check("parse", True, f"{len(X.facets)} facets")
    _manifold_checks(rep, X, a.budget)
    _basic_invariants(rep, X)
    fixed = None
    if a.action:
        try:
            act = load_action(a.action, X)
        except EqtriError as exc:
            rep.check("equivariant", False, str(exc))
        else:
            fixed = _equivariance_block(rep, X, act)
    _known_flags(rep, X, fixed)
    _expect(rep, X, a.expect)
    return rep


def cmd_fvector(a) -> Report:
    rep = Report("fvector", {"complex": a.complex})
    X = load_complex(a.complex)
    rep.inv("f_vector", _f(X))
    if X.is_pure() and X.dim >= 1:
        rep.inv("g_vector", list(g_vector(X)))
    rep.inv("euler_characteristic", euler_characteristic(X))
    return rep


def cmd_homology(a) -> Report:
    rep = Report("homology", {"complex": a.complex})
    X = load_complex(a.complex)
    b = betti_gf2(X)
    rep.inv("betti_gf2", list(b))
    rep.inv("euler_characteristic", euler_characteristic(X))
    rep.check("betti_euler_consistent", b.euler_characteristic == euler_characteristic(X))
    return rep


def cmd_aut(a) -> Report:
    rep = Report("aut", {"complex": a.complex})
    X = load_complex(a.complex)
    G = automorphism_group(X)
    rep.inv("order", G.order)
    rep.inv("generators", [g.cycle_notation() for g in G.generators])
    return rep


def cmd_orbits(a) -> Report:
    rep = Report("orbits", {"complex": a.complex, "action": a.action})
    X = load_complex(a.complex)
    act = load_action(a.action, X)
    fixed = _equivariance_block(rep, X, act)
    if fixed is not None:
        rep.inv("facet_orbit_count", len(facet_orbits(X, act)))
    return rep


def _parse_psi(spec: str | None) -> dict[str, str] | None:
    if not spec:
        return None
    out = {}
    for item in spec.split(","):
        if "=" not in item:
            raise UsageError(f"psi entries look like x=y, got {item!r}")
        x, y = item.split("=", 1)
        out[x.strip()] = y.strip()
    return out


def _connect(rep: Report, K: Complex, L: Complex, u: str, v: str, *, psi=None, suffix="'",
             equivariant=False, aK=None, aL=None) -> Complex:
    from .surgery import (
        SumPlan,
        check_induced_link_condition,
        connected_sum,
        equivariant_connected_sum_result,
        g2_connected_sum_predicted,
        predicted_sum_f01,
    )

    plan = SumPlan(K, L, u, v, psi=psi, suffix=suffix)
    rep.inv("induced_link_condition", {"K": check_induced_link_condition(K, u),
                                       "L": check_induced_link_condition(L, v)})
    if equivariant:
        res = equivariant_connected_sum_result(plan, aK, aL)
    else:
        res = connected_sum(plan)
    S = res.complex
    rep.inv("link_isomorphisms", res.survivors)
    rep.inv("psi", res.psi)
    f0, f1 = predicted_sum_f01(K, L, u)
    fs = f_vector(S)
    rep.check("f0_identity", fs.f(0) == f0, f"predicted {f0}, computed {fs.f(0)}")
    rep.check("f1_identity", fs.f(1) == f1, f"predicted {f1}, computed {fs.f(1)}")
    g2p = g2_connected_sum_predicted(K, L, u)
    rep.check("g2_formula", g2p == g_vector(S).g2, f"predicted {g2p}, computed {g_vector(S).g2}")
    if res.action is not None:
        rep.check("equivariant", bool(is_equivariant(S, res.action)), f"group order {res.action.order}")
        rep.inv("fixed_vertices", list(fixed_vertices(S, res.action)))
    return S, res


def cmd_connect(a) -> Report:
    rep = Report("connect", {"K": a.K, "L": a.L, "u": a.u, "v": a.v, "equivariant": a.equivariant})
    K, L = load_complex(a.K), load_complex(a.L)
    aK = aL = None
    if a.equivariant:
        if not (a.action or a.action_k):
            raise UsageError("--equivariant needs --action (or --action-k and --action-l)")
        aK = load_action(a.action_k or a.action, K)
        aL = load_action(a.action_l or a.action, L)
    S, _ = _connect(rep, K, L, a.u, a.v, psi=_parse_psi(a.psi), suffix=a.suffix,
                    equivariant=a.equivariant, aK=aK, aL=aL)
    _manifold_checks(rep, S)
    _basic_invariants(rep, S)
    rep.finding(_sum17(S))
    _expect(rep, S, a.expect)
    if a.output:
        write_complex(S, a.output)
        rep.inv("output", str(a.output))
    return rep


def _sum17(S: Complex):
    from .reference import sum17_finding

    return sum17_finding(S)


def run_script(rep: Report, lines: list[tuple[int, str]], X: Complex | None, outdir: Path | None,
               base: Path) -> Complex:
    from .surgery import retriangulate_star

    steps = []
    for k, (n, line) in enumerate(lines, 1):
        op, *args = line.split()
        try:
            if op == "load":
                if len(args) != 1:
                    raise ParseError("load takes one argument", line=n)
                src = args[0]
                X = load_complex(src if src.startswith("fixture:") else str(base / src))
            elif op == "retriangulate":
                if len(args) != 3:
                    raise ParseError("retriangulate takes <w> <p> <q>", line=n)
                if X is None:
                    raise ParseError("no complex loaded", line=n)
                X = retriangulate_star(X, *args)
            elif op == "connect":
                if len(args) not in (3, 4):
                    raise ParseError("connect takes <fileL> <u> <v> [psi]", line=n)
                if X is None:
                    raise ParseError("no complex loaded", line=n)
                src = args[0]
                L = load_complex(src if src.startswith("fixture:") else str(base / src))
                sub = Report("connect", {})
                X, _ = _connect(sub, X, L, args[1], args[2],
                                psi=_parse_psi(args[3]) if len(args) == 4 else None)
            else:
                raise ParseError(f"unknown directive {op!r}", line=n)
        except (ParseError, UsageError):
            raise
        except EqtriError as exc:
            rep.check(f"step {k}: {line}", False, f"{type(exc).__name__}: {exc}")
            rep.inv("steps", steps)
            return None
        rep.check(f"step {k}: {line}", True, f"f = {tuple(_f(X))}")
        steps.append({"line": n, "directive": line, "f_vector": _f(X)})
        if outdir is not None:
            outdir.mkdir(parents=True, exist_ok=True)
            write_complex(X, outdir / f"step{k:02d}.facets")
    rep.inv("steps", steps)
    return X


def cmd_surgery(a) -> Report:
    rep = Report("surgery", {"script": a.script, "input": a.input})
    path = Path(a.script)
    if not path.exists():
        raise UsageError(f"no such file: {a.script}")
    text = path.read_text(encoding="utf-8")
    lines = [(n, l.split("#", 1)[0].strip()) for n, l in enumerate(text.split("\n"), 1)]
    lines = [(n, l) for n, l in lines if l]
    X = load_complex(a.input) if a.input else None
    outdir = Path(a.output_dir) if a.output_dir else None
    X = run_script(rep, lines, X, outdir, path.parent)
    if X is not None:
        _manifold_checks(rep, X)
        _basic_invariants(rep, X)
        _expect(rep, X, a.expect)
    return rep


def cmd_enumerate_spheres(a) -> Report:
    from .spheres import classify_8vertex_s3, is_octahedral, sphere_search, vertex_set_choices

    if not 2 <= a.n <= 4:
        raise UsageError("enumerate-spheres supports 2 <= n <= 4")
    rep = Report("enumerate-spheres", {"n": a.n, "support_filter": not a.no_support_filter})
    survivors, st = sphere_search(a.n, support_filter=not a.no_support_filter, jobs=a.jobs)
    rep.inv("survivors", len(survivors))
    rep.inv("isomorphism_classes", _iso_class_count([L.complex for L in survivors]))
    rep.inv("search", {k: v for k, v in vars(st).items() if k != "n"})
    rep.inv("support_patterns", [L.support_sizes() for L in survivors])
    rep.check("indeterminate_certifications", st.indeterminate == 0, f"{st.indeterminate} indeterminate")
    octa = [is_octahedral(L) for L in survivors]
    rep.check("all_octahedral", bool(survivors) and all(octa), f"{sum(octa)}/{len(survivors)} isomorphic to the cross-polytope")
    if not a.no_support_filter:
        rep.check("vertex_set_choices", st.patterns == vertex_set_choices(a.n),
                  f"{st.patterns} patterns, closed form {vertex_set_choices(a.n)}")
    if a.n == 4:
        types = [classify_8vertex_s3(L) for L in survivors]
        rep.inv("types", types)
        rep.check("types_classified", all(t in ("I", "II", "III") for t in types), ",".join(types))
    return rep


def _iso_class_count(cs: list[Complex]) -> int:
    from .core.iso import is_isomorphic

    reps: list[Complex] = []
    for X in cs:
        if not any(is_isomorphic(X, R) for R in reps):
            reps.append(X)
    return len(reps)


def cmd_quotient(a) -> Report:
    from .quotient import EmbeddedComplex, facet_orbit_count, quotient_triangulation

    rep = Report("quotient", {"complex": a.complex, "positions": a.positions, "orbits": a.orbits})
    X = load_complex(a.complex)
    if a.orbits:
        if not a.action:
            raise UsageError("--orbits needs --action")
        act = load_action(a.action, X)
        rep.check("equivariant", bool(is_equivariant(X, act)))
        rep.inv("facet_orbit_count", facet_orbit_count(X, act))
        rep.inv("group_order", act.order)
        return rep
    pos = None
    fid = _fixture_id(a.complex)
    if a.positions:
        pos = read_positions(a.positions)
    elif fid is not None:
        pos = load_fixture(fid).positions
    if pos is None:
        raise UsageError(
            f"{a.complex} has no embedding; pass --positions FILE, or use --orbits --action FILE "
            "to count facet orbits instead"
        )
    E = EmbeddedComplex(X, pos)
    Q = quotient_triangulation(E)
    rep.check("equivariant", E.is_equivariant())
    rep.check("triangulates_orthant", Q.orthant_volume == 1, f"normalized volume {Q.orthant_volume}")
    rep.check("cone_volume", Q.cone_volume_folded == Q.cone_volume_expected,
              f"{Q.cone_volume_folded} = {Q.cone_volume_expected}")
    rep.inv("quotient_facets", [list(f) for f in Q.complex.facets])
    rep.inv("quotient_positions", {t: [str(c) for c in p] for t, p in sorted(Q.positions.items())})
    rep.inv("facet_orbit_count", facet_orbit_count(X, E.action))
    if a.output:
        write_complex(Q.complex, a.output)
        Path(str(a.output) + ".pos").write_text(serialize_positions(Q.positions), encoding="utf-8")
    return rep


def cmd_catalog(a) -> Report:
    rep = Report("catalog", {"ids": a.ids, "output_dir": a.output_dir})
    ids = a.ids or list(FIXTURE_IDS)
    out = Path(a.output_dir) if a.output_dir else None
    listing = {}
    for fid in ids:
        try:
            fx = load_fixture(fid)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        listing[fid] = {"f_vector": _f(fx.complex), "action": fx.action is not None}
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{fid}.facets").write_text(serialize_complex(fx.complex, fx.notes or None), encoding="utf-8")
            if fx.action is not None:
                (out / f"{fid}.action").write_text(serialize_action(fx.action), encoding="utf-8")
            if fx.positions is not None:
                (out / f"{fid}.pos").write_text(serialize_positions(fx.positions), encoding="utf-8")
        rep.check(f"load {fid}", True, f"{len(fx.complex.facets)} facets, checksum verified")
    if out is not None:
        from .catalog import _data_text

        (out / "z2_3.action").write_text(_data_text("z2_3.action"), encoding="utf-8")
    rep.inv("fixtures", listing)
    return rep


def cmd_bounds(a) -> Report:
    from .reference import admissible_pair_findings
    from .spheres import lemma33_inequality, missing_edge_lower_bound, vertex_set_choices, support_patterns_bruteforce

    rep = Report("bounds", {})
    rep.inv("missing_edge_lower_bound", {k: missing_edge_lower_bound(k) for k in range(3, 7)})
    rep.check("facet_count_inequality", all(lemma33_inequality(n) for n in range(2, 21)), "2 <= n <= 20")
    for n in range(2, 7):
        bf = len(support_patterns_bruteforce(n))
        rep.check(f"vertex_set_choices({n})", bf == vertex_set_choices(n), f"closed form {vertex_set_choices(n)}, enumerated {bf}")
    for f in admissible_pair_findings():
        rep.finding(f)
    return rep


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    common.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    common.add_argument("--expect", metavar="FILE", help="compare the resulting complex with FILE")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="eqtri", description="Equivariant triangulation toolkit.")
    p.add_argument("--version", action="version", version=f"eqtri {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "closure, manifold, homology and equivariance checks")
    sp.add_argument("complex")
    sp.add_argument("--action")
    sp.add_argument("--budget", type=int, default=100_000, help="bistellar move budget for 3-spheres")
    for name, fn, h in [("fvector", cmd_fvector, "f- and g-vector"),
                        ("homology", cmd_homology, "GF(2) Betti numbers"),
                        ("aut", cmd_aut, "simplicial automorphism group")]:
        add(name, fn, h).add_argument("complex")
    sp = add("orbits", cmd_orbits, "vertex and facet orbits of an action")
    sp.add_argument("complex")
    sp.add_argument("--action", required=True)
    sp = add("surgery", cmd_surgery, "run a retriangulation / connected-sum script")
    sp.add_argument("script")
    sp.add_argument("--input", help="starting complex (or use a 'load' directive)")
    sp.add_argument("--output-dir")
    sp = add("connect", cmd_connect, "generalized star-connected sum")
    sp.add_argument("K")
    sp.add_argument("L")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--psi", help="explicit link isomorphism x=y,...")
    sp.add_argument("--suffix", default="'")
    sp.add_argument("--equivariant", action="store_true")
    sp.add_argument("--action", help="action file used for both sides")
    sp.add_argument("--action-k")
    sp.add_argument("--action-l")
    sp.add_argument("--output")
    sp = add("enumerate-spheres", cmd_enumerate_spheres, "exhaustive equivariant 2n-vertex sphere search")
    sp.add_argument("n", type=int)
    sp.add_argument("--no-support-filter", action="store_true")
    sp = add("quotient", cmd_quotient, "fold an embedded sphere into the orthant")
    sp.add_argument("complex")
    sp.add_argument("--positions")
    sp.add_argument("--orbits", action="store_true", help="count facet orbits instead of folding")
    sp.add_argument("--action")
    sp.add_argument("--output")
    sp = add("catalog", cmd_catalog, "list or emit shipped fixtures")
    sp.add_argument("ids", nargs="*")
    sp.add_argument("--output-dir")
    add("bounds", cmd_bounds, "numeric bound checks")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        rep = a.func(a)
    except (UsageError, ParseError) as exc:
        print(f"eqtri: error: {exc}", file=sys.stderr)
        return 2
    except EqtriError as exc:
        rep = Report(a.command, {})
        rep.check("error", False, f"{type(exc).__name__}: {exc}")
    data = rep.finish(timing=not a.no_timing)
    print(json.dumps(data, indent=2) if a.json else render_text(data))
    return {"pass": 0, "flagged": 0}.get(data["status"], 1)


if __name__ == "__main__":
    sys.exit(main())
