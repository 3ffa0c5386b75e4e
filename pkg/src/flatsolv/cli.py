"""Command line entry point: ``flatsolv <command> ...``.

Exit codes: 0 success, 1 verification diff, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import classify as cl
from .config import ClassifyConfig, SearchConfig
from .cyclotomic import angle_multisets
from .errors import CapExceeded, DimensionError, DomainError
from .intlinalg import INFINITE, IntMatrix, PolyParseError, charpoly, matrix_order, parse_poly, snf
from .similarity import ab_equivalence_classes, coker_psi, resultant
from .solvgroups import SigmaGroup, abelianization, holonomy, holonomy_elements


class InputError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    paths: tuple[Path, ...] = ()
    fmt: str = "markdown"
    bound: int = 3
    coker_cap: int = 10**6
    verbose: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bound < 1 or self.coker_cap < 1:
            raise InputError("bounds must be >= 1")
        for p in self.paths:
            if not Path(p).exists():
                raise InputError(f"{p}: no such file or directory")

    @property
    def search(self) -> SearchConfig:
        return SearchConfig(bound=self.bound, coker_cap=self.coker_cap)


def _read_json(path: Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})") from exc


def _read_matrix(path: Path) -> IntMatrix:
    obj = _read_json(path)
    try:
        return IntMatrix.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not an integer matrix ({exc})") from exc


def _read_sigma(path: Path) -> SigmaGroup:
    obj = _read_json(path)
    try:
        return SigmaGroup.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: not a sigma group description ({exc})") from exc


def _matrix_text(M: IntMatrix) -> str:
    return str(M)


def _emit(out, cfg: CliConfig, payload: dict, text: str) -> None:
    if cfg.fmt == "json":
        out.write(json.dumps(payload, indent=1) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# -- commands -------------------------------------------------------------------------------


def cmd_classify(cfg: CliConfig, out) -> int:
    ccfg = ClassifyConfig(
        dim=cfg.extra["dim"], family=cfg.extra["family"], search=cfg.search, diagnostics=cfg.verbose > 0
    )
    tables = cl.classify_dim6(ccfg)
    rows = [r for t in tables for r in t.rows]
    out.write(cl.emit_table(rows, cfg.fmt))
    bad = [r for r in rows if not r.matches()]
    for t in tables:
        if t.family == "splittable":
            print(f"# rejected by b1 parity: {len(t.rejected)}", file=sys.stderr)
    for r in bad:
        print(f"mismatch: {r.label}: holonomy {r.record.holonomy} (expected {r.expected_holonomy}), "
              f"abelianization {r.record.abelianization} (expected {r.expected_abelianization})", file=sys.stderr)
    return 1 if bad else 0


def cmd_snf(cfg: CliConfig, out) -> int:
    A = _read_matrix(cfg.paths[0])
    S, U, V = snf(A)
    diag = [S[i, i] for i in range(min(S.shape))]
    text = f"invariant factors: {diag}\nS =\n{S}\nU =\n{U}\nV =\n{V}"
    _emit(out, cfg, {"invariant_factors": diag, "S": S.tolist(), "U": U.tolist(), "V": V.tolist()}, text)
    return 0


def cmd_charpoly(cfg: CliConfig, out) -> int:
    p = charpoly(_read_matrix(cfg.paths[0]))
    _emit(out, cfg, {"charpoly": str(p), "coeffs": list(p.coeffs)}, str(p))
    return 0


def cmd_order(cfg: CliConfig, out) -> int:
    d = matrix_order(_read_matrix(cfg.paths[0]))
    text = "infinite" if d == INFINITE else str(d)
    _emit(out, cfg, {"order": None if d == INFINITE else d}, text)
    return 0


def cmd_abelianization(cfg: CliConfig, out) -> int:
    g = abelianization(_read_sigma(cfg.paths[0]))
    _emit(out, cfg, {"abelianization": g.to_json(), "betti1": g.free_rank}, str(g))
    return 0


def cmd_holonomy(cfg: CliConfig, out) -> int:
    s = _read_sigma(cfg.paths[0])
    g = holonomy(s)
    n = len(holonomy_elements(s))
    _emit(out, cfg, {"holonomy": g.to_json(), "order": n}, f"{g} (order {n})")
    return 0


def cmd_coker(cfg: CliConfig, out) -> int:
    A, B = _read_matrix(cfg.paths[0]), _read_matrix(cfg.paths[1])
    ck = coker_psi(A, B)
    elems = ck.elements(cfg.coker_cap)
    lines = [f"Coker psi = {ck.group} (order {ck.order})"] + [str(X.tolist()) for X in elems]
    _emit(out, cfg, {"group": ck.group.to_json(), "order": ck.order, "elements": [X.tolist() for X in elems]},
          "\n".join(lines))
    return 0


def _load_witnesses(path: Path, A: IntMatrix, B: IntMatrix):
    obj = _read_json(path)
    pairs = []
    entries = obj if isinstance(obj, list) else [obj]
    for e in entries:
        if "pairs" in e:
            if IntMatrix.from_json(e["A"]) == A and IntMatrix.from_json(e["B"]) == B:
                pairs.extend(e["pairs"])
        elif "P" in e:
            pairs.append(e)
    return [(IntMatrix.from_json(p["P"]), IntMatrix.from_json(p["Q"])) for p in pairs]


def cmd_equiv(cfg: CliConfig, out) -> int:
    A, B = _read_matrix(cfg.paths[0]), _read_matrix(cfg.paths[1])
    wit = _load_witnesses(cfg.extra["witnesses"], A, B) if cfg.extra.get("witnesses") else []
    cls = ab_equivalence_classes(A, B, wit, bound=cfg.bound, cap=cfg.coker_cap)
    lines = [f"Coker psi = {cls.coker}", f"classes: {cls.count} ({cls.status})"]
    for o in cls.orbits:
        lines.append(f"  {o.representative.tolist()}  size {len(o.members)}")
    for _, _, why in cls.rejected_witnesses:
        lines.append(f"  skipped witness: {why}")
    payload = {
        "coker": cls.coker.to_json(),
        "classes": cls.count,
        "status": cls.status,
        "modular_orbits": cls.modular_orbit_count,
        "modular_overapprox": cls.modular_overapprox,
        "representatives": [o.representative.tolist() for o in cls.orbits],
    }
    _emit(out, cfg, payload, "\n".join(lines))
    return 0


def cmd_resultant(cfg: CliConfig, out) -> int:
    p, q = parse_poly(cfg.extra["p"]), parse_poly(cfg.extra["q"])
    r = resultant(p, q)
    _emit(out, cfg, {"resultant": r}, str(r))
    return 0


def cmd_angles(cfg: CliConfig, out) -> int:
    n = cfg.extra["half_dim"]
    ms = angle_multisets(n, allow_pm_one=cfg.extra["allow_pm_one"])
    rows = []
    for m in ms:
        for spec in m.rotation_specs():
            rows.append({"indices": list(m.indices), "minus_one": m.minus_one, "spec": str(spec),
                         "charpoly": str(m.charpoly())})
    text = "\n".join(f"{r['spec']}\t{r['charpoly']}" for r in rows)
    _emit(out, cfg, {"count": len(rows), "multisets": rows}, text)
    return 0


def cmd_verify(cfg: CliConfig, out) -> int:
    problems = cl.verify_golden(cfg.paths[0])
    if problems:
        out.write("\n".join(problems) + "\n")
        return 1
    out.write("ok\n")
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "snf": cmd_snf,
    "charpoly": cmd_charpoly,
    "order": cmd_order,
    "abelianization": cmd_abelianization,
    "holonomy": cmd_holonomy,
    "coker": cmd_coker,
    "equiv": cmd_equiv,
    "resultant": cmd_resultant,
    "angles": cmd_angles,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flatsolv", description="Flat solvmanifold computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=cl.FORMATS, default="markdown")
    common.add_argument("--bound", type=int, default=3, help="centralizer search entry bound")
    common.add_argument("--coker-cap", type=int, default=10**6)
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="emit the dimension 6 tables")
    p.add_argument("--dim", type=int, default=6, choices=[6])
    p.add_argument("--family", choices=["almost-abelian", "splittable", "all"], default="all")
    for name in ("snf", "charpoly", "order"):
        sub.add_parser(name, parents=[common]).add_argument("file", type=Path)
    for name in ("abelianization", "holonomy"):
        sub.add_parser(name, parents=[common]).add_argument("sigma_file", type=Path)
    p = sub.add_parser("coker", parents=[common])
    p.add_argument("a_file", type=Path)
    p.add_argument("b_file", type=Path)
    p = sub.add_parser("equiv", parents=[common])
    p.add_argument("a_file", type=Path)
    p.add_argument("b_file", type=Path)
    p.add_argument("--witnesses", type=Path)
    p = sub.add_parser("resultant", parents=[common])
    p.add_argument("p")
    p.add_argument("q")
    p = sub.add_parser("angles", parents=[common])
    p.add_argument("--half-dim", type=int, required=True)
    p.add_argument("--allow-pm-one", action="store_true")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--golden", type=Path, required=True)
    return ap


def _config(ns: argparse.Namespace) -> CliConfig:
    paths = []
    for attr in ("file", "sigma_file", "a_file", "b_file", "golden"):
        if getattr(ns, attr, None) is not None:
            paths.append(getattr(ns, attr))
    extra = {k: getattr(ns, k) for k in ("dim", "family", "witnesses", "p", "q", "half_dim", "allow_pm_one")
             if hasattr(ns, k)}
    if extra.get("witnesses") is not None and not Path(extra["witnesses"]).exists():
        raise InputError(f"{extra['witnesses']}: no such file or directory")
    if extra.get("half_dim") is not None and extra["half_dim"] < 1:
        raise InputError("--half-dim must be >= 1")
    return CliConfig(ns.command, tuple(paths), ns.fmt, ns.bound, ns.coker_cap, ns.verbose, extra)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg, out)
    except (InputError, PolyParseError, DimensionError, DomainError, CapExceeded) as exc:
        print(f"flatsolv {ns.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
