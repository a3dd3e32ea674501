"""Command-line harness emitting one JSON report per check.

Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 usage error,
3 internal hard error (for example central characters that fail to separate).
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from . import acceptance, eulerbwb, springer, weylalg
from . import rootdata as rdm
from .envalg import (
    CentralSeparationError,
    RestrictedLie,
    baby_verma,
    dimension_polynomial,
    kw_check,
    pchar,
    simples_in_block,
    translate,
)
from .fplinalg import spin

SCHEMA = "modlie.report/1"
log = logging.getLogger("modlie")


class UsageError(Exception):
    pass


@dataclass
class Report:
    subcommand: str
    check: str
    inputs: dict
    outputs: dict
    verdicts: list[dict]
    anchor: str
    seed: int
    timing: float | None = None
    schema: str = SCHEMA

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.verdicts)

    def to_json(self) -> str:
        if not self.verdicts:
            raise ValueError("a report needs at least one verdict")
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))


@dataclass
class RunConfig:
    series_rank: str = "A1"
    p: int = 5
    partition: tuple[int, ...] | None = None
    lam: tuple[int, ...] | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def rd(self):
        return rdm.root_datum(self.series_rank)


# ---------------------------------------------------------------- parsing


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _config(args) -> RunConfig:
    cfg = RunConfig(seed=args.seed)
    if getattr(args, "type", None) is not None:
        try:
            rd = rdm.root_datum(args.type)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        cfg.series_rank = rd.label
    rd = cfg.rd
    if getattr(args, "p", None) is not None:
        if not _is_prime(args.p):
            raise UsageError(f"p={args.p} is not prime")
        if args.p <= rd.coxeter_number:
            raise UsageError(f"need p > h = {rd.coxeter_number} for {rd.label}")
        cfg.p = args.p
    if getattr(args, "chi", None) is not None:
        part = springer.partition(_ints(args.chi)) if _ints(args.chi) else None
        if part is None or sum(part) != rd.n:
            raise UsageError(f"partition must sum to {rd.n} for {rd.label}")
        cfg.partition = part
    if getattr(args, "lam", None) is not None:
        lam = _ints(args.lam)
        if len(lam) != rd.rank:
            raise UsageError(f"weight must have {rd.rank} coordinates")
        cfg.lam = lam
    return cfg


def _seed_default() -> int:
    env = os.environ.get("MODLIE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MODLIE_SEED={env!r} is not an integer")


def _verdicts(pairs: Iterable[tuple[str, bool]]) -> list[dict]:
    return [{"name": n, "pass": bool(ok)} for n, ok in pairs]


def _w(x) -> list[int]:
    return [int(a) for a in x]


# ------------------------------------------------------------ subcommands


def cmd_simples(cfg: RunConfig, args) -> list[Report]:
    lie = RestrictedLie(cfg.rd.n, cfg.p)
    chi = pchar(cfg.partition or (1,) * cfg.rd.n, cfg.p)
    lam = cfg.lam or (0,) * cfg.rd.rank
    rep = simples_in_block(lie, chi, lam, cfg.seed)
    outputs = {
        "count": rep.count,
        "springer_prediction": rep.springer_prediction,
        "linkage_class": [_w(w) for w in rep.linkage_class],
        "simples": [{"dim": s.dim, "highest_weights": [_w(w) for w in s.highest_weights]} for s in rep.simples],
    }
    verdicts = [(f"count == springer prediction {rep.springer_prediction}", rep.count_matches)]
    verdicts += [("highest weights lie in the linkage class", rep.highest_weight_set <= set(rep.linkage_class))]
    return [Report("simples", "block-count", _inputs(cfg, chi=chi.partition, lam=lam), outputs,
                   _verdicts(verdicts), "simples per regular block = Springer fiber cohomology", cfg.seed)]


def cmd_kw(cfg: RunConfig, args) -> list[Report]:
    lie = RestrictedLie(cfg.rd.n, cfg.p)
    chi = pchar(cfg.partition or (cfg.rd.n,), cfg.p)
    lam = cfg.lam or (0,) * cfg.rd.rank
    rep = simples_in_block(lie, chi, lam, cfg.seed)
    verdicts = [(f"{cfg.p}^{rep.kw_codim} divides dim {s.dim}", kw_check(s.module, chi)) for s in rep.simples]
    return [Report("kw", "kac-weisfeiler", _inputs(cfg, chi=chi.partition, lam=lam),
                   {"codim": rep.kw_codim, "dims": rep.dims}, _verdicts(verdicts),
                   "Kac-Weisfeiler divisibility", cfg.seed)]


def _modules_for(cfg: RunConfig, which: str, lie, chi, lam):
    if which == "verma":
        return [("Z", baby_verma(lie, chi, lam))]
    rep = simples_in_block(lie, chi, lam, cfg.seed)
    return [(s.module.name, s.module) for s in rep.simples]


def cmd_dimpoly(cfg: RunConfig, args) -> list[Report]:
    lie = RestrictedLie(cfg.rd.n, cfg.p)
    chi = pchar(cfg.partition or (1,) * cfg.rd.n, cfg.p)
    lam = cfg.lam or (0,) * cfg.rd.rank
    out = []
    for name, M in _modules_for(cfg, args.module, lie, chi, lam):
        dp = dimension_polynomial(lie, chi, lam, M)
        outputs = {
            "module": name,
            "samples": [[_w(mu), v] for mu, v in dp.samples],
            "d": dp.d.to_json(),
            "d0": dp.d0.to_json(),
            "degree": dp.degree,
        }
        verdicts = [
            (f"degree <= dim B_chi = {dp.degree_bound}", dp.within_degree_bound),
            ("R d0 has integer coefficients", dp.denominators_ok),
            ("d0 integral on the test grid", dp.integral_on_grid),
        ]
        out.append(Report("dimpoly", f"dimension-polynomial:{name}", _inputs(cfg, chi=chi.partition, lam=lam),
                          outputs, _verdicts(verdicts), "translation dimension polynomial", cfg.seed))
    return out


def cmd_translate(cfg: RunConfig, args) -> list[Report]:
    lie = RestrictedLie(cfg.rd.n, cfg.p)
    chi = pchar(cfg.partition or (1,) * cfg.rd.n, cfg.p)
    lam = cfg.lam or (0,) * cfg.rd.rank
    mu = _ints(args.mu)
    if len(mu) != cfg.rd.rank:
        raise UsageError(f"mu must have {cfg.rd.rank} coordinates")
    out = []
    for name, M in _modules_for(cfg, args.module, lie, chi, lam):
        T = translate(lie, M, lam, mu)
        verdicts = [("Kac-Weisfeiler divisibility of the result", kw_check(T, chi))]
        if args.expect is not None:
            verdicts.append((f"dim == {args.expect}", T.dim == args.expect))
        out.append(Report("translate", f"translation:{name}", _inputs(cfg, chi=chi.partition, lam=lam, mu=mu),
                          {"module": name, "source_dim": M.dim, "dim": T.dim}, _verdicts(verdicts),
                          "translation functor T_lam^mu", cfg.seed))
    return out


def cmd_springer(cfg: RunConfig, args) -> list[Report]:
    lam = springer.partition(_ints(args.partition))
    if sum(lam) > springer.MAX_N:
        raise UsageError(f"point counting supports n <= {springer.MAX_N}")
    fit = springer.poincare_fit(lam)
    total = springer.cohomology_total_dim(lam)
    outputs = {
        "poincare": fit.pretty(),
        "coefficients": list(fit.coefficients),
        "samples": [list(s) for s in fit.samples],
        "total": total,
        "dim": springer.springer_fiber_dim(lam),
    }
    verdicts = [
        ("coefficients nonnegative", all(c >= 0 for c in fit.coefficients)),
        ("degree == springer fiber dimension", fit.degree == springer.springer_fiber_dim(lam)),
        ("total == multinomial", total == springer.multinomial(lam)),
    ]
    return [Report("springer", "point-count", {"partition": list(lam)}, outputs, _verdicts(verdicts),
                   "Springer fiber cohomology via point counts", cfg.seed)]


def cmd_bwb(cfg: RunConfig, args) -> list[Report]:
    rd = cfg.rd
    lam = cfg.lam or (0,) * rd.rank
    res = eulerbwb.bwb(rd, lam)
    coh = eulerbwb.line_cohomology(rd, lam)
    euler = eulerbwb.weyl_euler_char(rd, lam)
    outputs = {"cohomology": {str(k): v for k, v in coh.items()}, "euler": euler}
    if isinstance(res, eulerbwb.BWB):
        outputs.update(degree=res.degree, dominant=_w(res.dominant))
    verdicts = [
        ("alternating sum == Weyl Euler characteristic", sum((-1) ** d * v for d, v in coh.items()) == euler),
        ("Serre duality", eulerbwb.serre_check(rd, lam)),
    ]
    return [Report("bwb", "borel-weil-bott", _inputs(cfg, lam=lam), outputs, _verdicts(verdicts),
                   "Borel-Weil-Bott", cfg.seed)]


def cmd_weylalg(cfg: RunConfig, args) -> list[Report]:
    n, p = args.n, args.p_weyl
    if not _is_prime(p):
        raise UsageError(f"p={p} is not prime")
    omega = _ints(args.omega) if args.omega else (0,) * n
    point = _ints(args.point) if args.point else (0,) * n
    if len(omega) != n or len(point) != n:
        raise UsageError(f"point and omega need {n} coordinates")
    pt = weylalg.PointData(p, point, omega)
    mod = weylalg.point_module(pt)
    import numpy as np

    rng = np.random.default_rng(cfg.seed)
    v = rng.integers(0, p, mod.dim)
    if not v.any():
        v[0] = 1
    irreducible = len(spin(mod, v)) == mod.dim
    rank_ok = weylalg.verify_matrix_algebra(pt)
    dp = [weylalg.element_matrix(mod, weylalg.WeylAlgElement.d(p, n, i, p)) for i in range(1, n + 1)]
    scalar = all(
        np.array_equal(m, pow(pt.omega[i], p, p) * np.eye(mod.dim, dtype=np.int64) % p) for i, m in enumerate(dp)
    )
    verdicts = [
        (f"action of x^J d^I has rank p^{2 * n}", rank_ok),
        ("random vector spins to the whole module", irreducible),
        ("d_i^p acts by omega_i^p", scalar),
    ]
    return [Report("weylalg", "point-module", {"n": n, "p": p, "point": list(pt.a), "omega": list(pt.omega)},
                   {"dim": mod.dim}, _verdicts(verdicts), "central reduction at a point is a matrix algebra",
                   cfg.seed)]


def cmd_frobid(cfg: RunConfig, args) -> list[Report]:
    rd = cfg.rd
    if cfg.lam is not None:
        weights = [cfg.lam]
    else:
        weights = list(itertools.product(range(-2, 3), repeat=rd.rank))
    verdicts = [(f"nu={w}", eulerbwb.frobenius_identity_check(rd, w, cfg.p)) for w in weights]
    return [Report("frobid", "frobenius-identity", _inputs(cfg, weights=[_w(w) for w in weights]),
                   {"checked": len(weights)}, _verdicts(verdicts), "Frobenius scaling of Euler polynomials",
                   cfg.seed)]


def cmd_suite(cfg: RunConfig, args) -> list[Report]:
    reports = []
    for k in range(1, len(acceptance.CRITERIA) + 1):
        res = acceptance.run_criterion(k, cfg.seed)
        log.info(res.line())
        reports.append(Report("suite", f"criterion-{k:02d}", {"level": args.level}, _jsonable(res.details),
                              _verdicts(res.checks), res.anchor, cfg.seed, timing=round(res.seconds, 3)))
    return reports


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=lambda o: list(o) if isinstance(o, tuple) else str(o)))


def _inputs(cfg: RunConfig, **kw) -> dict:
    out = {"type": cfg.series_rank, "p": cfg.p}
    for k, v in kw.items():
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


COMMANDS: dict[str, Callable] = {
    "simples": cmd_simples,
    "kw": cmd_kw,
    "dimpoly": cmd_dimpoly,
    "translate": cmd_translate,
    "springer": cmd_springer,
    "bwb": cmd_bwb,
    "weylalg": cmd_weylalg,
    "frobid": cmd_frobid,
    "suite": cmd_suite,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $MODLIE_SEED or 0)")
    common.add_argument("--out", help="also write the reports to this file")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock timings from reports")
    common.add_argument("--log-level", default="WARNING")

    algebra = _Parser(add_help=False)
    algebra.add_argument("--type", default="A1", help="root datum, A1 or A2 (A_n works in principle)")
    algebra.add_argument("--p", type=int, default=5)
    algebra.add_argument("--chi", help="partition for the p-character, e.g. 2,1")
    algebra.add_argument("--lambda", dest="lam", help="weight in fundamental coordinates; use --lambda=-1,0 for negatives")

    parser = _Parser(prog="modlie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("simples", parents=[common, algebra], help="enumerate simples in a block")
    sub.add_parser("kw", parents=[common, algebra], help="Kac-Weisfeiler divisibility of simples")
    dp = sub.add_parser("dimpoly", parents=[common, algebra], help="dimension polynomial of translation")
    dp.add_argument("--module", choices=["verma", "simples"], default="verma")
    tr = sub.add_parser("translate", parents=[common, algebra], help="translation functor dimension")
    tr.add_argument("--mu", required=True)
    tr.add_argument("--module", choices=["verma", "simples"], default="verma")
    tr.add_argument("--expect", type=int)
    sp = sub.add_parser("springer", parents=[common], help="Springer fiber point counts")
    sp.add_argument("--partition", required=True)
    sub.add_parser("bwb", parents=[common, algebra], help="Borel-Weil-Bott for a line bundle")
    wa = sub.add_parser("weylalg", parents=[common], help="point modules of the Weyl algebra")
    wa.add_argument("--n", type=int, default=1)
    wa.add_argument("--p", dest="p_weyl", type=int, default=3)
    wa.add_argument("--omega")
    wa.add_argument("--point")
    sub.add_parser("frobid", parents=[common, algebra], help="Frobenius scaling identity")
    su = sub.add_parser("suite", parents=[common], help="run every acceptance criterion")
    su.add_argument("--level", choices=["desk"], default="desk")
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(message)s")
        if args.seed is None:
            args.seed = _seed_default()
        cfg = _config(args)
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    try:
        t0 = time.perf_counter()
        reports = COMMANDS[args.command](cfg, args)
        elapsed = time.perf_counter() - t0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CentralSeparationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except weylalg.DegreeCapError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        # rejected preconditions such as a singular weight
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, AssertionError, RuntimeError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3

    reports.sort(key=lambda r: r.check)
    lines = []
    for r in reports:
        if args.no_timing:
            r.timing = None
        elif r.timing is None:
            r.timing = round(elapsed / len(reports), 3)
        lines.append(r.to_json())
    for line in lines:
        print(line, file=stdout)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
