"""Identity verification: quadrature left-hand sides against series right-hand sides."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from ._summation import SeriesValue, Status, clamp_tol
from .errors import DomainError
from .gammakit import delta_array, gamma_ratio
from .quad import MAX_NODES, QuadResult, beta_ratio, edward_integral, shifted_edward, theorem_lhs
from .series import MasterParams
from .wright import (
    PfqSpec,
    WrightSpec,
    hyp_pfq,
    theorem_rhs_pfq,
    theorem_rhs_wright,
    wright_psi,
)

MAX_GRID = 100_000
KEY_ORDER = ("lam", "mu", "a", "eta", "nu", "gamma", "delta", "p", "q", "n")
DEFAULT_POINT: dict[str, float] = {
    "lam": 2.0,
    "mu": 1.0,
    "a": 1.0,
    "eta": 1.0,
    "nu": 1.0,
    "gamma": 1.0,
    "delta": 1.0,
    "p": 1.0,
    "q": 1.0,
    "n": 0,
}
DEFAULT_GRID: dict[str, tuple[float, ...]] = {
    "lam": (0.75, 1.5, 2.5),
    "mu": (0.75, 1.5, 2.5),
    "a": (-2.0, -1.0, -0.25, 0.25, 1.0, 2.0),
    "eta": (1.0, 2.0),
    "p": (1.0, 2.0),
    "q": (1.0, 2.0),
    "gamma": (1.0, 2.5),
    "delta": (1.0, 2.5),
    "nu": (0.0, 0.5, 1.0),
}
QUAD_TOL = 1e-6
CLOSED_FORM_TOL = 1e-8
SERIES_TOL = 1e-10


class IdentityId(str, Enum):
    EDWARD = "EDWARD"
    TERMWISE = "TERMWISE"
    THM21_WRIGHT = "THM21_WRIGHT"
    THM21_PFQ = "THM21_PFQ"
    SC1 = "SC1"
    SC2 = "SC2"
    SC3 = "SC3"
    SC4 = "SC4"
    SC5 = "SC5"
    SC6 = "SC6"
    SC7 = "SC7"
    SC8 = "SC8"
    SC9 = "SC9"
    SC10 = "SC10"

    @classmethod
    def parse(cls, name: str | IdentityId) -> IdentityId:
        if isinstance(name, IdentityId):
            return name
        try:
            return cls(name.upper())
        except ValueError:
            raise DomainError(f"unknown identity {name!r}") from None

    @property
    def special_case(self) -> int | None:
        return int(self.value[2:]) if self.value.startswith("SC") else None


class Variant(str, Enum):
    CANONICAL = "Canonical"
    AS_PRINTED = "AsPrinted"

    @classmethod
    def parse(cls, name: str | Variant) -> Variant:
        if isinstance(name, Variant):
            return name
        key = name.replace("_", "").replace("-", "").lower()
        for v in cls:
            if v.value.lower() == key:
                return v
        raise DomainError(f"unknown variant {name!r}")


class Verdict(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"


_THEOREM_KEYS = ("lam", "mu", "a", "eta", "nu", "gamma", "delta", "p", "q")
# parameter values fixed by each special case; SC1..SC8 also shift nu -> nu - 1
PINS: dict[int, dict[str, float]] = {
    1: {},
    2: {},
    3: {"p": 1.0, "delta": 1.0},
    4: {"p": 1.0, "delta": 1.0},
    5: {"p": 1.0, "q": 1.0, "delta": 1.0},
    6: {"p": 1.0, "q": 1.0, "delta": 1.0},
    7: {"p": 1.0, "q": 1.0, "delta": 1.0, "gamma": 1.0},
    8: {"p": 1.0, "q": 1.0, "delta": 1.0, "gamma": 1.0},
    9: {"p": 1.0, "q": 1.0, "delta": 1.0, "gamma": 1.0, "nu": 0.0},
    10: {"p": 1.0, "q": 1.0, "delta": 1.0, "gamma": 1.0, "nu": 0.0},
}


def identity_keys(identity: IdentityId) -> tuple[str, ...]:
    """Free parameters of an identity, i.e. those a sweep grid varies."""
    if identity is IdentityId.EDWARD:
        return ("lam", "mu")
    if identity is IdentityId.TERMWISE:
        return ("lam", "mu", "n")
    sc = identity.special_case
    pinned = PINS[sc] if sc else {}
    return tuple(k for k in _THEOREM_KEYS if k not in pinned)


def default_tol(identity: IdentityId) -> float:
    if identity in (IdentityId.EDWARD, IdentityId.TERMWISE):
        return CLOSED_FORM_TOL
    return QUAD_TOL


@dataclass(frozen=True)
class IdentityReport:
    id: IdentityId
    variant: Variant
    params: dict[str, float]
    lhs: float
    rhs: float
    abs_diff: float
    rel_diff: float
    verdict: Verdict
    tol: float
    reason: str | None = None
    # "precondition" or "nonconvergence" for skipped points
    skip_kind: str | None = None

    def to_dict(self) -> dict:
        def num(x: float) -> float | None:
            return x if math.isfinite(x) else None

        return {
            "kind": "IdentityReport",
            "id": self.id.value,
            "variant": self.variant.value,
            "params": dict(self.params),
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "abs_diff": num(self.abs_diff),
            "rel_diff": num(self.rel_diff),
            "verdict": self.verdict.value,
            "tol": self.tol,
            "reason": self.reason,
            "skip_kind": self.skip_kind,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> IdentityReport:
        def num(x: float | None) -> float:
            return math.nan if x is None else float(x)

        return cls(
            IdentityId.parse(d["id"]),
            Variant.parse(d["variant"]),
            dict(d["params"]),
            num(d["lhs"]),
            num(d["rhs"]),
            num(d["abs_diff"]),
            num(d["rel_diff"]),
            Verdict(d["verdict"]),
            float(d["tol"]),
            d.get("reason"),
            d.get("skip_kind"),
        )


class _Skip(Exception):
    def __init__(self, reason: str, kind: str) -> None:
        super().__init__(reason)
        self.reason = reason
        self.kind = kind


def _series(result: SeriesValue, what: str) -> float:
    if result.status is Status.OUTSIDE_DOMAIN:
        raise _Skip(f"{what}: argument outside the convergence domain", "precondition")
    if result.status is not Status.CONVERGED:
        raise _Skip(f"{what}: series {result.status.value}", "nonconvergence")
    return result.value


def _quad(result: QuadResult, what: str) -> float:
    if not result.converged:
        raise _Skip(
            f"{what}: quadrature not converged at {result.nodes_per_axis} nodes "
            f"(estimate {result.error_estimate:.3g})",
            "nonconvergence",
        )
    return result.value


def resolve_point(identity: IdentityId, params: Mapping[str, float]) -> dict[str, float]:
    """Free parameters (given or defaulted) plus the identity's pinned values, in key order."""
    unknown = set(params) - set(KEY_ORDER)
    if unknown:
        raise DomainError(f"unknown parameters {sorted(unknown)}")
    sc = identity.special_case
    pinned = PINS[sc] if sc else {}
    point = {k: float(params.get(k, DEFAULT_POINT[k])) for k in identity_keys(identity)}
    point.update(pinned)
    if "n" in point:
        point["n"] = int(point["n"])
    return {k: point[k] for k in KEY_ORDER if k in point}


def _master(identity: IdentityId, pt: Mapping[str, float]) -> tuple[MasterParams, str]:
    sc = identity.special_case
    if sc is None:
        beta, form = pt["nu"] + 1.0, "J"
    elif sc <= 8:
        beta, form = pt["nu"], "E"
    else:
        beta, form = 1.0, "E"
    if not pt["q"] > 0:
        raise DomainError("the integral identity needs q > 0")
    mp = MasterParams(eta=pt["eta"], beta=beta, gamma=pt["gamma"], q=pt["q"], delta=pt["delta"], p=pt["p"])
    if not mp.margin > 0:
        raise DomainError(f"eta + p - q = {mp.margin} must be positive")
    return mp, form


def _printed_rhs(sc: int, mp: MasterParams, pt: Mapping[str, float], series_tol: float) -> float:
    """Right-hand side exactly as displayed for special case ``sc``."""
    lam, mu, a, eta = pt["lam"], pt["mu"], pt["a"], pt["eta"]
    # the displays write nu where the shifted offset sits; for SC9/SC10 nu itself is 0
    nu_printed = pt["nu"]
    if sc % 2:
        upper = [(mp.gamma, mp.q), (lam, 1.0), (mu, 1.0)]
        lower = [(eta, nu_printed)]
        if sc == 1:
            upper.append((1.0, 1.0))
            lower.append((mp.delta, mp.p))
        lower.append((lam + mu, 2.0))
        factor = gamma_ratio([mp.delta], [mp.gamma]).value()
        return factor * _series(wright_psi(WrightSpec(tuple(upper), tuple(lower)), a, series_tol), "printed RHS")

    eta_i, p_i, q_i = (int(x) if x == int(x) and x > 0 else None for x in (mp.eta, mp.p, mp.q))
    if eta_i is None or p_i is None or q_i is None:
        raise DomainError("the pFq form needs positive integer eta, p, q")
    upper: list[float] = [lam, mu]
    lower: list[float] = list(delta_array(eta_i, nu_printed))
    if sc in (2, 4, 6):
        upper = list(delta_array(q_i, mp.gamma)) + upper
    if sc == 2:
        upper.append(1.0)
        lower += list(delta_array(p_i, mp.delta))
    lower += list(delta_array(2, lam + mu))
    if sc == 10:
        prefactor = gamma_ratio([lam, mu], [lam + mu])
    else:
        prefactor = gamma_ratio([lam, mu], [nu_printed, lam + mu])
    scale = q_i**q_i / (4.0 * eta_i**eta_i * (p_i**p_i if sc == 2 else 1))
    return _series(hyp_pfq(PfqSpec(tuple(upper), tuple(lower), prefactor), a * scale, series_tol), "printed RHS")


def _evaluate(
    identity: IdentityId, variant: Variant, pt: Mapping[str, float], tol: float, max_nodes: int
) -> tuple[float, float]:
    quad_tol = clamp_tol(tol / 10)
    series_tol = clamp_tol(tol / 100)
    if variant is Variant.AS_PRINTED and identity.special_case is None:
        raise _Skip("no printed variant is evaluated for this identity", "precondition")

    if identity is IdentityId.EDWARD:
        lhs = _quad(edward_integral(pt["lam"], pt["mu"], quad_tol, max_nodes), "LHS")
        return lhs, beta_ratio(pt["lam"], pt["mu"])
    if identity is IdentityId.TERMWISE:
        n = int(pt["n"])
        lhs = _quad(shifted_edward(pt["lam"], pt["mu"], n, quad_tol, max_nodes), "LHS")
        return lhs, beta_ratio(pt["lam"] + n, pt["mu"] + n)

    mp, form = _master(identity, pt)
    lam, mu, a = pt["lam"], pt["mu"], pt["a"]
    sc = identity.special_case
    pfq_form = identity is IdentityId.THM21_PFQ or (sc is not None and sc % 2 == 0)
    # evaluate the cheap and precondition-heavy side first
    if variant is Variant.AS_PRINTED:
        rhs = _printed_rhs(sc, mp, pt, series_tol)
    elif pfq_form:
        rhs = _series(theorem_rhs_pfq(mp, lam, mu, a, series_tol, form), "RHS")
    else:
        rhs = _series(theorem_rhs_wright(mp, lam, mu, a, series_tol, form), "RHS")
    try:
        lhs = _quad(theorem_lhs(mp, lam, mu, a, form, quad_tol, max_nodes), "LHS")
    except ArithmeticError as exc:
        raise _Skip(f"LHS: {exc}", "nonconvergence") from None
    return lhs, rhs


def verify_identity(
    identity: IdentityId | str,
    params: Mapping[str, float],
    tol: float | None = None,
    variant: Variant | str = Variant.CANONICAL,
    max_nodes: int = MAX_NODES,
) -> IdentityReport:
    identity = IdentityId.parse(identity)
    variant = Variant.parse(variant)
    tol = default_tol(identity) if tol is None else float(tol)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    pt = resolve_point(identity, params)
    try:
        lhs, rhs = _evaluate(identity, variant, pt, tol, max_nodes)
    except _Skip as skip:
        return IdentityReport(
            identity, variant, pt, math.nan, math.nan, math.nan, math.nan, Verdict.SKIPPED, tol, skip.reason, skip.kind
        )
    except DomainError as exc:
        return IdentityReport(
            identity, variant, pt, math.nan, math.nan, math.nan, math.nan, Verdict.SKIPPED, tol, str(exc), "precondition"
        )
    abs_diff = abs(lhs - rhs)
    rel_diff = abs_diff / max(abs(lhs), abs(rhs), 1e-300)
    verdict = Verdict.PASS if rel_diff <= tol else Verdict.FAIL
    return IdentityReport(identity, variant, pt, lhs, rhs, abs_diff, rel_diff, verdict, tol)


def builder_agreement(mp: MasterParams, lam: float, mu: float, a: float, form: str = "J") -> float:
    """Relative difference between the Wright and pFq right-hand sides."""
    w = theorem_rhs_wright(mp, lam, mu, a, 1e-13, form)
    f = theorem_rhs_pfq(mp, lam, mu, a, 1e-13, form)
    if not (w.converged and f.converged):
        raise ArithmeticError(f"right-hand side did not converge: {w.status.value}, {f.status.value}")
    return abs(w.value - f.value) / max(abs(w.value), abs(f.value), 1e-300)


# ---------------------------------------------------------------- sweeps


@dataclass(frozen=True)
class SweepConfig:
    identities: tuple[IdentityId, ...] = tuple(IdentityId)
    grid: dict[str, tuple[float, ...]] = field(default_factory=lambda: dict(DEFAULT_GRID))
    tol: float | None = None
    variants: tuple[Variant, ...] = (Variant.CANONICAL,)
    max_nodes: int = MAX_NODES
    out: str | None = None
    jobs: int = 1

    @classmethod
    def from_dict(cls, d: Mapping) -> SweepConfig:
        known = {"identities", "grid", "tol", "variants", "max_nodes", "out", "jobs"}
        unknown = set(d) - known
        if unknown:
            raise DomainError(f"unknown config keys {sorted(unknown)}")
        grid = d.get("grid", "default")
        if grid == "default":
            grid = dict(DEFAULT_GRID)
        if not isinstance(grid, Mapping):
            raise DomainError("grid must be an object of value lists or \"default\"")
        bad = set(grid) - set(KEY_ORDER)
        if bad:
            raise DomainError(f"unknown grid parameters {sorted(bad)}")
        for key, values in grid.items():
            if not isinstance(values, list | tuple) or not values:
                raise DomainError(f"grid entry {key!r} must be a non-empty list")
            for v in values:
                if isinstance(v, bool) or not isinstance(v, int | float) or not math.isfinite(v):
                    raise DomainError(f"grid entry {key!r} holds a non-numeric value {v!r}")
        identities = d.get("identities", [i.value for i in IdentityId])
        if isinstance(identities, str):
            identities = [i.value for i in IdentityId] if identities == "all" else [identities]
        tol = d.get("tol")
        if tol is not None and not (isinstance(tol, int | float) and tol > 0):
            raise DomainError(f"tol must be a positive number, got {tol!r}")
        max_nodes = int(d.get("max_nodes", MAX_NODES))
        if max_nodes < 64 or max_nodes > 512:
            raise DomainError("max_nodes must lie in [64, 512]")
        return cls(
            identities=tuple(IdentityId.parse(i) for i in identities),
            grid={k: tuple(float(v) for v in vals) for k, vals in grid.items()},
            tol=None if tol is None else float(tol),
            variants=tuple(Variant.parse(v) for v in d.get("variants", ["Canonical"])),
            max_nodes=max_nodes,
            out=d.get("out"),
            jobs=int(d.get("jobs", 1)),
        )


@dataclass(frozen=True)
class Task:
    identity: IdentityId
    variant: Variant
    params: dict[str, float]
    tol: float | None
    max_nodes: int


def expand(config: SweepConfig) -> list[Task]:
    """Grid points in deterministic order: identity, variant, then lexicographic grid order."""
    tasks: list[Task] = []
    for identity in config.identities:
        keys = identity_keys(identity)
        axes = [config.grid.get(k, (DEFAULT_POINT[k],)) for k in keys]
        size = math.prod(len(a) for a in axes)
        variants = [v for v in config.variants if v is Variant.CANONICAL or identity.special_case]
        if len(tasks) + size * len(variants) > MAX_GRID:
            raise DomainError(f"sweep exceeds {MAX_GRID} points")
        for variant in variants:
            for values in itertools.product(*axes):
                tasks.append(Task(identity, variant, dict(zip(keys, values)), config.tol, config.max_nodes))
    return tasks


def _run_task(task: Task) -> IdentityReport:
    return verify_identity(task.identity, task.params, task.tol, task.variant, task.max_nodes)


@dataclass
class SweepResult:
    reports: list[IdentityReport]
    summary: dict

    def to_dict(self) -> dict:
        return {"summary": self.summary, "reports": [r.to_dict() for r in self.reports]}


def sweep(config: SweepConfig) -> SweepResult:
    tasks = expand(config)
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_task, tasks, chunksize=64))
    else:
        reports = [_run_task(t) for t in tasks]
    result = SweepResult(reports, summarize(reports))
    if config.out:
        write_json(result, config.out)
    return result


def summarize(reports: Iterable[IdentityReport]) -> dict:
    reports = list(reports)
    counts: dict[str, dict[str, dict[str, int]]] = {}
    totals = {v.value: 0 for v in Verdict}
    for r in reports:
        slot = counts.setdefault(r.id.value, {}).setdefault(r.variant.value, {v.value: 0 for v in Verdict})
        slot[r.verdict.value] += 1
        totals[r.verdict.value] += 1
    summary: dict = {"total": len(reports), "verdicts": totals, "by_identity": counts}
    ledger = typo_ledger(reports)
    if ledger:
        summary["typo_ledger"] = ledger
    return summary


def _point_key(r: IdentityReport) -> tuple:
    return (r.id, tuple(sorted(r.params.items())))


def typo_ledger(reports: Iterable[IdentityReport], examples: int = 5) -> dict:
    """Per special case: how the printed right-hand side fares against the quadrature."""
    reports = list(reports)
    canonical = {_point_key(r): r for r in reports if r.variant is Variant.CANONICAL}
    ledger: dict[str, dict] = {}
    for r in reports:
        if r.variant is not Variant.AS_PRINTED:
            continue
        entry = ledger.setdefault(
            r.id.value,
            {"points": 0, "canonical_pass": 0, "printed_pass": 0, "printed_fail": 0,
             "printed_skipped": 0, "divergent": 0, "divergent_examples": [], "skip_reasons": []},
        )
        entry["points"] += 1
        entry["printed_" + r.verdict.value.lower()] += 1
        c = canonical.get(_point_key(r))
        if c is not None and c.verdict is Verdict.PASS:
            entry["canonical_pass"] += 1
            if r.verdict is not Verdict.PASS:
                entry["divergent"] += 1
                if len(entry["divergent_examples"]) < examples:
                    entry["divergent_examples"].append(
                        {"params": r.params, "lhs": c.lhs, "canonical_rhs": c.rhs,
                         "printed_rhs": r.rhs if math.isfinite(r.rhs) else None,
                         "printed_verdict": r.verdict.value}
                    )
        if r.reason and r.reason not in entry["skip_reasons"]:
            entry["skip_reasons"].append(r.reason)
    for entry in ledger.values():
        entry["printed_passes_everywhere"] = entry["printed_pass"] == entry["points"]
    return ledger


# ---------------------------------------------------------------- report files


def write_json(result: SweepResult, path: str | Path) -> None:
    Path(path).write_text(json.dumps(result.to_dict(), indent=1) + "\n", encoding="utf-8")


def load_json(path: str | Path) -> SweepResult:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, list):
        reports = [IdentityReport.from_dict(d) for d in data]
        return SweepResult(reports, summarize(reports))
    reports = [IdentityReport.from_dict(d) for d in data["reports"]]
    return SweepResult(reports, data.get("summary") or summarize(reports))


def _fmt(x: float) -> str:
    return "" if not math.isfinite(x) else format(x, ".17g")


def to_csv(reports: Iterable[IdentityReport]) -> str:
    reports = list(reports)
    keys = [k for k in KEY_ORDER if any(k in r.params for r in reports)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "variant", *keys, "lhs", "rhs", "rel_diff", "verdict"])
    for r in reports:
        writer.writerow(
            [r.id.value, r.variant.value, *(_fmt(r.params[k]) if k in r.params else "" for k in keys),
             _fmt(r.lhs), _fmt(r.rhs), _fmt(r.rel_diff), r.verdict.value]
        )
    return buf.getvalue()
