"""Named check suites, run configuration and the acceptance profile."""

from __future__ import annotations

import ast
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..exactalg import IM, RatFunc, alpha, q, x, y, z
from .cache import BlockCache
from .report import ARITH, FAIL, PASS, CheckReport

MODES = ("exact", "randomized")
FORMATS = ("json", "latex", "text")
PROFILES = ("acceptance", "quick")


class ConfigError(ValueError):
    """Invalid run configuration; raised before any computation starts."""


# ---------------------------------------------------------------------------
# parameter values typed on the command line: q^2, -i*q, (1+q)/(1-z)

_NAMES = {"q": q, "z": z, "x": x, "y": y, "i": IM}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_value(text: str) -> RatFunc:
    """Rational function from a short arithmetic expression in q, z, x, y, i."""
    try:
        tree = ast.parse(str(text).replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse value {text!r}") from exc

    def ev(node) -> RatFunc:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return RatFunc(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if isinstance(exp, ast.Constant) and isinstance(exp.value, int):
                return ev(node.left) ** (sign * exp.value)
        raise ConfigError(f"unsupported expression in {text!r}")

    return ev(tree)


def parse_pair(text) -> Tuple[int, int]:
    if isinstance(text, (tuple, list)):
        parts = list(text)
    else:
        parts = [p for p in str(text).replace(" ", "").split(",") if p]
    try:
        a, b = (int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"expected a pair like 1,2, got {text!r}") from exc
    return a, b


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class Suite:
    name: str
    runner: Callable[..., List[CheckReport]]
    defaults: Dict[str, Any]
    cutoffs: Tuple[str, ...] = ()
    choices: Dict[str, Tuple] = field(default_factory=dict)


def _examples() -> List[CheckReport]:
    from .reference import check_examples
    return [check_examples()]


def _tetra(max_charge):
    from ..threedim import check_tetrahedron
    return [check_tetrahedron(max_charge)]


def _rlll(max_level):
    from ..threedim import check_RLLL
    return [check_RLLL(max_level)]


def _boundary(s, cutoff, side):
    from ..threedim import check_boundary_eigen
    sides = ("ket", "bra") if side == "both" else (side,)
    return [check_boundary_eigen(s, cutoff, sd) for sd in sides]


def _closed_form(st, max_degree, z_order):
    from ..reduction import check_closed_form
    return [check_closed_form(parse_pair(st), max_degree, z_order)]


def _relation_21_12(max_degree, w_order):
    from ..reduction import check_21_12_relation
    return [check_21_12_relation(max_degree, w_order)]


def _ybe(st, max_degree, printed):
    from ..reduction import check_ybe
    return [check_ybe(parse_pair(st), max_degree, printed)]


def _qaffine_args(kind, param, q_base):
    from ..qaffine import A11
    if kind.upper() != A11:
        return ()
    p = parse_value(param) if param is not None else alpha
    Q = parse_value(q_base) if q_base is not None else q
    return (Q, p, p)


def _module_relations(kind, max_level, param):
    from ..qaffine import A11, ModuleAction, verify_module_relations
    if kind.upper() == A11:
        p = parse_value(param) if param is not None else alpha
        return [verify_module_relations(ModuleAction(A11, q, p), max_level)]
    return [verify_module_relations(ModuleAction(kind.upper()), max_level)]


def _intertwiner(kind, max_degree, param, q_base):
    from ..qaffine import check_intertwiner
    return [check_intertwiner(kind.upper(), max_degree, *_qaffine_args(kind, param, q_base))]


def _spectral(kind, max_degree, param, q_base):
    from ..qaffine import check_block_structure, check_eigenvectors, check_intertwiner, check_inversion
    args = _qaffine_args(kind, param, q_base)
    return [fn(kind.upper(), max_degree, *args)
            for fn in (check_intertwiner, check_inversion, check_block_structure, check_eigenvectors)]


def _quantum_ybe(kind, max_degree, param, q_base):
    from ..qaffine import check_qybe
    args = _qaffine_args(kind, param, q_base)
    if args:
        args = args + (args[1],)
    return [check_qybe(kind.upper(), max_degree, *args)]


def _theorem(part, max_degree):
    from ..identify import check_theorem_i, check_theorem_ii, check_theorem_iii
    return [{"i": check_theorem_i, "ii": check_theorem_ii, "iii": check_theorem_iii}[part](max_degree)]


def _corollary(max_d, max_d22):
    from ..identify import check_corollary
    from .reference import check_printed_m22_2_spectrum
    return [check_corollary(max_d, max_d22), check_printed_m22_2_spectrum()]


def _rtr01(z_order, max_d, gauge):
    from ..mixed import check_rtr01_closed
    return [check_rtr01_closed(z_order, max_d, gauge)]


def _ffr_ybe(powers):
    from ..mixed import check_ffR_ybe
    return [check_ffR_ybe(tuple(powers))]


def _gen_ybe(family, eps, z_order, max_sector, st, gauge):
    from ..mixed import check_theorem_gen
    s, t = parse_pair(st)
    return [check_theorem_gen(family, eps, z_order, max_sector, s=s, t=t, gauge=gauge)]


_KINDS = ("a11", "a22")
_QA = {"kind": _KINDS}
SUITES: Dict[str, Suite] = {s.name: s for s in [
    Suite("examples", _examples, {}),
    Suite("tetra", _tetra, {"max_charge": 2}, ("max_charge",)),
    Suite("rlll", _rlll, {"max_level": 2}, ("max_level",)),
    Suite("boundary", _boundary, {"s": 1, "cutoff": 3, "side": "both"}, ("cutoff",),
          {"s": (1, 2), "side": ("ket", "bra", "both")}),
    Suite("closed-form", _closed_form, {"st": "1,1", "max_degree": 2, "z_order": 6}, ("max_degree", "z_order")),
    Suite("relation-21-12", _relation_21_12, {"max_degree": 2, "w_order": 6}, ("max_degree", "w_order")),
    Suite("ybe", _ybe, {"st": "1,1", "max_degree": 2, "printed": False}, ("max_degree",)),
    Suite("module-relations", _module_relations, {"kind": "a11", "max_level": 4, "param": None}, ("max_level",), _QA),
    Suite("intertwiner", _intertwiner, {"kind": "a11", "max_degree": 2, "param": "q", "q_base": None},
          ("max_degree",), _QA),
    Suite("spectral", _spectral, {"kind": "a11", "max_degree": 2, "param": "q", "q_base": None},
          ("max_degree",), _QA),
    Suite("quantum-ybe", _quantum_ybe, {"kind": "a22", "max_degree": 2, "param": "q", "q_base": None},
          ("max_degree",), _QA),
    Suite("theorem", _theorem, {"part": "i", "max_degree": 3}, ("max_degree",), {"part": ("i", "ii", "iii")}),
    Suite("corollary", _corollary, {"max_d": 3, "max_d22": 2}, ("max_d", "max_d22")),
    Suite("rtr01", _rtr01, {"z_order": 10, "max_d": 3, "gauge": "printed"}, ("z_order", "max_d"),
          {"gauge": ("printed", "corrected")}),
    Suite("ffr-ybe", _ffr_ybe, {"powers": (1, 2, 3)}),
    Suite("gen-ybe", _gen_ybe, {"family": "tr", "eps": "0,1", "z_order": 4, "max_sector": 2, "st": "1,1",
                                "gauge": False}, ("z_order", "max_sector"), {"family": ("tr", "st")}),
]}


# ---------------------------------------------------------------------------
# acceptance profile

Task = Tuple[str, Dict[str, Any]]


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    tasks: Tuple[Task, ...]


def _acceptance() -> List[Criterion]:
    closed = ("1,1", "2,2", "1,2")
    spectral = [("spectral", {"kind": "a11", "max_degree": 4, "param": p}) for p in ("-i*q", "q", "q^2")]
    gen = [("gen-ybe", {"family": "tr", "eps": e, "z_order": 4}) for e in ("0", "1", "0,1", "1,1", "0,0")]
    gen += [("gen-ybe", {"family": "st", "eps": "0", "z_order": 4, "st": st}) for st in ("1,1", "1,2", "2,1", "2,2")]
    return [
        Criterion(1, "example matrices reproduced", (("examples", {}),)),
        Criterion(2, "tetrahedron equation, charges <= 4", (("tetra", {"max_charge": 4}),)),
        Criterion(3, "RLLL equation, cutoff 4", (("rlll", {"max_level": 4}),)),
        Criterion(4, "boundary eigen-relations, s = 1,2", tuple(
            ("boundary", {"s": s, "cutoff": 4, "side": "both"}) for s in (1, 2))),
        Criterion(5, "closed form vs series, (2,1)/(1,2) relation", tuple(
            ("closed-form", {"st": st, "max_degree": 3, "z_order": 8}) for st in closed)
            + (("relation-21-12", {"max_degree": 2, "w_order": 6}),)),
        Criterion(6, "braid Yang-Baxter equation, degree <= 3", tuple(
            ("ybe", {"st": st, "max_degree": 3}) for st in closed)),
        Criterion(7, "module relations, levels <= 6", (
            ("module-relations", {"kind": "a11", "max_level": 6}),
            ("module-relations", {"kind": "a22", "max_level": 6}))),
        Criterion(8, "spectral construction, blocks <= 4", tuple(spectral)
                  + (("spectral", {"kind": "a22", "max_degree": 4}),)),
        Criterion(9, "identification theorem (i), (ii), (iii)", (
            ("theorem", {"part": "i", "max_degree": 4}),
            ("theorem", {"part": "ii", "max_degree": 3}),
            ("theorem", {"part": "iii", "max_degree": 4}))),
        Criterion(10, "spectra of the reduced matrices", (("corollary", {"max_d": 4, "max_d22": 2}),)),
        Criterion(11, "closed form of the (0,1) trace operator, free-fermion YBE", (
            ("rtr01", {"z_order": 10, "max_d": 3, "gauge": "printed"}),
            ("ffr-ybe", {}))),
        Criterion(12, "Yang-Baxter equation of the mixed families, n <= 2", tuple(gen)),
    ]


def _quick() -> List[Criterion]:
    caps = {"max_charge": 2, "max_level": 2, "cutoff": 2, "max_degree": 2, "z_order": 4, "w_order": 4,
            "max_d": 2, "max_d22": 1}
    return [Criterion(c.number, c.title, tuple(
        (name, {k: min(v, caps[k]) if k in caps else v for k, v in params.items()}) for name, params in c.tasks))
        for c in _acceptance()]


def profile(name: str) -> List[Criterion]:
    if name == "acceptance":
        return _acceptance()
    if name == "quick":
        return _quick()
    raise ConfigError(f"unknown profile {name!r}; expected one of {PROFILES}")


# ---------------------------------------------------------------------------
# configuration and execution


@dataclass
class RunConfig:
    suite: str
    params: Dict[str, Any] = field(default_factory=dict)
    mode: str = "exact"
    seed: int = 0
    jobs: int = 1
    cache_dir: Optional[str] = None
    format: str = "text"
    timings: bool = False

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        if "suite" not in data:
            raise ConfigError("configuration needs a suite")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError("jobs must be a positive integer")
        if self.suite == "all":
            extra = set(self.params) - {"profile"}
            if extra:
                raise ConfigError(f"unknown parameters for 'all': {', '.join(sorted(extra))}")
            name = self.params.get("profile", "acceptance")
            profile(name)
            if name == "acceptance" and self.mode != "exact":
                raise ConfigError("the acceptance profile runs in exact mode only")
            return
        suite = SUITES.get(self.suite)
        if suite is None:
            raise ConfigError(f"unknown suite {self.suite!r}")
        self.params = resolve_params(suite, self.params)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def resolve_params(suite: Suite, params: Dict[str, Any]) -> Dict[str, Any]:
    unknown = sorted(set(params) - set(suite.defaults))
    if unknown:
        raise ConfigError(f"unknown parameters for {suite.name}: {', '.join(unknown)}")
    merged = {**suite.defaults, **params}
    for key in suite.cutoffs:
        v = merged[key]
        if v is not None and (not isinstance(v, int) or v < 0):
            raise ConfigError(f"{key} must be a nonnegative integer, got {v!r}")
    for key, allowed in suite.choices.items():
        if merged[key] not in allowed:
            raise ConfigError(f"{key} must be one of {allowed}, got {merged[key]!r}")
    for key in ("st",):
        if key in merged:
            parse_pair(merged[key])
    for key in ("param", "q_base"):
        if merged.get(key) is not None:
            parse_value(merged[key])
    return merged


def _run_task(task: Tuple[str, Dict[str, Any], str, int, Optional[str]]) -> List[CheckReport]:
    name, params, mode, seed, cache_dir = task
    from .. import reduction
    ARITH.set(mode, seed)
    reduction.use_block_cache(BlockCache(cache_dir) if cache_dir else None)
    suite = SUITES[name]
    return suite.runner(**resolve_params(suite, params))


@dataclass
class CriterionResult:
    number: int
    title: str
    reports: List[CheckReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


@dataclass
class RunResult:
    config: RunConfig
    reports: List[CheckReport]
    criteria: Optional[List[CriterionResult]] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


def _execute(tasks: Sequence[Task], cfg: RunConfig) -> List[List[CheckReport]]:
    payload = [(name, params, cfg.mode, cfg.seed, cfg.cache_dir) for name, params in tasks]
    if cfg.jobs == 1 or len(payload) == 1:
        return [_run_task(p) for p in payload]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(_run_task, payload, chunksize=1))


def run_suite(cfg: RunConfig) -> RunResult:
    cfg.validate()
    if cfg.suite != "all":
        reports = _execute([(cfg.suite, cfg.params)], cfg)[0]
        return RunResult(cfg, reports)
    criteria = profile(cfg.params.get("profile", "acceptance"))
    flat = [(c.number, t) for c in criteria for t in c.tasks]
    outcomes = _execute([t for _, t in flat], cfg)
    results = []
    for c in criteria:
        reports = [r for (num, _), out in zip(flat, outcomes) if num == c.number for r in out]
        results.append(CriterionResult(c.number, c.title, reports))
    return RunResult(cfg, [r for c in results for r in c.reports], results)


STATUS = {True: PASS, False: FAIL}
