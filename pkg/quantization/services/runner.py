"""
Command runner behind `manage.py workbench`.

Every subcommand produces a JSON-ready result dict and an aligned text table; results are
written with sorted keys so identical configurations give identical bytes.
"""
from __future__ import annotations

import json
import logging
import time
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Any

from quantization.conf import workbench_setting
from quantization.domain.bch import LETTERS, bch_truncated, goldberg_sum, is_lie_element
from quantization.domain.disc import (
    CnPolynomial,
    DiscElement,
    DiscIndex,
    ReducedProduct,
    disc_indices,
    invariant_monomials,
    kernel_check,
    morphism_check,
    norm_cn,
    norm_disc,
    pole_report,
    semiclassical_limit,
    to_weyl,
)
from quantization.domain.disc_geometry import cauchy_coefficient
from quantization.domain.errors import InputError, VerificationFailure
from quantization.domain.gutt import (
    counit_check,
    exp_gutt_bch_check,
    first_order_check,
    gutt_star,
    morphism_at_one,
)
from quantization.domain.lie import LieStructure, ae_estimate, catalog_structure
from quantization.domain.scalars import DOUBLE, EXTENDED, gaussian_to_complex
from quantization.domain.seminorms import SeminormSpec, seminorm_pR, seminorm_pR_sup
from quantization.domain.symmetric import SymElement, expand_orders
from quantization.domain.weyl import BilinearForm, order_chain_check, weyl_star
from quantization.infra.formatting import render_pairs, render_table
from quantization.infra.run_store import ExperimentRunRepository
from quantization.infra.serialization import (
    canonical_json,
    decode,
    decode_form,
    decode_lie,
    encode,
    load_json,
)
from quantization.services.error_handler import EXIT_OK, EXIT_VERIFICATION_FAILED, ErrorHandler
from quantization.services.experiments import gutt_sharpness_demo, weyl_convergence_demo
from quantization.services.instances import InstanceCaps, generate_instance

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    "weyl-star",
    "gutt-star",
    "disc-star",
    "seminorm",
    "orders",
    "assoc-check",
    "bch",
    "goldberg",
    "exp-bch-check",
    "ae-estimate",
    "kernel-check",
    "poles",
    "limit",
    "cauchy",
    "convergence-demo",
    "generate",
)


def parse_fraction(raw: str | int | Fraction | None, name: str) -> Fraction | None:
    if raw is None or isinstance(raw, Fraction):
        return raw
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--{name} expects a rational number, got {raw!r}", details={"flag": name}) from exc


def parse_fraction_list(raw: str | None, name: str) -> tuple[Fraction, ...] | None:
    if raw is None:
        return None
    if isinstance(raw, (list, tuple)):
        return tuple(parse_fraction(x, name) for x in raw)
    return tuple(parse_fraction(x, name) for x in str(raw).split(",") if x.strip())


@dataclass
class RunConfig:
    """One invocation: subcommand, inputs, parameters and output path."""

    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    output: str | None = None
    seed: int = 0
    R: Fraction | None = None
    weights: tuple[Fraction, ...] | None = None
    rho: Fraction | None = None
    hbar: Fraction | None = None
    max_degree: int | None = None
    max_n: int | None = None
    precision: str = DOUBLE
    dim: int | None = None
    n: int | None = None
    kind: str | None = None
    lie: str | None = None
    form: str | None = None
    xi: tuple[Fraction, ...] | None = None
    eta: tuple[Fraction, ...] | None = None
    record: bool = False

    def __post_init__(self):
        if self.command not in SUBCOMMANDS:
            raise InputError(f"Unknown subcommand: {self.command}", details={"known": list(SUBCOMMANDS)})
        self.R = parse_fraction(self.R, "R")
        self.rho = parse_fraction(self.rho, "rho")
        self.hbar = parse_fraction(self.hbar, "hbar")
        self.weights = parse_fraction_list(self.weights, "weights")
        self.xi = parse_fraction_list(self.xi, "xi")
        self.eta = parse_fraction_list(self.eta, "eta")
        if self.precision not in (DOUBLE, EXTENDED):
            raise InputError("--precision must be double or extended", details={"precision": self.precision})
        for name in ("max_degree", "max_n", "dim", "n"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive", details={name: value})
        if self.weights is not None and any(w <= 0 for w in self.weights):
            raise InputError("--weights must be positive", details={"weights": [str(w) for w in self.weights]})
        if self.rho is not None and self.rho <= 0:
            raise InputError("--rho must be positive", details={"rho": str(self.rho)})

    def parameters(self) -> dict:
        """JSON-safe view of the configuration, used for recorded runs."""
        return json.loads(json.dumps(asdict(self), default=str))


@dataclass
class CommandResult:
    data: dict[str, Any]
    table: str
    ok: bool = True


class WorkbenchRunner:
    """Dispatches RunConfigs to the engines and writes their artifacts."""

    def __init__(self, run_repo: ExperimentRunRepository | None = None):
        self.run_repo = run_repo or ExperimentRunRepository()
        self.handlers: dict[str, Callable[[RunConfig], CommandResult]] = {
            "weyl-star": self.weyl_star,
            "gutt-star": self.gutt_star,
            "disc-star": self.disc_star,
            "seminorm": self.seminorm,
            "orders": self.orders,
            "assoc-check": self.assoc_check,
            "bch": self.bch,
            "goldberg": self.goldberg,
            "exp-bch-check": self.exp_bch_check,
            "ae-estimate": self.ae_estimate,
            "kernel-check": self.kernel_check,
            "poles": self.poles,
            "limit": self.limit,
            "cauchy": self.cauchy,
            "convergence-demo": self.convergence_demo,
            "generate": self.generate,
        }

    def run(self, cfg: RunConfig, stdout: IO[str], stderr: IO[str]) -> int:
        started = time.monotonic()
        try:
            result = self.handlers[cfg.command](cfg)
        except Exception as exc:
            code, payload = ErrorHandler.handle_error(exc)
            stderr.write(json.dumps(payload, sort_keys=True) + "\n")
            logger.warning(
                "Command failed",
                extra={"operation": "run_command", "command": cfg.command, "status": payload["error"]["code"]},
            )
            self._record(cfg, code, None, payload["error"]["message"])
            return code

        data = {"command": cfg.command, "ok": result.ok, **result.data}
        if cfg.output:
            output = Path(cfg.output)
            output.parent.mkdir(parents=True, exist_ok=True)
            output.write_text(canonical_json(data), encoding="utf-8")
            Path(f"{output}.txt").write_text(result.table, encoding="utf-8")
        stdout.write(result.table)
        code = EXIT_OK
        if not result.ok:
            code = EXIT_VERIFICATION_FAILED
            failure = VerificationFailure(f"{cfg.command}: verification failed", details={"command": cfg.command})
            stderr.write(json.dumps({"error": failure.to_dict()}, sort_keys=True) + "\n")
        logger.info(
            "Command finished",
            extra={
                "operation": "run_command",
                "command": cfg.command,
                "status": "ok" if result.ok else "failed",
                "seed": cfg.seed,
                "elapsed_ms": round((time.monotonic() - started) * 1000),
            },
        )
        self._record(cfg, code, data, result.table)
        return code

    def _record(self, cfg: RunConfig, code: int, data, summary: str) -> None:
        if not (cfg.record or workbench_setting("RECORD_RUNS")):
            return
        self.run_repo.record(cfg.command, cfg.parameters(), code, result=data, summary=summary)

    # Input helpers

    def _input(self, cfg: RunConfig, name: str, kind: str | None = None):
        path = cfg.inputs.get(name)
        if not path:
            raise InputError(f"--{name} is required for {cfg.command}", details={"flag": name})
        return decode(load_json(path), kind)

    def _optional_input(self, cfg: RunConfig, name: str, kind: str | None = None):
        return self._input(cfg, name, kind) if cfg.inputs.get(name) else None

    def _form(self, cfg: RunConfig) -> BilinearForm:
        if not cfg.form:
            raise InputError("--lambda is required", details={"flag": "lambda"})
        if cfg.form == "symplectic":
            return BilinearForm.symplectic(cfg.dim or 2)
        return decode_form(load_json(cfg.form))

    def _lie(self, cfg: RunConfig) -> LieStructure:
        if not cfg.lie:
            raise InputError("--lie is required", details={"flag": "lie"})
        if Path(cfg.lie).suffix == ".json":
            return decode_lie(load_json(cfg.lie))
        return catalog_structure(cfg.lie, cfg.dim)

    def _expectation(self, cfg: RunConfig, value) -> dict:
        expected = self._optional_input(cfg, "expect")
        if expected is None:
            return {}
        return {"expected_match": expected == value}

    # Subcommands

    def weyl_star(self, cfg: RunConfig) -> CommandResult:
        form = self._form(cfg)
        a, b = self._input(cfg, "a", "sym-element"), self._input(cfg, "b", "sym-element")
        product = weyl_star(form, a, b)
        check = self._expectation(cfg, product)
        return CommandResult(
            data={"product": encode(product), **check},
            table=_element_table(product),
            ok=check.get("expected_match", True),
        )

    def gutt_star(self, cfg: RunConfig) -> CommandResult:
        lie = self._lie(cfg)
        a, b = self._input(cfg, "a", "sym-element"), self._input(cfg, "b", "sym-element")
        product = gutt_star(lie, a, b)
        check = self._expectation(cfg, product)
        return CommandResult(
            data={"lie": lie.name or "custom", "product": encode(product), **check},
            table=_element_table(product),
            ok=check.get("expected_match", True),
        )

    def disc_star(self, cfg: RunConfig) -> CommandResult:
        a, b = self._input(cfg, "a", "disc-element"), self._input(cfg, "b", "disc-element")
        product = ReducedProduct(workbench_setting("POLE_SEARCH_CAP")).star(a, b)
        check = self._expectation(cfg, product)
        return CommandResult(
            data={"product": encode(product), **check},
            table=_element_table(product),
            ok=check.get("expected_match", True),
        )

    def seminorm(self, cfg: RunConfig) -> CommandResult:
        path = cfg.inputs.get("input")
        if not path:
            raise InputError("--input is required for seminorm", details={"flag": "input"})
        raw = load_json(path)
        element = decode(raw, None if isinstance(raw, dict) and raw.get("kind") else "sym-element")
        if isinstance(element, (DiscElement, CnPolynomial)):
            return self._rho_norm(cfg, element)
        if not isinstance(element, SymElement):
            raise InputError("seminorm expects a sym-element, cn-polynomial or disc-element", details={"kind": raw.get("kind")})
        weights = cfg.weights or (Fraction(1),) * element.dim
        spec = SeminormSpec(weights, cfg.R if cfg.R is not None else Fraction(1))
        total = seminorm_pR(spec, element, param_value=cfg.hbar)
        sup = seminorm_pR_sup(spec, element, param_value=cfg.hbar)
        return CommandResult(
            data={"R": str(spec.R), "weights": [str(w) for w in spec.weights], "p_R": total.to_dict(), "p_R_sup": sup.to_dict()},
            table=render_table(
                ("seminorm", "value", "exact", "exact_square"),
                [
                    ("p_R", total.value, total.exact, total.exact_square),
                    ("p_R_sup", sup.value, sup.exact, sup.exact_square),
                ],
            ),
        )

    def _rho_norm(self, cfg: RunConfig, element: DiscElement | CnPolynomial) -> CommandResult:
        """||a||_rho on the disc, or on C^{n+1} together with p_{1/2} of its Wick embedding."""
        if cfg.rho is None:
            raise InputError("--rho is required for disc and C^{n+1} norms", details={"flag": "rho"})
        hbar0 = float(cfg.hbar) if cfg.hbar is not None else None
        tolerance = workbench_setting("NUMERIC_POLE_TOLERANCE")
        data: dict[str, Any] = {"rho": str(cfg.rho), "n": element.n}
        if isinstance(element, DiscElement):
            value = norm_disc(cfg.rho, element, hbar0, cfg.precision, tolerance)
            data["norm_disc"] = value
            return CommandResult(data=data, table=render_table(("norm", "value"), [("disc", value)]))
        value = norm_cn(cfg.rho, element, hbar0, cfg.precision, tolerance)
        spec = SeminormSpec.uniform(2 * (element.n + 1), cfg.rho, Fraction(1, 2))
        embedded = seminorm_pR(spec, to_weyl(element), param_value=cfg.hbar).value
        agrees = abs(value - embedded) <= 1e-9 * max(1.0, abs(value))
        data.update({"norm_cn": value, "p_half_wick": embedded, "agrees": agrees})
        return CommandResult(
            data=data,
            table=render_table(("norm", "value"), [("C^{n+1}", value), ("p_1/2 under Wick embedding", embedded)]),
            ok=agrees,
        )

    def orders(self, cfg: RunConfig) -> CommandResult:
        a, b = self._input(cfg, "a", "sym-element"), self._input(cfg, "b", "sym-element")
        if cfg.lie:
            product = gutt_star(self._lie(cfg), a, b)
        else:
            product = weyl_star(self._form(cfg), a, b)
        parts = expand_orders(product)
        return CommandResult(
            data={"orders": [encode(part) for part in parts]},
            table=render_table(("r", "C_r"), [(r, _format_element(part)) for r, part in enumerate(parts)]),
        )

    def assoc_check(self, cfg: RunConfig) -> CommandResult:
        a, b, c = self._input(cfg, "a"), self._input(cfg, "b"), self._input(cfg, "c")
        rows: list[tuple[str, bool]] = []
        if isinstance(a, SymElement) and cfg.lie:
            lie = self._lie(cfg)
            rows.append(("associative", gutt_star(lie, gutt_star(lie, a, b), c) == gutt_star(lie, a, gutt_star(lie, b, c))))
            rows.append(("morphism at z = 1", morphism_at_one(lie, a, b)))
            rows.append(("first order bracket", first_order_check(lie, a, b)))
            rows.append(("counit", counit_check(lie, a, b)))
        elif isinstance(a, SymElement):
            form = self._form(cfg)
            rows.append(("associative", weyl_star(form, weyl_star(form, a, b), c) == weyl_star(form, a, weyl_star(form, b, c))))
            for k, ok in order_chain_check(form, a, b, c, cfg.max_degree or 4):
                rows.append((f"order chain k = {k}", ok))
        elif isinstance(a, DiscElement):
            product = ReducedProduct(workbench_setting("POLE_SEARCH_CAP"))
            rows.append(("associative", product.star(product.star(a, b), c) == product.star(a, product.star(b, c))))
        elif isinstance(a, CnPolynomial):
            rows.append(("restriction is multiplicative (a, b)", morphism_check(a, b)))
            rows.append(("restriction is multiplicative (b, c)", morphism_check(b, c)))
        else:
            raise InputError("assoc-check needs symmetric, disc or C^{n+1} elements")
        return CommandResult(
            data={"checks": {name: ok for name, ok in rows}},
            table=render_table(("check", "result"), rows),
            ok=all(ok for _, ok in rows),
        )

    def bch(self, cfg: RunConfig) -> CommandResult:
        cap = cfg.max_degree or workbench_setting("BCH_DEFAULT_DEGREE")
        if cap > workbench_setting("BCH_MAX_DEGREE"):
            raise InputError("BCH degree exceeds the configured cap", details={"cap": workbench_setting("BCH_MAX_DEGREE")})
        series = bch_truncated(cap)
        rows = []
        degrees = []
        for n in range(1, cap + 1):
            part = series.homogeneous(n)
            is_lie = is_lie_element(part)
            rows.append((n, len(part.terms), is_lie))
            degrees.append(
                {
                    "n": n,
                    "is_lie": is_lie,
                    "words": {"".join(LETTERS[ch] for ch in w): str(c) for w, c in sorted(part.terms.items())},
                }
            )
        return CommandResult(
            data={"max_degree": cap, "degrees": degrees},
            table=render_table(("n", "words", "lie"), rows),
            ok=all(row[2] for row in rows),
        )

    def goldberg(self, cfg: RunConfig) -> CommandResult:
        cap = cfg.max_n or workbench_setting("BCH_DEFAULT_DEGREE")
        if cap > workbench_setting("BCH_MAX_DEGREE"):
            raise InputError("BCH degree exceeds the configured cap", details={"cap": workbench_setting("BCH_MAX_DEGREE")})
        rows = goldberg_sum(cap)
        return CommandResult(
            data={"rows": [row.to_dict() for row in rows]},
            table=render_table(("n", "sum", "bound", "result"), [(r.n, r.coefficient_sum, r.bound, r.passed) for r in rows]),
            ok=all(r.passed for r in rows),
        )

    def exp_bch_check(self, cfg: RunConfig) -> CommandResult:
        lie = self._lie(cfg)
        xi = cfg.xi or tuple(Fraction(1 if i == 0 else 0) for i in range(lie.dim))
        eta = cfg.eta or tuple(Fraction(1 if i == 1 else 0) for i in range(lie.dim))
        if len(xi) != lie.dim or len(eta) != lie.dim:
            raise InputError("--xi and --eta need one entry per basis vector", details={"dim": lie.dim})
        result = exp_gutt_bch_check(lie, xi, eta, cfg.max_degree or 4)
        return CommandResult(
            data={"lie": lie.name or "custom", **result.to_dict(), "exponent": encode(result.exponent)},
            table=render_pairs(sorted(result.to_dict().items())),
            ok=result.ok,
        )

    def ae_estimate(self, cfg: RunConfig) -> CommandResult:
        lie = self._lie(cfg)
        weights = cfg.weights or (Fraction(1),) * lie.dim
        estimate = ae_estimate(
            lie,
            weights,
            seed=cfg.seed,
            random_checks=workbench_setting("AE_RANDOM_BRACKETINGS"),
            exhaustive_max_n=workbench_setting("AE_EXHAUSTIVE_MAX_N"),
            random_max_n=workbench_setting("AE_RANDOM_MAX_N"),
        )
        summary = estimate.to_dict()
        return CommandResult(
            data={"lie": lie.name or "custom", **summary},
            table=render_pairs([(k, summary[k]) for k in ("C", "q_weights", "checks", "worst_ratio", "ok")]),
            ok=estimate.ok,
        )

    def kernel_check(self, cfg: RunConfig) -> CommandResult:
        n, degree = cfg.n or 1, cfg.max_degree or 2
        rows = kernel_check(n, degree)
        morphisms = []
        if cfg.max_n:
            monomials = list(invariant_monomials(n, min(cfg.max_n, degree)))
            morphisms = [morphism_check(a, b) for a in monomials for b in monomials]
        ok = all(r.left_ideal and r.right_ideal for r in rows) and all(morphisms)
        return CommandResult(
            data={"n": n, "max_degree": degree, "rows": [r.to_dict() for r in rows], "morphism_pairs": len(morphisms)},
            table=render_table(("c", "c*(g+1)", "(g+1)*c"), [(r.monomial, r.left_ideal, r.right_ideal) for r in rows]),
            ok=ok,
        )

    def poles(self, cfg: RunConfig) -> CommandResult:
        n = cfg.n or 1
        degree = cfg.max_degree or 2
        if degree > workbench_setting("DISC_POLE_DEGREE_CAP"):
            raise InputError("Degree exceeds the configured pole cap", details={"cap": workbench_setting("DISC_POLE_DEGREE_CAP")})
        rows = pole_report(n, degree, ReducedProduct(workbench_setting("POLE_SEARCH_CAP")))
        return CommandResult(
            data={"n": n, "max_degree": degree, "rows": [r.to_dict() for r in rows]},
            table=render_table(("pair", "poles"), [(f"{r.left!r} * {r.right!r}", ", ".join(r.poles) or "-") for r in rows]),
        )

    def limit(self, cfg: RunConfig) -> CommandResult:
        if cfg.inputs.get("a"):
            pairs = [(self._input(cfg, "a", "disc-element"), self._input(cfg, "b", "disc-element"))]
        else:
            n, degree = cfg.n or 1, cfg.max_degree or 1
            basis = [DiscElement.basis(index.P, index.Q) for index in disc_indices(n, degree)]
            pairs = [(a, b) for a in basis for b in basis]
        rows = []
        details = []
        for a, b in pairs:
            result = semiclassical_limit(a, b)
            rows.append((_format_element(a), _format_element(b), result.product_ok, result.bracket_ok))
            details.append(
                {"a": encode(a), "b": encode(b), "product": encode(result.product), "bracket": encode(result.bracket)}
            )
        return CommandResult(
            data={"pairs": details},
            table=render_table(("a", "b", "product", "bracket"), rows),
            ok=all(r[2] and r[3] for r in rows),
        )

    def cauchy(self, cfg: RunConfig) -> CommandResult:
        element = self._input(cfg, "input", "disc-element")
        degree = cfg.max_degree or max((index.order for index in element.keys()), default=0) or 1
        rows = []
        worst = 0.0
        for index in disc_indices(element.n, degree):
            value = cauchy_coefficient(
                element,
                index,
                radius=workbench_setting("CONTOUR_RADIUS"),
                start_grid=workbench_setting("CONTOUR_START_GRID"),
                tolerance=workbench_setting("CONTOUR_TOLERANCE"),
                max_doublings=workbench_setting("CONTOUR_MAX_DOUBLINGS"),
                precision=cfg.precision,
                hbar0=float(cfg.hbar) if cfg.hbar is not None else None,
                digits=workbench_setting("EXTENDED_PRECISION_DIGITS"),
            )
            coeff = element.coefficient(index)
            exact = gaussian_to_complex(coeff.constant_value()) if coeff.is_constant() else coeff.evaluate_numeric(float(cfg.hbar))
            error = abs(value - complex(exact))
            worst = max(worst, error)
            rows.append((repr(index), f"{value.real:.9f}{value.imag:+.9f}i", error))
        return CommandResult(
            data={"n": element.n, "max_degree": degree, "worst_error": worst, "precision": cfg.precision},
            table=render_table(("index", "recovered", "error"), rows),
            ok=worst < 1e-6,
        )

    def convergence_demo(self, cfg: RunConfig) -> CommandResult:
        kind = cfg.kind or "gutt"
        if kind == "weyl":
            series = [weyl_convergence_demo(cfg.max_n or 40, R=cfg.R if cfg.R is not None else Fraction(1, 2))]
            tail = series[0].values[-1] if series[0].values else 0.0
            ok = series[0].decreasing_after_peak and tail < workbench_setting("DEMO_TAIL_TOLERANCE")
        elif kind == "gutt":
            max_n = cfg.max_n or 30
            series = [
                gutt_sharpness_demo(max_n, R=cfg.R if cfg.R is not None else Fraction(1, 2)),
                gutt_sharpness_demo(max_n, R=Fraction(1), weight=1, rescale=4),
            ]
            growing, bounded = series
            ok = growing.increasing and all(value < 1 for value in bounded.values)
        else:
            raise InputError("convergence-demo --kind must be weyl or gutt", details={"kind": kind})
        rows = [
            (s.label, str(s.R), len(s.values), s.values[-1] if s.values else 0.0, s.peak, s.increasing, s.decreasing_after_peak)
            for s in series
        ]
        return CommandResult(
            data={"kind": kind, "series": [s.to_dict() for s in series]},
            table=render_table(("series", "R", "N", "last", "peak", "increasing", "decreasing after peak"), rows),
            ok=ok,
        )

    def generate(self, cfg: RunConfig) -> CommandResult:
        caps = InstanceCaps(
            dim=cfg.dim or 2,
            n=cfg.n or 1,
            max_degree=cfg.max_degree if cfg.max_degree is not None else 2,
            name=cfg.lie or "heisenberg",
        )
        instance = generate_instance(cfg.kind or "sym-element", cfg.seed, caps)
        return CommandResult(data={"instance": instance}, table=canonical_json(instance))


def _format_element(element) -> str:
    return " + ".join(f"({c.format(element.param)}) {key!r}" for key, c in element.sorted_items()) or "0"


def _element_table(element) -> str:
    return render_table(("term", "coefficient"), [(repr(key), c.format(element.param)) for key, c in element.sorted_items()])


def run_command(cfg: RunConfig, stdout: IO[str], stderr: IO[str], runner: WorkbenchRunner | None = None) -> int:
    return (runner or WorkbenchRunner()).run(cfg, stdout, stderr)
