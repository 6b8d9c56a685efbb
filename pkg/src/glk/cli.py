"""Command line interface.

Thin client over the command handlers: by default every subcommand runs
in-process; with --url it POSTs the same validated parameters to a running
service and renders the identical payload.  Exit status 0 on success, 1
when a verification command finds a mismatch, 2 on usage, domain, or
budget errors.

Polynomials are accepted in digit form ("10101", ascending coefficients,
comma-separated for p > 10) or human form ("x^4+x^2+1") everywhere.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .cyclo import Cyclotomic
from .errors import BudgetError, ConfigError, DomainError
from .glring import RingElement
from .models import REQUEST_MODELS


@dataclasses.dataclass
class SessionConfig:
    """Resolved per-invocation settings shared by every subcommand."""

    format: str = "text"
    url: str | None = None
    budget: int | None = None

    @classmethod
    def from_args(cls, args) -> "SessionConfig":
        budget = getattr(args, "budget", None)
        if budget is None:
            env = os.environ.get("GLK_ORACLE_BUDGET")
            budget = int(env) if env else None
        return cls(
            format=getattr(args, "format", "text"),
            url=getattr(args, "url", None),
            budget=budget,
        )


def run(command: str, params: dict, config: SessionConfig):
    """Execute a command locally or against a remote service."""
    if config.url:
        import httpx

        resp = httpx.post(
            config.url.rstrip("/") + "/" + command, json=params, timeout=300.0
        )
        if resp.status_code == 422:
            detail = resp.json().get("detail", resp.text)
            raise DomainError(
                detail if isinstance(detail, str) else json.dumps(detail)
            )
        resp.raise_for_status()
        return resp.json()
    from .service import dispatch

    return dispatch(command, params)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="glk",
        description="Exact Grothendieck ring computations for GL_n(F_p) "
        "in natural characteristic.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output rendering (default text)",
    )
    common.add_argument(
        "--url", default=None,
        help="base URL of a running service; default runs in-process",
    )
    common.add_argument(
        "--budget", type=int, default=None,
        help="largest group order the enumeration oracle may build "
        "(default 10^7, or GLK_ORACLE_BUDGET)",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    s = cmd("factor", "factor a polynomial over F_p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)

    s = cmd("mult", "product of two basis elements")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = cmd("power", "power of an irreducible generator with its scalar")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--exponent", "-e", type=int, required=True)

    s = cmd("decompose", "write a basis element over generator powers")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)

    s = cmd("delta", "comultiplication of a basis element")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)

    s = cmd("t-spectrum", "T-operator eigenvalues and eigenspace dimensions")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)

    s = cmd("dl-basis", "torus-induction change-of-basis matrix")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument(
        "--direction", choices=("to-pi", "from-pi"), default="to-pi"
    )
    s.add_argument("--primitive", default=None,
                   help="override the primitive modulus polynomial")

    s = cmd("series", "Poincare series of a basis element")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--N", "--n", dest="N", type=int, required=True,
                   help="ambient field degree")
    s.add_argument("--poly", required=True)
    s.add_argument("--order", type=int, default=32,
                   help="truncation order (default 32)")
    s.add_argument("--primitive", default=None)

    s = cmd("molien-check", "closed form against summand dimension counts")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--N", "--n", dest="N", type=int, required=True)
    s.add_argument("--k", type=int, required=True,
                   help="character exponent in [0, p^N-1)")
    s.add_argument("--order", type=int, default=32)
    s.add_argument("--primitive", default=None)

    s = cmd("kernel", "relations among lifted denominator polynomials")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--N", "--n", dest="N", type=int, required=True)
    s.add_argument("--polys", required=True,
                   help="comma-separated degree-N basis polynomials")
    s.add_argument("--emit-ring-element", action="store_true")
    s.add_argument("--primitive", default=None)

    s = cmd("verify", "run formula-vs-oracle consistency suites")
    s.add_argument("--suite", choices=("default", "full"), default="default")

    return top


def _params_for(args, config: SessionConfig) -> dict:
    fields = REQUEST_MODELS[args.command].model_fields
    params = {}
    for name in fields:
        if name == "polys":
            params[name] = [tok for tok in args.polys.split(",") if tok]
        elif name == "budget":
            params[name] = config.budget
        elif hasattr(args, name):
            params[name] = getattr(args, name)
    return params


def _cyc_str(obj: dict) -> str:
    return str(Cyclotomic.from_json(obj))


def _render_text(command: str, args, payload) -> str:
    if command == "factor":
        parts = [
            f"({f['poly']})" + (f"^{f['exponent']}" if f["exponent"] > 1 else "")
            for f in payload["factors"]
        ]
        text = " * ".join(parts) if parts else "1"
        if payload["unit"] != 1:
            text = f"{payload['unit']} * {text}" if parts else str(payload["unit"])
        return text
    if command in ("mult", "power"):
        return RingElement.from_json(args.p, payload).text()
    if command == "decompose":
        gens = " * ".join(
            f"pi[{g['poly']}]" + (f"^{g['exponent']}" if g["exponent"] > 1 else "")
            for g in payload["generators"]
        )
        lhs = f"pi[{payload['poly']}]"
        if not gens:
            return f"{lhs} = {payload['scalar']}"
        if payload["scalar"] == "1":
            return f"{lhs} = {gens}"
        return f"{lhs} = {payload['scalar']} * {gens}"
    if command == "delta":
        lines = []
        for term in payload["terms"]:
            c = _cyc_str(term["coeff"])
            head = "" if c == "1" else f"{c}*"
            lines.append(
                f"{head}pi[{term['left']}] (x) pi[{term['right']}]"
            )
        return " + ".join(lines) if lines else "0"
    if command == "t-spectrum":
        eig = ",".join(str(v) for v in payload["eigenvalues"])
        dims = ",".join(str(v) for v in payload["dimensions"])
        return f"eigenvalues [{eig}]\ndims [{dims}]"
    if command == "dl-basis":
        lines = [f"keys: {' '.join(payload['keys'])}"]
        for rep, row in zip(payload["reps"], payload["matrix"]):
            vals = ", ".join(_cyc_str(c) for c in row)
            lines.append(f"rep {rep}: {vals}")
        return "\n".join(lines)
    if command == "molien-check":
        if payload["equal"]:
            return f"equal through order {payload['order']}"
        return f"MISMATCH at degree {payload['first_mismatch']}"
    if command == "kernel":
        lines = [f"dimension {payload['dimension']}"]
        for i, rel in enumerate(payload["relations"]):
            vals = ", ".join(_cyc_str(c) for c in rel)
            lines.append(f"relation {i}: {vals}")
        lines.append(
            "residuals exact zero" if payload["residual_ok"]
            else "RESIDUAL NONZERO"
        )
        for i, arr in enumerate(payload.get("ring_elements", [])):
            elt = RingElement.from_json(args.p, arr, m=payload["m"])
            lines.append(f"element {i}: {elt.text()}")
        return "\n".join(lines)
    if command == "verify":
        lines = []
        for row in payload["checks"]:
            mark = "ok  " if row["equal"] else "FAIL"
            params = json.dumps(row["parameters"], sort_keys=True)
            lines.append(f"{mark} {row['check']} {params}")
            if not row["equal"]:
                lines.append(f"     formula: {row['formula_value']}")
                lines.append(f"     oracle:  {row['oracle_value']}")
        total = len(payload["checks"])
        good = sum(1 for row in payload["checks"] if row["equal"])
        lines.append(f"{good}/{total} checks equal")
        return "\n".join(lines)
    return json.dumps(payload, sort_keys=True, indent=2)


def _exit_status(command: str, payload) -> int:
    if command == "verify" and not payload["all_equal"]:
        return 1
    if command == "molien-check" and not payload["equal"]:
        return 1
    if command == "kernel" and not payload["residual_ok"]:
        return 1
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = SessionConfig.from_args(args)
    try:
        params = _params_for(args, config)
        payload = run(args.command, params, config)
    except (DomainError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pydantic validation, connection failures
        name = type(exc).__name__
        if name in ("ValidationError", "ConnectError", "HTTPStatusError",
                    "ConnectTimeout", "ReadTimeout"):
            print(f"error: {exc}", file=sys.stderr)
            return 2
        raise
    if config.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_render_text(args.command, args, payload))
    return _exit_status(args.command, payload)


if __name__ == "__main__":
    sys.exit(main())
