"""Command-line surface.

One subcommand per pipeline entry point.  Field and involution are
always explicit flags, never inferred from the entries: a real matrix
read over the Gaussian rationals with conjugation is a different
problem than the same file over the rationals, and the answers
differ.  --json switches input and output together.

Exit status: 0 on success, 1 on bad input or inconsistent flags
(parse errors carry line and column), 2 on internal failure or a
failed verification suite.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .float_unitary import (FloatMode, _parse_float_token, float_regularize,
                            parse_float_matrix, pattern_residual,
                            render_float_scalar, unitarity_residual)
from .matrix import Matrix, MatrixParseError, invariants
from .pencil import SelfadjointPencil, pencil_regularize
from .regularize import regularize
from .scalar import FieldSpec
from .sparse_form import canonical_sparse_form, full_decomposition
from .verify import invariance_suite, roundtrip_suite

_EXACT_FIELDS = ("rational", "gaussian-rational", "prime-field")
_FLOAT_FIELDS = ("real", "complex")


class CliInputError(ValueError):
    """Bad flags or unreadable input; maps to exit status 1."""


@dataclass(frozen=True)
class CliConfig:
    command: str
    input_path: str | None = None
    field: str = "rational"
    involution: str = "identity"
    prime: int | None = None
    json_io: bool = False
    tol: float | None = None
    seed: int | None = None
    trials: int = 25
    emit_transform: bool = False


@dataclass(frozen=True)
class CliResult:
    status: int
    out: str = ""
    err: str = ""


# -- input plumbing ------------------------------------------------------------


def _resolve_field(config: CliConfig) -> FieldSpec:
    if config.prime is not None and config.field != "prime-field":
        raise CliInputError("--prime is only valid with --field prime-field")
    try:
        if config.field == "rational":
            if config.involution == "conjugate":
                raise CliInputError(
                    "conjugation requires --field gaussian-rational")
            return FieldSpec.rationals()
        if config.field == "gaussian-rational":
            return FieldSpec.gaussian(
                conjugation=config.involution == "conjugate")
        if config.prime is None:
            raise CliInputError("--field prime-field requires --prime")
        if config.involution == "conjugate":
            raise CliInputError(
                "conjugation requires --field gaussian-rational")
        return FieldSpec.prime_field(config.prime)
    except ValueError as exc:
        if isinstance(exc, CliInputError):
            raise
        raise CliInputError(str(exc)) from None


def _resolve_float_mode(config: CliConfig) -> FloatMode:
    if config.field == "real":
        if config.involution == "conjugate":
            raise CliInputError(
                "conjugation over the reals is the identity; "
                "use --involution identity")
        mode = "real-identity"
    else:
        mode = ("complex-conjugation" if config.involution == "conjugate"
                else "complex-identity")
    try:
        return FloatMode(mode, config.tol)
    except ValueError as exc:
        raise CliInputError(str(exc)) from None


def _read_input(config: CliConfig) -> str:
    if config.input_path is None:
        raise CliInputError("this command requires a matrix input")
    if config.input_path == "-":
        return sys.stdin.read()
    try:
        with open(config.input_path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliInputError(f"cannot read {config.input_path}: {exc}"
                            ) from None


def _load_exact(config: CliConfig, field: FieldSpec) -> Matrix:
    text = _read_input(config)
    if not config.json_io:
        return Matrix.from_text(field, text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"invalid JSON: {exc}") from None
    return Matrix.from_json_dict(field, obj)


def _load_float(config: CliConfig, complex_entries: bool) -> np.ndarray:
    text = _read_input(config)
    if config.json_io:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliInputError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise CliInputError("expected a JSON object")
        try:
            rows, cols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError):
            raise CliInputError("object must carry rows, cols, entries"
                                ) from None
        if rows < 0 or cols < 0 or not isinstance(entries, list) \
                or len(entries) != rows * cols:
            raise CliInputError("entries must hold rows*cols tokens")
        dtype = np.complex128 if complex_entries else np.float64
        a = np.zeros((rows, cols), dtype=dtype)
        for idx, tok in enumerate(entries):
            try:
                if isinstance(tok, (int, float)):
                    a[divmod(idx, cols)] = float(tok)
                else:
                    a[divmod(idx, cols)] = _parse_float_token(
                        str(tok), complex_entries)
            except ValueError as exc:
                raise CliInputError(f"entry {idx}: {exc}") from None
    else:
        a = parse_float_matrix(text, complex_entries=complex_entries)
    if a.size and not np.isfinite(a).all():
        raise CliInputError("matrix entries must be finite")
    return a


# -- renderers -----------------------------------------------------------------


def _mat_text(label: str, m: Matrix) -> str:
    return f"{label}:\n{m.to_text()}".rstrip("\n")


def _float_mat_json(a: np.ndarray) -> dict:
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [render_float_scalar(x) for x in a.ravel()],
    }


def _summary(regular_rows: int, mults: dict[int, int]) -> str:
    parts = []
    if regular_rows or not mults:
        parts.append(f"regular {regular_rows}x{regular_rows}")
    parts.extend(f"J{k} x{mults[k]}" for k in sorted(mults))
    return "; ".join(parts)


def _m_line(m) -> str:
    return "m=" + ",".join(str(v) for v in m)


# -- subcommands ---------------------------------------------------------------


def _cmd_invariants(config: CliConfig) -> CliResult:
    a = _load_exact(config, _resolve_field(config))
    inv = invariants(a)
    if config.json_io:
        out = json.dumps({"nu": inv.nu, "zeta": inv.zeta,
                          "kappa": inv.kappa, "rho": inv.rho}, indent=2)
    else:
        out = (f"nu={inv.nu} zeta={inv.zeta} "
               f"kappa={inv.kappa} rho={inv.rho}")
    return CliResult(0, out)


def _cmd_regularize(config: CliConfig) -> CliResult:
    a = _load_exact(config, _resolve_field(config))
    res = regularize(a)
    if config.json_io:
        out = json.dumps({
            "tau": res.tau,
            "m": list(res.m),
            "regular": res.regular_part.to_json_dict(),
        }, indent=2)
    else:
        out = "\n".join([f"tau={res.tau}", _m_line(res.m),
                         _mat_text("regular", res.regular_part)])
    return CliResult(0, out)


def _cmd_sparse_form(config: CliConfig) -> CliResult:
    a = _load_exact(config, _resolve_field(config))
    sf = canonical_sparse_form(a)
    if config.json_io:
        obj = {
            "m": list(sf.m),
            "regular": sf.regular_part.to_json_dict(),
            "nilpotent": sf.nilpotent.to_json_dict(),
        }
        if config.emit_transform:
            obj["transform"] = sf.global_transform.to_json_dict()
        out = json.dumps(obj, indent=2)
    else:
        lines = [_m_line(sf.m), _mat_text("regular", sf.regular_part),
                 _mat_text("nilpotent", sf.nilpotent)]
        if config.emit_transform:
            lines.append(_mat_text("transform", sf.global_transform))
        out = "\n".join(lines)
    return CliResult(0, out)


def _cmd_decompose(config: CliConfig) -> CliResult:
    a = _load_exact(config, _resolve_field(config))
    bs, x = full_decomposition(a)
    mults = dict(bs.jordan_multiplicities)
    line = _summary(bs.regular_part.rows, mults)
    if config.json_io:
        obj = {
            "summary": line,
            "regular": bs.regular_part.to_json_dict(),
            "multiplicities": {str(k): mults[k] for k in sorted(mults)},
        }
        if config.emit_transform:
            obj["transform"] = x.to_json_dict()
        out = json.dumps(obj, indent=2)
    else:
        lines = [line, _mat_text("regular", bs.regular_part)]
        if config.emit_transform:
            lines.append(_mat_text("transform", x))
        out = "\n".join(lines)
    return CliResult(0, out)


def _cmd_pencil(config: CliConfig) -> CliResult:
    a = _load_exact(config, _resolve_field(config))
    pd = pencil_regularize(SelfadjointPencil(a))
    mults = {kb.size: kb.multiplicity for kb in pd.kronecker_blocks}
    line = _summary(pd.regular.rows, mults)
    jc, jl = pd.jordan_parts()
    rc, rl = pd.replaced_parts()
    if config.json_io:
        obj = {
            "summary": line,
            "regular": pd.regular.to_json_dict(),
            "blocks": [
                {"size": kb.size, "multiplicity": kb.multiplicity,
                 "kind": kb.replacement.kind, "ell": kb.replacement.ell}
                for kb in pd.kronecker_blocks],
            "jordan": {"constant": jc.to_json_dict(),
                       "lambda": jl.to_json_dict()},
            "replaced": {"constant": rc.to_json_dict(),
                         "lambda": rl.to_json_dict()},
        }
        if config.emit_transform:
            obj["transform"] = pd.transform.to_json_dict()
            obj["replaced_transform"] = pd.replaced_transform.to_json_dict()
        out = json.dumps(obj, indent=2)
    else:
        lines = [line,
                 _mat_text("jordan constant", jc),
                 _mat_text("jordan lambda", jl),
                 _mat_text("replaced constant", rc),
                 _mat_text("replaced lambda", rl)]
        if config.emit_transform:
            lines.append(_mat_text("transform", pd.transform))
            lines.append(_mat_text("replaced transform",
                                   pd.replaced_transform))
        out = "\n".join(lines)
    return CliResult(0, out)


def _cmd_float_regularize(config: CliConfig) -> CliResult:
    mode = _resolve_float_mode(config)
    a = _load_float(config, complex_entries=config.field == "complex")
    if a.shape[0] != a.shape[1]:
        raise CliInputError("float path requires a square matrix")
    rf = float_regularize(a, mode)
    pres = pattern_residual(rf)
    ures = unitarity_residual(rf.transform)
    err = "\n".join(f"warning: {w}" for w in rf.warnings)
    if config.json_io:
        out = json.dumps({
            "m": list(rf.m),
            "regular": _float_mat_json(rf.regular_block),
            "pattern_residual": pres,
            "unitarity_residual": ures,
            "warnings": list(rf.warnings),
        }, indent=2)
    else:
        reg = rf.regular_block
        reg_lines = [f"{reg.shape[0]} {reg.shape[1]}"]
        for i in range(reg.shape[0]):
            reg_lines.append(" ".join(
                render_float_scalar(x) for x in reg[i]))
        out = "\n".join([_m_line(rf.m), "regular:"] + reg_lines + [
            f"pattern_residual={pres:.6e}",
            f"unitarity_residual={ures:.6e}"])
    return CliResult(0, out, err)


def _cmd_verify(config: CliConfig) -> CliResult:
    seed = config.seed
    if seed is None:
        env = os.environ.get("CONGRU_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise CliInputError(
                    f"CONGRU_SEED must be an integer, got {env!r}"
                    ) from None
        else:
            seed = 0
    if config.trials < 1:
        raise CliInputError("--trials must be positive")
    if config.input_path is not None:
        a = _load_exact(config, _resolve_field(config))
        suite = "invariance"
        report = invariance_suite(a, config.trials, seed=seed)
    else:
        suite = "roundtrip"
        report = roundtrip_suite(config.trials, seed=seed)
    status = 0 if report.ok else 2
    if config.json_io:
        out = json.dumps({
            "suite": suite, "seed": seed, "trials": report.total,
            "passed": report.passed, "failures": list(report.failures),
        }, indent=2)
    else:
        lines = [f"suite={suite} seed={seed} trials={report.total}",
                 f"passed {report.passed}/{report.total}"]
        lines.extend(f"fail: {f}" for f in report.failures)
        out = "\n".join(lines)
    return CliResult(status, out)


_DISPATCH = {
    "invariants": _cmd_invariants,
    "regularize": _cmd_regularize,
    "sparse-form": _cmd_sparse_form,
    "decompose": _cmd_decompose,
    "pencil": _cmd_pencil,
    "float-regularize": _cmd_float_regularize,
    "verify": _cmd_verify,
}


def run(config: CliConfig) -> CliResult:
    try:
        return _DISPATCH[config.command](config)
    except MatrixParseError as exc:
        return CliResult(
            1, "", f"error: line {exc.line}, column {exc.column}: {exc}")
    except CliInputError as exc:
        return CliResult(1, "", f"error: {exc}")
    except Exception as exc:  # noqa: BLE001 - boundary of the process
        return CliResult(2, "", f"internal error: {exc}")


# -- argument parsing ----------------------------------------------------------


def _add_exact_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", choices=_EXACT_FIELDS, default="rational")
    p.add_argument("--involution", choices=("identity", "conjugate"),
                   default="identity")
    p.add_argument("--prime", type=int, default=None,
                   help="modulus for --field prime-field")
    p.add_argument("--json", action="store_true", dest="json_io",
                   help="read and write JSON instead of the text format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congru",
        description="congruence regularizing decomposition of square "
                    "matrices over a field with involution")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("invariants", "regularize", "sparse-form", "decompose",
                 "pencil"):
        p = sub.add_parser(name)
        _add_exact_flags(p)
        if name in ("sparse-form", "decompose", "pencil"):
            p.add_argument("--emit-transform", action="store_true")
        p.add_argument("input", help="matrix file, or - for stdin")

    p = sub.add_parser("float-regularize")
    p.add_argument("--field", choices=_FLOAT_FIELDS, default="complex")
    p.add_argument("--involution", choices=("identity", "conjugate"),
                   default="identity")
    p.add_argument("--tol", type=float, default=None,
                   help="fixed rank tolerance (default: relative rule)")
    p.add_argument("--json", action="store_true", dest="json_io")
    p.add_argument("input", help="matrix file, or - for stdin")

    p = sub.add_parser("verify")
    _add_exact_flags(p)
    p.add_argument("--seed", type=int, default=None,
                   help="suite seed (default CONGRU_SEED or 0)")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("input", nargs="?", default=None,
                   help="optional matrix: run the invariance suite on it "
                        "instead of the round-trip suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    config = CliConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        field=getattr(args, "field", "rational"),
        involution=getattr(args, "involution", "identity"),
        prime=getattr(args, "prime", None),
        json_io=getattr(args, "json_io", False),
        tol=getattr(args, "tol", None),
        seed=getattr(args, "seed", None),
        trials=getattr(args, "trials", 25),
        emit_transform=getattr(args, "emit_transform", False),
    )
    result = run(config)
    if result.out:
        print(result.out)
    if result.err:
        print(result.err, file=sys.stderr)
    return result.status


if __name__ == "__main__":
    raise SystemExit(main())
