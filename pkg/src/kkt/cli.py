"""``kkt`` command-line front end.

Exit status: 0 success, 1 invalid input, 2 resource cap exceeded,
3 internal consistency failure or an undecided verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import yaml

from . import __version__
from .algebra import compute_basis
from .casson import ComplementaryClover, lambda_closed_form, lambda_via_theta
from .clover import CloverData
from .diagrams import THETA, automorphism_count, degree_cap, enumerate_diagrams
from .errors import ConsistencyError, KKTError, ValidationError
from .lens import linking_matrix_of, parse_matrix_text, realize_linking_matrix
from .rational import format_rational
from .linking_forms import LinkingForm, classify_odd, classify_two, nondegenerate, primary_decompose
from .splitting import linking_number_diagram, z_n


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: tuple = ()
    degree: int | None = None
    fmt: str = "json"
    degree_cap: int | None = None
    jobs: int = 1
    count_only: bool = False

    def __post_init__(self):
        if self.fmt not in ("json", "text"):
            raise ValidationError(f"--format must be json or text, got {self.fmt!r}")
        if self.degree is not None and self.degree < 0:
            raise ValidationError("--degree must be non-negative")
        if self.jobs < 1:
            raise ValidationError("--jobs must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def _nonneg_int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("--degree-cap", type=_nonneg_int, default=None, help="override KKT_DEGREE_CAP")
    common.add_argument("--jobs", type=_nonneg_int, default=1, help="parallelism hint (currently unused)")

    p = _Parser(prog="kkt", description="Splitting formulas and linking forms for rational clovers.")
    p.add_argument("--version", action="version", version=f"kkt {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("diagrams", parents=[common], help="enumerate Jacobi diagram classes")
    s.add_argument("--degree", type=_nonneg_int, required=True)
    s.add_argument("--count-only", action="store_true")

    s = sub.add_parser("basis", parents=[common], help="basis of A_n modulo AS and IHX")
    s.add_argument("--degree", type=_nonneg_int, required=True)

    s = sub.add_parser("split", parents=[common], help="Z_n of a clover by the splitting formula")
    s.add_argument("--degree", type=_nonneg_int, required=True)
    s.add_argument("--clover", required=True)

    s = sub.add_parser("casson", parents=[common], help="Casson-Walker invariant of a 2-clover")
    s.add_argument("--clover", required=True)

    s = sub.add_parser("linkform", help="linking form tools")
    lsub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = lsub.add_parser("classify", parents=[common], help="classify a linking form")
    c.add_argument("file")

    s = sub.add_parser("realize", parents=[common], help="realise a rational linking matrix")
    s.add_argument("file")
    return p


def _config(ns):
    sub = ns.subcommand
    if sub == "linkform":
        sub = f"linkform {ns.action}"
    inputs = tuple(x for x in (getattr(ns, "clover", None), getattr(ns, "file", None)) if x)
    return RunConfig(
        subcommand=sub,
        inputs=inputs,
        degree=getattr(ns, "degree", None),
        fmt=ns.fmt,
        degree_cap=ns.degree_cap,
        jobs=ns.jobs,
        count_only=getattr(ns, "count_only", False),
    )


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read file ({exc.strerror})") from None
    except UnicodeDecodeError:
        raise ValidationError(f"{path}: not valid UTF-8") from None


def _load_doc(path):
    text = _read(path)
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ValidationError(f"{path}: malformed document{where}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: expected a mapping at top level")
    return doc


def _in(path, fn, *args):
    try:
        return fn(*args)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


_q = format_rational


# -- subcommands -----------------------------------------------------------


def _cap(cfg):
    return degree_cap() if cfg.degree_cap is None else cfg.degree_cap


def cmd_diagrams(cfg):
    classes = enumerate_diagrams(cfg.degree, cap=_cap(cfg))
    doc = {"degree": cfg.degree, "count": len(classes), "zero_classes": sum(c.zero_flag for c in classes)}
    if not cfg.count_only:
        doc["diagrams"] = [
            {"encoding": c.encode(), "aut": automorphism_count(c), "zero": c.zero_flag} for c in classes
        ]
    return doc


def cmd_basis(cfg):
    b = compute_basis(cfg.degree, cap=_cap(cfg))
    return {"degree": cfg.degree, "dimension": b.dimension, "basis": [c.encode() for c in b.basis]}


def cmd_split(cfg):
    path = cfg.inputs[0]
    clover = _in(path, CloverData.from_json, _load_doc(path))
    n = cfg.degree
    b = compute_basis(n, cap=_cap(cfg))
    coords = _in(path, z_n, clover, n, b)
    doc = {
        "degree": n,
        "pieces": clover.k,
        "basis": [c.encode() for c in b.basis],
        "coordinates": [_q(x) for x in coords],
    }
    if clover.k > 2 * n:
        doc["note"] = "k > 2n: the splitting formula gives zero"
    return doc


def cmd_casson(cfg):
    path = cfg.inputs[0]
    doc = _load_doc(path)
    if "pieces" in doc:
        clover = _in(path, CloverData.from_json, doc)
        if clover.k != 2:
            raise ValidationError(f"{path}: a Casson computation needs exactly 2 pieces, got {clover.k}")
        lam = linking_number_diagram(clover, THETA) / 6
        return {"lambda": _q(lam), "lambda_walker": _q(2 * lam), "z1_theta": _q(lam / 2)}
    cc = _in(path, ComplementaryClover.from_json, doc)
    lam = lambda_via_theta(cc)
    closed = lambda_closed_form(cc)
    if lam != closed:
        raise ConsistencyError(f"theta contraction gives {lam}, closed form gives {closed}")
    return {"lambda": _q(lam), "lambda_walker": _q(2 * lam), "z1_theta": _q(lam / 2)}


def _block_doc(b):
    return {"p": b.p, "k": b.k, "s": b.s, "label": str(b)}


def cmd_linkform(cfg):
    path = cfg.inputs[0]
    f = _in(path, LinkingForm.from_json, _load_doc(path))
    ok = nondegenerate(f)
    doc = {"orders": list(f.orders), "nondegenerate": ok}
    if not ok:
        return doc, 1
    parts = {}
    for p, g in primary_decompose(f).items():
        if p == 2:
            res = classify_two(g)
            parts[str(p)] = {
                "stabilizers_added": res.stabilizers_added,
                "stabilizer_exponents": list(res.stabilizer_exponents),
                "blocks": [_block_doc(b) for b in res.blocks],
            }
        else:
            parts[str(p)] = {"stabilizers_added": 0, "blocks": [_block_doc(b) for b in classify_odd(g, p)]}
    doc["primary_parts"] = parts
    return doc, 0


def cmd_realize(cfg):
    path = cfg.inputs[0]
    a = _in(path, parse_matrix_text, _read(path))
    r = realize_linking_matrix(a)
    doc = r.to_json()
    doc["linking_matrix"] = [[_q(x) for x in row] for row in linking_matrix_of(r)]
    return doc


COMMANDS = {
    "diagrams": cmd_diagrams,
    "basis": cmd_basis,
    "split": cmd_split,
    "casson": cmd_casson,
    "linkform classify": cmd_linkform,
    "realize": cmd_realize,
}


# -- output ----------------------------------------------------------------


def _scalar(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def format_text(doc, indent=0):
    pad = "  " * indent
    lines = []
    for key, val in doc.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(format_text(val, indent + 1))
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            lines.append(f"{pad}{key}:")
            for v in val:
                body = format_text(v, indent + 2).lstrip()
                lines.append(f"{pad}  - {body}")
        elif isinstance(val, list) and val and all(isinstance(v, list) for v in val):
            lines.append(f"{pad}{key}:")
            for row in val:
                lines.append(f"{pad}  " + "  ".join(_scalar(x) for x in row))
        elif isinstance(val, list):
            lines.append(f"{pad}{key} = [" + ", ".join(_scalar(x) for x in val) + "]")
        else:
            lines.append(f"{pad}{key} = {_scalar(val)}")
    return "\n".join(line for line in lines if line)


def render(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False)
    return format_text(doc)


def run(argv=None, stdout=None, stderr=None):
    """Execute one command; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        result = COMMANDS[cfg.subcommand](cfg)
        doc, status = result if isinstance(result, tuple) else (result, 0)
        stdout.write(render(doc, cfg.fmt) + "\n")
        return status
    except KKTError as exc:
        stderr.write(f"kkt: error: {exc}\n")
        return exc.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
