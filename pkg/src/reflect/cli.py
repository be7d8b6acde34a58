"""Command-line interface: ``reflect info|classinfo|verify|ext-centralizers``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .coxeter import BudgetExceeded, CoxGroup, conjugacy_classes, isomorphism_type
from .cosets import elliptic_classes, f_conjugacy_classes, make_coset
from .rootsys import dynkin_diagram, parse_type, root_datum_named, root_datum_preset

SCHEMA = "reflect/1"
FORMATS = ("plain", "tex", "json")


# rendering ---------------------------------------------------------------------


def cell(x: Any) -> Any:
    """JSON-safe cell: numbers become exact strings, containers recurse."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [cell(y) for y in x]
    if isinstance(x, dict):
        return {str(k): cell(v) for k, v in x.items()}
    return str(x)


@dataclass
class RenderTable:
    title: str
    headers: list
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.headers):
                raise ValueError("row length differs from header length")

    def as_json_obj(self) -> dict:
        return {"schema": SCHEMA, "title": self.title, "headers": list(self.headers),
                "rows": [[cell(x) for x in r] for r in self.rows], "meta": cell(self.meta)}


def _plain_cell(x: Any) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(_plain_cell(y) for y in x) + "]"
    return str(x)


def render_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


_TEX = {"\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "_": r"\_", "#": r"\#",
        "^": r"\^{}", "~": r"\~{}", "{": r"\{", "}": r"\}", "$": r"\$"}


def _tex_escape(s: str) -> str:
    return "".join(_TEX.get(ch, ch) for ch in s)


def render(table: RenderTable, fmt: str) -> str:
    if fmt == "json":
        return render_json(table.as_json_obj())
    cells = [[_plain_cell(x) for x in r] for r in table.rows]
    if fmt == "tex":
        out = ["% " + table.title, r"\begin{tabular}{" + "l" * len(table.headers) + "}",
               " & ".join(_tex_escape(h) for h in table.headers) + r" \\ \hline"]
        out += [" & ".join(_tex_escape(c) for c in r) + r" \\" for r in cells]
        out.append(r"\end{tabular}")
        return "\n".join(out) + "\n"
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(table.headers)]
    lines = [table.title] if table.title else []
    lines.append("  ".join(h.ljust(w) for h, w in zip(table.headers, widths)).rstrip())
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def word_str(word: Sequence[int]) -> str:
    if not word:
        return "."
    if max(word) >= 10:
        return "(" + ",".join(map(str, word)) + ")"
    return "".join(map(str, word))


# commands ----------------------------------------------------------------------


def _group(args) -> CoxGroup:
    if args.datum:
        name, _, n = args.datum.partition(",")
        if not n:
            raise ValueError("--datum expects NAME,N, e.g. gl,3")
        return CoxGroup(root_datum_named(name.strip(), int(n)))
    if not args.type:
        raise ValueError("one of --type or --datum is required")
    return CoxGroup(root_datum_preset(parse_type(args.type), args.isogeny))


def _type_of(W: CoxGroup):
    from .coxeter import ReflSubgroup
    return isomorphism_type(ReflSubgroup(W, range(W.rank)))


def cmd_info(args) -> tuple[str, int]:
    W = _group(args)
    d = W.datum
    diagram = dynkin_diagram(_type_of(W))
    meta = {"type": _type_of(W), "rank": d.rank, "semisimple_rank": d.semisimple_rank,
            "order": W.order, "N": W.N, "degrees": list(W.degrees), "R": [list(r) for r in d.R],
            "Rv": [list(r) for r in d.Rv], "diagram": diagram}
    if args.format == "plain":
        lines = [diagram, f"rank {d.rank}, semisimple rank {d.semisimple_rank}",
                 f"|W| = {W.order}, N = {W.N}", "degrees " + " ".join(map(str, W.degrees))]
        if args.datum:
            lines += ["simple roots " + str([list(r) for r in d.R]),
                      "simple coroots " + str([list(r) for r in d.Rv])]
        return "\n".join(lines) + "\n", 0
    rows = [[k, v] for k, v in meta.items()]
    return render(RenderTable(f"info {meta['type']}", ["field", "value"], rows), args.format), 0


def cmd_classinfo(args) -> tuple[str, int]:
    W = _group(args)
    if args.twist:
        c = make_coset(W, _parse_cycles(args.twist))
        info = f_conjugacy_classes(c)
        ell = set(elliptic_classes(c, info))
        rows = [[k + 1, word_str(info.classtext[k]), info.classes[k], info.orders[k], k in ell]
                for k in range(len(info.classes))]
        table = RenderTable(f"classes of {c.name}", ["class", "word", "size", "order", "elliptic"], rows)
    else:
        info = conjugacy_classes(W)
        rows = [[k + 1, word_str(info.classtext[k]), info.classes[k], info.orders[k]]
                for k in range(len(info.classes))]
        table = RenderTable(f"classes of {_type_of(W)}", ["class", "word", "size", "order"], rows)
    return render(table, args.format), 0


def _parse_cycles(text: str) -> list:
    text = text.replace(" ", "")
    if not text or text == "()":
        return []
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"cannot parse permutation {text!r}; use cycle notation like (1,6)(3,5)")
    return [tuple(int(x) for x in part.split(",")) for part in text[1:-1].split(")(")]


def cmd_verify(args) -> tuple[str, int]:
    from . import scenarios

    name = args.scenario
    progress = (lambda msg: print(msg, file=sys.stderr, flush=True)) if args.progress else None
    if name == "2e6-centralizers":
        rep = scenarios.twisted_e6_centralizers(smoke=args.budget != "long", progress=progress)
        if args.budget != "long":
            rep.data["note"] = "smoke subset; use --budget long for all classes"
    elif name == "e6-quasi-isolated":
        rep = scenarios.e6_quasi_isolated()
    elif name == "e7-order8":
        rep = scenarios.e7_order8(args.q)
    elif name == "errata":
        rep = scenarios.errata(include_e8=args.budget == "extended")
    else:
        raise ValueError(f"unknown scenario {name!r}")
    rows = [["PASS" if c.passed else "FAIL", c.name, c.provenance, c.expected, c.observed]
            for c in rep.checks]
    table = RenderTable(f"verify {rep.scenario}", ["status", "check", "source", "expected", "observed"],
                        rows, meta={"passed": rep.passed, **rep.data})
    out = render(table, args.format)
    if args.format == "plain":
        out += ("all checks passed" if rep.passed else "some checks FAILED") + "\n"
    return out, 0 if rep.passed else 1


def cmd_ext_centralizers(args) -> tuple[str, int]:
    from .semisimple import centralizer_class_representatives

    W = CoxGroup(root_datum_preset(parse_type(args.type), "adjoint"))
    subs = centralizer_class_representatives(W, args.p, args.budget)
    rows = [[isomorphism_type(H, compact=True) or ".", H.labels] for H in subs]
    table = RenderTable(f"extended-diagram centralizers of {args.type}, p={args.p}",
                        ["type", "roots"], rows)
    return render(table, args.format), 0


# entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflect", description="Coxeter groups, braids, cosets and "
                                "semisimple elements of reductive groups.")
    p.add_argument("--version", action="version", version=f"reflect {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group=True):
        sp.add_argument("--format", choices=FORMATS, default="plain")
        if group:
            sp.add_argument("--type", help="Cartan type, e.g. E6 or A2+A1")
            sp.add_argument("--isogeny", choices=("adjoint", "sc"), default="adjoint")
            sp.add_argument("--datum", help="named root datum NAME,N with NAME in gl, sl, pgl")

    common(sub.add_parser("info", help="diagram, order and degrees"))
    sp = sub.add_parser("classinfo", help="conjugacy classes of W or of a coset")
    common(sp)
    sp.add_argument("--twist", help="diagram automorphism in cycle notation, e.g. (1,6)(3,5)")
    sp = sub.add_parser("verify", help="replay a checked computation")
    common(sp, group=False)
    sp.add_argument("scenario", choices=("2e6-centralizers", "e6-quasi-isolated", "e7-order8", "errata"))
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--budget", choices=("default", "long", "extended"), default="default")
    sp.add_argument("--progress", action="store_true")
    sp = sub.add_parser("ext-centralizers", help="centralizer types from the extended diagram")
    common(sp, group=False)
    sp.add_argument("--type", required=True)
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--budget", choices=("default", "extended"), default="default")
    return p


COMMANDS = {"info": cmd_info, "classinfo": cmd_classinfo, "verify": cmd_verify,
            "ext-centralizers": cmd_ext_centralizers}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except (ValueError, BudgetExceeded) as exc:
        print(f"reflect: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
