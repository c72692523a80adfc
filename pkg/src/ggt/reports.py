"""Deterministic report assembly and rendering.

Reports are nested dicts of plain values (ints, strings, Fractions,
lists, dicts) rendered to text or JSON; identical inputs produce
byte-identical output.  Every report carries the tool version, the
subcommand parameters, the seed, and a sha256 of each input file.
"""

import hashlib
import json
from fractions import Fraction

VERSION = "0.1.0"


def frac_str(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def file_digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def base_report(subcommand, inputs, params, seed):
    """Common envelope; `inputs` maps a label to a file path."""
    return {
        "tool": "ggt",
        "version": VERSION,
        "subcommand": subcommand,
        "inputs": {
            k: {"path": str(p), "sha256": file_digest(p)}
            for k, p in sorted(inputs.items())
        },
        "params": {k: frac_str(v) for k, v in sorted(params.items())},
        "seed": seed,
    }


def _plain(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, frozenset):
        return [_plain(v) for v in sorted(x)]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    return str(x)


def _text_lines(x, indent, out):
    pad = "  " * indent
    if isinstance(x, dict):
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _text_lines(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                _text_lines(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(x)}")


def _scalar(v):
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(report, fmt):
    data = _plain(report)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt == "text":
        out = []
        _text_lines(data, 0, out)
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


LEAF_COLORS = {"I": "green", "II": "orange", "III": "red"}


def foliation_dot(fol, census):
    """DOT graph of the quotient leaf structure, leaves colored by type."""
    lines = ["graph foliation {"]
    types = []
    for comp, has_sing, two_sided in fol.quotient_leaves:
        types.append("III" if has_sing else ("I" if two_sided else "II"))
    for li, (comp, _, _) in enumerate(fol.quotient_leaves):
        color = LEAF_COLORS[types[li]]
        lines.append(
            f'  subgraph cluster_leaf{li} {{ label="leaf {li} (type {types[li]})";'
            f' color={color};'
        )
        for gen, idx in sorted(comp):
            lines.append(f'    "p{gen}_{idx}" [color={color}];')
        lines.append("  }")
    seen = set()
    for ci, arcs in enumerate(fol.cell_arcs):
        c = fol.pc.cells[ci]
        from .foliation import _quotient_point

        m_of = tuple(len(s) for s in fol.slices)
        for a, b in arcs.regular:
            ga, ja, _ = _quotient_point(fol.pc, c, a, m_of)
            gb, jb, _ = _quotient_point(fol.pc, c, b, m_of)
            key = tuple(sorted([(ga, ja), (gb, jb)]))
            if key not in seen:
                seen.add(key)
                lines.append(f'  "p{ga}_{ja}" -- "p{gb}_{jb}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
