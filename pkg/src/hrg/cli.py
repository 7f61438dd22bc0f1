"""Command line: load systems from JSON, verify them, export hypergraphs, and
run word operations. Exit codes: 0 pass, 1 verification failure, 2 input
error, 3 enumeration cap exceeded."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coxeter import CoxeterFamily, UnsupportedFamily, coxeter_system
from .graphprod import (
    GPRealization,
    GPWord,
    GraphOfGroups,
    InfiniteOrCapExceeded,
    chamber_of,
    composite_system,
    enumerate_group,
    gp_multiply,
    gp_word,
    graph_of_groups,
    normalize,
)
from .groups import FiniteGroup, Subgroup, build_group, max_group_order, subgroup_generated
from .hypergraph import CayleySystem, Hypergraph, cayley_hypergraph, hypergraph
from .hyperreflections import (
    sector_decompose,
    verification_as_dict,
    verify_system,
    walls,
)
from .words import (
    Word,
    coset_min,
    double_coset_min,
    exchange,
    length_and_reduced,
    make_word,
    reduce_word,
    represented,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class SpecError(ValueError):
    """Input file or flag problem; the message names the offending field."""


@dataclass
class LoadedSpec:
    kind: str  # "system" | "coxeter" | "graph_product"
    system: CayleySystem | None = None
    gp: GraphOfGroups | None = None
    vertex_sigma: dict[int, list[Subgroup]] = field(default_factory=dict)
    realization: GPRealization | None = None


def _resolve_generators(group: FiniteGroup, names: Sequence, where: str) -> list[int]:
    if not isinstance(names, Sequence) or isinstance(names, str):
        raise SpecError(f"{where} must be a list of element names")
    ids = []
    for name in names:
        try:
            e = group.id_of(str(name))
        except ValueError:
            raise SpecError(f"{where}: unknown element name {name!r}") from None
        if e == 0:
            raise SpecError(f"{where}: generator {name!r} is the identity")
        ids.append(e)
    return ids


def _sigma_from_spec(group: FiniteGroup, sigma_spec, where: str) -> list[Subgroup]:
    if not isinstance(sigma_spec, Sequence):
        raise SpecError(f"{where} must be a list of generator lists")
    out = []
    for j, gens in enumerate(sigma_spec):
        ids = _resolve_generators(group, gens, f"{where}[{j}]")
        out.append(subgroup_generated(group, ids))
    return out


def _system_from_dict(d: Mapping) -> CayleySystem:
    if "group" not in d:
        raise SpecError("system.group is missing")
    try:
        group = build_group(d["group"], where="system.group")
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    if "sigma" not in d:
        raise SpecError("system.sigma is missing")
    sigma = _sigma_from_spec(group, d["sigma"], "system.sigma")
    return cayley_hypergraph(group, sigma)


def _coxeter_from_dict(d: Mapping) -> CayleySystem:
    family = d.get("family")
    if not isinstance(family, str):
        raise SpecError("coxeter.family is missing")
    if "m" in d:
        param = d["m"]
    elif "n" in d:
        param = d["n"]
    else:
        raise SpecError("coxeter needs an 'n' (rank) or 'm' (polygon) field")
    if not isinstance(param, int) or isinstance(param, bool):
        raise SpecError("coxeter parameter must be an integer")
    try:
        return coxeter_system(CoxeterFamily(family, param))
    except UnsupportedFamily as exc:
        raise SpecError(f"coxeter: {exc}") from None


def _gp_from_dict(d: Mapping, vsys: Mapping | None) -> tuple[GraphOfGroups, dict[int, list[Subgroup]]]:
    verts = d.get("vertices")
    if not isinstance(verts, Sequence) or not verts:
        raise SpecError("graph_product.vertices must be a nonempty list")
    ids = []
    groups = []
    for k, v in enumerate(verts):
        if not isinstance(v, Mapping) or "id" not in v or "group" not in v:
            raise SpecError(f"graph_product.vertices[{k}] needs 'id' and 'group'")
        ids.append(str(v["id"]))
        try:
            groups.append(build_group(v["group"], where=f"graph_product.vertices[{k}].group"))
        except ValueError as exc:
            raise SpecError(str(exc)) from None
    edges = d.get("edges", [])
    if not isinstance(edges, Sequence):
        raise SpecError("graph_product.edges must be a list of vertex-id pairs")
    for k, e in enumerate(edges):
        if not isinstance(e, Sequence) or len(e) != 2:
            raise SpecError(f"graph_product.edges[{k}] must be a pair of vertex ids")
    try:
        gp = graph_of_groups(ids, groups, edges)
    except ValueError as exc:
        raise SpecError(f"graph_product: {exc}") from None
    vertex_sigma: dict[int, list[Subgroup]] = {}
    if vsys is not None:
        if not isinstance(vsys, Mapping):
            raise SpecError("vertex_systems must be an object keyed by vertex id")
        for vid, sigma_spec in vsys.items():
            try:
                vi = gp.index_of(str(vid))
            except ValueError:
                raise SpecError(f"vertex_systems: unknown vertex {vid!r}") from None
            vertex_sigma[vi] = _sigma_from_spec(
                gp.groups[vi], sigma_spec, f"vertex_systems[{vid!r}]"
            )
    return gp, vertex_sigma


def load_spec(path: str) -> LoadedSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, Mapping):
        raise SpecError(f"{path}: top level must be an object")
    kinds = [k for k in ("system", "coxeter", "graph_product") if k in doc]
    if len(kinds) != 1:
        raise SpecError(
            f"{path}: exactly one of 'system', 'coxeter', 'graph_product' is required"
        )
    kind = kinds[0]
    if kind == "system":
        return LoadedSpec("system", system=_system_from_dict(doc["system"]))
    if kind == "coxeter":
        return LoadedSpec("coxeter", system=_coxeter_from_dict(doc["coxeter"]))
    gp, vertex_sigma = _gp_from_dict(doc["graph_product"], doc.get("vertex_systems"))
    return LoadedSpec("graph_product", gp=gp, vertex_sigma=vertex_sigma)


def _materialize(loaded: LoadedSpec, cap: int | None) -> CayleySystem:
    """Cayley system for any spec kind; graph products are enumerated first."""
    if loaded.system is not None:
        return loaded.system
    assert loaded.gp is not None
    if loaded.realization is None:
        loaded.realization = enumerate_group(loaded.gp, cap or max_group_order())
    loaded.system = composite_system(loaded.realization, loaded.vertex_sigma or None)
    return loaded.system


def _require_gp(loaded: LoadedSpec, command: str) -> GraphOfGroups:
    if loaded.gp is None:
        raise SpecError(f"{command} requires a graph_product spec")
    return loaded.gp


def _parse_word(system: CayleySystem, literal: str) -> Word:
    names = [x.strip() for x in literal.split(",")] if literal.strip() else []
    letters = []
    for name in names:
        try:
            e = system.group.id_of(name)
        except ValueError:
            raise SpecError(f"--word: unknown element name {name!r}") from None
        if e == 0:
            raise SpecError(f"--word: the identity {name!r} is not a letter")
        for j, sub in enumerate(system.sigma):
            if e in sub:
                letters.append((e, j))
                break
        else:
            raise SpecError(f"--word: {name!r} lies in no fundamental subgroup")
    return make_word(system, letters)


def _parse_gp_word(gp: GraphOfGroups, literal: str) -> GPWord:
    items = [x.strip() for x in literal.split(",")] if literal.strip() else []
    syllables = []
    for item in items:
        if ":" not in item:
            raise SpecError(f"--word: syllable {item!r} must be vertex:element")
        vid, _, ename = item.partition(":")
        vi = None
        try:
            vi = gp.index_of(vid.strip())
        except ValueError:
            raise SpecError(f"--word: unknown vertex {vid.strip()!r}") from None
        try:
            e = gp.groups[vi].id_of(ename.strip())
        except ValueError:
            raise SpecError(
                f"--word: unknown element {ename.strip()!r} at vertex {vid.strip()!r}"
            ) from None
        if e == 0:
            raise SpecError(f"--word: identity syllable {item!r} is not allowed")
        syllables.append((vi, e))
    return gp_word(gp, syllables)


def _parse_indices(raw: str, system: CayleySystem, flag: str) -> list[int]:
    if not raw.strip():
        return []
    out = []
    for part in raw.split(","):
        try:
            j = int(part.strip())
        except ValueError:
            raise SpecError(f"{flag}: {part.strip()!r} is not an integer") from None
        if not 0 <= j < len(system.sigma):
            raise SpecError(f"{flag}: sigma index {j} out of range")
        out.append(j)
    return out


def _word_names(system: CayleySystem, w: Word) -> list[str]:
    return [system.group.names[s] for s, _ in w.letters]


def _gp_word_literals(gp: GraphOfGroups, w: GPWord) -> list[str]:
    return [f"{gp.vertex_ids[v]}:{gp.groups[v].names[g]}" for v, g in w.syllables]


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def hypergraph_json_dict(system: CayleySystem) -> dict:
    return {
        "vertices": list(system.group.names),
        "edges": [sorted(e) for e in system.hypergraph.edges],
        "edge_subgroup": list(system.edge_subgroup),
    }


def hypergraph_from_json_dict(d: Mapping) -> Hypergraph:
    return hypergraph(range(len(d["vertices"])), d["edges"])


def hypergraph_dot(system: CayleySystem) -> str:
    """DOT export: size-2 edges as plain edges, larger edges as stars through
    a synthetic square node e<k>."""
    lines = ["graph cayley {"]
    for v in system.group.elements():
        lines.append(f'  v{v} [label="{system.group.names[v]}"];')
    for eid, e in enumerate(system.hypergraph.edges):
        members = sorted(e)
        if len(members) == 2:
            lines.append(f"  v{members[0]} -- v{members[1]};")
        else:
            lines.append(f'  e{eid} [shape=square, label="e{eid}"];')
            for v in members:
                lines.append(f"  v{v} -- e{eid};")
    lines.append("}")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    doc = verification_as_dict(system, verify_system(system))
    _emit(_dumps(doc), args.out)
    return EXIT_PASS if doc["passed"] else EXIT_FAIL


def _cmd_cayley(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    if args.format == "json":
        _emit(_dumps(hypergraph_json_dict(system)), args.out)
    else:
        _emit(hypergraph_dot(system), args.out)
    return EXIT_PASS


def _cmd_walls(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    names = system.group.names
    doc = [
        {
            "subgroup": [names[x] for x in wl.subgroup.elements],
            "fixed_edges": list(wl.fixed_edges),
        }
        for wl in walls(system)
    ]
    _emit(_dumps(doc), args.out)
    return EXIT_PASS


def _cmd_reduce(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    w = _parse_word(system, args.word)
    _emit(_dumps(_word_names(system, reduce_word(system, w))), args.out)
    return EXIT_PASS


def _cmd_length(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    g = represented(system, _parse_word(system, args.word))
    n, geo = length_and_reduced(system, g)
    _emit(_dumps({"length": n, "word": _word_names(system, geo)}), args.out)
    return EXIT_PASS


def _cmd_exchange(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    w = _parse_word(system, args.word)
    letter = _parse_word(system, args.letter)
    if len(letter.letters) != 1:
        raise SpecError("--letter must name exactly one element")
    s0, s0_index = letter.letters[0]
    if args.sigma is not None:
        picks = _parse_indices(args.sigma, system, "--sigma")
        if len(picks) != 1:
            raise SpecError("--sigma must name a single index for exchange")
        s0_index = picks[0]
        if s0 not in system.sigma[s0_index]:
            raise SpecError(f"--letter element is not in sigma[{s0_index}]")
    outcome = exchange(system, w, s0, s0_index)
    names = system.group.names
    doc = {
        "case": outcome.case,
        "index": outcome.index,
        "replacement": None if outcome.replacement is None else names[outcome.replacement],
        "witness": None if outcome.witness is None else _word_names(system, outcome.witness),
    }
    _emit(_dumps(doc), args.out)
    return EXIT_PASS


def _cmd_sector(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    indices = _parse_indices(args.sigma, system, "--sigma")
    g = represented(system, _parse_word(system, args.word))
    h, k = sector_decompose(system, indices, g)
    names = system.group.names
    doc = {"h": names[h], "k": names[k], "fundamental": h == g}
    _emit(_dumps(doc), args.out)
    return EXIT_PASS


def _cmd_coset_min(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    picks = _parse_indices(args.sigma, system, "--sigma")
    if len(picks) != 1:
        raise SpecError("--sigma must name a single index for coset-min")
    g = represented(system, _parse_word(system, args.word))
    m = coset_min(system, picks[0], g, args.side)
    _emit(_dumps({"minimum": system.group.names[m]}), args.out)
    return EXIT_PASS


def _cmd_double_coset_min(args) -> int:
    loaded = load_spec(args.spec)
    system = _materialize(loaded, args.cap)
    a = _parse_indices(args.a, system, "--a")
    b = _parse_indices(args.b, system, "--b")
    g = represented(system, _parse_word(system, args.word))
    res = double_coset_min(system, a, b, g)
    names = system.group.names
    doc = {"minimum": names[res.minimum], "a": names[res.a], "b": names[res.b]}
    _emit(_dumps(doc), args.out)
    return EXIT_PASS


def _cmd_normalize(args) -> int:
    loaded = load_spec(args.spec)
    gp = _require_gp(loaded, "normalize")
    w = _parse_gp_word(gp, args.word)
    _emit(_dumps(_gp_word_literals(gp, normalize(gp, w))), args.out)
    return EXIT_PASS


def _cmd_multiply(args) -> int:
    loaded = load_spec(args.spec)
    gp = _require_gp(loaded, "multiply")
    if not args.word or len(args.word) < 2:
        raise SpecError("multiply needs --word given at least twice")
    acc = normalize(gp, _parse_gp_word(gp, args.word[0]))
    for literal in args.word[1:]:
        acc = gp_multiply(gp, acc, normalize(gp, _parse_gp_word(gp, literal)))
    _emit(_dumps(_gp_word_literals(gp, acc)), args.out)
    return EXIT_PASS


def _cmd_chamber(args) -> int:
    loaded = load_spec(args.spec)
    gp = _require_gp(loaded, "chamber")
    try:
        vi = gp.index_of(args.vertex)
    except ValueError:
        raise SpecError(f"--vertex: unknown vertex {args.vertex!r}") from None
    g = normalize(gp, _parse_gp_word(gp, args.word))
    wall = None
    lengths = None
    if args.sigma is not None:
        try:
            j = int(args.sigma)
        except ValueError:
            raise SpecError("--sigma must be a single integer for chamber") from None
        members = loaded.vertex_sigma.get(vi)
        if not members:
            raise SpecError(f"--sigma given but vertex {args.vertex!r} has no vertex system")
        if not 0 <= j < len(members):
            raise SpecError(f"--sigma index {j} out of range for vertex {args.vertex!r}")
        wall = members[j].elements
        lengths = cayley_hypergraph(gp.groups[vi], members).lengths
    label = chamber_of(gp, vi, g, wall, lengths)
    _emit(_dumps({"chamber": gp.groups[vi].names[label]}), args.out)
    return EXIT_PASS


def _cmd_enumerate(args) -> int:
    loaded = load_spec(args.spec)
    gp = _require_gp(loaded, "enumerate")
    cap = args.cap or max_group_order()
    try:
        real = enumerate_group(gp, cap)
    except InfiniteOrCapExceeded:
        _emit(f"cap exceeded at {cap} elements", args.out)
        return EXIT_CAP
    _emit(_dumps({"order": real.group.order}), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrg",
        description=(
            "Hyperreflection systems on Cayley hypergraphs and graph products: "
            "verification, word operations, and exports."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="JSON system spec file")
        p.add_argument("--out", help="write output to a file instead of stdout")
        p.add_argument(
            "--cap",
            type=int,
            default=None,
            help="normal-form cap when a graph product must be enumerated",
        )
        p.set_defaults(func=func)
        return p

    add("verify", _cmd_verify, "verify the hyperreflection axioms; exit 0 pass, 1 fail")

    p = add("cayley", _cmd_cayley, "export the Cayley hypergraph")
    p.add_argument("--format", choices=("dot", "json"), default="json")

    add("walls", _cmd_walls, "list all walls (conjugates of fundamentals)")

    p = add("reduce", _cmd_reduce, "reduce a word via deletions and replacements")
    p.add_argument("--word", required=True, help="comma-separated letter names")

    p = add("length", _cmd_length, "word length and canonical geodesic of an element")
    p.add_argument("--word", required=True)

    p = add("exchange", _cmd_exchange, "exchange trichotomy for a reduced word")
    p.add_argument("--word", required=True)
    p.add_argument("--letter", required=True, help="the letter s0 to prepend")
    p.add_argument("--sigma", help="sigma index for s0 when ambiguous")

    p = add("sector", _cmd_sector, "sector decomposition g = h k over a sigma subset")
    p.add_argument("--sigma", required=True, help="comma-separated sigma indices")
    p.add_argument("--word", required=True)

    p = add("coset-min", _cmd_coset_min, "unique minimum of a fundamental coset")
    p.add_argument("--sigma", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--side", choices=("left", "right"), default="right")

    p = add("double-coset-min", _cmd_double_coset_min, "unique double-coset minimum")
    p.add_argument("--a", required=True, help="sigma indices of A")
    p.add_argument("--b", required=True, help="sigma indices of B")
    p.add_argument("--word", required=True)

    p = add("normalize", _cmd_normalize, "normal form of a graph-product word")
    p.add_argument("--word", required=True, help="comma-separated vertex:element syllables")

    p = add("multiply", _cmd_multiply, "product of graph-product words")
    p.add_argument("--word", action="append", help="repeat for each factor")

    p = add("chamber", _cmd_chamber, "chamber label for a vertex-group wall")
    p.add_argument("--vertex", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--sigma", help="index into the vertex system at --vertex")

    p = add("enumerate", _cmd_enumerate, "enumerate a finite graph product")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfiniteOrCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
