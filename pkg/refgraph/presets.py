"""
coxnorm/refgraph/presets.py
Named reflection (hyper)graphs: incidence graphs of regular polytopes,
octahedral hypergraphs and the smaller examples built from them.

Generator indices are 0-based throughout.
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from coxeter.group import build_group
from coxeter.spec import DEFAULT_ORDER_CAP, parse_spec
from refgraph.errors import UnknownPreset
from refgraph.hypergraph import ReflectionHypergraph, build_reflection_hypergraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PresetData:
    """Group spec string and generator subsets defining a preset."""
    name: str
    group: str
    subsets: Tuple[Tuple[int, ...], ...]
    description: str = ""


def _all_but(rank: int, *removed: int) -> Tuple[int, ...]:
    return tuple(i for i in range(rank) if i not in removed)


def _power_of_a1(k: int) -> str:
    if k < 1:
        raise UnknownPreset("Products of rank-one groups need k >= 1")
    return 'x'.join(['A1'] * k)


FIXED_PRESETS: Dict[str, PresetData] = {
    'c4': PresetData('c4', 'A1xA1', ((0,), (1,)), "4-cycle"),
    'c6': PresetData('c6', 'I2:3', ((0,), (1,)), "6-cycle, vertex-edge incidence of a triangle"),
    'subdivided_k4': PresetData('subdivided_k4', 'A3', ((1, 2), (0, 2)),
                                "1-subdivision of K4, vertex-edge incidence of a tetrahedron"),
    'k1_4': PresetData('k1_4', 'A3', ((1, 2), (0, 1, 2)), "star K_{1,4}"),
    'q3_hypercube': PresetData('q3_hypercube', 'D3', ((1, 2), (0, 2)), "3-cube from the demicube group"),
    'octahedron_subdivision': PresetData('octahedron_subdivision', 'D3', ((0, 1), (2,)),
                                         "1-subdivision of the octahedron"),
    'k22_replacement_octahedron': PresetData('k22_replacement_octahedron', 'B3', ((0, 1), (2,)),
                                             "K_{2,2}-replacement of the octahedron"),
    'tetra_flag_3graph': PresetData('tetra_flag_3graph', 'A3', ((1, 2), (0, 2), (0, 1)),
                                    "vertex-edge-face incidence 3-graph of a tetrahedron"),
}


def even_cycle_data(m: int) -> PresetData:
    """The 2m-cycle: vertex-edge incidence graph of a regular m-gon."""
    if m < 2:
        raise UnknownPreset("even_cycle needs m >= 2")
    group = 'A1xA1' if m == 2 else f'I2:{m}'
    return PresetData(f'even_cycle({m})', group, ((0,), (1,)), f"{2 * m}-cycle")


def gowers_octahedron_data(k: int) -> PresetData:
    """k-graph of the faces of the k-dimensional octahedron: S_i = S minus s_i."""
    return PresetData(f'gowers_octahedron({k})', _power_of_a1(k),
                      tuple(_all_but(k, i) for i in range(k)), "octahedral k-graph")


def m_k_data(k: int) -> PresetData:
    """k-graph with S_i = {s_i} over k commuting reflections."""
    return PresetData(f'm_k({k})', _power_of_a1(k), tuple((i,) for i in range(k)),
                      "complement-type octahedral k-graph")


def simplex_incidence_data(n: int, k: int, r: int) -> PresetData:
    """(k, r)-incidence graph of the n-simplex: k-faces against r-faces."""
    if not 0 <= k < r < n:
        raise UnknownPreset(f"simplex_incidence needs 0 <= k < r < n, got ({n}, {k}, {r})")
    return PresetData(f'simplex_incidence({n},{k},{r})', f'A{n}',
                      (_all_but(n, k), _all_but(n, r)), f"({k},{r})-incidence graph of the {n}-simplex")


def domination_pair_data(k: int = 3, part: int = 0,
                         removed: Sequence[int] = (1,)) -> Tuple[PresetData, PresetData]:
    """
    Octahedral k-graph H and the hypergraph H' obtained by shrinking one
    generator subset, so that S'_i is contained in S_i for every i.
    """
    full = gowers_octahedron_data(k)
    shrunk = list(full.subsets)
    shrunk[part] = tuple(i for i in shrunk[part] if i not in set(removed))
    return full, PresetData(f'domination_pair({k},{part})', full.group, tuple(shrunk),
                            "shrunken octahedral k-graph")


PARAMETRIC_PRESETS: Dict[str, Callable[..., PresetData]] = {
    'even_cycle': even_cycle_data,
    'gowers_octahedron': gowers_octahedron_data,
    'm_k': m_k_data,
    'simplex_incidence': simplex_incidence_data,
}

_CALL_RE = re.compile(r'^(\w+)\(([\d,\s]*)\)$')


def preset_data(name: str, *params: int) -> PresetData:
    """
    Resolve a preset name. Parametric presets accept either explicit
    parameters or the call form, e.g. "gowers_octahedron(3)".
    """
    match = _CALL_RE.match(name.strip())
    if match:
        name = match.group(1)
        params = tuple(int(p) for p in match.group(2).split(',') if p.strip()) + tuple(params)
    if name in FIXED_PRESETS:
        if params:
            raise UnknownPreset(f"Preset {name} takes no parameters")
        return FIXED_PRESETS[name]
    if name in PARAMETRIC_PRESETS:
        try:
            return PARAMETRIC_PRESETS[name](*params)
        except TypeError as exc:
            raise UnknownPreset(f"Bad parameters for preset {name}: {params}") from exc
    raise UnknownPreset(
        f"Unknown preset: {name}. Available: {sorted(FIXED_PRESETS) + sorted(PARAMETRIC_PRESETS)}"
    )


def build_from_data(data: PresetData, order_cap: int = DEFAULT_ORDER_CAP) -> ReflectionHypergraph:
    group = build_group(parse_spec(data.group, order_cap=order_cap))
    hypergraph = build_reflection_hypergraph(group, data.subsets)
    logger.debug("Preset %s: %s", data.name, data.description)
    return hypergraph


def preset(name: str, *params: int, order_cap: int = DEFAULT_ORDER_CAP) -> ReflectionHypergraph:
    return build_from_data(preset_data(name, *params), order_cap=order_cap)


def even_cycle(m: int) -> ReflectionHypergraph:
    return build_from_data(even_cycle_data(m))


def gowers_octahedron(k: int) -> ReflectionHypergraph:
    return build_from_data(gowers_octahedron_data(k))


def m_k(k: int) -> ReflectionHypergraph:
    return build_from_data(m_k_data(k))


def simplex_incidence(n: int, k: int, r: int) -> ReflectionHypergraph:
    return build_from_data(simplex_incidence_data(n, k, r))


def domination_pair(k: int = 3, part: int = 0,
                    removed: Sequence[int] = (1,)) -> Tuple[ReflectionHypergraph, ReflectionHypergraph]:
    """The pair (H, H') over one shared group; the default is the octahedral 3-graph pair."""
    full, shrunk = domination_pair_data(k, part, removed)
    h = build_from_data(full)
    return h, build_reflection_hypergraph(h.group, shrunk.subsets)


def acceptance_presets() -> List[str]:
    """Preset names exercised by the verification suites."""
    return ['c4', 'c6', 'subdivided_k4', 'k1_4', 'q3_hypercube', 'octahedron_subdivision',
            'k22_replacement_octahedron', 'gowers_octahedron(3)', 'm_k(3)', 'tetra_flag_3graph']
