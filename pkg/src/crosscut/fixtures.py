"""Named example posets and complexes, shipped as text so the files written to
disk are byte-stable."""

from __future__ import annotations

import os

from .complexes import SimplicialComplex, face_poset, parse_complex
from .poset import FinitePoset, format_poset, parse_poset

POSETS = {
    # three maximal elements over a 4-crown, plus 4 under 6 and 7
    "EX1": """\
elements: 0 1 2 3 4 5 6 7
0 < 2
0 < 3
1 < 2
1 < 3
2 < 5
2 < 6
2 < 7
3 < 5
3 < 6
3 < 7
4 < 6
4 < 7
""",
    "EX1prime": """\
elements: 0 1 2 3 5 6 7
0 < 2
0 < 3
1 < 2
1 < 3
2 < 5
2 < 6
2 < 7
3 < 5
3 < 6
3 < 7
""",
    "CHAIN2": "elements: 0 1\n0 < 1\n",
    "SINGLE": "elements: a\n",
    "Q3": "elements: a b c\na < b\na < c\n",
    # minimal elements 0, 1 with {0,1} bounded above but lacking meet and join
    "EX3": """\
elements: 0 1 2 3 4
0 < 2
0 < 3
0 < 4
1 < 3
1 < 4
""",
    "ANTICHAIN2": "elements: a b\n",
    "V": "elements: 0 1 2\n0 < 2\n1 < 2\n",
}

COMPLEXES = {
    "TWO_TRIANGLES": "facet: a b c\nfacet: b c d\n",
    # minimal 6-vertex triangulation of the real projective plane
    "RP2": """\
facet: 1 2 3
facet: 1 3 4
facet: 1 4 5
facet: 1 5 6
facet: 1 2 6
facet: 2 3 5
facet: 3 4 6
facet: 2 4 5
facet: 3 5 6
facet: 2 4 6
""",
}

FILENAMES = {
    "EX1": "EX1.poset",
    "EX1prime": "EX1prime.poset",
    "CHAIN2": "CHAIN2.poset",
    "SINGLE": "SINGLE.poset",
    "Q3": "Q3.poset",
    "EX3": "EX3.poset",
    "ANTICHAIN2": "antichain2.poset",
    "V": "V.poset",
    "TWO_TRIANGLES": "two_triangles.complex",
    "RP2": "rp2.complex",
}


def poset(name: str) -> FinitePoset:
    return parse_poset(POSETS[name])


def complex_(name: str) -> SimplicialComplex:
    return parse_complex(COMPLEXES[name])


def two_triangle_face_poset() -> FinitePoset:
    """Face poset of the triangles abc and bcd glued along bc (11 faces)."""
    return face_poset(complex_("TWO_TRIANGLES")).poset


def write_fixtures(directory: str) -> list:
    """Write every fixture into ``directory``; returns the paths written."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, fname in FILENAMES.items():
        if name in POSETS:
            text = format_poset(parse_poset(POSETS[name]))
        else:
            text = COMPLEXES[name]
        path = os.path.join(directory, fname)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        paths.append(path)
    return paths
