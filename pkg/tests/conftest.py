from __future__ import annotations

import functools
import itertools
import json
from fractions import Fraction as F
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

from eudes.designs import Design, add_origin, decompose_layers, scale_similar
from eudes.families import (example_n2, example_n2_params, family_nontight, family_realization, family_tight,
                            schlafli_design, split_spherical)
from eudes.scalar import Quad, sqrt_exact

# deterministic by default; `--hypothesis-profile=random --hypothesis-seed=N` to explore
settings.register_profile("default", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("random", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240601, help="seed for numpy-driven random tests")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


def schema(name: str) -> dict:
    return json.loads(files("eudes").joinpath(f"schemas/{name}.schema.json").read_text())


# ------------------------------------------------------------ shared objects

@functools.lru_cache(maxsize=None)
def schlafli():
    return schlafli_design()


@functools.lru_cache(maxsize=None)
def split_k2():
    return split_spherical(schlafli(), 0, 2)


def signed_perm_orbit(v) -> list[tuple]:
    """Orbit of v under coordinate permutations and sign changes."""
    out = set()
    for perm in itertools.permutations(v):
        for signs in itertools.product((1, -1), repeat=len(v)):
            out.add(tuple(s * c for s, c in zip(signs, perm)))
    return sorted(out)


def cross_polytope(n: int) -> Design:
    pts = []
    for i in range(n):
        for s in (1, -1):
            p = [0] * n
            p[i] = s
            pts.append(p)
    return Design(n, pts, [1] * len(pts))


def cube(n: int) -> Design:
    pts = list(itertools.product((1, -1), repeat=n))
    return Design(n, pts, [1] * len(pts))


def regular_polygon(m: int) -> Design:
    # exact coordinates for m in {3, 4, 6, 8, 12}
    h3, h2 = sqrt_exact(F(3, 4)), sqrt_exact(F(1, 2))
    base = {
        3: [(1, 0), (F(-1, 2), h3), (F(-1, 2), -h3)],
        4: [(1, 0), (0, 1), (-1, 0), (0, -1)],
        6: [(1, 0), (F(1, 2), h3), (F(-1, 2), h3), (-1, 0), (F(-1, 2), -h3), (F(1, 2), -h3)],
        8: [(1, 0), (h2, h2), (0, 1), (-h2, h2), (-1, 0), (-h2, -h2), (0, -1), (h2, -h2)],
    }
    if m == 12:
        pts = base[6] + [(h3, F(1, 2)), (0, 1), (-h3, F(1, 2)), (-h3, F(-1, 2)), (0, -1), (h3, F(-1, 2))]
    else:
        pts = base[m]
    return Design(2, pts, [1] * len(pts))


def simplex3() -> Design:
    pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return Design(3, pts, [1] * 4)


def icosahedron() -> Design:
    phi = Quad(F(1, 2), F(1, 2), 5)
    pts = []
    for a, b in itertools.product((1, -1), repeat=2):
        for cyc in range(3):
            v = [Quad(0), Quad(a), b * phi]
            pts.append(v[cyc:] + v[:cyc])
    return Design(3, pts, [1] * 12)


def cell24() -> Design:
    pts = set()
    for i, j in itertools.combinations(range(4), 2):
        for s, t in itertools.product((1, -1), repeat=2):
            p = [0] * 4
            p[i], p[j] = s, t
            pts.add(tuple(p))
    pts = sorted(pts)
    return Design(4, pts, [1] * len(pts))


def cube_plus_cross(n: int = 3) -> Design:
    # Euclidean 3-design on two spheres: any positive weights per layer
    cp, cu = cross_polytope(n), cube(n)
    return Design(n, list(cp.points) + [tuple(2 * c for c in p) for p in cu.points],
                  [1] * len(cp.points) + [F(1, 3)] * len(cu.points))


def orbit_design(vectors, weights, n: int) -> Design:
    pts, ws = [], []
    for v, w in zip(vectors, weights):
        orb = signed_perm_orbit(v)
        pts += orb
        ws += [w] * len(orb)
    return Design(n, pts, ws)


def design_corpus() -> list[tuple[str, Design]]:
    """Exact designs (and a few non-designs) used by the route-agreement checks."""
    out = [
        ("triangle", regular_polygon(3)),
        ("square", regular_polygon(4)),
        ("hexagon", regular_polygon(6)),
        ("octagon", regular_polygon(8)),
        ("dodecagon", regular_polygon(12)),
        ("cross3", cross_polytope(3)),
        ("cross4", cross_polytope(4)),
        ("cross5", cross_polytope(5)),
        ("cube3", cube(3)),
        ("cube4", cube(4)),
        ("tetrahedron", simplex3()),
        ("icosahedron", icosahedron()),
        ("24-cell", cell24()),
        ("n2_r2", example_n2(2)),
        ("n2_r3", example_n2(3)),
        ("n2_rhalf", example_n2(F(1, 2))),
        ("n2_rsqrt2", example_n2(sqrt_exact(2))),
        ("n2_origin", add_origin(example_n2(2), 7)),
        ("n2_scaled", scale_similar(example_n2(2), 2, 5)),
        ("cube_cross", cube_plus_cross(3)),
        ("orbit_2layer", orbit_design([(1, 2, 0), (3, 3, 1)], [1, F(2, 7)], 3)),
        ("bent_square", Design(2, [(1, 0), (0, 1), (-1, 0), (0, F(-1, 2))], [1] * 4)),
        ("uneven_weights", Design(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 2, 2])),
        ("skew_pair", Design(3, [(1, 2, 2), (-1, -2, -2), (2, 1, -2)], [1, 1, 1])),
    ]
    return out


def family_instances():
    return [family_nontight(k) for k in range(2, 7)] + [family_tight(k) for k in range(1, 6)]


def two_sphere_instances():
    """(params, design) pairs with an explicit point set, inner layer at radius 1."""
    X = split_k2()
    L1 = decompose_layers(X).layers[0]
    out = [(example_n2_params(r), example_n2(r)) for r in (2, 3, F(1, 2), sqrt_exact(2))]
    out.append((family_nontight(2).params, scale_similar(X, L1.radius, 1)))
    inst = family_nontight(2, 3)
    out.append((inst.params, family_realization(inst)))
    return out
