"""Weighted point sets on concentric spheres and two design verifiers.

The monomial route compares weighted monomial sums with layerwise sphere
averages.  The Gram route checks that the squared norms of the harmonic
moment vectors vanish; it only needs inner products, so radical
coordinates never have to be multiplied across incompatible radicands.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gegenbauer import gegenbauer_table, sphere_moment
from .scalar import (
    Approx, InexactError, Quad, Scalar, approx_tolerance, as_scalar, exact_only,
    format_scalar, parse_scalar, scalar_cmp, sign, sqrt_scalar,
)

__all__ = [
    "Design", "Layer", "LayerDecomposition", "InnerProductProfile",
    "VerificationReport", "DesignError", "decompose_layers", "inner_product_profile",
    "verify_design_monomial", "verify_design_gram", "verify_design", "scale_similar",
    "add_origin", "antipodal_check", "dot", "read_design", "write_design",
    "parse_design", "format_design", "monomials",
]

CLASS_GAP_FACTOR = 1000


class DesignError(ValueError):
    pass


def dot(x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    acc: Scalar = Quad(0)
    for a, b in zip(x, y):
        acc = acc + a * b
    return acc


def _is_zero(x: Scalar) -> bool:
    return sign(x) == 0


@dataclass(frozen=True)
class Design:
    n: int
    points: tuple[tuple[Scalar, ...], ...]
    weights: tuple[Scalar, ...]

    def __init__(self, n: int, points: Iterable[Sequence], weights: Iterable):
        pts = tuple(tuple(as_scalar(c) for c in p) for p in points)
        ws = tuple(as_scalar(w) for w in weights)
        if len(pts) < 1 or len(pts) != len(ws):
            raise DesignError("a design needs as many weights as points, at least one")
        for p in pts:
            if len(p) != n:
                raise DesignError(f"point of length {len(p)} in dimension {n}")
        for w in ws:
            if sign(w) <= 0:
                raise DesignError("weights must be strictly positive")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", ws)
        self._check_duplicates()

    def _check_duplicates(self) -> None:
        if self.is_exact:
            if len(set(self.points)) != len(self.points):
                raise DesignError("duplicate points")
            return
        for i, j in itertools.combinations(range(len(self.points)), 2):
            if all(scalar_cmp(a, b) == 0 for a, b in zip(self.points[i], self.points[j])):
                raise DesignError(f"duplicate points {i} and {j}")

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for p in self.points for c in p) and all(w.is_exact for w in self.weights)

    def __len__(self) -> int:
        return len(self.points)

    def to_approx(self) -> "Design":
        return Design(self.n, [[Approx(c.to_mpf()) for c in p] for p in self.points],
                      [Approx(w.to_mpf()) for w in self.weights])


@dataclass
class Layer:
    radius2: Scalar
    members: list[int]
    weight: Scalar | None  # common weight when constant on the layer
    total_weight: Scalar

    @property
    def radius(self) -> Scalar:
        return sqrt_scalar(self.radius2)


@dataclass
class LayerDecomposition:
    layers: list[Layer]
    origin_flag: int
    layer_of: list[int] = field(default_factory=list)

    @property
    def p(self) -> int:
        return len(self.layers)

    def summary(self) -> list[dict]:
        out = []
        for lay in self.layers:
            out.append({
                "radius2": format_scalar(lay.radius2),
                "size": len(lay.members),
                "weight": None if lay.weight is None else format_scalar(lay.weight),
                "total_weight": format_scalar(lay.total_weight),
            })
        return out


def _group_keys(values: list[Scalar]) -> list[int]:
    """Assign class ids to values, equal values sharing an id.  Ids follow
    ascending order of the values."""
    if all(v.is_exact for v in values):
        distinct = sorted(set(values), key=_SortKey)
        index = {v: i for i, v in enumerate(distinct)}
        return [index[v] for v in values]
    order = sorted(range(len(values)), key=lambda i: values[i].to_mpf())
    ids = [0] * len(values)
    tol = approx_tolerance()
    cur = 0
    for pos, i in enumerate(order):
        if pos:
            prev = values[order[pos - 1]].to_mpf()
            gap = values[i].to_mpf() - prev
            scale = max(1, abs(prev))
            if gap > tol * scale:
                if gap <= CLASS_GAP_FACTOR * tol * scale:
                    raise DesignError("ambiguous clustering of approximate values")
                cur += 1
        ids[i] = cur
    return ids


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v: Scalar):
        self.v = v

    def __lt__(self, other: "_SortKey") -> bool:
        return scalar_cmp(self.v, other.v) < 0


def decompose_layers(d: Design) -> LayerDecomposition:
    norms = [dot(p, p) for p in d.points]
    ids = _group_keys(norms)
    count = max(ids) + 1
    members: list[list[int]] = [[] for _ in range(count)]
    for i, k in enumerate(ids):
        members[k].append(i)
    layers = []
    for mem in members:
        ws = [d.weights[i] for i in mem]
        total: Scalar = Quad(0)
        for w in ws:
            total = total + w
        const = ws[0] if all(scalar_cmp(w, ws[0]) == 0 for w in ws) else None
        layers.append(Layer(norms[mem[0]], mem, const, total))
    origin = 1 if _is_zero(layers[0].radius2) else 0
    layer_of = [0] * len(d.points)
    for li, lay in enumerate(layers):
        for i in lay.members:
            layer_of[i] = li
    return LayerDecomposition(layers, origin, layer_of)


@dataclass
class InnerProductProfile:
    """For each pair (lam, mu) of nonzero layers, the distinct inner products
    and cosines, sorted descending.  Indices are 0-based layer positions."""

    inner_products: dict[tuple[int, int], list[Scalar]]
    cosines: dict[tuple[int, int], list[Scalar]]

    def size(self, lam: int, mu: int) -> int:
        return len(self.cosines[(lam, mu)])


def _cosine(ip: Scalar, r2a: Scalar, r2b: Scalar) -> Scalar:
    return ip / sqrt_scalar(r2a * r2b)


def inner_product_profile(d: Design, dec: LayerDecomposition | None = None) -> InnerProductProfile:
    dec = dec or decompose_layers(d)
    start = dec.origin_flag
    ips: dict[tuple[int, int], list[Scalar]] = {}
    coss: dict[tuple[int, int], list[Scalar]] = {}
    for lam in range(start, dec.p):
        for mu in range(lam, dec.p):
            A, B = dec.layers[lam], dec.layers[mu]
            vals = []
            for i in A.members:
                for j in B.members:
                    if lam == mu and i == j:
                        continue
                    vals.append(dot(d.points[i], d.points[j]))
            if vals:
                ids = _group_keys(vals)
                reps: dict[int, Scalar] = {}
                for v, k in zip(vals, ids):
                    reps.setdefault(k, v)
                distinct = [reps[k] for k in sorted(reps, reverse=True)]
            else:
                distinct = []
            cos = [_cosine(v, A.radius2, B.radius2) for v in distinct]
            ips[(lam, mu)] = ips[(mu, lam)] = distinct
            coss[(lam, mu)] = coss[(mu, lam)] = cos
    return InnerProductProfile(ips, coss)


@dataclass
class VerificationReport:
    t: int
    mode: str
    passed: bool
    residuals: list[tuple[str, Scalar, bool]]
    layer_summary: list[dict]
    route: str = "monomial"

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "mode": self.mode,
            "route": self.route,
            "pass": self.passed,
            "residuals": [{"key": k, "value": format_scalar(v), "zero": z} for k, v, z in self.residuals],
            "layer_summary": self.layer_summary,
        }

    def failures(self) -> list[str]:
        return [k for k, _, z in self.residuals if not z]


def monomials(n: int, t: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all monomials of total degree <= t, graded order."""
    out = []
    for deg in range(t + 1):
        for combo in itertools.combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _zero_test(x: Scalar, scale: Scalar | None = None) -> bool:
    if x.is_exact:
        return not x
    tol = approx_tolerance()
    s = 1 if scale is None else max(1, abs(scale.to_mpf()))
    return abs(x.to_mpf()) <= tol * s


def verify_design_monomial(d: Design, t: int, mode: str = "exact") -> VerificationReport:
    """Definition-level check over all monomials of degree at most t."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if mode not in ("exact", "approx"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "approx":
        return _verify_monomial(d.to_approx(), t, "approx")
    if not d.is_exact:
        raise DesignError("design has approximate entries; use mode=approx")
    try:
        with exact_only():
            return _verify_monomial(d, t, "exact")
    except InexactError as exc:
        raise DesignError(f"exact verification impossible ({exc}); use mode=approx") from exc


def _verify_monomial(d: Design, t: int, mode: str) -> VerificationReport:
    dec = decompose_layers(d)
    n = d.n
    powers = []
    for p in d.points:
        row = []
        for c in p:
            pw = [Quad(1)]
            for _ in range(t):
                pw.append(pw[-1] * c)
            row.append(pw)
        powers.append(row)
    residuals = []
    passed = True
    for e in monomials(n, t):
        deg = sum(e)
        lhs: Scalar = Quad(0)
        big: Scalar = Quad(0)
        for idx, w in enumerate(d.weights):
            term = w
            for var, k in enumerate(e):
                if k:
                    term = term * powers[idx][var][k]
            lhs = lhs + term
            if not term.is_exact:
                big = big + abs(term)
        rhs: Scalar = Quad(0)
        if deg % 2 == 0:
            mom = sphere_moment(e)
            if mom:
                for lay in dec.layers:
                    if _is_zero(lay.radius2):
                        if deg == 0:
                            rhs = rhs + lay.total_weight
                        continue
                    rhs = rhs + lay.total_weight * (lay.radius2 ** (deg // 2)) * mom
        res = lhs - rhs
        zero = _zero_test(res, big if not res.is_exact else None)
        passed = passed and zero
        residuals.append(("x^" + "".join(str(k) for k in e) if n < 10 else "x^" + ",".join(map(str, e)), res, zero))
    return VerificationReport(t, mode, passed, residuals, dec.summary(), "monomial")


def verify_design_gram(d: Design, t: int) -> VerificationReport:
    """Gegenbauer-kernel check: G(l, j, j') = 0 for 1 <= l <= t, 2j, 2j' <= t - l."""
    if t < 1:
        raise ValueError("t must be at least 1")
    exact = d.is_exact
    dec = decompose_layers(d)
    idx = [i for i in range(len(d)) if not (dec.origin_flag and dec.layer_of[i] == 0)]
    norms = {i: dot(d.points[i], d.points[i]) for i in idx}
    # group ordered pairs by (layer x, layer y, inner product); accumulate w(x)w(y)
    groups: dict = defaultdict(lambda: Quad(0))
    approx_pairs = []
    for a in idx:
        for b in idx:
            ip = dot(d.points[a], d.points[b])
            ww = d.weights[a] * d.weights[b]
            if exact and ip.is_exact and ww.is_exact:
                key = (dec.layer_of[a], dec.layer_of[b], ip)
                groups[key] = groups[key] + ww
            else:
                exact = False
                approx_pairs.append((norms[a], norms[b], ip, ww))
    entries = [(norms_of(dec, la), norms_of(dec, lb), ip, ww) for (la, lb, ip), ww in groups.items()]
    entries.extend(approx_pairs)
    table = gegenbauer_table(d.n, max(t, 1))
    residuals = []
    passed = True
    for l in range(1, t + 1):
        q = table.coeffs[l]
        jmax = (t - l) // 2
        for j in range(jmax + 1):
            for jp in range(jmax + 1):
                total: Scalar = Quad(0)
                scale: Scalar = Quad(0)
                for nx, ny, ip, ww in entries:
                    kern: Scalar = Quad(0)
                    nn = nx * ny
                    for c in range(l % 2, l + 1, 2):
                        if q[c]:
                            kern = kern + q[c] * (ip ** c) * (nn ** ((l - c) // 2))
                    term = ww * (nx ** j) * (ny ** jp) * kern
                    total = total + term
                    if not term.is_exact:
                        scale = scale + abs(term)
                zero = _zero_test(total, None if total.is_exact else scale)
                passed = passed and zero
                residuals.append((f"G({l},{j},{jp})", total, zero))
    mode = "exact" if all(v.is_exact for _, v, _ in residuals) else "approx"
    return VerificationReport(t, mode, passed, residuals, dec.summary(), "gram")


def norms_of(dec: LayerDecomposition, layer: int) -> Scalar:
    return dec.layers[layer].radius2


def verify_design(d: Design, t: int, mode: str = "auto", route: str = "gram") -> VerificationReport:
    """Convenience front end.  ``auto`` mode is exact unless the design carries
    approximate entries."""
    if mode == "auto":
        mode = "exact" if d.is_exact else "approx"
    if route == "monomial":
        return verify_design_monomial(d, t, mode)
    if mode == "approx" and d.is_exact:
        d = d.to_approx()
    if mode == "exact" and not d.is_exact:
        raise DesignError("design has approximate entries; use mode=approx")
    rep = verify_design_gram(d, t)
    rep.mode = mode
    return rep


def scale_similar(d: Design, rho, mu) -> Design:
    """X' = X / rho with w'(x / rho) = mu * w(x)."""
    rho = as_scalar(rho)
    mu = as_scalar(mu)
    if sign(rho) <= 0 or sign(mu) <= 0:
        raise DesignError("rho and mu must be positive")
    pts = [[c / rho for c in p] for p in d.points]
    return Design(d.n, pts, [mu * w for w in d.weights])


def add_origin(d: Design, w0) -> Design:
    w0 = as_scalar(w0)
    if any(all(_is_zero(c) for c in p) for p in d.points):
        raise DesignError("origin already present")
    zero = [Quad(0)] * d.n
    return Design(d.n, list(d.points) + [zero], list(d.weights) + [w0])


def antipodal_check(d: Design) -> bool:
    if d.is_exact:
        lookup = {p: w for p, w in zip(d.points, d.weights)}
        for p, w in zip(d.points, d.weights):
            q = tuple(-c for c in p)
            if q not in lookup or lookup[q] != w:
                return False
        return True
    for p, w in zip(d.points, d.weights):
        found = False
        for q, v in zip(d.points, d.weights):
            if all(scalar_cmp(a, -b) == 0 for a, b in zip(p, q)):
                found = scalar_cmp(w, v) == 0
                break
        if not found:
            return False
    return True


# ------------------------------------------------------------- file format

MAGIC = "eudes v1"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_design(text: str, exact: bool = False) -> Design:
    """Parse the text design format.  With ``exact`` set, decimal literals are
    rejected."""
    lines = [_strip(l) for l in text.splitlines()]
    lines = [l for l in lines if l]
    if not lines or lines[0] != MAGIC:
        raise DesignError(f"missing header {MAGIC!r}")
    if len(lines) < 2:
        raise DesignError("missing size line")
    try:
        fields = dict(tok.split("=", 1) for tok in lines[1].split())
        n = int(fields["n"])
        count = int(fields["points"])
    except (ValueError, KeyError) as exc:
        raise DesignError(f"bad size line {lines[1]!r}") from exc
    body = lines[2:]
    if len(body) != count:
        raise DesignError(f"expected {count} point lines, found {len(body)}")
    pts, ws = [], []
    for row in body:
        if ";" not in row:
            raise DesignError(f"point line without ';': {row!r}")
        head, coords = row.split(";", 1)
        head = head.strip()
        if not head.startswith("w="):
            raise DesignError(f"point line must start with 'w=': {row!r}")
        try:
            if exact:
                with exact_only():
                    w = parse_scalar(head[2:])
                    cs = [parse_scalar(c) for c in coords.split()]
            else:
                w = parse_scalar(head[2:])
                cs = [parse_scalar(c) for c in coords.split()]
        except InexactError as exc:
            raise DesignError(f"decimal literal in exact mode: {row!r}") from exc
        if sign(w) <= 0:
            raise DesignError(f"nonpositive weight in {row!r}")
        if len(cs) != n:
            raise DesignError(f"expected {n} coordinates in {row!r}")
        pts.append(cs)
        ws.append(w)
    return Design(n, pts, ws)


def format_design(d: Design, comment: str | None = None) -> str:
    out = [MAGIC]
    if comment:
        out.extend("# " + c for c in comment.splitlines())
    out.append(f"n={d.n} points={len(d)}")
    for p, w in zip(d.points, d.weights):
        out.append(f"w={format_scalar(w)} ; " + " ".join(format_scalar(c) for c in p))
    return "\n".join(out) + "\n"


def read_design(path: str | os.PathLike, exact: bool = False) -> Design:
    with open(path, encoding="utf-8") as fh:
        return parse_design(fh.read(), exact=exact)


def write_design(d: Design, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_design(d, comment))
