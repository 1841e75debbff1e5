"""Structure constants, Lie bi-algebra axioms and Manin triple witnesses.

Conventions, with X_a spanning A and X^a the dual basis of B
(<X_a, X^b> = delta_a^b):

    [X_a, X_b] = gamma_ab^c X_c
    [X^a, X^b] = delta_c^ab X^c
    [X^a, X_b] = gamma_bd^a X^d - delta_b^ad X_d

``StructureConstants.gamma[(a, b)]`` maps c -> gamma_ab^c and
``StructureConstants.delta[(a, b)]`` maps c -> delta_c^ab.  Both orientations
of every pair are stored, so a table with broken antisymmetry can be
represented (and is then rejected by the checks).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .matrix import SquareMatrix, commutator, pairing

__all__ = [
    "BasisLabel",
    "StructureConstants",
    "ManinTripleWitness",
    "VerificationReport",
    "check_jacobi",
    "check_cojacobi",
    "check_cocycle",
    "check_mixed_brackets",
    "check_antisymmetry",
    "verify_manin",
    "extract_constants",
    "compare_constants",
    "check_all_axioms",
]

MAX_FAILURES = 20
# coefficients below this are dropped from approximate tables
_APPROX_SPARSITY = 1e-13


@dataclass(frozen=True, order=True)
class BasisLabel:
    family: str
    index: tuple = ()

    def __str__(self) -> str:
        if not self.index:
            return self.family
        return f"{self.family}({','.join(str(i) for i in self.index)})"


@dataclass
class VerificationReport:
    """Outcome of one identity check; ``passed`` iff worst residual <= tol."""

    name: str
    passed: bool
    worst_residual: float
    tol: float
    failures: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)

    @classmethod
    def from_residuals(cls, name, worst, tol, failures=(), details=None) -> "VerificationReport":
        return cls(name, worst <= tol, float(worst), float(tol), list(failures)[:MAX_FAILURES], details or {})

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "tol": self.tol,
            "failures": [[str(x) for x in f] if isinstance(f, tuple) else str(f) for f in self.failures],
            "details": _jsonable(self.details),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: worst residual {self.worst_residual:.3e} (tol {self.tol:g})"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, VerificationReport):
        return x.to_json()
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return str(x)


# ---------------------------------------------------------------------------
# structure constants


def _accumulate(target: dict, key, value, field) -> None:
    v = target.get(key)
    target[key] = value if v is None else v + value


def _prune(d: dict, field) -> dict:
    if field.exact:
        return {k: v for k, v in d.items() if v}
    return {k: v for k, v in d.items() if abs(v) > _APPROX_SPARSITY}


@dataclass
class StructureConstants:
    labels: list
    field: object
    gamma: dict = dc_field(default_factory=dict)
    delta: dict = dc_field(default_factory=dict)

    @classmethod
    def from_entries(cls, labels, field, gamma=(), delta=(), antisymmetrize=True):
        """Build from (a, b, c, value) tuples given by label position.

        gamma entries mean gamma_ab^c, delta entries delta_c^ab.  With
        ``antisymmetrize`` the (b, a) orientation is filled in with the
        opposite sign.
        """
        sc = cls(list(labels), field)
        for table, entries in ((sc.gamma, gamma), (sc.delta, delta)):
            for a, b, c, v in entries:
                v = field.coerce(v)
                table.setdefault((a, b), {})[c] = v
                if antisymmetrize:
                    table.setdefault((b, a), {})[c] = -v
        return sc

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def gamma_entry(self, a: int, b: int, c: int):
        return self.gamma.get((a, b), {}).get(c, self.field.zero)

    def delta_entry(self, a: int, b: int, c: int):
        """delta_c^ab."""
        return self.delta.get((a, b), {}).get(c, self.field.zero)

    @cached_property
    def cobracket(self) -> list[dict]:
        """cobracket[c] maps (a, b) -> delta_c^ab, i.e. Delta(X_c)."""
        out = [dict() for _ in self.labels]
        for (a, b), row in self.delta.items():
            for c, v in row.items():
                out[c][(a, b)] = v
        return out

    def nonzero_gamma(self):
        for (a, b), row in sorted(self.gamma.items()):
            for c, v in sorted(row.items()):
                if not self.field.is_zero(v):
                    yield a, b, c, v

    def nonzero_delta(self):
        for (a, b), row in sorted(self.delta.items()):
            for c, v in sorted(row.items()):
                if not self.field.is_zero(v):
                    yield a, b, c, v

    def to_json(self) -> dict:
        def rows(entries):
            out = []
            for a, b, c, v in entries:
                z = self.field.to_complex(v)
                out.append({"a": a, "b": b, "c": c, "re": float(z.real), "im": float(z.imag)})
            return out

        return {
            "n": self.dim,
            "labels": [str(lab) for lab in self.labels],
            "gamma": rows(self.nonzero_gamma()),
            "delta": rows(self.nonzero_delta()),
        }

    def to_csv(self) -> str:
        lines = ["table,a,b,c,label_a,label_b,label_c,re,im"]
        for name, entries in (("gamma", self.nonzero_gamma()), ("delta", self.nonzero_delta())):
            for a, b, c, v in entries:
                z = self.field.to_complex(v)
                la, lb, lc = (str(self.labels[i]) for i in (a, b, c))
                lines.append(f"{name},{a},{b},{c},{la},{lb},{lc},{z.real!r},{z.imag!r}")
        return "\n".join(lines) + "\n"

    def relabel(self, perm: Sequence[int]) -> "StructureConstants":
        """Constants for the basis reordered so that new position i holds old perm[i]."""
        inv = {old: new for new, old in enumerate(perm)}
        sc = StructureConstants([self.labels[p] for p in perm], self.field)
        for src, dst in ((self.gamma, sc.gamma), (self.delta, sc.delta)):
            for (a, b), row in src.items():
                dst[(inv[a], inv[b])] = {inv[c]: v for c, v in row.items()}
        return sc


def compare_constants(x: StructureConstants, y: StructureConstants, tol=None) -> VerificationReport:
    """Entrywise comparison of two tables, matching entries by label."""
    field = x.field
    tol = field.tol if tol is None else tol
    if sorted(map(str, x.labels)) != sorted(map(str, y.labels)):
        return VerificationReport.from_residuals("compare_constants", float("inf"), tol, ["label sets differ"])
    pos = {str(lab): i for i, lab in enumerate(y.labels)}
    y = y.relabel([pos[str(lab)] for lab in x.labels])
    worst, failures = 0.0, []
    for name in ("gamma", "delta"):
        tx, ty = getattr(x, name), getattr(y, name)
        for key in set(tx) | set(ty):
            ra, rb = tx.get(key, {}), ty.get(key, {})
            for c in set(ra) | set(rb):
                r = field.residual(ra.get(c, field.zero) - rb.get(c, field.zero))
                if r > tol:
                    failures.append((name, x.labels[key[0]], x.labels[key[1]], x.labels[c]))
                worst = max(worst, r)
    return VerificationReport.from_residuals("compare_constants", worst, tol, failures)


# ---------------------------------------------------------------------------
# axiom checks


def _tol(sc_or_field, tol):
    field = getattr(sc_or_field, "field", sc_or_field)
    return field.tol if tol is None else tol


def check_antisymmetry(sc: StructureConstants, tol=None) -> VerificationReport:
    field = sc.field
    tol = _tol(sc, tol)
    worst, failures = 0.0, []
    for name, table in (("gamma", sc.gamma), ("delta", sc.delta)):
        for (a, b), row in table.items():
            other = table.get((b, a), {})
            for c in set(row) | set(other):
                r = field.residual(row.get(c, field.zero) + other.get(c, field.zero))
                if r > tol:
                    failures.append((name, a, b, c))
                worst = max(worst, r)
    return VerificationReport.from_residuals("antisymmetry", worst, tol, failures)


def _jacobi_like(table: dict, dim: int, field, tol, name: str) -> VerificationReport:
    tol = _tol(field, tol)
    anti = check_antisymmetry(StructureConstants(list(range(dim)), field, table, {}), tol)
    worst, failures = anti.worst_residual, [("antisymmetry",) + f[1:] for f in anti.failures]
    zero: dict = {}
    for a, b, c in itertools.combinations(range(dim), 3):
        acc: dict = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for d, g in table.get((x, y), zero).items():
                for e, h in table.get((d, z), zero).items():
                    _accumulate(acc, e, g * h, field)
        for e, v in acc.items():
            r = field.residual(v)
            if r > tol:
                failures.append((a, b, c, e))
            worst = max(worst, r)
    return VerificationReport.from_residuals(name, worst, tol, failures)


def _sparse_cocycle(sc: StructureConstants, tol=None) -> VerificationReport:
    field = sc.field
    tol = _tol(sc, tol)
    cob = sc.cobracket
    zero: dict = {}
    worst, failures = 0.0, []
    for a, c in itertools.combinations(range(sc.dim), 2):
        acc: dict = {}
        for x, y, sign in ((a, c, 1), (c, a, -1)):
            for (d, e), v in cob[y].items():
                # left leg: gamma_xd^b delta_y^de
                for b, g in sc.gamma.get((x, d), zero).items():
                    _accumulate(acc, (b, e), g * v if sign > 0 else -(g * v), field)
                # right leg: gamma_xe^e' delta_y^de
                for e2, g in sc.gamma.get((x, e), zero).items():
                    _accumulate(acc, (d, e2), g * v if sign > 0 else -(g * v), field)
        for d, g in sc.gamma.get((a, c), zero).items():
            for be, v in cob[d].items():
                _accumulate(acc, be, -(g * v), field)
        for (b, e), v in acc.items():
            r = field.residual(v)
            if r > tol:
                failures.append((a, c, b, e))
            worst = max(worst, r)
    return VerificationReport.from_residuals("cocycle", worst, tol, failures)


# Dense evaluation.  The tables become (dim, dim, dim) arrays T[a, b, c] and
# every identity is a handful of matrix products.  Exact tables are first
# mapped into prime fields (see ``ModularImage``); the float64 products are
# exact there because every partial sum stays below 2^53.

_CHUNK_ENTRIES = 1 << 22


def _table_entries(table: dict):
    for (a, b), row in table.items():
        for c, v in row.items():
            yield a, b, c, v


class _DenseLayers:
    """Dense copies of one or more tables in each coordinate ring."""

    def __init__(self, field, tables: list, dim: int, terms: int):
        self.field = field
        self.dim = dim
        self.entries = [list(_table_entries(t)) for t in tables]
        if not field.exact:
            self.moduli = [None]
            self._arrays = [[self._fill(ent, [complex(v) for *_, v in ent]) for ent in self.entries]]
            return
        from .scalar import height

        ids: dict = {}
        vid = []
        for ent in self.entries:
            vid.append([ids.setdefault(v, len(ids)) for *_, v in ent])
        values = list(ids)
        heights = [height(v) for v in values]
        bound = terms * field.reduction_height
        for k in (0, 0) if len(self.entries) == 1 else range(len(self.entries)):
            used = set(vid[k])
            den = 1
            for i in used:
                den = math.lcm(den, heights[i][0])
            l1 = max((heights[i][1] * (den // heights[i][0]) for i in used), default=0)
            bound *= max(l1, 1)
        real = all(v == v.conjugate() for v in values)
        image = field.modular_image(values, bound, real=real)
        self.moduli = image.moduli.tolist()
        self._arrays = []
        for k in range(image.width):
            col = image.images[:, k].astype(np.float64)
            self._arrays.append([self._fill(ent, col[np.array(ids_k, dtype=np.int64)]) for ent, ids_k in zip(self.entries, vid)])

    def _fill(self, ent, vals) -> np.ndarray:
        vals = np.asarray(vals)
        if np.iscomplexobj(vals) and not np.any(vals.imag):
            vals = vals.real
        arr = np.zeros((self.dim,) * 3, dtype=vals.dtype if len(ent) else np.float64)
        if ent:
            idx = np.array([e[:3] for e in ent], dtype=np.int64)
            arr[idx[:, 0], idx[:, 1], idx[:, 2]] = vals
        return arr

    def layers(self):
        yield from zip(self.moduli, self._arrays)


def _chunks(indices, dim: int):
    size = max(1, _CHUNK_ENTRIES // (dim**3))
    for k in range(0, len(indices), size):
        yield np.asarray(indices[k : k + size])


def _jacobi_chunk(X: np.ndarray, ach: np.ndarray) -> np.ndarray:
    """J[a, b, c, e] = X_ab^d X_dc^e + X_bc^d X_da^e + X_ca^d X_db^e for a in ach."""
    dim, ka = X.shape[0], len(ach)
    flat = X.reshape(dim, dim * dim)
    t1 = (X[ach].reshape(ka * dim, dim) @ flat).reshape(ka, dim, dim, dim)
    col = X[:, ach, :]
    t2 = (X.reshape(dim * dim, dim) @ col.reshape(dim, ka * dim)).reshape(dim, dim, ka, dim)
    t3 = (col.reshape(dim * ka, dim) @ flat).reshape(dim, ka, dim, dim)
    return t1 + np.moveaxis(t2, 2, 0) + np.moveaxis(t3, 0, 2)


def _cocycle_chunk(G: np.ndarray, D: np.ndarray, ach: np.ndarray) -> np.ndarray:
    """(dDelta)[a, c, b, e] for a in ach; G[a, b, c] = gamma_ab^c, D[a, b, c] = delta_c^ab."""
    dim, ka = G.shape[0], len(ach)
    Ga = G[ach].transpose(0, 2, 1).reshape(ka * dim, dim)
    Gt = G.transpose(0, 2, 1).reshape(dim * dim, dim)
    Dc = D[:, :, ach]
    A = (Ga @ D.reshape(dim, dim * dim)).reshape(ka, dim, dim, dim).transpose(0, 3, 1, 2)
    B = (Ga @ D.transpose(1, 0, 2).reshape(dim, dim * dim)).reshape(ka, dim, dim, dim).transpose(0, 3, 2, 1)
    A2 = (Gt @ Dc.reshape(dim, dim * ka)).reshape(dim, dim, dim, ka).transpose(3, 0, 1, 2)
    B2 = (Gt @ Dc.transpose(1, 0, 2).reshape(dim, dim * ka)).reshape(dim, dim, dim, ka).transpose(3, 0, 2, 1)
    C = (G[ach].reshape(ka * dim, dim) @ D.reshape(dim * dim, dim).T).reshape(ka, dim, dim, dim)
    return A + B - A2 - B2 - C


def _first_indices(dim: int, sample, seed: int) -> list:
    if sample is None or sample >= dim:
        return list(range(dim))
    return sorted(random.Random(seed).sample(range(dim), sample))


def _dense_scan(layers: _DenseLayers, compute, mask, firsts, tol):
    """Run ``compute`` per chunk and layer; return (worst, failing keys)."""
    exact = layers.field.exact
    worst, bad = 0.0, set()
    for modulus, arrays in layers.layers():
        for ach in _chunks(firsts, layers.dim):
            res = compute(*arrays, ach)
            m = mask(ach)
            if exact:
                hit = (np.fmod(res, modulus) != 0) & m
            else:
                mag = np.abs(res) * m
                worst = max(worst, float(mag.max(initial=0.0)))
                hit = mag > tol
            for idx in np.argwhere(hit)[: MAX_FAILURES]:
                bad.add((int(ach[idx[0]]),) + tuple(int(i) for i in idx[1:]))
    return worst, sorted(bad)


def _dense_jacobi_like(table, dim, field, tol, name, sample, seed) -> VerificationReport:
    tol = _tol(field, tol)
    anti = check_antisymmetry(StructureConstants(list(range(dim)), field, table, {}), tol)
    firsts = _first_indices(dim, sample, seed)
    layers = _DenseLayers(field, [table], dim, 3 * dim)
    r = np.arange(dim)

    def mask(ach):
        return (ach[:, None, None] < r[None, :, None]) & (r[None, :, None] < r[None, None, :])

    worst, bad = _dense_scan(layers, lambda X, ach: _jacobi_chunk(X, ach), lambda ach: mask(ach)[..., None], firsts, tol)
    if field.exact and bad:
        worst = max(field.residual(_jacobi_entry(table, field, *k)) for k in bad[:MAX_FAILURES])
    failures = [("antisymmetry",) + f[1:] for f in anti.failures] + bad
    details = {"checked_first_indices": len(firsts), "of": dim, "method": "dense"}
    if field.exact:
        details["primes"] = sorted(set(layers.moduli))
    return VerificationReport.from_residuals(name, max(worst, anti.worst_residual), tol, failures, details)


def _jacobi_entry(table, field, a, b, c, e):
    acc = field.zero
    zero: dict = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for d, g in table.get((x, y), zero).items():
            h = table.get((d, z), zero).get(e)
            if h is not None:
                acc = acc + g * h
    return acc


def _cocycle_entry(sc, a, c, b, e):
    field = sc.field
    acc = field.zero
    g, dl = sc.gamma_entry, sc.delta_entry
    for d in range(sc.dim):
        acc = acc + g(a, d, b) * dl(d, e, c) + g(a, d, e) * dl(b, d, c)
        acc = acc - g(c, d, b) * dl(d, e, a) - g(c, d, e) * dl(b, d, a) - g(a, c, d) * dl(b, e, d)
    return acc


def _dense_cocycle(sc: StructureConstants, tol, sample, seed) -> VerificationReport:
    field, dim = sc.field, sc.dim
    tol = _tol(field, tol)
    firsts = _first_indices(dim, sample, seed)
    layers = _DenseLayers(field, [sc.gamma, sc.delta], dim, 5 * dim)
    r = np.arange(dim)

    def mask(ach):
        return (ach[:, None] < r[None, :])[:, :, None, None]

    worst, bad = _dense_scan(layers, _cocycle_chunk, mask, firsts, tol)
    if field.exact and bad:
        worst = max(field.residual(_cocycle_entry(sc, *k)) for k in bad[:MAX_FAILURES])
    details = {"checked_first_indices": len(firsts), "of": dim, "method": "dense"}
    if field.exact:
        details["primes"] = sorted(set(layers.moduli))
    return VerificationReport.from_residuals("cocycle", worst, tol, bad, details)


def check_jacobi(sc: StructureConstants, tol=None, method: str = "dense", sample=None, seed: int = 0) -> VerificationReport:
    """gamma_ab^d gamma_dc^e + cyclic = 0 for all a < b < c and all e.

    ``sample`` restricts the first index a to that many seeded random
    values (only sensible for large approximate tables).
    """
    if method == "sparse":
        return _jacobi_like(sc.gamma, sc.dim, sc.field, tol, "jacobi")
    return _dense_jacobi_like(sc.gamma, sc.dim, sc.field, tol, "jacobi", sample, seed)


def check_cojacobi(sc: StructureConstants, tol=None, method: str = "dense", sample=None, seed: int = 0) -> VerificationReport:
    """delta_d^ab delta_e^dc + cyclic = 0 (Jacobi for the dual bracket)."""
    if method == "sparse":
        return _jacobi_like(sc.delta, sc.dim, sc.field, tol, "cojacobi")
    return _dense_jacobi_like(sc.delta, sc.dim, sc.field, tol, "cojacobi", sample, seed)


def check_cocycle(sc: StructureConstants, tol=None, method: str = "dense", sample=None, seed: int = 0) -> VerificationReport:
    """The cobracket is a 1-cocycle of A with values in A (x) A.

    (dDelta)^be_ac = [gamma_ad^b delta_c^de + gamma_ad^e delta_c^bd - (a<->c)]
                     - gamma_ac^d delta_d^be
    """
    if method == "sparse":
        return _sparse_cocycle(sc, tol)
    return _dense_cocycle(sc, tol, sample, seed)


# ---------------------------------------------------------------------------
# Manin triple witnesses


@dataclass
class ManinTripleWitness:
    """Ambient matrix Lie algebra split as A + B with dual bases.

    ``a_basis[i]`` is X_i and ``b_basis[i]`` its dual partner X^i.
    """

    n: int
    field: object
    labels: list
    a_basis: list
    b_basis: list
    pairing: Callable = pairing
    # real dimension of the ambient algebra; None means all of gl_n(C)
    ambient_real_dim: int | None = None

    def __post_init__(self):
        if len(self.a_basis) != len(self.b_basis) or len(self.labels) != len(self.a_basis):
            raise ValueError("A-basis, B-basis and labels must have equal length")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def relabel(self, perm: Sequence[int]) -> "ManinTripleWitness":
        return ManinTripleWitness(
            self.n,
            self.field,
            [self.labels[p] for p in perm],
            [self.a_basis[p] for p in perm],
            [self.b_basis[p] for p in perm],
            self.pairing,
            self.ambient_real_dim,
        )

    # coordinates --------------------------------------------------------
    #
    # By duality C = sum_c <C, X^c> X_c + sum_c <C, X_c> X^c, so the
    # A-coordinates are pairings against B and vice versa.

    @cached_property
    def _position_index(self):
        """(i, j) -> [(slot, value)] with slot < dim for B-partners, >= dim for A."""
        index: dict = {}
        for slot, m in enumerate(self.b_basis + self.a_basis):
            for i, j, x in m.nonzeros():
                # Tr(C M) = sum C_ji M_ij
                index.setdefault((j, i), []).append((slot, x))
        return index

    @cached_property
    def _dual_array(self) -> np.ndarray:
        """(n*n, 2*dim) complex array: columns are vec(M^T) for M in B + A."""
        cols = [m.to_complex().T.reshape(-1) for m in self.b_basis + self.a_basis]
        return np.array(cols).T

    def coordinates(self, c: SquareMatrix) -> tuple[dict, dict]:
        """Sparse real coordinates (alpha, beta) with C = alpha.X_A + beta.X^B."""
        field = self.field
        if not field.exact:
            alpha, beta = self.coordinates_batch(c.to_complex()[None])
            return (
                {k: float(v) for k, v in enumerate(alpha[0]) if abs(v) > _APPROX_SPARSITY},
                {k: float(v) for k, v in enumerate(beta[0]) if abs(v) > _APPROX_SPARSITY},
            )
        acc: dict = {}
        index = self._position_index
        for i, j, x in c.nonzeros():
            for slot, y in index.get((i, j), ()):
                _accumulate(acc, slot, x * y, field)
        dim = self.dim
        alpha, beta = {}, {}
        for slot, v in acc.items():
            im = field.imag(v)
            if im:
                if slot < dim:
                    alpha[slot] = im
                else:
                    beta[slot - dim] = im
        return alpha, beta

    def coordinates_batch(self, arrays: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorised coordinates for a stack of complex matrices (approximate)."""
        k = arrays.shape[0]
        prod = (arrays.reshape(k, -1) @ self._dual_array).imag
        return prod[:, : self.dim], prod[:, self.dim :]

    # cached bracket tables ---------------------------------------------

    @cached_property
    def _bracket_coordinates(self) -> dict:
        """Coordinates of [X_a, X_b] and [X^a, X^b] for a < b."""
        out = {"A": {}, "B": {}}
        for key, basis in (("A", self.a_basis), ("B", self.b_basis)):
            if self.field.exact:
                for a, b in itertools.combinations(range(self.dim), 2):
                    out[key][(a, b)] = self.coordinates(commutator(basis[a], basis[b]))
            else:
                arr = np.array([m.to_complex() for m in basis])
                for a in range(self.dim - 1):
                    rest = arr[a + 1 :]
                    comm = arr[a] @ rest - rest @ arr[a]
                    al, be = self.coordinates_batch(comm)
                    for off in range(rest.shape[0]):
                        out[key][(a, a + 1 + off)] = (_sparse_row(al[off]), _sparse_row(be[off]))
        return out


def _sparse_row(row: np.ndarray) -> dict:
    idx = np.flatnonzero(np.abs(row) > _APPROX_SPARSITY)
    return {int(k): float(row[k]) for k in idx}


def _duality_check(w: ManinTripleWitness, tol) -> tuple[VerificationReport, VerificationReport]:
    field = w.field
    iso_worst, iso_fail, dual_worst, dual_fail = 0.0, [], 0.0, []
    if field.exact:
        for name, basis in (("A", w.a_basis), ("B", w.b_basis)):
            for a, b in itertools.combinations_with_replacement(range(w.dim), 2):
                r = field.residual(w.pairing(basis[a], basis[b]))
                if r > 0:
                    iso_fail.append((name, w.labels[a], w.labels[b]))
                iso_worst = max(iso_worst, r)
        for a in range(w.dim):
            for b in range(w.dim):
                v = w.pairing(w.a_basis[a], w.b_basis[b])
                r = field.residual(v - field.one if a == b else v)
                if r > 0:
                    dual_fail.append((w.labels[a], w.labels[b]))
                dual_worst = max(dual_worst, r)
    else:
        A = np.array([m.to_complex() for m in w.a_basis]).reshape(w.dim, -1)
        B = np.array([m.to_complex() for m in w.b_basis])
        Bt = B.transpose(0, 2, 1).reshape(w.dim, -1)
        At = np.array([m.to_complex().T for m in w.a_basis]).reshape(w.dim, -1)
        for name, g in (("A", (A @ At.T).imag), ("B", (B.reshape(w.dim, -1) @ Bt.T).imag)):
            bad = np.argwhere(np.abs(g) > _tol(field, tol))
            iso_fail += [(name, w.labels[i], w.labels[j]) for i, j in bad[:MAX_FAILURES]]
            iso_worst = max(iso_worst, float(np.max(np.abs(g), initial=0.0)))
        g = (A @ Bt.T).imag - np.eye(w.dim)
        bad = np.argwhere(np.abs(g) > _tol(field, tol))
        dual_fail = [(w.labels[i], w.labels[j]) for i, j in bad[:MAX_FAILURES]]
        dual_worst = float(np.max(np.abs(g), initial=0.0))
    tol = _tol(field, tol)
    return (
        VerificationReport.from_residuals("isotropy", iso_worst, tol, iso_fail),
        VerificationReport.from_residuals("duality", dual_worst, tol, dual_fail),
    )


def _closure_check(w: ManinTripleWitness, tol) -> tuple[VerificationReport, VerificationReport]:
    field = w.field
    reports = []
    for key, own in (("A", 0), ("B", 1)):
        worst, failures = 0.0, []
        for (a, b), coords in w._bracket_coordinates[key].items():
            foreign = coords[1 - own]
            r = max((field.residual(v) for v in foreign.values()), default=0.0)
            if r > _tol(field, tol):
                failures.append((w.labels[a], w.labels[b]))
            worst = max(worst, r)
        reports.append(VerificationReport.from_residuals(f"closure_{key}", worst, _tol(field, tol), failures))
    return reports[0], reports[1]


def _invariance_check(w: ManinTripleWitness, tol, samples: int, seed: int) -> VerificationReport:
    rng = random.Random(seed)
    field = w.field
    basis = w.a_basis + w.b_basis
    worst, failures = 0.0, []
    for _ in range(samples):
        z, x, y = (rng.randrange(len(basis)) for _ in range(3))
        Z, X, Y = basis[z], basis[x], basis[y]
        v = w.pairing(commutator(Z, X), Y) + w.pairing(X, commutator(Z, Y))
        r = field.residual(v)
        if r > _tol(field, tol):
            failures.append((z, x, y))
        worst = max(worst, r)
    return VerificationReport.from_residuals("invariance", worst, _tol(field, tol), failures)


def _span_check(w: ManinTripleWitness) -> VerificationReport:
    """Real rank of A + B equals the real dimension of the ambient algebra."""
    rows = []
    for m in w.a_basis + w.b_basis:
        c = m.to_complex().reshape(-1)
        rows.append(np.concatenate([c.real, c.imag]))
    target = 2 * w.n * w.n if w.ambient_real_dim is None else w.ambient_real_dim
    rank = int(np.linalg.matrix_rank(np.array(rows))) if rows else 0
    deficit = target - rank + abs(len(rows) - target)
    return VerificationReport.from_residuals(
        "real_span", float(deficit), 0.0, [] if deficit == 0 else [f"rank {rank} of {len(rows)} vectors, need {target}"],
        {"rank": rank, "vectors": len(rows), "ambient_real_dim": target},
    )


def verify_manin(w: ManinTripleWitness, tol=None, invariance_samples: int = 40, seed: int = 0) -> VerificationReport:
    """Isotropy, duality, closure of A and B, invariance, and spanning."""
    tol = _tol(w.field, tol)
    iso, dual = _duality_check(w, tol)
    subs = [iso, dual]
    if dual.passed:
        subs += list(_closure_check(w, tol))
    else:
        subs.append(VerificationReport("closure", False, float("inf"), tol, ["skipped: duality failed"]))
    subs.append(_invariance_check(w, tol, invariance_samples, seed))
    subs.append(_span_check(w))
    worst = max(r.worst_residual for r in subs)
    failures = [f"{r.name}: {f}" for r in subs for f in r.failures]
    return VerificationReport(
        "manin_triple",
        all(r.passed for r in subs),
        worst,
        tol,
        failures[:MAX_FAILURES],
        {"checks": {r.name: r for r in subs}, "dim_A": w.dim, "dim_B": w.dim},
    )


def extract_constants(w: ManinTripleWitness, tol=None) -> StructureConstants:
    """gamma_ab^c = <[X_a, X_b], X^c> and delta_c^ab = <[X^a, X^b], X_c>."""
    _, dual = _duality_check(w, _tol(w.field, tol))
    if not dual.passed:
        raise ValueError(f"duality not established: worst residual {dual.worst_residual:.3e}")
    field = w.field
    sc = StructureConstants(list(w.labels), field)
    for key, table, own in (("A", sc.gamma, 0), ("B", sc.delta, 1)):
        for (a, b), coords in w._bracket_coordinates[key].items():
            row = _prune(coords[own], field)
            if row:
                table[(a, b)] = row
                table[(b, a)] = {c: -v for c, v in row.items()}
    return sc


def check_mixed_brackets(
    w: ManinTripleWitness, sc: StructureConstants, tol=None, sample=None, seed: int = 0
) -> VerificationReport:
    """[X^a, X_b] = gamma_bd^a X^d - delta_b^ad X_d, evaluated on matrices."""
    if [str(x) for x in w.labels] != [str(x) for x in sc.labels]:
        raise ValueError("witness and structure constants carry different labels")
    field = w.field
    tol = _tol(field, tol)
    # gamma_bd^a indexed by (b, a) -> {d: value}; delta_b^ad by (b, a) -> {d: value}
    g_idx: dict = {}
    for (b, d), row in sc.gamma.items():
        for a, v in row.items():
            g_idx.setdefault((b, a), {})[d] = v
    d_idx: dict = {}
    for (a, d), row in sc.delta.items():
        for b, v in row.items():
            d_idx.setdefault((b, a), {})[d] = v

    def compare(a, b, alpha, beta):
        expect_beta = g_idx.get((b, a), {})
        expect_alpha = {d: -v for d, v in d_idx.get((b, a), {}).items()}
        r = 0.0
        for got, exp in ((alpha, expect_alpha), (beta, expect_beta)):
            for d in set(got) | set(exp):
                r = max(r, field.residual(got.get(d, field.zero) - exp.get(d, field.zero)))
        return r

    worst, failures = 0.0, []
    firsts = _first_indices(w.dim, sample, seed)
    if field.exact:
        for a in firsts:
            for b in range(w.dim):
                alpha, beta = w.coordinates(commutator(w.b_basis[a], w.a_basis[b]))
                r = compare(a, b, alpha, beta)
                if r > tol:
                    failures.append((w.labels[a], w.labels[b]))
                worst = max(worst, r)
    else:
        A = np.array([m.to_complex() for m in w.a_basis])
        for a in firsts:
            xa = w.b_basis[a].to_complex()
            al, be = w.coordinates_batch(xa @ A - A @ xa)
            for b in range(w.dim):
                r = compare(a, b, _sparse_row(al[b]), _sparse_row(be[b]))
                if r > tol:
                    failures.append((w.labels[a], w.labels[b]))
                worst = max(worst, r)
    details = {"checked_first_indices": len(firsts), "of": w.dim}
    return VerificationReport.from_residuals("mixed_brackets", worst, tol, failures, details)


def check_all_axioms(w: ManinTripleWitness, sc: StructureConstants, tol=None, sample=None, seed: int = 0) -> dict:
    kw = {"sample": sample, "seed": seed}
    return {
        "jacobi": check_jacobi(sc, tol, **kw),
        "cojacobi": check_cojacobi(sc, tol, **kw),
        "cocycle": check_cocycle(sc, tol, **kw),
        "mixed_brackets": check_mixed_brackets(w, sc, tol, **kw),
    }
