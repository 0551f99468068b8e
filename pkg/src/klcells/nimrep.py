"""Extending a matrix pair along the KL recursion, and the matrix filters.

A candidate is a pair of nonnegative integer r x r matrices (A_s, A_t)
meant to be the images of b(s) and b(t) in a based representation.  The
whole KL family is then forced: A_e = I, length-two elements multiply out
exactly (A_st = A_s A_t), and for an alternating word w of length >= 3 with
leading letter x

    A_w = A_x * A_w' - A_w''

where w' drops the leading letter (length l-1, other leading letter) and
w'' is the alternating word of length l-2 that also leads with x.  The
longest element can be reached from either generator; both routes are
computed and compared.

``extend`` walks lengths upwards and stops at the first of two structural
failures: a negative entry (filter F2, with the offending element and
position as witness) or disagreement of the two w0 routes (filter F5).

The named filters on candidates:

* F1  both matrices satisfy A^2 = 2A,
* F2  the extension stays nonnegative (produced by ``extend``),
* F3  the action graph of Q = A_s + A_t (edge i -> j when Q[j][i] != 0) is
      strongly connected,
* F4  the set of elements with nonzero matrix is a union of two-sided cells
      and is downward closed in the two-sided order (checked on whatever
      part of the family exists, so a failed extension can still be
      attributed to its support),
* F5  the two recursions for A_w0 agree (produced by ``extend``),
* F6  the defining group relations hold exactly,
* F7  up to simultaneous reindexing the pair has the two-block shape
      A_s = [[2I, B], [0, 0]], A_t = [[0, 0], [B', 2I]] with both blocks
      nonempty (rank one is degenerate: each matrix is just (0) or (2)).

Separately, every two-sided cell J carries an integer polynomial that must
kill Q = A_s + A_t for any candidate whose support sits inside the cells
up to J.  The two-dimensional factor product P(x) is extracted exactly
from the regular representation: the characteristic polynomial of b(s)+b(t)
on the KL basis of Z[D_n] equals x (x-4) (x-2)^{2e} P(x)^2 with e = 1 for
even n and 0 otherwise, so exact division and an integer polynomial square
root recover P without ever leaving Z[x].
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import kl_regular_matrices
from .dihedral import GroupElement, dihedral_group, display_key, other_letter, render
from .exact import (
    IntMatrix,
    IntPoly,
    bareiss_det,
    char_poly,
    first_negative_entry,
    freeze_matrix,
    identity_matrix,
    is_zero_matrix,
    mat_add,
    mat_mul,
    mat_sub,
    poly_degree,
    poly_derivative,
    poly_div_exact,
    poly_eval_float,
    poly_eval_matrix,
    poly_gcd,
    poly_mul,
    poly_sqrt_monic,
)
from .reps import check_module_relations

__all__ = [
    "MatrixPair",
    "ExtendedRep",
    "ExtensionFailure",
    "FilterReport",
    "PerronAnalysis",
    "extend",
    "check_idempotent",
    "check_transitive",
    "check_apex_support",
    "check_group_relations",
    "check_block_form",
    "apex_of",
    "global_annihilator",
    "annihilator_check",
    "det_identity",
    "perron_analysis",
]


@dataclass(frozen=True)
class MatrixPair:
    """Candidate images of b(s) and b(t): nonnegative integer square matrices."""

    n: int
    rank: int
    theta_s: IntMatrix
    theta_t: IntMatrix

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"dihedral parameter must be >= 3, got {self.n}")
        if self.rank < 1:
            raise ValueError("candidate pairs have rank >= 1")
        for name, m in (("theta_s", self.theta_s), ("theta_t", self.theta_t)):
            if len(m) != self.rank or any(len(row) != self.rank for row in m):
                raise ValueError(f"{name} must be {self.rank}x{self.rank}")
            if any(v < 0 for row in m for v in row):
                raise ValueError(f"{name} has negative entries; candidates are nonnegative")

    @classmethod
    def from_matrices(cls, n: int, theta_s: Sequence[Sequence[int]], theta_t: Sequence[Sequence[int]]) -> "MatrixPair":
        frozen_s = freeze_matrix(theta_s)
        frozen_t = freeze_matrix(theta_t)
        return cls(n=n, rank=len(frozen_s), theta_s=frozen_s, theta_t=frozen_t)

    def to_jsonable(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "theta_s": [list(row) for row in self.theta_s],
            "theta_t": [list(row) for row in self.theta_t],
        }

    @classmethod
    def from_jsonable(cls, obj: Mapping) -> "MatrixPair":
        pair = cls.from_matrices(int(obj["n"]), obj["theta_s"], obj["theta_t"])
        if "rank" in obj and int(obj["rank"]) != pair.rank:
            raise ValueError(
                f"declared rank {obj['rank']} does not match matrix size {pair.rank}"
            )
        return pair


@dataclass(frozen=True)
class ExtendedRep:
    """A fully extended family, one matrix per group element."""

    pair: MatrixPair
    family: Mapping[GroupElement, IntMatrix]


@dataclass(frozen=True)
class ExtensionFailure:
    """Where and why the forced extension broke down.

    filter_id is F2 (negative entry) or F5 (w0 routes disagree); partial
    holds every matrix that was built before the failure.
    """

    pair: MatrixPair
    filter_id: str
    element: GroupElement
    witness: str
    partial: Mapping[GroupElement, IntMatrix]


@dataclass(frozen=True)
class FilterReport:
    filter_id: str
    passed: bool
    witness: str | None

    def to_jsonable(self) -> dict:
        return {"id": self.filter_id, "passed": self.passed, "witness": self.witness}


def extend(pair: MatrixPair) -> ExtendedRep | ExtensionFailure:
    """Force the whole KL family from the generator pair, or report F2/F5."""
    group = dihedral_group(pair.n)
    n = pair.n
    family: dict[GroupElement, IntMatrix] = {
        group.identity(): identity_matrix(pair.rank),
        group.generator("s"): pair.theta_s,
        group.generator("t"): pair.theta_t,
    }

    def build(length: int, leading: str) -> IntMatrix:
        if length == 2:
            return mat_mul(family[group.generator(leading)], family[group.generator(other_letter(leading))])
        shorter = group.element(length - 1, other_letter(leading))
        back = group.element(length - 2, leading)
        return mat_sub(mat_mul(family[group.generator(leading)], family[shorter]), family[back])

    for length in range(2, n):
        for leading in ("s", "t"):
            w = group.element(length, leading)
            a = build(length, leading)
            bad = first_negative_entry(a)
            if bad is not None:
                i, j = bad
                return ExtensionFailure(
                    pair=pair,
                    filter_id="F2",
                    element=w,
                    witness=f"A_{render(w)}[{i}][{j}] = {a[i][j]} is negative",
                    partial=dict(family),
                )
            family[w] = a

    w0 = group.longest_element()
    via_s = build(n, "s")
    via_t = mat_sub(
        mat_mul(family[group.generator("t")], family[group.element(n - 1, "s")]),
        family[group.element(n - 2, "t")],
    )
    for route in (via_s, via_t):
        bad = first_negative_entry(route)
        if bad is not None:
            i, j = bad
            return ExtensionFailure(
                pair=pair,
                filter_id="F2",
                element=w0,
                witness=f"A_{render(w0)}[{i}][{j}] = {route[i][j]} is negative",
                partial=dict(family),
            )
    if via_s != via_t:
        return ExtensionFailure(
            pair=pair,
            filter_id="F5",
            element=w0,
            witness="the s-leading and t-leading recursions for A_w0 disagree",
            partial=dict(family),
        )
    family[w0] = via_s
    return ExtendedRep(pair=pair, family=dict(family))


# -- filters ---------------------------------------------------------------


def check_idempotent(pair: MatrixPair) -> FilterReport:
    """F1: both generator matrices satisfy A^2 = 2A."""
    for name, m in (("A_s", pair.theta_s), ("A_t", pair.theta_t)):
        doubled = tuple(tuple(2 * v for v in row) for row in m)
        if mat_mul(m, m) != doubled:
            return FilterReport("F1", False, f"{name}^2 != 2 {name}")
    return FilterReport("F1", True, None)


def _strongly_connected(adjacency: Sequence[set[int]]) -> int | None:
    """None when strongly connected, else a vertex missing from some orbit."""
    r = len(adjacency)
    if r == 0:
        return None
    reverse: list[set[int]] = [set() for _ in range(r)]
    for i, outs in enumerate(adjacency):
        for j in outs:
            reverse[j].add(i)
    for adj in (adjacency, reverse):
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
        if len(seen) != r:
            return min(set(range(r)) - seen)
    return None


def check_transitive(pair: MatrixPair) -> FilterReport:
    """F3: the action graph of Q = A_s + A_t is strongly connected.

    The graph has an edge i -> j exactly when Q[j][i] != 0 (basis vector i
    reaches vector j under the action).
    """
    q = mat_add(pair.theta_s, pair.theta_t)
    r = pair.rank
    adjacency = [set() for _ in range(r)]
    for i in range(r):
        for j in range(r):
            if q[j][i] != 0:
                adjacency[i].add(j)
    missing = _strongly_connected(adjacency)
    if missing is None:
        return FilterReport("F3", True, None)
    return FilterReport(
        "F3", False, f"vertex {missing} is not in the two-sided orbit of vertex 0"
    )


def _family_of(obj) -> Mapping[GroupElement, IntMatrix]:
    if isinstance(obj, ExtendedRep):
        return obj.family
    if isinstance(obj, ExtensionFailure):
        return obj.partial
    return obj


def check_apex_support(n: int, extended) -> FilterReport:
    """F4: the nonzero part of the family is a downward-closed union of cells.

    Accepts an ExtendedRep, an ExtensionFailure (whose partial family is
    used) or a plain element-to-matrix mapping.
    """
    from .cells import compute_cells  # local import to avoid a cycle

    family = _family_of(extended)
    partition = compute_cells(n)
    nonzero = {w for w, m in family.items() if not is_zero_matrix(m)}
    present_levels: list[bool] = []
    for level, cell in enumerate(partition.two_sided_cells):
        present = [w for w in cell if w in family]
        hot = [w for w in present if w in nonzero]
        if hot and len(hot) != len(present):
            witness = min((w for w in present if w not in nonzero), key=display_key)
            return FilterReport(
                "F4",
                False,
                f"A_{render(witness)} = 0 inside a two-sided cell with nonzero members",
            )
        present_levels.append(bool(hot))
    # Downward closure along J1 < J2 < J3.
    for low in range(len(present_levels)):
        for high in range(low + 1, len(present_levels)):
            if present_levels[high] and not present_levels[low]:
                witness_cell = partition.two_sided_cells[low]
                return FilterReport(
                    "F4",
                    False,
                    f"support skips the lower two-sided cell containing {render(witness_cell[0])}",
                )
    return FilterReport("F4", True, None)


def check_group_relations(pair: MatrixPair) -> FilterReport:
    """F6: (A_s - I)^2 = (A_t - I)^2 = ((A_s - I)(A_t - I))^n = I exactly."""
    violation = check_module_relations(pair.n, pair.theta_s, pair.theta_t)
    if violation is None:
        return FilterReport("F6", True, None)
    return FilterReport("F6", False, violation)


def check_block_form(pair: MatrixPair) -> FilterReport:
    """F7: the pair has the simultaneous two-block triangular shape.

    Some reindexing of the basis must put the pair into
    A_s = [[2I_k, B], [0, 0]] and A_t = [[0, 0], [B', 2I_{r-k}]] with
    1 <= k <= r-1.  Equivalently: the indices split into S (diagonal 2 in
    A_s) and T (diagonal 2 in A_t), every A_s row outside S vanishes, A_s
    restricted to S x S is 2I (mirrored for A_t), and both parts are
    nonempty.  Rank one cannot split, so there each matrix must simply be
    (0) or (2).
    """
    r = pair.rank
    a_s, a_t = pair.theta_s, pair.theta_t
    if r == 1:
        if a_s[0][0] in (0, 2) and a_t[0][0] in (0, 2):
            return FilterReport("F7", True, None)
        return FilterReport("F7", False, "rank-one diagonal entries must be 0 or 2")
    s_part = {i for i in range(r) if a_s[i][i] == 2}
    t_part = {i for i in range(r) if a_t[i][i] == 2}
    if not s_part or not t_part:
        return FilterReport("F7", False, "one generator has no index where it acts by 2")
    if s_part & t_part:
        i = min(s_part & t_part)
        return FilterReport("F7", False, f"index {i} has diagonal 2 in both matrices")
    if s_part | t_part != set(range(r)):
        i = min(set(range(r)) - (s_part | t_part))
        return FilterReport("F7", False, f"index {i} has diagonal 2 in neither matrix")
    for label, matrix, own in (("A_s", a_s, s_part), ("A_t", a_t, t_part)):
        for i in range(r):
            for j in range(r):
                if i in own and j in own and matrix[i][j] != (2 if i == j else 0):
                    return FilterReport(
                        "F7", False, f"{label}[{i}][{j}] breaks the 2I diagonal block"
                    )
                if i not in own and matrix[i][j] != 0:
                    return FilterReport(
                        "F7", False, f"{label}[{i}][{j}] is nonzero outside its block rows"
                    )
    return FilterReport("F7", True, None)


def apex_of(extended) -> str:
    """Name of the highest two-sided cell with a nonzero matrix (J1/J2/J3)."""
    family = _family_of(extended)
    nonzero = {w for w, m in family.items() if not is_zero_matrix(m)}
    if not nonzero:
        raise ValueError("the family is identically zero; no apex")
    top = max(w.length for w in nonzero)
    n = next(iter(family)).n
    if top == 0:
        return "J1"
    if top == n:
        return "J3"
    return "J2"


# -- annihilator polynomials ----------------------------------------------


@functools.lru_cache(maxsize=None)
def _two_dim_factor_product(n: int) -> IntPoly:
    """Product of the quadratic factors x^2 - 4x + (2 - 2cos(2k pi/n)), exact.

    Extracted from the regular representation: char(b(s) + b(t)) equals
    x (x-4) (x-2)^{2e} P(x)^2 with e = [n even], all over Z[x].
    """
    m_s, m_t = kl_regular_matrices(n)
    p = char_poly(mat_add(m_s, m_t))
    p = poly_div_exact(p, (0, 1))
    p = poly_div_exact(p, (-4, 1))
    if n % 2 == 0:
        p = poly_div_exact(p, (4, -4, 1))
    return poly_sqrt_monic(p)


@functools.lru_cache(maxsize=None)
def global_annihilator(n: int, apex: str) -> IntPoly:
    """Integer polynomial killing Q = A_s + A_t for any candidate with this apex.

    J1: x.  J2: x (x-2) P(x).  J3: x (x-4) (x-2 for even n) P(x), the minimal
    polynomial of the regular action of b(s) + b(t).
    """
    if apex == "J1":
        return (0, 1)
    product = _two_dim_factor_product(n)
    if apex == "J2":
        return poly_mul((0, 1), poly_mul((-2, 1), product))
    if apex == "J3":
        out = poly_mul((0, 1), poly_mul((-4, 1), product))
        if n % 2 == 0:
            out = poly_mul((-2, 1), out)
        return out
    raise ValueError(f"apex must be J1, J2 or J3, got {apex!r}")


def annihilator_check(extended: ExtendedRep) -> FilterReport:
    """Evaluate the apex annihilator at Q = A_s + A_t, exactly."""
    pair = extended.pair
    apex = apex_of(extended)
    poly = global_annihilator(pair.n, apex)
    value = poly_eval_matrix(poly, mat_add(pair.theta_s, pair.theta_t))
    if is_zero_matrix(value):
        return FilterReport("annihilator", True, None)
    for i, row in enumerate(value):
        for j, v in enumerate(row):
            if v:
                return FilterReport(
                    "annihilator",
                    False,
                    f"p(Q)[{i}][{j}] = {v} with apex {apex}",
                )
    raise AssertionError("unreachable")


# -- the determinant identity ----------------------------------------------


def det_identity(
    k: int,
    l: int,
    lam: Sequence[int],
    mu: Sequence[int],
    v: Sequence[int],
    w: Sequence[int],
) -> tuple[int, int]:
    """Determinant of the doubly bordered block matrix, two ways.

    The matrix is [[2I_k, X], [Y, 2I_l]] with X[i][j] = lam[i] * v[j] and
    Y[i][j] = mu[i] * w[j]; lam and w have length k, mu and v length l, all
    entries are positive integers and lam[0] = mu[0] = 1.  Returns the pair
    (Bareiss determinant, closed formula 2^n - 2^{n-2} (lam.w)(mu.v)) with
    n = k + l; the two always agree, which the caller is free to assert.
    """
    if k < 1 or l < 1:
        raise ValueError("block sizes must be positive")
    if len(lam) != k or len(w) != k or len(mu) != l or len(v) != l:
        raise ValueError("lam and w must have length k; mu and v length l")
    entries = list(lam) + list(mu) + list(v) + list(w)
    if any(isinstance(x, bool) or not isinstance(x, int) or x < 1 for x in entries):
        raise ValueError("all border entries must be positive integers")
    if lam[0] != 1 or mu[0] != 1:
        raise ValueError("normalisation requires lam[0] = mu[0] = 1")
    n = k + l
    rows = []
    for i in range(k):
        rows.append(tuple(2 if i == j else 0 for j in range(k)) + tuple(lam[i] * v[j] for j in range(l)))
    for i in range(l):
        rows.append(tuple(mu[i] * w[j] for j in range(k)) + tuple(2 if i == j else 0 for j in range(l)))
    matrix = tuple(rows)
    det = bareiss_det(matrix)
    dot_lw = sum(a * b for a, b in zip(lam, w))
    dot_mv = sum(a * b for a, b in zip(mu, v))
    formula = 2**n - 2 ** (n - 2) * dot_lw * dot_mv
    return det, formula


# -- Perron-Frobenius analysis ----------------------------------------------


@dataclass(frozen=True)
class PerronAnalysis:
    """Spectral data of a nonnegative integer matrix.

    spectral_radius comes from power iteration on Q + I (the shift makes the
    iteration converge even for periodic matrices) to residual 1e-10.
    top_eigenvalue_simple is decided exactly via gcd(char poly, derivative)
    when possible, with a 1e-6 floating gate only when the gcd is a
    nontrivial polynomial whose value at the radius must be judged.
    positive_eigenvector is present exactly when the matrix is irreducible.
    """

    irreducible: bool
    spectral_radius: float
    top_eigenvalue_simple: bool
    positive_eigenvector: tuple[float, ...] | None


def perron_analysis(q: Sequence[Sequence[int]]) -> PerronAnalysis:
    matrix = freeze_matrix(q)
    r = len(matrix)
    if r == 0 or any(len(row) != r for row in matrix):
        raise ValueError("perron_analysis expects a nonempty square matrix")
    if any(x < 0 for row in matrix for x in row):
        raise ValueError("perron_analysis expects a nonnegative matrix")

    adjacency = [set() for _ in range(r)]
    for i in range(r):
        for j in range(r):
            if matrix[j][i] != 0:
                adjacency[i].add(j)
    irreducible = _strongly_connected(adjacency) is None

    # Power iteration on Q + I.
    shifted = tuple(
        tuple(v + (1 if i == j else 0) for j, v in enumerate(row))
        for i, row in enumerate(matrix)
    )
    vec = [1.0 / r] * r
    radius = 1.0
    for _ in range(200000):
        nxt = [sum(shifted[i][j] * vec[j] for j in range(r)) for i in range(r)]
        norm = sum(abs(x) for x in nxt)
        assert norm > 0, "Q + I is positive on the diagonal, the iterate cannot vanish"
        nxt = [x / norm for x in nxt]
        radius = norm
        residual = max(
            abs(sum(shifted[i][j] * nxt[j] for j in range(r)) - radius * nxt[i])
            for i in range(r)
        )
        vec = nxt
        if residual <= 1e-10:
            break
    else:
        raise ArithmeticError("power iteration did not reach the 1e-10 residual")
    spectral_radius = radius - 1.0

    p = char_poly(matrix)
    repeated = poly_gcd(p, poly_derivative(p))
    if poly_degree(repeated) <= 0:
        simple = True
    else:
        scale = max(1.0, sum(abs(c) * max(1.0, spectral_radius) ** i for i, c in enumerate(repeated)))
        simple = abs(poly_eval_float(repeated, spectral_radius)) > 1e-6 * scale
    top = max(vec)
    eigenvector = tuple(x / top for x in vec) if irreducible else None
    return PerronAnalysis(
        irreducible=irreducible,
        spectral_radius=spectral_radius,
        top_eigenvalue_simple=simple,
        positive_eigenvector=eigenvector,
    )
