"""Points of the type-A chain relation variety as exact matrix tuples.

A point is a tuple of maps U_1 <-> U_2 <-> ... <-> U_t (forward maps A_i of
shape n_{i+1} x n_i, backward maps B_i of shape n_i x n_{i+1}).  Membership
in the variety means B_1 A_1 = 0 and B_i A_i = A_{i-1} B_{i-1}; the quotient
map theta sends a point to A_{t-1} B_{t-1}.  Stability is injectivity of all
forward maps; stable points correspond to flags with a flag-lowering
endomorphism, and arbitrary Jordan-type chains are realized by gluing
ab-diagram pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

import itertools

from quiverz.abdiagrams import ABDiagram, build_pair, max_diagram, random_diagram
from quiverz.exactmat import (
    ExactMatrix,
    FieldSpec,
    all_subspaces,
    conjugator,
    hstack,
    identity,
    inverse,
    is_injective,
    jordan_type,
    mat_pow,
    mul,
    random_invertible,
    rank,
    solve,
    transpose,
    zeros,
)
from quiverz.partitions import (
    Partition,
    as_dim_vector,
    dominates,
    is_strictly_monotone,
    mu_of,
    theta_image,
)


class QuiverRep:
    """Matrix tuple on the chain; membership in the relation variety is not
    an invariant of the type and is checked by check_relations."""

    __slots__ = ("dims", "A", "B", "field")

    def __init__(
        self,
        dims: Sequence[int],
        A: Sequence[ExactMatrix],
        B: Sequence[ExactMatrix],
        field: FieldSpec,
    ):
        dims = as_dim_vector(dims)
        t = len(dims)
        A = tuple(A)
        B = tuple(B)
        if len(A) != t - 1 or len(B) != t - 1:
            raise ValueError(f"expected {t - 1} maps each way, got {len(A)} and {len(B)}")
        for i, M in enumerate(A):
            if M.shape != (dims[i + 1], dims[i]):
                raise ValueError(
                    f"forward map {i + 1} has shape {M.shape}, expected {(dims[i + 1], dims[i])}"
                )
            if M.field != field:
                raise ValueError("field mismatch in forward maps")
        for i, M in enumerate(B):
            if M.shape != (dims[i], dims[i + 1]):
                raise ValueError(
                    f"backward map {i + 1} has shape {M.shape}, expected {(dims[i], dims[i + 1])}"
                )
            if M.field != field:
                raise ValueError("field mismatch in backward maps")
        self.dims = dims
        self.A = A
        self.B = B
        self.field = field

    @property
    def t(self) -> int:
        return len(self.dims)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuiverRep)
            and self.dims == other.dims
            and self.A == other.A
            and self.B == other.B
            and self.field == other.field
        )

    def __repr__(self) -> str:
        return f"QuiverRep(dims={self.dims}, p={self.field.p})"

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "p": self.field.p,
            "A": [M.to_json_dict() for M in self.A],
            "B": [M.to_json_dict() for M in self.B],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QuiverRep":
        f = FieldSpec(data["p"])
        return cls(
            data["dims"],
            [ExactMatrix.from_json_dict(m) for m in data["A"]],
            [ExactMatrix.from_json_dict(m) for m in data["B"]],
            f,
        )


def zero_rep(dims: Sequence[int], field: FieldSpec) -> QuiverRep:
    dims = as_dim_vector(dims)
    A = [zeros(dims[i + 1], dims[i], field) for i in range(len(dims) - 1)]
    B = [zeros(dims[i], dims[i + 1], field) for i in range(len(dims) - 1)]
    return QuiverRep(dims, A, B, field)


def check_relations(z: QuiverRep) -> bool:
    """True iff B_1 A_1 = 0 and B_i A_i = A_{i-1} B_{i-1} exactly."""
    for i in range(z.t - 1):
        back_forward = mul(z.B[i], z.A[i])
        if i == 0:
            if not back_forward.is_zero():
                return False
        elif back_forward != mul(z.A[i - 1], z.B[i - 1]):
            return False
    return True


def nilpotency_degrees(z: QuiverRep) -> bool:
    """Check (B_i A_i)^i = 0 and (A_i B_i)^{i+1} = 0 for all i; these are
    consequences of the relations, which must hold on input."""
    if not check_relations(z):
        raise ValueError("relations fail; nilpotency degrees are only meaningful on the variety")
    for i in range(1, z.t):
        ba = mul(z.B[i - 1], z.A[i - 1])
        ab = mul(z.A[i - 1], z.B[i - 1])
        if not mat_pow(ba, i).is_zero() or not mat_pow(ab, i + 1).is_zero():
            return False
    return True


def is_stable(z: QuiverRep) -> bool:
    """Injectivity of every forward map."""
    return all(is_injective(M) for M in z.A)


def theta(z: QuiverRep) -> ExactMatrix:
    """The quotient-map value A_{t-1} B_{t-1}, an endomorphism of the last
    vertex space; nilpotent whenever the relations hold."""
    if z.t < 2:
        raise ValueError("theta needs at least two vertices")
    return mul(z.A[-1], z.B[-1])


def _normalize_group_element(g: Sequence[ExactMatrix], z: QuiverRep) -> List[ExactMatrix]:
    g = list(g)
    if len(g) == z.t - 1:
        g.append(identity(z.dims[-1], z.field))
    if len(g) != z.t:
        raise ValueError(f"group element must have {z.t} or {z.t - 1} components, got {len(g)}")
    for i, h in enumerate(g):
        if h.shape != (z.dims[i], z.dims[i]):
            raise ValueError(f"component {i + 1} has shape {h.shape}, expected square of size {z.dims[i]}")
    return g


def act(g: Sequence[ExactMatrix], z: QuiverRep) -> QuiverRep:
    """Base change A_i -> h_{i+1} A_i h_i^-1, B_i -> h_i B_i h_{i+1}^-1.

    Accepts t components, or t - 1 for the subgroup fixing the last vertex.
    Preserves the relations and stability; fixes theta when h_t = 1."""
    g = _normalize_group_element(g, z)
    try:
        ginv = [inverse(h) for h in g]
    except ValueError:
        raise ValueError("group element components must be invertible") from None
    A = [mul(mul(g[i + 1], z.A[i]), ginv[i]) for i in range(z.t - 1)]
    B = [mul(mul(g[i], z.B[i]), ginv[i + 1]) for i in range(z.t - 1)]
    return QuiverRep(z.dims, A, B, z.field)


def random_group_element(
    dims: Sequence[int], field: FieldSpec, rng, fix_last: bool = False
) -> List[ExactMatrix]:
    """Random invertible tuple; with fix_last the last component is the
    identity, i.e. an element of the subgroup acted out by the quotient."""
    dims = as_dim_vector(dims)
    g = [random_invertible(n, field, rng) for n in dims[:-1]]
    g.append(identity(dims[-1], field) if fix_last else random_invertible(dims[-1], field, rng))
    return g


def _inclusion(rows: int, cols: int, field: FieldSpec) -> ExactMatrix:
    entries = [0] * (rows * cols)
    for i in range(cols):
        entries[i * cols + i] = 1
    return ExactMatrix(rows, cols, entries, field)


def _lowering_endo(dims: Sequence[int], field: FieldSpec, rng) -> ExactMatrix:
    """Random endomorphism of the last space mapping the span of the first
    n_i coordinates into the span of the first n_{i-1} (n_0 = 0)."""
    nt = dims[-1]
    entries = [0] * (nt * nt)
    bound = {}
    lower = 0
    for n in dims:
        for c in range(lower, n):
            bound[c] = lower
        lower = n
    for c in range(nt):
        for r in range(bound[c]):
            entries[r * nt + c] = rng.randrange(field.p)
    return ExactMatrix(nt, nt, entries, field)


def sample_stable(dims: Sequence[int], field: FieldSpec, rng) -> QuiverRep:
    """Random stable point: coordinate flag, random flag-lowering endomorphism
    (forward maps are inclusions, backward maps its restrictions), then a
    random base change at every vertex for genericity."""
    dims = as_dim_vector(dims)
    if not is_strictly_monotone(dims):
        raise ValueError(f"stable sampling needs a strictly increasing dimension vector: {dims}")
    t = len(dims)
    endo = _lowering_endo(dims, field, rng)
    A = [_inclusion(dims[i + 1], dims[i], field) for i in range(t - 1)]
    B = []
    for i in range(t - 1):
        # Restriction of endo to the (i+1)-th coordinate subspace, landing in
        # the i-th: the top-left n_i x n_{i+1} block.
        block = [endo.at(r, c) for r in range(dims[i]) for c in range(dims[i + 1])]
        B.append(ExactMatrix(dims[i], dims[i + 1], block, field))
    z = act(random_group_element(dims, field, rng), QuiverRep(dims, A, B, field))
    assert check_relations(z) and is_stable(z)
    return z


@dataclass
class FlagPoint:
    """A nested flag in the last vertex space with a flag-lowering
    endomorphism.

    flag lists basis matrices of the proper subspaces E_1 subset ... subset
    E_{t-1}; the ambient E_t is the full space in standard coordinates, so
    endo is literally the quotient-map value of the representation the point
    corresponds to."""

    flag: Tuple[ExactMatrix, ...]
    endo: ExactMatrix

    def __post_init__(self):
        self.flag = tuple(self.flag)

    @property
    def dims(self) -> tuple:
        return tuple(M.cols for M in self.flag) + (self.endo.rows,)

    @property
    def field(self) -> FieldSpec:
        return self.endo.field

    def validate(self) -> None:
        """Raise unless the bases are independent and nested and endo lowers
        the flag by one step (including full space -> E_{t-1})."""
        if not self.endo.is_square():
            raise ValueError("endomorphism must be square")
        nt = self.endo.rows
        prev = None
        for i, basis in enumerate(self.flag):
            if basis.field != self.field:
                raise ValueError("field mismatch in flag bases")
            if basis.rows != nt:
                raise ValueError(f"flag basis {i + 1} lives in the wrong ambient space")
            if rank(basis) != basis.cols:
                raise ValueError(f"flag basis {i + 1} is not independent")
            if prev is not None:
                if prev.cols > basis.cols:
                    raise ValueError("flag dimensions must be weakly increasing")
                if rank(hstack(basis, prev)) != basis.cols:
                    raise ValueError(f"flag subspace {i} is not contained in subspace {i + 1}")
            prev = basis
        if self.flag and self.flag[-1].cols > nt:
            raise ValueError("flag dimensions exceed the ambient space")
        # Lowering: endo E_i inside E_{i-1}, with E_0 = 0 and E_t the ambient.
        for i, basis in enumerate(self.flag):
            image = mul(self.endo, basis)
            if i == 0:
                if not image.is_zero():
                    raise ValueError("endomorphism does not kill the smallest subspace")
            elif rank(hstack(self.flag[i - 1], image)) != self.flag[i - 1].cols:
                raise ValueError(f"endomorphism does not lower subspace {i + 1} into subspace {i}")
        if self.flag:
            if rank(hstack(self.flag[-1], self.endo)) != self.flag[-1].cols:
                raise ValueError("endomorphism does not map the full space into the top subspace")
        elif not self.endo.is_zero():
            raise ValueError("endomorphism of a length-one flag must vanish")


def sample_flag_point(dims: Sequence[int], field: FieldSpec, rng) -> FlagPoint:
    """Random flag of the given dimensions with a random lowering
    endomorphism, in general position."""
    dims = as_dim_vector(dims)
    if not is_strictly_monotone(dims):
        raise ValueError(f"flag sampling needs a strictly increasing dimension vector: {dims}")
    nt = dims[-1]
    g = random_invertible(nt, field, rng)
    lowering = _lowering_endo(dims, field, rng)
    endo = mul(mul(g, lowering), inverse(g))
    flag = []
    for n in dims[:-1]:
        cols = [0] * (nt * n)
        for r in range(nt):
            for c in range(n):
                cols[r * n + c] = g.at(r, c)
        flag.append(ExactMatrix(nt, n, cols, field))
    x = FlagPoint(tuple(flag), endo)
    x.validate()
    return x


def alpha(z: QuiverRep) -> FlagPoint:
    """Flag of images of the composed forward maps together with theta(z);
    defined exactly on the stable points of the variety."""
    if z.t < 2:
        raise ValueError("alpha needs at least two vertices")
    if not check_relations(z):
        raise ValueError("alpha is only defined on the relation variety")
    if not is_stable(z):
        raise ValueError("alpha needs a stable point (all forward maps injective)")
    composed = [z.A[-1]]
    for i in range(z.t - 3, -1, -1):
        composed.append(mul(composed[-1], z.A[i]))
    composed.reverse()  # composed[i] = A_{t-1} ... A_{i+1}
    x = FlagPoint(tuple(composed), theta(z))
    x.validate()
    return x


def _solve_unique(M: ExactMatrix, C: ExactMatrix) -> ExactMatrix:
    """The unique X with M X = C, for M of full column rank."""
    Xt = solve(transpose(M), transpose(C))
    return transpose(Xt)


def from_flag_point(x: FlagPoint, field: Optional[FieldSpec] = None) -> QuiverRep:
    """The stable point whose flag of images is x: forward maps express each
    basis inside the next, backward maps express the lowered endomorphism."""
    x.validate()
    if field is not None and field != x.field:
        raise ValueError(f"field mismatch: {field} vs {x.field}")
    field = x.field
    t = len(x.flag) + 1
    nt = x.endo.rows
    basis = list(x.flag) + [identity(nt, field)]
    A = [_solve_unique(basis[i + 1], basis[i]) for i in range(t - 1)]
    B = [_solve_unique(basis[i], mul(x.endo, basis[i + 1])) for i in range(t - 1)]
    z = QuiverRep(x.dims, A, B, field)
    assert check_relations(z) and is_stable(z)
    assert theta(z) == x.endo
    return z


def greedy_chain(dims: Sequence[int]) -> List[ABDiagram]:
    """The chain of top placements along the difference sequence; its final
    b-part is theta_image(dims)."""
    dims = as_dim_vector(dims)
    eta = Partition((1,) * dims[0])
    chain = []
    for i in range(len(dims) - 1):
        step = dims[i + 1] - dims[i]
        if step < 0:
            raise ValueError(f"decreasing step at position {i + 1}: {dims}")
        delta = max_diagram(eta, step)
        chain.append(delta)
        eta = delta.b_part
    return chain


def random_chain(dims: Sequence[int], rng) -> List[ABDiagram]:
    """A random compatible chain of placements along the difference sequence."""
    dims = as_dim_vector(dims)
    eta = Partition((1,) * dims[0])
    chain = []
    for i in range(len(dims) - 1):
        step = dims[i + 1] - dims[i]
        if step < 0:
            raise ValueError(f"decreasing step at position {i + 1}: {dims}")
        delta = random_diagram(eta, step, rng)
        chain.append(delta)
        eta = delta.b_part
    return chain


def build_from_chain(deltas: Sequence[ABDiagram], field: FieldSpec) -> QuiverRep:
    """Glue diagram pairs into a point of the relation variety.

    The first diagram must have an all-ones a-part (so the first composition
    vanishes); consecutive diagrams must agree across each interface, where
    the later pair is conjugated onto the earlier one's composition.  The
    quotient-map value of the result has Jordan type b_part of the last
    diagram."""
    deltas = list(deltas)
    if not deltas:
        raise ValueError("chain must contain at least one diagram")
    first_a = deltas[0].a_part
    if any(p != 1 for p in first_a.parts):
        raise ValueError(
            f"first diagram must have all-ones a-part, got {first_a.to_list()}"
        )
    dims = [deltas[0].total_a]
    for delta in deltas:
        dims.append(delta.total_b)
    for i in range(len(deltas) - 1):
        if deltas[i + 1].a_part != deltas[i].b_part:
            raise ValueError(
                f"chain mismatch at interface {i + 1}: b-part {deltas[i].b_part.to_list()} "
                f"vs a-part {deltas[i + 1].a_part.to_list()}"
            )
    pairs = [build_pair(d, field) for d in deltas]
    A = [pairs[0][0]]
    B = [pairs[0][1]]
    for i in range(1, len(deltas)):
        target = mul(A[i - 1], B[i - 1])
        Ai, Bi = pairs[i]
        g = conjugator(target, mul(Bi, Ai))
        ginv = inverse(g)
        A.append(mul(Ai, ginv))
        B.append(mul(g, Bi))
    z = QuiverRep(tuple(dims), A, B, field)
    assert check_relations(z)
    assert jordan_type(theta(z)) == deltas[-1].b_part
    return z


@dataclass
class ReducibilityReport:
    """Outcome of the reducibility obstruction with re-verified witnesses."""

    dims: tuple
    lam: Partition
    mu: Partition
    verdict: str
    witnesses: List[dict] = dc_field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "lambda": self.lam.to_list(),
            "mu": self.mu.to_list(),
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


def _witness_payload(kind: str, z: QuiverRep) -> dict:
    ttype = jordan_type(theta(z))
    return {
        "kind": kind,
        "relations": check_relations(z),
        "stable": is_stable(z),
        "theta_type": ttype.to_list(),
        "rep": z.to_json_dict(),
    }


def witness_reducible(dims: Sequence[int], field: FieldSpec, rng) -> ReducibilityReport:
    """Compare the full-variety image type with the stable one; when they
    differ, produce and re-verify a two-witness certificate: a chain-built
    point realizing the former and a stable sample bounded by the latter."""
    dims = as_dim_vector(dims)
    if not is_strictly_monotone(dims):
        raise ValueError(f"obstruction needs a strictly increasing dimension vector: {dims}")
    lam = theta_image(dims)
    mu = mu_of(dims)
    if lam == mu:
        return ReducibilityReport(dims, lam, mu, "no_obstruction")
    z1 = build_from_chain(greedy_chain(dims), field)
    z2 = sample_stable(dims, field, rng)
    w1 = _witness_payload("chain", z1)
    w2 = _witness_payload("stable", z2)
    assert w1["relations"] and w2["relations"]
    assert Partition(w1["theta_type"]) == lam
    assert dominates(mu, Partition(w2["theta_type"]))
    assert w2["stable"]
    return ReducibilityReport(dims, lam, mu, "reducible", [w1, w2])


def _contained(vectors: ExactMatrix, basis: ExactMatrix) -> bool:
    if vectors.is_zero():
        return True
    if basis.cols == 0:
        return False
    return rank(hstack(basis, vectors)) == basis.cols


def is_stable_subspace_criterion(z: QuiverRep) -> bool:
    """Stability by exhaustive search over invariant subspace tuples.

    A point is unstable iff some tuple W_i of subspaces of the first t-1
    vertex spaces, not all zero, satisfies A_i W_i inside W_{i+1} and
    B_i W_{i+1} inside W_i (i <= t-2) with A_{t-1} W_{t-1} = 0.  Exponential
    in field size and dimensions; a tiny-field oracle for is_stable."""
    if not check_relations(z):
        raise ValueError("subspace criterion is only meaningful on the relation variety")
    if z.t < 2:
        return True
    spaces = [all_subspaces(n, z.field) for n in z.dims[:-1]]
    for tup in itertools.product(*spaces):
        if all(W.cols == 0 for W in tup):
            continue
        ok = True
        for i in range(z.t - 2):
            if not _contained(mul(z.A[i], tup[i]), tup[i + 1]):
                ok = False
                break
            if not _contained(mul(z.B[i], tup[i + 1]), tup[i]):
                ok = False
                break
        if ok and mul(z.A[-1], tup[-1]).is_zero():
            return False
    return True
